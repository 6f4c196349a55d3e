use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use typeb_cli::families::{self, Family, ModeArg, Params, Route};
use typeb_cli::oracle::parallel_counts;
use typeb_cli::render::{self, Format, SequenceDocument, TableDocument};
use typeb_cli::{CliError, CliResult};
use typeb_core::permcore::{OracleQuery, DEFAULT_ENUMERATION_BOUND, MAX_ENUMERATION_SIZE};
use typeb_core::sequences::derangements;
use typeb_core::verify::{self, Scope, VerifyConfig};
use typeb_core::Mode;

const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Parser)]
#[command(name = "typeb", version, about = "Exact tables of type B r-Stirling numbers and r-derangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a triangle or sequence
    Table(TableArgs),
    /// Print a sequence, a d_{r,n} polynomial in r, or the large-n estimate
    Seq(SeqArgs),
    /// Cross-check the independent routes over a parameter grid
    Verify(VerifyArgs),
    /// Count admissible signed permutations exhaustively
    Oracle(OracleArgs),
}

#[derive(Args, Clone, Copy)]
struct Guards {
    /// Largest number of rows or terms accepted
    #[arg(long, env = "TYPEB_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Largest n + r handed to the enumeration oracle
    #[arg(long, env = "TYPEB_ENUM_BOUND", default_value_t = DEFAULT_ENUMERATION_BOUND)]
    enum_bound: usize,
}

impl Guards {
    fn check_order(&self, what: &str, value: usize) -> CliResult<()> {
        if value > self.max_order {
            return Err(CliError::Usage(format!(
                "{what} {value} exceeds the maximum order {} (raise --max-order or TYPEB_MAX_ORDER)",
                self.max_order
            )));
        }
        Ok(())
    }

    fn enumeration_bound(&self) -> CliResult<usize> {
        if self.enum_bound > MAX_ENUMERATION_SIZE {
            return Err(CliError::Usage(format!(
                "enumeration bound {} exceeds the hard limit {MAX_ENUMERATION_SIZE}",
                self.enum_bound
            )));
        }
        Ok(self.enum_bound)
    }
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Number of rows (triangles) or terms (sequences)
    #[arg(long, visible_alias = "terms", default_value_t = 7)]
    rows: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Assoc)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(flatten)]
    guards: Guards,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    family: Family,
    /// Route used for stirling-b
    #[arg(long, value_enum, default_value_t = Route::Recurrence)]
    via: Route,
    #[command(flatten)]
    common: FamilyArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqFamily {
    D,
    Lattice,
    Tree,
    Incomplete,
    TypebFactorial,
    /// d_{r,n} as a polynomial in r for fixed --n
    DPoly,
    /// n! d_asym(r, n) e^{-1/2} for fixed --r and --n
    DAsym,
}

#[derive(Args)]
struct SeqArgs {
    #[arg(value_enum)]
    family: SeqFamily,
    /// Index used by d-poly and d-asym
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Decimal digits for d-asym
    #[arg(long, default_value_t = 30)]
    precision: usize,
    #[command(flatten)]
    common: FamilyArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Riordan,
    Oracle,
    Howard,
    Asymptotic,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Riordan => Scope::Riordan,
            ScopeArg::Oracle => Scope::Oracle,
            ScopeArg::Howard => Scope::Howard,
            ScopeArg::Asymptotic => Scope::Asymptotic,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    scope: ScopeArg,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    max_r: usize,
    #[command(flatten)]
    guards: Guards,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Assoc)]
    mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Report only the count with k + r cycles
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(flatten)]
    guards: Guards,
}

fn params(common: &FamilyArgs, route: Route) -> CliResult<Params> {
    common.guards.check_order("row count", common.rows)?;
    Ok(Params {
        m: common.m,
        r: common.r,
        count: common.rows,
        mode: common.mode.into(),
        route,
        enumeration_bound: common.guards.enumeration_bound()?,
    })
}

fn mode_label(family: Family, mode: Mode) -> Option<&'static str> {
    matches!(family, Family::StirlingA | Family::Incomplete | Family::TypebFactorial).then(|| mode.as_str())
}

fn emit_sequence(family: Family, common: &FamilyArgs, p: &Params) -> CliResult<String> {
    let (terms, provenance) = families::sequence(family, p)?;
    let doc = SequenceDocument {
        family: family.name().to_string(),
        m: p.m,
        r: p.r,
        mode: mode_label(family, p.mode).map(str::to_string),
        terms: terms.iter().map(render::to_number).collect(),
        provenance: provenance.to_string(),
    };
    render::render_sequence(&doc, &terms, common.format)
}

fn cmd_table(args: &TableArgs) -> CliResult<String> {
    let p = params(&args.common, args.via)?;
    if !args.family.is_triangle() {
        return emit_sequence(args.family, &args.common, &p);
    }
    let table = families::triangle(args.family, &p)?;
    let doc = TableDocument::new(args.family.name(), p.m, p.r, mode_label(args.family, p.mode), &table);
    render::render_table(&doc, &table, args.common.format)
}

fn cmd_seq(args: &SeqArgs) -> CliResult<String> {
    let p = params(&args.common, Route::Recurrence)?;
    let family = match args.family {
        SeqFamily::D => Family::D,
        SeqFamily::Lattice => Family::Lattice,
        SeqFamily::Tree => Family::Tree,
        SeqFamily::Incomplete => Family::Incomplete,
        SeqFamily::TypebFactorial => Family::TypebFactorial,
        SeqFamily::DPoly => return d_poly(args),
        SeqFamily::DAsym => return d_asym(args),
    };
    emit_sequence(family, &args.common, &p)
}

fn d_poly(args: &SeqArgs) -> CliResult<String> {
    args.common.guards.check_order("n", args.n)?;
    let poly = derangements::d_poly(args.n)?;
    Ok(match args.common.format {
        Format::Pretty => format!("{poly}\n"),
        Format::Csv => {
            let line: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
            format!("{}\n", line.join(","))
        }
        Format::Json => {
            let coeffs: Vec<_> = poly.coeffs().iter().map(render::to_number).collect();
            let v = json!({"family": "d-poly", "n": args.n, "coefficients": coeffs, "polynomial": poly.to_string()});
            format!("{v}\n")
        }
    })
}

fn d_asym(args: &SeqArgs) -> CliResult<String> {
    args.common.guards.check_order("n", args.n)?;
    let a = families::asymptotic(args.common.r as u64, args.n as u64, args.precision);
    let ratio = a.ratio.clone().unwrap_or_else(|| "undefined".to_string());
    Ok(match args.common.format {
        Format::Pretty => format!(
            "estimate {}\nexact    {}\nratio    {}\nprefactor {}\n",
            a.estimate, a.exact, ratio, a.prefactor
        ),
        Format::Csv => format!("{},{},{},{},{},{}\n", a.r, a.n, a.prefactor, a.estimate, a.exact, ratio),
        Format::Json => {
            let v = json!({
                "family": "d-asym",
                "r": a.r,
                "n": a.n,
                "prefactor": a.prefactor.to_string(),
                "estimate": a.estimate,
                "exact": render::to_number(&a.exact),
                "ratio": ratio,
            });
            format!("{v}\n")
        }
    })
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<String> {
    args.guards.check_order("max-n", args.max_n)?;
    let mut config = VerifyConfig::new(args.scope.into(), args.max_n, args.max_r);
    config.enumeration_bound = args.guards.enumeration_bound()?;
    let report = verify::run(&config);
    let text = report.to_string();
    if let Some((name, failure)) = report.first_failure() {
        return Err(CliError::Verification(format!("{text}first failure in {name}: {failure}")));
    }
    Ok(format!("{text}all {} checks passed ({} cells)\n", report.checks.len(), report.cells()))
}

fn cmd_oracle(args: &OracleArgs) -> CliResult<String> {
    let bound = args.guards.enumeration_bound()?;
    if args.n + args.r > bound {
        return Err(CliError::Usage(format!(
            "n + r = {} exceeds the enumeration bound {bound} (raise --enum-bound or TYPEB_ENUM_BOUND)",
            args.n + args.r
        )));
    }
    let mode: Mode = args.mode.into();
    let counts = parallel_counts(&OracleQuery::new(args.n, args.r, mode, args.m), bound)?;
    let count = match args.k {
        Some(k) => counts.get(k).cloned().unwrap_or_default(),
        None => counts.iter().sum(),
    };
    Ok(match args.format {
        Format::Pretty | Format::Csv => format!("{count}\n"),
        Format::Json => {
            let v = json!({
                "n": args.n,
                "r": args.r,
                "mode": mode.as_str(),
                "m": args.m,
                "k": args.k,
                "count": render::to_number(&count),
            });
            format!("{v}\n")
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Seq(a) => cmd_seq(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            println!("{report}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
