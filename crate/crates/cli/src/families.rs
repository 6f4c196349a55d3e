//! Table and sequence construction for every family the command knows.

use clap::ValueEnum;
use num_bigint::BigInt;
use typeb_core::permcore::OracleQuery;
use typeb_core::riordan::{ExpRiordanArray, Provenance, TriangleTable};
use typeb_core::sequences::{derangements, inverse, stirling_b, type_a};
use typeb_core::{numeric, Mode};

use crate::oracle::parallel_counts;
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// r-Stirling numbers of type B, `{n brack k}_{>=m, r}`
    StirlingB,
    /// r-derangements of type B, `d_{r,n}`
    D,
    /// Unsigned inverse of the `m = 2` Stirling-B array
    Inverse,
    /// Points of `Z^r` at taxicab distance `n`
    Lattice,
    /// Colored increasing plane trees
    Tree,
    /// Restricted or associated Stirling numbers of the first kind
    StirlingA,
    /// Row sums of the restricted or associated triangle
    Incomplete,
    /// Type B totals by binomial convolution
    TypebFactorial,
}

impl Family {
    pub fn is_triangle(self) -> bool {
        matches!(self, Family::StirlingB | Family::Inverse | Family::StirlingA)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::StirlingB => "stirling-b",
            Family::D => "d",
            Family::Inverse => "inverse",
            Family::Lattice => "lattice",
            Family::Tree => "tree",
            Family::StirlingA => "stirling-a",
            Family::Incomplete => "incomplete",
            Family::TypebFactorial => "typeb-factorial",
        }
    }
}

/// How a Stirling-B triangle is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Recurrence,
    Riordan,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Assoc,
    Restr,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Assoc => Mode::Associated,
            ModeArg::Restr => Mode::Restricted,
        }
    }
}

/// Everything a table or sequence request can depend on.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub m: u32,
    pub r: u32,
    /// Number of rows (triangles) or terms (sequences).
    pub count: usize,
    pub mode: Mode,
    pub route: Route,
    pub enumeration_bound: usize,
}

pub fn triangle(family: Family, p: &Params) -> CliResult<TriangleTable> {
    let Some(n_max) = p.count.checked_sub(1) else {
        return Ok(TriangleTable::new(Vec::new(), Provenance::Recurrence)?);
    };
    match family {
        Family::StirlingB => stirling_b_table(n_max, p),
        Family::Inverse => Ok(TriangleTable::new(
            inverse::inverse_triangle_table(n_max, p.r as u64),
            Provenance::Recurrence,
        )?),
        Family::StirlingA => Ok(TriangleTable::new(
            type_a::stirling_a_table(n_max, p.mode, p.m),
            Provenance::Recurrence,
        )?),
        _ => Err(CliError::Usage(format!(
            "{} is a sequence; use `seq {}`",
            family.name(),
            family.name()
        ))),
    }
}

fn stirling_b_table(n_max: usize, p: &Params) -> CliResult<TriangleTable> {
    let r = p.r as usize;
    match p.route {
        Route::Recurrence => {
            if p.m < 2 {
                return Err(CliError::Usage(
                    "the stirling-b recurrence needs --m 2 or larger".to_string(),
                ));
            }
            let t = stirling_b::StirlingBRecurrence::new(n_max, r, p.m)?;
            let rows = t.rows(r).expect("table covers r").to_vec();
            Ok(TriangleTable::new(rows, Provenance::Recurrence)?)
        }
        Route::Riordan => {
            let array = ExpRiordanArray::stirling_b(p.m, p.r, n_max.max(1))?;
            Ok(array.to_table(n_max, Provenance::Riordan)?)
        }
        Route::Oracle => {
            let mut rows = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let q = OracleQuery::new(n, r, p.mode, p.m);
                rows.push(parallel_counts(&q, p.enumeration_bound)?);
            }
            Ok(TriangleTable::new(rows, Provenance::Oracle)?)
        }
    }
}

pub fn sequence(family: Family, p: &Params) -> CliResult<(Vec<BigInt>, Provenance)> {
    let Some(n_max) = p.count.checked_sub(1) else {
        return Ok((Vec::new(), Provenance::Explicit));
    };
    let r = p.r as u64;
    Ok(match family {
        Family::D => (
            derangements::d_table(p.r as usize, n_max).swap_remove(p.r as usize),
            Provenance::Recurrence,
        ),
        Family::Lattice => (
            (0..=n_max as u64).map(|n| inverse::lattice_s(r, n)).collect(),
            Provenance::Explicit,
        ),
        Family::Tree => (inverse::tree_counts(n_max)?, Provenance::Riordan),
        Family::Incomplete => (
            type_a::incomplete_factorials(n_max, p.mode, p.m),
            Provenance::Recurrence,
        ),
        Family::TypebFactorial => (
            (0..=n_max).map(|n| type_a::typeb_factorial_conv(n, p.mode, p.m)).collect(),
            Provenance::Explicit,
        ),
        _ => {
            return Err(CliError::Usage(format!(
                "{} is a triangle; use `table {}`",
                family.name(),
                family.name()
            )))
        }
    })
}

/// `n! d_asym(r, n) e^{-1/2}` and the data around it.
pub struct Asymptotic {
    pub r: u64,
    pub n: u64,
    pub prefactor: numeric::ExactRational,
    pub estimate: String,
    pub exact: BigInt,
    pub ratio: Option<String>,
}

pub fn asymptotic(r: u64, n: u64, precision: usize) -> Asymptotic {
    let terms = 2 * precision as u64 + 40;
    Asymptotic {
        r,
        n,
        prefactor: derangements::d_asym(r, n),
        estimate: derangements::d_asym_decimal(r, n, precision),
        exact: derangements::d_rec(r as usize, n as usize),
        ratio: derangements::asym_ratio(r, n, terms).map(|q| numeric::to_decimal(&q, precision)),
    }
}
