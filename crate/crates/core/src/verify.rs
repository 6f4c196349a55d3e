//! Cross-route verification over a parameter grid.
//!
//! Every check compares two independently computed values cell by cell and
//! stops at the first disagreement, recording the coordinates, both values
//! and the route that produced each.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::fps::FormalPowerSeries;
use crate::numeric::{expect_integer, factorial, inv_sqrt_e, pow2, rat, rat_int, ExactRational};
use crate::permcore::{Mode, OracleQuery};
use crate::riordan::ExpRiordanArray;
use crate::sequences::derangements::{asym_ratio, chow, d_egf, d_explicit, d_table};
use crate::sequences::howard::{howard_check, HowardVariant};
use crate::sequences::inverse::{inverse_triangle_table, lattice_s};
use crate::sequences::stirling_b::{diagonals_ge2, diagonals_general, StirlingBRecurrence};
use crate::sequences::type_a::typeb_factorial_conv;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Riordan,
    Oracle,
    Howard,
    Asymptotic,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Riordan => "riordan",
            Scope::Oracle => "oracle",
            Scope::Howard => "howard",
            Scope::Asymptotic => "asymptotic",
        }
    }

    fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Scope::All, Scope::Riordan, Scope::Oracle, Scope::Howard, Scope::Asymptotic]
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or(Error::Domain("unknown verification scope"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub scope: Scope,
    /// Largest `n` on every grid except the asymptotic one, which uses
    /// fixed sample points.
    pub max_n: usize,
    pub max_r: usize,
    /// Largest `n + r` handed to the enumeration oracle.
    pub enumeration_bound: usize,
}

impl VerifyConfig {
    pub fn new(scope: Scope, max_n: usize, max_r: usize) -> Self {
        Self {
            scope,
            max_n,
            max_r,
            enumeration_bound: crate::permcore::DEFAULT_ENUMERATION_BOUND,
        }
    }
}

/// The first disagreeing cell of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub cell: String,
    pub left: String,
    pub left_route: &'static str,
    pub right: String,
    pub right_route: &'static str,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} = {} but {} = {}",
            self.cell, self.left_route, self.left, self.right_route, self.right
        )
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cells: usize,
    pub failure: Option<Failure>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        Self { name, cells: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one comparison; only the first failure is kept.
    fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        cell: impl FnOnce() -> String,
        left: (&T, &'static str),
        right: (&T, &'static str),
    ) {
        self.cells += 1;
        if self.failure.is_none() && left.0 != right.0 {
            self.failure = Some(Failure {
                cell: cell(),
                left: left.0.to_string(),
                left_route: left.1,
                right: right.0.to_string(),
                right_route: right.1,
            });
        }
    }

    fn error(&mut self, cell: String, err: &Error) {
        self.cells += 1;
        if self.failure.is_none() {
            self.failure = Some(Failure {
                cell,
                left: err.to_string(),
                left_route: "error",
                right: String::new(),
                right_route: "none",
            });
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Failure)> {
        self.checks
            .iter()
            .find_map(|c| c.failure.as_ref().map(|f| (c.name, f)))
    }

    pub fn cells(&self) -> usize {
        self.checks.iter().map(|c| c.cells).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(f, "{status} {} ({} cells)", c.name, c.cells)?;
            if let Some(fail) = &c.failure {
                writeln!(f, "  first failure at {fail}")?;
            }
        }
        Ok(())
    }
}

pub fn run(config: &VerifyConfig) -> Report {
    let mut report = Report::default();
    if config.scope.includes(Scope::Riordan) {
        report.checks.extend(riordan_checks(config));
    }
    if config.scope.includes(Scope::Oracle) {
        report.checks.extend(oracle_checks(config));
    }
    if config.scope.includes(Scope::Howard) {
        report.checks.extend(howard_checks(config));
    }
    if config.scope.includes(Scope::Asymptotic) {
        report.checks.extend(asymptotic_checks(config));
    }
    report
}

fn int_entry(array: &ExpRiordanArray, n: usize, k: usize) -> Result<crate::numeric::ExactInt> {
    expect_integer(&array.entry(n, k)?, "Riordan entry")
}

fn riordan_checks(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let (max_n, max_r) = (cfg.max_n, cfg.max_r);
    let order = max_n.max(1);
    let mut rec_vs_riordan = CheckOutcome::new("recurrence = Riordan array (m = 2, 3)");
    let mut production = CheckOutcome::new("production matrix rebuild = Riordan array");
    let mut derangements = CheckOutcome::new("r-derangements: recurrence = explicit = EGF = row sums");
    let mut lattice = CheckOutcome::new("column zero = 2^n n! lattice count");
    let mut diag = CheckOutcome::new("diagonal closed forms = recurrence");
    let mut inverse = CheckOutcome::new("inverse array: C C^-1 = I and recurrence = unsigned inverse");

    let d = d_table(max_r, max_n);
    for m in [2u32, 3] {
        let Ok(table) = StirlingBRecurrence::new(max_n, max_r, m) else {
            continue;
        };
        for r in 0..=max_r {
            let array = match ExpRiordanArray::stirling_b(m, r as u32, order) {
                Ok(a) => a,
                Err(e) => {
                    rec_vs_riordan.error(format!("m={m} r={r}"), &e);
                    continue;
                }
            };
            let rebuilt = array.rebuild_rows(max_n);
            for n in 0..=max_n {
                for k in 0..=n {
                    let rec = table.get(n, k, r).unwrap_or_default();
                    match int_entry(&array, n, k) {
                        Ok(v) => rec_vs_riordan.compare(
                            || format!("m={m} r={r} n={n} k={k}"),
                            (&rec, "recurrence"),
                            (&v, "riordan"),
                        ),
                        Err(e) => rec_vs_riordan.error(format!("m={m} r={r} n={n} k={k}"), &e),
                    }
                    match &rebuilt {
                        Ok(rows) => production.compare(
                            || format!("m={m} r={r} n={n} k={k}"),
                            (&rat_int(rec.clone()), "recurrence"),
                            (&rows[n][k], "production"),
                        ),
                        Err(e) => production.error(format!("m={m} r={r} n={n} k={k}"), e),
                    }
                }
            }
            if m != 2 {
                continue;
            }
            // row sums through the fundamental theorem: g e^f
            let sums = array
                .apply_fte(&FormalPowerSeries::exponential(&rat(1, 1), order))
                .map(|s| s.egf_coeffs());
            let egf = d_egf(r as u64, max_n);
            for n in 0..=max_n {
                let cell = || format!("r={r} n={n}");
                let rec = &d[r][n];
                let row_sum: crate::numeric::ExactInt = table.row(n, r).unwrap_or_default().iter().sum();
                derangements.compare(cell, (rec, "recurrence"), (&row_sum, "triangle row sum"));
                match d_explicit(r as u64, n as u64) {
                    Ok(v) => derangements.compare(cell, (rec, "recurrence"), (&v, "explicit")),
                    Err(e) => derangements.error(cell(), &e),
                }
                match &egf {
                    Ok(v) => derangements.compare(cell, (rec, "recurrence"), (&v[n], "egf")),
                    Err(e) => derangements.error(cell(), e),
                }
                match &sums {
                    Ok(v) => derangements.compare(cell, (&rat_int(rec.clone()), "recurrence"), (&v[n], "riordan fte")),
                    Err(e) => derangements.error(cell(), e),
                }
                let col0 = table.get(n, 0, r).unwrap_or_default();
                let lat = pow2(n as u64) * factorial(n as u64) * lattice_s(r as u64, n as u64);
                lattice.compare(cell, (&col0, "recurrence"), (&lat, "explicit"));
                if n < max_n {
                    let (first, second) = diagonals_ge2(n as u64, r as u64);
                    let v = table.get(n + 1, n, r).unwrap_or_default();
                    diag.compare(|| format!("first r={r} n={n}"), (&v, "recurrence"), (&first, "explicit"));
                    if n + 2 <= max_n {
                        let v = table.get(n + 2, n, r).unwrap_or_default();
                        diag.compare(|| format!("second r={r} n={n}"), (&v, "recurrence"), (&second, "explicit"));
                    }
                }
            }
            let inv = array.invert();
            match inv.as_ref().map_err(Clone::clone).and_then(|i| array.multiply(i)).and_then(|p| p.rows(max_n)) {
                Ok(rows) => {
                    for (n, row) in rows.iter().enumerate() {
                        for (k, v) in row.iter().enumerate() {
                            let delta = rat(i64::from(n == k), 1);
                            inverse.compare(|| format!("r={r} n={n} k={k} of C C^-1"), (v, "product"), (&delta, "identity"));
                        }
                    }
                }
                Err(e) => inverse.error(format!("r={r}"), &e),
            }
            if let Ok(inv) = inv {
                let unsigned = inv.unsigned_conjugate();
                let t = inverse_triangle_table(max_n, r as u64);
                for n in 0..=max_n {
                    for k in 0..=n {
                        match unsigned.entry(n, k) {
                            Ok(v) => inverse.compare(
                                || format!("r={r} n={n} k={k}"),
                                (&rat_int(t[n][k].clone()), "recurrence"),
                                (&v, "riordan"),
                            ),
                            Err(e) => inverse.error(format!("r={r} n={n} k={k}"), &e),
                        }
                    }
                }
            }
        }
    }
    alloc::vec![rec_vs_riordan, production, derangements, lattice, diag, inverse]
}

fn oracle_checks(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let bound = cfg.enumeration_bound;
    let mut tri = CheckOutcome::new("oracle = recurrence (m = 2, 3)");
    let mut diag = CheckOutcome::new("oracle = general diagonal formulas (m = 1, 2, 3)");
    let mut totals = CheckOutcome::new("oracle totals = binomial convolution (m = 2, 3)");
    let mut chow_check = CheckOutcome::new("oracle totals = Chow formula");
    let tables: Vec<_> = [2u32, 3]
        .into_iter()
        .filter_map(|m| StirlingBRecurrence::new(cfg.max_n, cfg.max_r, m).ok())
        .collect();
    for r in 0..=cfg.max_r {
        for n in 0..=cfg.max_n {
            if n + r > bound {
                continue;
            }
            for m in 1..=3u32 {
                let counts = match OracleQuery::new(n, r, Mode::Associated, m).counts(bound) {
                    Ok(c) => c,
                    Err(e) => {
                        tri.error(format!("m={m} r={r} n={n}"), &e);
                        continue;
                    }
                };
                if let Some(table) = tables.iter().find(|t| t.m() == m) {
                    for (k, o) in counts.iter().enumerate() {
                        let v = table.get(n, k, r).unwrap_or_default();
                        tri.compare(|| format!("m={m} r={r} n={n} k={k}"), (o, "oracle"), (&v, "recurrence"));
                    }
                }
                if n >= 1 {
                    if let Ok((first, _)) = diagonals_general(n as u64 - 1, r as u64, m) {
                        let cell = || format!("first m={m} r={r} n={}", n - 1);
                        diag.compare(cell, (&counts[n - 1], "oracle"), (&first, "explicit"));
                    }
                }
                if n >= 2 {
                    if let Ok((_, second)) = diagonals_general(n as u64 - 2, r as u64, m) {
                        let cell = || format!("second m={m} r={r} n={}", n - 2);
                        diag.compare(cell, (&counts[n - 2], "oracle"), (&second, "explicit"));
                    }
                }
                if r == 0 && m >= 2 {
                    let total: crate::numeric::ExactInt = counts.iter().sum();
                    let conv = typeb_factorial_conv(n, Mode::Associated, m);
                    totals.compare(|| format!("assoc m={m} n={n}"), (&total, "oracle"), (&conv, "explicit"));
                    if m == 2 {
                        let c = chow(n as u64);
                        chow_check.compare(|| format!("n={n}"), (&total, "oracle"), (&c, "explicit"));
                    }
                }
            }
            if r == 0 {
                for m in [2u32, 3] {
                    match OracleQuery::new(n, 0, Mode::Restricted, m).counts(bound) {
                        Ok(c) => {
                            let total: crate::numeric::ExactInt = c.iter().sum();
                            let conv = typeb_factorial_conv(n, Mode::Restricted, m);
                            totals.compare(|| format!("restr m={m} n={n}"), (&total, "oracle"), (&conv, "explicit"));
                        }
                        Err(e) => totals.error(format!("restr m={m} n={n}"), &e),
                    }
                }
            }
        }
    }
    alloc::vec![tri, diag, totals, chow_check]
}

fn howard_checks(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for variant in HowardVariant::ALL {
        let mut check = CheckOutcome::new(match variant {
            HowardVariant::TypeA => "Howard identity: ordinary permutations",
            HowardVariant::General => "Howard identity: type B, binomial form",
            HowardVariant::GeneralCompact => "Howard identity: type B, factorial form",
            HowardVariant::NoSpecials => "Howard identity: type B, no specials",
            HowardVariant::SignedR => "Howard identity: signed r-permutations",
            HowardVariant::Signed => "Howard identity: signed permutations",
        });
        let r_range = match variant {
            HowardVariant::TypeA | HowardVariant::NoSpecials | HowardVariant::Signed => 0..=0,
            _ => 0..=cfg.max_r,
        };
        let m_range = match variant {
            HowardVariant::TypeA | HowardVariant::SignedR | HowardVariant::Signed => 1..=1,
            _ => 1..=3,
        };
        for m in m_range {
            for r in r_range.clone() {
                for n in 0..=cfg.max_n {
                    for k in 0..=n {
                        let cell = || format!("m={m} r={r} n={n} k={k}");
                        match howard_check(n, k, r, m, variant) {
                            Ok((l, rh)) => check.compare(cell, (&l, "left side"), (&rh, "right side")),
                            Err(e) => check.error(cell(), &e),
                        }
                    }
                }
            }
        }
        out.push(check);
    }
    out
}

/// Sample points for the large-n checks, independent of `max_n`.
pub const ASYMPTOTIC_POINTS: [u64; 3] = [10, 20, 30];

/// Relative error `|d_{r,n} / (n! d_asym(r, n) e^{-1/2}) - 1|`, exact up to
/// the series used for `e^{-1/2}` (far below the errors measured).
pub fn asymptotic_error(r: u64, n: u64) -> Option<ExactRational> {
    asym_ratio(r, n, 80).map(|q| (q - rat(1, 1)).abs())
}

/// `|d_{0,n} / (2^n n!) - e^{-1/2}|`.
pub fn limit_error(n: u64) -> ExactRational {
    let q = rat_int(chow(n)) / rat_int(pow2(n) * factorial(n));
    (q - inv_sqrt_e(80)).abs()
}

fn asymptotic_checks(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut mono = CheckOutcome::new("asymptotic error decreases and is below 0.05 at n = 30");
    let mut limit = CheckOutcome::new("d_{0,n} / (2^n n!) within 0.01 of e^{-1/2} at n = 25");
    let tolerance = rat(5, 100);
    for r in 0..=cfg.max_r.min(2) as u64 {
        let errs: Vec<Option<ExactRational>> = ASYMPTOTIC_POINTS.iter().map(|&n| asymptotic_error(r, n)).collect();
        let decreasing = errs.windows(2).all(|w| match (&w[0], &w[1]) {
            (Some(a), Some(b)) => b < a,
            _ => false,
        });
        mono.compare(|| format!("r={r} decreasing"), (&decreasing, "asymptotic"), (&true, "expected"));
        let last = errs.last().cloned().flatten();
        let small = last.is_some_and(|e| e < tolerance);
        mono.compare(|| format!("r={r} n=30 below 0.05"), (&small, "asymptotic"), (&true, "expected"));
    }
    let within = limit_error(25) < rat(1, 100);
    limit.compare(|| "n=25".to_string(), (&within, "limit"), (&true, "expected"));
    alloc::vec![mono, limit]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        for s in ["all", "riordan", "oracle", "howard", "asymptotic"] {
            assert_eq!(s.parse::<Scope>().unwrap().as_str(), s);
        }
        assert!("other".parse::<Scope>().is_err());
    }

    #[test]
    fn trivial_grid_passes() {
        let r = run(&VerifyConfig::new(Scope::All, 0, 0));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn riordan_and_howard_grids_pass() {
        for scope in [Scope::Riordan, Scope::Howard] {
            let r = run(&VerifyConfig::new(scope, 6, 3));
            assert!(r.passed(), "{r}");
            assert!(r.cells() > 0);
        }
    }

    #[test]
    fn oracle_grid_passes() {
        let r = run(&VerifyConfig::new(Scope::Oracle, 4, 2));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn asymptotic_errors() {
        let r = run(&VerifyConfig::new(Scope::Asymptotic, 0, 2));
        assert!(r.passed(), "{r}");
        assert!(limit_error(25) < rat(1, 100));
    }

    #[test]
    fn failure_reporting_keeps_first_cell() {
        let mut c = CheckOutcome::new("demo");
        c.compare(|| "a".into(), (&1, "x"), (&1, "y"));
        c.compare(|| "b".into(), (&1, "x"), (&2, "y"));
        c.compare(|| "c".into(), (&3, "x"), (&4, "y"));
        let f = c.failure.clone().unwrap();
        assert_eq!(f.cell, "b");
        assert_eq!(f.to_string(), "b: x = 1 but y = 2");
        assert_eq!(c.cells, 3);
        let report = Report { checks: alloc::vec![c] };
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().0, "demo");
    }
}
