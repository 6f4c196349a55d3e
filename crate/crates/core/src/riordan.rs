//! Exponential Riordan arrays.
//!
//! The pair `(g, f)` stands for the lower-triangular matrix whose k-th column
//! has exponential generating function `g(z) f(z)^k / k!`. Arrays compose by
//! `(g, f) * (h, l) = (g · h∘f, l∘f)`, have identity `(1, z)`, and invert as
//! `(1 / g∘f̄, f̄)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::FormalPowerSeries;
use crate::numeric::{expect_integer, factorial, pow2, rat, rat_int, ExactInt, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpRiordanArray {
    g: FormalPowerSeries,
    f: FormalPowerSeries,
}

/// Coefficients of the production series `A(t) = f'(f̄(t))` and
/// `Z(t) = g'(f̄(t)) / g(f̄(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductionSequences {
    pub a: Vec<ExactRational>,
    pub z: Vec<ExactRational>,
}

impl ExpRiordanArray {
    /// Validates `g(0) != 0`, `f(0) = 0`, `f'(0) != 0` and truncates both
    /// series to their common order.
    pub fn new(g: FormalPowerSeries, f: FormalPowerSeries) -> Result<Self> {
        let order = g.order().min(f.order());
        if order == 0 {
            return Err(Error::Domain("Riordan pair needs order at least 1"));
        }
        if g.coeffs()[0].is_zero() {
            return Err(Error::Domain("g(0) must be nonzero"));
        }
        if !f.coeffs()[0].is_zero() || f.coeffs()[1].is_zero() {
            return Err(Error::Domain("f needs f(0) = 0 and f'(0) != 0"));
        }
        Ok(Self {
            g: g.truncate(order),
            f: f.truncate(order),
        })
    }

    pub fn identity(order: usize) -> Self {
        Self {
            g: FormalPowerSeries::one(order),
            f: FormalPowerSeries::variable(order),
        }
    }

    pub fn g(&self) -> &FormalPowerSeries {
        &self.g
    }

    pub fn f(&self) -> &FormalPowerSeries {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// EGF of column `k`: `g f^k / k!`.
    pub fn column(&self, k: usize) -> Result<FormalPowerSeries> {
        if k > self.order() {
            return Err(Error::Truncation { index: k, order: self.order() });
        }
        let fk = self.f.pow(k as i64)?;
        Ok((&self.g * &fk).scale(&rat_int(factorial(k as u64)).recip()))
    }

    /// `n! [z^n] g f^k / k!`.
    pub fn entry(&self, n: usize, k: usize) -> Result<ExactRational> {
        if n > self.order() || k > self.order() {
            return Err(Error::Truncation { index: n.max(k), order: self.order() });
        }
        if k > n {
            return Ok(ExactRational::zero());
        }
        self.column(k)?.egf_coeff(n)
    }

    /// Rows `0..=n_max`, each of length `n + 1`.
    pub fn rows(&self, n_max: usize) -> Result<Vec<Vec<ExactRational>>> {
        if n_max > self.order() {
            return Err(Error::Truncation { index: n_max, order: self.order() });
        }
        let mut rows: Vec<Vec<ExactRational>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
        let mut col = self.g.clone();
        for k in 0..=n_max {
            if k > 0 {
                col = (&col * &self.f).scale(&rat(1, k as i64));
            }
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row.push(col.egf_coeff(n)?);
            }
        }
        Ok(rows)
    }

    /// Materializes rows `0..=n_max` as an integer table, failing if any
    /// entry is not an integer.
    pub fn to_table(&self, n_max: usize, provenance: Provenance) -> Result<TriangleTable> {
        let rows = self
            .rows(n_max)?
            .iter()
            .map(|row| row.iter().map(|q| expect_integer(q, "Riordan entry")).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        TriangleTable::new(rows, provenance)
    }

    /// Group product `self * other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let g = &self.g * &other.g.compose(&self.f)?;
        let f = other.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// Group inverse `(1 / g∘f̄, f̄)`.
    pub fn invert(&self) -> Result<Self> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        Self::new(g, fbar)
    }

    /// Conjugation by `diag((-1)^n)`: entry `(n, k)` picks up `(-1)^{n+k}`.
    pub fn unsigned_conjugate(&self) -> Self {
        let minus = rat(-1, 1);
        Self {
            g: self.g.dilate(&minus),
            f: -&self.f.dilate(&minus),
        }
    }

    /// Fundamental theorem: the EGF of this array applied to the column
    /// vector whose EGF is `h`, namely `g · h∘f`.
    pub fn apply_fte(&self, h: &FormalPowerSeries) -> Result<FormalPowerSeries> {
        Ok(&self.g * &h.compose(&self.f)?)
    }

    /// Coefficients of `A(t)` and `Z(t)` up to order `N - 1`.
    pub fn production_sequences(&self) -> Result<ProductionSequences> {
        let fbar = self.f.revert()?;
        let a = self.f.derivative().compose(&fbar)?;
        let log_deriv = &self.g.derivative() * &self.g.recip()?;
        let z = log_deriv.compose(&fbar)?;
        Ok(ProductionSequences {
            a: a.coeffs().to_vec(),
            z: z.coeffs().to_vec(),
        })
    }

    /// Rebuilds rows `0..=n_max` from row 0 alone using the production
    /// sequences: each row is a fixed linear combination of the previous one.
    pub fn rebuild_rows(&self, n_max: usize) -> Result<Vec<Vec<ExactRational>>> {
        let prod = self.production_sequences()?;
        if n_max > prod.a.len() {
            return Err(Error::Truncation { index: n_max, order: prod.a.len() });
        }
        let fact: Vec<ExactRational> = (0..=n_max as u64).map(|i| rat_int(factorial(i))).collect();
        let mut rows = vec![vec![self.g.coeffs()[0].clone()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = Vec::with_capacity(n + 2);
            // column 0: sum_i i! z_i l_{n,i}
            let mut c0 = ExactRational::zero();
            for (i, l) in prev.iter().enumerate() {
                c0 += &fact[i] * &prod.z[i] * l;
            }
            next.push(c0);
            for k in 1..=n + 1 {
                let mut s = ExactRational::zero();
                for i in k..=n {
                    let w = &prod.z[i - k] + rat(k as i64, 1) * &prod.a[i - k + 1];
                    s += &fact[i] * w * &prev[i];
                }
                s /= &fact[k];
                s += &prod.a[0] * &prev[k - 1];
                next.push(s);
            }
            rows.push(next);
        }
        Ok(rows)
    }

    /// The array of m-associated r-Stirling numbers of type B.
    ///
    /// For `m = 2` this is `(((1+2z)/(1-2z))^r, -ln(1-2z) - z)`. For larger
    /// `m`, `g = ((1 - z^{m-1})/(1-z) + 2^m z^{m-1}/(1-2z))^r` and
    /// `f = -ln(1-2z) - sum_{k<m} (2^k - 1) z^k / k`.
    pub fn stirling_b(m: u32, r: u32, order: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Unsupported("Riordan construction needs m >= 2"));
        }
        if m == 2 {
            let ratio = &FormalPowerSeries::from_ints(&[1, 2], order)
                * &FormalPowerSeries::from_ints(&[1, -2], order).recip()?;
            return Self::new(ratio.pow(r as i64)?, ge2_f(order)?);
        }
        Self::new(
            stirling_b_g_base(m, order)?.pow(r as i64)?,
            stirling_b_f(m, order)?,
        )
    }
}

/// `-ln(1 - 2z) - z`
fn ge2_f(order: usize) -> Result<FormalPowerSeries> {
    let log = FormalPowerSeries::from_ints(&[1, -2], order).log()?;
    Ok(&(-&log) - &FormalPowerSeries::variable(order))
}

/// `(1 - z^{m-1})/(1 - z) + 2^m z^{m-1}/(1 - 2z)`
pub(crate) fn stirling_b_g_base(m: u32, order: usize) -> Result<FormalPowerSeries> {
    let d = (m - 1) as usize;
    let short = FormalPowerSeries::from_fn(order, |j| if j < d { rat(1, 1) } else { rat(0, 1) });
    let tail = &FormalPowerSeries::monomial(rat_int(pow2(m as u64)), d, order)
        * &FormalPowerSeries::geometric(&rat(2, 1), order);
    Ok(&short + &tail)
}

/// `-ln(1 - 2z) - sum_{k=1}^{m-1} (2^k - 1) z^k / k`
pub(crate) fn stirling_b_f(m: u32, order: usize) -> Result<FormalPowerSeries> {
    let log = FormalPowerSeries::from_ints(&[1, -2], order).log()?;
    let short = FormalPowerSeries::from_fn(order, |k| {
        if k >= 1 && k < m as usize {
            rat_int(pow2(k as u64) - 1) / rat(k as i64, 1)
        } else {
            rat(0, 1)
        }
    });
    Ok(&(-&log) - &short)
}

/// Which route produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Riordan,
    Recurrence,
    Oracle,
    Explicit,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Riordan => "riordan",
            Provenance::Recurrence => "recurrence",
            Provenance::Oracle => "oracle",
            Provenance::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "riordan" => Ok(Provenance::Riordan),
            "recurrence" => Ok(Provenance::Recurrence),
            "oracle" => Ok(Provenance::Oracle),
            "explicit" => Ok(Provenance::Explicit),
            _ => Err(Error::Domain("unknown provenance label")),
        }
    }
}

/// A materialized lower-triangular integer table. Row `n` stores columns
/// `0..=n`; everything above the diagonal is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleTable {
    rows: Vec<Vec<ExactInt>>,
    provenance: Provenance,
}

impl TriangleTable {
    /// Accepts ragged rows (row `n` of length `n + 1`) or square rows whose
    /// entries above the diagonal are zero.
    pub fn new(rows: Vec<Vec<ExactInt>>, provenance: Provenance) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (n, mut row) in rows.into_iter().enumerate() {
            if row.len() < n + 1 {
                return Err(Error::Domain("triangle row shorter than its index"));
            }
            if row[n + 1..].iter().any(|v| !v.is_zero()) {
                return Err(Error::Domain("nonzero entry above the diagonal"));
            }
            row.truncate(n + 1);
            out.push(row);
        }
        Ok(Self { rows: out, provenance })
    }

    /// Builds a table from a cell function over `0 <= k <= n <= n_max`.
    pub fn from_fn(
        n_max: usize,
        provenance: Provenance,
        mut cell: impl FnMut(usize, usize) -> Result<ExactInt>,
    ) -> Result<Self> {
        let rows = (0..=n_max)
            .map(|n| (0..=n).map(|k| cell(n, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows, provenance })
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.rows
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, n: usize, k: usize) -> Option<ExactInt> {
        let row = self.rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(ExactInt::zero))
    }

    pub fn row_sums(&self) -> Vec<ExactInt> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// First cell where the two tables differ, with both values.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, ExactInt, ExactInt)> {
        let n = self.len().max(other.len());
        for i in 0..n {
            for k in 0..=i {
                let a = self.get(i, k);
                let b = other.get(i, k);
                if a != b {
                    return Some((
                        i,
                        k,
                        a.unwrap_or_else(ExactInt::zero),
                        b.unwrap_or_else(ExactInt::zero),
                    ));
                }
            }
        }
        None
    }

    /// Values equal, ignoring provenance.
    pub fn same_values(&self, other: &Self) -> bool {
        self.rows == other.rows
    }

    pub fn describe(&self) -> String {
        alloc::format!("{} rows from {}", self.len(), self.provenance)
    }
}

impl ProductionSequences {
    pub fn is_identity(&self) -> bool {
        self.a.first().is_some_and(|a| a.is_one())
            && self.a.iter().skip(1).all(Zero::is_zero)
            && self.z.iter().all(Zero::is_zero)
    }
}
