//! Type B r-derangements: `d_{r,n}` counts signed permutations of `[n + r]`
//! with no unbarred fixed point whose specials `1..=r` lie in distinct
//! cycles. Arguments are always ordered `(r, n)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::fps::FormalPowerSeries;
use crate::numeric::{
    binomial, choose, expect_integer, factorial, falling_factorial, interpolate, pow2, rat, rat_int,
    rising_factorial, sign, ExactInt, ExactRational,
};

/// Chow's count of type B derangements, `n! sum_k (-1)^k 2^{n-k} / k!`.
pub fn chow(n: u64) -> ExactInt {
    (0..=n)
        .map(|k| sign(k) * pow2(n - k) * factorial(n) / factorial(k))
        .sum()
}

/// Table `d[r][n]` for `r <= r_max`, `n <= n_max`, built from
/// `d_{r,n} = d_{r-1,n} + 2n d_{r,n-1} + 2n d_{r-1,n-1}` with `d_{r,0} = 1`
/// and Chow's formula in row `r = 0`.
pub fn d_table(r_max: usize, n_max: usize) -> Vec<Vec<ExactInt>> {
    let mut d: Vec<Vec<ExactInt>> = Vec::with_capacity(r_max + 1);
    d.push((0..=n_max as u64).map(chow).collect());
    for r in 1..=r_max {
        let mut row = Vec::with_capacity(n_max + 1);
        row.push(ExactInt::one());
        for n in 1..=n_max {
            let v = &d[r - 1][n] + (&row[n - 1] + &d[r - 1][n - 1]) * (2 * n);
            row.push(v);
        }
        d.push(row);
    }
    d
}

/// `d_{r,n}` by recurrence.
pub fn d_rec(r: usize, n: usize) -> ExactInt {
    d_table(r, n)[r][n].clone()
}

/// `d_{r,n}` by inclusion-exclusion on the fixed points left after the
/// special cycles are built.
pub fn d_explicit(r: u64, n: u64) -> Result<ExactInt> {
    let half = rat(1, 2);
    let mut total = ExactRational::zero();
    for i in 0..=r.min(n) {
        let outer = choose(r as i64, i as i64) * falling_factorial(n as i64, i) * pow2(i);
        let mut inner = ExactRational::zero();
        let mut half_pow = ExactRational::one();
        for k in 0..=n - i {
            let term = sign(k) * choose((n - i) as i64, k as i64) * rising_factorial(i as i64 + 1, n - i - k);
            inner += rat_int(term) * &half_pow;
            half_pow *= &half;
        }
        total += rat_int(outer) * inner;
    }
    expect_integer(&(total * rat_int(pow2(n))), "explicit r-derangement sum")
}

/// The EGF `e^{-x} / (1 - 2x) ((1 + 2x) / (1 - 2x))^r` truncated after `x^n_max`.
pub fn d_egf_series(r: u64, n_max: usize) -> Result<FormalPowerSeries> {
    let order = n_max;
    let two = rat(2, 1);
    let inv = FormalPowerSeries::geometric(&two, order);
    let ratio = &FormalPowerSeries::from_ints(&[1, 2], order) * &inv;
    let e = FormalPowerSeries::exponential(&rat(-1, 1), order);
    Ok(&(&e * &inv) * &ratio.pow(r as i64)?)
}

/// `d_{r,n}` for `n = 0..=n_max` as EGF coefficients.
pub fn d_egf(r: u64, n_max: usize) -> Result<Vec<ExactInt>> {
    d_egf_series(r, n_max)?
        .egf_coeffs()
        .iter()
        .map(|q| expect_integer(q, "r-derangement EGF coefficient"))
        .collect()
}

/// A polynomial in `r` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPolynomial {
    coeffs: Vec<ExactInt>,
}

impl RPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ExactInt::zero());
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial at degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, r: i64) -> ExactInt {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactInt::zero(), |acc, c| acc * r + c)
    }
}

impl fmt::Display for RPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && d == 0) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let show_mag = d == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("r")?,
                _ => write!(f, "r^{d}")?,
            }
        }
        Ok(())
    }
}

/// `d_{r,n}` as a polynomial in `r`, interpolated through `r = 0..=n`.
pub fn d_poly(n: usize) -> Result<RPolynomial> {
    let d = d_table(n, n);
    let points: Vec<(i64, ExactRational)> = (0..=n).map(|r| (r as i64, rat_int(d[r][n].clone()))).collect();
    let coeffs = interpolate(&points)
        .iter()
        .map(|q| expect_integer(q, "r-derangement polynomial coefficient"))
        .collect::<Result<Vec<_>>>()?;
    Ok(RPolynomial::new(coeffs))
}

/// Rational part of the large-n estimate
/// `d_{r,n} / n! ~ e^{-1/2} (-2)^n sum_i C(r,i) 2^i [C(-i-1, n) - (2i-1)/2 C(-i, n)]`.
/// The caller supplies the `e^{-1/2}` factor.
pub fn d_asym(r: u64, n: u64) -> ExactRational {
    let n_i = n as i64;
    let mut s = ExactRational::zero();
    for i in 0..=r as i64 {
        let a = binomial(-i - 1, n_i).expect("n is nonnegative");
        let b = binomial(-i, n_i).expect("n is nonnegative");
        let term = rat_int(a) - rat(2 * i - 1, 2) * rat_int(b);
        s += rat_int(choose(r as i64, i) * pow2(i as u64)) * term;
    }
    let two_n = rat_int(pow2(n));
    if n % 2 == 1 {
        -s * two_n
    } else {
        s * two_n
    }
}

/// `d_{r,n} / (n! d_asym(r, n) e^{-1/2})` with `e^{-1/2}` replaced by its
/// Taylor partial sum with `terms` terms. `None` when the estimate vanishes.
pub fn asym_ratio(r: u64, n: u64, terms: u64) -> Option<ExactRational> {
    let est = rat_int(factorial(n)) * d_asym(r, n) * crate::numeric::inv_sqrt_e(terms);
    if est.is_zero() {
        return None;
    }
    Some(rat_int(d_rec(r as usize, n as usize)) / est)
}

/// Decimal rendering of `n! d_asym(r, n) e^{-1/2}`.
pub fn d_asym_decimal(r: u64, n: u64, digits: usize) -> String {
    let terms = 2 * digits as u64 + 40;
    let v = rat_int(factorial(n)) * d_asym(r, n) * crate::numeric::inv_sqrt_e(terms);
    crate::numeric::to_decimal(&v, digits)
}
