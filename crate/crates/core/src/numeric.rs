//! Exact integer and rational arithmetic with the combinatorial primitives
//! shared by every formula in the crate.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

pub fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(int(num), int(den))
}

pub fn rat_int(v: ExactInt) -> ExactRational {
    ExactRational::from_integer(v)
}

/// `n!`
pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, k| acc * k)
}

pub fn pow2(e: u64) -> ExactInt {
    ExactInt::one() << e
}

/// Falling factorial `n (n-1) ... (n-i+1)`; the empty product is 1.
pub fn falling_factorial(n: i64, i: u64) -> ExactInt {
    (0..i).fold(ExactInt::one(), |acc, t| acc * (n - t as i64))
}

/// Rising factorial `n (n+1) ... (n+j-1)`; the empty product is 1.
pub fn rising_factorial(n: i64, j: u64) -> ExactInt {
    (0..j).fold(ExactInt::one(), |acc, t| acc * (n + t as i64))
}

/// Generalized binomial `a (a-1) ... (a-n+1) / n!`, valid for negative `a`.
pub fn binomial(a: i64, n: i64) -> Result<ExactInt> {
    if n < 0 {
        return Err(Error::Domain("binomial lower index must be nonnegative"));
    }
    let n = n as u64;
    let (q, rem) = falling_factorial(a, n).div_rem(&factorial(n));
    debug_assert!(rem.is_zero());
    Ok(q)
}

/// Combinatorial binomial: `C(a, b)` for `0 <= b <= a`, zero otherwise.
///
/// This is the convention the counting formulas use; negative upper indices
/// count nothing here, unlike [`binomial`].
pub fn choose(a: i64, b: i64) -> ExactInt {
    if a < 0 || b < 0 || b > a {
        return ExactInt::zero();
    }
    let b = b.min(a - b) as u64;
    let mut acc = ExactInt::one();
    for t in 0..b {
        acc = acc * (a - t as i64) / (t + 1);
    }
    acc
}

/// `(-1)^e` as an integer.
pub fn sign(e: u64) -> ExactInt {
    if e.is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// Returns the integer value of `q`, or an internal error naming `what` if
/// `q` has a nontrivial denominator.
pub fn expect_integer(q: &ExactRational, what: &str) -> Result<ExactInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Internal(alloc::format!("{what} is not an integer: {q}")))
    }
}

/// Partial sum of `sum_k (-1/2)^k / k!` over `terms` terms; converges to
/// `e^{-1/2}` with error below `(1/2)^terms / terms!`.
pub fn inv_sqrt_e(terms: u64) -> ExactRational {
    let mut acc = ExactRational::zero();
    let mut term = ExactRational::one();
    for k in 0..terms {
        acc += &term;
        term *= rat(-1, 2 * (k as i64 + 1));
    }
    acc
}

/// Renders `q` as a decimal string with exactly `digits` digits after the
/// point, rounding half away from zero.
pub fn to_decimal(q: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(ExactInt::from(10u32), digits);
    let scaled = q.abs() * rat_int(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let mut out = String::new();
    if q.is_negative() && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&alloc::format!("{whole}"));
    if digits > 0 {
        let f = alloc::format!("{frac}");
        out.push('.');
        for _ in f.len()..digits {
            out.push('0');
        }
        out.push_str(&f);
    }
    out
}

/// Nearest `f64` to `q`.
pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Lagrange interpolation through `(x_i, y_i)` returning ascending
/// coefficients of the unique polynomial of degree `< points.len()`.
pub fn interpolate(points: &[(i64, ExactRational)]) -> Vec<ExactRational> {
    let n = points.len();
    let mut coeffs = alloc::vec![ExactRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator prod_{j != i} (x - x_j), built in ascending order
        let mut basis = alloc::vec![ExactRational::one()];
        let mut denom = ExactRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = alloc::vec![ExactRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * rat(*xj, 1);
            }
            basis = next;
            denom *= rat(xi - xj, 1);
        }
        let scale = yi / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
}
