//! Howard-type identities peeling off the shortest allowed cycles. Each
//! check returns both sides computed along separate routes: the left side
//! from the Riordan array (or r-Stirling numbers when every cycle is
//! allowed), the right side from the recurrences one window up.

use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{choose, expect_integer, factorial, pow2, rat_int, ExactInt, ExactRational};
use crate::permcore::Mode;
use crate::riordan::ExpRiordanArray;
use crate::sequences::stirling_b::{r_stirling_table, StirlingBRecurrence};
use crate::sequences::type_a::{stirling1_table, stirling_a_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HowardVariant {
    /// `[n, n-k] = sum_l C(n, 2k-l) [2k-l, k-l]_{>=2}` for ordinary
    /// permutations.
    TypeA,
    /// Binomial form for `{n brack k}_{>=m, r}`.
    General,
    /// The same identity with the binomials collapsed into one factorial
    /// quotient.
    GeneralCompact,
    /// `General` without specials.
    NoSpecials,
    /// `m = 1`: signed r-permutations from r-derangements.
    SignedR,
    /// `SignedR` without specials.
    Signed,
}

impl HowardVariant {
    pub const ALL: [HowardVariant; 6] = [
        HowardVariant::TypeA,
        HowardVariant::General,
        HowardVariant::GeneralCompact,
        HowardVariant::NoSpecials,
        HowardVariant::SignedR,
        HowardVariant::Signed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HowardVariant::TypeA => "type-a",
            HowardVariant::General => "general",
            HowardVariant::GeneralCompact => "general-compact",
            HowardVariant::NoSpecials => "no-specials",
            HowardVariant::SignedR => "signed-r",
            HowardVariant::Signed => "signed",
        }
    }
}

impl fmt::Display for HowardVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HowardVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or(Error::Domain("unknown Howard identity variant"))
    }
}

/// Both sides of the selected identity. `r` and `m` are ignored where the
/// variant fixes them (`TypeA` ignores both, the signed variants fix
/// `m = 1`, the no-special variants need `r = 0`).
pub fn howard_check(n: usize, k: usize, r: usize, m: u32, variant: HowardVariant) -> Result<(ExactInt, ExactInt)> {
    if k > n {
        return Err(Error::Domain("Howard identities need k <= n"));
    }
    match variant {
        HowardVariant::TypeA => Ok(type_a(n, k)),
        HowardVariant::General => general(n, k, r, m, false),
        HowardVariant::GeneralCompact => general(n, k, r, m, true),
        HowardVariant::NoSpecials => {
            if r != 0 {
                return Err(Error::Domain("this variant has no special elements"));
            }
            general(n, k, 0, m, false)
        }
        HowardVariant::SignedR => general(n, k, r, 1, false),
        HowardVariant::Signed => {
            if r != 0 {
                return Err(Error::Domain("this variant has no special elements"));
            }
            general(n, k, 0, 1, false)
        }
    }
}

fn type_a(n: usize, k: usize) -> (ExactInt, ExactInt) {
    let lhs = stirling1_table(n)[n][n - k].clone();
    let assoc = stirling_a_table(2 * k, Mode::Associated, 2);
    let rhs = (0..=k)
        .filter(|l| 2 * k - l <= n)
        .map(|l| choose(n as i64, (2 * k - l) as i64) * &assoc[2 * k - l][k - l])
        .sum();
    (lhs, rhs)
}

/// `{n brack k}_{>=m, r}` straight from the definition-level routes: signed
/// r-Stirling numbers for `m <= 1`, the Riordan array otherwise.
fn lhs_value(n: usize, k: usize, r: usize, m: u32) -> Result<ExactInt> {
    if m <= 1 {
        return Ok(pow2((n + r) as u64) * &r_stirling_table(n, r)[n][k]);
    }
    let array = ExpRiordanArray::stirling_b(m, r as u32, n + 1)?;
    expect_integer(&array.entry(n, k)?, "Riordan entry")
}

fn general(n: usize, k: usize, r: usize, m: u32, compact: bool) -> Result<(ExactInt, ExactInt)> {
    if m == 0 {
        return Err(Error::Unsupported("Howard identities need m >= 1"));
    }
    let lhs = lhs_value(n, k, r, m)?;
    let next = StirlingBRecurrence::new(n, r, m + 1)?;
    let mu = m as usize;
    let weight: ExactInt = pow2(m as u64) - 1;
    let mut rhs = ExactRational::zero();
    for p in 0..=r {
        for l in 0..=k {
            let Some(rest) = n.checked_sub(mu * l + (mu - 1) * p) else {
                continue;
            };
            let inner = next.get(rest, k - l, r - p).unwrap_or_else(ExactInt::zero);
            if inner.is_zero() {
                continue;
            }
            let shared = rat_int(num_traits::pow(weight.clone(), l + p) * inner);
            let coeff = if compact {
                rat_int(factorial(n as u64) * choose(r as i64, p as i64))
                    / rat_int(pow_u(mu, l) * factorial(l as u64) * factorial(rest as u64))
            } else {
                rat_int(
                    choose(n as i64, (mu * l) as i64)
                        * choose(r as i64, p as i64)
                        * choose((n - mu * l) as i64, ((mu - 1) * p) as i64)
                        * factorial((mu * l) as u64)
                        * factorial(((mu - 1) * p) as u64),
                ) / rat_int(pow_u(mu, l) * factorial(l as u64))
            };
            rhs += coeff * shared;
        }
    }
    Ok((lhs, expect_integer(&rhs, "Howard right side")?))
}

fn pow_u(base: usize, e: usize) -> ExactInt {
    num_traits::pow(ExactInt::from(base), e)
}
