//! r-Stirling numbers of type B: `{n brack k}_{>=m, r}` counts signed
//! permutations of `[n + r]` with `k + r` cycles in which the specials
//! `1..=r` lie in distinct cycles and every cycle has at least `m` entries
//! unless all of its entries are barred.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{
    choose, expect_integer, factorial, falling_factorial, pow2, rat, rat_int, rising_factorial, sign,
    ExactInt, ExactRational,
};

/// Lah number: partitions of an n-set into k nonempty linearly ordered blocks.
pub fn lah(n: u64, k: u64) -> ExactInt {
    if n == 0 && k == 0 {
        return ExactInt::one();
    }
    if k == 0 || k > n {
        return ExactInt::zero();
    }
    factorial(n) / factorial(k) * choose(n as i64 - 1, k as i64 - 1)
}

/// `{n brack 0}_{>=2, r} = 2^n n! sum_j C(r,j) C(n-1, r-j-1) 2^{r-j}`, with
/// `{0 brack 0} = 1`.
pub fn ge2_column_zero(n: u64, r: u64) -> ExactInt {
    if n == 0 {
        return ExactInt::one();
    }
    let s: ExactInt = (0..=r as i64)
        .map(|j| choose(r as i64, j) * choose(n as i64 - 1, r as i64 - j - 1) * pow2(r - j as u64))
        .sum();
    pow2(n) * factorial(n) * s
}

/// Column zero counted by placing the non-special points into the special
/// cycles: `sum_j C(r,j) 2^{n+r-j} (r-j)! L(n, r-j)`.
pub fn ge2_column_zero_lah(n: u64, r: u64) -> ExactInt {
    (0..=r)
        .map(|j| choose(r as i64, j as i64) * pow2(n + r - j) * factorial(r - j) * lah(n, r - j))
        .sum()
}

/// Memoized table of `{n brack k}_{>=m, r'}` for `r' <= r_max`,
/// `k <= n <= n_max`, filled bottom-up by the m-specific recurrence.
#[derive(Clone, Debug)]
pub struct StirlingBRecurrence {
    m: u32,
    // values[r][n][k]
    values: Vec<Vec<Vec<ExactInt>>>,
}

impl StirlingBRecurrence {
    /// `m = 2` uses the first form of the `>= 2` recurrence with the
    /// binomial column-zero formula; `m > 2` uses the τ-weighted recurrence
    /// with the composition-count initial column.
    pub fn new(n_max: usize, r_max: usize, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Unsupported("recurrence tables need m >= 2"));
        }
        let mut values: Vec<Vec<Vec<ExactInt>>> = Vec::with_capacity(r_max + 1);
        for r in 0..=r_max {
            let mut rows: Vec<Vec<ExactInt>> = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let mut row = Vec::with_capacity(n + 1);
                for k in 0..=n {
                    let v = if k == 0 {
                        if m == 2 {
                            ge2_column_zero(n as u64, r as u64)
                        } else {
                            gem_column_zero(n as u64, r as u64, m)
                        }
                    } else {
                        let prev_r = if r > 0 { Some(&values[r - 1]) } else { None };
                        if m == 2 {
                            ge2_step(&rows, prev_r, n - 1, k, r)
                        } else {
                            gem_step(&rows, prev_r, n - 1, k, r, m)
                        }
                    };
                    row.push(v);
                }
                rows.push(row);
            }
            values.push(rows);
        }
        Ok(Self { m, values })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_max(&self) -> usize {
        self.values[0].len() - 1
    }

    pub fn r_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Zero above the diagonal; `None` outside the computed range.
    pub fn get(&self, n: usize, k: usize, r: usize) -> Option<ExactInt> {
        let row = self.values.get(r)?.get(n)?;
        Some(row.get(k).cloned().unwrap_or_else(ExactInt::zero))
    }

    pub fn row(&self, n: usize, r: usize) -> Option<&[ExactInt]> {
        Some(self.values.get(r)?.get(n)?.as_slice())
    }

    pub fn rows(&self, r: usize) -> Option<&[Vec<ExactInt>]> {
        Some(self.values.get(r)?.as_slice())
    }

    /// The second printed form of the `>= 2` recurrence evaluated from the
    /// stored table, for `{n+1 brack k}_r`:
    /// `{n, k-1}_r + 4r {n, k}_{r-1}
    ///  + 4 n! sum_{j>=1} 2^{j-1}/(n-j)! ({n-j, k-1}_r + 2r(j+1) {n-j, k}_{r-1})`.
    pub fn ge2_second_form(&self, n: usize, k: usize, r: usize) -> Option<ExactInt> {
        let at = |nn: usize, kk: i64, rr: i64| -> Option<ExactInt> {
            if kk < 0 || rr < 0 {
                return Some(ExactInt::zero());
            }
            self.get(nn, kk as usize, rr as usize)
        };
        let (k, r) = (k as i64, r as i64);
        let mut s = at(n, k - 1, r)? + ExactInt::from(4 * r) * at(n, k, r - 1)?;
        for j in 1..=n {
            let w = falling_factorial(n as i64, j as u64) * pow2(j as u64 - 1) * 4;
            let inner = at(n - j, k - 1, r)? + ExactInt::from(2 * r * (j as i64 + 1)) * at(n - j, k, r - 1)?;
            s += w * inner;
        }
        Some(s)
    }
}

/// `{n+1 brack k}_{>=2, r}` from the first printed form:
/// `{n, k-1}_r + 2 n! sum_{j>=1} 2^j/(n-j)! {n-j, k-1}_r
///  + 4r n! sum_{j>=0} (j+1) 2^j/(n-j)! {n-j, k}_{r-1}`.
fn ge2_step(
    cur: &[Vec<ExactInt>],
    prev_r: Option<&Vec<Vec<ExactInt>>>,
    n: usize,
    k: usize,
    r: usize,
) -> ExactInt {
    let at = |t: &[Vec<ExactInt>], nn: usize, kk: usize| t[nn].get(kk).cloned().unwrap_or_else(ExactInt::zero);
    let mut s = at(cur, n, k - 1);
    for j in 1..=n {
        s += falling_factorial(n as i64, j as u64) * pow2(j as u64) * 2 * at(cur, n - j, k - 1);
    }
    if let Some(prev) = prev_r {
        let mut t = ExactInt::zero();
        for j in 0..=n {
            t += falling_factorial(n as i64, j as u64) * (j + 1) * pow2(j as u64) * at(prev, n - j, k);
        }
        s += t * (4 * r);
    }
    s
}

/// `τ_{m,n}(j) = 2^{j+1}` when `m - 1 <= j <= n`, else 1.
pub fn tau(m: u32, n: usize, j: usize) -> ExactInt {
    if (m as usize) <= j + 1 && j <= n {
        pow2(j as u64 + 1)
    } else {
        ExactInt::one()
    }
}

/// `{n+1 brack k}_{>=m, r} = sum_j j! τ_{m,n}(j) C(n,j) {n-j, k-1}_r
///  + r sum_j (j+1)! τ_{m,n+1}(j+1) C(n,j) {n-j, k}_{r-1}`.
fn gem_step(
    cur: &[Vec<ExactInt>],
    prev_r: Option<&Vec<Vec<ExactInt>>>,
    n: usize,
    k: usize,
    r: usize,
    m: u32,
) -> ExactInt {
    let at = |t: &[Vec<ExactInt>], nn: usize, kk: usize| t[nn].get(kk).cloned().unwrap_or_else(ExactInt::zero);
    let mut s = ExactInt::zero();
    for j in 0..=n {
        s += factorial(j as u64) * tau(m, n, j) * choose(n as i64, j as i64) * at(cur, n - j, k - 1);
    }
    if let Some(prev) = prev_r {
        let mut t = ExactInt::zero();
        for j in 0..=n {
            t += factorial(j as u64 + 1) * tau(m, n + 1, j + 1) * choose(n as i64, j as i64) * at(prev, n - j, k);
        }
        s += t * r;
    }
    s
}

/// `{n brack 0}_{>=m, r} = n! sum_{p,j} C(r,p) C(p,j)
///  sum_k 2^{n+p-k-j} Par_{<=m-2}(k, j) Par_{>=m-1}(n-k, p-j)`.
pub fn gem_column_zero(n: u64, r: u64, m: u32) -> ExactInt {
    let m = m as i64;
    let mut s = ExactInt::zero();
    for p in 0..=r as i64 {
        for j in 0..=p {
            let w = choose(r as i64, p) * choose(p, j);
            for k in 0..=n as i64 {
                let e = n as i64 + p - k - j;
                if e < 0 {
                    continue;
                }
                s += &w * pow2(e as u64) * par_le(k, j, m - 2) * par_ge(n as i64 - k, p - j, m - 1);
            }
        }
    }
    factorial(n) * s
}

/// Compositions of `a` into `b` positive parts, each at most `c`, by
/// inclusion-exclusion.
pub fn par_le(a: i64, b: i64, c: i64) -> ExactInt {
    if a < 0 || b < 0 {
        return ExactInt::zero();
    }
    if c <= 0 && (a != 0 || b != 0) {
        return ExactInt::zero();
    }
    if b == 0 {
        return if a == 0 { ExactInt::one() } else { ExactInt::zero() };
    }
    (0..=b)
        .map(|i| sign(i as u64) * choose(b, i) * choose(a - c * i - 1, b - 1))
        .sum()
}

/// Compositions of `a` into `b` parts, each at least `c`; parts are
/// positive, so `c <= 1` means no bound.
pub fn par_ge(a: i64, b: i64, c: i64) -> ExactInt {
    if a < 0 || b < 0 {
        return ExactInt::zero();
    }
    if b == 0 {
        return if a == 0 { ExactInt::one() } else { ExactInt::zero() };
    }
    let c = c.max(1);
    choose(a - (c - 1) * b - 1, b - 1)
}

/// `{n brack k}_{>=2, r}` by the `>= 2` recurrence.
pub fn triangle_ge2_rec(n: usize, k: usize, r: usize) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    StirlingBRecurrence::new(n, r, 2)
        .ok()
        .and_then(|t| t.get(n, k, r))
        .unwrap_or_else(ExactInt::zero)
}

/// `{n brack k}_{>=m, r}` by recurrence. `m = 2` defers to
/// [`triangle_ge2_rec`]; `m <= 1` is only defined for column zero, where
/// every sign is allowed: `2^{n+r} n! C(n+r-1, r-1)`.
pub fn triangle_gem_rec(n: usize, k: usize, r: usize, m: u32) -> Result<ExactInt> {
    match m {
        0 | 1 => {
            if k != 0 {
                return Err(Error::Unsupported("m <= 1 is only defined for column zero"));
            }
            Ok(unrestricted_column_zero(n as u64, r as u64))
        }
        2 => Ok(triangle_ge2_rec(n, k, r)),
        _ => {
            if k > n {
                return Ok(ExactInt::zero());
            }
            let t = StirlingBRecurrence::new(n, r, m)?;
            Ok(t.get(n, k, r).unwrap_or_else(ExactInt::zero))
        }
    }
}

/// `2^{n+r} n! C(n+r-1, r-1)`; `2^r` at `n = 0`, where only the specials
/// remain, each alone and free to carry a bar.
pub fn unrestricted_column_zero(n: u64, r: u64) -> ExactInt {
    if n == 0 {
        return pow2(r);
    }
    pow2(n + r) * factorial(n) * choose(n as i64 + r as i64 - 1, r as i64 - 1)
}

/// The two diagonals below the main one for `m = 2`:
/// `{n+1 brack n} = 2(n+1)(n+2r)` and
/// `{n+2 brack n} = (4/3) C(n+2, 2) (3n^2 + n + 12nr + 12r^2)`.
pub fn diagonals_ge2(n: u64, r: u64) -> (ExactInt, ExactInt) {
    let (ni, ri) = (n as i64, r as i64);
    let first = ExactInt::from(2 * (ni + 1) * (ni + 2 * ri));
    let q = rat(4, 3) * rat_int(choose(ni + 2, 2)) * rat(3 * ni * ni + ni + 12 * ni * ri + 12 * ri * ri, 1);
    (first, q.to_integer())
}

/// The two diagonals below the main one for any `m >= 1`, with Kronecker
/// deltas selecting the `m = 1, 2, 3` corrections.
pub fn diagonals_general(n: u64, r: u64, m: u32) -> Result<(ExactInt, ExactInt)> {
    if m == 0 {
        return Err(Error::Unsupported("diagonal formulas need m >= 1"));
    }
    let delta = |a: u32| -> i64 { i64::from(m == a) };
    let (ni, ri) = (n as i64, r as i64);
    let two_pow = |e: i64| -> ExactRational {
        if e >= 0 {
            rat_int(pow2(e as u64))
        } else {
            rat_int(pow2((-e) as u64)).recip()
        }
    };
    let e1 = (ni + ri + 1) * delta(1) + 2 * delta(2) - 1;
    let first = two_pow(e1) * rat((ni + 1) * (ni + 2 * ri), 1);
    let inner = rat(3, 1) * two_pow(4 * delta(2)) * rat(4 * ri * (ri + ni - 1) + ni * (ni - 1), 1)
        + two_pow(3 * (delta(2) + delta(3)) + 3) * rat(ni + 3 * ri, 1);
    let second = two_pow((ni + ri + 2) * delta(1)) / rat(12, 1) * rat_int(choose(ni + 2, 2)) * inner;
    Ok((
        expect_integer(&first, "first diagonal")?,
        expect_integer(&second, "second diagonal")?,
    ))
}

/// `diagonals_ge2` for `m = 2`, [`diagonals_general`] otherwise.
pub fn diagonals(n: u64, r: u64, m: u32) -> Result<(ExactInt, ExactInt)> {
    if m == 2 {
        Ok(diagonals_ge2(n, r))
    } else {
        diagonals_general(n, r, m)
    }
}

/// Unsigned r-Stirling numbers of the first kind: r-permutations of
/// `[n + r]` with `k + r` cycles. Table indexed `[n][k]`.
pub fn r_stirling_table(n_max: usize, r: usize) -> Vec<Vec<ExactInt>> {
    let mut t: Vec<Vec<ExactInt>> = vec![vec![ExactInt::one()]];
    for n in 1..=n_max {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| {
                let stay = prev.get(k).cloned().unwrap_or_else(ExactInt::zero) * (n - 1 + r);
                let new = if k > 0 { prev[k - 1].clone() } else { ExactInt::zero() };
                stay + new
            })
            .collect();
        t.push(row);
    }
    t
}

/// `r (r+1) ... (r+n-1)`, the r-Stirling column zero.
pub fn r_stirling_column_zero(n: u64, r: u64) -> ExactInt {
    rising_factorial(r as i64, n)
}
