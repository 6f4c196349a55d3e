//! Ordinary (type A) restricted and associated Stirling numbers of the first
//! kind, the incomplete factorials they sum to, and the type B totals built
//! from them by a binomial convolution.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::numeric::{choose, falling_factorial, pow2, ExactInt};
use crate::permcore::Mode;

/// Permutations of `[n]` with `k` cycles, all of length at most `m`
/// (restricted) or at least `m` (associated), indexed `[n][k]`.
///
/// Built by removing the cycle of `n`: it has `i + 1` entries, the `i`
/// companions chosen and ordered in `(n-1)^(i)` ways.
pub fn stirling_a_table(n_max: usize, mode: Mode, m: u32) -> Vec<Vec<ExactInt>> {
    let m = m as usize;
    let mut t: Vec<Vec<ExactInt>> = vec![vec![ExactInt::one()]];
    for n in 1..=n_max {
        let range = match mode {
            Mode::Restricted if m == 0 => 0..0,
            Mode::Restricted => 0..(m - 1).min(n - 1) + 1,
            Mode::Associated => m.saturating_sub(1)..n,
        };
        let mut row = vec![ExactInt::zero(); n + 1];
        for (k, cell) in row.iter_mut().enumerate().skip(1) {
            for i in range.clone() {
                if let Some(prev) = t[n - i - 1].get(k - 1) {
                    *cell += falling_factorial(n as i64 - 1, i as u64) * prev;
                }
            }
        }
        t.push(row);
    }
    t
}

pub fn stirling_a(n: usize, k: usize, mode: Mode, m: u32) -> ExactInt {
    stirling_a_table(n, mode, m)[n].get(k).cloned().unwrap_or_else(ExactInt::zero)
}

/// Row sums of [`stirling_a_table`], `A_{n, <=m}` or `A_{n, >=m}`.
pub fn incomplete_factorials(n_max: usize, mode: Mode, m: u32) -> Vec<ExactInt> {
    stirling_a_table(n_max, mode, m)
        .iter()
        .map(|row| row.iter().sum())
        .collect()
}

pub fn incomplete_factorial(n: usize, mode: Mode, m: u32) -> ExactInt {
    incomplete_factorials(n, mode, m).swap_remove(n)
}

/// Type B totals with no specials:
/// `A^B_{n,<=m} = sum_i C(n,i) 2^i A_{i,<=m} A_{n-i,>=m+1}` and
/// `A^B_{n,>=m} = sum_i C(n,i) 2^i A_{i,>=m} A_{n-i,<=m-1}`.
/// The barred part is free; the unbarred part must satisfy the complementary
/// window.
pub fn typeb_factorial_conv(n: usize, mode: Mode, m: u32) -> ExactInt {
    let (own, other) = match mode {
        Mode::Restricted => (
            incomplete_factorials(n, Mode::Restricted, m),
            incomplete_factorials(n, Mode::Associated, m + 1),
        ),
        Mode::Associated => (
            incomplete_factorials(n, Mode::Associated, m),
            incomplete_factorials(n, Mode::Restricted, m.saturating_sub(1)),
        ),
    };
    (0..=n)
        .map(|i| choose(n as i64, i as i64) * pow2(i as u64) * &own[i] * &other[n - i])
        .sum()
}

/// Unsigned Stirling numbers of the first kind, indexed `[n][k]`.
pub fn stirling1_table(n_max: usize) -> Vec<Vec<ExactInt>> {
    crate::sequences::stirling_b::r_stirling_table(n_max, 0)
}
