//! The unsigned inverse of the `m = 2` Stirling-B array, the increasing tree
//! counts in its first column, and the lattice sphere sizes that share its
//! column zero.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::fps::FormalPowerSeries;
use crate::numeric::{choose, expect_integer, falling_factorial, pow2, rat, ExactInt};
use crate::riordan::stirling_b_f;

/// `T(n, k)` for `k <= n <= n_max`, from
/// `T(n+1, k) = T(n, k-1) + (1/k!) sum_{i=k}^{n} i! 2^{i-k+2} ((i-k+1) r + k) T(n, i)`
/// with `T(0, 0) = 1`. Column zero comes from the `k = 0` instance.
pub fn inverse_triangle_table(n_max: usize, r: u64) -> Vec<Vec<ExactInt>> {
    let mut t: Vec<Vec<ExactInt>> = vec![vec![ExactInt::one()]];
    for n in 0..n_max {
        let prev = &t[n];
        let mut row = Vec::with_capacity(n + 2);
        for k in 0..=n + 1 {
            let mut v = if k > 0 { prev[k - 1].clone() } else { ExactInt::zero() };
            for i in k..=n {
                // i!/k! is the falling factorial i^(i-k)
                let w = falling_factorial(i as i64, (i - k) as u64)
                    * pow2((i - k + 2) as u64)
                    * ((i - k + 1) as u64 * r + k as u64);
                v += w * &prev[i];
            }
            row.push(v);
        }
        t.push(row);
    }
    t
}

pub fn inverse_triangle_rec(n: usize, k: usize, r: u64) -> ExactInt {
    inverse_triangle_table(n, r)[n].get(k).cloned().unwrap_or_else(ExactInt::zero)
}

/// EGF coefficients of `F'(z)` for `n = 0..=n_max`, where `F(z) = -fbar(-z)`
/// and `fbar` reverts `-ln(1 - 2z) - z`. They count increasing plane trees
/// whose vertices of out-degree `d` carry one of `2^{d+1}` colors.
pub fn tree_counts(n_max: usize) -> Result<Vec<ExactInt>> {
    let f = stirling_b_f(2, n_max + 2)?;
    let fbar = f.revert()?;
    let big_f = -&fbar.dilate(&rat(-1, 1));
    big_f
        .derivative()
        .egf_coeffs()
        .iter()
        .take(n_max + 1)
        .map(|q| expect_integer(q, "tree count"))
        .collect()
}

pub fn tree_count(n: usize) -> Result<ExactInt> {
    Ok(tree_counts(n)?.swap_remove(n))
}

/// Points of `Z^r` at taxicab distance `n` from the origin, the coefficient
/// of `x^n` in `((1 + x) / (1 - x))^r`: `sum_j 2^j C(r, j) C(n-1, j-1)`.
pub fn lattice_s(r: u64, n: u64) -> ExactInt {
    if n == 0 {
        return ExactInt::one();
    }
    (1..=r)
        .map(|j| pow2(j) * choose(r as i64, j as i64) * choose(n as i64 - 1, j as i64 - 1))
        .sum()
}

/// The same counts read off the generating function.
pub fn lattice_s_series(r: u64, n_max: usize) -> Result<Vec<ExactInt>> {
    let order = n_max;
    let ratio = &FormalPowerSeries::from_ints(&[1, 1], order) * &FormalPowerSeries::geometric(&rat(1, 1), order);
    ratio
        .pow(r as i64)?
        .coeffs()
        .iter()
        .map(|q| expect_integer(q, "lattice count"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{factorial, int};
    use crate::riordan::ExpRiordanArray;
    use crate::sequences::stirling_b::triangle_ge2_rec;

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_triangle_rec(1, 0, 3), int(12));
        assert_eq!(inverse_triangle_rec(3, 1, 3), int(752));
        let t = inverse_triangle_table(6, 3);
        for n in 0..=6 {
            assert_eq!(t[n][n], int(1));
        }
        assert_eq!(t[3], vec![int(3936), int(752), int(48), int(1)]);
    }

    #[test]
    fn recurrence_matches_group_inverse() {
        for r in 0..4u32 {
            let c = ExpRiordanArray::stirling_b(2, r, 9).unwrap();
            let inv = c.invert().unwrap().unsigned_conjugate();
            let rows = inv.rows(8).unwrap();
            let t = inverse_triangle_table(8, r as u64);
            for n in 0..=8 {
                for k in 0..=n {
                    assert_eq!(expect_integer(&rows[n][k], "entry").unwrap(), t[n][k], "r={r} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn tree_examples() {
        let t = tree_counts(7).unwrap();
        let expected = [1, 4, 32, 416, 7552, 176128, 5018624, 168968192];
        assert_eq!(t, expected.iter().map(|&x| int(x)).collect::<Vec<_>>());
        assert_eq!(tree_count(0).unwrap(), int(1));
        // column zero of the unsigned inverse at r = 1
        let col = inverse_triangle_table(7, 1);
        for n in 0..=7 {
            assert_eq!(col[n][0], t[n]);
        }
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(lattice_s(2, 3), int(12));
        assert_eq!(lattice_s(5, 0), int(1));
        assert_eq!(lattice_s(0, 3), int(0));
        for r in 0..6 {
            let s = lattice_s_series(r, 9).unwrap();
            for n in 0..=9 {
                assert_eq!(s[n as usize], lattice_s(r, n));
            }
        }
    }

    #[test]
    fn lattice_is_column_zero() {
        for r in 0..=4u64 {
            for n in 0..=8u64 {
                assert_eq!(
                    triangle_ge2_rec(n as usize, 0, r as usize),
                    pow2(n) * factorial(n) * lattice_s(r, n)
                );
            }
        }
    }
}
