//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` stores the coefficients of `z^0 ..= z^N`; nothing is
//! known beyond `N`. Binary operations truncate at the smaller order of their
//! operands, so a result never claims more precision than its inputs carry.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{factorial, rat_int, ExactInt, ExactRational};

/// Default truncation order for verification runs.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalPowerSeries {
    coeffs: Vec<ExactRational>,
}

impl FormalPowerSeries {
    /// Builds a series from `coeffs`, truncated at order `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> ExactRational) -> Self {
        Self::from_coeffs((0..=order).map(f).collect())
    }

    /// Integer coefficients, padded with zeros up to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        Self::from_fn(order, |n| {
            values
                .get(n)
                .map(|&v| rat_int(ExactInt::from(v)))
                .unwrap_or_else(ExactRational::zero)
        })
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| ExactRational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactRational::one(), order)
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(ExactRational::one(), 1, order)
    }

    pub fn monomial(c: ExactRational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// `1 / (1 - a z)`.
    pub fn geometric(a: &ExactRational, order: usize) -> Self {
        let mut p = ExactRational::one();
        Self::from_fn(order, |_| {
            let c = p.clone();
            p *= a;
            c
        })
    }

    /// `exp(a z)`.
    pub fn exponential(a: &ExactRational, order: usize) -> Self {
        let mut c = ExactRational::one();
        Self::from_fn(order, |n| {
            if n > 0 {
                c = &c * a / rat_int(ExactInt::from(n));
            }
            c.clone()
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&ExactRational> {
        self.coeffs.get(n).ok_or(Error::Truncation {
            index: n,
            order: self.order(),
        })
    }

    /// `n! [z^n] s`, the n-th term of the sequence whose EGF is `s`.
    pub fn egf_coeff(&self, n: usize) -> Result<ExactRational> {
        Ok(self.coeff(n)? * rat_int(factorial(n as u64)))
    }

    pub fn egf_coeffs(&self) -> Vec<ExactRational> {
        (0..=self.order())
            .map(|n| &self.coeffs[n] * rat_int(factorial(n as u64)))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `s(c z)`.
    pub fn dilate(&self, c: &ExactRational) -> Self {
        let mut p = ExactRational::one();
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|x| {
                    let v = x * &p;
                    p *= c;
                    v
                })
                .collect(),
        )
    }

    /// Formal derivative; the result has order one less (at least 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| {
            &self.coeffs[n + 1] * rat_int(ExactInt::from(n + 1))
        })
    }

    /// Antiderivative with zero constant term; the result has order one more.
    pub fn integral(&self) -> Self {
        Self::from_fn(self.order() + 1, |n| {
            if n == 0 {
                ExactRational::zero()
            } else {
                &self.coeffs[n - 1] / rat_int(ExactInt::from(n))
            }
        })
    }

    /// Multiplicative inverse, computed coefficient by coefficient.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv0 = a0.recip();
        let mut out: Vec<ExactRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let mut s = ExactRational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &out[n - k];
            }
            out.push(-s * &inv0);
        }
        Ok(Self::from_coeffs(out))
    }

    /// `self^k`; negative `k` goes through [`recip`](Self::recip).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let (mut base, mut e) = if k < 0 {
            (self.recip()?, k.unsigned_abs())
        } else {
            (self.clone(), k as u64)
        };
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self ∘ inner`, by Horner accumulation over powers of `inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Composition);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse `f̄` with `f̄(f(z)) = f(f̄(z)) = z` to the order
    /// of `self`.
    ///
    /// Solves the lower-triangular system for the coefficients of `f̄` one
    /// degree at a time, tracking `[z^n] f̄^i` as it goes.
    pub fn revert(&self) -> Result<Self> {
        let order = self.order();
        if order == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::Reversion);
        }
        let f1_inv = self.coeffs[1].recip();
        let zero = ExactRational::zero();
        let mut b = vec![zero.clone(); order + 1];
        // powers[i][n] = [z^n] f̄^i
        let mut powers = vec![vec![zero.clone(); order + 1]; order + 1];
        for n in 1..=order {
            let mut s = zero.clone();
            for i in 2..=n {
                let mut p = zero.clone();
                for j in 1..=(n - i + 1) {
                    p += &b[j] * &powers[i - 1][n - j];
                }
                s += &self.coeffs[i] * &p;
                powers[i][n] = p;
            }
            let target = if n == 1 { ExactRational::one() } else { zero.clone() };
            b[n] = (target - s) * &f1_inv;
            powers[1][n] = b[n].clone();
        }
        Ok(Self::from_coeffs(b))
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain("log needs constant term 1"));
        }
        let q = &self.derivative() * &self.recip()?;
        Ok(q.integral().truncate(self.order()))
    }

    /// Formal exponential of a series with zero constant term, from the
    /// recursion `n e_n = sum_k k f_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs zero constant term"));
        }
        let mut e: Vec<ExactRational> = Vec::with_capacity(self.coeffs.len());
        e.push(ExactRational::one());
        for n in 1..=self.order() {
            let mut s = ExactRational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * rat_int(ExactInt::from(k)) * &e[n - k];
            }
            e.push(s / rat_int(ExactInt::from(n)));
        }
        Ok(Self::from_coeffs(e))
    }
}

impl Add for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn add(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        FormalPowerSeries::from_fn(order, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Sub for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn sub(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        FormalPowerSeries::from_fn(order, |n| &self.coeffs[n] - &rhs.coeffs[n])
    }
}

impl Neg for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn neg(self) -> FormalPowerSeries {
        FormalPowerSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn mul(self, rhs: &FormalPowerSeries) -> FormalPowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![ExactRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        FormalPowerSeries::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FormalPowerSeries {
            type Output = FormalPowerSeries;

            fn $m(self, rhs: FormalPowerSeries) -> FormalPowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn ints(s: &FormalPowerSeries) -> Vec<ExactInt> {
        s.coeffs().iter().map(|c| c.to_integer()).collect()
    }

    fn egf_ints(s: &FormalPowerSeries) -> Vec<ExactInt> {
        s.egf_coeffs().iter().map(|c| c.to_integer()).collect()
    }

    fn ivec(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// `-ln(1 - 2z) - z`
    fn stirling_f(order: usize) -> FormalPowerSeries {
        FormalPowerSeries::from_fn(order, |n| match n {
            0 => rat(0, 1),
            1 => rat(1, 1),
            _ => rat_int(crate::numeric::pow2(n as u64)) / rat(n as i64, 1),
        })
    }

    #[test]
    fn mul_examples() {
        let a = FormalPowerSeries::from_ints(&[1, 1], 4);
        assert_eq!(ints(&(&a * &a)), ivec(&[1, 2, 1, 0, 0]));
        let s = FormalPowerSeries::from_ints(&[3, -1, 4, 1], 3);
        assert_eq!(&FormalPowerSeries::one(3) * &s, s);
        let d = &FormalPowerSeries::exponential(&rat(-1, 1), 4)
            * &FormalPowerSeries::geometric(&rat(2, 1), 4);
        assert_eq!(egf_ints(&d), ivec(&[1, 1, 5, 29, 233]));
    }

    #[test]
    fn mul_truncates_at_min_order() {
        let a = FormalPowerSeries::from_ints(&[1, 1], 6);
        let b = FormalPowerSeries::from_ints(&[1, 1], 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn pow_examples() {
        let one_minus_2z = FormalPowerSeries::from_ints(&[1, -2], 8);
        assert_eq!(
            ints(&one_minus_2z.pow(-1).unwrap()),
            ivec(&[1, 2, 4, 8, 16, 32, 64, 128, 256])
        );
        let s = FormalPowerSeries::from_ints(&[5, 7], 3);
        assert_eq!(s.pow(0).unwrap(), FormalPowerSeries::one(3));
        let ratio = &FormalPowerSeries::from_ints(&[1, 1], 6)
            * &FormalPowerSeries::from_ints(&[1, -1], 6).recip().unwrap();
        assert_eq!(ints(&ratio.pow(2).unwrap()), ivec(&[1, 4, 8, 12, 16, 20, 24]));
        let z = FormalPowerSeries::variable(4);
        assert_eq!(z.pow(-1), Err(Error::NonInvertible));
    }

    #[test]
    fn compose_examples() {
        let g = FormalPowerSeries::from_ints(&[2, -3, 5, 7], 6);
        let z = FormalPowerSeries::variable(6);
        assert_eq!(g.compose(&z).unwrap(), g);
        let geo = FormalPowerSeries::geometric(&rat(1, 1), 6);
        let two_z = FormalPowerSeries::from_ints(&[0, 2], 6);
        assert_eq!(ints(&geo.compose(&two_z).unwrap()), ivec(&[1, 2, 4, 8, 16, 32, 64]));
        let exp = FormalPowerSeries::exponential(&rat(1, 1), 6);
        let composed = exp.compose(&stirling_f(6)).unwrap();
        // exp(-ln(1-2z) - z) = e^{-z} / (1 - 2z)
        let direct = &FormalPowerSeries::exponential(&rat(-1, 1), 6)
            * &FormalPowerSeries::geometric(&rat(2, 1), 6);
        assert_eq!(composed, direct);
        assert_eq!(egf_ints(&composed)[..4], ivec(&[1, 1, 5, 29])[..]);
        assert_eq!(g.compose(&g), Err(Error::Composition));
    }

    #[test]
    fn revert_examples() {
        let z = FormalPowerSeries::variable(8);
        assert_eq!(z.revert().unwrap(), z);
        // z/(1-z) reverts to z/(1+z)
        let f = &z * &FormalPowerSeries::geometric(&rat(1, 1), 8);
        let expected = &z * &FormalPowerSeries::geometric(&rat(-1, 1), 8);
        assert_eq!(f.revert().unwrap(), expected);
        let f = stirling_f(12);
        let fbar = f.revert().unwrap();
        assert_eq!(f.compose(&fbar).unwrap(), FormalPowerSeries::variable(12));
        assert_eq!(fbar.compose(&f).unwrap(), FormalPowerSeries::variable(12));
        assert_eq!(FormalPowerSeries::from_ints(&[0, 0, 1], 4).revert(), Err(Error::Reversion));
        assert_eq!(FormalPowerSeries::from_ints(&[1, 1], 4).revert(), Err(Error::Reversion));
    }

    #[test]
    fn log_exp_examples() {
        let geo = FormalPowerSeries::geometric(&rat(2, 1), 8);
        let lg = geo.log().unwrap();
        for k in 1..=8 {
            assert_eq!(lg.coeffs()[k], rat_int(crate::numeric::pow2(k as u64)) / rat(k as i64, 1));
        }
        assert_eq!(FormalPowerSeries::zero(5).exp().unwrap(), FormalPowerSeries::one(5));
        let one_plus_z = FormalPowerSeries::from_ints(&[1, 1], 10);
        assert_eq!(one_plus_z.log().unwrap().exp().unwrap(), one_plus_z);
        assert!(FormalPowerSeries::from_ints(&[2, 1], 3).log().is_err());
        assert!(FormalPowerSeries::from_ints(&[1, 1], 3).exp().is_err());
    }

    #[test]
    fn egf_coeff_examples() {
        let d = &FormalPowerSeries::exponential(&rat(-1, 1), 6)
            * &FormalPowerSeries::geometric(&rat(2, 1), 6);
        assert_eq!(d.egf_coeff(4).unwrap(), rat(233, 1));
        assert_eq!(FormalPowerSeries::one(0).egf_coeff(0).unwrap(), rat(1, 1));
        let g = &FormalPowerSeries::from_ints(&[1, 2], 6)
            * &FormalPowerSeries::from_ints(&[1, -2], 6).recip().unwrap();
        assert_eq!((&g * &d).egf_coeff(1).unwrap(), rat(5, 1));
        assert_eq!(d.egf_coeff(7), Err(Error::Truncation { index: 7, order: 6 }));
    }

    fn small_series(order: usize) -> impl Strategy<Value = FormalPowerSeries> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), order + 1).prop_map(|v| {
            FormalPowerSeries::from_coeffs(v.into_iter().map(|(n, d)| rat(n, d)).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn revert_is_two_sided(mut s in small_series(8), lead in 1i64..=4) {
            s.coeffs[0] = rat(0, 1);
            s.coeffs[1] = rat(lead, 1);
            let r = s.revert().unwrap();
            let z = FormalPowerSeries::variable(8);
            prop_assert_eq!(s.compose(&r).unwrap(), z.clone());
            prop_assert_eq!(r.compose(&s).unwrap(), z);
        }

        #[test]
        fn exp_inverts_log(mut s in small_series(16)) {
            s.coeffs[0] = rat(1, 1);
            prop_assert_eq!(s.log().unwrap().exp().unwrap(), s);
        }

        #[test]
        fn mul_commutes_and_associates(a in small_series(6), b in small_series(6), c in small_series(6)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn derivative_undoes_integral(s in small_series(10)) {
            prop_assert_eq!(s.integral().derivative(), s.clone());
            let back = s.derivative().integral();
            prop_assert_eq!(&back.coeffs()[1..], &s.coeffs()[1..]);
        }
    }
}
