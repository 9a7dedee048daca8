//! Truncated formal power series.
//!
//! [`UniSeries`] is a univariate series in `t`; [`TriSeries`] is a series in `t`
//! whose coefficients are polynomials in two auxiliary variables `x` and `y`.
//! Both are generic over a [`Scalar`] so the same code runs with exact
//! rationals or floating point.

mod gf;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use crate::error::{bad_arg, precondition, Result};

pub use gf::{
    b_series, binomial, c_series, delta_series, f_series, h_series, multiplicative_sum, q_hat_series,
    q_series, r_series, z_series,
};

/// Coefficient ring for the series types.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {
    fn from_int(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
}

impl Scalar for BigRational {
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    fn from_int(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_int(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

/// A power series `c_0 + c_1 t + ... + c_N t^N`, known up to order `N`.
#[derive(Clone, PartialEq, Debug)]
pub struct UniSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return bad_arg("a series needs at least one coefficient");
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`. Panics if `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: T) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(T::one(), self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return precondition("inner series of a composition must vanish at t = 0");
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return precondition("cannot invert a series with zero constant term");
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one() / c0.clone();
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -(s / c0.clone());
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(self)`; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return precondition("exp needs a series with zero constant term");
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        out[0] = T::one();
        for m in 1..=n {
            let mut s = T::zero();
            for k in 1..=m {
                s = s + T::from_i64(k as i64) * self.coeffs[k].clone() * out[m - k].clone();
            }
            out[m] = s / T::from_i64(m as i64);
        }
        Ok(Self { coeffs: out })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniSeries<U> {
        UniSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<T: Scalar> Add for &UniSeries<T> {
    type Output = UniSeries<T>;
    fn add(self, rhs: Self) -> UniSeries<T> {
        let n = self.order().min(rhs.order());
        UniSeries { coeffs: (0..=n).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect() }
    }
}

impl<T: Scalar> Sub for &UniSeries<T> {
    type Output = UniSeries<T>;
    fn sub(self, rhs: Self) -> UniSeries<T> {
        let n = self.order().min(rhs.order());
        UniSeries { coeffs: (0..=n).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect() }
    }
}

impl<T: Scalar> Mul for &UniSeries<T> {
    type Output = UniSeries<T>;
    fn mul(self, rhs: Self) -> UniSeries<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniSeries { coeffs: out }
    }
}

impl<T: Scalar> Neg for &UniSeries<T> {
    type Output = UniSeries<T>;
    fn neg(self) -> UniSeries<T> {
        UniSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for UniSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// Polynomial in `x` and `y`, stored sparsely by exponent pair.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Poly2<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> Poly2<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn monomial(c: T, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: T) {
        let v = self.coeff(i, j) + c;
        if v.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), v);
        }
    }

    fn add_scaled(&mut self, other: &Self, c: &T) {
        for (&(i, j), v) in &other.terms {
            self.add_term(i, j, v.clone() * c.clone());
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }
}

/// Series in `t` with coefficients in `Poly2<T>`, known up to order `N`.
#[derive(Clone, PartialEq, Debug)]
pub struct TriSeries<T> {
    coeffs: Vec<Poly2<T>>,
}

impl<T: Scalar> TriSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Poly2::zero(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n x^i y^j`.
    pub fn coeff(&self, n: usize, i: u32, j: u32) -> T {
        self.coeffs[n].coeff(i, j)
    }

    /// The polynomial multiplying `t^n`.
    pub fn t_coeff(&self, n: usize) -> &Poly2<T> {
        &self.coeffs[n]
    }

    pub fn add_term(&mut self, n: usize, i: u32, j: u32, c: T) {
        self.coeffs[n].add_term(i, j, c);
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.order());
        for (n, p) in self.coeffs.iter().enumerate() {
            out.coeffs[n].add_scaled(p, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n);
        for k in 0..=n {
            out.coeffs[k].add_scaled(&self.coeffs[k], &T::one());
            out.coeffs[k].add_scaled(&other.coeffs[k], &T::one());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let prod = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j].add_scaled(&prod, &T::one());
            }
        }
        out
    }

    /// `exp(self)`; the `t^0` coefficient must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return precondition("exp needs a series with zero constant term");
        }
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = Poly2::monomial(T::one(), 0, 0);
        for m in 1..=n {
            let mut acc = Poly2::zero();
            for k in 1..=m {
                let prod = self.coeffs[k].mul(&out.coeffs[m - k]);
                acc.add_scaled(&prod, &T::from_i64(k as i64));
            }
            out.coeffs[m].add_scaled(&acc, &(T::one() / T::from_i64(m as i64)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::One;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn reciprocal_of_one_minus_t_is_geometric() {
        let s = &UniSeries::constant(q(1), 6) - &UniSeries::t(6);
        let inv = s.reciprocal().unwrap();
        assert!(inv.coeffs().iter().all(|c| c.is_one()));
    }

    #[test]
    fn exp_matches_factorials() {
        let e = UniSeries::<Rational>::t(6).exp().unwrap();
        let mut fact = q(1);
        for n in 0..=6 {
            assert_eq!(e.coeff(n) * &fact, q(1));
            fact *= q(n as i64 + 1);
        }
    }

    #[test]
    fn zero_constant_required() {
        let s = UniSeries::constant(q(2), 3);
        assert!(s.exp().is_err());
        assert!(s.compose(&s).is_err());
        assert!(UniSeries::<Rational>::t(3).reciprocal().is_err());
    }

    proptest! {
        #[test]
        fn exp_is_multiplicative(a in proptest::collection::vec(-5i64..5, 5), b in proptest::collection::vec(-5i64..5, 5)) {
            let mk = |v: &[i64]| {
                let mut c = vec![q(0)];
                c.extend(v.iter().map(|&x| q(x)));
                UniSeries::from_coeffs(c).unwrap()
            };
            let (sa, sb) = (mk(&a), mk(&b));
            let lhs = (&sa + &sb).exp().unwrap();
            let rhs = &sa.exp().unwrap() * &sb.exp().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn composition_is_associative_with_t(a in proptest::collection::vec(-4i64..4, 6)) {
            let s = UniSeries::from_coeffs(a.iter().map(|&x| q(x)).collect()).unwrap();
            let t = UniSeries::t(5);
            prop_assert_eq!(s.compose(&t).unwrap(), s.clone());
        }
    }
}
