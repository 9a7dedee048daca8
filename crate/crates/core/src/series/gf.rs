use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Scalar, TriSeries, UniSeries};

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn catalan(n: i64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// The series `R(t)`, defined implicitly by
/// `sum_{n>=0} (1/(n+1)) C(2n,n)^2 R^{n+1} = t`.
pub fn r_series<T: Scalar>(order: usize) -> UniSeries<T> {
    // Lagrange inversion: [t^m] R = (1/m) [x^{m-1}] g^m with g = x / phi(x)
    let phi_over_x = UniSeries::from_coeffs(
        (0..=order as i64).map(|n| T::from_int(&(catalan(n) * binomial(2 * n, n)))).collect(),
    )
    .expect("nonempty");
    let g = phi_over_x.reciprocal().expect("unit constant term");
    let mut r = UniSeries::zero(order);
    let mut gm = UniSeries::constant(T::one(), order);
    for m in 1..=order {
        gm = &gm * &g;
        r.set_coeff(m, gm.coeff(m - 1).clone() / T::from_i64(m as i64));
    }
    r
}

/// `Qhat^(p)(t) = sum_n (1/(n+1)) C(2n,n) C(2n-p,n-p) t^{n+1}`.
pub fn q_hat_series<T: Scalar>(p: i64, order: usize) -> UniSeries<T> {
    let mut s = UniSeries::zero(order);
    for n in p.max(0)..order as i64 {
        s.set_coeff((n + 1) as usize, T::from_int(&(catalan(n) * binomial(2 * n - p, n - p))));
    }
    s
}

/// `Q^(p)(t) = Qhat^(p)(R(t))`, counting Q-trees with base label `p` by leaves.
pub fn q_series<T: Scalar>(p: i64, order: usize) -> UniSeries<T> {
    q_hat_series::<T>(p, order)
        .compose(&r_series(order))
        .expect("R has zero constant term")
}

/// Generating function of H-trees (equivalently rigid quadrangulations)
/// with base-length `p`, by degree.
pub fn h_series<T: Scalar>(p: i64, order: usize) -> UniSeries<T> {
    if p >= 0 {
        q_series(p, order)
    } else {
        &q_series(p, order) - &q_series(p + 1, order)
    }
}

/// Generating function of rigid quadrangulations with base-length `p`,
/// counted by half the number of corners.
pub fn f_series<T: Scalar>(p: i64, order: usize) -> UniSeries<T> {
    h_series(p, order)
}

/// `Z(t) = (F^(1)(t) - t^2) / (2t)`: rigid quadrangulations of a polygon with
/// `2n + 2` corners and a marked convex corner, by `n`.
pub fn z_series<T: Scalar>(order: usize) -> UniSeries<T> {
    let f1 = f_series::<T>(1, order + 1);
    let half = T::one() / T::from_i64(2);
    let mut z = UniSeries::zero(order);
    for n in 0..=order {
        let mut c = f1.coeff(n + 1).clone();
        if n + 1 == 2 {
            c = c - T::one();
        }
        z.set_coeff(n, c * half.clone());
    }
    z
}

/// `Delta(t, x, y) = sum_{n>=0} sum_{i,j<=n} (1/(n+1)) C(2n-i,n) C(2n-j,n) x^{i+1} y^{j+1} R^{n+1}`.
pub fn delta_series<T: Scalar>(order: usize) -> TriSeries<T> {
    let r = r_series::<T>(order);
    let mut out = TriSeries::zero(order);
    let mut rpow = r.clone();
    for n in 0..order as i64 {
        for i in 0..=n {
            for j in 0..=n {
                let num = binomial(2 * n - i, n) * binomial(2 * n - j, n);
                let c = T::from_int(&num) / T::from_i64(n + 1);
                for (m, rc) in rpow.coeffs().iter().enumerate() {
                    if !rc.is_zero() {
                        out.add_term(m, (i + 1) as u32, (j + 1) as u32, c.clone() * rc.clone());
                    }
                }
            }
        }
        rpow = &rpow * &r;
    }
    out
}

/// `B = exp(Delta) - 1`: maps whose base and co-base both run between convex corners.
pub fn b_series<T: Scalar>(order: usize) -> TriSeries<T> {
    let mut e = delta_series::<T>(order).exp().expect("Delta has no t^0 term");
    e.add_term(0, 0, 0, -T::one());
    e
}

/// `C = 1 - exp(-Delta)`: maps whose downward rays into the base all reach the co-base length.
pub fn c_series<T: Scalar>(order: usize) -> TriSeries<T> {
    let d = delta_series::<T>(order).scale(&-T::one());
    let mut e = d.exp().expect("Delta has no t^0 term").scale(&-T::one());
    e.add_term(0, 0, 0, T::one());
    e
}

/// `sum over partitions m = sum_k k n_k of prod_k 1 / (k^{n_k} n_k!)`.
pub fn multiplicative_sum(m: usize) -> BigRational {
    // dp over the largest allowed part
    let mut dp = vec![BigRational::zero(); m + 1];
    dp[0] = BigRational::one();
    for k in 1..=m {
        let mut next = vec![BigRational::zero(); m + 1];
        for (total, acc) in dp.iter().enumerate() {
            if acc.is_zero() {
                continue;
            }
            let mut weight = BigRational::one();
            let mut nk = 0usize;
            while total + nk * k <= m {
                next[total + nk * k] += acc * &weight;
                nk += 1;
                weight /= BigRational::from_integer(BigInt::from(k * nk));
            }
        }
        dp = next;
    }
    dp.swap_remove(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn ints(s: &UniSeries<Rational>) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn r_leading_terms() {
        assert_eq!(ints(&r_series(4)), vec![0, 1, -2, -4, -20]);
    }

    #[test]
    fn r_solves_its_defining_equation() {
        let order = 12;
        let r = r_series::<Rational>(order);
        let mut lhs = UniSeries::zero(order);
        let mut pw = r.clone();
        for n in 0..order as i64 {
            lhs = &lhs + &pw.scale(&Rational::from_integer(catalan(n) * binomial(2 * n, n)));
            pw = &pw * &r;
        }
        assert_eq!(lhs, UniSeries::t(order));
    }

    #[test]
    fn q_hat_zero() {
        assert_eq!(ints(&q_hat_series(0, 3)), vec![0, 1, 2, 12]);
    }

    #[test]
    fn f_zero_is_t() {
        assert_eq!(f_series::<Rational>(0, 10), UniSeries::t(10));
    }

    #[test]
    fn multiplicative_sum_is_one() {
        for m in 0..=12 {
            assert_eq!(multiplicative_sum(m), Rational::one());
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let exact = f_series::<Rational>(-2, 10);
        let float = f_series::<f64>(-2, 10);
        for n in 0..=10 {
            let e: f64 = num_traits::ToPrimitive::to_f64(exact.coeff(n)).unwrap();
            assert!((e - float.coeff(n)).abs() <= 1e-9 * e.abs().max(1.0));
        }
    }
}
