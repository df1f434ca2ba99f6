//! Truncated power series over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Formal power series truncated after degree `N`: coefficients
/// `c_0 ... c_N`, all exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The formal variable itself (zero when the order is 0).
    pub fn x(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// Truncation order `N` (the highest retained degree).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn sub_scalar(&self, c: &BigRational) -> PowerSeries {
        let mut out = self.clone();
        out.coeffs[0] -= c;
        out
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    /// Composition `self(inner)`; the inner series must have zero
    /// constant term.
    pub fn compose(&self, inner: &PowerSeries) -> PowerSeries {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition needs a zero constant term"
        );
        let order = self.order().min(inner.order());
        // Horner from the top coefficient down
        let mut acc = PowerSeries::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        acc
    }

    /// Exponential of a series with zero constant term, via the
    /// differential recurrence `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> PowerSeries {
        assert!(
            self.coeffs[0].is_zero(),
            "series exp needs a zero constant term"
        );
        let order = self.order();
        let mut g = vec![BigRational::zero(); order + 1];
        g[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * BigRational::from_integer(BigInt::from(k)) * &g[n - k];
                }
            }
            g[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        PowerSeries { coeffs: g }
    }

    /// Binomial series `(1 - c x)^(-alpha)` to the given order.
    pub fn one_minus_cx_pow_neg(c: &BigRational, alpha: &BigRational, order: usize) -> PowerSeries {
        // coefficient of x^k: (alpha)_k c^k / k!
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = BigRational::one();
        coeffs.push(acc.clone());
        for k in 0..order {
            let kq = BigRational::from_integer(BigInt::from(k));
            acc = acc * (alpha + &kq) * c / (kq + BigRational::one());
            coeffs.push(acc.clone());
        }
        PowerSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn multiply_truncates() {
        // (1 + x)^2 = 1 + 2x + x^2
        let p = PowerSeries::from_coeffs(vec![q(1, 1), q(1, 1), q(0, 1)]);
        let sq = p.mul(&p);
        assert_eq!(sq.coeffs(), &[q(1, 1), q(2, 1), q(1, 1)]);
    }

    #[test]
    fn exp_of_x_gives_inverse_factorials() {
        let e = PowerSeries::x(6).exp();
        for k in 0..=6usize {
            let fact: BigInt = (1..=k as i64).product::<i64>().into();
            assert_eq!(e.coeff(k), &BigRational::new(BigInt::from(1), fact));
        }
    }

    #[test]
    fn compose_matches_exp_recurrence() {
        // exp(f) computed two ways: the differential recurrence and
        // composing the exponential series with f
        let f = PowerSeries::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 2), q(-1, 3), q(2, 5)]);
        let via_recurrence = f.exp();
        let exp_series = PowerSeries::x(4).exp();
        let via_compose = exp_series.compose(&f);
        assert_eq!(via_recurrence, via_compose);
    }

    #[test]
    fn binomial_series_squares_to_geometric() {
        // (1 - x)^(-1/2) squared = 1/(1-x)
        let half = q(1, 2);
        let s = PowerSeries::one_minus_cx_pow_neg(&q(1, 1), &half, 8);
        let sq = s.mul(&s);
        for k in 0..=8usize {
            assert_eq!(sq.coeff(k), &BigRational::one(), "coefficient {k}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn exp_is_multiplicative(a in proptest::collection::vec(-4i64..=4, 4),
                                 b in proptest::collection::vec(-4i64..=4, 4)) {
            let mk = |v: &[i64]| {
                let mut c = vec![q(0, 1)];
                c.extend(v.iter().map(|&n| q(n, 3)));
                PowerSeries::from_coeffs(c)
            };
            let f = mk(&a);
            let g = mk(&b);
            let lhs = f.exp().mul(&g.exp());
            let rhs = f.add(&g).exp();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
