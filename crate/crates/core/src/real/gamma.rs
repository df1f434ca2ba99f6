//! Gamma function on the positive real axis.
//!
//! `ln_gamma` shifts the argument up until the Stirling series with exact
//! Bernoulli coefficients converges below the target precision; for real
//! positive arguments the remainder after truncation is bounded by the
//! first omitted term, which keeps the error accounting honest.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{consts, Real};

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// `B_m` with the `B_1 = -1/2` convention, from the defining recurrence.
fn bernoulli(m: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= m {
        let n = cache.len();
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(n+1, 0)
        for (j, b) in cache.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * (n + 1 - j) / (j + 1);
        }
        let coeff = BigRational::from_integer(BigInt::from(n as u64 + 1));
        cache.push(-acc / coeff);
    }
    cache[m].clone()
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: &Real) -> Real {
    assert!(x.is_positive(), "ln_gamma requires a positive argument");
    let prec = x.prec();
    let wp = prec + 96;
    let x = x.with_prec(wp);

    // shift so the asymptotic series reaches 2^-(wp+8)
    let mut w_target = (0.14 * wp as f64).ceil() as i64 + 8;
    loop {
        let xf = x.to_f64();
        let n_shift = if xf >= w_target as f64 {
            0
        } else {
            (w_target as f64 - xf).ceil() as u64
        };
        let w = &x + &Real::from_u64(n_shift, wp);

        // product of the shifted-out factors x (x+1) ... (x+n_shift-1)
        let mut shift_product = Real::one(wp);
        for i in 0..n_shift {
            shift_product = &shift_product * &(&x + &Real::from_u64(i, wp));
        }

        if let Some(lg_w) = stirling_series(&w, wp) {
            let result = if n_shift == 0 {
                lg_w
            } else {
                &lg_w - &shift_product.ln()
            };
            return result.with_prec(prec);
        }
        // series bottomed out above target accuracy: push the shift further
        w_target *= 2;
        assert!(w_target < 1 << 24, "ln_gamma shift runaway");
    }
}

/// Stirling series at `w`; `None` if it cannot reach the target accuracy.
fn stirling_series(w: &Real, wp: u32) -> Option<Real> {
    let half = Real::one(wp).mul2exp(-1);
    let ln_w = w.ln();
    let two_pi = consts::pi(wp).mul2exp(1);
    let mut sum = &(&(w - &half) * &ln_w) - w;
    sum = &sum + &two_pi.ln().mul2exp(-1);

    let w2_inv = Real::one(wp) / &(w * w);
    let mut w_pow_inv = Real::one(wp) / w; // w^{1-2j} for j = 1
    let mut last_mag: Option<i64> = None;
    let mut j = 1usize;
    loop {
        let b = bernoulli(2 * j);
        let coeff = Real::from_rational(&b, wp).div_u64((2 * j as u64) * (2 * j as u64 - 1));
        let term = &coeff * &w_pow_inv;
        if term.is_zero() {
            return Some(sum);
        }
        let mag = term.pos();
        if let Some(prev) = last_mag {
            if mag >= prev {
                // divergence point reached before target accuracy
                return None;
            }
        }
        // remainder is bounded by the first omitted term (real positive w),
        // so stop as soon as the term is below the working target
        if mag + (wp as i64 + 8) < sum.pos() {
            return Some(sum);
        }
        sum = &sum + &term;
        last_mag = Some(mag);
        w_pow_inv = &w_pow_inv * &w2_inv;
        j += 1;
        if j > 4096 {
            return None;
        }
    }
}

/// `Gamma(x)` for `x > 0`.
pub fn gamma(x: &Real) -> Real {
    let prec = x.prec();
    let wp = prec + 96;
    ln_gamma(&x.with_prec(wp)).exp().with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(v: f64, prec: u32) -> Real {
        Real::from_f64(v, prec)
    }

    #[test]
    fn bernoulli_first_values() {
        assert_eq!(bernoulli(0), BigRational::one());
        assert_eq!(
            bernoulli(1),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(
            bernoulli(2),
            BigRational::new(BigInt::from(1), BigInt::from(6))
        );
        assert_eq!(bernoulli(3), BigRational::zero());
        assert_eq!(
            bernoulli(12),
            BigRational::new(BigInt::from(-691), BigInt::from(2730))
        );
    }

    #[test]
    fn gamma_at_integers() {
        for (n, want) in [(1u64, 1f64), (2, 1.0), (5, 24.0), (10, 362880.0)] {
            let g = gamma(&Real::from_u64(n, 256));
            let d = (g.to_f64() - want).abs();
            assert!(d <= want * 1e-30, "Gamma({n}) = {}", g.to_f64());
        }
    }

    #[test]
    fn gamma_half_squared_is_pi() {
        let g = gamma(&rf(0.5, 256));
        let d = (&(&g * &g) - &consts::pi(256)).abs();
        assert!(d.is_zero() || d.log2_floor() < -230);
    }

    #[test]
    fn reflection_at_one_third() {
        // Gamma(1/3) Gamma(2/3) = pi / sin(pi/3) = 2 pi / sqrt(3)
        let prec = 256;
        let third = Real::from_ratio(&BigInt::from(1), &BigInt::from(3), prec);
        let two_thirds = Real::from_ratio(&BigInt::from(2), &BigInt::from(3), prec);
        let lhs = &gamma(&third) * &gamma(&two_thirds);
        let rhs = consts::pi(prec).mul2exp(1) / Real::from_u64(3, prec).sqrt();
        let d = (&lhs - &rhs).abs();
        assert!(
            d.is_zero() || d.log2_floor() < -230,
            "reflection identity off by {}",
            d.to_f64()
        );
    }

    #[test]
    fn duplication_formula() {
        // Gamma(x) Gamma(x+1/2) = 2^(1-2x) sqrt(pi) Gamma(2x) at x = 0.3
        let prec = 256;
        let x = rf(0.3, prec);
        let lhs = &gamma(&x) * &gamma(&(&x + &rf(0.5, prec)));
        let two_pow = rf(2.0, prec).pow(&(&Real::one(prec) - &x.mul2exp(1)));
        let rhs = &(&two_pow * &consts::pi(prec).sqrt()) * &gamma(&x.mul2exp(1));
        let d = (&lhs - &rhs).abs();
        let scale = lhs.abs();
        assert!(d.is_zero() || (&d / &scale).log2_floor() < -230);
    }

    #[test]
    fn recurrence_random_point() {
        let prec = 192;
        let x = rf(1.2345, prec);
        let lhs = gamma(&(&x + &Real::one(prec)));
        let rhs = &x * &gamma(&x);
        let rel = (&(&lhs - &rhs) / &rhs).abs();
        assert!(rel.is_zero() || rel.log2_floor() < -170);
    }
}
