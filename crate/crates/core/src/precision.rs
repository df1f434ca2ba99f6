//! Precision policy and approximate values with explicit error bounds.

use num_bigint::BigInt;

use crate::real::{Complex, Real};

/// Working precision and truncation policy for approximate evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    /// Mantissa bits for the floating arithmetic (at least 64).
    pub bits: u32,
    /// Target bound on the truncation tail relative to the partial sum.
    pub tail_relative_bound: f64,
    /// Safety cap on series terms.
    pub max_terms: usize,
}

impl PrecisionContext {
    pub fn new(bits: u32, tail_relative_bound: f64, max_terms: usize) -> Self {
        assert!(bits >= 64, "precision must be at least 64 bits");
        assert!(
            tail_relative_bound > 0.0 && tail_relative_bound < 1.0,
            "tail bound must lie in (0, 1)"
        );
        assert!(max_terms > 0);
        PrecisionContext {
            bits,
            tail_relative_bound,
            max_terms,
        }
    }

    pub fn with_bits(bits: u32) -> Self {
        PrecisionContext::new(bits, 1e-30, 1_000_000)
    }

    /// The tail bound as a `Real` at working precision.
    pub fn tail_bound_real(&self) -> Real {
        Real::from_f64(self.tail_relative_bound, self.bits)
    }

    /// Same policy at doubled precision (used for integer recovery).
    pub fn doubled(&self) -> Self {
        PrecisionContext {
            bits: self.bits * 2,
            ..*self
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::with_bits(256)
    }
}

/// High-precision value paired with an error bound.
///
/// `rigorous` is true when the bound comes from a proven majorization of
/// the truncation tail (plus conservative rounding slop), false when any
/// heuristic entered (for example quadrature refinement agreement).
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxValue {
    pub value: Real,
    pub error_bound: Real,
    pub rigorous: bool,
}

impl ApproxValue {
    pub fn new(value: Real, error_bound: Real, rigorous: bool) -> Self {
        assert!(
            !error_bound.is_negative(),
            "error bound must be non-negative"
        );
        ApproxValue {
            value,
            error_bound,
            rigorous,
        }
    }

    /// Exact integer recovered by rounding, provided the bound allows it.
    pub fn integer_match(&self) -> Option<BigInt> {
        let half = Real::one(self.value.prec()).mul2exp(-1);
        if self.error_bound.cmp_real(&half).is_ge() {
            return None;
        }
        let n = self.value.round_bigint();
        let diff = (&self.value - &Real::from_bigint(&n, self.value.prec())).abs();
        if diff.cmp_real(&self.error_bound).is_gt() {
            return None;
        }
        Some(n)
    }

    /// Whether `|value - target| <= error_bound`.
    pub fn agrees_with_integer(&self, target: &BigInt) -> bool {
        let t = Real::from_bigint(target, self.value.prec());
        (&self.value - &t).abs().cmp_real(&self.error_bound).is_le()
    }

    /// `|value - target| / |target|` for a nonzero integer target.
    pub fn relative_error_vs(&self, target: &BigInt) -> Real {
        assert!(!num_traits::Zero::is_zero(target));
        let t = Real::from_bigint(target, self.value.prec());
        (&(&self.value - &t) / &t).abs()
    }
}

/// Complex analogue of [`ApproxValue`]; the bound covers the modulus of
/// the total error.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxComplex {
    pub value: Complex,
    pub error_bound: Real,
    pub rigorous: bool,
}

impl ApproxComplex {
    pub fn new(value: Complex, error_bound: Real, rigorous: bool) -> Self {
        assert!(
            !error_bound.is_negative(),
            "error bound must be non-negative"
        );
        ApproxComplex {
            value,
            error_bound,
            rigorous,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn integer_match_respects_bound() {
        let v = ApproxValue::new(
            Real::from_f64(6.9999999, 128),
            Real::from_f64(1e-5, 128),
            true,
        );
        assert_eq!(v.integer_match(), Some(BigInt::from(7)));

        let loose = ApproxValue::new(Real::from_f64(7.2, 128), Real::from_f64(0.6, 128), true);
        assert_eq!(loose.integer_match(), None);

        let off = ApproxValue::new(Real::from_f64(7.2, 128), Real::from_f64(0.01, 128), true);
        assert_eq!(off.integer_match(), None);
    }

    #[test]
    #[should_panic]
    fn context_rejects_low_precision() {
        let _ = PrecisionContext::new(32, 1e-30, 100);
    }

    #[test]
    fn doubled_context() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.doubled().bits, 512);
        assert_eq!(ctx.bits, 256);
    }
}
