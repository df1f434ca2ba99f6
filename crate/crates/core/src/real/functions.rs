//! Elementary functions on `Real`.
//!
//! Every routine works at the argument's precision plus guard bits and
//! rounds the result back, so callers see errors of a few ulps. Arguments
//! are range-reduced with exact power-of-two scalings wherever possible.

use num_bigint::BigInt;

use super::{consts, Real};

const GUARD: u32 = 64;

impl Real {
    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec();
        let want = 2 * (prec as u64 + 4);
        let bits = self.mant.bits();
        let mut shift = want.saturating_sub(bits);
        if (self.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let scaled = self.mant.magnitude() << shift;
        let root = scaled.sqrt();
        Real::normalized(BigInt::from(root), (self.exp - shift as i64) / 2, prec)
    }

    /// Integer n-th root of a non-negative value, `n >= 1`.
    pub fn nth_root(&self, n: u32) -> Real {
        assert!(n >= 1);
        assert!(!self.is_negative(), "nth_root of negative value");
        if self.is_zero() || n == 1 {
            return self.clone();
        }
        let prec = self.prec();
        let want = n as u64 * (prec as u64 + 4);
        let bits = self.mant.bits();
        let mut shift = want.saturating_sub(bits);
        let rem = (self.exp - shift as i64).rem_euclid(n as i64);
        shift += rem as u64;
        let scaled = self.mant.magnitude() << shift;
        let root = scaled.nth_root(n);
        Real::normalized(
            BigInt::from(root),
            (self.exp - shift as i64) / n as i64,
            prec,
        )
    }

    /// `e^x`. The argument must be modest (`|x| < 4e15`), which every
    /// caller in this crate satisfies by working in the log domain.
    pub fn exp(&self) -> Real {
        let prec = self.prec();
        let wp = prec + GUARD;
        if self.is_zero() {
            return Real::one(prec);
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 4.0e15, "exp argument out of supported range");
        let ln2 = consts::ln2(wp);
        let x = self.with_prec(wp);
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let f = &x - &ln2.mul_i64(k);
        // now |f| <= (ln 2)/2 + slop; halve 8 more times
        const RED: i64 = 8;
        let r = f.mul2exp(-RED);
        let mut term = Real::one(wp);
        let mut sum = Real::one(wp);
        let mut j = 1u64;
        loop {
            term = (&term * &r).div_u64(j);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            if term.pos() + (wp as i64 + 8) < sum.pos() {
                break;
            }
            j += 1;
            assert!(j < 100_000, "exp series failed to converge");
        }
        let mut y = sum;
        for _ in 0..RED {
            y = &y * &y;
        }
        y.mul2exp(k).with_prec(prec)
    }

    /// Natural logarithm; panics unless the value is strictly positive.
    pub fn ln(&self) -> Real {
        assert!(self.is_positive(), "ln of non-positive value");
        let prec = self.prec();
        let wp = prec + GUARD;
        // write x = u * 2^q with u in [2/3, 4/3)
        let mut q = self.pos() - 1;
        let mut u = self.with_prec(wp).mul2exp(-q);
        let four_thirds = Real::from_ratio(&BigInt::from(4), &BigInt::from(3), wp);
        if u.cmp_real(&four_thirds).is_ge() {
            u = u.mul2exp(-1);
            q += 1;
        }
        let one = Real::one(wp);
        let t = (&u - &one) / (&u + &one);
        let t2 = &t * &t;
        let mut power = t.clone();
        let mut sum = t.clone();
        let mut k = 1u64;
        if !t.is_zero() {
            loop {
                power = &power * &t2;
                if power.is_zero() {
                    break;
                }
                let term = power.div_u64(2 * k + 1);
                sum = &sum + &term;
                if term.pos() + (wp as i64 + 8) < sum.pos().max(1) {
                    break;
                }
                k += 1;
                assert!(k < 100_000, "ln series failed to converge");
            }
        }
        let ln_u = sum.mul2exp(1);
        (&ln_u + &consts::ln2(wp).mul_i64(q)).with_prec(prec)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, k: i64) -> Real {
        let prec = self.prec();
        if k == 0 {
            return Real::one(prec);
        }
        let wp = prec + GUARD;
        let mut base = self.with_prec(wp);
        let mut e = k.unsigned_abs();
        let mut acc = Real::one(wp);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if k < 0 {
            acc = Real::one(wp) / acc;
        }
        acc.with_prec(prec)
    }

    /// `x^y` for positive `x`.
    pub fn pow(&self, y: &Real) -> Real {
        let prec = self.prec().max(y.prec());
        if y.is_zero() {
            return Real::one(prec);
        }
        let wp = prec + GUARD;
        (self.with_prec(wp).ln() * y.with_prec(wp))
            .exp()
            .with_prec(prec)
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(&self) -> (Real, Real) {
        let prec = self.prec();
        let wp = prec + GUARD;
        if self.is_zero() {
            return (Real::zero(prec), Real::one(prec));
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 1.0e15, "sin/cos argument out of supported range");
        let half_pi = consts::pi(wp).mul2exp(-1);
        let k = (xf / std::f64::consts::FRAC_PI_2).round() as i64;
        let f = &self.with_prec(wp) - &half_pi.mul_i64(k);
        let (s, c) = sin_cos_small(&f, wp);
        let out = match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        (out.0.with_prec(prec), out.1.with_prec(prec))
    }

    pub fn sin(&self) -> Real {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Real {
        self.sin_cos().1
    }

    /// Inverse tangent, any real argument.
    pub fn atan(&self) -> Real {
        let prec = self.prec();
        let wp = prec + GUARD;
        if self.is_zero() {
            return Real::zero(prec);
        }
        let one = Real::one(wp);
        let x = self.with_prec(wp);
        // |x| > 1: atan(x) = sign(x) pi/2 - atan(1/x)
        if x.abs().cmp_real(&one).is_gt() {
            let half_pi = consts::pi(wp).mul2exp(-1);
            let signed_half_pi = if x.is_positive() {
                half_pi
            } else {
                half_pi.neg()
            };
            return (&signed_half_pi - &(&one / &x).atan_core(wp)).with_prec(prec);
        }
        x.atan_core(wp).with_prec(prec)
    }

    /// atan for |x| <= 1 at working precision.
    fn atan_core(&self, wp: u32) -> Real {
        // halve the angle until |y| < 2^-4, then an alternating series
        let mut y = self.with_prec(wp);
        let one = Real::one(wp);
        let mut halvings = 0u32;
        while !y.is_zero() && y.pos() > -4 {
            let denom = &one + &(&one + &(&y * &y)).sqrt();
            y = &y / &denom;
            halvings += 1;
            assert!(halvings < 64);
        }
        if y.is_zero() {
            return Real::zero(wp);
        }
        let y2 = &y * &y;
        let mut power = y.clone();
        let mut sum = y.clone();
        let mut k = 1u64;
        loop {
            power = &power * &y2;
            if power.is_zero() {
                break;
            }
            let term = power.div_u64(2 * k + 1);
            sum = if k % 2 == 1 {
                &sum - &term
            } else {
                &sum + &term
            };
            if term.pos() + (wp as i64 + 8) < sum.pos() {
                break;
            }
            k += 1;
            assert!(k < 100_000);
        }
        sum.mul2exp(halvings as i64)
    }

    /// Two-argument inverse tangent with the usual quadrant conventions.
    pub fn atan2(&self, x: &Real) -> Real {
        let prec = self.prec().max(x.prec());
        let wp = prec + GUARD;
        let y = self.with_prec(wp);
        let x = x.with_prec(wp);
        let pi = consts::pi(wp);
        let v = if x.is_positive() {
            (&y / &x).atan()
        } else if x.is_zero() {
            assert!(!y.is_zero(), "atan2(0, 0) undefined");
            let half_pi = pi.mul2exp(-1);
            if y.is_positive() {
                half_pi
            } else {
                half_pi.neg()
            }
        } else if !y.is_negative() {
            &(&y / &x).atan() + &pi
        } else {
            &(&y / &x).atan() - &pi
        };
        v.with_prec(prec)
    }

    pub fn sinh(&self) -> Real {
        let prec = self.prec();
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        if x.is_zero() {
            return Real::zero(prec);
        }
        // series near zero avoids cancellation in (e^x - e^-x)/2
        if x.pos() < -(GUARD as i64) / 2 {
            let x2 = &x * &x;
            let mut term = x.clone();
            let mut sum = x.clone();
            let mut k = 1u64;
            loop {
                term = (&term * &x2).div_u64((2 * k) * (2 * k + 1));
                if term.is_zero() || term.pos() + (wp as i64 + 8) < sum.pos() {
                    break;
                }
                sum = &sum + &term;
                k += 1;
            }
            return sum.with_prec(prec);
        }
        let e = x.exp();
        let ei = Real::one(wp) / &e;
        (&e - &ei).mul2exp(-1).with_prec(prec)
    }

    pub fn cosh(&self) -> Real {
        let prec = self.prec();
        let wp = prec + GUARD;
        let e = self.with_prec(wp).exp();
        let ei = Real::one(wp) / &e;
        (&e + &ei).mul2exp(-1).with_prec(prec)
    }

    pub fn tanh(&self) -> Real {
        let prec = self.prec();
        let wp = prec + GUARD;
        let x = self.with_prec(wp);
        if x.is_zero() {
            return Real::zero(prec);
        }
        // saturate once e^(2|x|) dwarfs the working precision
        let xf = x.to_f64();
        if xf.abs() > (wp as f64) * std::f64::consts::LN_2 {
            let one = Real::one(prec);
            return if x.is_positive() { one } else { one.neg() };
        }
        let e2 = x.mul2exp(1).exp();
        let one = Real::one(wp);
        ((&e2 - &one) / (&e2 + &one)).with_prec(prec)
    }
}

fn sin_cos_small(f: &Real, wp: u32) -> (Real, Real) {
    // Taylor series for |f| <= pi/4 + slop
    let f2 = f * f;
    let mut s_term = f.clone();
    let mut s_sum = f.clone();
    let mut c_term = Real::one(wp);
    let mut c_sum = Real::one(wp);
    let mut k = 1u64;
    loop {
        // sine: f^(2k+1)/(2k+1)!, cosine: f^(2k)/(2k)!
        c_term = (&c_term * &f2).div_u64((2 * k - 1) * (2 * k));
        s_term = (&s_term * &f2).div_u64((2 * k) * (2 * k + 1));
        if k % 2 == 1 {
            c_sum = &c_sum - &c_term;
            s_sum = &s_sum - &s_term;
        } else {
            c_sum = &c_sum + &c_term;
            s_sum = &s_sum + &s_term;
        }
        if c_term.is_zero() || c_term.pos() + (wp as i64 + 8) < c_sum.pos() {
            break;
        }
        k += 1;
        assert!(k < 100_000);
    }
    (s_sum, c_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn assert_close(x: &Real, want: f64, rel: f64) {
        let got = x.to_f64();
        assert!(
            (got - want).abs() <= want.abs() * rel + 1e-300,
            "got {got}, want {want}"
        );
    }

    #[test]
    fn exp_ln_agree_with_f64() {
        for &v in &[0.001, 0.5, 1.0, 2.0, 10.0, -3.5, 37.2, -80.0] {
            let x = Real::from_f64(v, 192);
            assert_close(&x.exp(), v.exp(), 1e-14);
        }
        for &v in &[0.001, 0.5, 1.0, 2.0, 10.0, 1e8, 1e-9] {
            let x = Real::from_f64(v, 192);
            assert_close(&x.ln(), v.ln(), 1e-13);
        }
    }

    #[test]
    fn exp_of_huge_negative_underflows_gracefully() {
        let x = Real::from_f64(-5000.0, 256);
        let v = x.exp();
        assert!(v.is_positive());
        assert!(v.log2_floor() < -7000);
    }

    #[test]
    fn ln_exp_roundtrip_high_precision() {
        let x = Real::from_f64(1.7324, 320);
        let y = x.exp().ln();
        let d = (&x - &y).abs();
        assert!(d.is_zero() || d.log2_floor() < -300);
    }

    #[test]
    fn sqrt_and_roots() {
        let two = Real::from_u64(2, 256);
        let r = two.sqrt();
        let back = (&r * &r - &two).abs();
        assert!(back.log2_floor() < -250);
        let x = Real::from_f64(123.456, 256);
        let c = x.nth_root(3);
        assert_close(&(&(&c * &c) * &c), 123.456, 1e-14);
    }

    #[test]
    fn trig_matches_f64() {
        for &v in &[0.0, 0.3, 1.0, -2.5, 3.7, 10.0, -40.0] {
            let x = Real::from_f64(v, 192);
            let (s, c) = x.sin_cos();
            assert!((s.to_f64() - v.sin()).abs() < 1e-13);
            assert!((c.to_f64() - v.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn atan_and_atan2() {
        for &v in &[0.0, 0.1, 0.99, 1.0, 5.0, -3.0, 1e6] {
            let x = Real::from_f64(v, 192);
            assert!((x.atan().to_f64() - v.atan()).abs() < 1e-13);
        }
        let y = Real::from_f64(1.0, 192);
        let x = Real::from_f64(-1.0, 192);
        assert!((y.atan2(&x).to_f64() - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        assert!((y.neg().atan2(&x).to_f64() + 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn hyperbolics() {
        for &v in &[0.0, 1e-30, 0.5, 3.0, -2.0, 50.0] {
            let x = Real::from_f64(v, 192);
            assert!((x.sinh().to_f64() - v.sinh()).abs() <= v.sinh().abs() * 1e-13 + 1e-300);
            assert_close(&x.cosh(), v.cosh(), 1e-13);
            assert!((x.tanh().to_f64() - v.tanh()).abs() < 1e-13);
        }
        let big = Real::from_f64(500.0, 64);
        assert_eq!(big.tanh().to_f64(), 1.0);
    }

    #[test]
    fn pow_special_cases() {
        let x = Real::from_f64(5.5, 192);
        assert_close(&x.pow(&Real::from_f64(0.5, 192)), 5.5f64.sqrt(), 1e-13);
        assert_close(&x.powi(-3), 5.5f64.powi(-3), 1e-13);
        assert_eq!(x.powi(0).to_f64(), 1.0);
    }

    #[test]
    fn precision_doubling_consistency() {
        // the generic internal oracle: recompute at twice the precision
        let x = Real::from_f64(0.8321, 128);
        let lo = x.exp();
        let hi = x.with_prec(256).exp();
        let d = (&lo.with_prec(256) - &hi).abs();
        assert!(d.is_zero() || d.log2_floor() < -120);
        let c = Ordering::Less;
        assert_eq!(lo.with_prec(64).cmp_real(&hi.with_prec(64)).then(c), c);
    }
}
