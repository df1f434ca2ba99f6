//! A small arbitrary-precision binary floating-point layer.
//!
//! `Real` stores `mant * 2^exp` with the mantissa rounded to `prec` bits
//! after every operation (round to nearest, ties away from zero), so each
//! primitive operation is accurate to within one unit in the last place.
//! Callers account for accumulated rounding explicitly when they build
//! error bounds; nothing here pretends to be correctly rounded IEEE.
//!
//! The layer provides exactly what the series evaluators and quadrature
//! need: field operations, square and n-th roots, `exp`, `ln`, powers,
//! circular and hyperbolic functions, `atan2`, the gamma function on the
//! positive axis, and the constants pi, ln 2 and e. Everything is pure
//! except for the process-wide constant caches behind mutexes.

mod complex;
pub mod consts;
mod functions;
mod gamma;

pub use complex::Complex;
pub use gamma::{gamma, ln_gamma};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision binary float: `mant * 2^exp` with `prec`-bit mantissa.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl Real {
    /// Round `mant * 2^exp` to `prec` mantissa bits.
    pub(crate) fn normalized(mant: BigInt, exp: i64, prec: u32) -> Real {
        assert!(prec >= 8, "precision below 8 bits is not supported");
        if mant.is_zero() {
            return Real { mant, exp: 0, prec };
        }
        let bits = mant.bits();
        if bits <= prec as u64 {
            return Real { mant, exp, prec };
        }
        let drop = bits - prec as u64;
        let (sign, mag) = mant.into_parts();
        let kept = &mag >> drop;
        let rem = mag - (&kept << drop);
        let half = BigUint::one() << (drop - 1);
        let kept = if rem >= half { kept + 1u32 } else { kept };
        let mut mant = BigInt::from_biguint(sign, kept);
        let mut exp = exp + drop as i64;
        if mant.bits() > prec as u64 {
            // carry out of the top bit; the low bit is zero, shift is exact
            mant >>= 1;
            exp += 1;
        }
        Real { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> Real {
        Real {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Real {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Real {
        Real::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Real {
        Real::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Real {
        Real::normalized(v.clone(), 0, prec)
    }

    /// `num / den` rounded to `prec` bits. Panics on zero denominator.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Real {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Real::zero(prec);
        }
        let shift = prec as i64 + 3 + den.bits() as i64 - num.bits() as i64;
        let shift = shift.max(0) as u64;
        let q = (num.clone() << shift) / den;
        Real::normalized(q, -(shift as i64), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Real {
        Real::from_ratio(q.numer(), q.denom(), prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Real {
        assert!(v.is_finite(), "cannot convert non-finite f64");
        if v == 0.0 {
            return Real::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Real::normalized(BigInt::from(sign * mant as i64), exp, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value re-rounded at a different precision.
    pub fn with_prec(&self, prec: u32) -> Real {
        Real::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Real {
        Real {
            mant: -self.mant.clone(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul2exp(&self, k: i64) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: the value lies in `[2^(pos-1), 2^pos)`.
    pub(crate) fn pos(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64
    }

    /// `floor(log2 |x|)`; panics on zero.
    pub fn log2_floor(&self) -> i64 {
        assert!(!self.is_zero());
        self.pos() - 1
    }

    fn add_signed(&self, other: &Real, negate_other: bool) -> Real {
        let prec = self.prec.max(other.prec);
        let other_mant = || {
            if negate_other {
                -other.mant.clone()
            } else {
                other.mant.clone()
            }
        };
        if self.is_zero() {
            return Real::normalized(other_mant(), other.exp, prec);
        }
        if other.is_zero() {
            return Real::normalized(self.mant.clone(), self.exp, prec);
        }
        let pa = self.pos();
        let pb = other.pos();
        // An operand more than prec+8 binades below the other is under the
        // final rounding; dropping it keeps the error below one ulp.
        if pa - pb > prec as i64 + 8 {
            return Real::normalized(self.mant.clone(), self.exp, prec);
        }
        if pb - pa > prec as i64 + 8 {
            return Real::normalized(other_mant(), other.exp, prec);
        }
        let e = self.exp.min(other.exp);
        let m =
            (self.mant.clone() << (self.exp - e) as u64) + (other_mant() << (other.exp - e) as u64);
        Real::normalized(m, e, prec)
    }

    pub fn add(&self, other: &Real) -> Real {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.add_signed(other, true)
    }

    pub fn mul(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        Real::normalized(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    pub fn div(&self, other: &Real) -> Real {
        assert!(!other.is_zero(), "division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Real::zero(prec);
        }
        let shift =
            (prec as i64 + 3 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let q = (self.mant.clone() << shift) / &other.mant;
        Real::normalized(q, self.exp - other.exp - shift as i64, prec)
    }

    /// Division by a small positive integer.
    pub fn div_u64(&self, d: u64) -> Real {
        assert!(d != 0);
        if self.is_zero() {
            return self.clone();
        }
        let q = (self.mant.clone() << 64u32) / d;
        Real::normalized(q, self.exp - 64, self.prec)
    }

    pub fn mul_i64(&self, m: i64) -> Real {
        Real::normalized(&self.mant * m, self.exp, self.prec)
    }

    pub fn cmp_real(&self, other: &Real) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        let rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if rank(sa) != rank(sb) {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = {
            let pa = self.pos();
            let pb = other.pos();
            if pa != pb {
                pa.cmp(&pb)
            } else {
                let e = self.exp.min(other.exp);
                let ma = self.mant.magnitude().clone() << (self.exp - e) as u64;
                let mb = other.mant.magnitude().clone() << (other.exp - e) as u64;
                ma.cmp(&mb)
            }
        };
        if sa == Sign::Plus {
            mag
        } else {
            mag.reverse()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let take = bits.min(54);
        let mut top = (self.mant.magnitude() >> (bits - take)).to_u64().unwrap();
        let mut e = self.exp + (bits - take) as i64;
        if take == 54 {
            // round to 53 bits, ties away
            top = (top + 1) >> 1;
            e += 1;
        }
        let mut x = top as f64;
        while e > 500 {
            x *= 2f64.powi(500);
            e -= 500;
            if x.is_infinite() {
                break;
            }
        }
        while e < -500 {
            x *= 2f64.powi(-500);
            e += 500;
            if x == 0.0 {
                break;
            }
        }
        x *= 2f64.powi(e as i32);
        if self.is_negative() {
            -x
        } else {
            x
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_bigint(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            return self.mant.clone() << self.exp as u64;
        }
        let sh = (-self.exp) as u64;
        let (sign, mag) = self.mant.clone().into_parts();
        if sh > mag.bits() {
            // |x| < 1/2 strictly (|x| = 1/2 exactly has sh == bits)
            return BigInt::zero();
        }
        let kept = &mag >> sh;
        let rem = mag - (&kept << sh);
        let half = BigUint::one() << (sh - 1);
        let kept = if rem >= half { kept + 1u32 } else { kept };
        BigInt::from_biguint(sign, kept)
    }

    /// Largest integer not exceeding the value.
    pub fn floor_bigint(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            return self.mant.clone() << self.exp as u64;
        }
        let sh = (-self.exp) as u64;
        let q = self.mant.clone() >> sh;
        // BigInt >> floors for negatives already (arithmetic shift semantics)
        if self.mant.is_negative() {
            let back = q.clone() << sh;
            if back > self.mant {
                q - 1
            } else {
                q
            }
        } else {
            q
        }
    }

    /// Decimal scientific representation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        // first estimate of the decimal exponent
        let log10 = (self.pos() as f64 - 0.5) * std::f64::consts::LOG10_2;
        let mut e10 = log10.floor() as i64;
        let mut mantissa = self.scaled_decimal_digits(digits as i64 - 1 - e10);
        // correct the estimate if the digit count came out off by one
        let want_lo = pow10(digits as u32 - 1);
        let want_hi = &want_lo * 10u32;
        if mantissa >= want_hi {
            e10 += 1;
            mantissa = self.scaled_decimal_digits(digits as i64 - 1 - e10);
        } else if mantissa < want_lo {
            e10 -= 1;
            mantissa = self.scaled_decimal_digits(digits as i64 - 1 - e10);
        }
        if mantissa >= want_hi {
            // rounding bumped us up a decade (e.g. 9.99 -> 10.0)
            e10 += 1;
            mantissa = self.scaled_decimal_digits(digits as i64 - 1 - e10);
        }
        let s = mantissa.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// `round(|x| * 10^scale)` as a non-negative integer.
    fn scaled_decimal_digits(&self, scale: i64) -> BigUint {
        let mag = self.mant.magnitude().clone();
        // |x| * 10^scale = mag * 10^scale * 2^exp
        let (num, den) = if scale >= 0 {
            (mag * pow10(scale as u32), BigUint::one())
        } else {
            (mag, pow10((-scale) as u32))
        };
        let (num, den) = if self.exp >= 0 {
            (num << self.exp as u64, den)
        } else {
            (num, den << (-self.exp) as u64)
        };
        // rounded division
        (num + (&den >> 1u32)) / den
    }

    /// Decimal digits needed so that formatting is invertible at this precision.
    pub fn roundtrip_digits(&self) -> usize {
        (self.prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
    }

    /// Parse a decimal literal (`[+-]digits[.digits][e[+-]digits]`).
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Real, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid decimal literal {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut neg = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            neg = bytes[i] == b'-';
            i += 1;
        }
        let mut digits = String::new();
        let mut frac_len: i64 = 0;
        let mut seen_digit = false;
        let mut seen_dot = false;
        while i < bytes.len() {
            match bytes[i] {
                b'0'..=b'9' => {
                    digits.push(bytes[i] as char);
                    if seen_dot {
                        frac_len += 1;
                    }
                    seen_digit = true;
                }
                b'.' if !seen_dot => seen_dot = true,
                b'e' | b'E' => break,
                _ => return Err(bad()),
            }
            i += 1;
        }
        if !seen_digit {
            return Err(bad());
        }
        let mut exp10: i64 = 0;
        if i < bytes.len() {
            // exponent part
            i += 1; // consume e/E
            let rest = &s[i..];
            if rest.is_empty() {
                return Err(bad());
            }
            exp10 = rest.parse::<i64>().map_err(|_| bad())?;
        }
        exp10 -= frac_len;
        if digits.len() > 100_000 {
            return Err(Error::Parse("decimal literal too long".into()));
        }
        if exp10.unsigned_abs() > 1_000_000 {
            return Err(Error::Parse("decimal exponent out of range".into()));
        }
        let d: BigUint = digits.parse().map_err(|_| bad())?;
        let mut v = if exp10 >= 0 {
            Real::normalized(BigInt::from(d * pow10(exp10 as u32)), 0, prec)
        } else {
            let den = pow10((-exp10) as u32);
            Real::from_ratio(&BigInt::from(d), &BigInt::from(den), prec)
        };
        if neg {
            v = v.neg();
        }
        Ok(v)
    }

    /// One unit in the last place of this value (zero for zero).
    pub fn ulp(&self) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real::normalized(BigInt::one(), self.exp, self.prec)
    }

    /// `|x| * 2^(-k)`: conservative rounding-slop helper.
    pub fn scaled_eps(&self, k: u32) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real::normalized(BigInt::one(), self.pos() - k as i64, self.prec)
    }
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp_real(other))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} @{}b)", self.to_decimal(20), self.prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(self.roundtrip_digits()))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::$imp(self, rhs)
            }
        }
        impl std::ops::$trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real::$imp(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::$imp(&self, rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl std::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(self)
    }
}

impl std::ops::Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::neg(&self)
    }
}
