//! Cached high-precision constants.
//!
//! Each constant is computed by an integer spigot with 64 guard bits; the
//! best value computed so far is kept behind a mutex and re-rounded for
//! lower-precision requests.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Real;

static PI: Mutex<Option<Real>> = Mutex::new(None);
static LN2: Mutex<Option<Real>> = Mutex::new(None);
static E: Mutex<Option<Real>> = Mutex::new(None);

fn cached(slot: &Mutex<Option<Real>>, prec: u32, compute: fn(u32) -> Real) -> Real {
    let mut guard = slot.lock().unwrap();
    if let Some(v) = guard.as_ref() {
        if v.prec() >= prec {
            return v.with_prec(prec);
        }
    }
    let v = compute(prec);
    *guard = Some(v.clone());
    v.with_prec(prec)
}

/// `atan(1/q) * 2^scale`, truncated; error below `terms + 1` units.
fn atan_recip_scaled(q: u64, scale: u64) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut power = (BigInt::one() << scale) / q;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `atanh(1/q) * 2^scale`, truncated.
fn atanh_recip_scaled(q: u64, scale: u64) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut power = (BigInt::one() << scale) / q;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &q2;
        if power.is_zero() {
            break;
        }
        sum += &power / (2 * k + 1);
        k += 1;
    }
    sum
}

fn compute_pi(prec: u32) -> Real {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let scale = prec as u64 + 64;
    let v = atan_recip_scaled(5, scale) * 16 - atan_recip_scaled(239, scale) * 4;
    Real::normalized(v, -(scale as i64), prec + 32)
}

fn compute_ln2(prec: u32) -> Real {
    // ln 2 = 2 atanh(1/3)
    let scale = prec as u64 + 64;
    let v = atanh_recip_scaled(3, scale) * 2;
    Real::normalized(v, -(scale as i64), prec + 32)
}

fn compute_e(prec: u32) -> Real {
    let scale = prec as u64 + 64;
    let mut term = BigInt::one() << scale;
    let mut sum = term.clone();
    let mut k = 1u64;
    while term.is_positive() {
        term /= k;
        sum += &term;
        k += 1;
    }
    Real::normalized(sum, -(scale as i64), prec + 32)
}

pub fn pi(prec: u32) -> Real {
    cached(&PI, prec, compute_pi)
}

pub fn ln2(prec: u32) -> Real {
    cached(&LN2, prec, compute_ln2)
}

/// Euler's number e.
pub fn e(prec: u32) -> Real {
    cached(&E, prec, compute_e)
}
