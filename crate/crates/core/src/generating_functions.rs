//! Exponential generating functions and the ordered-exponential matrix
//! element.
//!
//! For `s = 1` the EGF of `B_{r,1}(n)` is
//! `exp[(1 - (r-1) t)^(-1/(r-1)) - 1]`, which specializes to
//! `exp(t/(1-t))` at `r = 2` and `exp((1-2t)^(-1/2) - 1)` at `r = 3`.
//! The inner exponent here is `-1/(r-1)`; the `+1/(r-1)` variant found in
//! some published statements of the ordered-exponential identity
//! contradicts both specializations and the Fock-space oracle, and is
//! recorded in the errata ledger.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::normal_order::{BellSequence, FamilyParams};
use crate::precision::{ApproxComplex, PrecisionContext};
use crate::real::{Complex, Real};
use crate::series::PowerSeries;
use crate::util::factorial;
use crate::Result;

/// EGF coefficients of the `(r, 1)` family: `c_n n! = B_{r,1}(n)` exactly.
pub fn egf_coefficients(r: u32, order: usize) -> PowerSeries {
    assert!(r >= 2, "the EGF form covers r >= 2");
    let rm1 = BigInt::from(r - 1);
    let inner = PowerSeries::one_minus_cx_pow_neg(
        &BigRational::from_integer(rm1.clone()),
        &BigRational::new(BigInt::one(), rm1),
        order,
    )
    .sub_scalar(&BigRational::one());
    inner.exp()
}

/// Classical Bell EGF `exp(e^t - 1)`: `c_n n! = B(n)`.
pub fn classical_egf_check(order: usize) -> PowerSeries {
    let inner = PowerSeries::x(order).exp().sub_scalar(&BigRational::one());
    inner.exp()
}

/// `c_n * n!` as an exact integer; errors if the product is not integral.
pub fn egf_integer_coefficient(series: &PowerSeries, n: usize) -> Result<BigInt> {
    let v = series.coeff(n) * BigRational::from_integer(factorial(n as u64));
    if !v.is_integer() {
        return Err(Error::NonIntegralResult(format!("EGF coefficient {n}")));
    }
    Ok(v.to_integer())
}

/// Report comparing the two routes to `<z| exp(lambda (a^dag)^r a) |z>`.
#[derive(Debug, Clone)]
pub struct MatrixElementReport {
    pub closed_form: ApproxComplex,
    pub fock: ApproxComplex,
    /// Modulus of the difference between the two routes.
    pub difference: Real,
    pub cutoff_used: usize,
}

/// Closed form `exp{[(1 - lambda zbar^(r-1) (r-1))^(-1/(r-1)) - 1] |z|^2}`.
pub fn matrix_element_closed(
    r: u32,
    lambda: &Real,
    z: &Complex,
    ctx: &PrecisionContext,
) -> Result<ApproxComplex> {
    assert!(r >= 2);
    let wp = ctx.bits + 32;
    let lambda = lambda.with_prec(wp);
    let z = z.with_prec(wp);
    let zbar_pow = z.conj().pow_int(r as usize - 1);
    let w = Complex::one(wp).sub(&zbar_pow.scale(&lambda.mul_i64((r - 1) as i64)));
    // the principal fractional power is cut along the negative real axis
    if w.im.is_zero() && !w.re.is_positive() {
        return Err(Error::BranchCut(format!(
            "1 - lambda zbar^{} (r-1) = {:?} hit the cut",
            r - 1,
            w
        )));
    }
    let alpha = Real::from_ratio(&BigInt::from(-1), &BigInt::from(r as i64 - 1), wp);
    let inner = w.pow_real(&alpha).sub(&Complex::one(wp));
    let value = inner.scale(&z.norm_sqr()).exp();
    // a few dozen rounded operations on O(1) quantities
    let err = value.abs().scaled_eps(wp - 16);
    Ok(ApproxComplex::new(
        value.with_prec(ctx.bits),
        err.with_prec(ctx.bits),
        false,
    ))
}

/// Brute force in a truncated Fock basis: expand the exponential as
/// `sum_k lambda^k K^k |z> / k!` with `K = (a^dag)^r a` acting on exact
/// coherent-state amplitudes, then project back on `<z|`.
pub fn matrix_element_fock(
    r: u32,
    lambda: &Real,
    z: &Complex,
    cutoff: usize,
    ctx: &PrecisionContext,
) -> Result<ApproxComplex> {
    assert!(r >= 2);
    let wp = ctx.bits + 32;
    let lambda = lambda.with_prec(wp);
    let z = z.with_prec(wp);
    let step = (r - 1) as usize;

    // coherent amplitudes v_m = e^{-|z|^2/2} z^m / sqrt(m!)
    let norm = z.norm_sqr().mul2exp(-1).neg().exp();
    let mut amp = Vec::with_capacity(cutoff + 1);
    let mut zm = Complex::one(wp);
    let mut fact_sqrt = Real::one(wp);
    for m in 0..=cutoff {
        if m > 0 {
            zm = zm.mul(&z);
            fact_sqrt = &fact_sqrt * &Real::from_u64(m as u64, wp).sqrt();
        }
        amp.push(zm.scale(&norm).scale(&(Real::one(wp) / &fact_sqrt)));
    }

    // K |m> = m sqrt((m+1) ... (m+r-1)) |m + r - 1>
    let k_factor: Vec<Real> = (0..=cutoff)
        .map(|m| {
            let mut p = Real::one(wp);
            for i in 1..r as usize {
                p = &p * &Real::from_u64((m + i) as u64, wp);
            }
            &Real::from_u64(m as u64, wp) * &p.sqrt()
        })
        .collect();

    // scalar series sum_k t_k with t_k = <z| lambda^k K^k |z> / k!.
    // The iterated vectors u_k = lambda^k K^k |z> / k! grow in norm, but
    // K only raises, so anything dropped past the cutoff can never come
    // back; its neglected projection is bounded by the bra amplitude
    // just above the box.
    let v_top = {
        let mut f = Real::one(wp);
        for m in 1..=(cutoff as u64 + 1) {
            f = &f * &Real::from_u64(m, wp);
        }
        z.abs().powi(cutoff as i64 + 1) / f.sqrt()
    };

    let mut u = amp.clone();
    let mut sum = Complex::zero(wp);
    for (v, a) in amp.iter().zip(u.iter()) {
        sum = sum.add(&v.conj().mul(a));
    }
    let mut lost_proj = Real::zero(wp);
    let mut prev_t_abs: Option<Real> = None;
    let mut ratio_bar = 0.0f64;
    let mut converged = false;
    for k in 1..=ctx.max_terms {
        let scale = lambda.div_u64(k as u64);
        let mut next = vec![Complex::zero(wp); cutoff + 1];
        let mut alive = false;
        for m in 1..=cutoff {
            if u[m].is_zero() {
                continue;
            }
            let v = u[m].scale(&k_factor[m]).scale(&scale);
            let dst = m + step;
            if dst > cutoff {
                lost_proj = &lost_proj + &(&v_top * &v.abs());
            } else {
                alive = true;
                next[dst] = v;
            }
        }
        u = next;
        if !alive {
            converged = true;
            break;
        }
        let mut t = Complex::zero(wp);
        for (v, a) in amp.iter().zip(u.iter()) {
            if !a.is_zero() {
                t = t.add(&v.conj().mul(a));
            }
        }
        sum = sum.add(&t);
        let t_abs = t.abs();
        if let Some(prev) = &prev_t_abs {
            if !prev.is_zero() && !t_abs.is_zero() {
                ratio_bar = (&t_abs / prev).to_f64().max(0.05);
            }
        }
        let sum_abs = sum.abs();
        if !sum_abs.is_zero()
            && ratio_bar < 0.9
            && (&t_abs / &sum_abs).to_f64() < ctx.tail_relative_bound * (1.0 - ratio_bar)
        {
            converged = true;
            break;
        }
        prev_t_abs = Some(t_abs);
    }
    if !converged {
        return Err(Error::MaxTermsExceeded(ctx.max_terms));
    }

    let value = sum;
    let scale_norm = value.abs();
    let budget = if scale_norm.is_zero() {
        Real::from_f64(ctx.tail_relative_bound, wp)
    } else {
        &scale_norm * &Real::from_f64(ctx.tail_relative_bound, wp)
    };
    if lost_proj.cmp_real(&budget).is_gt() {
        return Err(Error::TruncationTooSmall {
            needed: cutoff + 1,
            got: cutoff,
        });
    }
    let err = if scale_norm.is_zero() {
        Real::zero(ctx.bits)
    } else {
        (&(&scale_norm * &Real::from_f64(ctx.tail_relative_bound * 4.0, wp)) + &lost_proj)
            .with_prec(ctx.bits)
    };
    Ok(ApproxComplex::new(value.with_prec(ctx.bits), err, false))
}

/// Evaluate both routes and report their difference. The Fock cutoff is
/// doubled until the brute force stabilizes or the cap is hit.
pub fn matrix_element_exp(
    r: u32,
    lambda: &Real,
    z: &Complex,
    cutoff: usize,
    ctx: &PrecisionContext,
) -> Result<MatrixElementReport> {
    let closed = matrix_element_closed(r, lambda, z, ctx)?;
    let mut cutoff = cutoff.max(16);
    loop {
        match matrix_element_fock(r, lambda, z, cutoff, ctx) {
            Ok(fock) => {
                let difference = closed.value.sub(&fock.value).abs();
                return Ok(MatrixElementReport {
                    closed_form: closed,
                    fock,
                    difference,
                    cutoff_used: cutoff,
                });
            }
            Err(Error::TruncationTooSmall { .. }) if cutoff < 1 << 14 => {
                cutoff *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Estimated growth order: the smallest `t` such that
/// `B(n+1) / (B(n) (n+1)^(t+1))` stops growing along the sampled tail.
/// Heuristic by construction and flagged as such.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthOrder {
    pub params: FamilyParams,
    pub t: u32,
    /// Always false: the boundedness test samples finitely many ratios.
    pub rigorous: bool,
}

pub fn growth_order(params: FamilyParams, depth: u64) -> GrowthOrder {
    assert!(depth >= 8, "growth order needs at least 8 samples");
    let seq = BellSequence::new(params, depth + 1);
    let slack = BigRational::new(BigInt::from(101), BigInt::from(100));
    for t in 0..=8u32 {
        // q_n = B(n+1) / (B(n) (n+1)^(t+1)) must be non-increasing
        // (within 1% slack) over the second half of the samples
        let q = |n: u64| -> BigRational {
            let denom = BigInt::from(n + 1).pow(t + 1) * seq.get(n as usize).unwrap();
            BigRational::new(seq.get(n as usize + 1).unwrap().clone(), denom)
        };
        let start = (depth / 2).max(2);
        let mut ok = true;
        let mut prev = q(start - 1);
        for n in start..=depth {
            let cur = q(n);
            if cur > &prev * &slack {
                ok = false;
                break;
            }
            prev = cur;
        }
        if ok {
            return GrowthOrder {
                params,
                t,
                rigorous: false,
            };
        }
    }
    GrowthOrder {
        params,
        t: 9,
        rigorous: false,
    }
}

impl Complex {
    /// Small integer power by repeated multiplication.
    pub fn pow_int(&self, k: usize) -> Complex {
        let mut acc = Complex::one(self.prec());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}
