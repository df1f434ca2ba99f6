//! Coherent states built on the moment sequence `rho(n) = B_{r,s}(n)`.
//!
//! `|z> = N^(-1/2)(|z|^2) sum_n z^n / sqrt(B(n)) |n>` with
//! `N(x) = sum_n x^n / B(n)`. Because `B_{r,s}(n)` grows faster than
//! `n!`, the normalization series converges for every `x`, and the
//! resolution-of-unity condition reduces to the verified moment
//! identity of the weight measures (with `W_{r,s} = pi W / N`).

use num_bigint::BigInt;

use crate::error::Error;
use crate::measures::{self, MomentReport, WeightSpec};
use crate::normal_order::{BellSequence, FamilyParams};
use crate::precision::{ApproxValue, PrecisionContext};
use crate::real::{consts, Complex, Real};
use crate::Result;

/// A family's exact moments plus lazily grown length.
#[derive(Debug, Clone)]
pub struct CoherentFamily {
    seq: BellSequence,
}

impl CoherentFamily {
    pub fn new(params: FamilyParams, initial_len: u64) -> Self {
        CoherentFamily {
            seq: BellSequence::new(params, initial_len.max(8)),
        }
    }

    pub fn params(&self) -> FamilyParams {
        self.seq.params
    }

    pub fn moments(&self) -> &BellSequence {
        &self.seq
    }

    fn ensure_len(&mut self, len: usize) {
        if self.seq.len() < len {
            self.seq = BellSequence::new(self.seq.params, len as u64);
        }
    }

    fn moment(&mut self, n: usize) -> BigInt {
        self.ensure_len(n + 1);
        self.seq.get(n).unwrap().clone()
    }
}

/// `N_{r,s}(x) = sum_n x^n / B_{r,s}(n)` for `x >= 0` with a rigorous
/// geometric tail (the term ratio `x B(n)/B(n+1)` is non-increasing by
/// log-convexity of the moment sequence, which is asserted as the terms
/// stream by).
pub fn normalization(
    family: &mut CoherentFamily,
    x: &Real,
    ctx: &PrecisionContext,
) -> Result<ApproxValue> {
    assert!(!x.is_negative(), "normalization needs x >= 0");
    let bits = ctx.bits;
    let wp = bits + 32;
    let x = x.with_prec(wp);
    if x.is_zero() {
        return Ok(ApproxValue::new(Real::one(bits), Real::zero(bits), true));
    }
    let mut sum = Real::one(wp); // n = 0 term (B(0) = 1)
    let mut x_pow = Real::one(wp);
    let mut n = 0usize;
    let half = Real::one(wp).mul2exp(-1);
    loop {
        if n >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded(ctx.max_terms));
        }
        n += 1;
        x_pow = &x_pow * &x;
        let b_cur = family.moment(n);
        let term = &x_pow / &Real::from_bigint(&b_cur, wp);
        sum = &sum + &term;
        // ratio of the next term to this one: x B(n) / B(n+1)
        let b_next = family.moment(n + 1);
        let rho = &(&x * &Real::from_bigint(&b_cur, wp)) / &Real::from_bigint(&b_next, wp);
        if rho.cmp_real(&half).is_lt() && (&term / &sum).to_f64() < ctx.tail_relative_bound {
            // tail <= t_(n+1)/(1 - rho) <= 2 t_n rho
            let tail = (&term * &rho).mul2exp(1);
            let err = &tail + &sum.abs().scaled_eps(wp - 24);
            return Ok(ApproxValue::new(
                sum.with_prec(bits),
                err.with_prec(bits),
                true,
            ));
        }
    }
}

/// Normalized state amplitudes on the number basis up to `cutoff`.
#[derive(Debug, Clone)]
pub struct StateVector {
    pub z: Complex,
    pub coefficients: Vec<Complex>,
    pub cutoff: usize,
    /// Bound on the squared norm lost to truncation.
    pub tail_bound: Real,
}

impl StateVector {
    /// `sum |amplitude|^2`, which must be 1 within the tail bound.
    pub fn norm_sqr(&self) -> Real {
        let prec = self.z.prec();
        self.coefficients
            .iter()
            .fold(Real::zero(prec), |acc, c| &acc + &c.norm_sqr())
    }
}

/// Build `|z>` with amplitudes `N^(-1/2) z^n / sqrt(B(n))`.
pub fn state_coefficients(
    family: &mut CoherentFamily,
    z: &Complex,
    cutoff: usize,
    ctx: &PrecisionContext,
) -> Result<StateVector> {
    let bits = ctx.bits;
    let wp = bits + 32;
    let z = z.with_prec(wp);
    let x = z.norm_sqr();
    let norm = normalization(family, &x, ctx)?;
    let scale = Real::one(wp) / norm.value.with_prec(wp).sqrt();

    let mut coefficients = Vec::with_capacity(cutoff + 1);
    let mut z_pow = Complex::one(wp);
    for n in 0..=cutoff {
        if n > 0 {
            z_pow = z_pow.mul(&z);
        }
        let b = family.moment(n);
        let amp = z_pow.scale(&(&scale / &Real::from_bigint(&b, wp).sqrt()));
        coefficients.push(amp.with_prec(bits));
    }

    // truncation tail of sum_{n>cutoff} x^n/B(n), relative to N(x)
    let b_next = family.moment(cutoff + 1);
    let t_next = &x.powi(cutoff as i64 + 1) / &Real::from_bigint(&b_next, wp);
    let b_next2 = family.moment(cutoff + 2);
    let rho = &(&x * &Real::from_bigint(&b_next, wp)) / &Real::from_bigint(&b_next2, wp);
    if !x.is_zero() && rho.cmp_real(&Real::one(wp).mul2exp(-1)).is_ge() {
        return Err(Error::TruncationTooSmall {
            needed: cutoff + 2,
            got: cutoff,
        });
    }
    let tail = (&t_next.mul2exp(1) / &norm.value.with_prec(wp)).abs();
    let tol = Real::from_f64(ctx.tail_relative_bound, wp);
    if tail.cmp_real(&tol).is_gt() {
        return Err(Error::TruncationTooSmall {
            needed: cutoff + 2,
            got: cutoff,
        });
    }
    Ok(StateVector {
        z: z.with_prec(bits),
        coefficients,
        cutoff,
        tail_bound: tail.with_prec(bits),
    })
}

/// Overlap `<z|w> = N(|z|^2)^(-1/2) N(|w|^2)^(-1/2) sum (zbar w)^n / B(n)`.
pub fn overlap(
    family: &mut CoherentFamily,
    z: &Complex,
    w: &Complex,
    ctx: &PrecisionContext,
) -> Result<crate::precision::ApproxComplex> {
    let bits = ctx.bits;
    let wp = bits + 32;
    let z = z.with_prec(wp);
    let w = w.with_prec(wp);
    let nz = normalization(family, &z.norm_sqr(), ctx)?;
    let nw = normalization(family, &w.norm_sqr(), ctx)?;
    let zw = z.conj().mul(&w);
    let mag = zw.abs();

    let mut sum = Complex::one(wp);
    let mut pow = Complex::one(wp);
    let mut mag_pow = Real::one(wp);
    let mut n = 0usize;
    let half = Real::one(wp).mul2exp(-1);
    let tail = loop {
        if n >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded(ctx.max_terms));
        }
        n += 1;
        pow = pow.mul(&zw);
        mag_pow = &mag_pow * &mag;
        let b_cur = Real::from_bigint(&family.moment(n), wp);
        sum = sum.add(&pow.scale(&(Real::one(wp) / &b_cur)));
        if mag.is_zero() {
            break Real::zero(wp);
        }
        let term_mag = &mag_pow / &b_cur;
        let b_next = Real::from_bigint(&family.moment(n + 1), wp);
        let rho = &(&mag * &b_cur) / &b_next;
        if rho.cmp_real(&half).is_lt()
            && (&term_mag / &sum.abs()).to_f64() < ctx.tail_relative_bound
        {
            break (&term_mag * &rho).mul2exp(1);
        }
    };
    let scale = Real::one(wp) / (&nz.value.with_prec(wp) * &nw.value.with_prec(wp)).sqrt();
    let value = sum.scale(&scale);
    let err = (&(&tail * &scale) + &value.abs().scaled_eps(wp - 24)).with_prec(bits);
    Ok(crate::precision::ApproxComplex::new(
        value.with_prec(bits),
        err,
        true,
    ))
}

/// Resolution-of-unity check: with `W_{r,s} = pi W / N` the moment
/// identity `pi int x^n [W(x)/N(x)] dx = rho(n)` is exactly the measure
/// moment identity, so this re-uses the quadrature verification and
/// additionally samples the reconstructed `W(x) = W_{r,s}(x) N(x) / pi`
/// for positivity.
pub fn resolution_check(
    family: &mut CoherentFamily,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<MomentReport> {
    let params = family.params();
    let spec = WeightSpec::for_family(params).map_err(|_| Error::UnsupportedFamily {
        r: params.r(),
        s: params.s(),
    })?;
    if !spec.is_continuous() {
        return Err(Error::UnsupportedFamily {
            r: params.r(),
            s: params.s(),
        });
    }
    let report = measures::moment_quadrature(&spec, n, ctx)?;

    // reconstructed resolution measure must be positive where sampled
    let bits = ctx.bits;
    let pi = consts::pi(bits);
    for xf in [0.1f64, 1.0, 10.0] {
        let x = Real::from_f64(xf, bits);
        let w = measures::eval_weight(&spec, &x, ctx)?;
        let nx = normalization(family, &x, ctx)?;
        let reconstructed = &(&w.value * &nx.value) / &pi;
        if !reconstructed.is_positive() {
            return Err(Error::TailBoundFailure(format!(
                "reconstructed density non-positive at x={xf}"
            )));
        }
    }
    Ok(report)
}
