//! Modified Bessel functions from their ascending series.

use num_bigint::BigInt;

use crate::error::Error;
use crate::precision::{ApproxValue, PrecisionContext};
use crate::real::{consts, gamma, Real};
use crate::Result;

/// `I_nu(x)` for real order `nu >= -1` (non-integer negative orders are
/// needed for `K_nu`) and `x >= 0`, by the ascending series
/// `(x/2)^nu sum_m (x^2/4)^m / (m! Gamma(m + nu + 1))`.
pub fn bessel_i(order: &Real, x: &Real, ctx: &PrecisionContext) -> Result<ApproxValue> {
    assert!(!x.is_negative(), "Bessel I needs x >= 0");
    let bits = ctx.bits;
    let wp = bits + 48;
    let nu = order.with_prec(wp);
    let x = x.with_prec(wp);
    let one = Real::one(wp);
    assert!(
        nu.cmp_real(&one.neg()).is_gt(),
        "Bessel I series needs nu > -1"
    );

    if x.is_zero() {
        let v = if nu.is_zero() {
            Real::one(bits)
        } else {
            Real::zero(bits)
        };
        return Ok(ApproxValue::new(v, Real::zero(bits), true));
    }

    let half_x = x.mul2exp(-1);
    let quarter_sq = &half_x * &half_x;
    // prefactor (x/2)^nu / Gamma(nu + 1)
    let power = if nu.is_zero() {
        one.clone()
    } else {
        half_x.pow(&nu)
    };
    let prefactor = &power / &gamma(&(&nu + &one));

    let mut term = one.clone();
    let mut sum = one.clone();
    let mut m = 0u64;
    loop {
        if m as usize >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded(ctx.max_terms));
        }
        let mr = Real::from_u64(m, wp);
        term = &(&term * &quarter_sq) / &(&(&mr + &one) * &(&(&mr + &nu) + &one));
        sum = &sum + &term;
        m += 1;
        // ratio (x/2)^2 / ((m+1)(m+nu+1)) decreases monotonically
        let rho = &quarter_sq / &(&Real::from_u64(m + 1, wp) * &(&Real::from_u64(m + 1, wp) + &nu));
        if rho.cmp_real(&one.mul2exp(-1)).is_lt()
            && (&term / &sum).to_f64() < ctx.tail_relative_bound
        {
            break;
        }
    }
    let value = (&prefactor * &sum).with_prec(bits);
    // tail < 2 |t_m| by the geometric majorization, plus rounding slop
    let tail = (&prefactor * &term).mul2exp(1).abs();
    let err = (&tail + &value.abs().scaled_eps(wp - 32)).with_prec(bits);
    Ok(ApproxValue::new(value, err, true))
}

/// `K_nu(x)` for non-integer `nu` in `(0,1)` and `x > 0`, via
/// `K_nu = pi (I_(-nu) - I_nu) / (2 sin(nu pi))`. The subtraction loses
/// about `2x/ln 2` bits, so the series run at padded precision.
pub fn bessel_k(order: &Real, x: &Real, ctx: &PrecisionContext) -> Result<ApproxValue> {
    assert!(x.is_positive(), "Bessel K needs x > 0");
    let floor = Real::from_bigint(&order.floor_bigint(), order.prec());
    if (order - &floor).is_zero() {
        return Err(Error::IntegerOrderUnsupported(order.to_decimal(6)));
    }
    assert!(
        order.is_positive() && order.cmp_real(&Real::one(order.prec())).is_lt(),
        "only orders in (0,1) are supported"
    );
    let bits = ctx.bits;
    let cancel = (2.0 * x.to_f64() / std::f64::consts::LN_2).ceil().max(0.0) as u32;
    if cancel > 4096 {
        return Err(Error::TailBoundFailure(format!(
            "Bessel K cancellation of {cancel} bits at x = {} unsupported",
            x.to_decimal(6)
        )));
    }
    let wp = bits + cancel + 64;
    // the series truncate relative to I ~ e^x; after the subtraction the
    // result is ~ e^-x, so the tail target must absorb the cancellation too
    let tail =
        (ctx.tail_relative_bound * 2f64.powi(-(cancel.min(900) as i32))).max(f64::MIN_POSITIVE);
    let inner = PrecisionContext {
        bits: wp,
        tail_relative_bound: tail,
        ..*ctx
    };
    let nu = order.with_prec(wp);
    let xw = x.with_prec(wp);

    let i_neg = bessel_i(&nu.neg(), &xw, &inner)?;
    let i_pos = bessel_i(&nu, &xw, &inner)?;
    let pi = consts::pi(wp);
    let sin_nu_pi = (&nu * &pi).sin();
    let scale = &pi / &sin_nu_pi.mul2exp(1);
    let value = (&(&i_neg.value - &i_pos.value) * &scale).with_prec(bits);
    let err = (&(&(&i_neg.error_bound + &i_pos.error_bound) * &scale.abs())
        + &value.abs().scaled_eps(bits.saturating_sub(16)))
        .with_prec(bits);
    Ok(ApproxValue::new(
        value,
        err,
        i_neg.rigorous && i_pos.rigorous,
    ))
}

/// `Gamma(1/3)`-free third-order base values used by the weight series.
pub(crate) fn gamma_thirds(wp: u32) -> (Real, Real) {
    let g43 = gamma(&Real::from_ratio(&BigInt::from(4), &BigInt::from(3), wp));
    let g53 = gamma(&Real::from_ratio(&BigInt::from(5), &BigInt::from(3), wp));
    (g43, g53)
}
