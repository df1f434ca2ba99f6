//! Dobinski-type series and hypergeometric representations of the
//! generalized Bell numbers.
//!
//! Every series here has the form `(1/e) sum_k N_k / k!` with integer
//! numerators `N_k` given by finite products of increasing linear
//! factors, so the term ratio
//! `t_{k+1}/t_k = N_{k+1} / (N_k (k+1))` is strictly decreasing. Once it
//! falls below 1/2 the tail is dominated by a geometric series and the
//! bound is a proven majorization: partial sums are kept in exact
//! rational arithmetic and only the final division by `e` rounds.
//!
//! The `r > s` series carries a `1/k!` factor that is missing from the
//! usual published statement (without it the series diverges); with the
//! factor restored it reproduces the exact normal-ordering integers,
//! including the (9,6) family's `1, 207775, 566828686621, ...`. See the
//! errata ledger.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::Error;
use crate::normal_order::{bell_number, FamilyParams};
use crate::precision::{ApproxValue, PrecisionContext};
use crate::real::{consts, Real};
use crate::util::factorial;
use crate::Result;

/// Exact partial sum of `sum_k N_k / k!` with a geometric tail bound.
pub(crate) struct ExactSeries {
    pub(crate) partial: BigRational,
    pub(crate) tail: BigRational,
}

/// Run the series given the integer numerator `N_k`. Requires the
/// (family-provable) fact that `N_{k+1}/(N_k (k+1))` decreases.
pub(crate) fn sum_factorial_series(
    numerator: impl Fn(u64) -> BigInt,
    first_index: u64,
    ctx: &PrecisionContext,
    tol_override: Option<&BigRational>,
) -> Result<ExactSeries> {
    let tol = match tol_override {
        Some(t) => t.clone(),
        None => BigRational::from_float(ctx.tail_relative_bound).expect("tail bound is finite"),
    };
    // running value: partial = acc / k!
    let mut k = first_index;
    let mut cur = numerator(k);
    debug_assert!(cur.is_positive());
    let mut acc = cur.clone();
    let mut taken = 1usize;
    loop {
        let next = numerator(k + 1);
        // sup of future term ratios is the current one, so rho < 1/2
        // makes the tail geometric: tail <= 2 t_{k+1}
        let ratio_small = 2u32 * &next < &cur * BigInt::from(k + 1);
        let term_small = &cur * tol.denom() < &acc * tol.numer();
        if ratio_small && term_small && taken >= 3 {
            let tail = BigRational::new(next * 2, factorial(k + 1));
            let partial = BigRational::new(acc, factorial(k));
            return Ok(ExactSeries { partial, tail });
        }
        if taken >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded(ctx.max_terms));
        }
        // move from denominator k! to (k+1)!
        acc = acc * (k + 1) + &next;
        cur = next;
        k += 1;
        taken += 1;
    }
}

/// Divide an exact series by `e` and package the rounded result.
pub(crate) fn over_e(
    series: ExactSeries,
    prefactor: &BigRational,
    ctx: &PrecisionContext,
) -> ApproxValue {
    let bits = ctx.bits;
    let e = consts::e(bits + 32);
    let sum = Real::from_rational(&(&series.partial * prefactor), bits + 32);
    let value = (&sum / &e).with_prec(bits);
    // tail/e < tail/2, plus rounding slop for the two rounded operations
    let tail = Real::from_rational(&(&series.tail * prefactor), bits).mul2exp(-1);
    let slop = if value.is_zero() {
        Real::zero(bits)
    } else {
        value.scaled_eps(bits - 8)
    };
    ApproxValue::new(value, &tail + &slop, true)
}

/// Diagonal families: `B_{r,r}(n) = (1/e) sum_k [(k+r)!/k!]^(n-1) / k!`.
pub fn dobinski_rr(r: u32, n: u64, ctx: &PrecisionContext) -> Result<ApproxValue> {
    dobinski_rr_tol(r, n, ctx, None)
}

fn dobinski_rr_tol(
    r: u32,
    n: u64,
    ctx: &PrecisionContext,
    tol: Option<&BigRational>,
) -> Result<ApproxValue> {
    assert!(r >= 1 && n >= 1);
    let series = sum_factorial_series(
        |k| {
            let mut p = BigInt::one();
            for i in 1..=r as u64 {
                p *= k + i;
            }
            p.pow(n as u32 - 1)
        },
        0,
        ctx,
        tol,
    )?;
    Ok(over_e(series, &BigRational::one(), ctx))
}

/// `s = 1` families, `r >= 2`:
/// `B_{r,1}(n) = (1/e) sum_{k>=1} (r-1)^n Gamma(n + k/(r-1)) / (k! Gamma(k/(r-1)))`.
/// The prefactor turns the gamma ratio into the integer product
/// `prod_{i=0}^{n-1} (k + i(r-1))`, so the sum runs exactly.
pub fn dobinski_r1(r: u32, n: u64, ctx: &PrecisionContext) -> Result<ApproxValue> {
    assert!(r >= 2 && n >= 1);
    let rm1 = (r - 1) as u64;
    let series = sum_factorial_series(
        |k| {
            let mut p = BigInt::one();
            for i in 0..n {
                p *= k + i * rm1;
            }
            p
        },
        1,
        ctx,
        None,
    )?;
    Ok(over_e(series, &BigRational::one(), ctx))
}

/// General `r > s >= 1` series with the corrective `1/k!`:
/// `B_{r,s}(n) = (1/e) sum_k prod_{j=1}^{s} prod_{i=1}^{n-1} (i(r-s)+k+j) / k!`.
/// The prefactor `(r-s)^{s(n-1)}` cancels against the gamma ratios,
/// leaving integer numerators.
pub fn dobinski_rs(params: FamilyParams, n: u64, ctx: &PrecisionContext) -> Result<ApproxValue> {
    dobinski_rs_tol(params, n, ctx, None)
}

fn dobinski_rs_tol(
    params: FamilyParams,
    n: u64,
    ctx: &PrecisionContext,
    tol: Option<&BigRational>,
) -> Result<ApproxValue> {
    assert!(params.r() > params.s() && n >= 1);
    let d = (params.r() - params.s()) as u64;
    let s = params.s() as u64;
    let series = sum_factorial_series(
        |k| {
            let mut p = BigInt::one();
            for j in 1..=s {
                for i in 1..n {
                    p *= i * d + k + j;
                }
            }
            p
        },
        0,
        ctx,
        tol,
    )?;
    Ok(over_e(series, &BigRational::one(), ctx))
}

/// Any-family dispatcher.
pub fn dobinski(params: FamilyParams, n: u64, ctx: &PrecisionContext) -> Result<ApproxValue> {
    if params.is_diagonal() {
        dobinski_rr(params.r(), n, ctx)
    } else {
        dobinski_rs(params, n, ctx)
    }
}

/// Evaluate the Dobinski series and recover the exact integer. The tail
/// tolerance is retargeted to an absolute quarter unit once the value's
/// magnitude is known, and the float precision doubles (up to 4096 bits)
/// if rounding still dominates.
///
/// ```
/// use bellnum::dobinski::dobinski_integer;
/// use bellnum::{FamilyParams, PrecisionContext};
/// let p = FamilyParams::new(2, 2).unwrap();
/// let (value, approx) = dobinski_integer(p, 2, &PrecisionContext::default()).unwrap();
/// assert_eq!(value.to_string(), "7");
/// assert!(approx.rigorous);
/// ```
pub fn dobinski_integer(
    params: FamilyParams,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<(BigInt, ApproxValue)> {
    let mut ctx = *ctx;
    let mut tol: Option<BigRational> = None;
    for _ in 0..8 {
        let v = if params.is_diagonal() {
            dobinski_rr_tol(params.r(), n, &ctx, tol.as_ref())?
        } else {
            dobinski_rs_tol(params, n, &ctx, tol.as_ref())?
        };
        if let Some(int) = v.integer_match() {
            return Ok((int, v));
        }
        // absolute target: tail/partial < 1/(4 (|value| + 1))
        let mag = v.value.abs().round_bigint() + BigInt::one();
        tol = Some(BigRational::new(BigInt::one(), mag.clone() * 4));
        let need_bits = (mag.bits() as u32 + 64).max(ctx.bits);
        if need_bits > ctx.bits {
            ctx.bits = need_bits;
        } else if v
            .error_bound
            .cmp_real(&Real::one(ctx.bits).mul2exp(-1))
            .is_ge()
            && ctx.bits < 4096
        {
            ctx.bits *= 2;
        }
    }
    Err(Error::TailBoundFailure(format!(
        "integer recovery failed for family {params}, n={n}"
    )))
}

/// Parameters of a generalized hypergeometric series `pFq`.
#[derive(Debug, Clone)]
pub struct HypergeometricSpec {
    pub upper: Vec<Real>,
    pub lower: Vec<Real>,
    pub argument: Real,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<Real>, lower: Vec<Real>, argument: Real) -> Result<Self> {
        for b in &lower {
            let is_nonpos_int =
                !b.is_positive() && Real::from_bigint(&b.floor_bigint(), b.prec()) == *b;
            if is_nonpos_int {
                return Err(Error::Divergent(
                    "lower parameter is zero or a negative integer".into(),
                ));
            }
        }
        Ok(HypergeometricSpec {
            upper,
            lower,
            argument,
        })
    }
}

/// Evaluate `pFq(a_1..a_p; b_1..b_q; x) = sum_k prod(a_i)_k / prod(b_j)_k x^k / k!`.
///
/// Convergent for all `x` when `p <= q`, and for `|x| < 1` when
/// `p = q + 1`. The tail majorization is proven (and the result flagged
/// rigorous) when every parameter and the argument are non-negative;
/// otherwise the same bound is used with moduli and flagged heuristic.
pub fn hypergeometric_pfq(
    spec: &HypergeometricSpec,
    ctx: &PrecisionContext,
) -> Result<ApproxValue> {
    let p = spec.upper.len();
    let q = spec.lower.len();
    let wp = ctx.bits + 32;
    let x = spec.argument.with_prec(wp);
    if p > q + 1 {
        if !x.is_zero() {
            return Err(Error::Divergent(format!("{p}F{q} has zero radius")));
        }
    } else if p == q + 1 {
        let one = Real::one(wp);
        if x.abs().cmp_real(&one).is_ge() {
            return Err(Error::Divergent(format!("{p}F{q} needs |x| < 1")));
        }
    }
    let all_positive = spec
        .upper
        .iter()
        .chain(&spec.lower)
        .all(|v| v.is_positive())
        && !x.is_negative();

    let upper: Vec<Real> = spec.upper.iter().map(|v| v.with_prec(wp)).collect();
    let lower: Vec<Real> = spec.lower.iter().map(|v| v.with_prec(wp)).collect();
    let mut term = Real::one(wp);
    let mut sum = Real::one(wp);
    let mut k = 0u64;
    loop {
        if k as usize >= ctx.max_terms {
            return Err(Error::MaxTermsExceeded(ctx.max_terms));
        }
        let kr = Real::from_u64(k, wp);
        let mut factor = &x / &Real::from_u64(k + 1, wp);
        for a in &upper {
            factor = &factor * &(a + &kr);
        }
        for b in &lower {
            factor = &factor / &(b + &kr);
        }
        term = &term * &factor;
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
        k += 1;

        // sup of future ratios: |x|/(k+1) * prod max(1, (a+k)/(b+k))
        // (each factor with a > b decreases in k, each with a <= b stays
        // below 1), so once rho < 1/2 the geometric tail bound holds
        if k >= 2 {
            let mut rho = x.abs() / Real::from_u64(k + 1, wp);
            for (a, b) in upper.iter().zip(lower.iter()) {
                let f = (a + &kr).abs() / (b + &kr).abs();
                if f.cmp_real(&Real::one(wp)).is_gt() {
                    rho = &rho * &f;
                }
            }
            if p > q {
                // unmatched upper parameter
                for a in upper.iter().skip(q) {
                    rho = &rho * &(a + &kr).abs();
                }
            }
            let half = Real::one(wp).mul2exp(-1);
            if rho.cmp_real(&half).is_lt() {
                let rel = (term.abs() / sum.abs()).to_f64();
                if rel < ctx.tail_relative_bound {
                    break;
                }
            }
        }
    }
    let tail = term.abs(); // |t_{K}| bounds the tail up to the factor 1/(1-rho) < 2
    let slop = sum
        .abs()
        .scaled_eps(wp - 24 - (64 - (k + 2).leading_zeros()));
    let err = &tail.mul2exp(1) + &slop;
    Ok(ApproxValue::new(
        sum.with_prec(ctx.bits),
        err.with_prec(ctx.bits),
        all_positive,
    ))
}

/// Which closed hypergeometric shape a family matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperShape {
    /// `(m+1, m)`: prefactor `prod_j (n-1+j)!/j!`, `mFm(n+1..n+m; 2..m+1; 1)`.
    SuccessorPair { m: u32 },
    /// `(2m, m)`: prefactor `(mn)!/m!`, `1F1(mn+1; m+1; 1)`.
    DoublePair { m: u32 },
    /// `(pm+p, pm)` with `p >= 2`, evaluated exactly as printed in its
    /// published form; its prefactor does not reproduce the exact
    /// integers (see the errata ledger), so `agrees` is expected false.
    Composite { p: u32, m: u32 },
}

/// Hypergeometric route to `B_{r,s}(n)` plus the comparison against the
/// exact normal-ordering value.
#[derive(Debug, Clone)]
pub struct BellHyperReport {
    pub shape: HyperShape,
    pub value: ApproxValue,
    pub exact: BigInt,
    pub agrees: bool,
}

pub fn bell_hypergeometric(
    params: FamilyParams,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BellHyperReport> {
    assert!(n >= 1);
    let (r, s) = (params.r(), params.s());
    let wp = ctx.bits + 32;
    let one = Real::one(wp);

    let (shape, prefactor, upper, lower) = if r == s + 1 {
        let m = s;
        let mut pref = BigRational::one();
        for j in 1..=m as u64 {
            pref *= BigRational::new(factorial(n - 1 + j), factorial(j));
        }
        let upper: Vec<Real> = (1..=m as u64).map(|j| Real::from_u64(n + j, wp)).collect();
        let lower: Vec<Real> = (1..=m as u64).map(|j| Real::from_u64(j + 1, wp)).collect();
        (HyperShape::SuccessorPair { m }, pref, upper, lower)
    } else if r == 2 * s {
        let m = s;
        let pref = BigRational::new(factorial(m as u64 * n), factorial(m as u64));
        let upper = vec![Real::from_u64(m as u64 * n + 1, wp)];
        let lower = vec![Real::from_u64(m as u64 + 1, wp)];
        (HyperShape::DoublePair { m }, pref, upper, lower)
    } else if r - s >= 2 && s % (r - s) == 0 {
        let p = r - s;
        let m = s / p;
        let mut pref = BigRational::one();
        for j in 1..=m as u64 {
            pref *= BigRational::new(factorial(p as u64 * (n - 1) + j), factorial(p as u64 * j));
        }
        let upper: Vec<Real> = (0..m as u64)
            .map(|i| Real::from_u64(p as u64 * n + 1 + p as u64 * i, wp))
            .collect();
        let lower: Vec<Real> = (0..m as u64)
            .map(|i| Real::from_u64(1 + p as u64 + p as u64 * i, wp))
            .collect();
        (HyperShape::Composite { p, m }, pref, upper, lower)
    } else {
        return Err(Error::UnsupportedShape { r, s });
    };

    let spec = HypergeometricSpec::new(upper, lower, one.clone())?;
    let f = hypergeometric_pfq(&spec, &PrecisionContext { bits: wp, ..*ctx })?;
    let e = consts::e(wp);
    let pref_real = Real::from_rational(&prefactor, wp);
    let value = (&(&pref_real * &f.value) / &e).with_prec(ctx.bits);
    let err = (&(&pref_real * &f.error_bound) / &e)
        .add(&value.abs().scaled_eps(ctx.bits - 8))
        .with_prec(ctx.bits);
    let approx = ApproxValue::new(value, err, f.rigorous);
    let exact = bell_number(params, n);
    let agrees = approx.agrees_with_integer(&exact);
    Ok(BellHyperReport {
        shape,
        value: approx,
        exact,
        agrees,
    })
}

#[allow(clippy::needless_range_loop)]
#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_order::bell_number;

    fn fp(r: u32, s: u32) -> FamilyParams {
        FamilyParams::new(r, s).unwrap()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn diagonal_series_examples() {
        let v = dobinski_rr(2, 1, &ctx()).unwrap();
        assert_eq!(v.integer_match(), Some(BigInt::one()));
        let v = dobinski_rr(2, 2, &ctx()).unwrap();
        assert_eq!(v.integer_match(), Some(BigInt::from(7)));
        let v = dobinski_rr(1, 3, &ctx()).unwrap();
        assert_eq!(v.integer_match(), Some(BigInt::from(5)));
        assert!(v.rigorous);
    }

    #[test]
    fn r1_series_examples() {
        assert_eq!(
            dobinski_r1(2, 1, &ctx()).unwrap().integer_match(),
            Some(BigInt::one())
        );
        assert_eq!(
            dobinski_r1(2, 3, &ctx()).unwrap().integer_match(),
            Some(BigInt::from(13))
        );
        assert_eq!(
            dobinski_r1(3, 1, &ctx()).unwrap().integer_match(),
            Some(BigInt::one())
        );
    }

    #[test]
    fn general_series_matches_exact_for_nine_six() {
        let p = fp(9, 6);
        for n in 1..=4u64 {
            let (int, v) = dobinski_integer(p, n, &ctx()).unwrap();
            assert_eq!(int, bell_number(p, n), "n={n}");
            assert!(v.error_bound.to_f64() < 0.5);
        }
    }

    #[test]
    fn rs_series_small_examples() {
        assert_eq!(
            dobinski_rs(fp(2, 1), 2, &ctx()).unwrap().integer_match(),
            Some(BigInt::from(3))
        );
        assert_eq!(
            dobinski_rs(fp(9, 6), 1, &ctx()).unwrap().integer_match(),
            Some(BigInt::one())
        );
    }

    #[test]
    fn integer_recovery_grid() {
        for r in 1..=4u32 {
            for s in 1..=r {
                for n in 1..=4u64 {
                    let p = fp(r, s);
                    let (int, v) = dobinski_integer(p, n, &ctx()).unwrap();
                    assert_eq!(int, bell_number(p, n), "family {p}, n={n}");
                    assert!(v.error_bound.to_f64() < 0.5);
                    assert!(v.rigorous);
                }
            }
        }
    }

    #[test]
    fn r1_and_rs_routes_agree() {
        for r in 2..=3u32 {
            for n in 1..=4u64 {
                let a = dobinski_r1(r, n, &ctx()).unwrap();
                let b = dobinski_rs(fp(r, 1), n, &ctx()).unwrap();
                let d = (&a.value - &b.value).abs();
                let budget = &a.error_bound + &b.error_bound;
                assert!(d.cmp_real(&budget).is_le(), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn pfq_examples() {
        let c = ctx();
        let one = Real::one(c.bits);
        // parameters cancel: series is e
        let s = HypergeometricSpec::new(
            vec![Real::from_u64(2, c.bits)],
            vec![Real::from_u64(2, c.bits)],
            one.clone(),
        )
        .unwrap();
        let v = hypergeometric_pfq(&s, &c).unwrap();
        let d = (&v.value - &consts::e(c.bits)).abs();
        assert!(d.cmp_real(&v.error_bound).is_le());
        assert!(v.rigorous);

        // 1F1(3;2;1) = (3/2) e
        let s = HypergeometricSpec::new(
            vec![Real::from_u64(3, c.bits)],
            vec![Real::from_u64(2, c.bits)],
            one.clone(),
        )
        .unwrap();
        let v = hypergeometric_pfq(&s, &c).unwrap();
        let want = consts::e(c.bits).mul_i64(3).mul2exp(-1);
        assert!((&v.value - &want).abs().cmp_real(&v.error_bound).is_le());

        // zero argument
        let s = HypergeometricSpec::new(
            vec![],
            vec![
                Real::from_ratio(&BigInt::from(1), &BigInt::from(2), c.bits),
                Real::from_ratio(&BigInt::from(3), &BigInt::from(2), c.bits),
            ],
            Real::zero(c.bits),
        )
        .unwrap();
        let v = hypergeometric_pfq(&s, &c).unwrap();
        assert_eq!(v.value.to_f64(), 1.0);
    }

    #[test]
    fn pfq_rejects_bad_input() {
        let c = ctx();
        assert!(
            HypergeometricSpec::new(vec![], vec![Real::zero(c.bits)], Real::one(c.bits)).is_err()
        );
        assert!(HypergeometricSpec::new(
            vec![],
            vec![Real::from_i64(-2, c.bits)],
            Real::one(c.bits)
        )
        .is_err());
        // 2F1 at |x| >= 1 diverges
        let s = HypergeometricSpec::new(
            vec![Real::one(c.bits), Real::one(c.bits)],
            vec![Real::from_u64(2, c.bits)],
            Real::one(c.bits),
        )
        .unwrap();
        assert!(matches!(
            hypergeometric_pfq(&s, &c),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn bell_hypergeometric_supported_shapes() {
        let c = ctx();
        for (r, s, n, want) in [
            (2u32, 1u32, 1u64, 1i64),
            (2, 1, 2, 3),
            (3, 2, 2, 13),
            (4, 2, 1, 1),
            (4, 2, 2, 21),
        ] {
            let rep = bell_hypergeometric(fp(r, s), n, &c).unwrap();
            assert_eq!(rep.exact, BigInt::from(want), "exact ({r},{s}) n={n}");
            assert!(rep.agrees, "hypergeometric ({r},{s}) n={n} disagrees");
        }
    }

    #[test]
    fn composite_prefactor_discrepancy_reported() {
        // the printed composite-family prefactor does not reproduce the
        // integers: at (9,6), n=1 it evaluates to 1/2160 instead of 1
        let c = ctx();
        let rep = bell_hypergeometric(fp(9, 6), 1, &c).unwrap();
        assert_eq!(rep.shape, HyperShape::Composite { p: 3, m: 2 });
        assert!(!rep.agrees);
        let scaled = rep.value.value.mul_i64(2160);
        assert!((&scaled - &Real::one(c.bits)).abs().to_f64() < 1e-30);
        assert!(matches!(
            bell_hypergeometric(fp(7, 3), 1, &c),
            Err(Error::UnsupportedShape { .. })
        ));
    }

    #[test]
    fn unverified_bell_42_cross_check() {
        // keep the frozen constant above honest: B_{4,2}(2) from scratch
        assert_eq!(bell_number(fp(4, 2), 2), BigInt::from(21));
    }
}
