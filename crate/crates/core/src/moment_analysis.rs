//! Hankel-Hadamard positivity and saddle-point asymptotics.
//!
//! The two Hankel determinant families `det[B(i+j-2)]` and
//! `det[B(i+j-1)]` must be strictly positive for a Stieltjes moment
//! sequence; entries grow super-factorially, so determinants are
//! computed by fraction-free Bareiss elimination in exact integers.
//!
//! For the `(2,1)` and `(3,1)` families the saddle-point expansions are
//! evaluated in the log domain and compared against exact values; the
//! `2^(-3/7)` subleading coefficient of the `(3,1)` expansion is kept
//! exactly as printed in its published form (it looks typographically
//! suspect) and its empirical fit quality is what the reports record.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::normal_order::{BellSequence, FamilyParams};
use crate::precision::PrecisionContext;
use crate::real::{consts, Real};
use crate::util::{binomial, factorial};
use crate::Result;

/// Exact Hankel determinants of a Bell sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelReport {
    pub params: FamilyParams,
    pub order: u64,
    /// `det [B(i+j-2)]`, indices `1..=order`.
    pub det0: BigInt,
    /// `det [B(i+j-1)]`, indices `1..=order`.
    pub det1: BigInt,
}

/// Fraction-free Bareiss determinant with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, rem) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

/// Both Hankel determinants of order `n` from exact Bell values.
pub fn hankel_determinants(seq: &BellSequence, order: u64) -> Result<HankelReport> {
    let needed = 2 * order as usize;
    if seq.len() < needed {
        return Err(Error::InsufficientSequence {
            needed,
            have: seq.len(),
        });
    }
    let n = order as usize;
    let build = |offset: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| seq.get(i + j + offset).unwrap().clone())
                    .collect()
            })
            .collect()
    };
    Ok(HankelReport {
        params: seq.params,
        order,
        det0: bareiss_determinant(build(0)),
        det1: bareiss_determinant(build(1)),
    })
}

/// `B_{2,1}(n)` directly as the Lah row sum: `sum_k n!/k! C(n-1, k-1)`.
pub fn exact_b21(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let n_fact = factorial(n);
    (1..=n)
        .map(|k| &n_fact / factorial(k) * binomial(n - 1, k - 1))
        .sum()
}

/// `B_{3,1}(n)` from the EGF `exp[(1-2t)^(-1/2) - 1]` by the integer
/// convolution recurrence
/// `B(n+1) = sum_k (k+1) g_{k+1} ff(n,k) B(n-k)`, `g_k = C(2k,k)/2^k`.
pub fn exact_b31_sequence(max_n: u64) -> Vec<BigInt> {
    let n = max_n as usize;
    // (k+1) g_{k+1} 2^{k+1} = (k+1) C(2k+2, k+1), all integers
    let g_scaled: Vec<BigInt> = (0..n as u64)
        .map(|k| binomial(2 * k + 2, k + 1) * (k + 1))
        .collect();
    let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
    b.push(BigInt::one());
    for m in 0..n as u64 {
        // B(m+1) = [sum_k g_scaled[k] ff(m,k) B(m-k) 2^(m-k)] / 2^(m+1)
        let mut acc = BigInt::zero();
        let mut ff_run = BigInt::one();
        for k in 0..=m {
            if ff_run.is_zero() {
                break;
            }
            let t = &g_scaled[k as usize] * &ff_run * &b[(m - k) as usize];
            acc += t << (m - k);
            ff_run *= m - k;
        }
        let shifted = &acc >> (m + 1);
        assert!(
            (&shifted << (m + 1)) == acc,
            "B_31 recurrence must stay integral"
        );
        b.push(shifted);
    }
    b
}

/// Exact value versus the printed two-term saddle-point expansion.
#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub n: u64,
    pub exact: BigInt,
    pub asymptotic: Real,
    /// `exact / asymptotic`.
    pub ratio: Real,
}

fn report(n: u64, exact: BigInt, ln_asym: Real, bits: u32) -> AsymptoticReport {
    let wp = ln_asym.prec();
    let ln_exact = Real::from_bigint(&exact, wp).ln();
    let ratio = (&ln_exact - &ln_asym).exp().with_prec(bits);
    AsymptoticReport {
        n,
        exact,
        asymptotic: ln_asym.exp().with_prec(bits),
        ratio,
    }
}

/// `B_{2,1}(n) ~ (1/sqrt(2e)) (n^(-1/4) + n^(-3/4)/12) n^n exp(-n + 2 sqrt(n))`.
pub fn asymptotic_b21(n: u64, ctx: &PrecisionContext) -> AsymptoticReport {
    assert!(n >= 1);
    let wp = ctx.bits + 64;
    let nr = Real::from_u64(n, wp);
    let ln_n = nr.ln();
    let quarter = Real::one(wp).mul2exp(-2);
    let bracket = {
        let a = (&quarter.neg() * &ln_n).exp();
        let b = (&quarter.mul_i64(3).neg() * &ln_n).exp().div_u64(12);
        &a + &b
    };
    // -(1/2) ln 2 - 1/2 + ln(bracket) + n ln n - n + 2 sqrt(n)
    let ln_asym = &(&(&(&(&consts::ln2(wp).mul2exp(-1).neg() - &Real::one(wp).mul2exp(-1))
        + &bracket.ln())
        + &(&nr * &ln_n))
        - &nr)
        + &nr.sqrt().mul2exp(1);
    report(n, exact_b21(n), ln_asym, ctx.bits)
}

/// `B_{3,1}(n) ~ (2^(1/6)/(sqrt(3) e)) (n^(-1/3) + 2^(-3/7) n^(-2/3))
///  (2n)^n exp(-n + (3/2)(2n)^(1/3))`, coefficients as printed.
pub fn asymptotic_b31(n: u64, ctx: &PrecisionContext) -> AsymptoticReport {
    let exact = exact_b31_sequence(n).pop().expect("nonempty");
    asymptotic_b31_with_exact(n, exact, ctx)
}

/// Same as [`asymptotic_b31`] with the exact value supplied by the
/// caller (useful when a whole sequence is already available).
pub fn asymptotic_b31_with_exact(
    n: u64,
    exact: BigInt,
    ctx: &PrecisionContext,
) -> AsymptoticReport {
    assert!(n >= 1);
    let wp = ctx.bits + 64;
    let nr = Real::from_u64(n, wp);
    let ln_n = nr.ln();
    let ln2 = consts::ln2(wp);
    let third = Real::from_ratio(&BigInt::from(1), &BigInt::from(3), wp);
    let bracket = {
        let a = (&third.neg() * &ln_n).exp();
        // 2^(-3/7), exactly as printed
        let c = (&ln2 * &Real::from_ratio(&BigInt::from(-3), &BigInt::from(7), wp)).exp();
        let b = &c * &(&third.mul_i64(-2) * &ln_n).exp();
        &a + &b
    };
    let two_n = nr.mul2exp(1);
    // (1/6) ln 2 - (1/2) ln 3 - 1 + ln(bracket) + n ln(2n) - n + (3/2)(2n)^(1/3)
    let ln_asym = &(&(&(&(&(&ln2.div_u64(6) - &Real::from_u64(3, wp).ln().mul2exp(-1))
        - &Real::one(wp))
        + &bracket.ln())
        + &(&nr * &two_n.ln()))
        - &nr)
        + &two_n.nth_root(3).mul_i64(3).mul2exp(-1);
    report(n, exact, ln_asym, ctx.bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_order::bell_number;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn fp(r: u32, s: u32) -> FamilyParams {
        FamilyParams::new(r, s).unwrap()
    }

    #[test]
    fn hankel_small_examples() {
        let seq = BellSequence::new(fp(1, 1), 4);
        let rep = hankel_determinants(&seq, 2).unwrap();
        // det [[1,1],[1,2]] and det [[1,2],[2,5]]
        assert_eq!(rep.det0, BigInt::one());
        assert_eq!(rep.det1, BigInt::one());

        let seq = BellSequence::new(fp(2, 1), 4);
        let rep = hankel_determinants(&seq, 2).unwrap();
        assert_eq!(rep.det0, BigInt::from(2));

        let rep1 = hankel_determinants(&seq, 1).unwrap();
        assert_eq!(rep1.det0, BigInt::one());
        assert_eq!(rep1.det1, BigInt::one());

        assert!(matches!(
            hankel_determinants(&seq, 3),
            Err(Error::InsufficientSequence { .. })
        ));
    }

    #[test]
    fn hankel_positivity_grid() {
        for r in 1..=4u32 {
            for s in 1..=r {
                let seq = BellSequence::new(fp(r, s), 16);
                for order in 1..=8u64 {
                    let rep = hankel_determinants(&seq, order).unwrap();
                    assert!(rep.det0.is_positive(), "det0 ({r},{s}) order {order}");
                    assert!(rep.det1.is_positive(), "det1 ({r},{s}) order {order}");
                }
            }
        }
    }

    #[test]
    fn exact_b21_matches_tables() {
        for n in 0..=8u64 {
            assert_eq!(exact_b21(n), bell_number(fp(2, 1), n), "n={n}");
        }
    }

    #[test]
    fn exact_b31_matches_tables() {
        let seq = exact_b31_sequence(8);
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(v, &bell_number(fp(3, 1), n as u64), "n={n}");
        }
    }

    #[test]
    fn b21_ratio_at_n_one_matches_direct_evaluation() {
        // exact B = 1; the expansion evaluates to
        // (1/sqrt(2e)) (1 + 1/12) e, so the ratio is its reciprocal
        let ctx = PrecisionContext::with_bits(128);
        let rep = asymptotic_b21(1, &ctx);
        let wp = 160;
        let direct = &(&Real::from_u64(13, wp).div_u64(12) * &consts::e(wp))
            / &(consts::e(wp).mul2exp(1)).sqrt();
        // direct = (13/12) e / sqrt(2e); compare ratio * direct == 1
        let check = &rep.ratio.with_prec(wp) * &direct;
        assert!(
            (&check - &Real::one(wp)).abs().to_f64() < 1e-25,
            "ratio={} direct={}",
            rep.ratio.to_f64(),
            direct.to_f64()
        );
        // and the documented sanity number ~ 1/1.263
        assert!((rep.ratio.to_f64() - 1.0 / 1.26299).abs() < 1e-3);
    }

    #[test]
    fn b21_asymptotic_quality() {
        let ctx = PrecisionContext::default();
        let mut last = f64::INFINITY;
        for n in [50u64, 100, 200, 400] {
            let rep = asymptotic_b21(n, &ctx);
            let dev = (rep.ratio.to_f64() - 1.0).abs();
            if n == 100 {
                assert!(dev < 0.02, "B21 deviation {dev} at n=100");
            }
            assert!(dev < last, "B21 deviation not improving at n={n}");
            last = dev;
        }
    }

    #[test]
    fn b31_subleading_as_printed() {
        // the 2^(-3/7) subleading coefficient is kept as printed; the
        // two-term fit then overshoots (~0.15 relative at n=100, improving
        // monotonically), while the leading term alone is ~0.012 off
        let ctx = PrecisionContext::default();
        let seq = exact_b31_sequence(400);
        let mut last = f64::INFINITY;
        for n in [50u64, 100, 200, 400] {
            let rep = asymptotic_b31_with_exact(n, seq[n as usize].clone(), &ctx);
            let dev = (rep.ratio.to_f64() - 1.0).abs();
            assert!(rep.ratio.is_positive());
            if n == 100 {
                assert!(
                    (0.10..0.20).contains(&dev),
                    "as-printed B31 deviation {dev} at n=100"
                );
            }
            assert!(dev < last, "B31 deviation not improving at n={n}");
            last = dev;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bareiss_matches_cofactor_expansion(
            dim in 1usize..=4,
            entries in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let m: Vec<Vec<BigInt>> = (0..dim)
                .map(|i| (0..dim).map(|j| BigInt::from(entries[i * 4 + j])).collect())
                .collect();
            fn cofactor(m: &[Vec<BigInt>]) -> BigInt {
                let n = m.len();
                if n == 1 {
                    return m[0][0].clone();
                }
                let mut acc = BigInt::zero();
                for j in 0..n {
                    let minor: Vec<Vec<BigInt>> = (1..n)
                        .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                        .collect();
                    let term = &m[0][j] * cofactor(&minor);
                    if j % 2 == 0 { acc += term } else { acc -= term }
                }
                acc
            }
            prop_assert_eq!(bareiss_determinant(m.clone()), cofactor(&m));
        }
    }
}
