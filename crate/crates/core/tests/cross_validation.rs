//! Cross-module checks: every route to a number must agree with the
//! others, including oracles that live only in this test file.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use bellnum::dobinski;
use bellnum::measures::{self, WeightSpec};
use bellnum::normal_order::{self, BellSequence};
use bellnum::real::Real;
use bellnum::verify::{run, Grid};
use bellnum::{FamilyParams, PrecisionContext};

fn fp(r: u32, s: u32) -> FamilyParams {
    FamilyParams::new(r, s).unwrap()
}

#[test]
fn small_verification_grid_is_green() {
    let results = run(Grid::Small, &PrecisionContext::default());
    let failed: Vec<_> = results.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    assert!(failed.is_empty(), "failing checks: {failed:?}");
}

/// Independent moment oracle for the (2,1) weight: integrating the
/// Bessel series term by term gives
/// `int x^n W(x) dx = (1/e) sum_m (n+m)! / (m! (m+1)!)`,
/// summed here in exact rationals.
fn w21_moment_series(n: u64, terms: u64) -> BigRational {
    let mut acc = BigRational::zero();
    let mut m_fact = BigInt::one();
    let mut m1_fact = BigInt::one();
    for m in 0..terms {
        if m > 0 {
            m_fact *= m;
            m1_fact *= m + 1;
        }
        // (n+m)!
        let mut top = BigInt::one();
        for i in 2..=(n + m) {
            top *= i;
        }
        acc += BigRational::new(top, &m_fact * &m1_fact);
    }
    acc
}

#[test]
fn w21_moments_from_series_match_exact_and_quadrature() {
    let ctx = PrecisionContext::default();
    let bits = 256;
    let e = bellnum::real::consts::e(bits);
    let spec = WeightSpec::for_family(fp(2, 1)).unwrap();
    for n in 1..=5u64 {
        let series = Real::from_rational(&w21_moment_series(n, 60), bits) / &e;
        let exact = normal_order::bell_number(fp(2, 1), n);
        let diff = (&series - &Real::from_bigint(&exact, bits)).abs();
        assert!(diff.to_f64() < 1e-40, "series oracle off at n={n}");

        let quad = measures::moment_quadrature(&spec, n, &ctx).unwrap();
        assert!(quad.relative_error.to_f64() < 1e-10, "quadrature off at n={n}");
    }
}

#[test]
fn nine_six_series_reproduces_all_four_golden_values() {
    let ctx = PrecisionContext::default();
    let p = fp(9, 6);
    let want = ["1", "207775", "566828686621", "9011375448568566265"];
    for (i, w) in want.iter().enumerate() {
        let n = i as u64 + 1;
        let (int, v) = dobinski::dobinski_integer(p, n, &ctx).unwrap();
        assert_eq!(&int.to_string(), w);
        assert!(v.rigorous && v.error_bound.to_f64() < 0.5);
    }
}

#[test]
fn weights_nonnegative_on_a_thousand_points() {
    // 10^3 log-spaced samples per continuous kind, x in [1e-3, 1e3]
    let ctx = PrecisionContext::with_bits(128);
    for (r, s) in [(2u32, 1u32), (3, 1), (5, 2), (4, 2), (4, 1)] {
        let spec = WeightSpec::for_family(fp(r, s)).unwrap();
        for i in 0..1000u32 {
            let xf = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
            let w = measures::eval_weight(&spec, &Real::from_f64(xf, ctx.bits), &ctx).unwrap();
            assert!(
                w.value.cmp_real(&w.error_bound.neg()).is_ge(),
                "W_({r},{s})({xf}) = {} below -bound",
                w.value.to_f64()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn series_and_tables_agree_on_random_families(r in 1u32..=4, s_off in 0u32..=3, n in 1u64..=4) {
        let s = r.saturating_sub(s_off).max(1);
        let p = fp(r, s);
        let ctx = PrecisionContext::default();
        let (int, _) = dobinski::dobinski_integer(p, n, &ctx).unwrap();
        prop_assert_eq!(int, normal_order::bell_number(p, n));
    }

    #[test]
    fn hankel_determinants_positive_on_random_families(r in 1u32..=4, s_off in 0u32..=3, order in 1u64..=5) {
        let s = r.saturating_sub(s_off).max(1);
        let seq = BellSequence::new(fp(r, s), 2 * order);
        let rep = bellnum::moment_analysis::hankel_determinants(&seq, order).unwrap();
        prop_assert!(num_traits::Signed::is_positive(&rep.det0));
        prop_assert!(num_traits::Signed::is_positive(&rep.det1));
    }

    #[test]
    fn bell_sequences_increase(r in 1u32..=5, s_off in 0u32..=4, max_n in 2u64..=5) {
        let s = r.saturating_sub(s_off).max(1);
        let seq = BellSequence::new(fp(r, s), max_n);
        for w in seq.values().windows(2).skip(1) {
            prop_assert!(w[1] > w[0]);
        }
    }
}
