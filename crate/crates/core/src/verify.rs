//! The cross-validation suite behind `verify all`.
//!
//! Every quantity the crate computes is checked against at least one
//! independent route. The `Small` grid keeps each check to a fraction
//! of a second; `Full` widens families, orders and tolerances to the
//! levels the acceptance tests use.

use num_traits::Signed;

use crate::coherent_states::{self, CoherentFamily};
use crate::dobinski;
use crate::generating_functions as egf;
use crate::measures::{self, WeightSpec};
use crate::moment_analysis as hankel;
use crate::normal_order::{self, BellSequence, FamilyParams};
use crate::precision::PrecisionContext;
use crate::real::{Complex, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Small,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(
    out: &mut Vec<CheckResult>,
    name: &'static str,
    run: impl FnOnce() -> std::result::Result<String, String>,
) {
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run));
    let (passed, detail) = match result {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        }
    };
    out.push(CheckResult {
        name,
        passed,
        detail,
    });
}

fn fp(r: u32, s: u32) -> FamilyParams {
    FamilyParams::new(r, s).unwrap()
}

/// Run the whole suite; returns one result per check in a fixed order.
pub fn run(grid: Grid, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let full = grid == Grid::Full;
    let mut out = Vec::new();

    check(&mut out, "stirling-vs-fock", || {
        let n_max = if full { 4 } else { 3 };
        let mut cases = 0;
        for r in 1..=3u32 {
            for s in 1..=r {
                for n in 1..=n_max {
                    let p = fp(r, s);
                    let t = normal_order::stirling_table(p, n).map_err(|e| e.to_string())?;
                    let dim = n as usize * ((r + s) as usize);
                    let o = normal_order::fock_oracle(p, n, dim).map_err(|e| e.to_string())?;
                    if t != o {
                        return Err(format!("family {p}, n={n}: table != fock"));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} rows agree"))
    });

    check(&mut out, "closed-forms", || {
        let (n_rr, n_lah) = if full { (6, 12) } else { (4, 8) };
        for r in 1..=3u32 {
            for n in 1..=n_rr {
                let t = normal_order::stirling_table(fp(r, r), n).map_err(|e| e.to_string())?;
                for k in (r as u64)..=(r as u64 * n) {
                    let c = normal_order::stirling_rr_closed(r, n, k).map_err(|e| e.to_string())?;
                    if Some(&c) != t.entry(k) {
                        return Err(format!("S_({r},{r})({n},{k}) closed form mismatch"));
                    }
                }
            }
        }
        for n in 1..=n_lah {
            let t = normal_order::stirling_table(fp(2, 1), n).map_err(|e| e.to_string())?;
            for k in 1..=n {
                if Some(&normal_order::lah_number(n, k).map_err(|e| e.to_string())?) != t.entry(k) {
                    return Err(format!("Lah({n},{k}) mismatch"));
                }
            }
        }
        Ok("diagonal and Lah closed forms match tables".into())
    });

    check(&mut out, "classical-partitions", || {
        let n_max = if full { 10 } else { 8 };
        for n in 1..=n_max {
            if normal_order::bell_number(fp(1, 1), n as u64)
                != normal_order::classical_bell_by_partitions(n)
            {
                return Err(format!("classical Bell mismatch at n={n}"));
            }
        }
        Ok(format!("partition counts match up to n={n_max}"))
    });

    check(&mut out, "dobinski-integer-grid", || {
        let (r_max, n_max) = if full { (4, 6) } else { (3, 4) };
        for r in 1..=r_max {
            for s in 1..=r {
                for n in 1..=n_max {
                    let p = fp(r, s);
                    let (int, v) =
                        dobinski::dobinski_integer(p, n, ctx).map_err(|e| e.to_string())?;
                    let want = normal_order::bell_number(p, n);
                    if int != want || v.error_bound.to_f64() >= 0.5 {
                        return Err(format!("family {p}, n={n}: series != exact"));
                    }
                }
            }
        }
        Ok("series round to the exact integers".into())
    });

    check(&mut out, "dobinski-route-consistency", || {
        let n_max = if full { 4 } else { 3 };
        for r in 2..=3u32 {
            for n in 1..=n_max {
                let a = dobinski::dobinski_r1(r, n, ctx).map_err(|e| e.to_string())?;
                let b = dobinski::dobinski_rs(fp(r, 1), n, ctx).map_err(|e| e.to_string())?;
                let d = (&a.value - &b.value).abs();
                if d.cmp_real(&(&a.error_bound + &b.error_bound)).is_gt() {
                    return Err(format!("(r,1) routes disagree at r={r}, n={n}"));
                }
            }
        }
        Ok("gamma-ratio and general series agree".into())
    });

    check(&mut out, "hypergeometric-shapes", || {
        let shapes: &[(u32, u32, u64)] = if full {
            &[(2, 1, 3), (3, 2, 3), (4, 2, 3), (6, 3, 2)]
        } else {
            &[(2, 1, 2), (3, 2, 2), (4, 2, 2)]
        };
        for &(r, s, n_max) in shapes {
            for n in 1..=n_max {
                let rep =
                    dobinski::bell_hypergeometric(fp(r, s), n, ctx).map_err(|e| e.to_string())?;
                if !rep.agrees {
                    return Err(format!("hypergeometric ({r},{s}) n={n} disagrees"));
                }
            }
        }
        // the composite family must report its printed-prefactor discrepancy
        let rep = dobinski::bell_hypergeometric(fp(9, 6), 1, ctx).map_err(|e| e.to_string())?;
        if rep.agrees {
            return Err("expected composite-prefactor discrepancy at (9,6)".into());
        }
        Ok("covered shapes agree; composite discrepancy reported".into())
    });

    check(&mut out, "golden-nine-six", || {
        let p = fp(9, 6);
        let want: [&str; 4] = ["1", "207775", "566828686621", "9011375448568566265"];
        let n_max = if full { 4 } else { 2 };
        for n in 1..=n_max {
            let exact = normal_order::bell_number(p, n as u64);
            if exact.to_string() != want[n - 1] {
                return Err(format!("exact path wrong at n={n}"));
            }
            let (int, _) =
                dobinski::dobinski_integer(p, n as u64, ctx).map_err(|e| e.to_string())?;
            if int != exact {
                return Err(format!("series path wrong at n={n}"));
            }
        }
        Ok(format!("both routes reproduce the first {n_max} values"))
    });

    check(&mut out, "egf-identity", || {
        let n_max = if full { 15 } else { 10 };
        for r in [2u32, 3] {
            let s = egf::egf_coefficients(r, n_max);
            for n in 0..=n_max {
                let got = egf::egf_integer_coefficient(&s, n).map_err(|e| e.to_string())?;
                if got != normal_order::bell_number(fp(r, 1), n as u64) {
                    return Err(format!("EGF coefficient r={r}, n={n}"));
                }
            }
        }
        let c = egf::classical_egf_check(if full { 12 } else { 8 });
        for n in 0..=(if full { 12 } else { 8 }) {
            if egf::egf_integer_coefficient(&c, n).map_err(|e| e.to_string())?
                != normal_order::classical_bell_by_partitions(n)
            {
                return Err(format!("classical EGF coefficient n={n}"));
            }
        }
        Ok("EGF coefficients times n! equal the exact integers".into())
    });

    check(&mut out, "comb-moments", || {
        let (r_max, n_max) = if full { (3, 6) } else { (2, 4) };
        for r in 1..=r_max {
            for n in 1..=n_max {
                let v = measures::comb_moment(r, n, ctx).map_err(|e| e.to_string())?;
                if !v.agrees_with_integer(&normal_order::bell_number(fp(r, r), n)) {
                    return Err(format!("comb moment ({r},{r}) n={n}"));
                }
                if v.error_bound.to_f64() >= 1e-25 {
                    return Err(format!("comb bound too loose at ({r},{r}) n={n}"));
                }
            }
        }
        Ok("comb moments match the diagonal Bell numbers".into())
    });

    check(&mut out, "continuous-moments", || {
        let cases: &[(u32, u32, u64)] = if full {
            &[(2, 1, 6), (3, 1, 4), (4, 2, 4), (5, 2, 3)]
        } else {
            &[(2, 1, 2), (4, 2, 1)]
        };
        for &(r, s, n_max) in cases {
            let spec = WeightSpec::for_family(fp(r, s)).map_err(|e| e.to_string())?;
            for n in 1..=n_max {
                let rep = measures::moment_quadrature(&spec, n, ctx).map_err(|e| e.to_string())?;
                if rep.relative_error.to_f64() > 1e-8 {
                    return Err(format!(
                        "moment ({r},{s}) n={n}: rel {}",
                        rep.relative_error.to_f64()
                    ));
                }
            }
        }
        Ok("quadrature reproduces the exact moments at 1e-8".into())
    });

    check(&mut out, "weight-positivity", || {
        let points = if full { 200 } else { 40 };
        let sample_ctx = PrecisionContext::with_bits(128);
        for (r, s) in [(2u32, 1u32), (3, 1), (5, 2), (4, 2)] {
            let spec = WeightSpec::for_family(fp(r, s)).map_err(|e| e.to_string())?;
            for i in 0..points {
                let xf = 10f64.powf(-3.0 + 6.0 * i as f64 / (points - 1) as f64);
                let w =
                    measures::eval_weight(&spec, &Real::from_f64(xf, sample_ctx.bits), &sample_ctx)
                        .map_err(|e| e.to_string())?;
                if w.value.cmp_real(&w.error_bound.neg()).is_lt() {
                    return Err(format!("W_({r},{s})({xf}) below -bound"));
                }
            }
        }
        Ok(format!("{points} log-spaced samples per kind non-negative"))
    });

    check(&mut out, "hankel-positivity", || {
        let (r_max, o_max) = if full { (4, 8) } else { (3, 6) };
        for r in 1..=r_max {
            for s in 1..=r {
                let seq = BellSequence::new(fp(r, s), 2 * o_max);
                for order in 1..=o_max {
                    let rep =
                        hankel::hankel_determinants(&seq, order).map_err(|e| e.to_string())?;
                    if !rep.det0.is_positive() || !rep.det1.is_positive() {
                        return Err(format!(
                            "Hankel determinant not positive: ({r},{s}) order {order}"
                        ));
                    }
                }
            }
        }
        Ok("both determinant families strictly positive".into())
    });

    check(&mut out, "matrix-element", || {
        let lambdas: &[f64] = if full { &[0.01, 0.05, 0.1] } else { &[0.05] };
        let zs: &[(f64, f64)] = if full {
            &[(0.5, 0.0), (1.0, 0.0), (1.0, 0.5)]
        } else {
            &[(1.0, 0.5)]
        };
        for r in [2u32, 3] {
            for &lf in lambdas {
                for &(zr, zi) in zs {
                    let lambda = Real::from_f64(lf, ctx.bits);
                    let z =
                        Complex::new(Real::from_f64(zr, ctx.bits), Real::from_f64(zi, ctx.bits));
                    let rep = egf::matrix_element_exp(r, &lambda, &z, 64, ctx)
                        .map_err(|e| e.to_string())?;
                    let rel = (&rep.difference / &rep.closed_form.value.abs()).to_f64();
                    if rel > 1e-10 {
                        return Err(format!("r={r} lambda={lf} z=({zr},{zi}): rel {rel:e}"));
                    }
                }
            }
        }
        Ok("closed form and Fock brute force agree at 1e-10".into())
    });

    check(&mut out, "asymptotics-trend", || {
        let ns: &[u64] = if full {
            &[50, 100, 200, 400]
        } else {
            &[50, 100]
        };
        let mut last21 = f64::INFINITY;
        for &n in ns {
            let dev = (hankel::asymptotic_b21(n, ctx).ratio.to_f64() - 1.0).abs();
            if dev >= last21 {
                return Err(format!("B21 deviation not improving at n={n}"));
            }
            if n == 100 && dev >= 0.02 {
                return Err(format!("B21 deviation {dev} at n=100"));
            }
            last21 = dev;
        }
        let seq = hankel::exact_b31_sequence(*ns.last().unwrap());
        let mut last31 = f64::INFINITY;
        for &n in ns {
            let rep = hankel::asymptotic_b31_with_exact(n, seq[n as usize].clone(), ctx);
            let dev = (rep.ratio.to_f64() - 1.0).abs();
            if dev >= last31 {
                return Err(format!("B31 deviation not improving at n={n}"));
            }
            last31 = dev;
        }
        Ok(format!(
            "deviations shrink monotonically; B31 as-printed ends at {last31:.3}"
        ))
    });

    check(&mut out, "coherent-states", || {
        let families: &[(u32, u32)] = if full {
            &[(2, 1), (3, 1), (4, 2)]
        } else {
            &[(2, 1)]
        };
        for &(r, s) in families {
            let mut fam = CoherentFamily::new(fp(r, s), 12);
            let z = Complex::one(ctx.bits);
            let st = coherent_states::state_coefficients(&mut fam, &z, 48, ctx)
                .map_err(|e| e.to_string())?;
            let norm = st.norm_sqr();
            if (norm.to_f64() - 1.0).abs() > 1e-12 {
                return Err(format!("({r},{s}) state norm {}", norm.to_f64()));
            }
            let n_max = if full { 3 } else { 1 };
            for n in 1..=n_max {
                let rep = coherent_states::resolution_check(&mut fam, n, ctx)
                    .map_err(|e| e.to_string())?;
                if rep.relative_error.to_f64() > 1e-8 {
                    return Err(format!("resolution ({r},{s}) n={n}"));
                }
            }
        }
        Ok("unit norms and resolution moments verified".into())
    });

    check(&mut out, "growth-orders", || {
        for (r, s, want) in [(1u32, 1u32, 0u32), (2, 1, 0), (2, 2, 1)] {
            let g = egf::growth_order(fp(r, s), 14);
            if g.t != want {
                return Err(format!(
                    "growth order ({r},{s}) = {} (expected {want})",
                    g.t
                ));
            }
        }
        Ok("growth orders match the documented values".into())
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_all_pass() {
        let ctx = PrecisionContext::default();
        let results = run(Grid::Small, &ctx);
        let failures: Vec<_> = results.iter().filter(|c| !c.passed).collect();
        assert!(failures.is_empty(), "failing checks: {failures:?}");
        assert!(results.len() >= 14);
    }
}
