//! Command-line front end for the `bellnum` library.
//!
//! Every subcommand emits versioned [`record::OutputRecord`]s, one JSON
//! object per line by default (`--format csv` for flat tables). Exact
//! integers are decimal strings; approximate values carry their error
//! bound and rigor flag. Output is byte-for-byte deterministic for
//! fixed inputs unless `--timing` is given.
//!
//! Exit codes: 0 success, 1 verification failure (with the failure list
//! in the emitted record), 2 usage errors.

pub mod record;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use bellnum::coherent_states::{self, CoherentFamily};
use bellnum::dobinski;
use bellnum::errata;
use bellnum::generating_functions as egf;
use bellnum::measures::{self, WeightSpec};
use bellnum::moment_analysis;
use bellnum::normal_order;
use bellnum::real::{Complex, Real};
use bellnum::verify;
use bellnum::{Error, FamilyParams, PrecisionContext};

use record::{OutputRecord, ResultItem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "bellnum",
    version,
    about = "Generalized Stirling and Bell numbers: exact tables, Dobinski-type series, moment measures, Hankel positivity, EGFs and coherent states",
    disable_help_subcommand = true
)]
struct Cli {
    /// Working precision in mantissa bits (>= 64).
    #[arg(long, global = true, default_value_t = 256)]
    bits: u32,
    /// Relative truncation target for series tails.
    #[arg(long, global = true, default_value_t = 1e-30)]
    tail_bound: f64,
    /// Safety cap on series terms.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the records (breaks determinism).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact generalized Stirling row S_{r,s}(n, k) for k = s..n*s.
    Stirling {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u64,
    },
    /// Exact Bell numbers B_{r,s}(0..max_n).
    Bell {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        max_n: u64,
    },
    /// Dobinski-type series value with error bound and integer-match flag.
    Dobinski {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u64,
    },
    /// Moment verification: comb moments on the diagonal, quadrature
    /// reports for continuous weights; optional weight sample table.
    Moments {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        max_n: u64,
        /// Also emit this many log-spaced (x, W(x)) samples.
        #[arg(long, default_value_t = 0)]
        samples: u32,
    },
    /// Exact Hankel determinants det[B(i+j-2)] and det[B(i+j-1)].
    Hankel {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        max_order: u64,
    },
    /// EGF coefficients of the (r,1) family; c_n * n! are exact integers.
    Egf {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_n: u64,
    },
    /// Saddle-point asymptotics versus exact values for the 21/31 families.
    Asympt {
        /// Family: 21 or 31.
        #[arg(long)]
        family: String,
        /// Orders to evaluate (repeatable).
        #[arg(long, required = true, num_args = 1..)]
        n: Vec<u64>,
    },
    /// Coherent-state data: normalization, amplitudes, norm check.
    Coherent {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// State label as RE,IM (or just RE).
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 48)]
        cutoff: usize,
        /// Also emit the overlap with another state RE,IM (repeatable).
        #[arg(long)]
        overlap_with: Vec<String>,
    },
    /// Cross-validation suites; exit 0 iff everything passes.
    Verify {
        /// What to verify (only `all` is defined).
        target: String,
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
    },
    /// Print the formula-erratum ledger.
    Errata,
}

/// Parse a complex literal `RE,IM` (or bare `RE`).
pub fn parse_complex_literal(s: &str, bits: u32) -> Result<Complex, Error> {
    let mut parts = s.splitn(2, ',');
    let re = Real::parse_decimal(parts.next().unwrap_or(""), bits)?;
    let im = match parts.next() {
        Some(p) => Real::parse_decimal(p, bits)?,
        None => Real::zero(bits),
    };
    Ok(Complex::new(re, im))
}

fn fmt_real(v: &Real) -> String {
    v.to_decimal(v.roundtrip_digits())
}

fn approx_item(label: impl ToString, v: &bellnum::ApproxValue) -> ResultItem {
    ResultItem::Approx {
        label: label.to_string(),
        value: fmt_real(&v.value),
        error_bound: fmt_real(&v.error_bound),
        rigorous: v.rigorous,
    }
}

fn int_item(label: impl ToString, v: &BigInt) -> ResultItem {
    ResultItem::Integer {
        label: label.to_string(),
        value: v.to_string(),
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn family(r: u32, s: u32) -> Result<FamilyParams, Failure> {
    FamilyParams::new(r, s).map_err(|e| usage(e.to_string()))
}

/// Run the CLI; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/version output with code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if cli.bits < 64 {
        eprintln!("error: --bits must be at least 64");
        return 2;
    }
    if !(cli.tail_bound > 0.0 && cli.tail_bound < 1.0) {
        eprintln!("error: --tail-bound must lie in (0, 1)");
        return 2;
    }
    if cli.max_terms == 0 {
        eprintln!("error: --max-terms must be positive");
        return 2;
    }
    let ctx = PrecisionContext::new(cli.bits, cli.tail_bound, cli.max_terms);

    let started = Instant::now();
    let outcome = execute(&cli, &ctx);
    match outcome {
        Ok((mut records, code)) => {
            if cli.timing {
                let ms = started.elapsed().as_millis() as u64;
                for r in &mut records {
                    r.timing_ms = Some(ms);
                }
            }
            let rendered: String = match cli.format {
                Format::Json => records.iter().map(|r| r.to_json() + "\n").collect(),
                Format::Csv => records.iter().map(|r| r.to_csv()).collect(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            } else {
                print!("{rendered}");
                let _ = std::io::stdout().flush();
            }
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

type Records = (Vec<OutputRecord>, i32);

fn execute(cli: &Cli, ctx: &PrecisionContext) -> Result<Records, Failure> {
    match &cli.command {
        Command::Stirling { r, s, n } => {
            let p = family(*r, *s)?;
            let t = normal_order::stirling_table(p, *n)?;
            let mut rec = OutputRecord::new("stirling");
            rec.param("r", r).param("s", s).param("n", n);
            for (k, v) in t.entries() {
                rec.push(int_item(format!("k={k}"), v));
            }
            Ok((vec![rec], 0))
        }
        Command::Bell { r, s, max_n } => {
            let p = family(*r, *s)?;
            let mut rec = OutputRecord::new("bell");
            rec.param("r", r).param("s", s).param("max_n", max_n);
            for n in 0..=*max_n {
                rec.push(int_item(format!("n={n}"), &normal_order::bell_number(p, n)));
            }
            Ok((vec![rec], 0))
        }
        Command::Dobinski { r, s, n } => {
            let p = family(*r, *s)?;
            if *n == 0 {
                return Err(usage("the series starts at n = 1 (B(0) = 1 by convention)"));
            }
            let v = dobinski::dobinski(p, *n, ctx)?;
            let exact = normal_order::bell_number(p, *n);
            let matched = v.integer_match().map(|m| m == exact).unwrap_or(false);
            let mut rec = OutputRecord::new("dobinski");
            rec.param("r", r)
                .param("s", s)
                .param("n", n)
                .param("bits", ctx.bits);
            rec.push(approx_item("series", &v));
            rec.push(int_item("exact", &exact));
            rec.push(ResultItem::Flag {
                label: "integer_match".into(),
                value: matched,
            });
            Ok((vec![rec], 0))
        }
        Command::Moments {
            r,
            s,
            max_n,
            samples,
        } => {
            let p = family(*r, *s)?;
            let mut rec = OutputRecord::new("moments");
            rec.param("r", r).param("s", s).param("max_n", max_n);
            if p.is_diagonal() {
                for n in 0..=*max_n {
                    let v = measures::comb_moment(*r, n, ctx)?;
                    let exact = normal_order::bell_number(p, n);
                    rec.push(int_item(format!("exact[n={n}]"), &exact));
                    rec.push(approx_item(format!("comb[n={n}]"), &v));
                    let agrees = if n == 0 {
                        // the comb's zeroth moment is the total mass, which is
                        // below 1 for r >= 2; reported informationally
                        v.integer_match() == Some(exact)
                    } else {
                        v.agrees_with_integer(&exact)
                    };
                    rec.push(ResultItem::Flag {
                        label: format!("match[n={n}]"),
                        value: agrees,
                    });
                }
            } else {
                let spec = WeightSpec::for_family(p)?;
                for n in 1..=*max_n {
                    let rep = measures::moment_quadrature(&spec, n, ctx)?;
                    rec.push(int_item(format!("exact[n={n}]"), &rep.exact));
                    rec.push(approx_item(format!("quadrature[n={n}]"), &rep.quadrature));
                    rec.push(ResultItem::Value {
                        label: format!("relative_error[n={n}]"),
                        value: fmt_real(&rep.relative_error),
                    });
                }
                if *samples > 0 {
                    let pts: Vec<Real> = (0..*samples)
                        .map(|i| {
                            let t = if *samples == 1 {
                                0.0
                            } else {
                                -2.0 + 4.0 * i as f64 / (*samples - 1) as f64
                            };
                            Real::from_f64(10f64.powf(t), ctx.bits)
                        })
                        .collect();
                    for (x, w) in measures::weight_samples(&spec, &pts, ctx)? {
                        rec.push(ResultItem::Approx {
                            label: format!("W({})", x.to_decimal(8)),
                            value: fmt_real(&w.value),
                            error_bound: fmt_real(&w.error_bound),
                            rigorous: w.rigorous,
                        });
                    }
                }
            }
            Ok((vec![rec], 0))
        }
        Command::Hankel { r, s, max_order } => {
            let p = family(*r, *s)?;
            let seq = normal_order::BellSequence::new(p, 2 * *max_order);
            let mut rec = OutputRecord::new("hankel");
            rec.param("r", r)
                .param("s", s)
                .param("max_order", max_order);
            let mut all_positive = true;
            for order in 1..=*max_order {
                let rep = moment_analysis::hankel_determinants(&seq, order)?;
                all_positive &= num_traits::Signed::is_positive(&rep.det0)
                    && num_traits::Signed::is_positive(&rep.det1);
                rec.push(int_item(format!("det0[order={order}]"), &rep.det0));
                rec.push(int_item(format!("det1[order={order}]"), &rep.det1));
            }
            rec.push(ResultItem::Flag {
                label: "all_positive".into(),
                value: all_positive,
            });
            Ok((vec![rec], 0))
        }
        Command::Egf { r, max_n } => {
            if *r < 2 {
                return Err(usage("the EGF form needs r >= 2"));
            }
            let series = egf::egf_coefficients(*r, *max_n as usize);
            let mut rec = OutputRecord::new("egf");
            rec.param("r", r).param("max_n", max_n);
            for n in 0..=*max_n as usize {
                let c = series.coeff(n);
                rec.push(ResultItem::Note {
                    label: format!("c[{n}]"),
                    text: format!("{}/{}", c.numer(), c.denom()),
                });
                rec.push(int_item(
                    format!("c[{n}]*{n}!"),
                    &egf::egf_integer_coefficient(&series, n)?,
                ));
            }
            Ok((vec![rec], 0))
        }
        Command::Asympt { family: fam, n } => {
            let mut rec = OutputRecord::new("asympt");
            rec.param("family", fam);
            match fam.as_str() {
                "21" => {
                    for &order in n {
                        if order == 0 {
                            return Err(usage("orders start at 1"));
                        }
                        let rep = moment_analysis::asymptotic_b21(order, ctx);
                        push_asympt(&mut rec, order, &rep);
                    }
                }
                "31" => {
                    let max = *n.iter().max().unwrap();
                    if n.contains(&0) {
                        return Err(usage("orders start at 1"));
                    }
                    let seq = moment_analysis::exact_b31_sequence(max);
                    for &order in n {
                        let rep = moment_analysis::asymptotic_b31_with_exact(
                            order,
                            seq[order as usize].clone(),
                            ctx,
                        );
                        push_asympt(&mut rec, order, &rep);
                    }
                }
                other => return Err(usage(format!("unknown family {other:?}; use 21 or 31"))),
            }
            Ok((vec![rec], 0))
        }
        Command::Coherent {
            r,
            s,
            z,
            cutoff,
            overlap_with,
        } => {
            let p = family(*r, *s)?;
            let z = parse_complex_literal(z, ctx.bits).map_err(|e| usage(e.to_string()))?;
            let mut fam = CoherentFamily::new(p, 16);
            let mut rec = OutputRecord::new("coherent");
            rec.param("r", r)
                .param("s", s)
                .param("z", format!("{},{}", fmt_real(&z.re), fmt_real(&z.im)));
            let norm = coherent_states::normalization(&mut fam, &z.norm_sqr(), ctx)?;
            rec.push(approx_item("normalization", &norm));

            // grow the cutoff if the requested one cannot hold the tail
            let mut cut = *cutoff;
            let state = loop {
                match coherent_states::state_coefficients(&mut fam, &z, cut, ctx) {
                    Ok(st) => break st,
                    Err(Error::TruncationTooSmall { .. }) if cut < 1 << 14 => cut *= 2,
                    Err(e) => return Err(e.into()),
                }
            };
            rec.param("cutoff", cut);
            let norm_sqr = state.norm_sqr();
            rec.push(ResultItem::Value {
                label: "norm_sqr".into(),
                value: fmt_real(&norm_sqr),
            });
            rec.push(ResultItem::Value {
                label: "truncation_tail".into(),
                value: fmt_real(&state.tail_bound),
            });
            for (m, amp) in state.coefficients.iter().enumerate() {
                rec.push(ResultItem::Complex {
                    label: format!("amplitude[{m}]"),
                    re: fmt_real(&amp.re),
                    im: fmt_real(&amp.im),
                    error_bound: fmt_real(&state.tail_bound),
                    rigorous: true,
                });
            }
            for wlit in overlap_with {
                let w = parse_complex_literal(wlit, ctx.bits).map_err(|e| usage(e.to_string()))?;
                let ov = coherent_states::overlap(&mut fam, &z, &w, ctx)?;
                rec.push(ResultItem::Complex {
                    label: format!("overlap({},{})", fmt_real(&w.re), fmt_real(&w.im)),
                    re: fmt_real(&ov.value.re),
                    im: fmt_real(&ov.value.im),
                    error_bound: fmt_real(&ov.error_bound),
                    rigorous: ov.rigorous,
                });
            }
            Ok((vec![rec], 0))
        }
        Command::Verify { target, grid } => {
            if target != "all" {
                return Err(usage(format!(
                    "unknown verify target {target:?}; use `all`"
                )));
            }
            let g = match grid {
                GridArg::Small => verify::Grid::Small,
                GridArg::Full => verify::Grid::Full,
            };
            let results = verify::run(g, ctx);
            let mut rec = OutputRecord::new("verify");
            rec.param("target", "all").param(
                "grid",
                match grid {
                    GridArg::Small => "small",
                    GridArg::Full => "full",
                },
            );
            let mut failures = Vec::new();
            for c in &results {
                rec.push(ResultItem::Flag {
                    label: c.name.to_string(),
                    value: c.passed,
                });
                rec.push(ResultItem::Note {
                    label: c.name.to_string(),
                    text: c.detail.clone(),
                });
                if !c.passed {
                    failures.push(c.name);
                }
            }
            rec.push(ResultItem::Note {
                label: "failures".into(),
                text: if failures.is_empty() {
                    "none".into()
                } else {
                    failures.join(";")
                },
            });
            let code = i32::from(!failures.is_empty());
            Ok((vec![rec], code))
        }
        Command::Errata => {
            let mut rec = OutputRecord::new("errata");
            for e in errata::ENTRIES.iter() {
                rec.push(ResultItem::Note {
                    label: format!("{}/statement", e.id),
                    text: e.statement.into(),
                });
                rec.push(ResultItem::Note {
                    label: format!("{}/resolution", e.id),
                    text: e.resolution.into(),
                });
                rec.push(ResultItem::Note {
                    label: format!("{}/verified-by", e.id),
                    text: e.verifying_tests.join(";"),
                });
            }
            Ok((vec![rec], 0))
        }
    }
}

fn push_asympt(rec: &mut OutputRecord, order: u64, rep: &moment_analysis::AsymptoticReport) {
    rec.push(int_item(format!("exact[n={order}]"), &rep.exact));
    rec.push(ResultItem::Value {
        label: format!("asymptotic[n={order}]"),
        value: fmt_real(&rep.asymptotic),
    });
    rec.push(ResultItem::Value {
        label: format!("ratio[n={order}]"),
        value: fmt_real(&rep.ratio),
    });
}
