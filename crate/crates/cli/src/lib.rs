//! Library side of the `qheine` binary: argument types, serializers and the
//! dispatcher used by both `main` and the integration tests.

pub mod args;
pub mod config;
pub mod figures;
pub mod render;

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use qheine_core::geomtest::{
    bn_sequence, boundary_curve, full_convexity_check, kq_conditions_check, kq_membership_test,
    vertical_convexity_check, BoundaryCurve, CurveMap, KqGrid, DEFAULT_FLAT_TOL,
};
use qheine_core::gfrac::{
    gfraction_coeffs, hypothesis_check, ratio_eval, ratio_moments, totally_monotone_check,
    MonotonicityReport, RatioVariant,
};
use qheine_core::qcore::{gauss_f, heine_phi, verify_identities};
use qheine_core::scanner::{records_to_csv, scan};
use qheine_core::{Complex64, ParamSet};

use args::{Cli, Command, Format, MapArg, ParamArgs};

/// Version tag of every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{}::{}: {0}", .0.module(), .0.name())]
    Numeric(qheine_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

impl From<qheine_core::Error> for CliError {
    fn from(e: qheine_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub body: String,
    /// `false` makes the process exit with status 1.
    pub pass: bool,
    /// One-line summary for stderr.
    pub summary: Option<String>,
}

impl Emitted {
    fn json(mut v: Value, pass: bool) -> Self {
        v["schema_version"] = json!(SCHEMA_VERSION);
        Emitted {
            body: serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n",
            pass,
            summary: None,
        }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn params(p: &ParamArgs) -> Result<ParamSet, CliError> {
    ParamSet::new(p.a, p.b, p.c, p.q).map_err(|e| input(e.to_string()))
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(input(format!("{name} must be positive, got {v}")))
    }
}

fn only(format: Option<Format>, allowed: &[Format], default: Format) -> Result<Format, CliError> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(input(format!(
            "format {f:?} is not available for this subcommand"
        )))
    }
}

fn monotonicity_json(r: &MonotonicityReport) -> Value {
    json!({
        "pass": r.pass,
        "first_violation": r.first_violation.map(|(j, k)| json!([j, k])),
    })
}

fn params_json(p: &ParamSet) -> Value {
    json!({"a": p.a, "b": p.b, "c": p.c, "q": p.q})
}

/// Machine-readable facts about a sampled curve.
fn curve_summary(curve: &BoundaryCurve) -> Value {
    let modulus_dev = curve
        .samples
        .iter()
        .map(|w| (w.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let v = vertical_convexity_check(curve, DEFAULT_FLAT_TOL)
        .map(|v| json!({"pass": v.pass, "extrema_count": v.extrema_count}))
        .unwrap_or(Value::Null);
    let f = full_convexity_check(curve, DEFAULT_FLAT_TOL)
        .map(|f| json!({"pass": f.pass, "inflections": f.inflections}))
        .unwrap_or(Value::Null);
    json!({
        "r": curve.r,
        "samples": curve.len(),
        "max_modulus_deviation": modulus_dev,
        "vertical_convexity": v,
        "full_convexity": f,
    })
}

fn emit_curve(curve: &BoundaryCurve, format: Format, title: &str) -> Emitted {
    let summary = curve_summary(curve);
    let line = format!(
        "max_modulus_deviation={:.16e}",
        summary["max_modulus_deviation"]
            .as_f64()
            .unwrap_or(f64::NAN)
    );
    match format {
        Format::Json => Emitted::json(json!({"title": title, "curve": summary}), true),
        Format::Csv => Emitted {
            body: render::curve_csv(curve),
            pass: true,
            summary: Some(line),
        },
        Format::Svg => Emitted {
            body: render::curve_svg(curve, title),
            pass: true,
            summary: Some(line),
        },
    }
}

/// Runs one subcommand.
pub fn run(cli: &Cli) -> Result<Emitted, CliError> {
    use Format::*;
    match &cli.command {
        Command::Eval(e) => {
            only(cli.format, &[Json], Json)?;
            positive("tol", e.tol)?;
            let q_params = || -> Result<ParamSet, CliError> {
                let q = e.q.ok_or_else(|| input("-q is required"))?;
                params(&ParamArgs {
                    a: e.a,
                    b: e.b,
                    c: e.c,
                    q,
                })
            };
            let (name, value, terms, est) = if e.function.phi {
                let r = heine_phi(&q_params()?, e.z, e.tol)?;
                ("phi", r.value, Some(r.terms_used), Some(r.est_error))
            } else if e.function.gauss {
                let r = gauss_f(e.a, e.b, e.c, e.z, e.tol)?;
                ("gauss", r.value, Some(r.terms_used), Some(r.est_error))
            } else {
                let variant: RatioVariant =
                    e.function.ratio.expect("clap group requires one").into();
                let v = ratio_eval(variant, e.form.into(), &q_params()?, e.z)?;
                (variant.name(), v, None, None)
            };
            Ok(Emitted::json(
                json!({
                    "function": name,
                    "z": complex(e.z),
                    "value": complex(value),
                    "terms_used": terms,
                    "est_error": est,
                }),
                true,
            ))
        }
        Command::Identities(i) => {
            only(cli.format, &[Json], Json)?;
            positive("tol", i.tol)?;
            let p = params(&i.params)?;
            let mut zs = vec![i.z];
            let mut rng = ChaCha8Rng::seed_from_u64(i.seed);
            for _ in 0..i.samples {
                let r = 0.8 * rng.gen::<f64>().sqrt();
                zs.push(Complex64::from_polar(r, rng.gen_range(0.0..TAU)));
            }
            let mut points = Vec::new();
            let mut worst: f64 = 0.0;
            for z in zs {
                let r = verify_identities(&p, z, i.tol)?;
                worst = worst.max(r.max());
                points.push(json!({
                    "z": complex(z),
                    "residuals": {
                        "shift_bc": r.shift_bc,
                        "shift_a": r.shift_a,
                        "shift_a_difference": r.shift_a_difference,
                        "q_derivative": r.q_derivative,
                    },
                    "max": r.max(),
                }));
            }
            let pass = worst < i.threshold;
            Ok(Emitted::json(
                json!({"params": params_json(&p), "points": points, "max": worst, "threshold": i.threshold, "pass": pass}),
                pass,
            ))
        }
        Command::Gfraction(g) => {
            only(cli.format, &[Json], Json)?;
            let p = params(&g.params)?;
            let variant: RatioVariant = g.variant.into();
            let gf = gfraction_coeffs(variant, &p, g.n)?;
            let h = hypothesis_check(variant, &p);
            Ok(Emitted::json(
                json!({
                    "variant": variant.name(),
                    "params": params_json(&p),
                    "g": gf.g,
                    "p": gf.partial_numerators,
                    "hypotheses": {"pass": h.pass, "violations": h.violations},
                }),
                true,
            ))
        }
        Command::Moments(m) => {
            only(cli.format, &[Json], Json)?;
            positive("tol", m.tol)?;
            let p = params(&m.params)?;
            let variant: RatioVariant = m.variant.into();
            let seq = ratio_moments(variant, &p, m.n)?;
            let report = totally_monotone_check(&seq, m.tol);
            let mut doc = json!({
                "variant": variant.name(),
                "params": params_json(&p),
                "moments": seq.m,
                "total_monotone": monotonicity_json(&report),
            });
            let mut pass = report.pass;
            if variant == RatioVariant::ShiftAll {
                let scaled = totally_monotone_check(&seq.scaled(p.a), m.tol);
                pass &= scaled.pass;
                doc["scaled_by_a"] = monotonicity_json(&scaled);
            }
            Ok(Emitted::json(doc, pass))
        }
        Command::Check(c) => {
            only(cli.format, &[Json], Json)?;
            let p = params(&c.params)?;
            let everything = c.variant.is_empty() && !c.kq && c.bn.is_none();
            let variants: Vec<RatioVariant> = if everything {
                RatioVariant::ALL.to_vec()
            } else {
                c.variant.iter().map(|&v| v.into()).collect()
            };
            let mut pass = true;
            let mut doc = json!({"params": params_json(&p)});
            let mut hyps = serde_json::Map::new();
            for v in variants {
                let h = hypothesis_check(v, &p);
                pass &= h.pass;
                hyps.insert(
                    v.name().into(),
                    json!({"pass": h.pass, "violations": h.violations}),
                );
            }
            if !hyps.is_empty() {
                doc["hypotheses"] = Value::Object(hyps);
            }
            if everything || c.kq {
                let k = kq_conditions_check(&p)?;
                pass &= k.pass;
                let details: Vec<Value> = k
                    .details
                    .iter()
                    .map(|d| json!({"name": d.name, "lhs": d.lhs, "rhs": d.rhs, "holds": d.holds}))
                    .collect();
                doc["kq_conditions"] = json!({"route": k.route.name(), "pass": k.pass, "t1": k.t1, "details": details});
            }
            if everything || c.bn.is_some() {
                let s = bn_sequence(&p, c.bn.unwrap_or(100))?;
                pass &= s.verdict != qheine_core::geomtest::SequenceVerdict::Neither;
                doc["bn_sequence"] = json!({"verdict": s.verdict.name(), "b": s.b, "limit_estimate": s.limit_estimate});
            }
            doc["pass"] = json!(pass);
            Ok(Emitted::json(doc, pass))
        }
        Command::Kq(k) => {
            only(cli.format, &[Json], Json)?;
            let p = params(&k.params)?;
            let grid = KqGrid::new(k.radii, k.angles, k.r_max).map_err(|e| input(e.to_string()))?;
            let r = kq_membership_test(&p, &grid)?;
            Ok(Emitted::json(
                json!({
                    "params": params_json(&p),
                    "grid": {"radii": k.radii, "angles": k.angles, "r_max": k.r_max},
                    "max_ratio": r.max_ratio,
                    "worst_z": complex(r.worst_z),
                    "pass": r.pass,
                }),
                r.pass,
            ))
        }
        Command::Boundary(b) => {
            let format = only(cli.format, &[Json, Csv, Svg], Csv)?;
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| input(format!("-{name} is required for this map")))
            };
            let full = || -> Result<ParamSet, CliError> {
                params(&ParamArgs {
                    a: need(b.a, "a")?,
                    b: need(b.b, "b")?,
                    c: need(b.c, "c")?,
                    q: need(b.q, "q")?,
                })
            };
            let map = match b.map {
                MapArg::Identity => CurveMap::Identity,
                MapArg::Ratio => CurveMap::Ratio {
                    variant: b
                        .variant
                        .ok_or_else(|| input("--variant is required for --map ratio"))?
                        .into(),
                    form: b.form.into(),
                    params: full()?,
                },
                MapArg::Zphi => CurveMap::ZPhi(full()?),
                MapArg::Gauss => CurveMap::GaussShift {
                    a: need(b.a, "a")?,
                    b: need(b.b, "b")?,
                    c: need(b.c, "c")?,
                },
            };
            if !(b.r > 0.0 && b.r < 1.0) || b.m < qheine_core::geomtest::MIN_SAMPLES {
                return Err(input(format!(
                    "need 0 < r < 1 and M >= 256, got r={}, M={}",
                    b.r, b.m
                )));
            }
            let curve = boundary_curve(&map, b.r, b.m)?;
            Ok(emit_curve(&curve, format, &format!("{map:?}")))
        }
        Command::Figure(f) => {
            let format = only(cli.format, &[Json, Csv, Svg], Svg)?;
            if f.c.is_some() && f.number != 5 {
                return Err(input("--c only applies to figure 5"));
            }
            if f.m < qheine_core::geomtest::MIN_SAMPLES {
                return Err(input(format!("need M >= 256, got {}", f.m)));
            }
            let preset =
                figures::preset(f.number, f.c).ok_or_else(|| input("figure must be 1..5"))?;
            let curve = boundary_curve(&preset.map, preset.r, f.m)?;
            Ok(emit_curve(&curve, format, preset.title))
        }
        Command::Scan(s) => {
            let format = only(cli.format, &[Csv, Json], Csv)?;
            let text = std::fs::read_to_string(&s.config)
                .map_err(|e| input(format!("{}: {e}", s.config.display())))?;
            let grid = config::parse_grid(&text)
                .map_err(|e| input(format!("{}: {e}", s.config.display())))?;
            grid.validate().map_err(|e| input(e.to_string()))?;
            let records = scan(&grid)?;
            let violations = records.iter().filter(|r| r.soundness_violation()).count();
            let pass = violations == 0;
            let summary = format!("points={} soundness_violations={violations}", records.len());
            Ok(match format {
                Csv => Emitted {
                    body: records_to_csv(&records),
                    pass,
                    summary: Some(summary),
                },
                _ => Emitted::json(
                    json!({
                        "points": records.len(),
                        "hyp_thm1": records.iter().filter(|r| r.hyp_thm1).count(),
                        "hyp_thm2": records.iter().filter(|r| r.hyp_thm2).count(),
                        "soundness_violations": violations,
                        "pass": pass,
                    }),
                    pass,
                ),
            })
        }
    }
}
