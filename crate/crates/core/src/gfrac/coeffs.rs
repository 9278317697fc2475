//! Hypotheses and coefficient sequences of the three shifted ratios.

use std::fmt;

use crate::error::{Error, Result};
use crate::qcore::ParamSet;

/// Which shifted ratio of Heine series is being expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioVariant {
    /// `Φ[a, bq; cq] / Φ[a, b; c]`
    ShiftBc,
    /// `Φ[aq, b; c] / Φ[a, b; c]`
    ShiftA,
    /// `Φ[aq, bq; cq] / Φ[a, b; c]`
    ShiftAll,
}

impl RatioVariant {
    pub const ALL: [RatioVariant; 3] = [
        RatioVariant::ShiftBc,
        RatioVariant::ShiftA,
        RatioVariant::ShiftAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RatioVariant::ShiftBc => "SHIFT_BC",
            RatioVariant::ShiftA => "SHIFT_A",
            RatioVariant::ShiftAll => "SHIFT_ALL",
        }
    }

    /// Shifts `(i, j, k)` applied to `(a, b, c)` in the numerator series.
    pub fn numerator_shift(self) -> (i32, i32, i32) {
        match self {
            RatioVariant::ShiftBc => (0, 1, 1),
            RatioVariant::ShiftA => (1, 0, 0),
            RatioVariant::ShiftAll => (1, 1, 1),
        }
    }
}

impl fmt::Display for RatioVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RatioVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SHIFT_BC" | "shift-bc" | "bc" => Ok(RatioVariant::ShiftBc),
            "SHIFT_A" | "shift-a" | "a" => Ok(RatioVariant::ShiftA),
            "SHIFT_ALL" | "shift-all" | "all" => Ok(RatioVariant::ShiftAll),
            other => Err(Error::InvalidParameters(format!(
                "unknown ratio variant {other:?}"
            ))),
        }
    }
}

/// Outcome of checking a theorem's parameter hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub pass: bool,
    /// Names of every violated inequality, in the order they are listed.
    pub violations: Vec<&'static str>,
}

/// Evaluates the sufficient conditions under which the variant's ratio has
/// a g-fraction with all `g_k ∈ [0, 1]`.
///
/// * `ShiftBc`: `0 <= q(b-c) <= 1-cq` and `0 < a-c <= 1-c`.
/// * `ShiftA`, `ShiftAll`: `0 <= 1-aq <= 1-cq` and `0 < 1-b <= 1-c`.
///
/// All three variants also require `a, b, c >= 0`. Comparisons are exact.
pub fn hypothesis_check(variant: RatioVariant, p: &ParamSet) -> HypothesisReport {
    let (a, b, c, q) = (p.a, p.b, p.c, p.q);
    let mut checks: Vec<(&'static str, bool)> =
        vec![("a>=0", a >= 0.0), ("b>=0", b >= 0.0), ("c>=0", c >= 0.0)];
    match variant {
        RatioVariant::ShiftBc => {
            checks.push(("q(b-c)>=0", q * (b - c) >= 0.0));
            checks.push(("q(b-c)<=1-cq", q * (b - c) <= 1.0 - c * q));
            checks.push(("a-c>0", a - c > 0.0));
            checks.push(("a-c<=1-c", a - c <= 1.0 - c));
        }
        RatioVariant::ShiftA | RatioVariant::ShiftAll => {
            checks.push(("1-aq>=0", 1.0 - a * q >= 0.0));
            checks.push(("1-aq<=1-cq", 1.0 - a * q <= 1.0 - c * q));
            checks.push(("1-b>0", 1.0 - b > 0.0));
            checks.push(("1-b<=1-c", 1.0 - b <= 1.0 - c));
        }
    }
    let violations: Vec<_> = checks
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect();
    HypothesisReport {
        pass: violations.is_empty(),
        violations,
    }
}

fn denominator(p: &ParamSet, power: i32, index: usize) -> Result<f64> {
    let d = 1.0 - p.c * p.q.powi(power);
    if d.abs() < f64::EPSILON {
        Err(Error::DenominatorZero { index })
    } else {
        Ok(d)
    }
}

/// Coefficients `k = 1..=n` of the plain continued fraction.
///
/// For `ShiftBc` these are the `d_k` of
/// `Φ[a,bq;cq]/Φ[a,b;c] = 1/(1 + d_1 z/(1 + d_2 z/(1 + ...)))`; for
/// `ShiftA` and `ShiftAll` the `c_k` of
/// `Φ[aq,bq;cq]/Φ[aq,b;c] = 1/(1 - c_1 z/(1 - c_2 z/(1 - ...)))`.
/// The returned vector holds coefficient `k` at position `k - 1`.
pub fn raw_cfrac_coeffs(variant: RatioVariant, p: &ParamSet, n: usize) -> Result<Vec<f64>> {
    let (a, b, c, q) = (p.a, p.b, p.c, p.q);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let half = (k / 2) as i32;
        let qn = q.powi(half);
        let v = match (variant, k % 2) {
            (RatioVariant::ShiftBc, 1) => {
                qn * (1.0 - a * qn) * (c * qn - b)
                    / (denominator(p, 2 * half, k)? * denominator(p, 2 * half + 1, k)?)
            }
            (RatioVariant::ShiftBc, _) => {
                q.powi(half - 1) * (1.0 - b * qn) * (c * qn - a)
                    / (denominator(p, 2 * half - 1, k)? * denominator(p, 2 * half, k)?)
            }
            (_, 1) => {
                qn * (1.0 - a * qn * q) * (b - c * qn)
                    / (denominator(p, 2 * half, k)? * denominator(p, 2 * half + 1, k)?)
            }
            (_, _) => {
                qn * (1.0 - b * qn) * (a - c * q.powi(half - 1))
                    / (denominator(p, 2 * half - 1, k)? * denominator(p, 2 * half, k)?)
            }
        };
        out.push(v);
    }
    Ok(out)
}

/// Closed form of `g_k`.
///
/// `ShiftBc`: `g_{2n+1} = q^n (a - c q^n)/(1 - c q^{2n})`,
/// `g_{2n} = q^n (b - c q^{n-1})/(1 - c q^{2n-1})`, and `g_0 = 0` is a
/// placeholder (the fraction starts at `(1 - g_1) g_2`).
///
/// `ShiftA`/`ShiftAll`: `g_0 = 1 - a`, `g_{2n} = (1 - a q^n)/(1 - c q^{2n-1})`,
/// `g_{2n+1} = (1 - b q^n)/(1 - c q^{2n})`.
pub fn g_closed_form(variant: RatioVariant, p: &ParamSet, k: usize) -> Result<f64> {
    let (a, b, c, q) = (p.a, p.b, p.c, p.q);
    let half = (k / 2) as i32;
    let qn = q.powi(half);
    Ok(match variant {
        RatioVariant::ShiftBc => {
            if k == 0 {
                0.0
            } else if k % 2 == 1 {
                qn * (a - c * qn) / denominator(p, 2 * half, k)?
            } else {
                qn * (b - c * q.powi(half - 1)) / denominator(p, 2 * half - 1, k)?
            }
        }
        RatioVariant::ShiftA | RatioVariant::ShiftAll => {
            if k == 0 {
                1.0 - a
            } else if k % 2 == 1 {
                (1.0 - b * qn) / denominator(p, 2 * half, k)?
            } else {
                (1.0 - a * qn) / denominator(p, 2 * half - 1, k)?
            }
        }
    })
}

/// Rewrites raw coefficients as the z-coefficients of a `1/(1 - p_1 z/(1 - ...))`
/// fraction in the variant's moment normalization.
///
/// `ShiftBc`: `b_k = -d_k`, then `a_k = q b_k` for the `qz` argument.
/// `ShiftA`/`ShiftAll`: `a(1-b)/(1-c)` followed by `c_1, c_2, ...`.
pub fn numerators_from_raw(variant: RatioVariant, p: &ParamSet, raw: &[f64]) -> Vec<f64> {
    match variant {
        RatioVariant::ShiftBc => raw.iter().map(|d| -d * p.q).collect(),
        RatioVariant::ShiftA | RatioVariant::ShiftAll => {
            let mut out = Vec::with_capacity(raw.len() + 1);
            out.push(p.a * (1.0 - p.b) / (1.0 - p.c));
            out.extend_from_slice(raw);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> ParamSet {
        ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap()
    }

    fn fig3() -> ParamSet {
        ParamSet::new(0.99, 0.998, 0.98, 0.9).unwrap()
    }

    #[test]
    fn hypotheses_fig2() {
        let r = hypothesis_check(RatioVariant::ShiftBc, &fig2());
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn hypotheses_boundary_a_equals_c() {
        let p = ParamSet::new(0.6, 0.7, 0.6, 0.8).unwrap();
        let r = hypothesis_check(RatioVariant::ShiftBc, &p);
        assert!(!r.pass);
        assert_eq!(r.violations, vec!["a-c>0"]);
    }

    #[test]
    fn hypotheses_fig3() {
        let p = fig3();
        assert!(hypothesis_check(RatioVariant::ShiftA, &p).pass);
        assert!(hypothesis_check(RatioVariant::ShiftAll, &p).pass);
    }

    #[test]
    fn hypotheses_list_every_violation() {
        let p = ParamSet::new(-0.1, 1.5, 0.6, 0.8).unwrap();
        let r = hypothesis_check(RatioVariant::ShiftA, &p);
        assert_eq!(r.violations, vec!["a>=0", "1-aq<=1-cq", "1-b>0"]);
    }

    #[test]
    fn first_raw_coefficient() {
        let p = fig2();
        let d = raw_cfrac_coeffs(RatioVariant::ShiftBc, &p, 4).unwrap();
        let d1 = (1.0 - p.a) * (p.c - p.b) / ((1.0 - p.c) * (1.0 - p.c * p.q));
        assert!((d[0] - d1).abs() < 1e-16);
        assert!((d[0] - (-0.048_076_923_076_923_08)).abs() < 1e-15);
        // d_2, d_3, d_4 as listed term by term
        let (a, b, c, q) = (p.a, p.b, p.c, p.q);
        let d2 = (1.0 - b * q) * (c * q - a) / ((1.0 - c * q) * (1.0 - c * q * q));
        let d3 = q * (1.0 - a * q) * (c * q - b) / ((1.0 - c * q * q) * (1.0 - c * q.powi(3)));
        let d4 = q * (1.0 - b * q * q) * (c * q * q - a)
            / ((1.0 - c * q.powi(3)) * (1.0 - c * q.powi(4)));
        for (got, want) in d[1..].iter().zip([d2, d3, d4]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn shift_a_raw_is_shift_bc_with_a_scaled() {
        // c_k is b_k = -d_k evaluated at a -> aq.
        let p = fig3();
        let c = raw_cfrac_coeffs(RatioVariant::ShiftA, &p, 10).unwrap();
        let d = raw_cfrac_coeffs(RatioVariant::ShiftBc, &p.shifted(1, 0, 0), 10).unwrap();
        for (ck, dk) in c.iter().zip(&d) {
            assert!((ck + dk).abs() < 1e-15, "{ck} vs {dk}");
        }
    }

    #[test]
    fn g_values_fig2() {
        let p = fig2();
        assert_eq!(g_closed_form(RatioVariant::ShiftBc, &p, 0).unwrap(), 0.0);
        assert!((g_closed_form(RatioVariant::ShiftBc, &p, 1).unwrap() - 0.75).abs() < 1e-15);
        let g2 = g_closed_form(RatioVariant::ShiftBc, &p, 2).unwrap();
        assert!((g2 - 0.08 / 0.52).abs() < 1e-15);
    }

    #[test]
    fn g0_fig3() {
        let g0 = g_closed_form(RatioVariant::ShiftA, &fig3(), 0).unwrap();
        assert!((g0 - 0.01).abs() < 1e-15);
    }

    #[test]
    fn parse_variant() {
        assert_eq!("bc".parse::<RatioVariant>().unwrap(), RatioVariant::ShiftBc);
        assert_eq!(
            "shift-all".parse::<RatioVariant>().unwrap(),
            RatioVariant::ShiftAll
        );
        assert!("x".parse::<RatioVariant>().is_err());
    }
}
