//! q-close-to-convexity of `z Φ[a, b; c; q, z]` with respect to
//! `g(z) = z/(1 - z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{heine_coeffs_real, log_q, q_gamma, ParamSet, PowerSeries};

/// Slack on `max_ratio <= 1` in K_q membership tests.
pub const KQ_TOL: f64 = 1e-10;
/// Slack on the monotonicity chains of `B_n`.
pub const BN_TOL: f64 = 1e-13;
/// Tolerance for recognising `c = ab`.
pub const C_EQ_AB_TOL: f64 = 1e-14;

/// `min{ab, ab + E/(2(1-q)), ab + E/(1-q) + F/(1-q)}` with
/// `E = aq + bq - q - 2ab + ab/q` and `F = a + b - q - ab/q`.
pub fn t1_threshold(a: f64, b: f64, q: f64) -> f64 {
    let ab = a * b;
    let e = a * q + b * q - q - 2.0 * ab + ab / q;
    let f = a + b - q - ab / q;
    let one_q = 1.0 - q;
    ab.min(ab + e / (2.0 * one_q))
        .min(ab + e / one_q + f / one_q)
}

/// `X(n)` in its expanded form
/// `q^{n-1} { s² (ab-c)/(1-q) + s E/(1-q)² + F/(1-q)² }`, `s = (1-q^n)/(1-q)`.
///
/// `B_n - B_{n+1}` has the sign of `X(n)` whenever `A_n > 0` and `c < 1`.
pub fn x_term(p: &ParamSet, n: usize) -> f64 {
    let (a, b, c, q) = (p.a, p.b, p.c, p.q);
    let ab = a * b;
    let e = a * q + b * q - q - 2.0 * ab + ab / q;
    let f = a + b - q - ab / q;
    let one_q = 1.0 - q;
    let s = (1.0 - q.powi(n as i32)) / one_q;
    q.powi(n as i32 - 1)
        * (s * s * (ab - c) / one_q + s * e / (one_q * one_q) + f / (one_q * one_q))
}

/// Which sufficient condition certified K_q membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KqRoute {
    /// `c <= T_1(a, b)`.
    T1,
    /// `c = ab` with the three side conditions.
    CEqAb,
    None,
}

impl KqRoute {
    pub fn name(self) -> &'static str {
        match self {
            KqRoute::T1 => "T1",
            KqRoute::CEqAb => "C_EQ_AB",
            KqRoute::None => "none",
        }
    }
}

/// One named inequality `lhs <= rhs` (or `>=`, as the name says).
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Condition {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Condition {
            name,
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }

    fn lt(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Condition {
            name,
            lhs,
            rhs,
            holds: lhs < rhs,
        }
    }

    fn ge(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Condition {
            name,
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KqConditions {
    pub route: KqRoute,
    pub pass: bool,
    pub t1: f64,
    /// Every inequality that was evaluated, in order.
    pub details: Vec<Condition>,
}

/// Ratio `Γ_q(log_q ab) / (Γ_q(log_q a) Γ_q(log_q b))`.
pub fn gamma_ratio(a: f64, b: f64, q: f64) -> Result<f64> {
    let la = log_q(a, q)?;
    let lb = log_q(b, q)?;
    let lab = log_q(a * b, q)?;
    Ok(q_gamma(lab, q)? / (q_gamma(la, q)? * q_gamma(lb, q)?))
}

/// Sufficient conditions for `z Φ[a, b; c; q, z] ∈ K_q`.
///
/// Route `T1` is taken when `c <= T_1(a, b)`. Otherwise, if `c = ab`, the
/// three side conditions are evaluated term by term; the first is used in the
/// cleared form `ab(2 - 1/q) >= aq + bq - q`.
pub fn kq_conditions_check(p: &ParamSet) -> Result<KqConditions> {
    let (a, b, c, q) = (p.a, p.b, p.c, p.q);
    let ab = a * b;
    let t1 = t1_threshold(a, b, q);
    let mut details = vec![Condition::lt("a<1", a, 1.0), Condition::lt("b<1", b, 1.0)];
    if !(a < 1.0 && b < 1.0) {
        return Ok(KqConditions {
            route: KqRoute::None,
            pass: false,
            t1,
            details,
        });
    }
    let t1_cond = Condition::le("c<=T1", c, t1);
    let t1_holds = t1_cond.holds;
    details.push(t1_cond);
    if t1_holds {
        return Ok(KqConditions {
            route: KqRoute::T1,
            pass: true,
            t1,
            details,
        });
    }
    if (c - ab).abs() > C_EQ_AB_TOL {
        details.push(Condition {
            name: "c=ab",
            lhs: c,
            rhs: ab,
            holds: false,
        });
        return Ok(KqConditions {
            route: KqRoute::None,
            pass: false,
            t1,
            details,
        });
    }
    details.push(Condition {
        name: "c=ab",
        lhs: c,
        rhs: ab,
        holds: true,
    });
    if !(a > 0.0 && b > 0.0 && ab < 1.0) {
        return Err(Error::DomainError(format!(
            "log_q needs a, b, ab in (0, 1); got a={a}, b={b}"
        )));
    }
    details.push(Condition::ge(
        "ab(2-1/q)>=aq+bq-q",
        ab * (2.0 - 1.0 / q),
        a * q + b * q - q,
    ));
    details.push(Condition::le(
        "aq+bq+a+b-2q<=2ab",
        a * q + b * q + a + b - 2.0 * q,
        2.0 * ab,
    ));
    details.push(Condition::le("gamma_ratio<=2", gamma_ratio(a, b, q)?, 2.0));
    let pass = details[details.len() - 3..].iter().all(|d| d.holds);
    Ok(KqConditions {
        route: if pass { KqRoute::CEqAb } else { KqRoute::None },
        pass,
        t1,
        details,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceVerdict {
    /// `1 >= B_2 >= ... >= B_N >= 0`
    Decreasing01,
    /// `1 <= B_2 <= ... <= B_N <= 2`
    Increasing12,
    Neither,
}

impl SequenceVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SequenceVerdict::Decreasing01 => "DECREASING_01",
            SequenceVerdict::Increasing12 => "INCREASING_12",
            SequenceVerdict::Neither => "NEITHER",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceClass {
    pub verdict: SequenceVerdict,
    /// `B_1..=B_N` at positions `0..N`.
    pub b: Vec<f64>,
    pub limit_estimate: Option<f64>,
}

/// `B_n = A_n (1 - q^n)/(1 - q)` for the coefficients `A_n` of `z Φ[a, b; c; q, z]`
/// (so `A_n` is the Heine coefficient of index `n - 1`), classified by the
/// two monotone chains.
pub fn bn_sequence(p: &ParamSet, n: usize) -> Result<SequenceClass> {
    if n < 2 {
        return Err(Error::DomainError(format!("need N >= 2, got {n}")));
    }
    let coeffs = heine_coeffs_real(p, n)?;
    let q = p.q;
    let one_q = 1.0 - q;
    let mut qn = q;
    let b: Vec<f64> = coeffs
        .iter()
        .map(|&a_n| {
            let v = a_n * ((1.0 - qn) / one_q);
            qn *= q;
            v
        })
        .collect();

    let decreasing = b.windows(2).all(|w| w[1] <= w[0] + BN_TOL) && b[n - 1] >= -BN_TOL;
    let increasing = b.windows(2).all(|w| w[1] >= w[0] - BN_TOL) && b[n - 1] <= 2.0 + BN_TOL;
    let verdict = if decreasing {
        SequenceVerdict::Decreasing01
    } else if increasing {
        SequenceVerdict::Increasing12
    } else {
        SequenceVerdict::Neither
    };
    let limit_estimate = ((b[n - 1] - b[n - 2]).abs() < 1e-10).then_some(b[n - 1]);
    Ok(SequenceClass {
        verdict,
        b,
        limit_estimate,
    })
}

/// Polar sampling grid for K_q tests: `radii` radii clustered toward
/// `r_max` (`r_i = r_max sin(π (i+1) / (2 radii))`) times `angles` uniform
/// angles. The origin is excluded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KqGrid {
    pub radii: usize,
    pub angles: usize,
    pub r_max: f64,
}

impl KqGrid {
    pub fn new(radii: usize, angles: usize, r_max: f64) -> Result<Self> {
        if radii == 0 || angles == 0 || !(r_max > 0.0 && r_max < 1.0) {
            return Err(Error::DomainError(format!(
                "invalid K_q grid {radii}x{angles} with r_max={r_max}"
            )));
        }
        Ok(KqGrid {
            radii,
            angles,
            r_max,
        })
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.radii * self.angles);
        for i in 0..self.radii {
            let r = self.r_max * (PI * (i + 1) as f64 / (2 * self.radii) as f64).sin();
            for j in 0..self.angles {
                let theta = 2.0 * PI * j as f64 / self.angles as f64;
                out.push(Complex64::from_polar(r, theta));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KqReport {
    /// `max |g(z) + f(qz) - f(z)| / |g(z)|` over the grid.
    pub max_ratio: f64,
    pub worst_z: Complex64,
    pub pass: bool,
}

fn report(points: &[Complex64], ratio: impl Fn(Complex64) -> f64) -> KqReport {
    let mut max_ratio = 0.0;
    let mut worst_z = Complex64::new(0.0, 0.0);
    for &z in points {
        let r = ratio(z);
        // NaN propagates as a failure
        if r > max_ratio || r.is_nan() {
            max_ratio = r;
            worst_z = z;
            if r.is_nan() {
                break;
            }
        }
    }
    KqReport {
        max_ratio,
        worst_z,
        pass: max_ratio <= 1.0 + KQ_TOL,
    }
}

/// K_q test for an explicit polynomial `f` (normalized `f(0) = 0`,
/// `f'(0) = 1`), evaluating the defining quotient directly.
pub fn kq_membership(f: &PowerSeries, q: f64, grid: &KqGrid) -> KqReport {
    report(&grid.points(), |z| {
        let g = z / (1.0 - z);
        (g + f.eval(z * q) - f.eval(z)).norm() / g.norm()
    })
}

/// Coefficients of `(g(z) + f(qz) - f(z)) / g(z)` for `f = z Φ[a, b; c; q, z]`.
///
/// With `h_n = 1 - A_n (1 - q^n)` the quotient is
/// `(1 - z) sum_{n>=1} h_n z^{n-1} = sum_{m>=0} (h_{m+1} - h_m) z^m`, whose
/// coefficients `(1-q)(B_m - B_{m+1})` decay geometrically. Terms are kept
/// until they drop below `1e-17` relative to `r_max^-m`.
pub fn kq_quotient_series(p: &ParamSet, r_max: f64) -> Result<PowerSeries> {
    const CHUNK: usize = 256;
    const LIMIT: usize = 1 << 20;
    let q = p.q;
    let one_q = 1.0 - q;
    let mut len = CHUNK;
    loop {
        let a = heine_coeffs_real(p, len + 1)?;
        // B_n for n = 1..=len+1
        let mut qn = q;
        let b: Vec<f64> = a
            .iter()
            .map(|&v| {
                let out = v * ((1.0 - qn) / one_q);
                qn *= q;
                out
            })
            .collect();
        let mut coeffs = Vec::with_capacity(len + 1);
        coeffs.push(q);
        for m in 1..=len {
            coeffs.push(one_q * (b[m - 1] - b[m]));
        }
        let mut rm = 1.0;
        let mut small = 0;
        let mut cut = None;
        for (m, c) in coeffs.iter().enumerate() {
            if c.abs() * rm < 1e-17 {
                small += 1;
                if small >= 8 && m >= 16 {
                    cut = Some(m + 1);
                    break;
                }
            } else {
                small = 0;
            }
            rm *= r_max;
        }
        if let Some(cut) = cut {
            coeffs.truncate(cut);
            return Ok(PowerSeries::from_real(&coeffs));
        }
        if len >= LIMIT {
            return Err(Error::NoConvergence { terms: len });
        }
        len *= 4;
    }
}

/// K_q test for `f(z) = z Φ[a, b; c; q, z]` against `g(z) = z/(1 - z)`.
pub fn kq_membership_test(p: &ParamSet, grid: &KqGrid) -> Result<KqReport> {
    let quotient = kq_quotient_series(p, grid.r_max)?;
    Ok(report(&grid.points(), |z| quotient.eval(z).norm()))
}
