//! Parameter sweeps: hypothesis checks next to empirical geometric tests.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geomtest::{
    bn_sequence, boundary_curve, kq_conditions_check, kq_membership_test, vertical_convexity_check,
    CurveMap, KqGrid, KqRoute, SequenceVerdict, DEFAULT_FLAT_TOL,
};
use crate::gfrac::{hypothesis_check, RatioForm, RatioVariant};
use crate::qcore::ParamSet;

/// Default cap on the number of grid points.
pub const DEFAULT_CAP: usize = 100_000;

/// `steps` equally spaced values from `min` to `max` (just `min` if `steps == 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Range { min, max, steps }
    }

    pub fn single(v: f64) -> Self {
        Range::new(v, v, 1)
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// Which empirical tests a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestFlags {
    pub vconvex: bool,
    pub kq: bool,
    pub bn: bool,
}

impl TestFlags {
    pub const ALL: TestFlags = TestFlags {
        vconvex: true,
        kq: true,
        bn: true,
    };
    pub const NONE: TestFlags = TestFlags {
        vconvex: false,
        kq: false,
        bn: false,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub a: Range,
    pub b: Range,
    pub c: Range,
    pub q: Range,
    pub tests: TestFlags,
    /// Radius of the sampled boundary circle.
    pub radius: f64,
    /// Samples per boundary curve.
    pub samples: usize,
    /// K_q grid: radii, angles, outer radius.
    pub kq_radii: usize,
    pub kq_angles: usize,
    pub kq_r_max: f64,
    /// Length of the `B_n` sequence.
    pub bn_terms: usize,
    pub cap: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            a: Range::single(0.5),
            b: Range::single(0.5),
            c: Range::single(0.2),
            q: Range::single(0.5),
            tests: TestFlags::ALL,
            radius: 0.99,
            samples: 1024,
            kq_radii: 32,
            kq_angles: 32,
            kq_r_max: 0.99,
            bn_terms: 100,
            cap: DEFAULT_CAP,
        }
    }
}

impl GridSpec {
    pub fn points(&self) -> usize {
        [self.a, self.b, self.c, self.q]
            .iter()
            .fold(1usize, |n, r| n.saturating_mul(r.steps))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("a", self.a), ("b", self.b), ("c", self.c), ("q", self.q)] {
            if r.steps == 0 {
                return Err(Error::InvalidParameters(format!(
                    "{name}: steps must be >= 1"
                )));
            }
            if !(r.min.is_finite() && r.max.is_finite()) {
                return Err(Error::InvalidParameters(format!(
                    "{name}: range must be finite"
                )));
            }
        }
        if !(self.q.min > 0.0 && self.q.max < 1.0 && self.q.min <= self.q.max) {
            return Err(Error::InvalidParameters(
                "q range must lie inside (0, 1)".into(),
            ));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::InvalidParameters(format!(
                "radius {} outside (0, 1)",
                self.radius
            )));
        }
        KqGrid::new(self.kq_radii, self.kq_angles, self.kq_r_max)
            .map_err(|e| Error::InvalidParameters(e.to_string()))?;
        if self.bn_terms < 2 {
            return Err(Error::InvalidParameters("bn_terms must be >= 2".into()));
        }
        let points = self.points();
        if points > self.cap {
            return Err(Error::CapExceeded {
                points,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Result of one empirical test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped(&'static str),
}

impl Outcome {
    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Outcome::Fail
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            Outcome::Fail => f.write_str("fail"),
            Outcome::Skipped(why) => write!(f, "skipped:{why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub params: ParamSet,
    /// Hypotheses for the `(b, c)`-shifted ratio.
    pub hyp_thm1: bool,
    /// Hypotheses for the `a`-shifted and fully shifted ratios.
    pub hyp_thm2: bool,
    pub kq_route: Option<KqRoute>,
    pub bn_verdict: Option<SequenceVerdict>,
    /// Vertical convexity of the normalized `(b, c)`-shifted map.
    pub empirical_vconvex: Outcome,
    /// Same for the `a`-shifted map.
    pub empirical_vconvex_a: Outcome,
    /// Same for the fully shifted map.
    pub empirical_vconvex_all: Outcome,
    pub empirical_kq: Outcome,
    /// Error tags and hypothesis violations, in evaluation order.
    pub notes: Vec<String>,
}

impl ScanRecord {
    /// A theorem's hypotheses hold but the empirical test failed.
    pub fn soundness_violation(&self) -> bool {
        (self.hyp_thm1 && self.empirical_vconvex.is_fail())
            || (self.hyp_thm2
                && (self.empirical_vconvex_a.is_fail() || self.empirical_vconvex_all.is_fail()))
            || (matches!(self.kq_route, Some(r) if r != KqRoute::None)
                && self.empirical_kq.is_fail())
    }

    pub const CSV_HEADER: &'static str =
        "a,b,c,q,hyp_thm1,hyp_thm2,kq_route,bn_verdict,vconvex_bc,vconvex_a,vconvex_all,kq,notes";

    pub fn to_csv_row(&self) -> String {
        let p = &self.params;
        format!(
            "{:e},{:e},{:e},{:e},{},{},{},{},{},{},{},{},{}",
            p.a,
            p.b,
            p.c,
            p.q,
            self.hyp_thm1,
            self.hyp_thm2,
            self.kq_route.map_or("skipped", KqRoute::name),
            self.bn_verdict.map_or("skipped", SequenceVerdict::name),
            self.empirical_vconvex,
            self.empirical_vconvex_a,
            self.empirical_vconvex_all,
            self.empirical_kq,
            self.notes.join(";"),
        )
    }
}

/// Renders records as CSV with a header line.
pub fn records_to_csv(records: &[ScanRecord]) -> String {
    let mut out = String::from(ScanRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

fn tag(notes: &mut Vec<String>, test: &str, e: &Error) {
    notes.push(format!("{test}:{}", e.name()));
}

fn vconvex(
    spec: &GridSpec,
    variant: RatioVariant,
    p: &ParamSet,
    notes: &mut Vec<String>,
    label: &'static str,
) -> Outcome {
    let map = CurveMap::Ratio {
        variant,
        form: RatioForm::Moment,
        params: *p,
    };
    let result = boundary_curve(&map, spec.radius, spec.samples)
        .and_then(|curve| vertical_convexity_check(&curve, DEFAULT_FLAT_TOL));
    match result {
        Ok(v) => Outcome::from_bool(v.pass),
        Err(e) => {
            tag(notes, label, &e);
            Outcome::Skipped(e.name())
        }
    }
}

fn scan_point(spec: &GridSpec, a: f64, b: f64, c: f64, q: f64) -> ScanRecord {
    let mut notes = Vec::new();
    let skipped = |why| Outcome::Skipped(why);
    let params = match ParamSet::new(a, b, c, q) {
        Ok(p) => p,
        Err(e) => {
            notes.push(format!("params:{}", e.name()));
            return ScanRecord {
                params: ParamSet { a, b, c, q },
                hyp_thm1: false,
                hyp_thm2: false,
                kq_route: None,
                bn_verdict: None,
                empirical_vconvex: skipped("invalid"),
                empirical_vconvex_a: skipped("invalid"),
                empirical_vconvex_all: skipped("invalid"),
                empirical_kq: skipped("invalid"),
                notes,
            };
        }
    };

    let h1 = hypothesis_check(RatioVariant::ShiftBc, &params);
    let h2 = hypothesis_check(RatioVariant::ShiftA, &params);
    notes.extend(h1.violations.iter().map(|v| format!("thm1:{v}")));
    notes.extend(h2.violations.iter().map(|v| format!("thm2:{v}")));

    let kq_route = match kq_conditions_check(&params) {
        Ok(k) => Some(k.route),
        Err(e) => {
            tag(&mut notes, "kq_route", &e);
            None
        }
    };

    let bn_verdict = if spec.tests.bn {
        match bn_sequence(&params, spec.bn_terms) {
            Ok(s) => Some(s.verdict),
            Err(e) => {
                tag(&mut notes, "bn", &e);
                None
            }
        }
    } else {
        None
    };

    let (v1, v2, v3) = if spec.tests.vconvex {
        (
            vconvex(
                spec,
                RatioVariant::ShiftBc,
                &params,
                &mut notes,
                "vconvex_bc",
            ),
            vconvex(spec, RatioVariant::ShiftA, &params, &mut notes, "vconvex_a"),
            vconvex(
                spec,
                RatioVariant::ShiftAll,
                &params,
                &mut notes,
                "vconvex_all",
            ),
        )
    } else {
        (
            skipped("disabled"),
            skipped("disabled"),
            skipped("disabled"),
        )
    };

    let empirical_kq = if spec.tests.kq {
        // validated in GridSpec::validate
        let grid = KqGrid {
            radii: spec.kq_radii,
            angles: spec.kq_angles,
            r_max: spec.kq_r_max,
        };
        match kq_membership_test(&params, &grid) {
            Ok(r) => Outcome::from_bool(r.pass),
            Err(e) => {
                tag(&mut notes, "kq", &e);
                Outcome::Skipped(e.name())
            }
        }
    } else {
        skipped("disabled")
    };

    ScanRecord {
        params,
        hyp_thm1: h1.pass,
        hyp_thm2: h2.pass,
        kq_route,
        bn_verdict,
        empirical_vconvex: v1,
        empirical_vconvex_a: v2,
        empirical_vconvex_all: v3,
        empirical_kq,
        notes,
    }
}

/// One record per grid point, ordered lexicographically by the `(a, b, c, q)`
/// indices. Failures at a point are recorded in its notes.
pub fn scan(spec: &GridSpec) -> Result<Vec<ScanRecord>> {
    spec.validate()?;
    let (na, nb, nc, nq) = (spec.a.steps, spec.b.steps, spec.c.steps, spec.q.steps);
    let records = (0..spec.points())
        .into_par_iter()
        .map(|idx| {
            let iq = idx % nq;
            let ic = (idx / nq) % nc;
            let ib = (idx / (nq * nc)) % nb;
            let ia = idx / (nq * nc * nb);
            debug_assert!(ia < na);
            scan_point(
                spec,
                spec.a.value(ia),
                spec.b.value(ib),
                spec.c.value(ic),
                spec.q.value(iq),
            )
        })
        .collect();
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_figure_two() {
        let spec = GridSpec {
            a: Range::single(0.9),
            b: Range::single(0.7),
            c: Range::single(0.6),
            q: Range::single(0.8),
            ..GridSpec::default()
        };
        let recs = scan(&spec).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].hyp_thm1);
        assert!(!recs[0].soundness_violation());
        assert_eq!(recs[0].empirical_vconvex, Outcome::Pass);
    }

    #[test]
    fn disabled_tests_leave_only_hypotheses() {
        let spec = GridSpec {
            a: Range::single(0.9),
            b: Range::single(0.7),
            c: Range::single(0.6),
            q: Range::new(0.3, 0.8, 2),
            tests: TestFlags::NONE,
            ..GridSpec::default()
        };
        let recs = scan(&spec).unwrap();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            assert_eq!(r.bn_verdict, None);
            assert_eq!(r.empirical_vconvex, Outcome::Skipped("disabled"));
            assert_eq!(r.empirical_kq, Outcome::Skipped("disabled"));
        }
        assert_eq!(recs[0].params.q, 0.3);
        assert_eq!(recs[1].params.q, 0.8);
    }

    #[test]
    fn boundary_a_equals_c_is_flagged() {
        let spec = GridSpec {
            a: Range::new(0.4, 0.8, 3),
            b: Range::single(0.7),
            c: Range::single(0.6),
            q: Range::single(0.8),
            tests: TestFlags::NONE,
            ..GridSpec::default()
        };
        let recs = scan(&spec).unwrap();
        let on_boundary = &recs[1];
        assert!((on_boundary.params.a - 0.6).abs() < 1e-15);
        if on_boundary.params.a == 0.6 {
            assert!(!on_boundary.hyp_thm1);
            assert!(on_boundary.notes.iter().any(|n| n == "thm1:a-c>0"));
        }
        assert!(!recs[0].hyp_thm1);
        assert!(recs[2].hyp_thm1);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = GridSpec {
            a: Range::new(0.0, 1.0, 100),
            b: Range::new(0.0, 1.0, 100),
            c: Range::new(0.0, 0.5, 11),
            q: Range::new(0.1, 0.9, 1),
            ..GridSpec::default()
        };
        assert_eq!(
            scan(&spec).unwrap_err(),
            Error::CapExceeded {
                points: 110_000,
                cap: DEFAULT_CAP
            }
        );
    }

    #[test]
    fn invalid_points_are_recorded_not_fatal() {
        // c = 1 makes every Heine denominator vanish
        let spec = GridSpec {
            c: Range::new(0.5, 1.0, 2),
            tests: TestFlags::NONE,
            ..GridSpec::default()
        };
        let recs = scan(&spec).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].notes, vec!["params:InvalidParameters".to_string()]);
    }

    #[test]
    fn csv_rows_are_stable() {
        let spec = GridSpec {
            q: Range::new(0.2, 0.6, 3),
            samples: 256,
            kq_radii: 8,
            kq_angles: 8,
            ..GridSpec::default()
        };
        let a = records_to_csv(&scan(&spec).unwrap());
        let b = records_to_csv(&scan(&spec).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 4);
    }
}
