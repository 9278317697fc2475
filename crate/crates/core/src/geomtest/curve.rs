//! Boundary curves `w_k = F(r e^{2πik/M})` and their convexity tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfrac::{RatioEvaluator, RatioForm, RatioVariant};
use crate::qcore::{gauss_f, heine_phi, ParamSet};

/// Fewest samples accepted on a boundary curve.
pub const MIN_SAMPLES: usize = 256;
/// Default flat-difference tolerance, relative to the curve diameter.
pub const DEFAULT_FLAT_TOL: f64 = 1e-9;

const MAP_TOL: f64 = 1e-14;
// near |z| = 1 the Gauss tail exceeds the last term by about 1/(1 - |z|)
const GAUSS_TOL: f64 = 1e-17;
const CHUNK: usize = 128;

/// Analytic maps whose boundary curves can be sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveMap {
    Identity,
    /// One of the shifted ratios, with its `z` prefactor.
    Ratio {
        variant: RatioVariant,
        form: RatioForm,
        params: ParamSet,
    },
    /// `z Φ[a, b; c; q, z]`.
    ZPhi(ParamSet),
    /// `z F(a+1, b; c; z) / F(a, b; c; z)`.
    GaussShift {
        a: f64,
        b: f64,
        c: f64,
    },
}

enum Evaluator {
    Identity,
    Ratio(Box<RatioEvaluator>),
    ZPhi(ParamSet),
    GaussShift(f64, f64, f64),
}

impl Evaluator {
    fn new(map: &CurveMap) -> Result<Self> {
        Ok(match *map {
            CurveMap::Identity => Evaluator::Identity,
            CurveMap::Ratio {
                variant,
                form,
                params,
            } => Evaluator::Ratio(Box::new(RatioEvaluator::new(variant, form, &params)?)),
            CurveMap::ZPhi(p) => Evaluator::ZPhi(p),
            CurveMap::GaussShift { a, b, c } => Evaluator::GaussShift(a, b, c),
        })
    }

    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let w = match self {
            Evaluator::Identity => z,
            Evaluator::Ratio(r) => r.eval(z)?,
            Evaluator::ZPhi(p) => z * heine_phi(p, z, MAP_TOL)?.value,
            Evaluator::GaussShift(a, b, c) => {
                z * gauss_f(a + 1.0, *b, *c, z, GAUSS_TOL)?.value
                    / gauss_f(*a, *b, *c, z, GAUSS_TOL)?.value
            }
        };
        if w.is_finite() {
            Ok(w)
        } else {
            Err(Error::DomainError(format!(
                "non-finite map value at z = {z}"
            )))
        }
    }
}

impl CurveMap {
    /// Evaluates the map at one point.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Evaluator::new(self)?.eval(z)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub r: f64,
    pub samples: Vec<Complex64>,
}

impl BoundaryCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `θ_k = 2πk/M`.
    pub fn theta(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.samples.len() as f64
    }

    /// Largest distance between two samples.
    pub fn diameter(&self) -> f64 {
        let hull = convex_hull(&self.samples);
        let n = hull.len();
        if n < 3 {
            return hull
                .first()
                .zip(hull.last())
                .map_or(0.0, |(a, b)| (a - b).norm());
        }
        // rotating calipers over antipodal pairs
        let area = |a: Complex64, b: Complex64, c: Complex64| cross(b - a, c - a).abs();
        let mut best: f64 = 0.0;
        let mut j = 1;
        for i in 0..n {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            while area(a, b, hull[(j + 1) % n]) > area(a, b, hull[j]) {
                j = (j + 1) % n;
            }
            best = best.max((a - hull[j]).norm()).max((b - hull[j]).norm());
        }
        best
    }

    /// Same curve with every sample transformed.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        BoundaryCurve {
            r: self.r,
            samples: self.samples.iter().map(|&w| f(w)).collect(),
        }
    }
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Counter-clockwise convex hull without collinear points.
fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(
                    hull[hull.len() - 1] - hull[hull.len() - 2],
                    p - hull[hull.len() - 2],
                ) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Samples `map` at `M` equally spaced points of `|z| = r`. The first failing
/// sample (lowest index) is reported.
pub fn boundary_curve(map: &CurveMap, r: f64, m: usize) -> Result<BoundaryCurve> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::DomainError(format!(
            "radius must lie in (0, 1), got {r}"
        )));
    }
    if m < MIN_SAMPLES {
        return Err(Error::DomainError(format!(
            "need at least {MIN_SAMPLES} samples, got {m}"
        )));
    }
    let ev = Evaluator::new(map)?;
    let mut samples = Vec::with_capacity(m);
    // chunks keep the reported failure deterministic and stop early
    for start in (0..m).step_by(CHUNK) {
        let raw: Vec<Result<Complex64>> = (start..(start + CHUNK).min(m))
            .into_par_iter()
            .map(|k| ev.eval(Complex64::from_polar(r, 2.0 * PI * k as f64 / m as f64)))
            .collect();
        for (offset, s) in raw.into_iter().enumerate() {
            match s {
                Ok(w) => samples.push(w),
                Err(e) => {
                    return Err(Error::CurveSample {
                        index: start + offset,
                        source: Box::new(e),
                    })
                }
            }
        }
    }
    Ok(BoundaryCurve { r, samples })
}

/// Cyclic sign changes of a sequence with zeros already removed.
fn cyclic_sign_changes(signs: &[bool]) -> usize {
    let n = signs.len();
    (0..n).filter(|&i| signs[i] != signs[(i + 1) % n]).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerticalConvexity {
    pub pass: bool,
    pub extrema_count: usize,
}

/// Counts the cyclic sign changes of `Re w_{k+1} - Re w_k`, dropping
/// differences below `tol` times the diameter. Passes on exactly two.
pub fn vertical_convexity_check(curve: &BoundaryCurve, tol: f64) -> Result<VerticalConvexity> {
    let s = &curve.samples;
    let m = s.len();
    if m < 3 {
        return Err(Error::DegenerateCurve);
    }
    let floor = tol * curve.diameter();
    let signs: Vec<bool> = (0..m)
        .map(|k| s[(k + 1) % m].re - s[k].re)
        .filter(|d| d.abs() > floor)
        .map(|d| d > 0.0)
        .collect();
    if signs.is_empty() {
        return Err(Error::DegenerateCurve);
    }
    let extrema_count = cyclic_sign_changes(&signs);
    Ok(VerticalConvexity {
        pass: extrema_count == 2,
        extrema_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FullConvexity {
    pub pass: bool,
    pub inflections: usize,
}

/// Sign changes of the turning direction
/// `(w_{k+1} - w_k) × (w_{k+2} - w_{k+1})`. The cross product is normalized by
/// the two edge lengths, and turns with `|sin| <= tol` count as straight.
pub fn full_convexity_check(curve: &BoundaryCurve, tol: f64) -> Result<FullConvexity> {
    let s = &curve.samples;
    let m = s.len();
    if m < 3 {
        return Err(Error::DegenerateCurve);
    }
    let signs: Vec<bool> = (0..m)
        .filter_map(|k| {
            let e1 = s[(k + 1) % m] - s[k];
            let e2 = s[(k + 2) % m] - s[(k + 1) % m];
            let len = e1.norm() * e2.norm();
            if len == 0.0 {
                return None;
            }
            let sin = (e1.re * e2.im - e1.im * e2.re) / len;
            (sin.abs() > tol).then_some(sin > 0.0)
        })
        .collect();
    if signs.is_empty() {
        return Err(Error::DegenerateCurve);
    }
    let inflections = cyclic_sign_changes(&signs);
    Ok(FullConvexity {
        pass: inflections == 0,
        inflections,
    })
}
