//! g-fractions: construction, evaluation and Taylor expansion.

use num_complex::Complex64;

use super::coeffs::{g_closed_form, numerators_from_raw, raw_cfrac_coeffs, RatioVariant};
use crate::error::{Error, Result};
use crate::qcore::{EvalResult, ParamSet};

/// Starting depth of the backward recurrence.
pub const INITIAL_DEPTH: usize = 32;
/// Depth beyond which evaluation gives up.
pub const MAX_DEPTH: usize = 1 << 16;
/// Distance from the cut that counts as lying on it.
pub const CUT_TOLERANCE: f64 = 1e-12;

const CONSISTENCY_TOL: f64 = 1e-13;

/// Which argument normalization the fraction is evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioForm {
    /// The normalization with a Stieltjes representation on `[0, 1]`:
    /// argument `qz` for [`RatioVariant::ShiftBc`], `z` otherwise.
    Moment,
    /// Plain argument `z` for every variant.
    Plain,
}

/// A g-fraction `1/(1 - p_1 w/(1 - p_2 w/(1 - ...)))` with
/// `p_k = (1 - g_{k-1}) g_k` (shifted by one index for `ShiftBc`, whose
/// fraction starts at `(1 - g_1) g_2`), evaluated at `w = argument_scale * z`.
#[derive(Debug, Clone, PartialEq)]
pub struct GFraction {
    pub variant: RatioVariant,
    pub params: ParamSet,
    /// `g_0..=g_N`.
    pub g: Vec<f64>,
    /// `p_1..`, position `k - 1` holds `p_k`.
    pub partial_numerators: Vec<f64>,
    pub argument_scale: f64,
}

/// Builds the g-fraction of a shifted ratio in its moment normalization and
/// cross-checks the numerators against the raw continued fraction.
///
/// `ShiftAll` reuses the `ShiftA` fraction; the ratio itself is recovered in
/// [`super::ratio_eval`]. Hypotheses are not enforced here.
pub fn gfraction_coeffs(variant: RatioVariant, p: &ParamSet, n: usize) -> Result<GFraction> {
    let n = n.max(2);
    let g = (0..=n)
        .map(|k| g_closed_form(variant, p, k))
        .collect::<Result<Vec<_>>>()?;
    let partial_numerators: Vec<f64> = match variant {
        RatioVariant::ShiftBc => (1..n).map(|k| (1.0 - g[k]) * g[k + 1]).collect(),
        _ => (1..=n).map(|k| (1.0 - g[k - 1]) * g[k]).collect(),
    };

    let raw = raw_cfrac_coeffs(variant, p, n)?;
    let expected = numerators_from_raw(variant, p, &raw);
    for (k, (got, want)) in partial_numerators.iter().zip(&expected).enumerate() {
        if (got - want).abs() > CONSISTENCY_TOL * want.abs().max(1.0) {
            return Err(Error::InconsistentCoefficients {
                index: k + 1,
                got: *got,
                expected: *want,
            });
        }
    }

    Ok(GFraction {
        variant,
        params: *p,
        g,
        partial_numerators,
        argument_scale: 1.0,
    })
}

impl GFraction {
    /// Same fraction, evaluated in the plain argument `z`: for `ShiftBc` the
    /// moment form is in `qz`, so plain evaluation rescales by `1/q`.
    pub fn with_form(mut self, form: RatioForm) -> Self {
        self.argument_scale = match (self.variant, form) {
            (RatioVariant::ShiftBc, RatioForm::Plain) => 1.0 / self.params.q,
            _ => 1.0,
        };
        self
    }

    /// `p_k` for any `k >= 1`, from storage or the closed forms.
    pub fn numerator(&self, k: usize) -> Result<f64> {
        if let Some(&v) = self.partial_numerators.get(k - 1) {
            return Ok(v);
        }
        let g = |i| g_closed_form(self.variant, &self.params, i);
        Ok(match self.variant {
            RatioVariant::ShiftBc => (1.0 - g(k)?) * g(k + 1)?,
            _ => (1.0 - g(k - 1)?) * g(k)?,
        })
    }

    fn numerators(&self, depth: usize) -> Result<Vec<f64>> {
        (1..=depth).map(|k| self.numerator(k)).collect()
    }

    /// Point on the cut `[1, ∞)` of the fraction's own argument.
    pub fn on_cut(&self, z: Complex64) -> bool {
        on_unit_cut(z * self.argument_scale)
    }

    /// First `n + 1` Taylor coefficients in the fraction's own argument,
    /// obtained by running the backward recurrence on truncated power series.
    pub fn taylor_coeffs(&self, n: usize) -> Result<Vec<f64>> {
        let p = self.numerators(n.max(1))?;
        // u_{k} = 1 - p_k w / u_{k+1}, u_{n+1} = 1
        let mut u = vec![0.0; n + 1];
        u[0] = 1.0;
        for k in (1..=p.len()).rev() {
            let inv = invert(&u);
            let mut next = vec![0.0; n + 1];
            next[0] = 1.0;
            for j in 1..=n {
                next[j] -= p[k - 1] * inv[j - 1];
            }
            u = next;
        }
        Ok(invert(&u))
    }
}

pub(crate) fn on_unit_cut(w: Complex64) -> bool {
    w.im.abs() <= CUT_TOLERANCE && w.re >= 1.0 - CUT_TOLERANCE
}

/// Reciprocal of a real power series with nonzero constant term.
fn invert(s: &[f64]) -> Vec<f64> {
    let n = s.len();
    let mut out = vec![0.0; n];
    out[0] = 1.0 / s[0];
    for k in 1..n {
        let acc: f64 = (1..=k).map(|j| s[j] * out[k - j]).sum();
        out[k] = -acc / s[0];
    }
    out
}

fn numerators_to<'a>(
    gf: &'a GFraction,
    depth: usize,
    extra: &'a mut Vec<f64>,
) -> Result<&'a [f64]> {
    if depth <= gf.partial_numerators.len() {
        return Ok(&gf.partial_numerators[..depth]);
    }
    if extra.is_empty() {
        extra.extend_from_slice(&gf.partial_numerators);
    }
    for k in extra.len() + 1..=depth {
        extra.push(gf.numerator(k)?);
    }
    Ok(&extra[..depth])
}

fn backward(p: &[f64], w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut u = one;
    for &pk in p.iter().rev() {
        u = one - w * pk / u;
    }
    one / u
}

/// Evaluates the fraction at `z` by backward recurrence, doubling the depth
/// from 32 until consecutive values agree to `tol`.
pub fn gfraction_eval(gf: &GFraction, z: Complex64, tol: f64) -> Result<EvalResult> {
    let w = z * gf.argument_scale;
    if on_unit_cut(w) {
        return Err(Error::CutError { re: z.re, im: z.im });
    }
    if w == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult {
            value: Complex64::new(1.0, 0.0),
            terms_used: 0,
            est_error: 0.0,
        });
    }
    // stored numerators are used in place; deeper ones are generated once
    let mut extra: Vec<f64> = Vec::new();
    let mut depth = INITIAL_DEPTH;
    let mut prev = backward(numerators_to(gf, depth, &mut extra)?, w);
    while depth < MAX_DEPTH {
        depth *= 2;
        let cur = backward(numerators_to(gf, depth, &mut extra)?, w);
        let diff = (cur - prev).norm();
        if cur.is_finite() && diff < tol * cur.norm().max(1.0) {
            return Ok(EvalResult {
                value: cur,
                terms_used: depth,
                est_error: diff,
            });
        }
        prev = cur;
    }
    Err(Error::NoConvergence { terms: MAX_DEPTH })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::heine_phi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_fraction_is_one() {
        let p = ParamSet::new(0.5, 0.5, 0.2, 0.5).unwrap();
        let mut gf = gfraction_coeffs(RatioVariant::ShiftA, &p, 8).unwrap();
        gf.partial_numerators = vec![0.0; 1 << 17];
        let v = gfraction_eval(&gf, c(0.7, -0.4), 1e-14).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
    }

    #[test]
    fn origin_is_one() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 8).unwrap();
        assert_eq!(
            gfraction_eval(&gf, c(0.0, 0.0), 1e-14).unwrap().value,
            c(1.0, 0.0)
        );
    }

    #[test]
    fn shift_a_against_series_ratio() {
        let p = ParamSet::new(0.99, 0.998, 0.98, 0.9).unwrap();
        let gf = gfraction_coeffs(RatioVariant::ShiftA, &p, 16).unwrap();
        let z = c(0.5, 0.0);
        let got = gfraction_eval(&gf, z, 1e-14).unwrap().value;
        let want = heine_phi(&p.shifted(1, 0, 0), z, 1e-15).unwrap().value
            / heine_phi(&p, z, 1e-15).unwrap().value;
        assert!((got - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn numerators_are_products_of_g() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 10).unwrap();
        assert!((gf.partial_numerators[0] - 0.25 * 0.08 / 0.52).abs() < 1e-15);
        for k in 1..9 {
            let stored = gf.partial_numerators[k - 1];
            let closed = (1.0 - gf.g[k]) * gf.g[k + 1];
            assert_eq!(stored, closed);
        }
        // beyond storage the closed form continues the same sequence
        let long = gfraction_coeffs(RatioVariant::ShiftBc, &p, 40).unwrap();
        assert!((gf.numerator(25).unwrap() - long.partial_numerators[24]).abs() < 1e-16);
    }

    #[test]
    fn cut_is_rejected() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 8).unwrap();
        assert!(matches!(
            gfraction_eval(&gf, c(1.0, 0.0), 1e-14),
            Err(Error::CutError { .. })
        ));
        assert!(matches!(
            gfraction_eval(&gf, c(3.0, 0.0), 1e-14),
            Err(Error::CutError { .. })
        ));
        // plain form moves the cut to [q, inf)
        let plain = gf.clone().with_form(RatioForm::Plain);
        assert!(matches!(
            gfraction_eval(&plain, c(0.85, 0.0), 1e-14),
            Err(Error::CutError { .. })
        ));
        assert!(gfraction_eval(&gf, c(0.85, 0.0), 1e-14).is_ok());
    }

    #[test]
    fn plain_form_matches_plain_series() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let gf = gfraction_coeffs(RatioVariant::ShiftBc, &p, 8)
            .unwrap()
            .with_form(RatioForm::Plain);
        let z = c(0.3, 0.4);
        let got = gfraction_eval(&gf, z, 1e-14).unwrap().value;
        let want = heine_phi(&p.shifted(0, 1, 1), z, 1e-15).unwrap().value
            / heine_phi(&p, z, 1e-15).unwrap().value;
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn taylor_expansion_of_constant_tail() {
        // 1/(1 - p z) with a single numerator is a geometric series
        let p = ParamSet::new(0.5, 0.5, 0.2, 0.5).unwrap();
        let mut gf = gfraction_coeffs(RatioVariant::ShiftA, &p, 4).unwrap();
        gf.partial_numerators = vec![0.3, 0.0, 0.0, 0.0, 0.0, 0.0];
        let t = gf.taylor_coeffs(5).unwrap();
        for (k, v) in t.iter().enumerate() {
            assert!((v - 0.3f64.powi(k as i32)).abs() < 1e-15);
        }
    }
}
