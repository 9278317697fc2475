//! The shifted ratios `z Φ[..] / Φ[a, b; c]` by series or by g-fraction.

use num_complex::Complex64;

use super::coeffs::RatioVariant;
use super::fraction::{gfraction_coeffs, gfraction_eval, on_unit_cut, GFraction, RatioForm};
use crate::error::{Error, Result};
use crate::qcore::{heine_phi, ParamSet};

/// Below this modulus of the series argument the direct series is used.
pub const SERIES_RADIUS: f64 = 0.9;

const RATIO_TOL: f64 = 1e-14;
const FRACTION_DEPTH: usize = 1024;

/// Argument fed to the Heine series and to the fraction, respectively.
fn arguments(
    variant: RatioVariant,
    form: RatioForm,
    q: f64,
    z: Complex64,
) -> (Complex64, Complex64) {
    match (variant, form) {
        (RatioVariant::ShiftBc, RatioForm::Moment) => (z * q, z),
        (RatioVariant::ShiftBc, RatioForm::Plain) => (z, z / q),
        _ => (z, z),
    }
}

/// `Φ[numerator params](w) / Φ[a, b; c](w)` summed directly.
pub fn series_ratio(
    variant: RatioVariant,
    p: &ParamSet,
    w: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let (i, j, k) = variant.numerator_shift();
    let num = heine_phi(&p.shifted(i, j, k), w, tol)?.value;
    let den = heine_phi(p, w, tol)?.value;
    Ok(num / den)
}

fn shift_all_factor(p: &ParamSet) -> Result<f64> {
    if p.a == 0.0 {
        return Err(Error::DegenerateParameter(
            "a = 0: the shift-all ratio has no g-fraction normalization".into(),
        ));
    }
    if p.b == 1.0 {
        return Err(Error::DegenerateParameter(
            "b = 1 annihilates the shift-a numerator".into(),
        ));
    }
    Ok((1.0 - p.c) / (p.a * (1.0 - p.b)))
}

/// Evaluator for one shifted ratio, with its g-fraction built once.
#[derive(Debug, Clone)]
pub struct RatioEvaluator {
    pub variant: RatioVariant,
    pub form: RatioForm,
    pub params: ParamSet,
    fraction: GFraction,
    factor: Option<f64>,
}

impl RatioEvaluator {
    pub fn new(variant: RatioVariant, form: RatioForm, p: &ParamSet) -> Result<Self> {
        let factor = match variant {
            RatioVariant::ShiftAll => Some(shift_all_factor(p)?),
            _ => None,
        };
        let base = match variant {
            RatioVariant::ShiftBc => RatioVariant::ShiftBc,
            _ => RatioVariant::ShiftA,
        };
        Ok(RatioEvaluator {
            variant,
            form,
            params: *p,
            fraction: gfraction_coeffs(base, p, FRACTION_DEPTH)?,
            factor,
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        let (series_arg, frac_arg) = arguments(self.variant, self.form, self.params.q, z);
        let r = series_arg.norm();
        if r < SERIES_RADIUS || (on_unit_cut(frac_arg) && r < 1.0) {
            return Ok(z * series_ratio(self.variant, &self.params, series_arg, RATIO_TOL)?);
        }
        if on_unit_cut(frac_arg) {
            return Err(Error::CutError { re: z.re, im: z.im });
        }
        let f = gfraction_eval(&self.fraction, frac_arg, RATIO_TOL)?.value;
        Ok(match self.factor {
            Some(k) => (f - 1.0) * k,
            None => z * f,
        })
    }
}

/// The full ratio including the `z` prefactor:
///
/// * `ShiftBc`, moment form: `z Φ[a,bq;cq;q,qz] / Φ[a,b;c;q,qz]`;
///   plain form: `z Φ[a,bq;cq;q,z] / Φ[a,b;c;q,z]`.
/// * `ShiftA`: `z Φ[aq,b;c;q,z] / Φ[a,b;c;q,z]`.
/// * `ShiftAll`: `z Φ[aq,bq;cq;q,z] / Φ[a,b;c;q,z]`, on the fraction route
///   via `(1-c)/(a(1-b)) (Φ[aq,b;c]/Φ[a,b;c] - 1)`.
///
/// The series is used while its argument has modulus below
/// [`SERIES_RADIUS`], the g-fraction elsewhere. Where the fraction's argument
/// lies on its cut but the series still converges, the series is used.
pub fn ratio_eval(
    variant: RatioVariant,
    form: RatioForm,
    p: &ParamSet,
    z: Complex64,
) -> Result<Complex64> {
    RatioEvaluator::new(variant, form, p)?.eval(z)
}
