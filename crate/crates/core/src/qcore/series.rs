//! Power series, Heine's series and the q-difference operator.

use num_complex::Complex64;

use super::dd;
use super::params::ParamSet;
use crate::error::{Error, Result};

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: usize = 100_000;

/// Default relative stopping tolerance for series summation.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Ratio of largest term to sum above which [`heine_phi`] re-sums in
/// double-double arithmetic.
pub const CANCELLATION_LIMIT: f64 = 1e3;

/// Truncated power series `A_0 + A_1 z + ... + A_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    pub coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs at least A_0");
        PowerSeries { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        PowerSeries { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of the polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Coefficients of `self / den` up to order `n`.
    ///
    /// Uses the triangular recurrence `Q_k = (N_k - sum_{j<k} Q_j D_{k-j}) / D_0`.
    pub fn divide(&self, den: &PowerSeries, n: usize) -> Result<PowerSeries> {
        let d0 = den.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::DenominatorZero { index: 0 });
        }
        let zero = Complex64::new(0.0, 0.0);
        let at = |s: &PowerSeries, k: usize| s.coeffs.get(k).copied().unwrap_or(zero);
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = at(self, k);
            for (j, o) in out.iter().enumerate() {
                acc -= *o * at(den, k - j);
            }
            out.push(acc / d0);
        }
        Ok(PowerSeries { coeffs: out })
    }
}

/// Value of a summed series together with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Absolute bound on the neglected tail.
    pub est_error: f64,
}

/// A function that can be evaluated near the origin and knows `f'(0)`.
pub trait Analytic {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    fn derivative_at_zero(&self) -> Result<Complex64>;
}

impl Analytic for PowerSeries {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(PowerSeries::eval(self, z))
    }

    fn derivative_at_zero(&self) -> Result<Complex64> {
        Ok(self.coeffs.get(1).copied().unwrap_or_default())
    }
}

/// `z ↦ Φ[a, b; c; q, z]` as an [`Analytic`] function.
#[derive(Debug, Clone, Copy)]
pub struct HeineFunction {
    pub params: ParamSet,
    pub tol: f64,
}

impl HeineFunction {
    pub fn new(params: ParamSet) -> Self {
        HeineFunction {
            params,
            tol: DEFAULT_TOL,
        }
    }
}

impl Analytic for HeineFunction {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        heine_phi(&self.params, z, self.tol).map(|r| r.value)
    }

    fn derivative_at_zero(&self) -> Result<Complex64> {
        let c = heine_coeffs(&self.params, 1)?;
        Ok(c.coeffs[1])
    }
}

/// Ratio `A_{n+1} / A_n` of consecutive Heine coefficients.
#[inline]
fn heine_ratio(p: &ParamSet, qn: f64, n: usize) -> Result<f64> {
    let den = 1.0 - p.c * qn;
    if den.abs() < f64::EPSILON {
        return Err(Error::DenominatorZero { index: n });
    }
    Ok((1.0 - p.a * qn) * (1.0 - p.b * qn) / (den * (1.0 - qn * p.q)))
}

/// Real coefficients `(a;q)_n (b;q)_n / ((c;q)_n (q;q)_n)` for `0 <= n <= len-1`.
pub fn heine_coeffs_real(p: &ParamSet, len: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(len);
    let mut coeff = 1.0;
    let mut qn = 1.0;
    for n in 0..len {
        out.push(coeff);
        if n + 1 < len {
            coeff *= heine_ratio(p, qn, n)?;
            qn *= p.q;
        }
    }
    Ok(out)
}

/// The first `n + 1` coefficients of `Φ[a, b; c; q, z]`.
pub fn heine_coeffs(p: &ParamSet, n: usize) -> Result<PowerSeries> {
    Ok(PowerSeries::from_real(&heine_coeffs_real(p, n + 1)?))
}

/// Sums `sum_n t_n z^n` where `t_0 = 1` and `t_{n+1} = t_n * ratio(n)`.
///
/// Stops once three consecutive terms fall below `tol * |sum|`, or as soon as
/// a coefficient ratio is exactly zero (terminating series).
pub(crate) fn sum_by_ratio(
    z: Complex64,
    tol: f64,
    ratio: impl FnMut(usize) -> Result<f64>,
) -> Result<EvalResult> {
    sum_tracking_terms(z, tol, ratio).map(|(r, _)| r)
}

/// [`sum_by_ratio`] that also reports the largest term modulus.
fn sum_tracking_terms(
    z: Complex64,
    tol: f64,
    mut ratio: impl FnMut(usize) -> Result<f64>,
) -> Result<(EvalResult, f64)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::DomainError(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if z.norm() >= 1.0 {
        return Err(Error::DomainError(format!(
            "|z| = {} outside the unit disk",
            z.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok((
            EvalResult {
                value: one,
                terms_used: 1,
                est_error: 0.0,
            },
            1.0,
        ));
    }

    // Neumaier-compensated complex summation.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut term = one;
    let mut small_run = 0;
    let mut max_term: f64 = 1.0;
    let mut n = 0;
    loop {
        max_term = max_term.max(term.norm());
        let t = sum + term;
        comp.re += neumaier(sum.re, term.re, t.re);
        comp.im += neumaier(sum.im, term.im, t.im);
        sum = t;

        let total = sum + comp;
        if term.norm() <= tol * total.norm() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let r = ratio(n)?;
        if r == 0.0 {
            return Ok((
                EvalResult {
                    value: total,
                    terms_used: n + 1,
                    est_error: 0.0,
                },
                max_term,
            ));
        }
        if small_run >= 3 {
            let rho = z.norm() * r.abs().max(1.0);
            let est_error = if rho < 1.0 {
                term.norm() * rho / (1.0 - rho)
            } else {
                f64::INFINITY
            };
            return Ok((
                EvalResult {
                    value: total,
                    terms_used: n + 1,
                    est_error,
                },
                max_term,
            ));
        }
        n += 1;
        if n >= MAX_TERMS {
            return Err(Error::NoConvergence { terms: MAX_TERMS });
        }
        term *= z * r;
    }
}

#[inline]
fn neumaier(sum: f64, term: f64, t: f64) -> f64 {
    if sum.abs() >= term.abs() {
        (sum - t) + term
    } else {
        (term - t) + sum
    }
}

/// `Φ[a, b; c; q, z]` for `|z| < 1`.
///
/// When the largest term exceeds the sum by more than [`CANCELLATION_LIMIT`],
/// the series is summed again in double-double arithmetic.
pub fn heine_phi(p: &ParamSet, z: Complex64, tol: f64) -> Result<EvalResult> {
    let mut qn = 1.0;
    let (r, max_term) = sum_tracking_terms(z, tol, |n| {
        let r = heine_ratio(p, qn, n)?;
        qn *= p.q;
        Ok(r)
    })?;
    if max_term <= CANCELLATION_LIMIT * r.value.norm() {
        return Ok(r);
    }
    let abs_tol = tol * r.value.norm().max(f64::EPSILON * max_term);
    let (v, terms_used) = dd::phi_terms(&dd::Params::new(p), dd::cdd(z), abs_tol)?;
    Ok(EvalResult {
        value: Complex64::new(v.re.into(), v.im.into()),
        terms_used,
        est_error: abs_tol,
    })
}

/// The q-difference operator `(f(z) - f(qz)) / (z (1 - q))`, equal to `f'(0)`
/// at the origin.
pub fn q_diff(f: &impl Analytic, q: f64, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return f.derivative_at_zero();
    }
    let fz = f.eval(z)?;
    let fqz = f.eval(z * q)?;
    Ok((fz - fqz) / (z * (1.0 - q)))
}
