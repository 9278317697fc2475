//! Double-double helpers for the computations that cancel badly in `f64`.

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

use super::params::ParamSet;
use super::series::MAX_TERMS;
use crate::error::{Error, Result};

pub(crate) type Dd = TwoFloat;
pub(crate) type Cdd = Complex<TwoFloat>;

pub(crate) fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

pub(crate) fn cdd(z: Complex64) -> Cdd {
    Complex::new(dd(z.re), dd(z.im))
}

/// Reciprocal refined by one Newton step; the crate's own division is only
/// accurate to about `1e-17`.
pub(crate) fn recip(x: Dd) -> Dd {
    let one = dd(1.0);
    let r = one / x;
    r + r * (one - x * r)
}

pub(crate) fn modulus(z: Cdd) -> f64 {
    f64::from(z.norm_sqr()).sqrt()
}

/// `(a, b, c, q)` with shifts applied in double-double arithmetic.
#[derive(Clone, Copy)]
pub(crate) struct Params {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub q: Dd,
}

impl Params {
    pub fn new(p: &ParamSet) -> Self {
        Params {
            a: dd(p.a),
            b: dd(p.b),
            c: dd(p.c),
            q: dd(p.q),
        }
    }

    pub fn shifted(&self, i: i32, j: i32, k: i32) -> Self {
        Params {
            a: self.a * self.q.powi(i),
            b: self.b * self.q.powi(j),
            c: self.c * self.q.powi(k),
            q: self.q,
        }
    }

    /// Ratio `A_{n+1}/A_n` of consecutive Heine coefficients, given `q^n`.
    pub fn coeff_ratio(&self, qn: Dd, n: usize) -> Result<Dd> {
        let one = dd(1.0);
        let num = (one - self.a * qn) * (one - self.b * qn);
        let den = (one - self.c * qn) * (one - self.q * qn);
        if f64::from(den) == 0.0 {
            return Err(Error::DenominatorZero { index: n + 1 });
        }
        Ok(num * recip(den))
    }

    /// Heine coefficients `A_0..A_{len-1}`.
    pub fn coeffs(&self, len: usize) -> Result<Vec<Dd>> {
        let mut out = Vec::with_capacity(len);
        let mut a = dd(1.0);
        let mut qn = dd(1.0);
        for n in 0..len {
            out.push(a);
            a *= self.coeff_ratio(qn, n)?;
            qn *= self.q;
        }
        Ok(out)
    }
}

/// Heine series in double-double arithmetic, summed until three consecutive
/// tail estimates fall below `tol` in absolute value. Also returns the
/// number of terms summed.
pub(crate) fn phi_terms(p: &Params, z: Cdd, tol: f64) -> Result<(Cdd, usize)> {
    let one = dd(1.0);
    let mut sum = Complex::new(dd(0.0), dd(0.0));
    let mut term = Complex::new(one, dd(0.0));
    let mut qn = one;
    let mut small_run = 0;
    let zmod = modulus(z);
    for n in 0..MAX_TERMS {
        sum += term;
        let ratio = p.coeff_ratio(qn, n)?;
        if f64::from(ratio) == 0.0 || zmod == 0.0 {
            return Ok((sum, n + 1));
        }
        term = term * z * ratio;
        let rho = zmod * f64::from(ratio).abs();
        if rho < 1.0 && modulus(term) / (1.0 - rho) < tol {
            small_run += 1;
            if small_run >= 3 {
                return Ok((sum + term, n + 2));
            }
        } else {
            small_run = 0;
        }
        qn *= p.q;
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

pub(crate) fn phi(p: &Params, z: Cdd, tol: f64) -> Result<Cdd> {
    phi_terms(p, z, tol).map(|(v, _)| v)
}
