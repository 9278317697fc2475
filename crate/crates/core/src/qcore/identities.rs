//! Numerical residuals of the contiguous relations between Heine series.

use num_complex::{Complex, Complex64};

use super::dd::{cdd, dd, modulus, phi, recip, Params};
use super::params::ParamSet;
use crate::error::{Error, Result};

/// Absolute residuals of the four contiguous relations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// `Φ[a,b;c] - Φ[a,bq;cq] - (1-a)(c-b)/((1-c)(1-cq)) z Φ[aq,bq;cq²]`
    pub shift_bc: f64,
    /// `Φ[aq,b;c] - Φ[a,b;c] - a(1-b)/(1-c) z Φ[aq,bq;cq]`
    pub shift_a: f64,
    /// `Φ[aq,b;c] - Φ[a,b;c] - a/(1-a) (Φ(z) - Φ(qz))`
    pub shift_a_difference: f64,
    /// `D_q Φ(z) - (1-a)(1-b)/((1-c)(1-q)) Φ[aq,bq;cq](z)`
    pub q_derivative: f64,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.shift_bc
            .max(self.shift_a)
            .max(self.shift_a_difference)
            .max(self.q_derivative)
    }

    pub fn all_below(&self, tol: f64) -> bool {
        self.max() < tol
    }
}

/// Evaluates both sides of each relation by independent series sums.
///
/// The series and the shifted parameters are computed in double-double
/// arithmetic and each series is truncated once its tail is below `tol`
/// absolutely, so the residuals stay meaningful when `|Φ|` is large.
pub fn verify_identities(p: &ParamSet, z: Complex64, tol: f64) -> Result<IdentityReport> {
    if p.a == 1.0 {
        return Err(Error::DegenerateParameter(
            "a = 1 makes the q-difference form of the shift-a relation singular".into(),
        ));
    }
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
    // the shifted sets only move c to cq and cq²
    for k in [1, 2] {
        ParamSet::new(p.a, p.b, p.c * p.q.powi(k), p.q)?;
    }
    let one = dd(1.0);
    let base_p = Params::new(p);
    let (a, b, c, q) = (base_p.a, base_p.b, base_p.c, base_p.q);
    let w = cdd(z);
    let wq = w * q;

    let base = phi(&base_p, w, tol)?;
    let bc = phi(&base_p.shifted(0, 1, 1), w, tol)?;
    let abc2 = phi(&base_p.shifted(1, 1, 2), w, tol)?;
    let a_up = phi(&base_p.shifted(1, 0, 0), w, tol)?;
    let all_up = phi(&base_p.shifted(1, 1, 1), w, tol)?;
    let base_qz = phi(&base_p, wq, tol)?;

    let k_bc = (one - a) * (c - b) * recip((one - c) * (one - c * q));
    let shift_bc = modulus(base - bc - w * abc2 * k_bc);

    let k_a = a * (one - b) * recip(one - c);
    let shift_a = modulus(a_up - base - w * all_up * k_a);

    let shift_a_difference = modulus(a_up - base - (base - base_qz) * (a * recip(one - a)));

    let k_d = (one - a) * (one - b) * recip((one - c) * (one - q));
    let dq = if z == Complex64::new(0.0, 0.0) {
        Complex::new(k_d, dd(0.0))
    } else {
        (base - base_qz) * w.conj() * recip(w.norm_sqr() * (one - q))
    };
    let q_derivative = modulus(dq - all_up * k_d);

    Ok(IdentityReport {
        shift_bc,
        shift_a,
        shift_a_difference,
        q_derivative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::heine_phi;

    #[test]
    fn figure_two_parameters() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let r = verify_identities(&p, Complex64::new(0.3, 0.0), 1e-15).unwrap();
        assert!(r.all_below(1e-12), "{r:?}");
    }

    #[test]
    fn exact_at_origin() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let r = verify_identities(&p, Complex64::new(0.0, 0.0), 1e-12).unwrap();
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn imaginary_argument() {
        let p = ParamSet::new(0.5, 0.5, 0.25, 0.5).unwrap();
        let r = verify_identities(&p, Complex64::new(0.0, 0.7), 1e-15).unwrap();
        assert!(r.all_below(1e-12), "{r:?}");
    }

    #[test]
    fn detects_wrong_relation() {
        // Residuals are genuinely computed: perturbing the series away from
        // the identity is visible.
        let p = ParamSet::new(0.5, 0.5, 0.25, 0.5).unwrap();
        let z = Complex64::new(0.5, 0.0);
        let good = verify_identities(&p, z, 1e-15).unwrap();
        let skewed = heine_phi(&p, z, 1e-15).unwrap().value
            - heine_phi(&p.shifted(0, 1, 1), z, 1e-15).unwrap().value;
        assert!(good.shift_bc < 1e-13);
        assert!(skewed.norm() > 1e-3);
    }
}
