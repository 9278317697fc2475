//! Gauss hypergeometric function `F(a, b; c; z)` by its power series.

use num_complex::Complex64;

use super::series::{sum_by_ratio, EvalResult};
use crate::error::{Error, Result};

/// `F(a, b; c; z) = sum (a)_n (b)_n / ((c)_n n!) z^n` for `|z| < 1`.
///
/// Terminating series (`a` or `b` a non-positive integer) stop at the first
/// vanishing Pochhammer factor.
pub fn gauss_f(a: f64, b: f64, c: f64, z: Complex64, tol: f64) -> Result<EvalResult> {
    if c <= 0.0 && c == c.round() {
        return Err(Error::DomainError(format!(
            "c = {c} is a non-positive integer"
        )));
    }
    sum_by_ratio(z, tol, |n| {
        let n = n as f64;
        Ok((a + n) * (b + n) / ((c + n) * (n + 1.0)))
    })
}
