//! Jackson's q-Gamma function.

use super::pochhammer::{qpoch, Order};
use crate::error::{Error, Result};

/// `Γ_q(x) = (q;q)_∞ (1-q)^{1-x} / (q^x;q)_∞` for `x > 0`.
pub fn q_gamma(x: f64, q: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::DomainError(format!("q-Gamma argument {x} <= 0")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DomainError(format!("q = {q} outside (0, 1)")));
    }
    let num = qpoch(q, q, Order::Infinite);
    let den = qpoch(q.powf(x), q, Order::Infinite);
    Ok(num / den * (1.0 - q).powf(1.0 - x))
}
