use crate::error::{Error, Result};

/// Real parameters `(a, b, c, q)` of a Heine series `Φ[a, b; c; q, z]`.
///
/// Construction enforces `0 < q < 1` and that no factor `1 - c q^m`
/// (`m >= 0`) vanishes, so every coefficient of the series is finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub q: f64,
}

/// Relative distance below which `c q^m` counts as hitting 1.
const POLE_TOLERANCE: f64 = 1e-14;

impl ParamSet {
    pub fn new(a: f64, b: f64, c: f64, q: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && q.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "non-finite parameter in (a={a}, b={b}, c={c}, q={q})"
            )));
        }
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameters(format!("q={q} outside (0, 1)")));
        }
        if let Some(m) = denominator_pole(c, q) {
            return Err(Error::InvalidParameters(format!(
                "c={c} makes 1 - c q^{m} vanish"
            )));
        }
        Ok(ParamSet { a, b, c, q })
    }

    /// Parameters `(a q^i, b q^j, c q^k)` with the same base.
    ///
    /// Shifting `c` up by powers of `q` only removes candidate poles, so the
    /// result is valid whenever `self` is.
    pub fn shifted(&self, i: i32, j: i32, k: i32) -> ParamSet {
        debug_assert!(k >= 0);
        ParamSet {
            a: self.a * self.q.powi(i),
            b: self.b * self.q.powi(j),
            c: self.c * self.q.powi(k),
            q: self.q,
        }
    }

    /// Exponent form: `(q^a, q^b; q^c)` for real exponents.
    pub fn from_exponents(a: f64, b: f64, c: f64, q: f64) -> Result<Self> {
        ParamSet::new(q.powf(a), q.powf(b), q.powf(c), q)
    }
}

/// Smallest `m >= 0` with `c q^m = 1` (within tolerance), if any.
fn denominator_pole(c: f64, q: f64) -> Option<u32> {
    if c < 1.0 - POLE_TOLERANCE {
        return None;
    }
    // c q^m = 1  <=>  m = ln c / ln(1/q)
    let m = (c.ln() / -q.ln()).round();
    if m < 0.0 || m > u32::MAX as f64 {
        return None;
    }
    let m = m as u32;
    let hit = c * q.powi(m as i32);
    ((hit - 1.0).abs() <= POLE_TOLERANCE * 16.0).then_some(m)
}

/// `log_q u = ln u / ln q`, defined for `u > 0`.
pub fn log_q(u: f64, q: f64) -> Result<f64> {
    if u.is_nan() || u <= 0.0 {
        return Err(Error::DomainError(format!("log_q of non-positive {u}")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DomainError(format!("log base q={q} outside (0, 1)")));
    }
    Ok(u.ln() / q.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_base() {
        assert!(ParamSet::new(0.1, 0.2, 0.3, 1.0).is_err());
        assert!(ParamSet::new(0.1, 0.2, 0.3, 0.0).is_err());
        assert!(ParamSet::new(0.1, 0.2, 0.3, f64::NAN).is_err());
    }

    #[test]
    fn rejects_c_at_inverse_powers_of_q() {
        assert!(ParamSet::new(0.1, 0.2, 1.0, 0.5).is_err());
        assert!(ParamSet::new(0.1, 0.2, 4.0, 0.5).is_err());
        assert!(ParamSet::new(0.1, 0.2, 1.0 / 0.7f64.powi(3), 0.7).is_err());
        assert!(ParamSet::new(0.1, 0.2, 3.0, 0.5).is_ok());
        assert!(ParamSet::new(0.1, 0.2, -4.0, 0.5).is_ok());
    }

    #[test]
    fn shift_keeps_base() {
        let p = ParamSet::new(0.9, 0.7, 0.6, 0.8).unwrap();
        let s = p.shifted(1, 1, 2);
        assert_eq!(s.q, 0.8);
        assert!((s.a - 0.72).abs() < 1e-15);
        assert!((s.c - 0.384).abs() < 1e-15);
    }

    #[test]
    fn log_q_domain() {
        assert!(log_q(0.0, 0.5).is_err());
        assert!(log_q(-1.0, 0.5).is_err());
        assert!((log_q(0.25, 0.5).unwrap() - 2.0).abs() < 1e-15);
    }
}
