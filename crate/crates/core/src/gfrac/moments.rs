//! Moment sequences of the ratios and Hausdorff total monotonicity.

use super::coeffs::RatioVariant;
use crate::error::{Error, Result};
use crate::qcore::{DdParams, ParamSet};

/// Largest order for which coefficient extraction is trusted.
pub const MAX_MOMENT_ORDER: usize = 40;

/// Taylor coefficients `m_0..=m_N` of a ratio, read as `m_k = ∫ t^k dμ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub m: Vec<f64>,
}

impl MomentSequence {
    pub fn new(m: Vec<f64>) -> Self {
        MomentSequence { m }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        MomentSequence {
            m: self.m.iter().map(|v| v * factor).collect(),
        }
    }
}

/// Moments of the ratio in its moment normalization:
/// `Φ[a,bq;cq;q,qz]/Φ[a,b;c;q,qz]` for `ShiftBc`, `Φ[aq,b;c]/Φ[a,b;c]` for
/// `ShiftA` and `Φ[aq,bq;cq]/Φ[a,b;c]` for `ShiftAll`, by series division.
///
/// Coefficients and division run in double-double: both series can have
/// coefficients near `1/(q;q)_∞` while the moments are far smaller.
pub fn ratio_moments(variant: RatioVariant, p: &ParamSet, n: usize) -> Result<MomentSequence> {
    if n > MAX_MOMENT_ORDER {
        return Err(Error::DomainError(format!(
            "moment order {n} exceeds {MAX_MOMENT_ORDER}"
        )));
    }
    let (i, j, k) = variant.numerator_shift();
    let base = DdParams::new(p);
    let mut num = base.shifted(i, j, k).coeffs(n + 1)?;
    let mut den = base.coeffs(n + 1)?;
    if variant == RatioVariant::ShiftBc {
        let mut qk = base.q;
        for (nk, dk) in num.iter_mut().zip(den.iter_mut()).skip(1) {
            *nk *= qk;
            *dk *= qk;
            qk *= base.q;
        }
    }
    // den[0] == 1
    let mut m = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num[k];
        for j in 0..k {
            acc -= m[j] * den[k - j];
        }
        m.push(acc);
    }
    Ok(MomentSequence {
        m: m.into_iter().map(f64::from).collect(),
    })
}

/// Outcome of [`totally_monotone_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub pass: bool,
    /// First `(j, k)` with `(-1)^j Δ^j m_k < -tol`, scanning `j` then `k`.
    pub first_violation: Option<(usize, usize)>,
}

/// Checks `(-1)^j (Δ^j m)_k >= -tol` for all `j + k <= N`.
///
/// The check is invariant under positive scaling of `m`, so sequences with
/// `m_0 != 1` are accepted as well.
pub fn totally_monotone_check(m: &MomentSequence, tol: f64) -> MonotonicityReport {
    let mut row = m.m.clone();
    let mut sign = 1.0;
    for j in 0..m.m.len() {
        if let Some(k) = row.iter().position(|&v| sign * v < -tol) {
            return MonotonicityReport {
                pass: false,
                first_violation: Some((j, k)),
            };
        }
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
        sign = -sign;
    }
    MonotonicityReport {
        pass: true,
        first_violation: None,
    }
}
