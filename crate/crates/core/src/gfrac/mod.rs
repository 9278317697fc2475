//! Continued-fraction and g-fraction expansions of the shifted Heine ratios,
//! their moment sequences and the total-monotonicity test that stands in for
//! the Hausdorff moment characterization.

mod coeffs;
mod fraction;
mod moments;
mod ratio;

pub use coeffs::{
    g_closed_form, hypothesis_check, numerators_from_raw, raw_cfrac_coeffs, HypothesisReport,
    RatioVariant,
};
pub use fraction::{
    gfraction_coeffs, gfraction_eval, GFraction, RatioForm, CUT_TOLERANCE, INITIAL_DEPTH, MAX_DEPTH,
};
pub use moments::{
    ratio_moments, totally_monotone_check, MomentSequence, MonotonicityReport, MAX_MOMENT_ORDER,
};
pub use ratio::{ratio_eval, series_ratio, RatioEvaluator, SERIES_RADIUS};
