//! Numerical checks of the geometric statements: K_q membership, the
//! coefficient criterion with `T_1(a, b)`, and boundary convexity.

mod curve;
mod kq;

pub use curve::{
    boundary_curve, full_convexity_check, vertical_convexity_check, BoundaryCurve, CurveMap,
    FullConvexity, VerticalConvexity, DEFAULT_FLAT_TOL, MIN_SAMPLES,
};
pub use kq::{
    bn_sequence, gamma_ratio, kq_conditions_check, kq_membership, kq_membership_test,
    kq_quotient_series, t1_threshold, x_term, Condition, KqConditions, KqGrid, KqReport, KqRoute,
    SequenceClass, SequenceVerdict, BN_TOL, C_EQ_AB_TOL, KQ_TOL,
};
