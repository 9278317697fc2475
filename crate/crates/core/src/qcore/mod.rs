//! q-Pochhammer symbols, Heine's series, the q-difference operator, Jackson's
//! q-Gamma function and the classical Gauss series used for `q → 1⁻` checks.

mod dd;
mod gamma;
mod gauss;
mod identities;
mod params;
mod pochhammer;
mod series;

pub(crate) use dd::Params as DdParams;
pub use gamma::q_gamma;
pub use gauss::gauss_f;
pub use identities::{verify_identities, IdentityReport};
pub use params::{log_q, ParamSet};
pub use pochhammer::{q_pochhammer, qpoch, Order, PRODUCT_CUTOFF};
pub use series::{
    heine_coeffs, heine_coeffs_real, heine_phi, q_diff, Analytic, EvalResult, HeineFunction,
    PowerSeries, DEFAULT_TOL, MAX_TERMS,
};
