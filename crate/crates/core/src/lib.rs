//! Numerics for Heine's basic hypergeometric function and the ratios of
//! shifted Heine series.
//!
//! * [`qcore`]: q-shifted factorials, Heine and Gauss series, `D_q`, `Γ_q`.
//! * [`gfrac`]: explicit g-fraction expansions of the three shifted ratios,
//!   their moment sequences and total-monotonicity checks.
//! * [`geomtest`]: K_q membership, the `B_n` coefficient criterion and
//!   boundary-curve convexity tests.
//! * [`scanner`]: parameter sweeps combining all of the above.

pub mod error;
pub mod geomtest;
pub mod gfrac;
pub mod qcore;
pub mod scanner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qcore::{EvalResult, ParamSet, PowerSeries};
