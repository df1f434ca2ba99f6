//! Exact and high-precision machinery for the generalized Stirling numbers
//! `S_{r,s}(n,k)` and Bell numbers `B_{r,s}(n)` that arise when normally
//! ordering boson monomials `((a^dag)^r a^s)^n`.
//!
//! The crate is organised around independent computation routes that must
//! agree with one another:
//!
//! * [`normal_order`] — exact integer tables via the differential-operator
//!   representation, closed forms, and a truncated Fock-space oracle.
//! * [`dobinski`] — Dobinski-type infinite-series representations and
//!   hypergeometric forms, evaluated in high precision with error bounds;
//!   rounding must recover the exact integers.
//! * [`measures`] — weight functions whose power moments are `B_{r,s}(n)`,
//!   verified by adaptive tanh-sinh quadrature.
//! * [`moment_analysis`] — Hankel determinant positivity in exact arithmetic
//!   and saddle-point asymptotics for the (2,1) and (3,1) families.
//! * [`generating_functions`] — exact rational EGF coefficients, the
//!   normally ordered exponential's coherent-state matrix element, and a
//!   growth-order estimator.
//! * [`coherent_states`] — states built on `rho(n) = B_{r,s}(n)` with
//!   normalization, overlaps and the resolution-of-unity moment check.
//!
//! All approximate values carry explicit error bounds ([`ApproxValue`]) and
//! a flag recording whether the bound is a proven majorization. The floating
//! arithmetic itself lives in [`real`], a small arbitrary-precision binary
//! float layer built on `num-bigint`.

pub mod coherent_states;
pub mod dobinski;
pub mod errata;
mod error;
pub mod generating_functions;
pub mod measures;
pub mod moment_analysis;
pub mod normal_order;
pub mod precision;
pub mod real;
pub mod series;
pub mod util;
pub mod verify;

pub use error::Error;
pub use normal_order::{BellSequence, FamilyParams, StirlingTable};
pub use precision::{ApproxComplex, ApproxValue, PrecisionContext};
pub use real::{Complex, Real};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
