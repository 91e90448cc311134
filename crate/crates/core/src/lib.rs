//! Numerical laboratory for Bose-Hubbard dynamics.
//!
//! The crate compares exact few-mode quantum evolution with its mean-field
//! and semiclassical limits:
//!
//! * [`exact`]: sector-wise exact evolution of number and coherent states
//! * [`gp`]: the discrete Gross-Pitaevskii equation
//! * [`classical`]: the pendulum and double-well reductions of two-site GP
//! * [`revival`]: the averaged ODE capturing collapse and revival
//! * [`girsanov`]: polynomial generators and the two-site transfer identities
//! * [`fresnel`]: regulated Fresnel quadrature for Trotter-step checks
//!
//! ```
//! use bhlab::{build_two_site_params, exact, InitialState, TimeGrid};
//!
//! let params = build_two_site_params(1.0, 0.5, 40).unwrap();
//! let state = InitialState::number_on_site(2, 0, 40);
//! let grid = TimeGrid::new(1.0, 0.5).unwrap();
//! let series = exact::evolve_number_state(&params, &state, &grid, &Default::default()).unwrap();
//! assert!((series.real("rho1").unwrap()[0] - 1.0).abs() < 1e-12);
//! ```

pub use num_complex::Complex64 as C64;

mod error;
mod model;
mod ode;

pub mod classical;
pub mod exact;
pub mod fresnel;
pub mod girsanov;
pub mod gp;
pub mod revival;

pub use error::{Error, Result};
pub use model::{
    build_two_site_params, validate_state, Column, InitialState, ModelParams, RealMatrix, TimeGrid, TrajectorySeries,
    NORMALIZATION_TOL, SYMMETRY_TOL,
};
pub use ode::Rk4;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/mean-field.md")]
    mod mean_field {}
    #[doc = include_str!("../../../book/src/revival.md")]
    mod revival {}
    #[doc = include_str!("../../../book/src/girsanov.md")]
    mod girsanov {}
    #[doc = include_str!("../../../book/src/fresnel.md")]
    mod fresnel {}
}
