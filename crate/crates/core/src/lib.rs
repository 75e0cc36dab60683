//! Discontinuous Galerkin solver for hyperbolic conservation laws with a
//! multiwavelet troubled-cell indicator.
//!
//! The crate is organised bottom-up:
//!
//! * [`basis`]: scaled Legendre scaling functions, Alpert multiwavelets and
//!   the quadrature mirror filters that connect them
//! * [`transform`]: one-step and full multiwavelet decompositions of DG fields
//! * [`physics`]: advection, Burgers and Euler fluxes with eigen-structure
//! * [`solver`]: modal DG right-hand sides, boundary ghosts, SSP-RK3
//! * [`indicators`]: multiwavelet, KXRCF and Harten troubled-cell detection
//! * [`limiter`]: moment limiter with characteristic and positivity handling
//! * [`harness`]: problem catalogue, experiment runner and CSV outputs

pub mod basis;
pub mod error;
pub mod field;
pub mod harness;
pub mod indicators;
pub mod limiter;
pub mod mesh;
pub mod physics;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use field::{DgField1D, DgField2D};
pub use mesh::{Mesh1D, Mesh2D};
