//! Modal DG discretisation, boundary ghosts, projection and time stepping.

mod boundary;
mod ops;
mod project;
mod rhs1d;
mod rhs2d;
mod rk;

pub use boundary::{Boundary1D, Boundary2D, BoundaryKind, Ghost, GhostFn, Side};
pub use ops::ElementOps;
pub use project::{project_1d, project_1d_with, project_2d};
pub use rhs1d::Dg1D;
pub use rhs2d::{Dg2D, Face};
pub use rk::{ssp_rk3_step, Coefficients, StageInfo, StagePolicy};

pub(crate) use ops::dot;
pub(crate) use rhs1d::element_error;

use crate::error::{Error, Result};

/// `CFL · h / speed`, capped by `max_dt` when the field is at rest.
pub fn compute_dt(cfl: f64, h: f64, max_speed: f64, max_dt: f64) -> Result<f64> {
    if !(cfl > 0.0) {
        return Err(Error::invalid(format!("CFL must be positive, got {cfl}")));
    }
    if !max_speed.is_finite() {
        return Err(Error::InvalidState(format!("non-finite wave speed {max_speed}")));
    }
    if max_speed <= 0.0 {
        return Ok(max_dt);
    }
    Ok((cfl * h / max_speed).min(max_dt))
}

/// Shortens `dt` so the step lands exactly on `stop`; a step that would leave
/// a sliver shorter than a millionth of `dt` is stretched to `stop` instead.
pub fn clip_dt(dt: f64, t: f64, stop: f64) -> f64 {
    let remaining = stop - t;
    if dt >= remaining || remaining - dt < 1e-6 * dt {
        remaining
    } else {
        dt
    }
}
