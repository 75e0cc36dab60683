//! Conservation laws: scalar advection and Burgers for verification, Euler
//! equations with an ideal-gas closure in one and two dimensions.

mod euler;
mod scalar;

pub use euler::{entropy, entropy_measure, Euler1D, Euler2D, GAMMA};
pub use scalar::{Advection, Burgers};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Right eigenvectors `R` (columns), their inverse and the eigenvalues of the
/// flux Jacobian along one axis. Matrices are row-major `n × n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub n: usize,
    pub values: Vec<f64>,
    pub r: Vec<f64>,
    pub r_inv: Vec<f64>,
}

impl EigenSystem {
    /// `out = R^{-1} v`
    pub fn to_characteristic(&self, v: &[f64], out: &mut [f64]) {
        matvec(&self.r_inv, self.n, v, out);
    }

    /// `out = R w`
    pub fn from_characteristic(&self, w: &[f64], out: &mut [f64]) {
        matvec(&self.r, self.n, w, out);
    }

    /// Determinant of `R` divided by the product of its column norms; close
    /// to zero when the eigenvectors are nearly dependent.
    pub fn normalized_det(&self) -> f64 {
        let n = self.n;
        let det = determinant(&self.r, n);
        let mut scale = 1.0;
        for c in 0..n {
            scale *= (0..n).map(|r| self.r[r * n + c].powi(2)).sum::<f64>().sqrt();
        }
        if scale == 0.0 {
            0.0
        } else {
            det / scale
        }
    }
}

pub(crate) fn matvec(m: &[f64], n: usize, v: &[f64], out: &mut [f64]) {
    for r in 0..n {
        out[r] = (0..n).map(|c| m[r * n + c] * v[c]).sum();
    }
}

pub(crate) fn determinant(m: &[f64], n: usize) -> f64 {
    let mut a = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))
            .unwrap();
        if a[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let f = a[r * n + col] / p;
            for c in col..n {
                a[r * n + c] -= f * a[col * n + c];
            }
        }
    }
    det
}

/// A hyperbolic conservation law `u_t + f(u)_x (+ g(u)_y) = 0`.
pub trait ConservationLaw: Send + Sync {
    fn name(&self) -> &'static str;

    fn ncomp(&self) -> usize;

    /// Physical flux along `axis`.
    fn flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) -> Result<()>;

    /// Largest characteristic speed magnitude at `u` along `axis`.
    fn max_wave_speed(&self, u: &[f64], axis: Axis) -> Result<f64>;

    /// Dissipation speed of the local Lax-Friedrichs flux between two traces.
    fn interface_speed(&self, minus: &[f64], plus: &[f64], axis: Axis) -> Result<f64> {
        Ok(self.max_wave_speed(minus, axis)?.max(self.max_wave_speed(plus, axis)?))
    }

    /// Flux and largest wave speed in one evaluation.
    fn flux_and_speed(&self, u: &[f64], axis: Axis, out: &mut [f64]) -> Result<f64> {
        self.flux(u, axis, out)?;
        self.max_wave_speed(u, axis)
    }

    /// Transport velocity used to decide inflow edges.
    fn advective_velocity(&self, u: &[f64], axis: Axis) -> f64;

    /// Analytic flux Jacobian, row-major.
    fn jacobian(&self, u: &[f64], axis: Axis) -> Result<Vec<f64>>;

    /// Eigen-structure for characteristic limiting; `None` for scalar laws.
    fn eigen(&self, _u: &[f64], _axis: Axis) -> Option<Result<EigenSystem>> {
        None
    }

    /// Mirror state across a wall normal to `axis`.
    fn reflect(&self, _u: &mut [f64], _axis: Axis) {}

    /// `(density, pressure, energy)` when positivity matters.
    fn positivity_quantities(&self, _u: &[f64]) -> Option<[f64; 3]> {
        None
    }

    /// Entropy-type indicator quantity `p / ρ^γ`; scalar laws have none.
    fn entropy_measure(&self, _u: &[f64]) -> Option<f64> {
        None
    }

    /// Names of the conserved components, used in CSV output.
    fn component_names(&self) -> Vec<&'static str>;

    /// Optional diagnostic derived quantities (e.g. pressure), name and value.
    fn derived(&self, _u: &[f64]) -> Vec<(&'static str, f64)> {
        Vec::new()
    }
}

/// Local Lax-Friedrichs flux `½(f⁻ + f⁺) - ½ λ (u⁺ - u⁻)`.
pub fn llf_flux(
    law: &dyn ConservationLaw,
    minus: &[f64],
    plus: &[f64],
    axis: Axis,
    scratch: &mut [f64],
    out: &mut [f64],
) -> Result<f64> {
    let n = law.ncomp();
    let lambda = law.flux_and_speed(minus, axis, out)?.max(law.flux_and_speed(plus, axis, scratch)?);
    for c in 0..n {
        out[c] = 0.5 * (out[c] + scratch[c]) - 0.5 * lambda * (plus[c] - minus[c]);
    }
    Ok(lambda)
}

pub(crate) fn invalid_state(msg: String) -> Error {
    Error::InvalidState(msg)
}
