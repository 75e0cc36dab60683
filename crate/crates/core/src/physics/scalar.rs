use super::{Axis, ConservationLaw};
use crate::error::Result;

/// Linear advection `u_t + a u_x + b u_y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Advection {
    pub a: f64,
    pub b: f64,
}

impl Advection {
    pub fn new(a: f64) -> Self {
        Self { a, b: 0.0 }
    }

    fn speed(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.a,
            Axis::Y => self.b,
        }
    }
}

impl ConservationLaw for Advection {
    fn name(&self) -> &'static str {
        "advection"
    }

    fn ncomp(&self) -> usize {
        1
    }

    fn flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) -> Result<()> {
        out[0] = self.speed(axis) * u[0];
        Ok(())
    }

    fn max_wave_speed(&self, _u: &[f64], axis: Axis) -> Result<f64> {
        Ok(self.speed(axis).abs())
    }

    fn advective_velocity(&self, _u: &[f64], axis: Axis) -> f64 {
        self.speed(axis)
    }

    fn jacobian(&self, _u: &[f64], axis: Axis) -> Result<Vec<f64>> {
        Ok(vec![self.speed(axis)])
    }

    fn component_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }
}

/// Inviscid Burgers, `f(u) = g(u) = u²/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Burgers;

impl ConservationLaw for Burgers {
    fn name(&self) -> &'static str {
        "burgers"
    }

    fn ncomp(&self) -> usize {
        1
    }

    fn flux(&self, u: &[f64], _axis: Axis, out: &mut [f64]) -> Result<()> {
        out[0] = 0.5 * u[0] * u[0];
        Ok(())
    }

    fn max_wave_speed(&self, u: &[f64], _axis: Axis) -> Result<f64> {
        Ok(u[0].abs())
    }

    fn advective_velocity(&self, u: &[f64], _axis: Axis) -> f64 {
        u[0]
    }

    fn jacobian(&self, u: &[f64], _axis: Axis) -> Result<Vec<f64>> {
        Ok(vec![u[0]])
    }

    fn component_names(&self) -> Vec<&'static str> {
        vec!["u"]
    }
}
