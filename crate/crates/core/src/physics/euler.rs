use super::{invalid_state, Axis, ConservationLaw, EigenSystem};
use crate::error::Result;

/// Ratio of specific heats used by every Euler problem in this crate.
pub const GAMMA: f64 = 1.4;

/// `ln(p / ρ^γ)`.
pub fn entropy(rho: f64, p: f64, gamma: f64) -> Result<f64> {
    if !(rho > 0.0 && p > 0.0) {
        return Err(invalid_state(format!("entropy needs rho > 0, p > 0 (rho={rho}, p={p})")));
    }
    Ok((p / rho.powf(gamma)).ln())
}

/// `p / ρ^γ`, the exponential of [`entropy`]. Defined for any `ρ > 0`.
pub fn entropy_measure(rho: f64, p: f64, gamma: f64) -> f64 {
    p / rho.abs().powf(gamma)
}

/// One-dimensional Euler equations, `u = (ρ, ρu, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler1D {
    pub gamma: f64,
}

impl Default for Euler1D {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

impl Euler1D {
    pub fn new(gamma: f64) -> Self {
        Self { gamma }
    }

    pub fn pressure(&self, u: &[f64]) -> f64 {
        (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
    }

    /// Conserved state from `(ρ, u, p)`.
    pub fn conserved(&self, rho: f64, vel: f64, p: f64) -> [f64; 3] {
        [rho, rho * vel, p / (self.gamma - 1.0) + 0.5 * rho * vel * vel]
    }

    /// `(ρ, u, p)` after validating positivity.
    pub fn primitive(&self, u: &[f64]) -> Result<(f64, f64, f64)> {
        let rho = u[0];
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(invalid_state(format!("density {rho}")));
        }
        let p = self.pressure(u);
        if !(p > 0.0) || !p.is_finite() {
            return Err(invalid_state(format!("pressure {p} (rho={rho})")));
        }
        Ok((rho, u[1] / rho, p))
    }

    pub fn sound_speed(&self, u: &[f64]) -> Result<f64> {
        let (rho, _, p) = self.primitive(u)?;
        Ok((self.gamma * p / rho).sqrt())
    }
}

impl ConservationLaw for Euler1D {
    fn name(&self) -> &'static str {
        "euler1d"
    }

    fn ncomp(&self) -> usize {
        3
    }

    fn flux(&self, u: &[f64], _axis: Axis, out: &mut [f64]) -> Result<()> {
        let (_, vel, p) = self.primitive(u)?;
        out[0] = u[1];
        out[1] = u[1] * vel + p;
        out[2] = vel * (u[2] + p);
        Ok(())
    }

    fn max_wave_speed(&self, u: &[f64], _axis: Axis) -> Result<f64> {
        let (rho, vel, p) = self.primitive(u)?;
        Ok(vel.abs() + (self.gamma * p / rho).sqrt())
    }

    fn flux_and_speed(&self, u: &[f64], _axis: Axis, out: &mut [f64]) -> Result<f64> {
        let (rho, vel, p) = self.primitive(u)?;
        out[0] = u[1];
        out[1] = u[1] * vel + p;
        out[2] = vel * (u[2] + p);
        Ok(vel.abs() + (self.gamma * p / rho).sqrt())
    }

    fn advective_velocity(&self, u: &[f64], _axis: Axis) -> f64 {
        u[1] / u[0]
    }

    fn jacobian(&self, u: &[f64], _axis: Axis) -> Result<Vec<f64>> {
        let (rho, v, p) = self.primitive(u)?;
        let g = self.gamma;
        let h = (u[2] + p) / rho;
        Ok(vec![
            0.0,
            1.0,
            0.0,
            0.5 * (g - 3.0) * v * v,
            (3.0 - g) * v,
            g - 1.0,
            v * (0.5 * (g - 1.0) * v * v - h),
            h - (g - 1.0) * v * v,
            g * v,
        ])
    }

    fn eigen(&self, u: &[f64], _axis: Axis) -> Option<Result<EigenSystem>> {
        Some(self.primitive(u).map(|(rho, v, p)| {
            let g = self.gamma;
            let c = (g * p / rho).sqrt();
            let h = (u[2] + p) / rho;
            let b1 = (g - 1.0) / (c * c);
            let b2 = 0.5 * b1 * v * v;
            let r = vec![
                1.0,
                1.0,
                1.0,
                v - c,
                v,
                v + c,
                h - v * c,
                0.5 * v * v,
                h + v * c,
            ];
            let r_inv = vec![
                0.5 * (b2 + v / c),
                -0.5 * (b1 * v + 1.0 / c),
                0.5 * b1,
                1.0 - b2,
                b1 * v,
                -b1,
                0.5 * (b2 - v / c),
                -0.5 * (b1 * v - 1.0 / c),
                0.5 * b1,
            ];
            EigenSystem { n: 3, values: vec![v - c, v, v + c], r, r_inv }
        }))
    }

    fn reflect(&self, u: &mut [f64], _axis: Axis) {
        u[1] = -u[1];
    }

    fn positivity_quantities(&self, u: &[f64]) -> Option<[f64; 3]> {
        Some([u[0], self.pressure(u), u[2]])
    }

    fn entropy_measure(&self, u: &[f64]) -> Option<f64> {
        Some(entropy_measure(u[0], self.pressure(u), self.gamma))
    }

    fn component_names(&self) -> Vec<&'static str> {
        vec!["rho", "rhou", "E"]
    }

    fn derived(&self, u: &[f64]) -> Vec<(&'static str, f64)> {
        vec![("u", u[1] / u[0]), ("p", self.pressure(u))]
    }
}

/// Two-dimensional Euler equations, `u = (ρ, ρu, ρv, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler2D {
    pub gamma: f64,
}

impl Default for Euler2D {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

fn normal(axis: Axis) -> (f64, f64) {
    match axis {
        Axis::X => (1.0, 0.0),
        Axis::Y => (0.0, 1.0),
    }
}

impl Euler2D {
    pub fn new(gamma: f64) -> Self {
        Self { gamma }
    }

    pub fn pressure(&self, u: &[f64]) -> f64 {
        (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }

    /// Conserved state from `(ρ, u, v, p)`.
    pub fn conserved(&self, rho: f64, vx: f64, vy: f64, p: f64) -> [f64; 4] {
        [rho, rho * vx, rho * vy, p / (self.gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy)]
    }

    /// `(ρ, u, v, p)` after validating positivity.
    pub fn primitive(&self, u: &[f64]) -> Result<(f64, f64, f64, f64)> {
        let rho = u[0];
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(invalid_state(format!("density {rho}")));
        }
        let p = self.pressure(u);
        if !(p > 0.0) || !p.is_finite() {
            return Err(invalid_state(format!("pressure {p} (rho={rho})")));
        }
        Ok((rho, u[1] / rho, u[2] / rho, p))
    }
}

impl ConservationLaw for Euler2D {
    fn name(&self) -> &'static str {
        "euler2d"
    }

    fn ncomp(&self) -> usize {
        4
    }

    fn flux(&self, u: &[f64], axis: Axis, out: &mut [f64]) -> Result<()> {
        let (_, vx, vy, p) = self.primitive(u)?;
        let (nx, ny) = normal(axis);
        let un = vx * nx + vy * ny;
        out[0] = u[0] * un;
        out[1] = u[1] * un + p * nx;
        out[2] = u[2] * un + p * ny;
        out[3] = (u[3] + p) * un;
        Ok(())
    }

    fn max_wave_speed(&self, u: &[f64], axis: Axis) -> Result<f64> {
        let (rho, vx, vy, p) = self.primitive(u)?;
        let (nx, ny) = normal(axis);
        Ok((vx * nx + vy * ny).abs() + (self.gamma * p / rho).sqrt())
    }

    fn flux_and_speed(&self, u: &[f64], axis: Axis, out: &mut [f64]) -> Result<f64> {
        let (rho, vx, vy, p) = self.primitive(u)?;
        let (nx, ny) = normal(axis);
        let un = vx * nx + vy * ny;
        out[0] = u[0] * un;
        out[1] = u[1] * un + p * nx;
        out[2] = u[2] * un + p * ny;
        out[3] = (u[3] + p) * un;
        Ok(un.abs() + (self.gamma * p / rho).sqrt())
    }

    fn advective_velocity(&self, u: &[f64], axis: Axis) -> f64 {
        match axis {
            Axis::X => u[1] / u[0],
            Axis::Y => u[2] / u[0],
        }
    }

    fn jacobian(&self, u: &[f64], axis: Axis) -> Result<Vec<f64>> {
        let (rho, vx, vy, p) = self.primitive(u)?;
        let g = self.gamma;
        let h = (u[3] + p) / rho;
        let phi = 0.5 * (g - 1.0) * (vx * vx + vy * vy);
        // along x; y follows by swapping the momentum components
        let (a, b) = match axis {
            Axis::X => (vx, vy),
            Axis::Y => (vy, vx),
        };
        let ax = [
            [0.0, 1.0, 0.0, 0.0],
            [phi - a * a, (3.0 - g) * a, -(g - 1.0) * b, g - 1.0],
            [-a * b, b, a, 0.0],
            [a * (phi - h), h - (g - 1.0) * a * a, -(g - 1.0) * a * b, g * a],
        ];
        let perm: [usize; 4] = match axis {
            Axis::X => [0, 1, 2, 3],
            Axis::Y => [0, 2, 1, 3],
        };
        let mut out = vec![0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[perm[r] * 4 + perm[c]] = ax[r][c];
            }
        }
        Ok(out)
    }

    fn eigen(&self, u: &[f64], axis: Axis) -> Option<Result<EigenSystem>> {
        Some(self.primitive(u).map(|(rho, vx, vy, p)| {
            let g = self.gamma;
            let (nx, ny) = normal(axis);
            let c = (g * p / rho).sqrt();
            let h = (u[3] + p) / rho;
            let q2 = vx * vx + vy * vy;
            let un = vx * nx + vy * ny;
            let ut = -vx * ny + vy * nx;
            let b1 = (g - 1.0) / (c * c);
            let b2 = 0.5 * b1 * q2;
            #[rustfmt::skip]
            let r = vec![
                1.0,               1.0,      0.0, 1.0,
                vx - c * nx,       vx,       -ny, vx + c * nx,
                vy - c * ny,       vy,       nx,  vy + c * ny,
                h - c * un,        0.5 * q2, ut,  h + c * un,
            ];
            #[rustfmt::skip]
            let r_inv = vec![
                0.5 * (b2 + un / c), -0.5 * (b1 * vx + nx / c), -0.5 * (b1 * vy + ny / c), 0.5 * b1,
                1.0 - b2,            b1 * vx,                   b1 * vy,                   -b1,
                -ut,                 -ny,                       nx,                        0.0,
                0.5 * (b2 - un / c), -0.5 * (b1 * vx - nx / c), -0.5 * (b1 * vy - ny / c), 0.5 * b1,
            ];
            EigenSystem { n: 4, values: vec![un - c, un, un, un + c], r, r_inv }
        }))
    }

    fn reflect(&self, u: &mut [f64], axis: Axis) {
        match axis {
            Axis::X => u[1] = -u[1],
            Axis::Y => u[2] = -u[2],
        }
    }

    fn positivity_quantities(&self, u: &[f64]) -> Option<[f64; 3]> {
        Some([u[0], self.pressure(u), u[3]])
    }

    fn entropy_measure(&self, u: &[f64]) -> Option<f64> {
        Some(entropy_measure(u[0], self.pressure(u), self.gamma))
    }

    fn component_names(&self) -> Vec<&'static str> {
        vec!["rho", "rhou", "rhov", "E"]
    }

    fn derived(&self, u: &[f64]) -> Vec<(&'static str, f64)> {
        vec![("p", self.pressure(u))]
    }
}
