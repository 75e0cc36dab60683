use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{DgField1D, DgField2D};

/// Anything stored as one flat coefficient vector.
pub trait Coefficients: Clone {
    fn values(&self) -> &[f64];
    fn values_mut(&mut self) -> &mut [f64];
}

impl Coefficients for DgField1D {
    fn values(&self) -> &[f64] {
        self.as_slice()
    }
    fn values_mut(&mut self) -> &mut [f64] {
        self.as_mut_slice()
    }
}

impl Coefficients for DgField2D {
    fn values(&self) -> &[f64] {
        self.as_slice()
    }
    fn values_mut(&mut self) -> &mut [f64] {
        self.as_mut_slice()
    }
}

impl Coefficients for Vec<f64> {
    fn values(&self) -> &[f64] {
        self
    }
    fn values_mut(&mut self) -> &mut [f64] {
        self
    }
}

/// When the indicator/limiter hook runs inside a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum StagePolicy {
    #[default]
    EveryStage,
    EndOfStep,
}

impl std::str::FromStr for StagePolicy {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "every-stage" => Ok(StagePolicy::EveryStage),
            "end-of-step" => Ok(StagePolicy::EndOfStep),
            _ => Err(crate::Error::InvalidArgument(format!("unknown stage policy '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageInfo {
    /// 0, 1 or 2
    pub stage: usize,
    /// Time level the stage state approximates.
    pub time: f64,
    /// True for the state that becomes the end-of-step solution.
    pub last: bool,
}

/// Three-stage SSP Runge-Kutta step
///
/// ```text
/// u1 = u + dt L(u)
/// u2 = 3/4 u + 1/4 (u1 + dt L(u1))
/// u  = 1/3 u + 2/3 (u2 + dt L(u2))
/// ```
///
/// `hook` post-processes stage states according to `policy`.
pub fn ssp_rk3_step<F, R, H>(u: &mut F, t: f64, dt: f64, mut rhs: R, policy: StagePolicy, mut hook: H) -> Result<()>
where
    F: Coefficients,
    R: FnMut(&F, f64, &mut F) -> Result<()>,
    H: FnMut(&mut F, StageInfo) -> Result<()>,
{
    let mut l = u.clone();
    let every = policy == StagePolicy::EveryStage;

    rhs(u, t, &mut l)?;
    let mut u1 = u.clone();
    axpy(u1.values_mut(), dt, l.values());
    if every {
        hook(&mut u1, StageInfo { stage: 0, time: t + dt, last: false })?;
    }

    rhs(&u1, t + dt, &mut l)?;
    let mut u2 = u1;
    for ((a, &b), &d) in u2.values_mut().iter_mut().zip(u.values()).zip(l.values()) {
        *a = 0.75 * b + 0.25 * (*a + dt * d);
    }
    if every {
        hook(&mut u2, StageInfo { stage: 1, time: t + 0.5 * dt, last: false })?;
    }

    rhs(&u2, t + 0.5 * dt, &mut l)?;
    for ((a, &b), &d) in u.values_mut().iter_mut().zip(u2.values()).zip(l.values()) {
        *a = *a / 3.0 + 2.0 / 3.0 * (b + dt * d);
    }
    hook(u, StageInfo { stage: 2, time: t + dt, last: true })
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (y, x) in y.iter_mut().zip(x) {
        *y += a * x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ode_matches_cubic_taylor() {
        let lambda = -0.7;
        let dt = 0.3;
        let mut u = vec![1.0];
        ssp_rk3_step(
            &mut u,
            0.0,
            dt,
            |v: &Vec<f64>, _, o: &mut Vec<f64>| {
                o[0] = lambda * v[0];
                Ok(())
            },
            StagePolicy::EveryStage,
            |_, _| Ok(()),
        )
        .unwrap();
        let z: f64 = lambda * dt;
        let taylor = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        assert!((u[0] - taylor).abs() < 1e-15);
    }

    #[test]
    fn hook_policy() {
        let mut calls = Vec::new();
        let mut u = vec![1.0];
        let zero = |_: &Vec<f64>, _, o: &mut Vec<f64>| {
            o[0] = 0.0;
            Ok(())
        };
        ssp_rk3_step(&mut u, 1.0, 0.5, zero, StagePolicy::EveryStage, |_, s| {
            calls.push((s.stage, s.time, s.last));
            Ok(())
        })
        .unwrap();
        assert_eq!(calls, vec![(0, 1.5, false), (1, 1.25, false), (2, 1.5, true)]);
        calls.clear();
        ssp_rk3_step(&mut u, 1.0, 0.5, zero, StagePolicy::EndOfStep, |_, s| {
            calls.push((s.stage, s.time, s.last));
            Ok(())
        })
        .unwrap();
        assert_eq!(calls, vec![(2, 1.5, true)]);
    }
}
