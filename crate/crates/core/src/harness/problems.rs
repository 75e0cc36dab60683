use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::physics::{Advection, Burgers, ConservationLaw, Euler1D, Euler2D};
use crate::solver::{Boundary1D, Boundary2D, BoundaryKind, Ghost};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Sod,
    Lax,
    Blast,
    ShuOsher,
    DoubleMach,
    Advection,
    Burgers,
}

impl std::str::FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sod" => Problem::Sod,
            "lax" => Problem::Lax,
            "blast" => Problem::Blast,
            "shu-osher" | "shu_osher" | "shuosher" => Problem::ShuOsher,
            "double-mach" | "double_mach" | "doublemach" => Problem::DoubleMach,
            "advection" => Problem::Advection,
            "burgers" => Problem::Burgers,
            _ => return Err(Error::invalid(format!("unknown problem '{s}'"))),
        })
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Initial condition of a 1D problem: `(x, out)`.
pub type Initial1D = Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>;
/// Initial condition of a 2D problem: `(x, y, out)`.
pub type Initial2D = Arc<dyn Fn(f64, f64, &mut [f64]) + Send + Sync>;

pub struct Setup1D {
    pub law: Arc<dyn ConservationLaw>,
    pub domain: (f64, f64),
    pub boundary: Boundary1D,
    pub initial: Initial1D,
}

pub struct Setup2D {
    pub law: Arc<dyn ConservationLaw>,
    pub domain: ((f64, f64), (f64, f64)),
    pub boundary: Boundary2D,
    pub initial: Initial2D,
}

/// Double-Mach post-shock state `(ρ, ρu, ρv, E)`.
pub fn double_mach_left() -> [f64; 4] {
    let (c, s) = (30f64.to_radians().cos(), 30f64.to_radians().sin());
    [8.0, 8.0 * 8.25 * c, -8.0 * 8.25 * s, 563.5]
}

/// Double-Mach pre-shock state.
pub const DOUBLE_MACH_RIGHT: [f64; 4] = [1.4, 0.0, 0.0, 2.5];

/// Shock position along the top boundary at time `t`.
pub fn double_mach_shock_x(t: f64) -> f64 {
    1.0 / 6.0 + (1.0 + 20.0 * t) / 3f64.sqrt()
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::Sod,
        Problem::Lax,
        Problem::Blast,
        Problem::ShuOsher,
        Problem::DoubleMach,
        Problem::Advection,
        Problem::Burgers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Sod => "sod",
            Problem::Lax => "lax",
            Problem::Blast => "blast",
            Problem::ShuOsher => "shu-osher",
            Problem::DoubleMach => "double-mach",
            Problem::Advection => "advection",
            Problem::Burgers => "burgers",
        }
    }

    pub fn is_2d(self) -> bool {
        self == Problem::DoubleMach
    }

    pub fn default_t_final(self) -> f64 {
        match self {
            Problem::Sod => 2.0,
            Problem::Lax => 1.3,
            Problem::Blast => 0.038,
            Problem::ShuOsher => 1.8,
            Problem::DoubleMach => 0.2,
            Problem::Advection => 2.0 * PI,
            Problem::Burgers => 1.5,
        }
    }

    /// Default dyadic level (x level for 2D).
    pub fn default_level(self) -> u32 {
        match self {
            Problem::Sod => 6,
            Problem::Lax => 7,
            Problem::Blast | Problem::ShuOsher => 9,
            Problem::DoubleMach => 8,
            Problem::Advection | Problem::Burgers => 6,
        }
    }

    /// Default y level for 2D problems (Δy = Δx on [0,4]×[0,1]).
    pub fn default_level_y(self) -> u32 {
        match self {
            Problem::DoubleMach => 6,
            _ => 0,
        }
    }

    pub fn setup_1d(self) -> Result<Setup1D> {
        let euler = Euler1D::default();
        let piecewise = |l: [f64; 3], r: [f64; 3], x0: f64| -> Initial1D {
            Arc::new(move |x, o: &mut [f64]| o.copy_from_slice(if x < x0 { &l } else { &r }))
        };
        Ok(match self {
            Problem::Sod | Problem::Lax => {
                let (l, r) = if self == Problem::Sod {
                    (euler.conserved(1.0, 0.0, 1.0), euler.conserved(0.125, 0.0, 0.1))
                } else {
                    (euler.conserved(0.445, 0.698, 3.528), euler.conserved(0.5, 0.0, 0.571))
                };
                Setup1D {
                    law: Arc::new(euler),
                    domain: (-5.0, 5.0),
                    boundary: Boundary1D::constant(l.to_vec(), r.to_vec()),
                    initial: piecewise(l, r, 0.0),
                }
            }
            Problem::Blast => Setup1D {
                law: Arc::new(euler),
                domain: (0.0, 1.0),
                boundary: Boundary1D::reflective(),
                initial: Arc::new(move |x, o: &mut [f64]| {
                    let p = if x < 0.1 {
                        1000.0
                    } else if x < 0.9 {
                        0.01
                    } else {
                        100.0
                    };
                    o.copy_from_slice(&euler.conserved(1.0, 0.0, p));
                }),
            },
            Problem::ShuOsher => {
                let state = move |x: f64| {
                    if x < -4.0 {
                        euler.conserved(3.857143, 2.629369, 10.33333)
                    } else {
                        euler.conserved(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
                    }
                };
                // The undisturbed state seen by each ghost never changes before
                // waves arrive, so ghosts sample the initial data.
                let ghost = BoundaryKind::Function(Arc::new(move |x, _, _| Ghost::State(state(x).to_vec())));
                Setup1D {
                    law: Arc::new(euler),
                    domain: (-5.0, 5.0),
                    boundary: Boundary1D { left: ghost.clone(), right: ghost },
                    initial: Arc::new(move |x, o: &mut [f64]| o.copy_from_slice(&state(x))),
                }
            }
            Problem::Advection => Setup1D {
                law: Arc::new(Advection::new(1.0)),
                domain: (0.0, 2.0 * PI),
                boundary: Boundary1D::periodic(),
                initial: Arc::new(|x, o: &mut [f64]| o[0] = x.sin()),
            },
            Problem::Burgers => Setup1D {
                law: Arc::new(Burgers),
                domain: (0.0, 2.0 * PI),
                boundary: Boundary1D::periodic(),
                initial: Arc::new(|x, o: &mut [f64]| o[0] = x.sin()),
            },
            Problem::DoubleMach => return Err(Error::invalid("double-mach is a 2D problem")),
        })
    }

    pub fn setup_2d(self) -> Result<Setup2D> {
        if self != Problem::DoubleMach {
            return Err(Error::invalid(format!("{self} is a 1D problem")));
        }
        let left = double_mach_left();
        let right = DOUBLE_MACH_RIGHT;
        let bottom = BoundaryKind::Function(Arc::new(move |x, _, _| {
            if x < 1.0 / 6.0 {
                Ghost::State(left.to_vec())
            } else {
                Ghost::Reflect
            }
        }));
        let top = BoundaryKind::Function(Arc::new(move |x, _, t| {
            Ghost::State(if x < double_mach_shock_x(t) { left.to_vec() } else { right.to_vec() })
        }));
        Ok(Setup2D {
            law: Arc::new(Euler2D::default()),
            domain: ((0.0, 4.0), (0.0, 1.0)),
            boundary: Boundary2D {
                left: BoundaryKind::Constant(left.to_vec()),
                right: BoundaryKind::Constant(right.to_vec()),
                bottom,
                top,
            },
            initial: Arc::new(move |x, y, o: &mut [f64]| {
                let behind = y > 3f64.sqrt() * (x - 1.0 / 6.0);
                o.copy_from_slice(if behind { &left } else { &right });
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_mach_left_energy() {
        let l = double_mach_left();
        let law = Euler2D::default();
        let p = law.pressure(&l);
        assert!((p - 116.5).abs() < 1e-9, "{p}");
    }

    #[test]
    fn names_roundtrip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
    }
}
