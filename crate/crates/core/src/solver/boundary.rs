//! Boundary conditions realised as ghost elements.
//!
//! Every boundary kind produces a full polynomial for the element just
//! outside the domain; fluxes, indicators and limiters all read the same
//! ghost so the stencils stay consistent.

use std::fmt;
use std::sync::Arc;

use crate::field::{DgField1D, DgField2D};
use crate::physics::{Axis, ConservationLaw};

/// What a position-dependent boundary prescribes for one ghost element.
#[derive(Debug, Clone, PartialEq)]
pub enum Ghost {
    /// Constant conserved state.
    State(Vec<f64>),
    /// Mirror of the adjacent interior element with the normal momentum negated.
    Reflect,
}

/// `(x, y, t) -> Ghost`, evaluated at the ghost element's centre.
pub type GhostFn = Arc<dyn Fn(f64, f64, f64) -> Ghost + Send + Sync>;

#[derive(Clone)]
pub enum BoundaryKind {
    Constant(Vec<f64>),
    Reflective,
    Periodic,
    /// Time- and position-dependent rule sampled at ghost-cell centres.
    Function(GhostFn),
}

impl fmt::Debug for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryKind::Constant(s) => f.debug_tuple("Constant").field(s).finish(),
            BoundaryKind::Reflective => f.write_str("Reflective"),
            BoundaryKind::Periodic => f.write_str("Periodic"),
            BoundaryKind::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl BoundaryKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundaryKind::Constant(_) => "constant-state",
            BoundaryKind::Reflective => "reflective-wall",
            BoundaryKind::Periodic => "periodic",
            BoundaryKind::Function(_) => "time-dependent-dirichlet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Low,
    High,
}

#[derive(Debug, Clone)]
pub struct Boundary1D {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl Boundary1D {
    pub fn periodic() -> Self {
        Self { left: BoundaryKind::Periodic, right: BoundaryKind::Periodic }
    }

    pub fn constant(left: Vec<f64>, right: Vec<f64>) -> Self {
        Self { left: BoundaryKind::Constant(left), right: BoundaryKind::Constant(right) }
    }

    pub fn reflective() -> Self {
        Self { left: BoundaryKind::Reflective, right: BoundaryKind::Reflective }
    }

    /// Ghost element coefficients (`ncomp * (k+1)`, same layout as an element).
    pub fn ghost(&self, field: &DgField1D, law: &dyn ConservationLaw, side: Side, t: f64, out: &mut [f64]) {
        let n = field.len();
        let (kind, inner, outer, x) = match side {
            Side::Low => (&self.left, 0, n - 1, field.mesh.center(0) - field.mesh.dx()),
            Side::High => (&self.right, n - 1, 0, field.mesh.center(n - 1) + field.mesh.dx()),
        };
        let np = field.nmodes();
        let nc = field.ncomp();
        let rule = match kind {
            BoundaryKind::Constant(s) => Ghost::State(s.clone()),
            BoundaryKind::Reflective => Ghost::Reflect,
            BoundaryKind::Periodic => {
                out.copy_from_slice(field.element(outer));
                return;
            }
            BoundaryKind::Function(f) => f(x, 0.0, t),
        };
        match rule {
            Ghost::State(s) => constant_element(&s, np, out, 2f64.sqrt()),
            Ghost::Reflect => {
                out.copy_from_slice(field.element(inner));
                let mut v = vec![0.0; nc];
                for l in 0..np {
                    let sign = if l % 2 == 1 { -1.0 } else { 1.0 };
                    for c in 0..nc {
                        v[c] = sign * out[c * np + l];
                    }
                    law.reflect(&mut v, Axis::X);
                    for c in 0..nc {
                        out[c * np + l] = v[c];
                    }
                }
            }
        }
    }
}

fn constant_element(state: &[f64], nmodes: usize, out: &mut [f64], mean_factor: f64) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for (c, s) in state.iter().enumerate() {
        out[c * nmodes] = s * mean_factor;
    }
}

#[derive(Debug, Clone)]
pub struct Boundary2D {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
    pub bottom: BoundaryKind,
    pub top: BoundaryKind,
}

impl Boundary2D {
    pub fn periodic() -> Self {
        Self {
            left: BoundaryKind::Periodic,
            right: BoundaryKind::Periodic,
            bottom: BoundaryKind::Periodic,
            top: BoundaryKind::Periodic,
        }
    }

    pub fn constant(state: Vec<f64>) -> Self {
        Self {
            left: BoundaryKind::Constant(state.clone()),
            right: BoundaryKind::Constant(state.clone()),
            bottom: BoundaryKind::Constant(state.clone()),
            top: BoundaryKind::Constant(state),
        }
    }

    /// Ghost element across the `axis`/`side` boundary adjacent to interior
    /// element `(i, j)`. `(i, j)` must lie on that boundary.
    #[allow(clippy::too_many_arguments)]
    pub fn ghost(
        &self,
        field: &DgField2D,
        law: &dyn ConservationLaw,
        axis: Axis,
        side: Side,
        i: usize,
        j: usize,
        t: f64,
        out: &mut [f64],
    ) {
        let (nx, ny) = (field.nx(), field.ny());
        let mesh = &field.mesh;
        let (xc, yc) = mesh.center(i, j);
        let (kind, gx, gy, wrap) = match (axis, side) {
            (Axis::X, Side::Low) => (&self.left, xc - mesh.x.dx(), yc, (nx - 1, j)),
            (Axis::X, Side::High) => (&self.right, xc + mesh.x.dx(), yc, (0, j)),
            (Axis::Y, Side::Low) => (&self.bottom, xc, yc - mesh.y.dx(), (i, ny - 1)),
            (Axis::Y, Side::High) => (&self.top, xc, yc + mesh.y.dx(), (i, 0)),
        };
        let np = field.degree() + 1;
        let nm = np * np;
        let nc = field.ncomp();
        let rule = match kind {
            BoundaryKind::Constant(s) => Ghost::State(s.clone()),
            BoundaryKind::Reflective => Ghost::Reflect,
            BoundaryKind::Periodic => {
                out.copy_from_slice(field.element(wrap.0, wrap.1));
                return;
            }
            BoundaryKind::Function(f) => f(gx, gy, t),
        };
        match rule {
            Ghost::State(s) => constant_element(&s, nm, out, 2.0),
            Ghost::Reflect => {
                out.copy_from_slice(field.element(i, j));
                let mut v = vec![0.0; nc];
                for lx in 0..np {
                    for ly in 0..np {
                        let odd = match axis {
                            Axis::X => lx % 2 == 1,
                            Axis::Y => ly % 2 == 1,
                        };
                        let sign = if odd { -1.0 } else { 1.0 };
                        let m = lx * np + ly;
                        for c in 0..nc {
                            v[c] = sign * out[c * nm + m];
                        }
                        law.reflect(&mut v, axis);
                        for c in 0..nc {
                            out[c * nm + m] = v[c];
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Mesh1D;
    use crate::physics::Euler1D;

    #[test]
    fn reflective_ghost_mirrors_and_flips_momentum() {
        let mesh = Mesh1D::new(2, 0.0, 1.0).unwrap();
        let mut f = DgField1D::zeros(mesh, 1, 3);
        f.modes_mut(0, 0).copy_from_slice(&[2.0, 0.3]);
        f.modes_mut(1, 0).copy_from_slice(&[0.5, 0.1]);
        f.modes_mut(2, 0).copy_from_slice(&[5.0, -0.2]);
        let bc = Boundary1D::reflective();
        let mut g = vec![0.0; 6];
        bc.ghost(&f, &Euler1D::default(), Side::Low, 0.0, &mut g);
        assert_eq!(g, vec![2.0, -0.3, -0.5, 0.1, 5.0, 0.2]);
    }

    #[test]
    fn constant_ghost_has_state_average() {
        let mesh = Mesh1D::new(2, 0.0, 1.0).unwrap();
        let f = DgField1D::zeros(mesh, 2, 1);
        let bc = Boundary1D::constant(vec![3.0], vec![1.0]);
        let mut g = vec![0.0; 3];
        bc.ghost(&f, &crate::physics::Burgers, Side::High, 0.0, &mut g);
        assert!((g[0] / 2f64.sqrt() - 1.0).abs() < 1e-15);
        assert_eq!(&g[1..], &[0.0, 0.0]);
    }
}
