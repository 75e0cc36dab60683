use std::sync::Arc;

use rayon::prelude::*;

use super::boundary::{Boundary2D, Side};
use super::ops::{dot, ElementOps};
use super::rhs1d::element_error;
use crate::error::Result;
use crate::field::DgField2D;
use crate::physics::{llf_flux, Axis, ConservationLaw};

/// Modal DG semi-discretisation on a tensor-product dyadic mesh.
#[derive(Clone)]
pub struct Dg2D {
    pub law: Arc<dyn ConservationLaw>,
    pub boundary: Boundary2D,
    pub ops: ElementOps,
}

/// Which neighbour of an element to fetch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    West,
    East,
    South,
    North,
}

impl Dg2D {
    pub fn new(law: Arc<dyn ConservationLaw>, boundary: Boundary2D, k: usize) -> Self {
        Self { law, boundary, ops: ElementOps::new(k) }
    }

    pub fn degree(&self) -> usize {
        self.ops.k
    }

    /// Coefficients of the element across `face` of `(i, j)`, using the
    /// boundary ghost where the neighbour lies outside the mesh.
    pub fn neighbor<'a>(&self, u: &'a DgField2D, i: usize, j: usize, face: Face, t: f64, buf: &'a mut Vec<f64>) -> &'a [f64] {
        let (nx, ny) = (u.nx(), u.ny());
        let outside = match face {
            Face::West if i == 0 => Some((Axis::X, Side::Low)),
            Face::East if i + 1 == nx => Some((Axis::X, Side::High)),
            Face::South if j == 0 => Some((Axis::Y, Side::Low)),
            Face::North if j + 1 == ny => Some((Axis::Y, Side::High)),
            _ => None,
        };
        match outside {
            Some((axis, side)) => {
                buf.resize(u.ncomp() * u.nmodes(), 0.0);
                self.boundary.ghost(u, self.law.as_ref(), axis, side, i, j, t, buf);
                buf
            }
            None => match face {
                Face::West => u.element(i - 1, j),
                Face::East => u.element(i + 1, j),
                Face::South => u.element(i, j - 1),
                Face::North => u.element(i, j + 1),
            },
        }
    }

    /// Values of each component along one edge of an element at the edge
    /// Gauss nodes. `edge_coord` is the fixed reference coordinate (±1) and
    /// `axis` the direction normal to the edge.
    fn edge_trace(&self, e: &[f64], nc: usize, axis: Axis, at_high: bool, out: &mut [f64]) {
        let ops = &self.ops;
        let np = ops.nmodes();
        let nm = np * np;
        let nq = ops.nodes();
        let fixed = if at_high { &ops.right } else { &ops.left };
        for g in 0..nq {
            let along = ops.phi_at(g);
            for c in 0..nc {
                let m = &e[c * nm..(c + 1) * nm];
                let mut s = 0.0;
                for lx in 0..np {
                    for ly in 0..np {
                        let b = match axis {
                            Axis::X => fixed[lx] * along[ly],
                            Axis::Y => along[lx] * fixed[ly],
                        };
                        s += m[lx * np + ly] * b;
                    }
                }
                out[g * nc + c] = s;
            }
        }
    }

    /// Numerical fluxes on all faces normal to `axis`, laid out
    /// `[face][gauss node][component]`.
    fn face_fluxes(&self, u: &DgField2D, axis: Axis, t: f64) -> Result<Vec<f64>> {
        let (nx, ny) = (u.nx(), u.ny());
        let nc = u.ncomp();
        let nq = self.ops.nodes();
        let (fx, fy) = match axis {
            Axis::X => (nx + 1, ny),
            Axis::Y => (nx, ny + 1),
        };
        let law = self.law.as_ref();
        let mut out = vec![0.0; fx * fy * nq * nc];
        out.par_chunks_mut(nq * nc).enumerate().try_for_each_init(
            || (Vec::new(), Vec::new(), vec![0.0; nq * nc], vec![0.0; nq * nc], vec![0.0; nc]),
            |(b1, b2, tm, tp, scratch), (f, o)| {
                let (a, b) = (f % fx, f / fx);
                // Face between `minus` (low side) and `plus` (high side).
                let (minus, plus): (&[f64], &[f64]) = match axis {
                    Axis::X => {
                        let m = if a == 0 { self.neighbor(u, 0, b, Face::West, t, b1) } else { u.element(a - 1, b) };
                        let p = if a == nx { self.neighbor(u, nx - 1, b, Face::East, t, b2) } else { u.element(a, b) };
                        (m, p)
                    }
                    Axis::Y => {
                        let m = if b == 0 { self.neighbor(u, a, 0, Face::South, t, b1) } else { u.element(a, b - 1) };
                        let p = if b == ny { self.neighbor(u, a, ny - 1, Face::North, t, b2) } else { u.element(a, b) };
                        (m, p)
                    }
                };
                self.edge_trace(minus, nc, axis, true, tm);
                self.edge_trace(plus, nc, axis, false, tp);
                for g in 0..nq {
                    let r = g * nc..(g + 1) * nc;
                    llf_flux(law, &tm[r.clone()], &tp[r.clone()], axis, scratch, &mut o[r])
                        .map_err(|e| element_error(format!("face {axis:?} ({a}, {b})"), t, e))?;
                }
                Ok::<(), crate::Error>(())
            },
        )?;
        Ok(out)
    }

    pub fn rhs(&self, u: &DgField2D, t: f64, out: &mut DgField2D) -> Result<()> {
        let nx = u.nx();
        let nc = u.ncomp();
        let ops = &self.ops;
        let np = ops.nmodes();
        let nm = np * np;
        let nq = ops.nodes();
        let law = self.law.as_ref();
        let fxf = self.face_fluxes(u, Axis::X, t)?;
        let fyf = self.face_fluxes(u, Axis::Y, t)?;
        let sx = 2.0 / u.mesh.x.dx();
        let sy = 2.0 / u.mesh.y.dx();
        let w = &ops.quad.weights;

        out.as_mut_slice().par_chunks_mut(nc * nm).enumerate().try_for_each_init(
            || (vec![0.0; nc * nq * nq], vec![0.0; nc * nq * nq], vec![0.0; nc * nq * nq], vec![0.0; nc], vec![0.0; nq * np]),
            |(vals, fx, fy, state, partial), (idx, o)| {
                let (i, j) = (idx % nx, idx / nx);
                let e = u.element(i, j);
                // nodal values, x node major: vals[(qx * nq + qy) * nc + c]
                for c in 0..nc {
                    let m = &e[c * nm..(c + 1) * nm];
                    for qx in 0..nq {
                        let px = ops.phi_at(qx);
                        for ly in 0..np {
                            partial[qx * np + ly] = (0..np).map(|lx| px[lx] * m[lx * np + ly]).sum();
                        }
                    }
                    for qx in 0..nq {
                        let row = &partial[qx * np..(qx + 1) * np];
                        for qy in 0..nq {
                            vals[(qx * nq + qy) * nc + c] = dot(row, ops.phi_at(qy));
                        }
                    }
                }
                for q in 0..nq * nq {
                    let r = q * nc..(q + 1) * nc;
                    state.copy_from_slice(&vals[r.clone()]);
                    let label = || format!("({i}, {j})");
                    law.flux(state, Axis::X, &mut fx[r.clone()]).map_err(|err| element_error(label(), t, err))?;
                    law.flux(state, Axis::Y, &mut fy[r]).map_err(|err| element_error(label(), t, err))?;
                    let wq = w[q / nq] * w[q % nq];
                    for c in 0..nc {
                        fx[q * nc + c] *= wq * sx;
                        fy[q * nc + c] *= wq * sy;
                    }
                }
                o.iter_mut().for_each(|v| *v = 0.0);
                for qx in 0..nq {
                    let (px, dx) = (ops.phi_at(qx), ops.dphi_at(qx));
                    for qy in 0..nq {
                        let (py, dy) = (ops.phi_at(qy), ops.dphi_at(qy));
                        let q = qx * nq + qy;
                        for c in 0..nc {
                            let (a, b) = (fx[q * nc + c], fy[q * nc + c]);
                            let oc = &mut o[c * nm..(c + 1) * nm];
                            for lx in 0..np {
                                let (ax, bx) = (a * dx[lx], b * px[lx]);
                                for ly in 0..np {
                                    oc[lx * np + ly] += ax * py[ly] + bx * dy[ly];
                                }
                            }
                        }
                    }
                }
                let west = &fxf[(j * (nx + 1) + i) * nq * nc..][..nq * nc];
                let east = &fxf[(j * (nx + 1) + i + 1) * nq * nc..][..nq * nc];
                let south = &fyf[(j * nx + i) * nq * nc..][..nq * nc];
                let north = &fyf[((j + 1) * nx + i) * nq * nc..][..nq * nc];
                for gq in 0..nq {
                    let along = ops.phi_at(gq);
                    let wg = w[gq];
                    for c in 0..nc {
                        let (fw, fe) = (west[gq * nc + c], east[gq * nc + c]);
                        let (fs, fn_) = (south[gq * nc + c], north[gq * nc + c]);
                        for lx in 0..np {
                            for ly in 0..np {
                                let xs = sx * wg * along[ly] * (fe * ops.right[lx] - fw * ops.left[lx]);
                                let ys = sy * wg * along[lx] * (fn_ * ops.right[ly] - fs * ops.left[ly]);
                                o[c * nm + lx * np + ly] -= xs + ys;
                            }
                        }
                    }
                }
                Ok(())
            },
        )
    }

    /// Largest wave speed over the cell averages, both directions.
    pub fn max_speed(&self, u: &DgField2D) -> Result<f64> {
        let nc = u.ncomp();
        let nx = u.nx();
        (0..u.len())
            .into_par_iter()
            .map_init(
                || vec![0.0; nc],
                |s, idx| {
                    let (i, j) = (idx % nx, idx / nx);
                    u.average_state(i, j, s);
                    let err = |e| element_error(format!("({i}, {j})"), f64::NAN, e);
                    let a = self.law.max_wave_speed(s, Axis::X).map_err(err)?;
                    let b = self.law.max_wave_speed(s, Axis::Y).map_err(err)?;
                    Ok(a.max(b))
                },
            )
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Mesh1D, Mesh2D};
    use crate::physics::{Burgers, Euler2D};
    use crate::solver::{project_1d, project_2d, Boundary1D, Dg1D};

    #[test]
    fn uniform_euler_state_is_preserved() {
        let law = Euler2D::default();
        let s = law.conserved(1.4, 0.3, -0.2, 1.0);
        let mesh = Mesh2D::new(3, 2, (0.0, 1.0), (0.0, 0.5)).unwrap();
        let u = project_2d(mesh, 1, 4, |_, _, o| o.copy_from_slice(&s));
        let dg = Dg2D::new(Arc::new(law), Boundary2D::constant(s.to_vec()), 1);
        let mut r = u.clone();
        dg.rhs(&u, 0.0, &mut r).unwrap();
        assert!(r.as_slice().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn y_constant_data_matches_1d_rows() {
        let f = |x: f64| 1.0 + 0.5 * (3.0 * x).sin() + if x > 0.4 { 0.7 } else { 0.0 };
        let k = 2;
        let m1 = Mesh1D::new(4, 0.0, 1.0).unwrap();
        let u1 = project_1d(m1, k, 1, |x, o| o[0] = f(x));
        let dg1 = Dg1D::new(Arc::new(Burgers), Boundary1D::periodic(), k);
        let mut r1 = u1.clone();
        dg1.rhs(&u1, 0.0, &mut r1).unwrap();

        let m2 = Mesh2D::new(4, 2, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let u2 = project_2d(m2, k, 1, |x, _, o| o[0] = f(x));
        let dg2 = Dg2D::new(Arc::new(Burgers), Boundary2D::periodic(), k);
        let mut r2 = u2.clone();
        dg2.rhs(&u2, 0.0, &mut r2).unwrap();
        for j in 0..4 {
            for i in 0..16 {
                for l in 0..=k {
                    // y-constant: only ly = 0 modes, scaled by √2 relative to 1D.
                    let a = r2.get(0, i, j, l, 0);
                    let b = r1.get(0, i, l) * 2f64.sqrt();
                    assert!((a - b).abs() < 1e-12, "{i} {j} {l}: {a} {b}");
                    for ly in 1..=k {
                        assert!(r2.get(0, i, j, l, ly).abs() < 1e-12);
                    }
                }
            }
        }
    }
}
