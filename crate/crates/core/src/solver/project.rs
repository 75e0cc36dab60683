use crate::basis::{scaled_legendre, GaussLegendre};
use crate::field::{DgField1D, DgField2D};
use crate::mesh::{Mesh1D, Mesh2D};

/// L² projection of `f(x, out)` onto the DG space, using `k + 3` Gauss
/// nodes per element.
pub fn project_1d<F>(mesh: Mesh1D, k: usize, ncomp: usize, f: F) -> DgField1D
where
    F: Fn(f64, &mut [f64]),
{
    project_1d_with(mesh, k, ncomp, k + 3, f)
}

pub fn project_1d_with<F>(mesh: Mesh1D, k: usize, ncomp: usize, nodes: usize, f: F) -> DgField1D
where
    F: Fn(f64, &mut [f64]),
{
    let quad = GaussLegendre::new(nodes);
    let np = k + 1;
    let mut field = DgField1D::zeros(mesh, k, ncomp);
    let mut val = vec![0.0; ncomp];
    for j in 0..mesh.len() {
        for (&xi, &w) in quad.nodes.iter().zip(&quad.weights) {
            f(mesh.to_physical(j, xi), &mut val);
            for l in 0..np {
                let p = w * scaled_legendre(l, xi);
                for (c, v) in val.iter().enumerate() {
                    let cur = field.get(c, j, l);
                    field.set(c, j, l, cur + p * v);
                }
            }
        }
    }
    field
}

/// Tensor-product analogue of [`project_1d`].
pub fn project_2d<F>(mesh: Mesh2D, k: usize, ncomp: usize, f: F) -> DgField2D
where
    F: Fn(f64, f64, &mut [f64]),
{
    let quad = GaussLegendre::new(k + 3);
    let np = k + 1;
    let nq = quad.len();
    let mut tab = vec![0.0; nq * np];
    for (q, &x) in quad.nodes.iter().enumerate() {
        for l in 0..np {
            tab[q * np + l] = scaled_legendre(l, x);
        }
    }
    let mut field = DgField2D::zeros(mesh, k, ncomp);
    let mut val = vec![0.0; ncomp];
    for j in 0..mesh.ny() {
        for i in 0..mesh.nx() {
            for qx in 0..nq {
                let x = mesh.x.to_physical(i, quad.nodes[qx]);
                for qy in 0..nq {
                    let y = mesh.y.to_physical(j, quad.nodes[qy]);
                    f(x, y, &mut val);
                    let w = quad.weights[qx] * quad.weights[qy];
                    for c in 0..ncomp {
                        let modes = field.modes_mut(c, i, j);
                        for lx in 0..np {
                            let px = w * val[c] * tab[qx * np + lx];
                            for ly in 0..np {
                                modes[lx * np + ly] += px * tab[qy * np + ly];
                            }
                        }
                    }
                }
            }
        }
    }
    field
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_projects_to_first_mode() {
        let mesh = Mesh1D::new(3, -1.0, 1.0).unwrap();
        let f = project_1d(mesh, 2, 1, |_, o| o[0] = 3.0);
        for j in 0..8 {
            assert!((f.get(0, j, 0) - 3.0 * 2f64.sqrt()).abs() < 1e-14);
            assert!(f.get(0, j, 1).abs() < 1e-14);
            assert!(f.get(0, j, 2).abs() < 1e-14);
        }
        let m2 = Mesh2D::new(2, 2, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let g = project_2d(m2, 1, 1, |_, _, o| o[0] = 3.0);
        assert!((g.get(0, 1, 2, 0, 0) - 6.0).abs() < 1e-14);
        assert!((g.average(0, 3, 3) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn projection_error_decreases_with_level() {
        let err = |n: u32| {
            let mesh = Mesh1D::new(n, 0.0, 2.0 * std::f64::consts::PI).unwrap();
            let f = project_1d(mesh, 2, 1, |x, o| o[0] = x.sin());
            let q = GaussLegendre::new(8);
            let mut e = 0.0;
            for j in 0..mesh.len() {
                for (&xi, &w) in q.nodes.iter().zip(&q.weights) {
                    let x = mesh.to_physical(j, xi);
                    e += w * mesh.dx() / 2.0 * (f.eval_ref(0, j, xi) - x.sin()).powi(2);
                }
            }
            e.sqrt()
        };
        let ratio = err(5) / err(6);
        assert!((ratio.log2() - 3.0).abs() < 0.2, "{ratio}");
    }
}
