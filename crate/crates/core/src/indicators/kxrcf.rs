use rayon::prelude::*;

use super::{IndicatorVars, TroubledSet1D, TroubledSet2D, VariableMap};
use crate::error::Result;
use crate::field::{DgField1D, DgField2D};
use crate::physics::Axis;
use crate::solver::{dot, Dg1D, Dg2D, Face};

/// Jump ratio against the `h^{(k+1)/2}` superconvergence scale; a zero
/// norm with a nonzero jump counts as infinitely large.
fn ratio(jump: f64, h_pow: f64, measure: f64, norm: f64) -> f64 {
    if measure == 0.0 || jump == 0.0 {
        0.0
    } else if norm == 0.0 {
        f64::INFINITY
    } else {
        jump.abs() / (h_pow * measure * norm)
    }
}

/// Inflow-jump indicator on a 1D mesh. Inflow sides follow the sign of the
/// cell-average transport velocity.
pub fn kxrcf_indicate_1d(u: &DgField1D, dg: &Dg1D, t: f64, vars: IndicatorVars) -> Result<TroubledSet1D> {
    let law = dg.law.as_ref();
    let k = u.degree();
    let np = u.nmodes();
    let n = u.len();
    let map = VariableMap::new(law, vars, k)?;
    let nv = map.nvars();
    let q = map.field_1d(u)?;
    let (gl, gr) = dg.ghosts(u, t);
    let mut ql = vec![0.0; nv * np];
    let mut qr = vec![0.0; nv * np];
    map.convert_1d(&gl, &mut ql)?;
    map.convert_1d(&gr, &mut qr)?;
    let elem = |e: isize| -> &[f64] {
        if e < 0 {
            &ql
        } else if e as usize >= n {
            &qr
        } else {
            q.element(e as usize)
        }
    };
    let ops = &dg.ops;
    let h_pow = (0.5 * u.mesh.dx()).powf((k as f64 + 1.0) / 2.0);
    let nc = u.ncomp();

    let per_elem: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map_init(
            || vec![0.0; nc],
            |avg, i| {
                u.average_state(i, avg);
                let v = law.advective_velocity(avg, Axis::X);
                let (from_left, from_right) = (v > 0.0, v < 0.0);
                let measure = from_left as u8 as f64 + from_right as u8 as f64;
                let me = elem(i as isize);
                let (lt, rt) = (elem(i as isize - 1), elem(i as isize + 1));
                (0..nv)
                    .map(|c| {
                        let r = c * np..(c + 1) * np;
                        let mut jump = 0.0;
                        if from_left {
                            jump += dot(&me[r.clone()], &ops.left) - dot(&lt[r.clone()], &ops.right);
                        }
                        if from_right {
                            jump += dot(&me[r.clone()], &ops.right) - dot(&rt[r.clone()], &ops.left);
                        }
                        let norm = (me[c * np] / 2f64.sqrt()).abs();
                        ratio(jump, h_pow, measure, norm)
                    })
                    .collect()
            },
        )
        .collect();

    let mut set = TroubledSet1D::empty(n);
    for c in 0..nv {
        let vals: Vec<f64> = per_elem.iter().map(|v| v[c]).collect();
        for (f, &r) in set.flags.iter_mut().zip(&vals) {
            *f |= r > 1.0;
        }
        set.values.push(vals);
        set.cutoffs.push(1.0);
    }
    Ok(set)
}

/// Tensor-product version: inflow edges from the normal cell-average
/// velocity, jumps integrated with the edge Gauss rule, element norm the
/// maximum of `|q|` over the volume Gauss nodes, `h` the circumradius.
pub fn kxrcf_indicate_2d(u: &DgField2D, dg: &Dg2D, t: f64, vars: IndicatorVars) -> Result<TroubledSet2D> {
    let law = dg.law.as_ref();
    let k = u.degree();
    let np = k + 1;
    let nm = np * np;
    let (nx, ny) = (u.nx(), u.ny());
    let map = VariableMap::new(law, vars, k)?;
    let nv = map.nvars();
    let q = map.field_2d(u)?;
    let ops = &dg.ops;
    let nq = ops.nodes();
    let (dx, dy) = (u.mesh.x.dx(), u.mesh.y.dx());
    let h_pow = (0.5 * (dx * dx + dy * dy).sqrt()).powf((k as f64 + 1.0) / 2.0);
    let nc = u.ncomp();

    // Value of variable `c` of element `e` at reference point given by basis rows.
    let eval = |e: &[f64], c: usize, px: &[f64], py: &[f64]| -> f64 {
        let m = &e[c * nm..(c + 1) * nm];
        let mut s = 0.0;
        for lx in 0..np {
            for ly in 0..np {
                s += m[lx * np + ly] * px[lx] * py[ly];
            }
        }
        s
    };

    let flags: Vec<Result<bool>> = (0..nx * ny)
        .into_par_iter()
        .map_init(
            || (vec![0.0; nc], Vec::new(), vec![0.0; nv * nm]),
            |(avg, buf, nbq), idx| {
                let (i, j) = (idx % nx, idx / nx);
                u.average_state(i, j, avg);
                let vx = law.advective_velocity(avg, Axis::X);
                let vy = law.advective_velocity(avg, Axis::Y);
                let me = q.element(i, j);
                let mut inflow = Vec::with_capacity(2);
                if vx > 0.0 {
                    inflow.push(Face::West);
                } else if vx < 0.0 {
                    inflow.push(Face::East);
                }
                if vy > 0.0 {
                    inflow.push(Face::South);
                } else if vy < 0.0 {
                    inflow.push(Face::North);
                }
                let mut jumps = vec![0.0; nv];
                let mut measure = 0.0;
                for &face in &inflow {
                    let interior = match face {
                        Face::West if i > 0 => Some(q.element(i - 1, j)),
                        Face::East if i + 1 < nx => Some(q.element(i + 1, j)),
                        Face::South if j > 0 => Some(q.element(i, j - 1)),
                        Face::North if j + 1 < ny => Some(q.element(i, j + 1)),
                        _ => None,
                    };
                    let nb: &[f64] = match interior {
                        Some(e) => e,
                        None => {
                            let g = dg.neighbor(u, i, j, face, t, buf);
                            map.convert_2d(g, nbq)?;
                            nbq
                        }
                    };
                    // (own side, neighbour side) fixed coordinate tables
                    let (mine, theirs, len) = match face {
                        Face::West => (&ops.left, &ops.right, dy),
                        Face::East => (&ops.right, &ops.left, dy),
                        Face::South => (&ops.left, &ops.right, dx),
                        Face::North => (&ops.right, &ops.left, dx),
                    };
                    measure += len;
                    for g in 0..nq {
                        let along = ops.phi_at(g);
                        let w = 0.5 * len * ops.quad.weights[g];
                        for (c, jmp) in jumps.iter_mut().enumerate() {
                            let (a, b) = match face {
                                Face::West | Face::East => (eval(me, c, mine, along), eval(nb, c, theirs, along)),
                                Face::South | Face::North => (eval(me, c, along, mine), eval(nb, c, along, theirs)),
                            };
                            *jmp += w * (a - b);
                        }
                    }
                }
                let mut flagged = false;
                for (c, &jmp) in jumps.iter().enumerate() {
                    let mut norm: f64 = 0.0;
                    for qx in 0..nq {
                        for qy in 0..nq {
                            norm = norm.max(eval(me, c, ops.phi_at(qx), ops.phi_at(qy)).abs());
                        }
                    }
                    flagged |= ratio(jmp, h_pow, measure, norm) > 1.0;
                }
                Ok(flagged)
            },
        )
        .collect();
    let combined = flags.into_iter().collect::<Result<Vec<bool>>>()?;
    Ok(TroubledSet2D::from_combined(nx, ny, combined))
}
