use rayon::prelude::*;

use super::moment::{characteristic_limit_1d, moment_limit_1d, moment_limit_2d, Frame, Neighbors2D};
use super::usable;
use crate::basis::scaled_legendre;
use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::physics::{Axis, ConservationLaw};
use crate::solver::{dot, Dg1D, Dg2D, Face};

/// Nodal density, pressure and energy must stay above this fraction of the
/// element averages.
pub const POSITIVITY_FLOOR: f64 = 1e-13;

/// Reference nodes checked for positivity: the Gauss nodes plus both ends.
fn check_nodes(dg_nodes: &[f64]) -> Vec<f64> {
    let mut v = vec![-1.0];
    v.extend_from_slice(dg_nodes);
    v.push(1.0);
    v
}

fn average_floor(law: &dyn ConservationLaw, avg: &[f64], element: impl FnOnce() -> String, t: f64) -> Result<Option<[f64; 3]>> {
    let Some(q) = law.positivity_quantities(avg) else {
        return Ok(None);
    };
    if !(q[0] > 0.0 && q[1] > 0.0 && q[2] > 0.0) {
        return Err(Error::ElementState {
            element: element(),
            time: t,
            reason: format!("nonpositive cell average (density {}, pressure {}, energy {})", q[0], q[1], q[2]),
        });
    }
    Ok(Some(q.map(|v| POSITIVITY_FLOOR * v)))
}

fn admissible(law: &dyn ConservationLaw, state: &[f64], floor: &[f64; 3]) -> bool {
    match law.positivity_quantities(state) {
        Some(q) => q.iter().zip(floor).all(|(v, f)| v.is_finite() && v >= f),
        None => true,
    }
}

/// Enforces positivity on every element after limiting: high modes are
/// dropped first, then the linear mode is re-limited, then dropped. Cell
/// averages are never touched. Returns the elements that were modified.
pub fn positivity_fallback_1d(u: &mut DgField1D, dg: &Dg1D, t: f64, characteristic: bool) -> Result<Vec<usize>> {
    let law = dg.law.as_ref();
    let nc = u.ncomp();
    if law.positivity_quantities(&vec![1.0; nc]).is_none() {
        return Ok(Vec::new());
    }
    let src = u.clone();
    let (gl, gr) = dg.ghosts(&src, t);
    let n = src.len();
    let np = src.nmodes();
    let nodes = check_nodes(&dg.ops.quad.nodes);
    let table: Vec<Vec<f64>> = nodes.iter().map(|&x| (0..np).map(|l| scaled_legendre(l, x)).collect()).collect();
    let elem = |e: isize| -> &[f64] {
        if e < 0 {
            &gl
        } else if e as usize >= n {
            &gr
        } else {
            src.element(e as usize)
        }
    };
    let ok = |e: &[f64], floor: &[f64; 3], state: &mut [f64]| {
        table.iter().all(|phi| {
            for c in 0..nc {
                state[c] = e[c * np..(c + 1) * np].iter().zip(phi).map(|(a, b)| a * b).sum();
            }
            admissible(law, state, floor)
        })
    };

    let res: Vec<Result<bool>> = u
        .as_mut_slice()
        .par_chunks_mut(nc * np)
        .enumerate()
        .map(|(j, out)| {
            let mut avg = vec![0.0; nc];
            src.average_state(j, &mut avg);
            let floor = average_floor(law, &avg, || j.to_string(), t)?.expect("checked above");
            let mut state = vec![0.0; nc];
            if np == 1 || ok(out, &floor, &mut state) {
                return Ok(false);
            }
            for c in 0..nc {
                out[c * np + 2..(c + 1) * np].iter_mut().for_each(|v| *v = 0.0);
            }
            // Re-limit the linear mode against the neighbours.
            let trunc = |e: &[f64]| -> Vec<f64> { (0..nc).flat_map(|c| [e[c * np], e[c * np + 1]]).collect() };
            let mut lin = trunc(out);
            let (lt, rt) = (trunc(elem(j as isize - 1)), trunc(elem(j as isize + 1)));
            let eig = if characteristic && nc > 1 { usable(law.eigen(&avg, Axis::X)).ok().flatten() } else { None };
            match eig {
                Some(e) => {
                    characteristic_limit_1d(&mut lin, &lt, &rt, nc, &e);
                }
                None => {
                    for c in 0..nc {
                        moment_limit_1d(&mut lin[2 * c..2 * c + 2], &lt[2 * c..2 * c + 2], &rt[2 * c..2 * c + 2]);
                    }
                }
            }
            for c in 0..nc {
                out[c * np + 1] = lin[2 * c + 1];
            }
            if !ok(out, &floor, &mut state) {
                for c in 0..nc {
                    out[c * np + 1] = 0.0;
                }
            }
            Ok(true)
        })
        .collect();
    let mut idx = Vec::new();
    for (j, r) in res.into_iter().enumerate() {
        if r? {
            idx.push(j);
        }
    }
    Ok(idx)
}

/// 2D analogue of [`positivity_fallback_1d`]; "high modes" are those of
/// total degree at least two. Nodes are the tensor product of the Gauss
/// nodes and both ends, so edges and corners are included.
pub fn positivity_fallback_2d(u: &mut DgField2D, dg: &Dg2D, t: f64, characteristic: bool) -> Result<Vec<usize>> {
    let law = dg.law.as_ref();
    let nc = u.ncomp();
    if law.positivity_quantities(&vec![1.0; nc]).is_none() {
        return Ok(Vec::new());
    }
    let src = u.clone();
    let nx = src.nx();
    let np = src.degree() + 1;
    let nm = np * np;
    let nodes = check_nodes(&dg.ops.quad.nodes);
    // basis values at every tensor node, node major
    let table: Vec<f64> = nodes
        .iter()
        .flat_map(|&x| nodes.iter().map(move |&y| (x, y)))
        .flat_map(|(x, y)| (0..nm).map(move |m| scaled_legendre(m / np, x) * scaled_legendre(m % np, y)))
        .collect();
    let ok = |e: &[f64], floor: &[f64; 3], state: &mut [f64]| {
        table.chunks_exact(nm).all(|phi| {
            for (c, s) in state.iter_mut().enumerate() {
                *s = dot(&e[c * nm..(c + 1) * nm], phi);
            }
            admissible(law, state, floor)
        })
    };
    // Keep modes (0,0), (0,1), (1,0) in a degree-1 layout.
    let trunc = |e: &[f64]| -> Vec<f64> {
        (0..nc).flat_map(|c| [e[c * nm], e[c * nm + 1], e[c * nm + np], 0.0]).collect()
    };

    let res: Vec<Result<bool>> = u
        .as_mut_slice()
        .par_chunks_mut(nc * nm)
        .enumerate()
        .map_init(
            || (Vec::new(), Vec::new(), Vec::new(), Vec::new()),
            |(bw, be, bs, bn), (idx, out)| {
                let (i, j) = (idx % nx, idx / nx);
                let mut avg = vec![0.0; nc];
                src.average_state(i, j, &mut avg);
                let floor = average_floor(law, &avg, || format!("({i}, {j})"), t)?.expect("checked above");
                let mut state = vec![0.0; nc];
                if np == 1 || ok(out, &floor, &mut state) {
                    return Ok(false);
                }
                for c in 0..nc {
                    for lx in 0..np {
                        for ly in 0..np {
                            if lx + ly >= 2 {
                                out[c * nm + lx * np + ly] = 0.0;
                            }
                        }
                    }
                }
                let mut lin = trunc(out);
                let w = trunc(dg.neighbor(&src, i, j, Face::West, t, bw));
                let e = trunc(dg.neighbor(&src, i, j, Face::East, t, be));
                let s = trunc(dg.neighbor(&src, i, j, Face::South, t, bs));
                let n = trunc(dg.neighbor(&src, i, j, Face::North, t, bn));
                let (ex, ey) = if characteristic && nc > 1 {
                    (usable(law.eigen(&avg, Axis::X)).ok().flatten(), usable(law.eigen(&avg, Axis::Y)).ok().flatten())
                } else {
                    (None, None)
                };
                match (&ex, &ey) {
                    (Some(x), Some(y)) => {
                        let nb = Neighbors2D { west: &w, east: &e, south: &s, north: &n };
                        moment_limit_2d(&mut lin, &nb, nc, Frame::Characteristic(x), Frame::Characteristic(y));
                    }
                    _ => {
                        for c in 0..nc {
                            let r = 4 * c..4 * c + 4;
                            let nb = Neighbors2D {
                                west: &w[r.clone()],
                                east: &e[r.clone()],
                                south: &s[r.clone()],
                                north: &n[r.clone()],
                            };
                            moment_limit_2d(&mut lin[r], &nb, 1, Frame::Components, Frame::Components);
                        }
                    }
                }
                for c in 0..nc {
                    out[c * nm + 1] = lin[4 * c + 1];
                    out[c * nm + np] = lin[4 * c + 2];
                }
                if !ok(out, &floor, &mut state) {
                    for c in 0..nc {
                        out[c * nm + 1] = 0.0;
                        out[c * nm + np] = 0.0;
                    }
                }
                Ok(true)
            },
        )
        .collect();
    let mut idx = Vec::new();
    for (e, r) in res.into_iter().enumerate() {
        if r? {
            idx.push(e);
        }
    }
    Ok(idx)
}
