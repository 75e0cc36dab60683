use std::sync::Arc;

use rayon::prelude::*;

use super::boundary::{Boundary1D, Side};
use super::ops::{dot, ElementOps};
use crate::error::{Error, Result};
use crate::field::DgField1D;
use crate::physics::{llf_flux, Axis, ConservationLaw};

/// Modal DG semi-discretisation on a 1D dyadic mesh.
#[derive(Clone)]
pub struct Dg1D {
    pub law: Arc<dyn ConservationLaw>,
    pub boundary: Boundary1D,
    pub ops: ElementOps,
}

impl Dg1D {
    pub fn new(law: Arc<dyn ConservationLaw>, boundary: Boundary1D, k: usize) -> Self {
        Self { law, boundary, ops: ElementOps::new(k) }
    }

    pub fn degree(&self) -> usize {
        self.ops.k
    }

    /// Ghost elements beyond the left and right boundary at time `t`.
    pub fn ghosts(&self, u: &DgField1D, t: f64) -> (Vec<f64>, Vec<f64>) {
        let size = u.ncomp() * u.nmodes();
        let mut left = vec![0.0; size];
        let mut right = vec![0.0; size];
        self.boundary.ghost(u, self.law.as_ref(), Side::Low, t, &mut left);
        self.boundary.ghost(u, self.law.as_ref(), Side::High, t, &mut right);
        (left, right)
    }

    /// `du/dt` for every modal coefficient.
    pub fn rhs(&self, u: &DgField1D, t: f64, out: &mut DgField1D) -> Result<()> {
        let n = u.len();
        let nc = u.ncomp();
        let np = u.nmodes();
        let law = self.law.as_ref();
        let ops = &self.ops;
        let (gl, gr) = self.ghosts(u, t);
        let elem = |e: isize| -> &[f64] {
            if e < 0 {
                &gl
            } else if e as usize >= n {
                &gr
            } else {
                u.element(e as usize)
            }
        };

        let mut fluxes = vec![0.0; (n + 1) * nc];
        fluxes.par_chunks_mut(nc).enumerate().try_for_each_init(
            || (vec![0.0; nc], vec![0.0; nc], vec![0.0; nc]),
            |(um, up, scratch), (i, f)| {
                let (a, b) = (elem(i as isize - 1), elem(i as isize));
                for c in 0..nc {
                    um[c] = dot(&a[c * np..(c + 1) * np], &ops.right);
                    up[c] = dot(&b[c * np..(c + 1) * np], &ops.left);
                }
                llf_flux(law, um, up, Axis::X, scratch, f)
                    .map(|_| ())
                    .map_err(|e| element_error(format!("interface {i}"), t, e))
            },
        )?;

        let scale = 2.0 / u.mesh.dx();
        let fluxes = &fluxes;
        out.as_mut_slice().par_chunks_mut(nc * np).enumerate().try_for_each_init(
            || (vec![0.0; nc], vec![0.0; nc]),
            |(state, flux), (j, o)| {
                o.iter_mut().for_each(|v| *v = 0.0);
                let e = u.element(j);
                for q in 0..ops.nodes() {
                    let phi = ops.phi_at(q);
                    for c in 0..nc {
                        state[c] = dot(&e[c * np..(c + 1) * np], phi);
                    }
                    law.flux(state, Axis::X, flux).map_err(|err| element_error(j.to_string(), t, err))?;
                    let w = ops.quad.weights[q];
                    let dphi = ops.dphi_at(q);
                    for c in 0..nc {
                        for l in 0..np {
                            o[c * np + l] += w * flux[c] * dphi[l];
                        }
                    }
                }
                let fl = &fluxes[j * nc..(j + 1) * nc];
                let fr = &fluxes[(j + 1) * nc..(j + 2) * nc];
                for c in 0..nc {
                    for l in 0..np {
                        let v = &mut o[c * np + l];
                        *v = scale * (*v - fr[c] * ops.right[l] + fl[c] * ops.left[l]);
                    }
                }
                Ok(())
            },
        )
    }

    /// Largest wave speed over the cell averages.
    pub fn max_speed(&self, u: &DgField1D) -> Result<f64> {
        let nc = u.ncomp();
        (0..u.len())
            .into_par_iter()
            .map_init(
                || vec![0.0; nc],
                |s, j| {
                    u.average_state(j, s);
                    self.law.max_wave_speed(s, Axis::X).map_err(|e| element_error(j.to_string(), f64::NAN, e))
                },
            )
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
    }
}

pub(crate) fn element_error(element: String, time: f64, err: Error) -> Error {
    match err {
        Error::InvalidState(reason) => Error::ElementState { element, time, reason },
        other => other,
    }
}
