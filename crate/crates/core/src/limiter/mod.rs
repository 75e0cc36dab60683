//! Moment limiter with characteristic decomposition and a positivity
//! fallback, applied to flagged elements.

mod moment;
mod positivity;

pub use moment::{characteristic_limit_1d, minmod, moment_limit_1d, moment_limit_2d, Frame, Neighbors2D};
pub use positivity::{positivity_fallback_1d, positivity_fallback_2d, POSITIVITY_FLOOR};

pub use crate::basis::moment_beta;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::physics::{Axis, EigenSystem};
use crate::solver::{element_error, Dg1D, Dg2D, Face};

/// Eigenvector matrices whose normalised determinant falls below this are
/// not trusted; the element is limited component-wise instead.
pub const SINGULAR_EIGEN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LimiterMode {
    /// Limit only flagged elements.
    #[default]
    Indicated,
    /// Limit every element regardless of flags.
    Everywhere,
    /// Indicate but never limit.
    Off,
}

impl LimiterMode {
    pub fn label(self) -> &'static str {
        match self {
            LimiterMode::Indicated => "indicated",
            LimiterMode::Everywhere => "everywhere",
            LimiterMode::Off => "off",
        }
    }
}

impl std::str::FromStr for LimiterMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "indicated" => Ok(LimiterMode::Indicated),
            "everywhere" => Ok(LimiterMode::Everywhere),
            "off" => Ok(LimiterMode::Off),
            _ => Err(Error::invalid(format!("unknown limiter mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimiterConfig {
    pub mode: LimiterMode,
    /// Limit in characteristic variables when the law provides them.
    pub characteristic: bool,
    /// Run the positivity fallback after limiting (systems with a pressure).
    pub positivity: bool,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self { mode: LimiterMode::Indicated, characteristic: true, positivity: true }
    }
}

fn usable(eig: Option<Result<EigenSystem>>) -> Result<Option<EigenSystem>> {
    match eig {
        None => Ok(None),
        Some(Err(e)) => Err(e),
        Some(Ok(e)) if e.normalized_det().abs() < SINGULAR_EIGEN_TOL => Ok(None),
        Some(Ok(e)) => Ok(Some(e)),
    }
}

/// Applies the moment limiter to the elements selected by `mask` (all when
/// `None`). Neighbour data come from the unlimited field. Returns the
/// elements whose coefficients changed.
pub fn limit_1d(u: &mut DgField1D, dg: &Dg1D, t: f64, mask: Option<&[bool]>, characteristic: bool) -> Result<Vec<usize>> {
    if u.degree() == 0 {
        return Ok(Vec::new());
    }
    let src = u.clone();
    let (gl, gr) = dg.ghosts(&src, t);
    let n = src.len();
    let nc = src.ncomp();
    let np = src.nmodes();
    let law = dg.law.as_ref();
    let elem = |e: isize| -> &[f64] {
        if e < 0 {
            &gl
        } else if e as usize >= n {
            &gr
        } else {
            src.element(e as usize)
        }
    };
    let changed: Vec<Result<bool>> = u
        .as_mut_slice()
        .par_chunks_mut(nc * np)
        .enumerate()
        .map(|(j, out)| {
            if !mask.map_or(true, |m| m[j]) {
                return Ok(false);
            }
            let (lt, rt) = (elem(j as isize - 1), elem(j as isize + 1));
            let eig = if characteristic && nc > 1 {
                let mut avg = vec![0.0; nc];
                src.average_state(j, &mut avg);
                usable(law.eigen(&avg, Axis::X)).map_err(|e| element_error(j.to_string(), t, e))?
            } else {
                None
            };
            Ok(match eig {
                Some(e) => characteristic_limit_1d(out, lt, rt, nc, &e),
                None => {
                    let mut any = false;
                    for c in 0..nc {
                        let r = c * np..(c + 1) * np;
                        any |= moment_limit_1d(&mut out[r.clone()], &lt[r.clone()], &rt[r]);
                    }
                    any
                }
            })
        })
        .collect();
    let mut idx = Vec::new();
    for (j, c) in changed.into_iter().enumerate() {
        if c? {
            idx.push(j);
        }
    }
    Ok(idx)
}

/// 2D analogue of [`limit_1d`]. `mask` is indexed `j * nx + i`.
pub fn limit_2d(u: &mut DgField2D, dg: &Dg2D, t: f64, mask: Option<&[bool]>, characteristic: bool) -> Result<Vec<usize>> {
    if u.degree() == 0 {
        return Ok(Vec::new());
    }
    let src = u.clone();
    let nx = src.nx();
    let nc = src.ncomp();
    let nm = src.nmodes();
    let law = dg.law.as_ref();
    let changed: Vec<Result<bool>> = u
        .as_mut_slice()
        .par_chunks_mut(nc * nm)
        .enumerate()
        .map_init(
            || (Vec::new(), Vec::new(), Vec::new(), Vec::new()),
            |(bw, be, bs, bn), (idx, out)| {
                if !mask.map_or(true, |m| m[idx]) {
                    return Ok(false);
                }
                let (i, j) = (idx % nx, idx / nx);
                let nb = Neighbors2D {
                    west: dg.neighbor(&src, i, j, Face::West, t, bw),
                    east: dg.neighbor(&src, i, j, Face::East, t, be),
                    south: dg.neighbor(&src, i, j, Face::South, t, bs),
                    north: dg.neighbor(&src, i, j, Face::North, t, bn),
                };
                let (ex, ey) = if characteristic && nc > 1 {
                    let mut avg = vec![0.0; nc];
                    src.average_state(i, j, &mut avg);
                    let lbl = |e| element_error(format!("({i}, {j})"), t, e);
                    (usable(law.eigen(&avg, Axis::X)).map_err(lbl)?, usable(law.eigen(&avg, Axis::Y)).map_err(lbl)?)
                } else {
                    (None, None)
                };
                let any = match (&ex, &ey) {
                    (Some(x), Some(y)) => {
                        moment_limit_2d(out, &nb, nc, Frame::Characteristic(x), Frame::Characteristic(y))
                    }
                    _ => {
                        let mut any = false;
                        for c in 0..nc {
                            let r = c * nm..(c + 1) * nm;
                            let sub = Neighbors2D {
                                west: &nb.west[r.clone()],
                                east: &nb.east[r.clone()],
                                south: &nb.south[r.clone()],
                                north: &nb.north[r.clone()],
                            };
                            any |= moment_limit_2d(&mut out[r], &sub, 1, Frame::Components, Frame::Components);
                        }
                        any
                    }
                };
                if any {
                    // Averages must stay bit-identical after the frame round trip.
                    for c in 0..nc {
                        out[c * nm] = src.modes(c, i, j)[0];
                    }
                }
                Ok(any)
            },
        )
        .collect();
    let mut idx = Vec::new();
    for (e, c) in changed.into_iter().enumerate() {
        if c? {
            idx.push(e);
        }
    }
    Ok(idx)
}
