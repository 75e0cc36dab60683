use crate::basis::QmfFilters;
use crate::error::{Error, Result};
use crate::field::DgField2D;
use crate::mesh::Mesh2D;

/// Scaling coefficients on a `2^{lx} × 2^{ly}` grid, laid out like
/// [`DgField2D`] (x fastest, mode index `lx*(k+1) + ly`).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCoeffs2D {
    pub level_x: u32,
    pub level_y: u32,
    pub k: usize,
    pub ncomp: usize,
    pub domain: ((f64, f64), (f64, f64)),
    pub data: Vec<f64>,
}

impl ScalingCoeffs2D {
    fn zeros(level_x: u32, level_y: u32, k: usize, ncomp: usize, domain: ((f64, f64), (f64, f64))) -> Self {
        let n = (1usize << level_x) * (1usize << level_y) * ncomp * (k + 1) * (k + 1);
        Self { level_x, level_y, k, ncomp, domain, data: vec![0.0; n] }
    }

    pub fn nx(&self) -> usize {
        1 << self.level_x
    }

    pub fn ny(&self) -> usize {
        1 << self.level_y
    }

    #[inline]
    pub fn modes(&self, c: usize, i: usize, j: usize) -> &[f64] {
        let nm = (self.k + 1) * (self.k + 1);
        let o = ((j * self.nx() + i) * self.ncomp + c) * nm;
        &self.data[o..o + nm]
    }

    #[inline]
    fn modes_mut(&mut self, c: usize, i: usize, j: usize) -> &mut [f64] {
        let nm = (self.k + 1) * (self.k + 1);
        let o = ((j * self.nx() + i) * self.ncomp + c) * nm;
        &mut self.data[o..o + nm]
    }
}

/// One-step 2D decomposition: the coarse scaling block and the three detail
/// blocks, each on the `2^{nx-1} × 2^{ny-1}` coarse grid.
///
/// * `alpha`: scaling in x, multiwavelet in y
/// * `beta`: multiwavelet in x, scaling in y
/// * `gamma`: multiwavelet in both
#[derive(Debug, Clone, PartialEq)]
pub struct DetailField2D {
    pub s: ScalingCoeffs2D,
    pub alpha: ScalingCoeffs2D,
    pub beta: ScalingCoeffs2D,
    pub gamma: ScalingCoeffs2D,
}

impl DetailField2D {
    /// Sum of squares over all four blocks.
    pub fn energy(&self) -> f64 {
        [&self.s, &self.alpha, &self.beta, &self.gamma]
            .iter()
            .map(|b| b.data.iter().map(|v| v * v).sum::<f64>())
            .sum()
    }
}

/// `s = 2^{-(nx+ny)/2} u`.
pub fn dg_to_scaling_2d(field: &DgField2D) -> ScalingCoeffs2D {
    let (lx, ly) = (field.mesh.x.level(), field.mesh.y.level());
    let factor = 2f64.powf(-((lx + ly) as f64) / 2.0);
    ScalingCoeffs2D {
        level_x: lx,
        level_y: ly,
        k: field.degree(),
        ncomp: field.ncomp(),
        domain: (field.mesh.x.bounds(), field.mesh.y.bounds()),
        data: field.as_slice().iter().map(|v| v * factor).collect(),
    }
}

pub fn scaling_to_dg_2d(s: &ScalingCoeffs2D) -> Result<DgField2D> {
    let mesh = Mesh2D::new(s.level_x, s.level_y, s.domain.0, s.domain.1)?;
    let factor = 2f64.powf((s.level_x + s.level_y) as f64 / 2.0);
    let mut f = DgField2D::zeros(mesh, s.k, s.ncomp);
    f.as_mut_slice().iter_mut().zip(&s.data).for_each(|(o, v)| *o = v * factor);
    Ok(f)
}

pub fn decompose_one_level_2d(field: &DgField2D, filters: &QmfFilters) -> Result<DetailField2D> {
    decompose_scaling_2d(&dg_to_scaling_2d(field), filters)
}

/// Tensor-product analysis step, applied per component.
pub fn decompose_scaling_2d(s: &ScalingCoeffs2D, filters: &QmfFilters) -> Result<DetailField2D> {
    if s.level_x == 0 || s.level_y == 0 {
        return Err(Error::CannotDecompose);
    }
    filters.check_degree(s.k)?;
    let np = s.k + 1;
    let (cx, cy) = (s.level_x - 1, s.level_y - 1);
    let mut out_s = ScalingCoeffs2D::zeros(cx, cy, s.k, s.ncomp, s.domain);
    let mut alpha = out_s.clone();
    let mut beta = out_s.clone();
    let mut gamma = out_s.clone();
    // x-filtered intermediates for each y child: [child][lx * np + ry]
    let mut th = [vec![0.0; np * np], vec![0.0; np * np]];
    let mut tg = [vec![0.0; np * np], vec![0.0; np * np]];
    for jc in 0..out_s.ny() {
        for ic in 0..out_s.nx() {
            for c in 0..s.ncomp {
                for yc in 0..2 {
                    let l = s.modes(c, 2 * ic, 2 * jc + yc);
                    let r = s.modes(c, 2 * ic + 1, 2 * jc + yc);
                    for lx in 0..np {
                        for ry in 0..np {
                            let mut h = 0.0;
                            let mut g = 0.0;
                            for rx in 0..np {
                                let a = l[rx * np + ry];
                                let b = r[rx * np + ry];
                                h += filters.h(0, lx, rx) * a + filters.h(1, lx, rx) * b;
                                g += filters.g(0, lx, rx) * a + filters.g(1, lx, rx) * b;
                            }
                            th[yc][lx * np + ry] = h;
                            tg[yc][lx * np + ry] = g;
                        }
                    }
                }
                for lx in 0..np {
                    for ly in 0..np {
                        let (mut vs, mut va, mut vb, mut vg) = (0.0, 0.0, 0.0, 0.0);
                        for yc in 0..2 {
                            for ry in 0..np {
                                let hy = filters.h(yc, ly, ry);
                                let gy = filters.g(yc, ly, ry);
                                vs += hy * th[yc][lx * np + ry];
                                va += gy * th[yc][lx * np + ry];
                                vb += hy * tg[yc][lx * np + ry];
                                vg += gy * tg[yc][lx * np + ry];
                            }
                        }
                        let m = lx * np + ly;
                        out_s.modes_mut(c, ic, jc)[m] = vs;
                        alpha.modes_mut(c, ic, jc)[m] = va;
                        beta.modes_mut(c, ic, jc)[m] = vb;
                        gamma.modes_mut(c, ic, jc)[m] = vg;
                    }
                }
            }
        }
    }
    Ok(DetailField2D { s: out_s, alpha, beta, gamma })
}

/// Inverse of [`decompose_scaling_2d`].
pub fn reconstruct_one_level_2d(d: &DetailField2D, filters: &QmfFilters) -> Result<ScalingCoeffs2D> {
    let s = &d.s;
    filters.check_degree(s.k)?;
    let np = s.k + 1;
    let mut out = ScalingCoeffs2D::zeros(s.level_x + 1, s.level_y + 1, s.k, s.ncomp, s.domain);
    let mut th = [vec![0.0; np * np], vec![0.0; np * np]];
    let mut tg = [vec![0.0; np * np], vec![0.0; np * np]];
    for jc in 0..s.ny() {
        for ic in 0..s.nx() {
            for c in 0..s.ncomp {
                let (bs, ba, bb, bg) =
                    (s.modes(c, ic, jc), d.alpha.modes(c, ic, jc), d.beta.modes(c, ic, jc), d.gamma.modes(c, ic, jc));
                for yc in 0..2 {
                    for lx in 0..np {
                        for ry in 0..np {
                            let mut h = 0.0;
                            let mut g = 0.0;
                            for ly in 0..np {
                                let m = lx * np + ly;
                                h += filters.h(yc, ly, ry) * bs[m] + filters.g(yc, ly, ry) * ba[m];
                                g += filters.h(yc, ly, ry) * bb[m] + filters.g(yc, ly, ry) * bg[m];
                            }
                            th[yc][lx * np + ry] = h;
                            tg[yc][lx * np + ry] = g;
                        }
                    }
                    for xc in 0..2 {
                        let dst = out.modes_mut(c, 2 * ic + xc, 2 * jc + yc);
                        for rx in 0..np {
                            for ry in 0..np {
                                let mut v = 0.0;
                                for lx in 0..np {
                                    v += filters.h(xc, lx, rx) * th[yc][lx * np + ry]
                                        + filters.g(xc, lx, rx) * tg[yc][lx * np + ry];
                                }
                                dst[rx * np + ry] = v;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Dumps all four blocks as
/// `block,component,element_i,element_j,mode_x,mode_y,value` (x index first).
pub fn write_mwt_csv_2d<W: std::io::Write>(d: &DetailField2D, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["block", "component", "element_i", "element_j", "mode_x", "mode_y", "value"])?;
    let np = d.s.k + 1;
    for (name, b) in [("s", &d.s), ("alpha", &d.alpha), ("beta", &d.beta), ("gamma", &d.gamma)] {
        for c in 0..b.ncomp {
            for j in 0..b.ny() {
                for i in 0..b.nx() {
                    for (m, v) in b.modes(c, i, j).iter().enumerate() {
                        w.write_record([
                            name.to_string(),
                            c.to_string(),
                            i.to_string(),
                            j.to_string(),
                            (m / np).to_string(),
                            (m % np).to_string(),
                            format!("{v:.17e}"),
                        ])?;
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}
