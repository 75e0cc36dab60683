use rayon::prelude::*;

use super::{above_cutoff, ModeMask, TroubledSet1D, TroubledSet2D};
use crate::basis::{expand, scaled_legendre, Half, MultiwaveletBasis, QmfFilters};
use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::transform::{decompose_one_level_1d, decompose_one_level_2d, detail_on_fine_element, dg_to_scaling_1d};

/// Trapezoid weights on the nodes `-1, 0, 1` of a region, normalised so the
/// rule returns an average.
const TRAPEZOID: [(f64, f64); 3] = [(-1.0, 0.25), (0.0, 0.5), (1.0, 0.25)];

/// Below this fraction of the field magnitude the largest detail average is
/// treated as roundoff and nothing is flagged.
pub const NOISE_FLOOR: f64 = 1e-10;

/// Precomputed multiwavelet basis and filters for one degree.
#[derive(Debug, Clone)]
pub struct MultiwaveletIndicator {
    pub mw: MultiwaveletBasis,
    pub filters: QmfFilters,
}

impl MultiwaveletIndicator {
    pub fn new(k: usize) -> Result<Self> {
        let (mw, filters) = QmfFilters::for_degree(k)?;
        Ok(Self { mw, filters })
    }

    pub fn degree(&self) -> usize {
        self.mw.degree()
    }

    /// Per fine element, the trapezoid average of `|D^{n-1}|` for each
    /// component of `field`. Indexed `[component][element]`.
    pub fn detail_averages_1d(&self, field: &DgField1D) -> Result<Vec<Vec<f64>>> {
        if field.level() == 0 {
            return Err(Error::CannotIndicate("a single element has no detail level".into()));
        }
        if field.degree() != self.degree() {
            return Err(Error::invalid("indicator degree does not match the field"));
        }
        let s = dg_to_scaling_1d(field);
        let (_, d) = decompose_one_level_1d(&s, &self.filters)?;
        let np = field.nmodes();
        Ok((0..field.ncomp())
            .map(|c| {
                (0..field.len())
                    .into_par_iter()
                    .map_init(
                        || vec![0.0; np],
                        |poly, i| {
                            detail_on_fine_element(&d, &self.mw, c, i, poly);
                            TRAPEZOID.iter().map(|&(x, w)| w * expand(poly, x).abs()).sum()
                        },
                    )
                    .collect()
            })
            .collect())
    }

    /// Flags fine elements whose detail average exceeds `c · max` for any of
    /// the listed components.
    pub fn indicate_1d(&self, field: &DgField1D, components: &[usize], c: f64) -> Result<TroubledSet1D> {
        check_threshold(c)?;
        let all = self.detail_averages_1d(field)?;
        let mut set = TroubledSet1D::empty(field.len());
        for &comp in components {
            if comp >= field.ncomp() {
                return Err(Error::invalid(format!("component {comp} out of range")));
            }
            let avg = &all[comp];
            let cutoff = cutoff(avg, c, field_scale_1d(field, comp));
            for (f, &v) in set.flags.iter_mut().zip(avg) {
                *f |= above_cutoff(v, cutoff);
            }
            set.values.push(avg.clone());
            set.cutoffs.push(cutoff);
        }
        Ok(set)
    }

    /// Detail averages of the three 2D modes for component `comp`, each on its
    /// own region grid: α on `(nx/2) × ny`, β on `nx × (ny/2)`, γ on `nx × ny`.
    pub fn detail_averages_2d(&self, field: &DgField2D, comp: usize) -> Result<[Vec<f64>; 3]> {
        let (lx, ly) = (field.mesh.x.level(), field.mesh.y.level());
        if lx == 0 || ly == 0 {
            return Err(Error::CannotIndicate("2D indication needs at least two elements per direction".into()));
        }
        if field.degree() != self.degree() {
            return Err(Error::invalid("indicator degree does not match the field"));
        }
        let single = field.component(comp);
        let d = decompose_one_level_2d(&single, &self.filters)?;
        let np = field.degree() + 1;
        let scale = 2f64.powf((lx - 1) as f64 / 2.0) * 2f64.powf((ly - 1) as f64 / 2.0);
        // scal[l][a], wav[h][l][a] on the trapezoid nodes
        let scal: Vec<[f64; 3]> = (0..np).map(|l| TRAPEZOID.map(|(x, _)| scaled_legendre(l, x))).collect();
        let wav: [Vec<[f64; 3]>; 2] =
            Half::BOTH.map(|h| (0..np).map(|l| TRAPEZOID.map(|(x, _)| self.mw.eval_half(l, h, x))).collect());
        let (nx, ny) = (field.nx(), field.ny());
        let (cx, cy) = (nx / 2, ny / 2);

        let region = |coeffs: &[f64], xt: &[[f64; 3]], yt: &[[f64; 3]]| -> f64 {
            let mut total = 0.0;
            for (a, &(_, wa)) in TRAPEZOID.iter().enumerate() {
                for (b, &(_, wb)) in TRAPEZOID.iter().enumerate() {
                    let mut v = 0.0;
                    for lxx in 0..np {
                        for lyy in 0..np {
                            v += coeffs[lxx * np + lyy] * xt[lxx][a] * yt[lyy][b];
                        }
                    }
                    total += wa * wb * (scale * v).abs();
                }
            }
            total
        };

        let alpha = (0..cx * ny)
            .into_par_iter()
            .map(|idx| {
                let (ci, fj) = (idx % cx, idx / cx);
                region(d.alpha.modes(0, ci, fj / 2), &scal, &wav[fj % 2])
            })
            .collect();
        let beta = (0..nx * cy)
            .into_par_iter()
            .map(|idx| {
                let (fi, cj) = (idx % nx, idx / nx);
                region(d.beta.modes(0, fi / 2, cj), &wav[fi % 2], &scal)
            })
            .collect();
        let gamma = (0..nx * ny)
            .into_par_iter()
            .map(|idx| {
                let (fi, fj) = (idx % nx, idx / nx);
                region(d.gamma.modes(0, fi / 2, fj / 2), &wav[fi % 2], &wav[fj % 2])
            })
            .collect();
        Ok([alpha, beta, gamma])
    }

    /// Per-mode thresholds `[c_alpha, c_beta, c_gamma]`; flags from all listed
    /// components are combined by union.
    pub fn indicate_2d(&self, field: &DgField2D, components: &[usize], c: [f64; 3]) -> Result<TroubledSet2D> {
        for v in c {
            check_threshold(v)?;
        }
        let (nx, ny) = (field.nx(), field.ny());
        let mut masks = [
            ModeMask::empty(nx / 2, ny),
            ModeMask::empty(nx, ny / 2),
            ModeMask::empty(nx, ny),
        ];
        for &comp in components {
            if comp >= field.ncomp() {
                return Err(Error::invalid(format!("component {comp} out of range")));
            }
            let scale = field_scale_2d(field, comp);
            let avgs = self.detail_averages_2d(field, comp)?;
            for ((mask, avg), cm) in masks.iter_mut().zip(avgs).zip(c) {
                let cut = cutoff(&avg, cm, scale);
                for (f, &v) in mask.flags.iter_mut().zip(&avg) {
                    *f |= above_cutoff(v, cut);
                }
                mask.values.push(avg);
                mask.cutoffs.push(cut);
            }
        }
        let [alpha, beta, gamma] = masks;
        Ok(TroubledSet2D::from_modes(nx, ny, alpha, beta, gamma))
    }
}

fn check_threshold(c: f64) -> Result<()> {
    if (0.0..=1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::invalid(format!("threshold {c} outside [0, 1]")))
    }
}

/// `c · max(avg)`, or `+∞` when the maximum is roundoff relative to `scale`.
fn cutoff(avg: &[f64], c: f64, scale: f64) -> f64 {
    let max = avg.iter().cloned().fold(0.0, f64::max);
    if max <= NOISE_FLOOR * scale || max == 0.0 {
        f64::INFINITY
    } else {
        c * max
    }
}

fn field_scale_1d(field: &DgField1D, comp: usize) -> f64 {
    (0..field.len())
        .map(|j| field.modes(comp, j).iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

fn field_scale_2d(field: &DgField2D, comp: usize) -> f64 {
    let nx = field.nx();
    (0..field.len())
        .map(|idx| field.modes(comp, idx % nx, idx / nx).iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Mesh1D, Mesh2D};
    use crate::solver::{project_1d, project_2d};

    fn step(x: f64) -> f64 {
        if x > 0.0 {
            1.0
        } else {
            0.0
        }
    }

    #[test]
    fn step_flags_the_two_adjacent_elements() {
        let ind = MultiwaveletIndicator::new(1).unwrap();
        let mesh = Mesh1D::new(6, -1.0, 1.0).unwrap();
        // Jump between fine elements 32 and 33, inside coarse element 16.
        let edge = mesh.left_edge(33);
        let u = project_1d(mesh, 1, 1, |x, o| o[0] = step(x - edge));
        let set = ind.indicate_1d(&u, &[0], 0.1).unwrap();
        assert_eq!(set.indices(), vec![32, 33]);
    }

    #[test]
    fn step_on_a_coarse_edge_is_invisible() {
        let ind = MultiwaveletIndicator::new(1).unwrap();
        let mesh = Mesh1D::new(6, -1.0, 1.0).unwrap();
        let u = project_1d(mesh, 1, 1, |x, o| o[0] = step(x));
        assert!(ind.indicate_1d(&u, &[0], 0.1).unwrap().indices().is_empty());
    }

    #[test]
    fn constant_and_c_one_give_nothing() {
        let ind = MultiwaveletIndicator::new(2).unwrap();
        let mesh = Mesh1D::new(5, -1.0, 1.0).unwrap();
        let u = project_1d(mesh, 2, 1, |_, o| o[0] = 0.3);
        assert!(ind.indicate_1d(&u, &[0], 0.01).unwrap().indices().is_empty());
        let v = project_1d(mesh, 2, 1, |x, o| o[0] = step(x - 0.1) + x * x);
        assert!(ind.indicate_1d(&v, &[0], 1.0).unwrap().indices().is_empty());
    }

    #[test]
    fn level_zero_cannot_indicate() {
        let ind = MultiwaveletIndicator::new(1).unwrap();
        let u = project_1d(Mesh1D::new(0, 0.0, 1.0).unwrap(), 1, 1, |x, o| o[0] = x);
        assert!(matches!(ind.indicate_1d(&u, &[0], 0.1), Err(Error::CannotIndicate(_))));
    }

    #[test]
    fn mode_orientation() {
        let ind = MultiwaveletIndicator::new(1).unwrap();
        let mesh = Mesh2D::new(4, 4, (-1.0, 1.0), (-1.0, 1.0)).unwrap();
        let xs = project_2d(mesh, 1, 1, |x, _, o| o[0] = step(x - 0.05));
        let t = ind.indicate_2d(&xs, &[0], [0.1; 3]).unwrap();
        let [a, b, g] = t.modes.as_ref().unwrap();
        assert!(a.count() == 0 && g.count() == 0 && b.count() > 0);
        let ys = project_2d(mesh, 1, 1, |_, y, o| o[0] = step(y - 0.05));
        let t = ind.indicate_2d(&ys, &[0], [0.1; 3]).unwrap();
        let [a, b, g] = t.modes.as_ref().unwrap();
        assert!(b.count() == 0 && g.count() == 0 && a.count() > 0);
        let diag = project_2d(mesh, 1, 1, |x, y, o| o[0] = step(x + y - 0.03));
        let t = ind.indicate_2d(&diag, &[0], [0.1; 3]).unwrap();
        assert!(t.mode(crate::indicators::Mode::Gamma).unwrap().count() > 0);
        let c = project_2d(mesh, 1, 1, |_, _, o| o[0] = 2.0);
        assert_eq!(ind.indicate_2d(&c, &[0], [0.1; 3]).unwrap().count(), 0);
    }
}
