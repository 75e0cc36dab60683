use rayon::prelude::*;

use super::IndicatorVars;
use crate::basis::{scaled_legendre, GaussLegendre};
use crate::error::{Error, Result};
use crate::field::{DgField1D, DgField2D};
use crate::physics::ConservationLaw;

/// Converts conserved DG elements into indicator-variable elements: the
/// first conserved component (density for Euler) and optionally the
/// projected entropy measure `p / ρ^γ`.
pub struct VariableMap<'a> {
    law: &'a dyn ConservationLaw,
    vars: IndicatorVars,
    k: usize,
    ncomp: usize,
    quad: GaussLegendre,
    tab: Vec<f64>,
}

impl<'a> VariableMap<'a> {
    pub fn new(law: &'a dyn ConservationLaw, vars: IndicatorVars, k: usize) -> Result<Self> {
        if vars == IndicatorVars::DensityEntropy && law.entropy_measure(&vec![1.0; law.ncomp()]).is_none() {
            return Err(Error::invalid(format!("{} has no entropy variable", law.name())));
        }
        let quad = GaussLegendre::new(k + 3);
        let np = k + 1;
        let mut tab = vec![0.0; quad.len() * np];
        for (q, &x) in quad.nodes.iter().enumerate() {
            for l in 0..np {
                tab[q * np + l] = scaled_legendre(l, x);
            }
        }
        Ok(Self { law, vars, k, ncomp: law.ncomp(), quad, tab })
    }

    pub fn nvars(&self) -> usize {
        match self.vars {
            IndicatorVars::Density => 1,
            IndicatorVars::DensityEntropy => 2,
        }
    }

    /// One 1D element, layout `[var][mode]`.
    pub fn convert_1d(&self, elem: &[f64], out: &mut [f64]) -> Result<()> {
        let np = self.k + 1;
        out[..np].copy_from_slice(&elem[..np]);
        if self.nvars() == 1 {
            return Ok(());
        }
        let ent = &mut out[np..2 * np];
        ent.iter_mut().for_each(|v| *v = 0.0);
        let mut state = vec![0.0; self.ncomp];
        for (q, &w) in self.quad.weights.iter().enumerate() {
            let phi = &self.tab[q * np..(q + 1) * np];
            for (c, s) in state.iter_mut().enumerate() {
                *s = elem[c * np..(c + 1) * np].iter().zip(phi).map(|(a, b)| a * b).sum();
            }
            let m = self.measure(&state)?;
            for l in 0..np {
                ent[l] += w * m * phi[l];
            }
        }
        Ok(())
    }

    /// One 2D element, layout `[var][lx][ly]`.
    pub fn convert_2d(&self, elem: &[f64], out: &mut [f64]) -> Result<()> {
        let np = self.k + 1;
        let nm = np * np;
        out[..nm].copy_from_slice(&elem[..nm]);
        if self.nvars() == 1 {
            return Ok(());
        }
        let ent = &mut out[nm..2 * nm];
        ent.iter_mut().for_each(|v| *v = 0.0);
        let nq = self.quad.len();
        let mut state = vec![0.0; self.ncomp];
        for qx in 0..nq {
            let px = &self.tab[qx * np..(qx + 1) * np];
            for qy in 0..nq {
                let py = &self.tab[qy * np..(qy + 1) * np];
                for (c, s) in state.iter_mut().enumerate() {
                    let m = &elem[c * nm..(c + 1) * nm];
                    let mut v = 0.0;
                    for lx in 0..np {
                        for ly in 0..np {
                            v += m[lx * np + ly] * px[lx] * py[ly];
                        }
                    }
                    *s = v;
                }
                let m = self.measure(&state)? * self.quad.weights[qx] * self.quad.weights[qy];
                for lx in 0..np {
                    for ly in 0..np {
                        ent[lx * np + ly] += m * px[lx] * py[ly];
                    }
                }
            }
        }
        Ok(())
    }

    fn measure(&self, state: &[f64]) -> Result<f64> {
        let m = self.law.entropy_measure(state).unwrap_or(f64::NAN);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::InvalidState(format!("entropy undefined at state {state:?}")))
        }
    }

    pub fn field_1d(&self, u: &DgField1D) -> Result<DgField1D> {
        let nv = self.nvars();
        let np = u.nmodes();
        let mut out = DgField1D::zeros(u.mesh, u.degree(), nv);
        out.as_mut_slice()
            .par_chunks_mut(nv * np)
            .enumerate()
            .try_for_each(|(j, o)| self.convert_1d(u.element(j), o).map_err(|e| crate::solver::element_error(j.to_string(), f64::NAN, e)))?;
        Ok(out)
    }

    pub fn field_2d(&self, u: &DgField2D) -> Result<DgField2D> {
        let nv = self.nvars();
        let nm = u.nmodes();
        let nx = u.nx();
        let mut out = DgField2D::zeros(u.mesh, u.degree(), nv);
        out.as_mut_slice().par_chunks_mut(nv * nm).enumerate().try_for_each(|(idx, o)| {
            let (i, j) = (idx % nx, idx / nx);
            self.convert_2d(u.element(i, j), o)
                .map_err(|e| crate::solver::element_error(format!("({i}, {j})"), f64::NAN, e))
        })?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Mesh1D;
    use crate::physics::{Burgers, Euler1D};
    use crate::solver::project_1d;

    #[test]
    fn isentropic_field_has_constant_entropy() {
        let law = Euler1D::default();
        let mesh = Mesh1D::new(3, 0.0, 1.0).unwrap();
        let u = project_1d(mesh, 0, 3, |x, o| {
            let rho = 1.0 + 0.1 * x;
            o.copy_from_slice(&law.conserved(rho, 0.0, rho.powf(1.4)));
        });
        let map = VariableMap::new(&law, IndicatorVars::DensityEntropy, 0).unwrap();
        let v = map.field_1d(&u).unwrap();
        for j in 0..8 {
            assert!((v.average(1, j) - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn scalar_law_rejects_entropy() {
        assert!(VariableMap::new(&Burgers, IndicatorVars::DensityEntropy, 1).is_err());
        assert!(VariableMap::new(&Burgers, IndicatorVars::Density, 1).is_ok());
    }
}
