use super::legendre::scaled_legendre;
use super::multiwavelet::{Half, MultiwaveletBasis};
use super::quadrature::GaussLegendre;
use crate::error::{Error, Result};

/// Two-scale filter matrices: `h[i][(ℓ, r)] = ⟨φ_ℓ, φ^1_{r,i}⟩` and
/// `g[i][(ℓ, r)] = ⟨ψ_ℓ, φ^1_{r,i}⟩` for child `i ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QmfFilters {
    k: usize,
    h: [Vec<f64>; 2],
    g: [Vec<f64>; 2],
}

impl QmfFilters {
    pub fn new(mw: &MultiwaveletBasis) -> Result<Self> {
        let k = mw.degree();
        let np = k + 1;
        let rule = GaussLegendre::new(k + 3);
        let inv_sqrt2 = 0.5f64.sqrt();
        let mut h = [vec![0.0; np * np], vec![0.0; np * np]];
        let mut g = [vec![0.0; np * np], vec![0.0; np * np]];
        for half in Half::BOTH {
            let i = half.index();
            for l in 0..np {
                let psi = mw.half_coeffs(l, half);
                for r in 0..np {
                    let rep = rule.integrate(-1.0, 1.0, |xi| {
                        scaled_legendre(l, half.to_parent(xi)) * scaled_legendre(r, xi)
                    });
                    h[i][l * np + r] = inv_sqrt2 * rep;
                    g[i][l * np + r] = inv_sqrt2 * psi[r];
                }
            }
        }
        Ok(Self { k, h, g })
    }

    /// Convenience constructor that also builds the multiwavelets.
    pub fn for_degree(k: usize) -> Result<(MultiwaveletBasis, Self)> {
        let mw = MultiwaveletBasis::new(k)?;
        let f = Self::new(&mw)?;
        Ok((mw, f))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn h(&self, child: usize, l: usize, r: usize) -> f64 {
        self.h[child][l * (self.k + 1) + r]
    }

    #[inline]
    pub fn g(&self, child: usize, l: usize, r: usize) -> f64 {
        self.g[child][l * (self.k + 1) + r]
    }

    /// Row-major `(k+1)×(k+1)` matrix for `H^{(child)}`.
    pub fn h_matrix(&self, child: usize) -> &[f64] {
        &self.h[child]
    }

    pub fn g_matrix(&self, child: usize) -> &[f64] {
        &self.g[child]
    }

    /// The `2(k+1)` square block matrix `[[H0, H1], [G0, G1]]`, row-major.
    pub fn block_matrix(&self) -> Vec<f64> {
        let np = self.k + 1;
        let n = 2 * np;
        let mut m = vec![0.0; n * n];
        for l in 0..np {
            for c in 0..2 {
                for r in 0..np {
                    m[l * n + c * np + r] = self.h(c, l, r);
                    m[(np + l) * n + c * np + r] = self.g(c, l, r);
                }
            }
        }
        m
    }

    /// One analysis step on a child pair: `(s_left, s_right) -> (s_coarse, d)`.
    pub fn analyze(&self, left: &[f64], right: &[f64], s_out: &mut [f64], d_out: &mut [f64]) {
        let np = self.k + 1;
        for l in 0..np {
            let mut s = 0.0;
            let mut d = 0.0;
            for r in 0..np {
                s += self.h(0, l, r) * left[r] + self.h(1, l, r) * right[r];
                d += self.g(0, l, r) * left[r] + self.g(1, l, r) * right[r];
            }
            s_out[l] = s;
            d_out[l] = d;
        }
    }

    /// Inverse of [`analyze`](Self::analyze).
    pub fn synthesize(&self, s: &[f64], d: &[f64], left: &mut [f64], right: &mut [f64]) {
        let np = self.k + 1;
        for r in 0..np {
            let mut a = 0.0;
            let mut b = 0.0;
            for l in 0..np {
                a += self.h(0, l, r) * s[l] + self.g(0, l, r) * d[l];
                b += self.h(1, l, r) * s[l] + self.g(1, l, r) * d[l];
            }
            left[r] = a;
            right[r] = b;
        }
    }

    pub(crate) fn check_degree(&self, k: usize) -> Result<()> {
        if k != self.k {
            return Err(Error::invalid(format!("filters built for k={} used with k={k}", self.k)));
        }
        Ok(())
    }
}
