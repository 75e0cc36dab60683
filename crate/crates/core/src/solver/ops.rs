use crate::basis::{scaled_legendre, scaled_legendre_deriv, GaussLegendre};

/// Reference-element tables shared by the right-hand side, the indicators
/// and the limiter: a Gauss rule with `k + 2` nodes, basis values and
/// derivatives at the nodes, and the endpoint traces.
#[derive(Debug, Clone)]
pub struct ElementOps {
    pub k: usize,
    pub quad: GaussLegendre,
    /// `phi[q * (k+1) + l] = φ_l(ξ_q)`
    pub phi: Vec<f64>,
    /// `dphi[q * (k+1) + l] = φ_l'(ξ_q)`
    pub dphi: Vec<f64>,
    /// `φ_l(-1)`
    pub left: Vec<f64>,
    /// `φ_l(1)`
    pub right: Vec<f64>,
}

impl ElementOps {
    pub fn new(k: usize) -> Self {
        Self::with_nodes(k, k + 2)
    }

    pub fn with_nodes(k: usize, nodes: usize) -> Self {
        let np = k + 1;
        let quad = GaussLegendre::new(nodes);
        let mut phi = vec![0.0; nodes * np];
        let mut dphi = vec![0.0; nodes * np];
        for (q, &x) in quad.nodes.iter().enumerate() {
            for l in 0..np {
                phi[q * np + l] = scaled_legendre(l, x);
                dphi[q * np + l] = scaled_legendre_deriv(l, x);
            }
        }
        let left = (0..np).map(|l| scaled_legendre(l, -1.0)).collect();
        let right = (0..np).map(|l| scaled_legendre(l, 1.0)).collect();
        Self { k, quad, phi, dphi, left, right }
    }

    #[inline]
    pub fn nmodes(&self) -> usize {
        self.k + 1
    }

    #[inline]
    pub fn nodes(&self) -> usize {
        self.quad.len()
    }

    #[inline]
    pub fn phi_at(&self, q: usize) -> &[f64] {
        let np = self.k + 1;
        &self.phi[q * np..(q + 1) * np]
    }

    #[inline]
    pub fn dphi_at(&self, q: usize) -> &[f64] {
        let np = self.k + 1;
        &self.dphi[q * np..(q + 1) * np]
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
