//! Alpert multiwavelets on [-1, 1].
//!
//! Each `ψ_ℓ` is stored as two coefficient vectors: its expansion in the
//! scaled Legendre basis of the left child `(-1, 0]` and of the right child
//! `(0, 1]`, both written in the child's own reference coordinate
//! `ξ ∈ [-1, 1]` (`x = (ξ - 1)/2` on the left, `x = (ξ + 1)/2` on the right).
//! In that representation the `L²(-1, 1)` inner product of two piecewise
//! polynomials is half the Euclidean dot product of their coefficient vectors.

use super::legendre::{expand, scaled_legendre};
use super::quadrature::GaussLegendre;
use crate::error::{Error, Result};

/// Which child interval of the parent `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Left,
    Right,
}

impl Half {
    pub const BOTH: [Half; 2] = [Half::Left, Half::Right];

    pub fn index(self) -> usize {
        match self {
            Half::Left => 0,
            Half::Right => 1,
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            Half::Left
        } else {
            Half::Right
        }
    }

    /// Parent coordinate of child-local `ξ`.
    pub fn to_parent(self, xi: f64) -> f64 {
        match self {
            Half::Left => 0.5 * (xi - 1.0),
            Half::Right => 0.5 * (xi + 1.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Half::Left => "L",
            Half::Right => "R",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiwaveletBasis {
    k: usize,
    /// `coeffs[half][ℓ * (k+1) + r]`
    coeffs: [Vec<f64>; 2],
}

impl MultiwaveletBasis {
    /// Gram-Schmidt construction from `x^ℓ sign(x)`, orthogonalised against
    /// the scaling functions and then against each other. The sign of each
    /// `ψ_ℓ` is fixed by `ψ_ℓ(1⁻) > 0`.
    pub fn new(k: usize) -> Result<Self> {
        if k > super::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        let np = k + 1;
        let rule = GaussLegendre::new(k + 3);
        // Child-basis representation of a function on [-1, 1].
        let represent = |f: &dyn Fn(f64) -> f64| -> Vec<f64> {
            let mut v = vec![0.0; 2 * np];
            for half in Half::BOTH {
                for r in 0..np {
                    v[half.index() * np + r] =
                        rule.integrate(-1.0, 1.0, |xi| f(half.to_parent(xi)) * scaled_legendre(r, xi));
                }
            }
            v
        };
        let inner = |a: &[f64], b: &[f64]| -> f64 { 0.5 * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() };

        let scaling: Vec<Vec<f64>> = (0..np).map(|m| represent(&|x| scaled_legendre(m, x))).collect();
        let mut psi: Vec<Vec<f64>> = Vec::with_capacity(np);
        for l in 0..np {
            let sgn = |x: f64| if x > 0.0 { 1.0 } else { -1.0 };
            let mut v = represent(&|x| x.powi(l as i32) * sgn(x));
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for basis_vec in scaling.iter().chain(psi.iter()) {
                    let p = inner(&v, basis_vec);
                    v.iter_mut().zip(basis_vec).for_each(|(a, b)| *a -= p * b);
                }
            }
            let norm = inner(&v, &v).sqrt();
            v.iter_mut().for_each(|a| *a /= norm);
            if expand(&v[np..], 1.0) < 0.0 {
                v.iter_mut().for_each(|a| *a = -*a);
            }
            psi.push(v);
        }
        let mut coeffs = [vec![0.0; np * np], vec![0.0; np * np]];
        for (l, v) in psi.iter().enumerate() {
            for half in Half::BOTH {
                let h = half.index();
                coeffs[h][l * np..(l + 1) * np].copy_from_slice(&v[h * np..(h + 1) * np]);
            }
        }
        Ok(Self { k, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Legendre coefficients of `ψ_ℓ` on the given child.
    pub fn half_coeffs(&self, l: usize, half: Half) -> &[f64] {
        let np = self.k + 1;
        &self.coeffs[half.index()][l * np..(l + 1) * np]
    }

    /// `ψ_ℓ` on child `half` at child-local coordinate `ξ` (one-sided at the ends).
    pub fn eval_half(&self, l: usize, half: Half, xi: f64) -> f64 {
        expand(self.half_coeffs(l, half), xi)
    }

    /// `ψ_ℓ(t)` for `t ∈ [-1, 1]`; the left piece owns `(-1, 0]`.
    pub fn eval(&self, l: usize, t: f64) -> f64 {
        if t <= 0.0 {
            self.eval_half(l, Half::Left, 2.0 * t + 1.0)
        } else {
            self.eval_half(l, Half::Right, 2.0 * t - 1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dense quadrature over both halves, independent of the coefficient form.
    fn l2(f: impl Fn(f64) -> f64 + Copy, g: impl Fn(f64) -> f64 + Copy) -> f64 {
        let rule = GaussLegendre::new(24);
        rule.integrate(-1.0, 0.0, |x| f(x) * g(x)) + rule.integrate(0.0, 1.0, |x| f(x) * g(x))
    }

    #[test]
    fn haar_case() {
        let mw = MultiwaveletBasis::new(0).unwrap();
        let s = 0.5f64.sqrt();
        assert!((mw.eval(0, -0.5) + s).abs() < 1e-15);
        assert!((mw.eval(0, 0.5) - s).abs() < 1e-15);
        assert!((mw.eval(0, 0.0) + s).abs() < 1e-15);
    }

    #[test]
    fn haar_matches_brute_force_orthogonalisation() {
        // W_0^1 is one-dimensional: the unit vector orthogonal to the constant
        // within piecewise constants is ±(-1, 1)/√2.
        let a = [1.0f64, 1.0];
        let mut b = [1.0f64, 0.0];
        let p = (a[0] * b[0] + a[1] * b[1]) / 2.0;
        b[0] -= p * a[0];
        b[1] -= p * a[1];
        let n = (b[0] * b[0] + b[1] * b[1]).sqrt();
        let oracle = [-(b[0] / n).abs(), (b[1] / n).abs()];
        let mw = MultiwaveletBasis::new(0).unwrap();
        assert!((mw.eval(0, -0.5) - oracle[0]).abs() < 1e-15);
        assert!((mw.eval(0, 0.5) - oracle[1]).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_orthogonal_and_vanishing_moments() {
        for k in 0..=9 {
            let mw = MultiwaveletBasis::new(k).unwrap();
            for l in 0..=k {
                for m in 0..=k {
                    let ww = l2(|x| mw.eval(l, x), |x| mw.eval(m, x));
                    let want = if l == m { 1.0 } else { 0.0 };
                    assert!((ww - want).abs() < 1e-12, "k={k} <ψ{l},ψ{m}>={ww}");
                    let ws = l2(|x| mw.eval(l, x), |x| scaled_legendre(m, x));
                    assert!(ws.abs() < 1e-12, "k={k} <ψ{l},φ{m}>={ws}");
                    let mom = l2(|x| mw.eval(l, x), |x| x.powi(m as i32));
                    assert!(mom.abs() < 1e-12, "k={k} moment {m} of ψ{l} = {mom}");
                }
                assert!(mw.eval_half(l, Half::Right, 1.0) > 0.0);
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(MultiwaveletBasis::new(3).unwrap(), MultiwaveletBasis::new(3).unwrap());
    }

    #[test]
    fn rejects_large_degree() {
        assert!(matches!(MultiwaveletBasis::new(10), Err(Error::UnsupportedDegree(10))));
    }
}
