use super::quadrature::legendre_and_derivative;
use crate::error::{Error, Result};

/// `φ_ℓ(x) = sqrt(ℓ + 1/2) P_ℓ(x)`, evaluated anywhere (no range check, so
/// neighbour polynomials can be extended beyond their element).
#[inline]
pub fn scaled_legendre(l: usize, x: f64) -> f64 {
    (l as f64 + 0.5).sqrt() * legendre_and_derivative(l, x).0
}

/// Derivative of [`scaled_legendre`] with respect to `x`.
#[inline]
pub fn scaled_legendre_deriv(l: usize, x: f64) -> f64 {
    (l as f64 + 0.5).sqrt() * legendre_and_derivative(l, x).1
}

/// Orthonormal scaled Legendre scaling functions `φ_0..φ_k` on [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingBasis {
    k: usize,
}

impl ScalingBasis {
    pub fn new(k: usize) -> Result<Self> {
        if k > super::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(k));
        }
        Ok(Self { k })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.k + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checked evaluation of `φ_ℓ(x)` with `0 ≤ ℓ ≤ k` and `x ∈ [-1, 1]`.
    pub fn eval(&self, l: usize, x: f64) -> Result<f64> {
        if l > self.k {
            return Err(Error::invalid(format!("mode {l} exceeds degree {}", self.k)));
        }
        if !(-1.0 - 1e-14..=1.0 + 1e-14).contains(&x) {
            return Err(Error::invalid(format!("x = {x} outside [-1, 1]")));
        }
        Ok(scaled_legendre(l, x))
    }

    /// Fills `out[ℓ] = φ_ℓ(x)` for all modes.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        eval_all(self.k, x, out);
    }

    /// Evaluates the expansion `Σ c_ℓ φ_ℓ(x)`.
    pub fn expand(&self, coeffs: &[f64], x: f64) -> f64 {
        expand(coeffs, x)
    }
}

/// Fills `out[ℓ] = φ_ℓ(x)` for `ℓ = 0..=k` via the three-term recurrence.
pub fn eval_all(k: usize, x: f64, out: &mut [f64]) {
    let mut p0 = 1.0;
    out[0] = p0 * 0.5f64.sqrt();
    if k == 0 {
        return;
    }
    let mut p1 = x;
    out[1] = p1 * 1.5f64.sqrt();
    for m in 1..k {
        let mf = m as f64;
        let p2 = ((2.0 * mf + 1.0) * x * p1 - mf * p0) / (mf + 1.0);
        out[m + 1] = p2 * (mf + 1.5).sqrt();
        p0 = p1;
        p1 = p2;
    }
}

/// `Σ c_ℓ φ_ℓ(x)`.
pub fn expand(coeffs: &[f64], x: f64) -> f64 {
    let mut p0 = 1.0;
    let mut acc = coeffs[0] * 0.5f64.sqrt();
    if coeffs.len() == 1 {
        return acc;
    }
    let mut p1 = x;
    acc += coeffs[1] * 1.5f64.sqrt() * p1;
    for m in 1..coeffs.len() - 1 {
        let mf = m as f64;
        let p2 = ((2.0 * mf + 1.0) * x * p1 - mf * p0) / (mf + 1.0);
        acc += coeffs[m + 1] * (mf + 1.5).sqrt() * p2;
        p0 = p1;
        p1 = p2;
    }
    acc
}
