//! Modal DG coefficient storage.
//!
//! Layout is element-major: all components and modes of one element are
//! contiguous, which keeps per-element limiter and flux work local.

use crate::basis::{eval_all, expand};
use crate::error::{Error, Result};
use crate::mesh::{Mesh1D, Mesh2D};

#[derive(Debug, Clone, PartialEq)]
pub struct DgField1D {
    pub mesh: Mesh1D,
    k: usize,
    ncomp: usize,
    coeffs: Vec<f64>,
}

impl DgField1D {
    pub fn zeros(mesh: Mesh1D, k: usize, ncomp: usize) -> Self {
        let len = mesh.len() * ncomp * (k + 1);
        Self { mesh, k, ncomp, coeffs: vec![0.0; len] }
    }

    pub fn from_coeffs(mesh: Mesh1D, k: usize, ncomp: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != mesh.len() * ncomp * (k + 1) {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                mesh.len() * ncomp * (k + 1),
                coeffs.len()
            )));
        }
        Ok(Self { mesh, k, ncomp, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn len(&self) -> usize {
        self.mesh.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self) -> u32 {
        self.mesh.level()
    }

    pub fn nmodes(&self) -> usize {
        self.k + 1
    }

    #[inline]
    fn offset(&self, c: usize, j: usize) -> usize {
        (j * self.ncomp + c) * (self.k + 1)
    }

    #[inline]
    pub fn get(&self, c: usize, j: usize, l: usize) -> f64 {
        self.coeffs[self.offset(c, j) + l]
    }

    #[inline]
    pub fn set(&mut self, c: usize, j: usize, l: usize, v: f64) {
        let o = self.offset(c, j);
        self.coeffs[o + l] = v;
    }

    /// Modal coefficients of component `c` on element `j`.
    pub fn modes(&self, c: usize, j: usize) -> &[f64] {
        let o = self.offset(c, j);
        &self.coeffs[o..o + self.k + 1]
    }

    pub fn modes_mut(&mut self, c: usize, j: usize) -> &mut [f64] {
        let o = self.offset(c, j);
        let np = self.k + 1;
        &mut self.coeffs[o..o + np]
    }

    /// All components of element `j` (`ncomp * (k+1)` values).
    pub fn element(&self, j: usize) -> &[f64] {
        let n = self.ncomp * (self.k + 1);
        &self.coeffs[j * n..(j + 1) * n]
    }

    pub fn element_mut(&mut self, j: usize) -> &mut [f64] {
        let n = self.ncomp * (self.k + 1);
        &mut self.coeffs[j * n..(j + 1) * n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Cell average of component `c` on element `j`: `u^{(0)} / √2`.
    pub fn average(&self, c: usize, j: usize) -> f64 {
        self.get(c, j, 0) * 0.5f64.sqrt()
    }

    /// Vector of cell averages of all components on element `j`.
    pub fn average_state(&self, j: usize, out: &mut [f64]) {
        for (c, o) in out.iter_mut().enumerate().take(self.ncomp) {
            *o = self.average(c, j);
        }
    }

    /// Value at reference coordinate `xi` of element `j`.
    pub fn eval_ref(&self, c: usize, j: usize, xi: f64) -> f64 {
        expand(self.modes(c, j), xi)
    }

    /// Point value at physical `x` (right-closed elements).
    pub fn eval(&self, c: usize, x: f64) -> Result<f64> {
        let (j, xi) = self
            .mesh
            .locate(x)
            .ok_or_else(|| Error::invalid(format!("x = {x} outside domain")))?;
        Ok(self.eval_ref(c, j, xi))
    }

    /// Extracts one component as a scalar field.
    pub fn component(&self, c: usize) -> DgField1D {
        let mut out = DgField1D::zeros(self.mesh, self.k, 1);
        for j in 0..self.len() {
            out.modes_mut(0, j).copy_from_slice(self.modes(c, j));
        }
        out
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: f64, other: &DgField1D) {
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(s, o)| *s += a * o);
    }

    /// `self = a * self + b * other`.
    pub fn lincomb(&mut self, a: f64, b: f64, other: &DgField1D) {
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(s, o)| *s = a * *s + b * o);
    }

    pub fn scale(&mut self, a: f64) {
        self.coeffs.iter_mut().for_each(|s| *s *= a);
    }
}

/// 2D tensor-product field. Mode index is `lx * (k+1) + ly`.
#[derive(Debug, Clone, PartialEq)]
pub struct DgField2D {
    pub mesh: Mesh2D,
    k: usize,
    ncomp: usize,
    coeffs: Vec<f64>,
}

impl DgField2D {
    pub fn zeros(mesh: Mesh2D, k: usize, ncomp: usize) -> Self {
        let len = mesh.len() * ncomp * (k + 1) * (k + 1);
        Self { mesh, k, ncomp, coeffs: vec![0.0; len] }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn nx(&self) -> usize {
        self.mesh.nx()
    }

    pub fn ny(&self) -> usize {
        self.mesh.ny()
    }

    pub fn len(&self) -> usize {
        self.mesh.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of modes per component, `(k+1)^2`.
    pub fn nmodes(&self) -> usize {
        (self.k + 1) * (self.k + 1)
    }

    #[inline]
    pub fn mode(&self, lx: usize, ly: usize) -> usize {
        lx * (self.k + 1) + ly
    }

    #[inline]
    fn offset(&self, c: usize, i: usize, j: usize) -> usize {
        (self.mesh.index(i, j) * self.ncomp + c) * self.nmodes()
    }

    #[inline]
    pub fn get(&self, c: usize, i: usize, j: usize, lx: usize, ly: usize) -> f64 {
        self.coeffs[self.offset(c, i, j) + self.mode(lx, ly)]
    }

    #[inline]
    pub fn set(&mut self, c: usize, i: usize, j: usize, lx: usize, ly: usize, v: f64) {
        let o = self.offset(c, i, j) + self.mode(lx, ly);
        self.coeffs[o] = v;
    }

    pub fn modes(&self, c: usize, i: usize, j: usize) -> &[f64] {
        let o = self.offset(c, i, j);
        &self.coeffs[o..o + self.nmodes()]
    }

    pub fn modes_mut(&mut self, c: usize, i: usize, j: usize) -> &mut [f64] {
        let o = self.offset(c, i, j);
        let n = self.nmodes();
        &mut self.coeffs[o..o + n]
    }

    pub fn element(&self, i: usize, j: usize) -> &[f64] {
        let n = self.ncomp * self.nmodes();
        let e = self.mesh.index(i, j);
        &self.coeffs[e * n..(e + 1) * n]
    }

    pub fn element_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let n = self.ncomp * self.nmodes();
        let e = self.mesh.index(i, j);
        &mut self.coeffs[e * n..(e + 1) * n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Cell average: `u^{(0,0)} / 2`.
    pub fn average(&self, c: usize, i: usize, j: usize) -> f64 {
        0.5 * self.get(c, i, j, 0, 0)
    }

    pub fn average_state(&self, i: usize, j: usize, out: &mut [f64]) {
        for (c, o) in out.iter_mut().enumerate().take(self.ncomp) {
            *o = self.average(c, i, j);
        }
    }

    pub fn eval_ref(&self, c: usize, i: usize, j: usize, xi: f64, eta: f64) -> f64 {
        let np = self.k + 1;
        let mut px = vec![0.0; np];
        let mut py = vec![0.0; np];
        eval_all(self.k, xi, &mut px);
        eval_all(self.k, eta, &mut py);
        let m = self.modes(c, i, j);
        let mut acc = 0.0;
        for lx in 0..np {
            for ly in 0..np {
                acc += m[lx * np + ly] * px[lx] * py[ly];
            }
        }
        acc
    }

    pub fn component(&self, c: usize) -> DgField2D {
        let mut out = DgField2D::zeros(self.mesh, self.k, 1);
        for j in 0..self.ny() {
            for i in 0..self.nx() {
                out.modes_mut(0, i, j).copy_from_slice(self.modes(c, i, j));
            }
        }
        out
    }

    pub fn axpy(&mut self, a: f64, other: &DgField2D) {
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(s, o)| *s += a * o);
    }

    pub fn lincomb(&mut self, a: f64, b: f64, other: &DgField2D) {
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(s, o)| *s = a * *s + b * o);
    }

    pub fn scale(&mut self, a: f64) {
        self.coeffs.iter_mut().for_each(|s| *s *= a);
    }
}
