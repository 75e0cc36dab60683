//! Uniform dyadic meshes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh1D {
    level: u32,
    a: f64,
    b: f64,
}

impl Mesh1D {
    /// `2^level` elements on `[a, b]`.
    pub fn new(level: u32, a: f64, b: f64) -> Result<Self> {
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!("bad domain [{a}, {b}]")));
        }
        if level > 24 {
            return Err(Error::invalid(format!("level {level} too large")));
        }
        Ok(Self { level, a, b })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        1usize << self.level
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn dx(&self) -> f64 {
        (self.b - self.a) / self.len() as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.a + (j as f64 + 0.5) * self.dx()
    }

    pub fn left_edge(&self, j: usize) -> f64 {
        self.a + j as f64 * self.dx()
    }

    /// Physical coordinate of reference coordinate `xi` in element `j`.
    pub fn to_physical(&self, j: usize, xi: f64) -> f64 {
        self.center(j) + 0.5 * self.dx() * xi
    }

    /// Element containing `x` (right-closed elements, `a` belongs to element 0)
    /// and its reference coordinate.
    pub fn locate(&self, x: f64) -> Option<(usize, f64)> {
        if x < self.a || x > self.b {
            return None;
        }
        let dx = self.dx();
        let mut j = ((x - self.a) / dx).ceil() as isize - 1;
        j = j.clamp(0, self.len() as isize - 1);
        let j = j as usize;
        Some((j, 2.0 * (x - self.center(j)) / dx))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh2D {
    pub x: Mesh1D,
    pub y: Mesh1D,
}

impl Mesh2D {
    pub fn new(level_x: u32, level_y: u32, (ax, bx): (f64, f64), (ay, by): (f64, f64)) -> Result<Self> {
        Ok(Self {
            x: Mesh1D::new(level_x, ax, bx)?,
            y: Mesh1D::new(level_y, ay, by)?,
        })
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn len(&self) -> usize {
        self.nx() * self.ny()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat element index, x fastest.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx() + i
    }

    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x.center(i), self.y.center(j))
    }
}
