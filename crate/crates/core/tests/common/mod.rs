#![allow(dead_code)]

//! Helpers shared by the integration and acceptance tests.

use mwdg::basis::{scaled_legendre, GaussLegendre};
use mwdg::{DgField1D, Mesh1D};
use rand::Rng;

/// Exact solution structure of a 1D Euler Riemann problem whose left wave is
/// a rarefaction and right wave a shock (Sod-type data).
#[derive(Debug, Clone, Copy)]
pub struct SodWaves {
    pub p_star: f64,
    pub u_star: f64,
    /// Rarefaction head and tail speeds.
    pub head: f64,
    pub tail: f64,
    pub contact: f64,
    pub shock: f64,
}

pub fn sod_waves(left: (f64, f64, f64), right: (f64, f64, f64), gamma: f64) -> SodWaves {
    let (rl, ul, pl) = left;
    let (rr, ur, pr) = right;
    let cl = (gamma * pl / rl).sqrt();
    let cr = (gamma * pr / rr).sqrt();
    // Toro's pressure functions
    let f = |p: f64, r: f64, pk: f64, ck: f64| -> (f64, f64) {
        if p > pk {
            let a = 2.0 / ((gamma + 1.0) * r);
            let b = (gamma - 1.0) / (gamma + 1.0) * pk;
            let s = (a / (p + b)).sqrt();
            ((p - pk) * s, s * (1.0 - 0.5 * (p - pk) / (p + b)))
        } else {
            let e = (gamma - 1.0) / (2.0 * gamma);
            let v = 2.0 * ck / (gamma - 1.0) * ((p / pk).powf(e) - 1.0);
            (v, (p / pk).powf(-(gamma + 1.0) / (2.0 * gamma)) / (r * ck))
        }
    };
    let mut p = 0.5 * (pl + pr);
    for _ in 0..100 {
        let (fl, dl) = f(p, rl, pl, cl);
        let (fr, dr) = f(p, rr, pr, cr);
        let next = (p - (fl + fr + ur - ul) / (dl + dr)).max(1e-12);
        if (next - p).abs() < 1e-15 * p {
            p = next;
            break;
        }
        p = next;
    }
    let u = 0.5 * (ul + ur) + 0.5 * (f(p, rr, pr, cr).0 - f(p, rl, pl, cl).0);
    let rho_star_l = rl * (p / pl).powf(1.0 / gamma);
    let c_star_l = (gamma * p / rho_star_l).sqrt();
    let shock = ur + cr * ((gamma + 1.0) / (2.0 * gamma) * p / pr + (gamma - 1.0) / (2.0 * gamma)).sqrt();
    SodWaves { p_star: p, u_star: u, head: ul - cl, tail: u - c_star_l, contact: u, shock }
}

/// DG field holding the projection of a random piecewise polynomial with a
/// few jumps at random positions, plus small random coefficient noise.
pub fn random_piecewise_field(rng: &mut impl Rng, level: u32, k: usize) -> DgField1D {
    let mesh = Mesh1D::new(level, 0.0, 1.0).unwrap();
    let pieces = rng.gen_range(1..=4);
    let mut breaks: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.05..0.95)).collect();
    breaks.sort_by(f64::total_cmp);
    let polys: Vec<Vec<f64>> = (0..=pieces)
        .map(|_| (0..=3).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let eval = |x: f64| -> f64 {
        let p = &polys[breaks.iter().filter(|&&b| x >= b).count()];
        p.iter().rev().fold(0.0, |acc, c| acc * x + c)
    };
    let quad = GaussLegendre::new(k + 8);
    let mut u = DgField1D::zeros(mesh, k, 1);
    for j in 0..mesh.len() {
        let (a, b) = (mesh.left_edge(j), mesh.left_edge(j) + mesh.dx());
        // Split the element at any break inside it so the projection is exact.
        let mut cuts = vec![a];
        cuts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        cuts.push(b);
        for l in 0..=k {
            let mut v = 0.0;
            for w in cuts.windows(2) {
                v += quad.integrate(w[0], w[1], |x| eval(x) * scaled_legendre(l, 2.0 * (x - a) / (b - a) - 1.0));
            }
            v *= 2.0 / (b - a);
            v += 1e-3 * rng.gen_range(-1.0..1.0);
            u.set(0, j, l, v);
        }
    }
    u
}
