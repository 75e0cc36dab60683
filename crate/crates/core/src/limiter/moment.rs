use crate::basis::moment_beta;
use crate::error::{Error, Result};
use crate::physics::EigenSystem;

/// `sign(a_1) · min |a_r|` when all arguments share a sign, else 0.
pub fn minmod(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::invalid("minmod of an empty list"));
    }
    Ok(minmod_unchecked(values))
}

#[inline]
pub(crate) fn minmod_unchecked(values: &[f64]) -> f64 {
    let first = values[0];
    if first == 0.0 {
        return 0.0;
    }
    let positive = first > 0.0;
    let mut m = first.abs();
    for &v in &values[1..] {
        if (v > 0.0) != positive || v == 0.0 {
            return 0.0;
        }
        m = m.min(v.abs());
    }
    if positive {
        m
    } else {
        -m
    }
}

#[inline]
pub(crate) fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    minmod_unchecked(&[a, b, c])
}

/// Moment limiter on one scalar element, modes `0..=k`, against its left
/// and right neighbours. Limits from the top mode down and stops at the
/// first mode that survives unchanged. Returns whether anything changed.
pub fn moment_limit_1d(center: &mut [f64], left: &[f64], right: &[f64]) -> bool {
    let k = center.len() - 1;
    let mut changed = false;
    for l in (1..=k).rev() {
        let b = moment_beta(l);
        let m = minmod3(center[l], b * (right[l - 1] - center[l - 1]), b * (center[l - 1] - left[l - 1]));
        if m == center[l] {
            break;
        }
        center[l] = m;
        changed = true;
    }
    changed
}

/// Characteristic-variable version for a system with `nc` components laid
/// out `[component][mode]`. Each characteristic field runs its own cascade.
/// The `ℓ = 0` coefficients are left bit-identical.
pub fn characteristic_limit_1d(elem: &mut [f64], left: &[f64], right: &[f64], nc: usize, eig: &EigenSystem) -> bool {
    let np = elem.len() / nc;
    let to_char = |src: &[f64]| -> Vec<f64> {
        // `[field][mode]`
        let mut out = vec![0.0; nc * np];
        let mut v = vec![0.0; nc];
        let mut w = vec![0.0; nc];
        for l in 0..np {
            for c in 0..nc {
                v[c] = src[c * np + l];
            }
            eig.to_characteristic(&v, &mut w);
            for c in 0..nc {
                out[c * np + l] = w[c];
            }
        }
        out
    };
    let mut wc = to_char(elem);
    let (wl, wr) = (to_char(left), to_char(right));
    let mut changed = false;
    for f in 0..nc {
        let r = f * np..(f + 1) * np;
        changed |= moment_limit_1d(&mut wc[r.clone()], &wl[r.clone()], &wr[r]);
    }
    if changed {
        let mut w = vec![0.0; nc];
        let mut v = vec![0.0; nc];
        for l in 1..np {
            for c in 0..nc {
                w[c] = wc[c * np + l];
            }
            eig.from_characteristic(&w, &mut v);
            for c in 0..nc {
                elem[c * np + l] = v[c];
            }
        }
    }
    changed
}

/// Neighbour coefficients around a 2D element, `[component][lx][ly]`.
pub struct Neighbors2D<'a> {
    pub west: &'a [f64],
    pub east: &'a [f64],
    pub south: &'a [f64],
    pub north: &'a [f64],
}

/// Basis change applied before the minmod in one direction.
#[derive(Clone, Copy)]
pub enum Frame<'a> {
    Components,
    Characteristic(&'a EigenSystem),
}

impl Frame<'_> {
    fn forward(&self, v: &[f64], out: &mut [f64]) {
        match self {
            Frame::Components => out.copy_from_slice(v),
            Frame::Characteristic(e) => e.to_characteristic(v, out),
        }
    }

    fn back(&self, w: &[f64], out: &mut [f64]) {
        match self {
            Frame::Components => out.copy_from_slice(w),
            Frame::Characteristic(e) => e.from_characteristic(w, out),
        }
    }
}

/// Limits one coefficient vector in one direction. `center` holds the
/// current value of `(lx, ly)` per component; `lower`, `plus`, `minus` the
/// `(lx-1, ly)` (or `(lx, ly-1)`) vectors of the element and its two
/// neighbours along the direction. Returns whether the minmod changed it.
fn limit_direction(frame: Frame, beta: f64, center: &mut [f64], lower: &[f64], plus: &[f64], minus: &[f64]) -> bool {
    let nc = center.len();
    let mut w = vec![0.0; nc];
    let mut fwd = vec![0.0; nc];
    let mut bwd = vec![0.0; nc];
    let mut d = vec![0.0; nc];
    frame.forward(center, &mut w);
    for c in 0..nc {
        d[c] = plus[c] - lower[c];
    }
    frame.forward(&d, &mut fwd);
    for c in 0..nc {
        d[c] = lower[c] - minus[c];
    }
    frame.forward(&d, &mut bwd);
    let mut changed = false;
    for c in 0..nc {
        let m = minmod3(w[c], beta * fwd[c], beta * bwd[c]);
        if m != w[c] {
            w[c] = m;
            changed = true;
        }
    }
    if changed {
        frame.back(&w, center);
    }
    changed
}

fn gather(src: &[f64], nc: usize, nm: usize, m: usize, out: &mut [f64]) {
    for c in 0..nc {
        out[c] = src[c * nm + m];
    }
}

/// 2D moment limiter on one element with `nc` components. Coefficients are
/// limited by descending total degree `lx + ly`, larger `lx` first within a
/// tier. A coefficient with `lx > 0` is limited against x differences of
/// `(lx-1, ly)` in the `x` frame, one with `ly > 0` against y differences of
/// `(lx, ly-1)` in the `y` frame. Tiers whose coefficients are all zero are
/// skipped; the cascade stops after the first tier left unchanged.
pub fn moment_limit_2d(elem: &mut [f64], nb: &Neighbors2D, nc: usize, x: Frame, y: Frame) -> bool {
    let nm = elem.len() / nc;
    let np = (nm as f64).sqrt().round() as usize;
    let k = np - 1;
    let mut any = false;
    let mut cur = vec![0.0; nc];
    let (mut lo, mut pl, mut mi) = (vec![0.0; nc], vec![0.0; nc], vec![0.0; nc]);
    for tier in (1..=2 * k).rev() {
        let members: Vec<(usize, usize)> =
            (0..=k).rev().filter_map(|lx| tier.checked_sub(lx).filter(|&ly| ly <= k).map(|ly| (lx, ly))).collect();
        if members.iter().all(|&(lx, ly)| (0..nc).all(|c| elem[c * nm + lx * np + ly] == 0.0)) {
            continue;
        }
        // Neighbour differences use the pre-tier values of lower modes, which
        // this tier never touches.
        let mut tier_changed = false;
        for &(lx, ly) in &members {
            let m = lx * np + ly;
            gather(elem, nc, nm, m, &mut cur);
            let mut changed = false;
            if lx > 0 {
                let lower = (lx - 1) * np + ly;
                gather(elem, nc, nm, lower, &mut lo);
                gather(nb.east, nc, nm, lower, &mut pl);
                gather(nb.west, nc, nm, lower, &mut mi);
                changed |= limit_direction(x, moment_beta(lx), &mut cur, &lo, &pl, &mi);
            }
            if ly > 0 {
                let lower = lx * np + ly - 1;
                gather(elem, nc, nm, lower, &mut lo);
                gather(nb.north, nc, nm, lower, &mut pl);
                gather(nb.south, nc, nm, lower, &mut mi);
                changed |= limit_direction(y, moment_beta(ly), &mut cur, &lo, &pl, &mi);
            }
            if changed {
                for c in 0..nc {
                    elem[c * nm + m] = cur[c];
                }
                tier_changed = true;
            }
        }
        if !tier_changed {
            break;
        }
        any = true;
    }
    any
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minmod_table() {
        assert_eq!(minmod(&[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(minmod(&[1.0, -2.0, 3.0]).unwrap(), 0.0);
        assert_eq!(minmod(&[-0.5, -0.2, -0.9]).unwrap(), -0.2);
        assert_eq!(minmod(&[0.0, 1.0]).unwrap(), 0.0);
        assert!(minmod(&[]).is_err());
    }

    #[test]
    fn smooth_linear_is_kept() {
        // u = x on unit cells: averages differ by √2, slope coefficient is √(2/3)/2.
        let s = (2.0f64 / 3.0).sqrt() / 2.0;
        let mut c = [0.0, s];
        assert!(!moment_limit_1d(&mut c, &[-2f64.sqrt(), s], &[2f64.sqrt(), s]));
        assert_eq!(c, [0.0, s]);
    }

    #[test]
    fn flat_neighbours_cascade_to_zero() {
        let mut c = [1.0, 0.3, -0.2];
        assert!(moment_limit_1d(&mut c, &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]));
        assert_eq!(c, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn y_constant_2d_matches_1d() {
        let k = 2;
        let np = k + 1;
        let rows = [[0.5, 0.2, 0.05], [1.0, 0.4, -0.3], [1.9, 0.1, 0.02]];
        let embed = |r: &[f64; 3]| {
            let mut e = vec![0.0; np * np];
            for lx in 0..np {
                e[lx * np] = r[lx];
            }
            e
        };
        let mut e = embed(&rows[1]);
        let (w, east) = (embed(&rows[0]), embed(&rows[2]));
        let same = e.clone();
        let nb = Neighbors2D { west: &w, east: &east, south: &same, north: &same };
        moment_limit_2d(&mut e, &nb, 1, Frame::Components, Frame::Components);
        let mut one = rows[1];
        moment_limit_1d(&mut one, &rows[0], &rows[2]);
        for lx in 0..np {
            assert_eq!(e[lx * np], one[lx]);
            for ly in 1..np {
                assert_eq!(e[lx * np + ly], 0.0);
            }
        }
    }
}
