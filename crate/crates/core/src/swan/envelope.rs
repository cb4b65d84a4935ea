//! Exact upper envelope of hemisphere powers over the fundamental
//! parallelogram, as a power diagram: the comparison of squared heights of
//! two hemispheres is linear in the plane coordinates, so cells are convex
//! polygons produced by half-plane clipping with integer coefficients.

use super::hemisphere::{covers_ball, fundamental_polygon, Covering, Hemisphere};
use crate::exact::{rat_int, Rat};
use crate::qfield::{Disc, PlanePoint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

/// One cell of the floor: the hemisphere, its clipped polygon, and the
/// exact squared height at every polygon vertex.
#[derive(Clone, Debug)]
pub struct FloorFace {
    pub hemi: Hemisphere,
    pub cell: Vec<PlanePoint>,
    pub vertex_heights_sq: Vec<Rat>,
}

impl FloorFace {
    pub fn max_vertex_height_sq(&self) -> Rat {
        self.vertex_heights_sq.iter().max().cloned().unwrap()
    }
}

/// Diagnostics of one envelope computation.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub faces: Vec<FloorFace>,
    /// Minimum squared height over vertices with strictly positive power.
    pub min_positive_vertex_sq: Option<Rat>,
    /// Vertices with exactly zero power, deduplicated.
    pub zero_vertices: Vec<PlanePoint>,
    /// True when some vertex of the arrangement has negative power even
    /// against every candidate: the floor is not yet covered there.
    pub has_uncovered_vertex: bool,
}

struct Grid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    fn build(hs: &[Hemisphere], d: &Disc) -> Grid {
        let cell = 1.0f64.max((d.abs() as f64).sqrt() / 8.0);
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, h) in hs.iter().enumerate() {
            let (x, y) = h.center_f64(d);
            let k = ((x / cell).floor() as i64, (y / cell).floor() as i64);
            buckets.entry(k).or_default().push(i);
        }
        Grid { cell, buckets }
    }

    fn coords(p: &PlanePoint, d: &Disc) -> (f64, f64) {
        let x = p.u.to_f64().unwrap();
        let y = p.v.to_f64().unwrap() * (d.abs() as f64).sqrt();
        (x, y)
    }

    /// Indices with center within euclidean distance `r` of p, padded.
    fn query(&self, p: &PlanePoint, r: f64, d: &Disc) -> Vec<usize> {
        let (x, y) = Grid::coords(p, d);
        let r = r + 1e-6 + self.cell;
        let (lo_x, hi_x) = (((x - r) / self.cell).floor() as i64, ((x + r) / self.cell).floor() as i64);
        let (lo_y, hi_y) = (((y - r) / self.cell).floor() as i64, ((y + r) / self.cell).floor() as i64);
        let mut out = Vec::new();
        for gx in lo_x..=hi_x {
            for gy in lo_y..=hi_y {
                if let Some(v) = self.buckets.get(&(gx, gy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out
    }
}

/// Discards candidates strictly or tangentially covered by an earlier kept
/// hemisphere (open hemispheres never gain a face from tangency).
/// Candidates must arrive sorted by ascending ||mu||. A float filter with
/// a wide margin rejects clear non-coverings; the decision itself is exact.
pub fn prune_covered(candidates: Vec<Hemisphere>, d: &Disc) -> Vec<Hemisphere> {
    let mut kept: Vec<Hemisphere> = Vec::new();
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let cell = 1.0f64;
    for h in candidates {
        let (x, y) = h.center_f64(d);
        let r = (1.0 / h.norm_mu as f64).sqrt();
        // any kept hemisphere covering h has center within r_kept <= 1 of c
        let pad = 1.0 + r + 1e-6;
        let (lo_x, hi_x) = (((x - pad) / cell).floor() as i64, ((x + pad) / cell).floor() as i64);
        let (lo_y, hi_y) = (((y - pad) / cell).floor() as i64, ((y + pad) / cell).floor() as i64);
        let mut covered = false;
        let c = h.center();
        'outer: for gx in lo_x..=hi_x {
            for gy in lo_y..=hi_y {
                if let Some(v) = grid.get(&(gx, gy)) {
                    for &i in v {
                        let g: &Hemisphere = &kept[i];
                        let (gx_f, gy_f) = g.center_f64(d);
                        let dist = ((x - gx_f) * (x - gx_f) + (y - gy_f) * (y - gy_f)).sqrt();
                        let r_g = (1.0 / g.norm_mu as f64).sqrt();
                        if r_g - dist - r < -1e-7 {
                            continue; // clearly not covering
                        }
                        if covers_ball(g, &c, &h.radius_sq(), d) != Covering::No {
                            covered = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !covered {
            let k = ((x / cell).floor() as i64, (y / cell).floor() as i64);
            let idx = kept.len();
            kept.push(h);
            grid.entry(k).or_default().push(idx);
        }
    }
    kept
}

/// Clips a convex polygon by alpha u + beta v + gamma >= 0.
fn clip_halfplane(poly: &[PlanePoint], hp: (i128, i128, i128)) -> Vec<PlanePoint> {
    let (alpha, beta, gamma) = hp;
    let val = |p: &PlanePoint| -> Rat { rat_int(alpha) * &p.u + rat_int(beta) * &p.v + rat_int(gamma) };
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % n];
        let vc = val(cur);
        let vn = val(nxt);
        let c_in = !vc.is_negative();
        let n_in = !vn.is_negative();
        if c_in {
            out.push(cur.clone());
        }
        if c_in != n_in {
            // intersection: cur + t (nxt - cur) with t = vc / (vc - vn)
            let t = &vc / (&vc - &vn);
            let u = &cur.u + (&nxt.u - &cur.u) * &t;
            let v = &cur.v + (&nxt.v - &cur.v) * &t;
            out.push(PlanePoint::new(u, v));
        }
    }
    dedup_consecutive(out)
}

fn dedup_consecutive(mut poly: Vec<PlanePoint>) -> Vec<PlanePoint> {
    poly.dedup();
    if poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    poly
}

/// Twice the signed area (in (u, v) coordinates; the metric scale is a
/// constant factor and does not affect the zero test).
fn polygon_area2(poly: &[PlanePoint]) -> Rat {
    let mut acc = Rat::zero();
    let n = poly.len();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        acc += &a.u * &b.v - &b.u * &a.v;
    }
    acc
}

/// The exact argmax cell of `own` among the kept hemispheres, starting
/// from the closed parallelogram. Returns the polygon or None when the
/// cell has empty interior.
fn cell_of(
    own_idx: usize,
    kept: &[Hemisphere],
    grid: &Grid,
    base: &[PlanePoint],
    d: &Disc,
) -> Option<Vec<PlanePoint>> {
    let own = &kept[own_idx];
    let mut poly: Vec<PlanePoint> = base.to_vec();
    let r_own = (1.0 / own.norm_mu as f64).sqrt();
    let (ox, oy) = own.center_f64(d);
    let mut seen: Vec<usize> = Vec::new();
    // first pass: neighbors whose disc touches own's disc
    let nbrs = grid.query(&own.center(), r_own + 1.0, d);
    for j in nbrs {
        if j == own_idx || seen.contains(&j) {
            continue;
        }
        let other = &kept[j];
        let (jx, jy) = other.center_f64(d);
        let dist = ((ox - jx) * (ox - jx) + (oy - jy) * (oy - jy)).sqrt();
        let r_other = (1.0 / other.norm_mu as f64).sqrt();
        if dist > r_own + r_other + 1e-7 {
            continue; // clearly disjoint discs
        }
        if dist > r_own + r_other - 1e-7 && !own.discs_touch(other, d) {
            continue;
        }
        seen.push(j);
        poly = clip_halfplane(&poly, own.radical_halfplane(other, d));
        if poly.len() < 3 {
            return None;
        }
    }
    // refinement: cut off vertices where some non-neighbor wins
    loop {
        let mut cut = None;
        'scan: for v in &poly {
            let pv = own.power(v, d);
            if !pv.is_negative() {
                continue;
            }
            // search radius: |c_h - v| < sqrt(r_h^2 - pv) <= sqrt(1 - pv)
            let rad = (1.0 - pv.to_f64().unwrap()).sqrt();
            for j in grid.query(v, rad, d) {
                if j == own_idx || seen.contains(&j) {
                    continue;
                }
                let other = &kept[j];
                if other.power(v, d) > pv {
                    cut = Some(j);
                    break 'scan;
                }
            }
        }
        match cut {
            None => break,
            Some(j) => {
                seen.push(j);
                poly = clip_halfplane(&poly, own.radical_halfplane(&kept[j], d));
                if poly.len() < 3 {
                    return None;
                }
            }
        }
    }
    if poly.len() < 3 || polygon_area2(&poly).is_zero() {
        return None;
    }
    Some(poly)
}

/// Computes the exact envelope of the given candidates over the closed
/// fundamental parallelogram. Candidates must include every hemisphere
/// whose disc reaches it (the generator guarantees this).
pub fn floor_envelope(candidates: Vec<Hemisphere>, d: &Disc) -> Envelope {
    let kept = prune_covered(candidates, d);
    let grid = Grid::build(&kept, d);
    let base = fundamental_polygon(d);
    let cells: Vec<Option<Vec<PlanePoint>>> = (0..kept.len())
        .into_par_iter()
        .map(|i| cell_of(i, &kept, &grid, &base, d))
        .collect();
    let mut faces = Vec::new();
    let mut min_positive: Option<Rat> = None;
    let mut zero_vertices: Vec<PlanePoint> = Vec::new();
    let mut has_uncovered = false;
    for (i, cell) in cells.into_iter().enumerate() {
        let Some(cell) = cell else { continue };
        let hemi = kept[i].clone();
        let heights: Vec<Rat> = cell.iter().map(|v| hemi.power(v, d)).collect();
        for (v, h) in cell.iter().zip(&heights) {
            if h.is_negative() {
                // pruned against all competitors in cell_of, so this is a
                // genuine gap in the floor
                has_uncovered = true;
            } else if h.is_zero() {
                if !zero_vertices.contains(v) {
                    zero_vertices.push(v.clone());
                }
            } else {
                min_positive = Some(match min_positive.take() {
                    None => h.clone(),
                    Some(m) => {
                        if h < &m {
                            h.clone()
                        } else {
                            m
                        }
                    }
                });
            }
        }
        // A face needs an interior point of positive power. A positive
        // vertex suffices; an all-zero boundary still has positive interior
        // by strict concavity, checked at the centroid.
        let positive = heights.iter().any(|h| h.is_positive())
            || (heights.iter().all(|h| !h.is_negative()) && {
                let n = rat_int(cell.len() as i128);
                let cu = cell.iter().map(|p| p.u.clone()).sum::<Rat>() / &n;
                let cv = cell.iter().map(|p| p.v.clone()).sum::<Rat>() / &n;
                hemi.power(&PlanePoint::new(cu, cv), d).is_positive()
            });
        if positive {
            faces.push(FloorFace {
                hemi,
                cell,
                vertex_heights_sq: heights,
            });
        }
    }
    faces.sort_by_key(|f| f.hemi.sort_key());
    Envelope {
        faces,
        min_positive_vertex_sq: min_positive,
        zero_vertices,
        has_uncovered_vertex: has_uncovered,
    }
}

/// Brute-force owner of a point: index of the maximal power among all
/// candidates, None on ties (callers resample).
pub fn argmax_owner(z: &PlanePoint, candidates: &[Hemisphere], d: &Disc) -> Option<usize> {
    let mut best: Option<(usize, Rat)> = None;
    let mut tie = false;
    for (i, h) in candidates.iter().enumerate() {
        let p = h.power(z, d);
        match &best {
            None => best = Some((i, p)),
            Some((_, bp)) => {
                if &p > bp {
                    best = Some((i, p));
                    tie = false;
                } else if &p == bp {
                    tie = true;
                }
            }
        }
    }
    match best {
        Some((i, _)) if !tie => Some(i),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qfield::AlgInt;

    #[test]
    fn single_unit_hemisphere_owns_everything() {
        let d = Disc::new(-3).unwrap();
        let h = Hemisphere::new(AlgInt::zero(), AlgInt::one(), &d);
        let env = floor_envelope(vec![h], &d);
        assert_eq!(env.faces.len(), 1);
        // the whole parallelogram sits strictly inside the unit disc
        assert!(!env.has_uncovered_vertex);
        assert!(env.zero_vertices.is_empty());
        assert_eq!(env.faces[0].cell.len(), 4);
    }

    #[test]
    fn two_units_split_on_radical_axis() {
        let d = Disc::new(-4).unwrap();
        let h0 = Hemisphere::new(AlgInt::zero(), AlgInt::one(), &d);
        let h1 = Hemisphere::new(AlgInt::one(), AlgInt::one(), &d);
        // radical axis between centers 0 and 1 is u = 1/2
        let hp = h0.radical_halfplane(&h1, &d);
        // alpha u + gamma >= 0 with alpha = -2..: check the line u = 1/2
        let at = |u: i128, v: i128| hp.0 * u + hp.1 * v + 2 * hp.2;
        // evaluate at u = 1/2: alpha/2 + gamma = 0
        assert_eq!(hp.0 + 2 * hp.2, 0);
        assert_eq!(hp.1, 0);
        // origin side is nonnegative for h0's cell
        assert!(at(0, 0) >= 0);
    }

    #[test]
    fn envelope_owner_matches_argmax_at_small_cap() {
        let d = Disc::new(-23).unwrap();
        let candidates = super::super::hemisphere::candidate_hemispheres(&d, 9);
        let env = floor_envelope(candidates.clone(), &d);
        // sample a grid of rational points inside F
        let mut checked = 0;
        for i in -4..4i128 {
            for j in -4..4i128 {
                let x = rat(2 * i + 1, 16);
                let y = rat(2 * j + 1, 16);
                // z = x + y omega
                let u = &x + &y * rat(d.tau(), 2);
                let v = &y * rat(1, 2);
                let z = PlanePoint::new(u, v);
                let Some(owner) = argmax_owner(&z, &candidates, &d) else {
                    continue;
                };
                let best = candidates[owner].power(&z, &d);
                if !best.is_positive() {
                    continue;
                }
                // find the face containing z
                let face = env.faces.iter().find(|f| {
                    super::super::hemisphere::point_in_convex_polygon(&z, &f.cell, &d)
                });
                let face = face.expect("covered point lies in some cell");
                assert_eq!(
                    face.hemi.power(&z, &d),
                    best,
                    "owner power must match at {z:?}"
                );
                checked += 1;
            }
        }
        assert!(checked > 20);
    }
}
