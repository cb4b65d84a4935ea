//! Hemispheres over the base plane and candidate generation.
//!
//! A hemisphere is named by a coprime pair (lambda, mu): center lambda/mu,
//! squared radius 1/||mu||. The candidate step enumerates every hemisphere
//! with ||mu|| up to a cap whose disc can reach the column over the
//! fundamental parallelogram.

use crate::exact::{rat, rat_int, sign_sqrt_minus_two, Rat};
use crate::qfield::{is_coprime, AlgInt, Disc, FieldElem, PlanePoint};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hemisphere {
    pub lambda: AlgInt,
    pub mu: AlgInt,
    /// ||mu||, so the squared radius is 1/norm_mu.
    pub norm_mu: i128,
    /// lambda * conj(mu): center = (center_num.a, center_num.b) / (2 norm_mu).
    center_num: AlgInt,
    /// ||lambda||; the power of the center works out to (1 - ||lambda||)/||mu||.
    pub norm_lambda: i128,
}

impl Hemisphere {
    pub fn new(lambda: AlgInt, mu: AlgInt, d: &Disc) -> Hemisphere {
        debug_assert!(!mu.is_zero());
        debug_assert!(is_coprime(&lambda, &mu, d));
        Hemisphere {
            lambda,
            mu,
            norm_mu: mu.norm(d),
            center_num: lambda.mul(&mu.conj(), d),
            norm_lambda: lambda.norm(d),
        }
    }

    pub fn center(&self) -> PlanePoint {
        PlanePoint::new(
            rat(self.center_num.a(), 2 * self.norm_mu),
            rat(self.center_num.b(), 2 * self.norm_mu),
        )
    }

    pub fn center_field_elem(&self, d: &Disc) -> FieldElem {
        FieldElem::quotient(&self.lambda, &self.mu, d)
    }

    pub fn radius_sq(&self) -> Rat {
        rat(1, self.norm_mu)
    }

    /// Power of a plane point: radius^2 - |z - center|^2, the squared
    /// height of the hemisphere above z (negative below the rim).
    pub fn power(&self, z: &PlanePoint, d: &Disc) -> Rat {
        let c = self.center();
        self.radius_sq() - z.dist_sq(&c, d)
    }

    /// Integer-coefficient half-plane alpha u + beta v + gamma >= 0
    /// describing power(self) >= power(other). Coefficients are exact
    /// after scaling by the positive factor norm_mu * other.norm_mu.
    pub fn radical_halfplane(&self, other: &Hemisphere, d: &Disc) -> (i128, i128, i128) {
        let (a1, b1, n1, l1) = (
            self.center_num.a(),
            self.center_num.b(),
            self.norm_mu,
            self.norm_lambda,
        );
        let (a2, b2, n2, l2) = (
            other.center_num.a(),
            other.center_num.b(),
            other.norm_mu,
            other.norm_lambda,
        );
        // power_self - power_other, scaled by n1 n2 > 0:
        // u * (a1 n2 - a2 n1) + v * |d| (b1 n2 - b2 n1)
        //   + (1 - l1) n2 - (1 - l2) n1 >= 0
        let alpha = a1 * n2 - a2 * n1;
        let beta = d.abs() * (b1 * n2 - b2 * n1);
        let gamma = (1 - l1) * n2 - (1 - l2) * n1;
        (alpha, beta, gamma)
    }

    /// Squared distance between centers.
    pub fn center_dist_sq(&self, other: &Hemisphere, d: &Disc) -> Rat {
        self.center().dist_sq(&other.center(), d)
    }

    /// Float center in euclidean coordinates (u, v sqrt|d|), for spatial
    /// indexing and filter passes only.
    pub fn center_f64(&self, d: &Disc) -> (f64, f64) {
        let den = 2.0 * self.norm_mu as f64;
        (
            self.center_num.a() as f64 / den,
            self.center_num.b() as f64 / den * (d.abs() as f64).sqrt(),
        )
    }

    /// True when the discs (closures) intersect: |c1 - c2| <= r1 + r2.
    pub fn discs_touch(&self, other: &Hemisphere, d: &Disc) -> bool {
        let dist_sq = self.center_dist_sq(other, d);
        // sqrt(dist_sq) <= sqrt(r1^2) + sqrt(r2^2)
        sign_sqrt_minus_two(&dist_sq, &self.radius_sq(), &other.radius_sq()) <= 0
    }

    /// Deterministic sort key: ascending ||mu||, then center lexicographic.
    pub fn sort_key(&self) -> (i128, AlgInt) {
        (self.norm_mu, self.center_num)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Covering {
    No,
    /// Internal tangency: boundary contact only, no open overlap survives.
    Boundary,
    Strict,
}

/// Does the hemisphere cover a target ball (center, squared radius)?
/// Exact: 1/|mu| - |c_target - c| >= r_target via sign-tracked squaring.
pub fn covers_ball(
    g: &Hemisphere,
    target_center: &PlanePoint,
    target_radius_sq: &Rat,
    d: &Disc,
) -> Covering {
    let dist_sq = target_center.dist_sq(&g.center(), d);
    // sqrt(r_g^2) - sqrt(dist) - sqrt(r_t^2) >= 0 ?
    match sign_sqrt_minus_two(&g.radius_sq(), &dist_sq, target_radius_sq) {
        1 => Covering::Strict,
        0 => Covering::Boundary,
        _ => Covering::No,
    }
}

/// Covering test on the natural field data: target center in K.
pub fn covers(
    g: &Hemisphere,
    target_center: &FieldElem,
    target_radius_sq: &Rat,
    d: &Disc,
) -> Covering {
    covers_ball(g, &PlanePoint::from_field_elem(target_center), target_radius_sq, d)
}

/// The closed fundamental parallelogram as a polygon in (u, v) plane
/// coordinates: x * 1 + y * omega with x, y in [-1/2, 1/2].
pub fn fundamental_polygon(d: &Disc) -> Vec<PlanePoint> {
    let corner = |x: Rat, y: Rat| {
        // u = x + y * tau/2, v = y / 2
        let u = &x + &y * rat(d.tau(), 2);
        let v = &y * rat(1, 2);
        PlanePoint::new(u, v)
    };
    let h = rat(1, 2);
    vec![
        corner(-h.clone(), -h.clone()),
        corner(h.clone(), -h.clone()),
        corner(h.clone(), h.clone()),
        corner(-h.clone(), h.clone()),
    ]
}

/// Exact squared distance from a point to the fundamental parallelogram
/// (zero inside).
pub fn dist_sq_to_fundamental(z: &PlanePoint, d: &Disc) -> Rat {
    let poly = fundamental_polygon(d);
    if point_in_convex_polygon(z, &poly, d) {
        return Rat::zero();
    }
    let mut best: Option<Rat> = None;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        let dsq = point_segment_dist_sq(z, a, b, d);
        best = Some(match best {
            None => dsq,
            Some(cur) => {
                if dsq < cur {
                    dsq
                } else {
                    cur
                }
            }
        });
    }
    best.unwrap()
}

pub fn point_in_convex_polygon(z: &PlanePoint, poly: &[PlanePoint], d: &Disc) -> bool {
    // CCW polygon in the metric (u, v sqrt|d|); cross products carry the
    // sqrt|d| scale uniformly so plain (u, v) orientation works.
    let _ = d;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        let cross = (&b.u - &a.u) * (&z.v - &a.v) - (&b.v - &a.v) * (&z.u - &a.u);
        if cross.is_negative() {
            return false;
        }
    }
    true
}

fn point_segment_dist_sq(z: &PlanePoint, a: &PlanePoint, b: &PlanePoint, d: &Disc) -> Rat {
    let dd = rat_int(d.abs());
    let ab_u = &b.u - &a.u;
    let ab_v = &b.v - &a.v;
    let az_u = &z.u - &a.u;
    let az_v = &z.v - &a.v;
    // Euclidean inner product with the v-scale |d|
    let dot = &ab_u * &az_u + &ab_v * &az_v * &dd;
    let len_sq = &ab_u * &ab_u + &ab_v * &ab_v * &dd;
    let t = dot / &len_sq;
    let t = if t < Rat::zero() {
        Rat::zero()
    } else if t > Rat::from_integer(1.into()) {
        Rat::from_integer(1.into())
    } else {
        t
    };
    let pu = &a.u + &ab_u * &t;
    let pv = &a.v + &ab_v * &t;
    let du = &z.u - pu;
    let dv = &z.v - pv;
    &du * &du + &dv * &dv * &dd
}

/// Unit multiples of x, canonicalized: only the orders of discriminant -3
/// and -4 have units besides +-1.
pub fn unit_orbit_canonical(x: &AlgInt, d: &Disc) -> AlgInt {
    let mut orbit = vec![*x, x.neg()];
    if d.d() == -4 {
        // i * x
        let i = AlgInt::new(0, 1, d);
        let ix = x.mul(&i, d);
        orbit.push(ix);
        orbit.push(ix.neg());
    } else if d.d() == -3 {
        let w = AlgInt::omega(d);
        let wx = x.mul(&w, d);
        let wwx = wx.mul(&w, d);
        orbit.extend([wx, wx.neg(), wwx, wwx.neg()]);
    }
    orbit
        .into_iter()
        .map(|y| y.canonical_sign())
        .min_by_key(|y| (y.b().abs(), y.a().abs(), y.a(), y.b()))
        .unwrap()
}

/// All hemispheres with ||mu|| <= cap_sq whose disc reaches the closed
/// fundamental parallelogram, one per hemisphere (unit-orbit and sign
/// deduplicated), sorted by (||mu||, center).
///
/// The reach test is exact; a floating filter with a wide safety margin
/// discards the clearly-outside bulk and defers the boundary band to the
/// rational predicate.
pub fn candidate_hemispheres(d: &Disc, cap_sq: i128) -> Vec<Hemisphere> {
    assert!(cap_sq >= 1);
    let mut out: Vec<Hemisphere> = Vec::new();
    let unit = crate::qfield::Ideal::unit(d);
    let abs_d = d.abs();
    let dd = d.d() as i128;
    let sqrt_d = (abs_d as f64).sqrt();
    for n in 1..=cap_sq {
        for mu in unit.elements_of_norm(n, d) {
            // canonical representative of the unit orbit only
            if unit_orbit_canonical(&mu, d) != mu {
                continue;
            }
            let (am, bm) = (mu.a(), mu.b());
            // |center u| <= 3/4 + r and |center v| <= 1/4 + r/sqrt|d| give
            // integer bands for the coordinates of lambda * conj(mu).
            let root_n = isqrt_floor(n) + 1;
            let a_cap = 3 * n / 2 + 2 * root_n + 2;
            let b_cap = n / 2 + 2 * (isqrt_floor(n / abs_d) + 1) + 2;
            // |lambda|^2 <= n * (|corner| + r)^2
            let lam_cap = (9 + abs_d) * n / 8 + 2 * n + 2;
            let mut bl = -isqrt_floor(4 * lam_cap / abs_d) - 1;
            let bl_hi = -bl;
            while bl <= bl_hi {
                let rem = 4 * lam_cap - abs_d * bl * bl;
                if rem >= 0 {
                    let a_hi = isqrt_floor(rem) + 1;
                    let mut al = -a_hi;
                    while al <= a_hi {
                        if (al - bl * dd).rem_euclid(2) != 0 {
                            al += 1;
                            continue;
                        }
                        // lambda * conj(mu) = (big_a + big_b sqrt(d)) / 2
                        let big_b = am * bl - bm * al;
                        if big_b.abs() > 2 * b_cap {
                            al += 1;
                            continue;
                        }
                        let big_a = al * am + abs_d * bl * bm;
                        if big_a.abs() > 2 * a_cap {
                            al += 1;
                            continue;
                        }
                        // float filter on disc-reaches-parallelogram
                        let cu = big_a as f64 / (4.0 * n as f64);
                        let cv = big_b as f64 / (4.0 * n as f64);
                        let dist2 = dist_sq_to_fundamental_f64(cu, cv, sqrt_d, d);
                        let r2 = 1.0 / n as f64;
                        let reaches = if dist2 > r2 + 1e-7 {
                            false
                        } else if dist2 < r2 - 1e-7 {
                            true
                        } else {
                            let c = PlanePoint::new(rat(big_a, 4 * n), rat(big_b, 4 * n));
                            dist_sq_to_fundamental(&c, d) <= rat(1, n)
                        };
                        if reaches {
                            let lambda = AlgInt::new(al, bl, d);
                            if is_coprime(&lambda, &mu, d) {
                                out.push(Hemisphere::new(lambda, mu, d));
                            }
                        }
                        al += 1;
                    }
                }
                bl += 1;
            }
        }
    }
    out.sort_by_key(|h| h.sort_key());
    out
}

/// Float version of the parallelogram distance, used only as a filter with
/// an error margin far above f64 rounding at these magnitudes.
fn dist_sq_to_fundamental_f64(u: f64, v: f64, sqrt_d: f64, d: &Disc) -> f64 {
    // corners in (u, v): (+-1/2 +- tau/4, +-1/4) pattern per parity
    let tau = d.tau() as f64;
    let corners = [
        (-0.5 - tau / 4.0, -0.25),
        (0.5 - tau / 4.0, -0.25),
        (0.5 + tau / 4.0, 0.25),
        (-0.5 + tau / 4.0, 0.25),
    ];
    // work in euclidean coordinates (u, v * sqrt|d|)
    let px = u;
    let py = v * sqrt_d;
    let pts: Vec<(f64, f64)> = corners.iter().map(|&(x, y)| (x, y * sqrt_d)).collect();
    let mut inside = true;
    for i in 0..4 {
        let (ax, ay) = pts[i];
        let (bx, by) = pts[(i + 1) % 4];
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0.0 {
            inside = false;
            break;
        }
    }
    if inside {
        return 0.0;
    }
    let mut best = f64::MAX;
    for i in 0..4 {
        let (ax, ay) = pts[i];
        let (bx, by) = pts[(i + 1) % 4];
        let (ex, ey) = (bx - ax, by - ay);
        let t = (((px - ax) * ex + (py - ay) * ey) / (ex * ex + ey * ey)).clamp(0.0, 1.0);
        let (qx, qy) = (ax + t * ex, ay + t * ey);
        let dsq = (px - qx) * (px - qx) + (py - qy) * (py - qy);
        best = best.min(dsq);
    }
    best
}

fn isqrt_floor(n: i128) -> i128 {
    crate::exact::isqrt_i128(n.max(0))
}

/// Reference enumeration for tests: a plain double loop over a wide box
/// with the same acceptance predicate.
pub fn candidate_hemispheres_naive(d: &Disc, cap_sq: i128) -> Vec<Hemisphere> {
    let mut out: Vec<Hemisphere> = Vec::new();
    let abs_d = d.abs();
    for n in 1..=cap_sq {
        let unit = crate::qfield::Ideal::unit(d);
        for mu in unit.elements_of_norm(n, d) {
            if unit_orbit_canonical(&mu, d) != mu {
                continue;
            }
            let wide = 8 * n + 4 * abs_d * n;
            let mut b = -isqrt_floor(4 * wide / abs_d) - 1;
            let b_hi = -b;
            while b <= b_hi {
                let mut a = -isqrt_floor(4 * wide) - 1;
                let a_hi = -a;
                while a <= a_hi {
                    if (a - b * d.d() as i128).rem_euclid(2) == 0 {
                        let lambda = AlgInt::new(a, b, d);
                        if is_coprime(&lambda, &mu, d) {
                            let h = Hemisphere::new(lambda, mu, d);
                            if dist_sq_to_fundamental(&h.center(), d) <= h.radius_sq() {
                                out.push(h);
                            }
                        }
                    }
                    a += 1;
                }
                b += 1;
            }
        }
    }
    out.sort_by_key(|h| h.sort_key());
    out
}

/// Exact squared height of g P from the height of P: Eq of the hemisphere
/// action, t(gP) = t / (||mu z - lambda|| + ||mu|| t^2).
pub fn height_transform(
    beta: &AlgInt,
    alpha: &AlgInt,
    mu: &AlgInt,
    lambda: &AlgInt,
    z: &PlanePoint,
    t_sq: &Rat,
    d: &Disc,
) -> Rat {
    debug_assert_eq!(
        beta.mul(lambda, d).sub(&alpha.mul(mu, d)),
        AlgInt::one(),
        "matrix must be unimodular"
    );
    // ||mu z - lambda||: with z = (u, v), mu = (am + bm sqrt d)/2:
    // mu z - lambda in plane coordinates
    let (am, bm) = (rat(mu.a(), 2), rat(mu.b(), 2));
    let (al, bl) = (rat(lambda.a(), 2), rat(lambda.b(), 2));
    // (am + bm sqrt(d)) (u + v sqrt(d))/... careful: both in u + v sqrt|d| i form
    // mu = am + bm sqrt(|d|) i, z = u + v sqrt(|d|) i
    // mu z = (am u - bm v |d|) + (am v + bm u) sqrt(|d|) i
    let real = &am * &z.u - &bm * &z.v * rat_int(d.abs()) - al;
    let imag = &am * &z.v + &bm * &z.u - bl;
    let norm_err = &real * &real + &imag * &imag * rat_int(d.abs());
    let denom = &norm_err + rat_int(mu.norm(d)) * t_sq;
    t_sq / (&denom * &denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_identity_and_inversion() {
        let d = Disc::new(-23).unwrap();
        let one = AlgInt::one();
        let zero = AlgInt::zero();
        let z = PlanePoint::new(rat(1, 3), rat(2, 7));
        let t = rat(5, 11);
        // identity: beta = lambda = 1, alpha = mu = 0
        assert_eq!(height_transform(&one, &zero, &zero, &one, &z, &t, &d), t);
        // inversion at the origin with t^2 = 1: fixed
        let m1 = AlgInt::from_int(-1);
        let origin = PlanePoint::origin();
        let one_r = rat(1, 1);
        assert_eq!(
            height_transform(&zero, &m1, &one, &zero, &origin, &one_r, &d),
            one_r
        );
    }

    #[test]
    fn covering_cases() {
        let d = Disc::new(-23).unwrap();
        let unit_origin = Hemisphere::new(AlgInt::zero(), AlgInt::one(), &d);
        // covers itself with boundary contact
        assert_eq!(
            covers_ball(&unit_origin, &PlanePoint::origin(), &rat(1, 1), &d),
            Covering::Boundary
        );
        // disjoint target
        let far = PlanePoint::new(rat(2, 1), rat(0, 1));
        assert_eq!(
            covers_ball(&unit_origin, &far, &rat(1, 2), &d),
            Covering::No
        );
        // strictly inside
        assert_eq!(
            covers_ball(&unit_origin, &PlanePoint::origin(), &rat(1, 4), &d),
            Covering::Strict
        );
    }

    #[test]
    fn fundamental_distance() {
        let d = Disc::new(-23).unwrap();
        assert!(dist_sq_to_fundamental(&PlanePoint::origin(), &d).is_zero());
        let far = PlanePoint::new(rat(10, 1), rat(0, 1));
        assert!(dist_sq_to_fundamental(&far, &d) > rat(80, 1));
    }

    #[test]
    fn candidates_match_naive_small() {
        for dd in [-3i64, -4, -23] {
            let d = Disc::new(dd).unwrap();
            for cap in [1i128, 4] {
                let fast = candidate_hemispheres(&d, cap);
                let naive = candidate_hemispheres_naive(&d, cap);
                let key = |h: &Hemisphere| (h.norm_mu, h.center());
                let fk: Vec<_> = fast.iter().map(key).collect();
                let nk: Vec<_> = naive.iter().map(key).collect();
                assert_eq!(fk, nk, "d = {dd}, cap = {cap}");
            }
        }
    }

    #[test]
    fn unit_candidates_include_translates() {
        let d = Disc::new(-23).unwrap();
        let c = candidate_hemispheres(&d, 1);
        // unit hemispheres over the integer translates that reach F
        assert!(c.iter().all(|h| h.norm_mu == 1));
        let centers: Vec<PlanePoint> = c.iter().map(|h| h.center()).collect();
        assert_eq!(centers.len(), 3);
        for t in [-1i128, 0, 1] {
            assert!(centers.contains(&PlanePoint::new(rat(t, 1), rat(0, 1))));
        }
    }

    #[test]
    fn e143_gap_coverage() {
        // the curvature-24 hemisphere centered at (-3+2 sqrt(-143))/24
        // reaches into the gap at the singular point (-1+sqrt(-143))/12
        let d = Disc::new(-143).unwrap();
        let lambda = AlgInt::new(-6, 4, &d); // -3 + 2 sqrt(-143)
        let mu = AlgInt::from_int(24);
        assert!(is_coprime(&lambda, &mu, &d));
        let h = Hemisphere::new(lambda, mu, &d);
        assert_eq!(h.norm_mu, 576);
        assert_eq!(h.center(), PlanePoint::new(rat(-1, 8), rat(1, 12)));
        // gap point displaced from the singular point toward the center
        let gap = PlanePoint::new(rat(-1, 12) - rat(1, 100), rat(1, 12));
        assert!(h.power(&gap, &d).is_positive());
        assert_eq!(
            covers_ball(&h, &gap, &rat(1, 1_000_000), &d),
            Covering::Strict
        );
        // the singular point itself sits exactly on the rim
        let sing = PlanePoint::new(rat(-1, 12), rat(1, 12));
        assert!(h.power(&sing, &d).is_zero());
    }
}
