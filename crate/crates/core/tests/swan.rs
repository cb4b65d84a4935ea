//! Envelope correctness against brute-force ownership, candidate counts
//! against the naive enumeration, the height transform against a
//! high-precision numeric oracle, and determinism across thread counts.

use bianchi_core::exact::{rat, Rat};
use bianchi_core::qfield::{bezout_solve, is_coprime, AlgInt, Disc, PlanePoint};
use bianchi_core::swan::{
    argmax_owner, candidate_hemispheres, candidate_hemispheres_naive, floor_envelope,
    height_transform, point_in_convex_polygon, swan_number, Hemisphere, SwanBudget,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn candidates_match_naive_enumeration() {
    for dd in [-3i64, -7, -20, -23] {
        let d = Disc::new(dd).unwrap();
        for cap in [1i128, 5, 12] {
            let fast = candidate_hemispheres(&d, cap);
            let naive = candidate_hemispheres_naive(&d, cap);
            assert_eq!(fast.len(), naive.len(), "d = {dd}, cap = {cap}");
            for (f, n) in fast.iter().zip(&naive) {
                assert_eq!(f.sort_key(), n.sort_key());
            }
        }
    }
}

#[test]
fn envelope_owner_equals_brute_force_argmax() {
    // 10^4 seeded rational sample points per tested disc; the cell owner
    // must realize the maximal power over the full candidate list. Ties
    // resample.
    let mut rng = StdRng::seed_from_u64(0x5eed_5a01);
    for (dd, cap) in [(-23i64, 36i128), (-132, 64)] {
        let d = Disc::new(dd).unwrap();
        let candidates = candidate_hemispheres(&d, cap);
        let env = floor_envelope(candidates.clone(), &d);
        let mut checked = 0;
        while checked < 10_000 {
            let q: i128 = 512;
            let x = rat(rng.gen_range(-q / 2 + 1..q / 2), q);
            let y = rat(rng.gen_range(-q / 2 + 1..q / 2), q);
            // z = x + y omega in plane coordinates
            let u = &x + &y * rat(d.tau(), 2);
            let v = &y * rat(1, 2);
            let z = PlanePoint::new(u, v);
            let Some(owner) = argmax_owner(&z, &candidates, &d) else {
                continue; // tie: regenerate
            };
            let best = candidates[owner].power(&z, &d);
            if !best.is_positive() {
                continue; // uncovered at this cap: no face owns it
            }
            let face = env
                .faces
                .iter()
                .find(|f| point_in_convex_polygon(&z, &f.cell, &d))
                .unwrap_or_else(|| panic!("covered point must lie in a cell, d = {dd}"));
            assert_eq!(face.hemi.power(&z, &d), best, "owner mismatch at {z:?}");
            checked += 1;
        }
    }
}

#[test]
fn faces_contain_interior_positive_points() {
    let d = Disc::new(-23).unwrap();
    let r = swan_number(&d, &SwanBudget::default());
    for f in &r.faces {
        // centroid is interior for a convex cell; its power is positive
        let n = rat(f.cell.len() as i128, 1);
        let cu = f.cell.iter().map(|p| p.u.clone()).sum::<Rat>() / &n;
        let cv = f.cell.iter().map(|p| p.v.clone()).sum::<Rat>() / &n;
        let z = PlanePoint::new(cu, cv);
        assert!(f.hemi.power(&z, &d).is_positive());
    }
}

#[test]
fn no_cell_interior_contains_singular_point_and_cusps_touch_zero() {
    let d = Disc::new(-132).unwrap();
    let r = swan_number(&d, &SwanBudget::default());
    assert!(r.certified);
    for z in &r.singular {
        let p = PlanePoint::from_field_elem(z);
        for f in &r.faces {
            // singular points never acquire positive power
            assert!(!f.hemi.power(&p, &d).is_positive());
        }
        // some vertex coincides exactly with each singular point
        let hit = r.faces.iter().any(|f| {
            f.cell.iter().zip(&f.vertex_heights_sq).any(|(v, h)| {
                h.is_zero()
                    && bianchi_core::qfield::canonical_point_rep(&v.to_field_elem(&d), &d) == *z
            })
        });
        assert!(hit, "singular point must appear as a zero-height vertex");
    }
}

#[test]
fn height_transform_matches_high_precision_oracle() {
    // Fixed-point complex evaluation at 60 digits; the exact rational
    // result must agree to well below 1e-40.
    let d = Disc::new(-23).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed_5a02);
    let scale = BigInt::from(10u32).pow(60);
    let sqrt_d_fixed = (BigInt::from(d.abs()) * &scale * &scale).sqrt();
    for _ in 0..50 {
        let (lambda, mu) = loop {
            let a: i128 = rng.gen_range(-9..=9);
            let b: i128 = rng.gen_range(-4..=4);
            let a = if (a - b * d.d() as i128).rem_euclid(2) == 0 { a } else { a + 1 };
            let l = AlgInt::new(a, b, &d);
            let a2: i128 = rng.gen_range(-9..=9);
            let b2: i128 = rng.gen_range(-4..=4);
            let a2 = if (a2 - b2 * d.d() as i128).rem_euclid(2) == 0 { a2 } else { a2 + 1 };
            let m = AlgInt::new(a2, b2, &d);
            if !m.is_zero() && is_coprime(&l, &m, &d) {
                break (l, m);
            }
        };
        let (alpha, beta) = bezout_solve(&lambda, &mu, &d).unwrap();
        let z = PlanePoint::new(
            rat(rng.gen_range(-50..=50), 101),
            rat(rng.gen_range(-50..=50), 103),
        );
        let t_sq = rat(rng.gen_range(1..=40), 41);
        let exact = height_transform(&beta, &alpha, &mu, &lambda, &z, &t_sq, &d);
        // oracle: |mu z - lambda|^2 via fixed point, then the transform
        let fx = |r: &Rat| -> BigInt {
            (r.numer() * &scale) / r.denom()
        };
        let mu_u = rat(mu.a(), 2);
        let mu_v = rat(mu.b(), 2);
        let l_u = rat(lambda.a(), 2);
        let l_v = rat(lambda.b(), 2);
        // real = mu_u z_u - mu_v z_v |d| - l_u ; imagc = (mu_u z_v + mu_v z_u - l_v) (in sqrt|d| units)
        let real = (fx(&mu_u) * fx(&z.u)) / &scale - (fx(&mu_v) * fx(&z.v)) / &scale * BigInt::from(d.abs())
            - fx(&l_u);
        let imag_units = (fx(&mu_u) * fx(&z.v)) / &scale + (fx(&mu_v) * fx(&z.u)) / &scale - fx(&l_v);
        let imag = (&imag_units * &sqrt_d_fixed) / &scale;
        let err = (&real * &real + &imag * &imag) / &scale;
        let denom = &err + fx(&(rat(mu.norm(&d), 1) * &t_sq));
        // t' = t_sq * scale^2 / denom^2
        let t_fixed = fx(&t_sq);
        let oracle = (&t_fixed * &scale * &scale) / (&denom * &denom);
        let exact_fixed = fx(&exact);
        let diff = (&oracle - &exact_fixed).abs();
        // allow rounding slack of 1e-45 at the 1e-60 grid
        assert!(
            diff < BigInt::from(10u64).pow(15),
            "height transform differs from the 60-digit oracle by {diff}"
        );
    }
}

#[test]
fn height_transform_composition_equals_direct() {
    // t((gh)P) = t(g(hP)) exactly for unimodular g, h: apply the full
    // isometry for h, then transform the height again under g, against the
    // single application of the product matrix.
    let d = Disc::new(-23).unwrap();
    let pairs = [
        (AlgInt::zero(), AlgInt::one()),      // inversion
        (AlgInt::omega(&d), AlgInt::from_int(5)),
        (AlgInt::new(-1, 1, &d), AlgInt::new(5, 1, &d)),
    ];
    let z = PlanePoint::new(rat(1, 7), rat(2, 9));
    let t_sq = rat(3, 5);
    for (l1, m1) in pairs {
        for (l0, m0) in pairs {
            if !is_coprime(&l1, &m1, &d) || !is_coprime(&l0, &m0, &d) {
                continue;
            }
            let (a1, b1) = bezout_solve(&l1, &m1, &d).unwrap();
            let (a0, b0) = bezout_solve(&l0, &m0, &d).unwrap();
            let (zp, t1) = apply_isometry(&b1, &a1, &m1, &l1, &z, &t_sq, &d);
            assert_eq!(
                t1,
                height_transform(&b1, &a1, &m1, &l1, &z, &t_sq, &d),
                "transform agrees with the full isometry height"
            );
            let t2 = height_transform(&b0, &a0, &m0, &l0, &zp, &t1, &d);
            // product matrix [[b0, -a0], [-m0, l0]] * [[b1, -a1], [-m1, l1]]
            let beta = b0.mul(&b1, &d).add(&a0.mul(&m1, &d));
            let alpha = b0.mul(&a1, &d).add(&a0.mul(&l1, &d));
            let mu = m0.mul(&b1, &d).add(&l0.mul(&m1, &d));
            let lambda = m0.mul(&a1, &d).add(&l0.mul(&l1, &d));
            // det check for the product
            assert_eq!(
                beta.mul(&lambda, &d).sub(&alpha.mul(&mu, &d)),
                AlgInt::one()
            );
            let direct = height_transform(&beta, &alpha, &mu, &lambda, &z, &t_sq, &d);
            assert_eq!(t2, direct);
        }
    }
}

/// Full action of [[beta, -alpha], [-mu, lambda]] on (z, t^2), exact:
/// z' = ((beta z - alpha) conj(lambda - mu z) - beta conj(mu) t^2) / D,
/// t'^2 = t^2 / D^2, with D = |lambda - mu z|^2 + ||mu|| t^2.
#[allow(clippy::too_many_arguments)]
fn apply_isometry(
    beta: &AlgInt,
    alpha: &AlgInt,
    mu: &AlgInt,
    lambda: &AlgInt,
    z: &PlanePoint,
    t_sq: &Rat,
    d: &Disc,
) -> (PlanePoint, Rat) {
    let dd = rat(d.abs(), 1);
    let c = |x: &AlgInt| (rat(x.a(), 2), rat(x.b(), 2));
    let cmul = |a: &(Rat, Rat), b: &(Rat, Rat)| {
        (&a.0 * &b.0 - &a.1 * &b.1 * &dd, &a.0 * &b.1 + &a.1 * &b.0)
    };
    let csub = |a: &(Rat, Rat), b: &(Rat, Rat)| (&a.0 - &b.0, &a.1 - &b.1);
    let conj = |a: &(Rat, Rat)| (a.0.clone(), -a.1.clone());
    let zc = (z.u.clone(), z.v.clone());
    let num_l = csub(&cmul(&c(beta), &zc), &c(alpha));
    let den_c = csub(&c(lambda), &cmul(&c(mu), &zc));
    let den_norm = &den_c.0 * &den_c.0 + &den_c.1 * &den_c.1 * &dd;
    let d_full = &den_norm + rat(mu.norm(d), 1) * t_sq;
    let mut zp = cmul(&num_l, &conj(&den_c));
    let bc = cmul(&c(beta), &conj(&c(mu)));
    zp.0 = &zp.0 - &bc.0 * t_sq;
    zp.1 = &zp.1 - &bc.1 * t_sq;
    let zp = PlanePoint::new(&zp.0 / &d_full, &zp.1 / &d_full);
    (zp, t_sq / (&d_full * &d_full))
}

#[test]
fn determinism_across_thread_counts() {
    // the envelope result must be byte-identical regardless of rayon pool
    let d = Disc::new(-23).unwrap();
    let run = |threads: usize| -> String {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let r = swan_number(&d, &SwanBudget::default());
            let mut s = format!("{} {} {}\n", r.swan_sq, r.certified, r.cap_used_sq);
            for f in &r.faces {
                s.push_str(&format!(
                    "{} {:?} {:?}\n",
                    f.hemi.norm_mu,
                    f.cell
                        .iter()
                        .map(|p| (p.u.to_string(), p.v.to_string()))
                        .collect::<Vec<_>>(),
                    f.vertex_heights_sq
                        .iter()
                        .map(|h| h.to_string())
                        .collect::<Vec<_>>(),
                ));
            }
            s
        })
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one, four);
    let _ = BigInt::from(0).to_i64();
}

#[test]
fn height_transform_moebius_consistency() {
    // the boundary action and the height transform agree on the unit
    // hemisphere rim: points with |mu z - lambda| = 1 and t = 0 stay at 0
    let d = Disc::new(-23).unwrap();
    let z = PlanePoint::new(rat(1, 1), rat(0, 1));
    let t0 = rat(0, 1);
    let (alpha, beta) = bezout_solve(&AlgInt::zero(), &AlgInt::one(), &d).unwrap();
    let t = height_transform(&beta, &alpha, &AlgInt::one(), &AlgInt::zero(), &z, &t0, &d);
    assert!(t.is_zero());
    let hemi = Hemisphere::new(AlgInt::zero(), AlgInt::one(), &d);
    assert!(hemi.power(&z, &d).is_zero());
}

#[test]
fn face_cells_tile_the_parallelogram_exactly() {
    // Certified floors partition the closed parallelogram: the shoelace
    // areas of the face cells sum to exactly 1/2 in (u, v) coordinates.
    for dd in [-23i64, -132] {
        let d = Disc::new(dd).unwrap();
        let r = swan_number(&d, &SwanBudget::default());
        assert!(r.certified);
        let mut total = Rat::zero();
        for f in &r.faces {
            let mut acc = Rat::zero();
            let n = f.cell.len();
            for i in 0..n {
                let a = &f.cell[i];
                let b = &f.cell[(i + 1) % n];
                acc += &a.u * &b.v - &b.u * &a.v;
            }
            total += acc / rat(2, 1);
        }
        assert_eq!(total, rat(1, 2), "d = {dd}");
    }
}
