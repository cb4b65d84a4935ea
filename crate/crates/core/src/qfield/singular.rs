//! Singular points: the finitely many classes of cusps of the floor that
//! no hemisphere covers.
//!
//! A point z of the field is singular when the fractional ideal (z, 1) is
//! non-principal and its shortest nonzero element has magnitude at least 1.
//! Every nontrivial ideal class produces such points: take an integral
//! ideal of minimal norm in the class, a shortest nonzero element beta of
//! it, and any alpha with (alpha, beta) equal to the ideal.

use super::algint::{AlgInt, FieldElem};
use super::disc::Disc;
use super::ideal::{class_representatives, minimal_ideals_in_class, Ideal};

/// Exact singularity test via the lattice minimum of the numerator pair.
pub fn is_singular(z: &FieldElem, d: &Disc) -> bool {
    let den = AlgInt::from_int(z.den());
    match Ideal::from_pair(&z.num(), &den, d) {
        Err(_) => false,
        Ok((content, prim)) => {
            if prim.is_principal(d) {
                return false;
            }
            // min |num*x - den*y|^2 over the module, against den^2
            let min_norm = content * content * prim.min_vector(d).norm(d);
            min_norm >= z.den() * z.den()
        }
    }
}

/// Canonical representative of a point modulo translation by the order and
/// negation (complex conjugation composed with translation): the variant
/// with the lexicographically smaller reduced (v, u) plane coordinates.
/// Negation identifies the mirror pair that the floor symmetry produces.
pub fn canonical_point_rep(z: &FieldElem, d: &Disc) -> FieldElem {
    let a = z.reduce_mod_order(d);
    let b = FieldElem::new(z.num().neg(), z.den(), d).reduce_mod_order(d);
    let key = |w: &FieldElem| {
        let (u, v) = w.plane();
        (v, u)
    };
    if key(&a) <= key(&b) {
        a
    } else {
        b
    }
}

/// Canonical representatives (inside the fundamental parallelogram) of all
/// singular points modulo translation and negation, deterministically
/// sorted.
pub fn singular_points(d: &Disc) -> Vec<FieldElem> {
    let mut out: Vec<FieldElem> = Vec::new();
    for rep in class_representatives(d) {
        if rep.is_unit() {
            continue;
        }
        let (_, ideals) = minimal_ideals_in_class(&rep, d);
        for ideal in ideals {
            for beta in ideal.min_vectors(d) {
                for alpha in coset_reps(&ideal, &beta, d) {
                    if alpha.is_zero() {
                        continue;
                    }
                    match Ideal::from_pair(&alpha, &beta, d) {
                        Ok((1, pair)) if pair == ideal => {
                            let z =
                                canonical_point_rep(&FieldElem::quotient(&alpha, &beta, d), d);
                            if !out.contains(&z) {
                                out.push(z);
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| {
        let (xu, xv) = x.plane();
        let (yu, yv) = y.plane();
        (xv, xu).partial_cmp(&(yv, yu)).unwrap()
    });
    out
}

/// Representatives of ideal / (beta * order), enumerated through the
/// Hermite form of beta's lattice inside the ideal's basis.
fn coset_reps(ideal: &Ideal, beta: &AlgInt, d: &Disc) -> Vec<AlgInt> {
    let (e1, e2) = ideal.basis(d);
    // Express beta and beta*omega in the ideal basis (e1, e2).
    let to_basis = |x: &AlgInt| -> (i128, i128) {
        let (m, n) = x.coords(d);
        let bm = (ideal.b() - d.tau()) / 2;
        let t = n;
        let s = (m - t * bm) / ideal.a();
        debug_assert_eq!((m - t * bm) % ideal.a(), 0);
        (s, t)
    };
    let w = AlgInt::omega(d);
    let r1 = to_basis(beta);
    let r2 = to_basis(&beta.mul(&w, d));
    // Hermite form of the 2x2 matrix [r1; r2]: columns index (e1, e2) coords.
    // Index = |det| = N(beta) / N(ideal).
    let det = (r1.0 * r2.1 - r1.1 * r2.0).abs();
    debug_assert_eq!(det, beta.norm(d) / ideal.norm());
    // Enumerate a box that surjects onto the quotient: (s, t) with
    // 0 <= s < det, 0 <= t < det covers all cosets (crude but complete),
    // then dedup by reduction mod the sublattice.
    let mut reps: Vec<AlgInt> = Vec::new();
    let mut seen: Vec<(i128, i128)> = Vec::new();
    for s in 0..det {
        for t in 0..det {
            let key = reduce_mod_lattice((s, t), r1, r2);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            reps.push(e1.mul_int(key.0).add(&e2.mul_int(key.1)));
            if reps.len() as i128 == det {
                return reps;
            }
        }
    }
    reps
}

/// Canonical representative of v modulo the lattice spanned by r1, r2,
/// via Cramer coordinates reduced by euclidean division.
fn reduce_mod_lattice(v: (i128, i128), r1: (i128, i128), r2: (i128, i128)) -> (i128, i128) {
    let det = r1.0 * r2.1 - r1.1 * r2.0;
    debug_assert!(det != 0);
    let xn = v.0 * r2.1 - v.1 * r2.0;
    let yn = r1.0 * v.1 - r1.1 * v.0;
    let fx = xn.div_euclid(det);
    let fy = yn.div_euclid(det);
    (v.0 - fx * r1.0 - fy * r2.0, v.1 - fx * r1.1 - fy * r2.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn pid_has_no_singular_points() {
        for dd in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
            let d = Disc::new(dd).unwrap();
            assert!(singular_points(&d).is_empty(), "d = {dd}");
        }
    }

    #[test]
    fn integral_and_half_points_not_singular() {
        let d = Disc::new(-132).unwrap();
        assert!(!is_singular(&FieldElem::from_int(0), &d));
        assert!(!is_singular(&FieldElem::from_int(3), &d));
        assert!(!is_singular(
            &FieldElem::new(AlgInt::from_int(1), 2, &d),
            &d
        ));
        assert!(!is_singular(&FieldElem::from_algint(AlgInt::omega(&d)), &d));
    }

    #[test]
    fn known_singular_points_d132() {
        let d = Disc::new(-132).unwrap();
        let pts = singular_points(&d);
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert!(is_singular(p, &d), "listed point must be singular");
        }
        // (1+sqrt(-33))/2, sqrt(-33)/3, (3+sqrt(-33))/6 up to translation
        let expected = [
            FieldElem::new(AlgInt::new(2, 1, &d), 2, &d),
            FieldElem::new(AlgInt::new(0, 1, &d), 3, &d),
            FieldElem::new(AlgInt::new(6, 1, &d), 6, &d),
        ];
        for e in &expected {
            let r = canonical_point_rep(e, &d);
            assert!(pts.contains(&r), "missing {:?}", e.plane());
        }
    }

    #[test]
    fn known_singular_point_d388() {
        let d = Disc::new(-388).unwrap();
        let pts = singular_points(&d);
        // contains (1+sqrt(-97))/2 = (2 + sqrt(-388))/4
        let z = canonical_point_rep(&FieldElem::new(AlgInt::new(2, 1, &d), 2, &d), &d);
        assert!(pts.contains(&z));
        assert!(pts.len() >= 3);
    }

    #[test]
    fn singular_count_at_least_class_number_minus_one() {
        for dd in [-15, -20, -23, -24, -132] {
            let d = Disc::new(dd).unwrap();
            let h = super::super::ideal::class_number(&d);
            assert!(singular_points(&d).len() >= h - 1, "d = {dd}");
        }
    }

    #[test]
    fn half_integer_never_blows_up() {
        let d = Disc::new(-20).unwrap();
        let z = FieldElem::new(AlgInt::new(2, 1, &d), 2, &d);
        // (1+sqrt(-5))/2: the singular point for the nontrivial class
        assert!(is_singular(&z, &d));
        let (u, v) = z.plane();
        assert_eq!((u, v), (rat(1, 2), rat(1, 4)));
    }
}
