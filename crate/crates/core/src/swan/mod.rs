//! The floor computation at desk scale: generate candidate hemispheres,
//! build the exact envelope over the fundamental parallelogram, certify
//! completeness through the minimal positive vertex height, and read off
//! the maximal face curvature together with a generating set.

mod envelope;
mod hemisphere;

pub use envelope::{argmax_owner, floor_envelope, prune_covered, Envelope, FloorFace};
pub use hemisphere::{
    candidate_hemispheres, candidate_hemispheres_naive, covers, covers_ball,
    dist_sq_to_fundamental, fundamental_polygon, height_transform, point_in_convex_polygon,
    unit_orbit_canonical, Covering, Hemisphere,
};

use crate::exact::{rat_int, Rat};
use crate::jacobsthal::Solver;
use crate::qfield::{
    bezout_solve, canonical_point_rep, singular_points, AlgInt, Disc, FieldElem, PlanePoint,
};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Default)]
pub struct SwanBudget {
    /// Hard ceiling on the candidate cap; the loop refuses to grow past it.
    pub max_cap_sq: Option<i128>,
    /// Wall-clock limit; checked between doubling stages.
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Debug)]
pub struct SwanResult {
    /// max ||mu|| among faces of the computed floor.
    pub swan_sq: i128,
    pub faces: Vec<FloorFace>,
    /// Minimal squared vertex height over non-singular vertices.
    pub min_vertex_height_sq: Option<Rat>,
    pub cap_used_sq: i128,
    pub certified: bool,
    /// Zero-height vertices that are not singular points; nonempty means
    /// the certification was vetoed for human review.
    pub suspicious_zero_vertices: Vec<PlanePoint>,
    pub singular: Vec<FieldElem>,
    pub elapsed: Duration,
}

/// Runs the doubling loop: at each stage compute the envelope at the
/// current cap, drop zero-height vertices at singular points (structural
/// cusps), and certify once the cap dominates the reciprocal of the
/// minimal remaining vertex height.
pub fn swan_number(d: &Disc, budget: &SwanBudget) -> SwanResult {
    let start = Instant::now();
    let singular = singular_points(d);
    let sanity_cap = sanity_cap_sq(d);
    let mut cap_sq = d.abs().max(16);
    loop {
        let candidates = candidate_hemispheres(d, cap_sq);
        let env = floor_envelope(candidates, d);
        let (min_h, suspicious) = classify_vertices(&env, &singular, d);
        let swan_sq = env
            .faces
            .iter()
            .map(|f| f.hemi.norm_mu)
            .max()
            .unwrap_or(0);
        let covered = !env.has_uncovered_vertex && suspicious.is_empty();
        let certified = covered
            && match &min_h {
                Some(h) => h * rat_int(cap_sq) >= rat_int(1),
                None => false,
            };
        if certified {
            return SwanResult {
                swan_sq,
                faces: env.faces,
                min_vertex_height_sq: min_h,
                cap_used_sq: cap_sq,
                certified: true,
                suspicious_zero_vertices: suspicious,
                singular,
                elapsed: start.elapsed(),
            };
        }
        let exhausted = budget
            .max_cap_sq
            .map(|m| 2 * cap_sq > m)
            .unwrap_or(false)
            || budget
                .time_limit
                .map(|t| start.elapsed() > t)
                .unwrap_or(false)
            || 2 * cap_sq > sanity_cap;
        if exhausted {
            return SwanResult {
                swan_sq,
                faces: env.faces,
                min_vertex_height_sq: min_h,
                cap_used_sq: cap_sq,
                certified: false,
                suspicious_zero_vertices: suspicious,
                singular,
                elapsed: start.elapsed(),
            };
        }
        cap_sq *= 2;
    }
}

/// The independent analytic cap: the doubling loop never needs to pass
/// the square of the curvature upper bound. Exceeding it would contradict
/// the bound and is reported as an uncertified result instead.
fn sanity_cap_sq(d: &Disc) -> i128 {
    let mut solver = Solver::new();
    match crate::bounds::upper_bound(d, &mut solver) {
        Ok((ub, _)) => {
            let sq = ub.square();
            let r = sq
                .is_rational()
                .expect("squared upper bound is rational");
            use num_traits::ToPrimitive;
            // a little headroom above the exact square, then doubled once
            2 * (r.ceil().to_integer().to_i128().unwrap_or(i128::MAX / 4) + 1)
        }
        Err(_) => i128::MAX / 4,
    }
}

/// Splits vertex heights: zero-height vertices at singular points are
/// structural cusps and drop out; zero-height elsewhere is suspicious.
/// Returns the minimal positive vertex height.
fn classify_vertices(
    env: &Envelope,
    singular: &[FieldElem],
    d: &Disc,
) -> (Option<Rat>, Vec<PlanePoint>) {
    let min_h = env.min_positive_vertex_sq.clone();
    let mut suspicious = Vec::new();
    for v in &env.zero_vertices {
        let z = canonical_point_rep(&v.to_field_elem(d), d);
        if !singular.contains(&z) && !suspicious.contains(v) {
            suspicious.push(v.clone());
        }
    }
    (min_h, suspicious)
}

/// A matrix [[beta, -alpha], [-mu, lambda]] over the order, det = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub beta: AlgInt,
    pub alpha: AlgInt,
    pub mu: AlgInt,
    pub lambda: AlgInt,
}

impl GeneratorMatrix {
    pub fn det(&self, d: &Disc) -> AlgInt {
        self.beta.mul(&self.lambda, d).sub(&self.alpha.mul(&self.mu, d))
    }

    pub fn translation(t: AlgInt) -> GeneratorMatrix {
        GeneratorMatrix {
            beta: AlgInt::one(),
            alpha: t.neg(),
            mu: AlgInt::zero(),
            lambda: AlgInt::one(),
        }
    }

    pub fn entries(&self) -> [[AlgInt; 2]; 2] {
        [
            [self.beta, self.alpha.neg()],
            [self.mu.neg(), self.lambda],
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncertifiedInput;

impl std::fmt::Display for UncertifiedInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "generators require a certified floor")
    }
}

impl std::error::Error for UncertifiedInput {}

/// One matrix per face, from the Bezout completion of its (lambda, mu),
/// plus the two basis translations and the inversion. Every determinant
/// is exactly one and every bottom-left entry norm is bounded by the
/// computed maximum curvature squared.
pub fn emit_generators(
    result: &SwanResult,
    d: &Disc,
) -> Result<Vec<GeneratorMatrix>, UncertifiedInput> {
    if !result.certified {
        return Err(UncertifiedInput);
    }
    let mut out = vec![
        GeneratorMatrix::translation(AlgInt::one()),
        GeneratorMatrix::translation(AlgInt::omega(d)),
    ];
    let mut seen: Vec<(AlgInt, AlgInt)> = Vec::new();
    for face in &result.faces {
        let key = (face.hemi.lambda, face.hemi.mu);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let (alpha, beta) = bezout_solve(&face.hemi.lambda, &face.hemi.mu, d)
            .expect("face pairs are coprime");
        out.push(GeneratorMatrix {
            beta,
            alpha,
            mu: face.hemi.mu,
            lambda: face.hemi.lambda,
        });
    }
    for g in &out {
        debug_assert_eq!(g.det(d), AlgInt::one());
    }
    Ok(out)
}
