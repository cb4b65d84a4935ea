//! Floor-function continued fractions over exact rationals and the
//! two-dimensional approximation search. These are the constructive
//! ingredients behind the curvature upper bound, exposed on their own for
//! property testing and reuse.

use crate::exact::{floor_rat, Rat};
use crate::qfield::{AlgInt, Disc, FieldElem};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Full state of a floor-function continued fraction expansion of a
/// rational: quotients, convergents, and exact tails.
///
/// Convergent indexing follows p_{-1} = q_0 = 0, q_{-1} = p_0 = 1 and
/// p_{n+1} = floor(z_n) p_n + p_{n-1}. `convergents[k]` is (p, q) at index
/// k + 1, so the first entry is floor(z)/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfState {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
    pub tails: Vec<Rat>,
    /// True when the expansion ended with an integral tail.
    pub terminated: bool,
}

/// Expands a rational until the tail is integral or `max_steps` quotients
/// have been produced. Rational input always terminates.
pub fn cf_expand(z: &Rat, max_steps: usize) -> CfState {
    assert!(max_steps >= 1);
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let mut tails = Vec::new();
    // p[-1] = 0, p[0] = 1; q[-1] = 1, q[0] = 0.
    let mut p_nm1 = BigInt::from(0);
    let mut p_n = BigInt::from(1);
    let mut q_nm1 = BigInt::from(1);
    let mut q_n = BigInt::from(0);
    let mut tail = z.clone();
    let mut terminated = false;
    for _ in 0..max_steps {
        tails.push(tail.clone());
        let a = floor_rat(&tail);
        quotients.push(a.clone());
        let p_next = &a * &p_n + &p_nm1;
        let q_next = &a * &q_n + &q_nm1;
        convergents.push((p_next.clone(), q_next.clone()));
        p_nm1 = p_n;
        p_n = p_next;
        q_nm1 = q_n;
        q_n = q_next;
        let frac = &tail - Rat::from_integer(a);
        if frac.is_zero() {
            terminated = true;
            break;
        }
        tail = frac.recip();
    }
    CfState {
        quotients,
        convergents,
        tails,
        terminated,
    }
}

impl CfState {
    /// |q_n z - p_n| at convergent list position k (index k + 1).
    pub fn residual(&self, z: &Rat, k: usize) -> Rat {
        let (p, q) = &self.convergents[k];
        (Rat::from_integer(q.clone()) * z - Rat::from_integer(p.clone())).abs()
    }
}

/// First convergent with |q z - p| < eps, with the two side conditions
/// q_n < |q_{n-1} z - p_{n-1}|^{-1} <= 1/eps checked where defined.
/// Returns (p, q, index) with index starting at 1 for the first convergent.
pub fn first_convergent_below(z: &Rat, eps: &Rat) -> (BigInt, BigInt, usize) {
    assert!(eps > &Rat::zero() && eps <= &Rat::from_integer(BigInt::from(1)));
    let state = cf_expand(z, 10_000);
    for k in 0..state.convergents.len() {
        let r = state.residual(z, k);
        if &r < eps {
            let (p, q) = state.convergents[k].clone();
            if k > 0 {
                let prev = state.residual(z, k - 1);
                // minimality of the index gives prev >= eps
                debug_assert!(&prev >= eps);
                debug_assert!(Rat::from_integer(q.clone()) * &prev <= Rat::from_integer(BigInt::from(1)));
            }
            return (p, q, k + 1);
        }
    }
    unreachable!("rational expansions reach residual zero");
}

/// A small-denominator approximation of zeta: mu nonzero with
/// ||mu|| < r_sq and ||mu zeta - lambda|| < |d| / (2 r_sq), found by
/// ascending-norm enumeration with the nearest lattice point as lambda.
/// Guaranteed to exist when r_sq >= 16 |d|; below that regime None is
/// possible.
pub fn dirichlet_pair(
    zeta: &FieldElem,
    r_sq: &Rat,
    d: &Disc,
) -> Option<(AlgInt, AlgInt)> {
    use crate::exact::rat_int;
    let bound = Rat::new(BigInt::from(d.abs()), BigInt::from(2)) / r_sq;
    let mut best: Option<(AlgInt, AlgInt)> = None;
    let mut n = 1i128;
    loop {
        if &rat_int(n) >= r_sq {
            break;
        }
        for mu in crate::qfield::Ideal::unit(d).elements_of_norm(n, d) {
            for lambda in nearest_lattice_points(zeta, &mu, d) {
                let err = zeta.mul_sub(&mu, &lambda, d).norm_rat(d);
                if err < bound && best.is_none() {
                    best = Some((lambda, mu));
                }
            }
            if best.is_some() {
                return best;
            }
        }
        n += 1;
    }
    None
}

/// Lattice points of the order nearest to mu * zeta: the four floor/ceil
/// combinations in basis coordinates, deduplicated.
pub fn nearest_lattice_points(zeta: &FieldElem, mu: &AlgInt, d: &Disc) -> Vec<AlgInt> {
    let prod = zeta.mul_sub(mu, &AlgInt::zero(), d);
    let (x, y) = prod.basis_coords(d);
    let fx = floor_rat(&x);
    let fy = floor_rat(&y);
    let mut out = Vec::new();
    use num_traits::ToPrimitive;
    for dx in 0..2i128 {
        for dy in 0..2i128 {
            let m = fx.to_i128().unwrap() + dx;
            let n = fy.to_i128().unwrap() + dy;
            let cand = AlgInt::from_coords(m, n, d);
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn half_expansion() {
        let state = cf_expand(&rat(1, 2), 10);
        assert!(state.terminated);
        let qs: Vec<i64> = state.quotients.iter().map(|q| i64::try_from(q).unwrap()).collect();
        assert_eq!(qs, vec![0, 2]);
        let last = state.convergents.last().unwrap();
        assert_eq!((i64::try_from(&last.0).unwrap(), i64::try_from(&last.1).unwrap()), (1, 2));
    }

    #[test]
    fn seven_thirds() {
        let state = cf_expand(&rat(7, 3), 10);
        let cs: Vec<(i64, i64)> = state
            .convergents
            .iter()
            .map(|(p, q)| (i64::try_from(p).unwrap(), i64::try_from(q).unwrap()))
            .collect();
        assert_eq!(cs, vec![(2, 1), (7, 3)]);
    }

    #[test]
    fn integral_input() {
        let state = cf_expand(&rat(5, 1), 10);
        assert!(state.terminated);
        assert_eq!(state.convergents.len(), 1);
        let (p, q) = &state.convergents[0];
        assert_eq!((i64::try_from(p).unwrap(), i64::try_from(q).unwrap()), (5, 1));
    }

    #[test]
    fn first_below_examples() {
        let (p, q, idx) = first_convergent_below(&rat(0, 1), &rat(1, 2));
        assert_eq!((i64::try_from(&p).unwrap(), i64::try_from(&q).unwrap(), idx), (0, 1, 1));
        // |1 * 7/3 - 2| = 1/3 < 1/2 already at the first convergent
        let (p, q, idx) = first_convergent_below(&rat(7, 3), &rat(1, 2));
        assert_eq!((i64::try_from(&p).unwrap(), i64::try_from(&q).unwrap(), idx), (2, 1, 1));
    }

    #[test]
    fn dirichlet_trivial_cases() {
        let d = Disc::new(-23).unwrap();
        let (l, m) = dirichlet_pair(&FieldElem::from_int(0), &rat(368, 1), &d).unwrap();
        assert_eq!((l, m), (AlgInt::zero(), AlgInt::one()));
        let z = FieldElem::from_algint(AlgInt::omega(&d));
        let (l, m) = dirichlet_pair(&z, &rat(368, 1), &d).unwrap();
        assert_eq!(m, AlgInt::one());
        assert_eq!(l, AlgInt::omega(&d));
    }

    #[test]
    fn dirichlet_at_threshold() {
        let d = Disc::new(-23).unwrap();
        // zeta = (1 + sqrt(-23))/4 -> numerator (1, 1) over denominator 2
        let z = FieldElem::new(AlgInt::new(1, 1, &d), 2, &d);
        let r_sq = rat(16 * 23, 1);
        let (l, m) = dirichlet_pair(&z, &r_sq, &d).unwrap();
        assert!(!m.is_zero());
        assert!(rat(m.norm(&d), 1) < r_sq);
        let err = z.mul_sub(&m, &l, &d).norm_rat(&d);
        assert!(err < rat(23, 2 * 16 * 23));
    }
}
