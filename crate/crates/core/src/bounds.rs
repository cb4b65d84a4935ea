//! The headline curvature bounds: the maximal proper divisor delta of the
//! discriminant, the lower bound max(|delta|/8, (sqrt|d| - 2)/sqrt 3), the
//! upper bound 14 J max(|delta|, J sqrt|d|), the constructive witness point
//! behind the lower bound, and the exhaustive uncovered-point verifier.

use crate::exact::{rat, rat_int, sign_lin_surd, Rat, Surd};
use crate::jacobsthal::{JacobsthalError, Solver};
use crate::qfield::{
    is_coprime, is_singular, AlgInt, Disc, FieldElem, Ideal,
};
use num_traits::Signed;

/// Exact value of max(|delta|^2) over proper divisors of d in the order:
/// max(d^2 / p_min^2, |d|), realized by d/p_min or sqrt(d). Returns the
/// divisor and its squared magnitude.
pub fn max_proper_divisor(d: &Disc) -> (AlgInt, i128) {
    let p = d.smallest_prime_factor();
    let rational_sq = (d.abs() / p) * (d.abs() / p);
    let surd_sq = d.abs();
    if rational_sq >= surd_sq {
        (AlgInt::from_int(d.d() as i128 / p), rational_sq)
    } else {
        (AlgInt::sqrt_disc(), surd_sq)
    }
}

/// The divisor family the bound formulas quantify over: rational divisors
/// of d, plus sqrt(d), plus sqrt(d)/2 when d is even, excluding associates
/// of d itself. Each listed element is checked to divide d exactly.
pub fn proper_divisors_oracle(d: &Disc) -> Vec<AlgInt> {
    let delta = AlgInt::from_int(d.d() as i128);
    let n_delta = delta.norm(d);
    let mut out = Vec::new();
    let push = |x: AlgInt, out: &mut Vec<AlgInt>| {
        assert!(delta.div_exact(&x, d).is_some(), "listed divisor must divide");
        if x.norm(d) != n_delta {
            out.push(x);
        }
    };
    for r in 1..=d.abs() {
        if d.abs() % r == 0 {
            push(AlgInt::from_int(r), &mut out);
        }
    }
    push(AlgInt::sqrt_disc(), &mut out);
    if d.is_even() {
        push(AlgInt::new(0, 1, d), &mut out);
    }
    out
}

/// max(|delta|/8, (sqrt|d|-2)/sqrt 3) as an exact surd value.
pub fn lower_bound(d: &Disc) -> Surd {
    let (_, delta_sq) = max_proper_divisor(d);
    let a = Surd::sqrt_int(rat(1, 8), delta_sq);
    // (sqrt|d| - 2)/sqrt 3 = sqrt(3 |d|)/3 - (2/3) sqrt(3)
    let b = Surd::sqrt_int(rat(1, 3), 3 * d.abs()).sub(&Surd::sqrt_int(rat(2, 3), 3));
    Surd::max_surd(a, b)
}

/// Lower bound rounded up to the nearest integer magnitude, the display
/// convention of the log-scale dataset.
pub fn lower_bound_rounded_up(d: &Disc) -> i128 {
    let lb = lower_bound(d);
    let mut n = 0i128;
    loop {
        if lb.sub(&Surd::from_int(n)).sign() <= 0 {
            return n;
        }
        n += 1;
    }
}

/// 14 J max(|delta|, J sqrt|d|) as an exact surd value, with J minimal.
pub fn upper_bound(d: &Disc, solver: &mut Solver) -> Result<(Surd, u64), JacobsthalError> {
    let (_, delta_sq) = max_proper_divisor(d);
    let j = solver.theorem_j(d, delta_sq, 64)?;
    let jj = j as i128;
    let a = Surd::sqrt_int(rat_int(1), delta_sq);
    let b = Surd::sqrt_int(rat_int(jj), d.abs());
    let m = Surd::max_surd(a, b);
    Ok((m.scale(&rat_int(14 * jj)), j))
}

/// Everything the report surface needs about one discriminant.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub disc: Disc,
    pub class_number: usize,
    pub delta: AlgInt,
    pub delta_norm_sq: i128,
    pub j: u64,
    pub lower: Surd,
    pub upper: Surd,
    pub swan_sq: Option<i128>,
}

pub fn bounds_report(
    d: &Disc,
    solver: &mut Solver,
    swan_sq: Option<i128>,
) -> Result<BoundsReport, JacobsthalError> {
    let (delta, delta_norm_sq) = max_proper_divisor(d);
    let lower = lower_bound(d);
    let (upper, j) = upper_bound(d, solver)?;
    debug_assert_eq!(lower.sub(&upper).sign(), -1, "lower < upper exactly");
    if let Some(s) = swan_sq {
        debug_assert_eq!(lower.square().sub(&Surd::from_int(s)).sign(), -1);
        debug_assert_eq!(Surd::from_int(s).sub(&upper.square()).sign(), -1);
    }
    Ok(BoundsReport {
        disc: *d,
        class_number: crate::qfield::class_number(d),
        delta,
        delta_norm_sq,
        j,
        lower,
        upper,
        swan_sq,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessResult {
    /// The proof regime |delta| > 4 sqrt|d| does not hold.
    NotApplicable,
    Witness {
        zeta: FieldElem,
        /// |delta|^2, the square of the claimed curvature lower bound * 8.
        delta_sq: i128,
        /// The auxiliary prime element pi and the inverse multiplier a.
        pi: AlgInt,
        a: i128,
    },
}

/// The constructive uncovered point zeta = a p / pi: a non-singular point
/// that no hemisphere of curvature below |delta|/8 covers.
pub fn lower_witness(d: &Disc) -> WitnessResult {
    let (_, delta_sq) = max_proper_divisor(d);
    if delta_sq <= 16 * d.abs() {
        return WitnessResult::NotApplicable;
    }
    let p = d.smallest_prime_factor();
    // pi in the prime over p with Z[pi] the whole order and p^2 not
    // dividing |pi|^2: sqrt(d)/2 when d is even and it lands in the prime,
    // else (p - sqrt(d))/2.
    let half_sqrt = if d.is_even() {
        Some(AlgInt::new(0, 1, d))
    } else {
        None
    };
    let pi = match half_sqrt {
        Some(x) if x.norm(d) % p == 0 => x.neg(),
        _ => AlgInt::new(p, -1, d),
    };
    let pi_norm = pi.norm(d);
    assert_eq!(pi_norm % p, 0);
    assert!(pi_norm % (p * p) != 0, "p^2 must not divide |pi|^2");
    let modulus = pi_norm / p;
    let a = (1..modulus)
        .find(|a| (a * p).rem_euclid(modulus) == 1)
        .expect("p invertible mod |pi|^2 / p");
    let zeta = FieldElem::quotient(&AlgInt::from_int(a * p), &pi, d);
    debug_assert!(!is_singular(&zeta, d));
    WitnessResult::Witness {
        zeta,
        delta_sq,
        pi,
        a,
    }
}

/// Exhaustive check that no hemisphere with ||mu|| <= cap_sq strictly
/// covers zeta: true when no coprime (lambda, mu) has ||mu zeta - lambda||
/// < 1. On failure returns the first counterexample in (norm, lex) order.
pub fn verify_uncovered(
    zeta: &FieldElem,
    cap_sq: i128,
    d: &Disc,
) -> Result<(), (AlgInt, AlgInt)> {
    assert!(cap_sq >= 1);
    let one = Rat::from_integer(1.into());
    for n in 1..=cap_sq {
        for mu in Ideal::unit(d).elements_of_norm(n, d) {
            for lambda in lattice_points_within_unit(zeta, &mu, d) {
                if !is_coprime(&lambda, &mu, d) {
                    continue;
                }
                let err = zeta.mul_sub(&mu, &lambda, d).norm_rat(d);
                if err < one {
                    return Err((lambda, mu));
                }
            }
        }
    }
    Ok(())
}

/// All lattice points lambda with |mu zeta - lambda| < 1, enumerated from
/// exact coordinate ranges.
fn lattice_points_within_unit(zeta: &FieldElem, mu: &AlgInt, d: &Disc) -> Vec<AlgInt> {
    let prod = zeta.mul_sub(mu, &AlgInt::zero(), d);
    let (u, v) = prod.plane();
    // lambda = (a + b sqrt(d))/2: need (u - a/2)^2 + |d| (v - b/2)^2 < 1
    let mut out = Vec::new();
    let two_v = &v * rat_int(2);
    let abs_d = rat_int(d.abs());
    // |v - b/2| < 1/sqrt|d|  =>  b in (2v - 2/sqrt|d|, 2v + 2/sqrt|d|)
    use num_traits::ToPrimitive;
    let mut b = crate::exact::floor_rat(&(&two_v - rat_int(2))).to_i128().unwrap();
    let b_hi = crate::exact::floor_rat(&(&two_v + rat_int(2))).to_i128().unwrap() + 1;
    while b <= b_hi {
        let dv = &v - rat(b, 2);
        let rem = Rat::from_integer(1.into()) - &dv * &dv * &abs_d;
        if rem.is_positive() {
            // (u - a/2)^2 < rem  =>  a in (2u - 2 sqrt(rem), 2u + 2 sqrt(rem))
            let lo = ceil_of_minus(&u, &rem);
            let hi = floor_of_plus(&u, &rem);
            let mut a = lo;
            while a <= hi {
                if (a - b * d.d() as i128).rem_euclid(2) == 0 {
                    let lam = AlgInt::new(a, b, d);
                    let du = &u - rat(a, 2);
                    if &du * &du + &dv * &dv * &abs_d < Rat::from_integer(1.into()) {
                        out.push(lam);
                    }
                }
                a += 1;
            }
        }
        b += 1;
    }
    out
}

/// Smallest integer a with a/2 > u - sqrt(rem), i.e. a > 2u - 2 sqrt(rem).
fn ceil_of_minus(u: &Rat, rem: &Rat) -> i128 {
    // a > 2u - 2 sqrt(rem): find via integer scan from a floor estimate.
    let base = &(u * rat_int(2));
    let mut a = crate::exact::floor_rat(&(base - rat_int(2))).try_into().unwrap_or(i128::MIN);
    // tighten: increase while (2u - a) > 2 sqrt(rem) i.e. (2u - a)^2 > 4 rem and 2u - a > 0
    loop {
        let diff = base - rat_int(a);
        if diff.is_positive() && &diff * &diff > rem * rat_int(4) {
            a += 1;
        } else {
            return a;
        }
    }
}

/// Largest integer a with a < 2u + 2 sqrt(rem).
fn floor_of_plus(u: &Rat, rem: &Rat) -> i128 {
    let base = &(u * rat_int(2));
    let mut a: i128 = crate::exact::floor_rat(&(base + rat_int(2))).try_into().unwrap_or(i128::MAX);
    loop {
        let diff = rat_int(a) - base;
        if diff.is_positive() && &diff * &diff > rem * rat_int(4) {
            a -= 1;
        } else {
            return a;
        }
    }
}

/// The hexagonal corner check behind the unconditional lower bound: no
/// coprime pair with ||mu|| <= cap and lambda/mu outside {0, 1} brings
/// |mu zeta_6 - lambda| <= 1, where zeta_6 = e^{i pi/3}. Exact via
/// two-term surd signs in sqrt(3 |d|).
pub fn verify_zeta6_gap(d: &Disc) -> bool {
    // cap: ||mu|| <= ((sqrt|d| - 2)/sqrt 3)^2 = (|d| + 4 - 4 sqrt|d|)/3
    let bound_times_3 = |n: i128| {
        // 3 n <= |d| + 4 - 4 sqrt|d|  <=>  3n - |d| - 4 <= -4 sqrt|d|
        sign_lin_surd(&rat_int(3 * n - d.abs() - 4), &rat_int(4), d.abs()) <= 0
    };
    let mut n = 1i128;
    while bound_times_3(n) {
        for mu in Ideal::unit(d).elements_of_norm(n, d) {
            for sign in [1i128, -1] {
                let mu = mu.mul_int(sign);
                // |mu zeta6 - lambda|^2 = q0 + q1 sqrt(3 |d|) exactly
                // mu = (a + b sqrt(d))/2, zeta6 = 1/2 + i sqrt(3)/2
                // real: a/4 - b sqrt(3|d|)/4 - lambda_re
                // imag*: (a sqrt(3) + b sqrt(|d|))/4 - lambda_im-part
                // Enumerate lambda near mu*zeta6 from coordinate boxes.
                for (la, lb) in zeta6_lambda_candidates(&mu, d) {
                    if (la - lb * d.d() as i128).rem_euclid(2) != 0 {
                        continue;
                    }
                    let lambda = AlgInt::new(la, lb, d);
                    if !is_coprime(&lambda, &mu, d) {
                        continue;
                    }
                    // skip lambda/mu in {0, 1}
                    if lambda.is_zero() || lambda == mu {
                        continue;
                    }
                    // |mu zeta6 - lambda|^2 <= 1?
                    let (q0, q1) = zeta6_distance_sq(&mu, &lambda, d);
                    if sign_lin_surd(&(q0 - rat_int(1)), &q1, 3 * d.abs()) <= 0 {
                        return false;
                    }
                }
            }
        }
        n += 1;
    }
    true
}

/// |mu zeta6 - lambda|^2 as q0 + q1 sqrt(3 |d|).
fn zeta6_distance_sq(mu: &AlgInt, lambda: &AlgInt, d: &Disc) -> (Rat, Rat) {
    let (am, bm) = (mu.a(), mu.b());
    let (al, bl) = (lambda.a(), lambda.b());
    let dd = d.abs();
    // mu zeta6 = (a + b sqrt(d))/2 * (1 + sqrt(-3))/2 with sqrt(d) = sqrt(|d|) i:
    // real = a/4 - b sqrt(3 |d|)/4, imag = a sqrt(3)/4 + b sqrt(|d|)/4
    // diff_real = (a - 2 al)/4 - (b/4) sqrt(3|d|)
    // diff_imag = (a/4) sqrt(3) + ((b - 2 bl)/4) sqrt(|d|)
    // squared magnitude = diff_real^2 + diff_imag^2, collect sqrt(3|d|):
    let x0 = rat(am - 2 * al, 4);
    let x1 = rat(-bm, 4);
    let y3 = rat(am, 4); // coefficient of sqrt(3)
    let yd = rat(bm - 2 * bl, 4); // coefficient of sqrt(|d|)
    // real^2 = x0^2 + x1^2 (3|d|) + 2 x0 x1 sqrt(3|d|)
    // imag^2 = 3 y3^2 + |d| yd^2 + 2 y3 yd sqrt(3 |d|)
    let q0 = &x0 * &x0
        + &x1 * &x1 * rat_int(3 * dd)
        + &y3 * &y3 * rat_int(3)
        + &yd * &yd * rat_int(dd);
    let q1 = &x0 * &x1 * rat_int(2) + &y3 * &yd * rat_int(2);
    (q0, q1)
}

/// Integer coordinate candidates for lambda near mu * zeta6.
fn zeta6_lambda_candidates(mu: &AlgInt, d: &Disc) -> Vec<(i128, i128)> {
    // Approximate center: mu zeta6 = (a/4 - b sqrt(3|d|)/4) + i(a sqrt3 + b sqrt|d|)/4
    let dd = d.abs() as f64;
    let (a, b) = (mu.a() as f64, mu.b() as f64);
    let cu = a / 4.0 - b * (3.0 * dd).sqrt() / 4.0;
    let cv = (a * 3.0f64.sqrt() + b * dd.sqrt()) / 4.0; // in absolute units
    // lambda = (la + lb sqrt(d))/2: real la/2, imag lb sqrt|d|/2
    let lb0 = (2.0 * cv / dd.sqrt()).round() as i128;
    let la0 = (2.0 * cu).round() as i128;
    let mut out = Vec::new();
    for db in -2..=2 {
        for da in -3..=3 {
            out.push((la0 + da, lb0 + db));
        }
    }
    out
}
