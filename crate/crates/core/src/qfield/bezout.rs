//! Bezout solving over the order: given coprime lambda, mu, produce
//! beta*lambda - alpha*mu = 1 with beta of minimal magnitude in its class
//! mod mu. These become the entries of hemisphere generator matrices.

use super::algint::AlgInt;
use super::disc::Disc;
use super::ideal::{gauss_reduce, is_coprime};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotCoprime;

impl fmt::Display for NotCoprime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair is not coprime, no unimodular completion exists")
    }
}

impl std::error::Error for NotCoprime {}

/// Solves beta*lambda - alpha*mu = 1 exactly; beta is reduced to minimal
/// magnitude in its congruence class mod mu (ties lexicographic on (a, b)),
/// and alpha is recomputed as (beta*lambda - 1)/mu.
pub fn bezout_solve(
    lambda: &AlgInt,
    mu: &AlgInt,
    d: &Disc,
) -> Result<(AlgInt, AlgInt), NotCoprime> {
    if mu.is_zero() || !is_coprime(lambda, mu, d) {
        return Err(NotCoprime);
    }
    let beta0 = raw_solution(lambda, mu, d).ok_or(NotCoprime)?;
    let beta = reduce_mod(&beta0, mu, d);
    let alpha = beta
        .mul(lambda, d)
        .sub(&AlgInt::one())
        .div_exact(mu, d)
        .expect("beta*lambda = 1 mod mu by construction");
    debug_assert_eq!(
        beta.mul(lambda, d).sub(&alpha.mul(mu, d)),
        AlgInt::one(),
        "determinant check"
    );
    Ok((alpha, beta))
}

/// Some beta with beta*lambda = 1 (mod mu). Works on the coordinate
/// lattice of the four generators lambda, lambda*omega, mu, mu*omega,
/// which spans all of Z^2 exactly when the pair is coprime.
fn raw_solution(lambda: &AlgInt, mu: &AlgInt, d: &Disc) -> Option<AlgInt> {
    let w = AlgInt::omega(d);
    let cols = [*lambda, lambda.mul(&w, d), *mu, mu.mul(&w, d)];
    let rows: [(i128, i128); 4] = [
        cols[0].coords(d),
        cols[1].coords(d),
        cols[2].coords(d),
        cols[3].coords(d),
    ];
    let coeffs = solve_unit_combo(&rows)?;
    Some(AlgInt::from_coords(coeffs[0], coeffs[1], d))
}

/// Integer x with sum x_i * rows_i = (1, 0), when the rows span Z^2.
fn solve_unit_combo(rows: &[(i128, i128); 4]) -> Option<[i128; 4]> {
    // Combine rows to one pivot row p with p.1 = gcd of second coordinates.
    let mut p = (0i128, 0i128);
    let mut cp = [0i128; 4];
    for (i, r) in rows.iter().enumerate() {
        if r.1 == 0 {
            continue;
        }
        if p.1 == 0 {
            p = *r;
            cp = unit_vec(i);
            continue;
        }
        let (g, x, y) = ext_gcd(p.1, r.1);
        let mut nc = [0i128; 4];
        for k in 0..4 {
            nc[k] = x * cp[k];
        }
        nc[i] += y;
        p = (x * p.0 + y * r.0, g);
        cp = nc;
    }
    // Eliminate second coordinates, then gcd the first coordinates.
    let mut q = 0i128;
    let mut cq = [0i128; 4];
    for (i, r) in rows.iter().enumerate() {
        let t = if p.1 != 0 { r.1 / p.1 } else { 0 };
        let m = r.0 - t * p.0;
        if m == 0 {
            continue;
        }
        let mut e = [0i128; 4];
        for k in 0..4 {
            e[k] = -t * cp[k];
        }
        e[i] += 1;
        if q == 0 {
            q = m;
            cq = e;
        } else {
            let (g, x, y) = ext_gcd(q, m);
            let mut nc = [0i128; 4];
            for k in 0..4 {
                nc[k] = x * cq[k] + y * e[k];
            }
            q = g;
            cq = nc;
        }
    }
    // Target (1, 0): the second coordinate must come out zero, so only the
    // pure row q participates; need |q| = 1.
    match q {
        1 => Some(cq),
        -1 => Some(cq.map(|c| -c)),
        _ => None,
    }
}

fn unit_vec(i: usize) -> [i128; 4] {
    let mut e = [0i128; 4];
    e[i] = 1;
    e
}

/// (g, x, y) with g = gcd(a,b) > 0 and xa + yb = g.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Minimal-magnitude representative of x mod the lattice mu * order,
/// ties broken lexicographically on the (a, b) pair.
pub fn reduce_mod(x: &AlgInt, mu: &AlgInt, d: &Disc) -> AlgInt {
    let w = AlgInt::omega(d);
    let (b1, b2) = gauss_reduce((*mu, mu.mul(&w, d)), d);
    // Babai rounding in the reduced frame, then a local search wide enough
    // to be exact in rank 2.
    let (m1, n1) = b1.coords(d);
    let (m2, n2) = b2.coords(d);
    let (mx, nx) = x.coords(d);
    let det = m1 * n2 - n1 * m2;
    debug_assert!(det != 0);
    let s0 = div_round_i128(mx * n2 - nx * m2, det);
    let t0 = div_round_i128(m1 * nx - n1 * mx, det);
    let mut best: Option<AlgInt> = None;
    for ds in -2..=2i128 {
        for dt in -2..=2i128 {
            let cand = x.sub(&b1.mul_int(s0 + ds)).sub(&b2.mul_int(t0 + dt));
            let better = match &best {
                None => true,
                Some(b) => {
                    let (nc, nb) = (cand.norm(d), b.norm(d));
                    nc < nb || (nc == nb && (cand.a(), cand.b()) < (b.a(), b.b()))
                }
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

fn div_round_i128(num: i128, den: i128) -> i128 {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    (2 * num + den).div_euclid(2 * den)
}
