//! Integral ideals in two-parameter normal form, Hermite reduction of
//! generated modules, lattice minima, principality, and prime splitting.

use super::algint::AlgInt;
use super::disc::Disc;
use crate::exact::{is_square_i128, jacobi};
use std::fmt;

/// The Z-module `a Z + ((b + sqrt(d))/2) Z`, normalized with
/// `0 <= b < 2a` and `b^2 = d (mod 4a)`. Its norm is `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    a: i128,
    b: i128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealError {
    BothZero,
    BadNormalForm { a: i128, b: i128 },
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::BothZero => write!(f, "the zero pair generates no ideal"),
            IdealError::BadNormalForm { a, b } => {
                write!(f, "({a}, {b}) violates b^2 = d mod 4a")
            }
        }
    }
}

impl std::error::Error for IdealError {}

impl Ideal {
    pub fn new(a: i128, b: i128, d: &Disc) -> Result<Ideal, IdealError> {
        if a <= 0 {
            return Err(IdealError::BadNormalForm { a, b });
        }
        let b = b.rem_euclid(2 * a);
        if (b * b - d.d() as i128).rem_euclid(4 * a) != 0 {
            return Err(IdealError::BadNormalForm { a, b });
        }
        Ok(Ideal { a, b })
    }

    pub fn unit(d: &Disc) -> Ideal {
        Ideal {
            a: 1,
            b: d.tau().rem_euclid(2),
        }
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn norm(&self) -> i128 {
        self.a
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    /// Z-basis: (a, (b + sqrt(d))/2).
    pub fn basis(&self, d: &Disc) -> (AlgInt, AlgInt) {
        (AlgInt::from_int(self.a), AlgInt::new(self.b, 1, d))
    }

    pub fn conj(&self, d: &Disc) -> Ideal {
        Ideal::new(self.a, -self.b, d).expect("conjugate stays normal")
    }

    pub fn contains(&self, x: &AlgInt, d: &Disc) -> bool {
        // x = s*a + t*(b+sqrt(d))/2 with integer s, t
        let (m, n) = x.coords(d);
        let bm = (self.b - d.tau()) / 2;
        let t = n;
        let rest = m - t * bm;
        rest % self.a == 0
    }

    /// Hermite normal form of the Z-module spanned by the given elements,
    /// returned as (content, primitive ideal). The module must be closed
    /// under multiplication by the order for the result to be an ideal.
    pub fn from_module(gens: &[AlgInt], d: &Disc) -> Result<(i128, Ideal), IdealError> {
        let rows: Vec<(i128, i128)> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.coords(d))
            .collect();
        if rows.is_empty() {
            return Err(IdealError::BothZero);
        }
        let (a_full, b_off, content) = hnf_rank2(&rows).ok_or(IdealError::BothZero)?;
        // Module = content * ( (a_full/content) Z + (b_off/content + omega) Z )
        let a = a_full / content;
        let b0 = b_off / content;
        let b = (2 * b0 + d.tau()).rem_euclid(2 * a);
        let ideal = Ideal::new(a, b, d)?;
        Ok((content, ideal))
    }

    /// The O-module generated by lambda and mu; errors when both are zero.
    pub fn from_pair(lambda: &AlgInt, mu: &AlgInt, d: &Disc) -> Result<(i128, Ideal), IdealError> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(IdealError::BothZero);
        }
        let w = AlgInt::omega(d);
        let gens = [
            *lambda,
            lambda.mul(&w, d),
            *mu,
            mu.mul(&w, d),
        ];
        Ideal::from_module(&gens, d)
    }

    /// Product of two normalized ideals as (content, primitive part).
    pub fn mul(&self, other: &Ideal, d: &Disc) -> (i128, Ideal) {
        let (x1, x2) = self.basis(d);
        let (y1, y2) = other.basis(d);
        let gens = [
            x1.mul(&y1, d),
            x1.mul(&y2, d),
            x2.mul(&y1, d),
            x2.mul(&y2, d),
        ];
        Ideal::from_module(&gens, d).expect("product of nonzero ideals is nonzero")
    }

    /// A nonzero element of minimal norm; ties resolved toward the
    /// canonical representative with smallest (|b|, |a|), then by sign.
    pub fn min_vector(&self, d: &Disc) -> AlgInt {
        let (v1, v2) = gauss_reduce(self.basis(d), d);
        let n1 = v1.norm(d);
        let mut best = v1;
        let mut best_norm = n1;
        // The shortest vector has coordinates within 1 of the reduced basis.
        for s in -1..=1i128 {
            for t in -1..=1i128 {
                if s == 0 && t == 0 {
                    continue;
                }
                let cand = v1.mul_int(s).add(&v2.mul_int(t));
                let n = cand.norm(d);
                if n < best_norm || (n == best_norm && tie_less(&cand, &best)) {
                    best = cand;
                    best_norm = n;
                }
            }
        }
        best.canonical_sign()
    }

    /// All elements of the ideal with the minimal nonzero norm, one per
    /// sign pair, canonical representatives.
    pub fn min_vectors(&self, d: &Disc) -> Vec<AlgInt> {
        let n = self.min_vector(d).norm(d);
        let mut out = self.elements_of_norm(n, d);
        out.sort();
        out.dedup();
        out
    }

    /// Elements of the ideal with norm exactly `n > 0`, canonical sign, sorted.
    pub fn elements_of_norm(&self, n: i128, d: &Disc) -> Vec<AlgInt> {
        assert!(n > 0);
        let mut out = Vec::new();
        let abs_d = d.abs();
        let dd = d.d() as i128;
        let push = |aa: i128, bb: i128, out: &mut Vec<AlgInt>| {
            if (aa - bb * dd).rem_euclid(2) != 0 {
                return;
            }
            let x = AlgInt::new(aa, bb, d);
            if self.contains(&x, d) {
                out.push(x);
            }
        };
        let mut b = 0i128;
        while abs_d * b * b <= 4 * n {
            if let Some(a) = is_square_i128(4 * n - abs_d * b * b) {
                if a > 0 && b > 0 {
                    push(a, b, &mut out);
                    push(a, -b, &mut out);
                } else if a > 0 {
                    push(a, 0, &mut out);
                } else if b > 0 {
                    push(0, b, &mut out);
                }
            }
            b += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Principality test with witness generator.
    pub fn principal_generator(&self, d: &Disc) -> Option<AlgInt> {
        let v = self.min_vector(d);
        (v.norm(d) == self.norm()).then_some(v)
    }

    pub fn is_principal(&self, d: &Disc) -> bool {
        self.principal_generator(d).is_some()
    }

    /// Equivalence of ideal classes: I ~ J iff I * conj(J) is principal.
    pub fn equivalent(&self, other: &Ideal, d: &Disc) -> bool {
        let (_, p) = self.mul(&other.conj(d), d);
        p.is_principal(d)
    }
}

fn tie_less(x: &AlgInt, y: &AlgInt) -> bool {
    let kx = (x.b().abs(), x.a().abs());
    let ky = (y.b().abs(), y.a().abs());
    kx < ky
}

/// Gauss-reduced basis of the rank-2 lattice spanned by (v1, v2).
pub fn gauss_reduce(basis: (AlgInt, AlgInt), d: &Disc) -> (AlgInt, AlgInt) {
    let (mut v1, mut v2) = basis;
    if v1.norm(d) > v2.norm(d) {
        std::mem::swap(&mut v1, &mut v2);
    }
    loop {
        // t = round( <v1, v2> / <v1, v1> )
        let num = v1.inner2(&v2, d);
        let den = 2 * v1.norm(d);
        let t = div_round(num, den);
        if t != 0 {
            v2 = v2.sub(&v1.mul_int(t));
        }
        if v2.norm(d) >= v1.norm(d) {
            return (v1, v2);
        }
        std::mem::swap(&mut v1, &mut v2);
    }
}

fn div_round(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let twice = 2 * num + den;
    twice.div_euclid(2 * den)
}

/// Row HNF of a set of integer pairs (m, n) meaning m + n*omega.
/// Returns (A, B, C) with lattice = A Z + (B + C omega) Z, A, C > 0,
/// 0 <= B < A, C | A, C | B when the module is order-closed.
fn hnf_rank2(rows: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    let mut c = 0i128;
    let mut mc = 0i128;
    let mut ga = 0i128;
    for &(m, n) in rows {
        if c == 0 {
            if n != 0 {
                c = n;
                mc = m;
            } else {
                ga = gcd(ga, m);
            }
            continue;
        }
        if n != 0 {
            let (g, x, y) = ext_gcd(c, n);
            let m_new = x * mc + y * m;
            // eliminate: the two rows combine to (m_new, g) and a pure row
            let k1 = c / g;
            let k2 = n / g;
            ga = gcd(ga, k2 * mc - k1 * m);
            c = g;
            mc = m_new;
        } else {
            ga = gcd(ga, m);
        }
    }
    if c == 0 && ga == 0 {
        return None;
    }
    if c == 0 {
        // Rank 1: not an ideal of the order (no omega part). Callers always
        // pass order-closed modules, so this is unreachable for them.
        return None;
    }
    if c < 0 {
        c = -c;
        mc = -mc;
    }
    let ga = ga.abs();
    debug_assert!(ga > 0, "order-closed module has full rank");
    let b = mc.rem_euclid(ga);
    Some((ga, b, c))
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
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

/// Coprimality of the pair ideal (lambda, mu).
pub fn is_coprime(lambda: &AlgInt, mu: &AlgInt, d: &Disc) -> bool {
    match Ideal::from_pair(lambda, mu, d) {
        Ok((content, ideal)) => content == 1 && ideal.is_unit(),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Kronecker-symbol classification of a rational prime, with the prime
/// ideal(s) above it in normal form (one for ramified, two conjugates
/// for split, none for inert).
pub fn prime_splitting(p: i128, d: &Disc) -> (Splitting, Vec<Ideal>) {
    let dd = d.d() as i128;
    let sym = if p == 2 {
        match dd.rem_euclid(8) {
            1 => 1,
            5 => -1,
            _ => 0,
        }
    } else {
        jacobi(dd, p)
    };
    match sym {
        -1 => (Splitting::Inert, vec![]),
        0 => {
            let b = (0..2 * p)
                .find(|b| (b * b - dd).rem_euclid(4 * p) == 0)
                .expect("ramified prime has a square root of d mod 4p");
            (Splitting::Ramified, vec![Ideal::new(p, b, d).unwrap()])
        }
        _ => {
            let b = (0..2 * p)
                .find(|b| (b * b - dd).rem_euclid(4 * p) == 0)
                .expect("split prime has a square root of d mod 4p");
            let p1 = Ideal::new(p, b, d).unwrap();
            let p2 = p1.conj(d);
            let mut v = vec![p1, p2];
            v.sort();
            v.dedup();
            (Splitting::Split, v)
        }
    }
}

/// True when some element of the order has norm exactly p. For a prime p
/// this decides principality of the primes above it without computing them.
pub fn has_element_of_norm(p: i128, d: &Disc) -> bool {
    let abs_d = d.abs();
    let mut b = 0i128;
    while abs_d * b * b <= 4 * p {
        let rem = 4 * p - abs_d * b * b;
        if let Some(a) = is_square_i128(rem) {
            if (a - b * d.d() as i128).rem_euclid(2) == 0 {
                return true;
            }
        }
        b += 1;
    }
    false
}

/// Reduced primitive ideals, one per ideal class (via reduced binary
/// quadratic forms of discriminant d). The unit ideal comes first.
pub fn class_representatives(d: &Disc) -> Vec<Ideal> {
    let dd = d.d() as i128;
    let mut reps = Vec::new();
    let mut a = 1i128;
    while 3 * a * a <= -dd {
        let mut b = -a;
        while b <= a {
            if (b - dd).rem_euclid(2) == 0 && (b * b - dd).rem_euclid(4 * a) == 0 {
                let c = (b * b - dd) / (4 * a);
                if c >= a && !(b < 0 && (a == c || -b == a)) {
                    reps.push(Ideal::new(a, b, d).unwrap());
                }
            }
            b += 1;
        }
        a += 1;
    }
    reps.sort();
    reps
}

pub fn class_number(d: &Disc) -> usize {
    class_representatives(d).len()
}

/// All primitive ideals of norm n, in normal form.
pub fn ideals_of_norm(n: i128, d: &Disc) -> Vec<Ideal> {
    let dd = d.d() as i128;
    (0..2 * n)
        .filter(|b| (b * b - dd).rem_euclid(4 * n) == 0)
        .map(|b| Ideal::new(n, b, d).unwrap())
        .collect()
}

/// The minimal norm of an integral ideal in the class of `rep`, with all
/// ideals attaining it.
pub fn minimal_ideals_in_class(rep: &Ideal, d: &Disc) -> (i128, Vec<Ideal>) {
    for n in 1.. {
        let hits: Vec<Ideal> = ideals_of_norm(n, d)
            .into_iter()
            .filter(|i| i.equivalent(rep, d))
            .collect();
        if !hits.is_empty() {
            return (n, hits);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_ideal_examples() {
        let d = Disc::new(-23).unwrap();
        // (1, anything) gives the unit ideal
        let (c, i) = Ideal::from_pair(&AlgInt::one(), &AlgInt::omega(&d), &d).unwrap();
        assert_eq!((c, i.norm()), (1, 1));
        // ((1+sqrt(-23))/2, 2): the norm-2 prime
        let (c, i) = Ideal::from_pair(&AlgInt::new(1, 1, &d), &AlgInt::from_int(2), &d).unwrap();
        assert_eq!((c, i.norm()), (1, 2));
        assert_eq!(i.b(), 1);
        assert!(!is_coprime(&AlgInt::new(1, 1, &d), &AlgInt::from_int(2), &d));
        assert!(is_coprime(&AlgInt::zero(), &AlgInt::one(), &d));
        assert!(Ideal::from_pair(&AlgInt::zero(), &AlgInt::zero(), &d).is_err());
    }

    #[test]
    fn pair_ideal_content() {
        let d = Disc::new(-23).unwrap();
        let (c, i) = Ideal::from_pair(&AlgInt::from_int(6), &AlgInt::from_int(10), &d).unwrap();
        assert_eq!((c, i.norm()), (2, 1));
    }

    #[test]
    fn ramified_prime_over_two() {
        let d = Disc::new(-20).unwrap();
        // (2, 1 + sqrt(-5)) where 1 + sqrt(-5) = (2 + sqrt(-20))/2
        let (c, i) = Ideal::from_pair(&AlgInt::from_int(2), &AlgInt::new(2, 1, &d), &d).unwrap();
        assert_eq!((c, i.norm()), (1, 2));
        // its minimal vectors are +-2, norm 4: not principal
        let mv = i.min_vector(&d);
        assert_eq!(mv.norm(&d), 4);
        assert_eq!(mv, AlgInt::from_int(2));
        assert!(!i.is_principal(&d));
        // (2, sqrt(-5)) on the other hand is the whole order
        let (c, i) = Ideal::from_pair(&AlgInt::from_int(2), &AlgInt::new(0, 1, &d), &d).unwrap();
        assert_eq!((c, i.norm()), (1, 1));
    }

    #[test]
    fn min_vector_units() {
        for dd in [-3, -4, -7, -20] {
            let d = Disc::new(dd).unwrap();
            assert_eq!(Ideal::unit(&d).min_vector(&d), AlgInt::one());
            // principal ideal (5): scaled lattice keeps minimum at the generator
            let (content, prim) =
                Ideal::from_pair(&AlgInt::from_int(5), &AlgInt::from_int(5), &d).unwrap();
            assert_eq!(content, 5);
            assert!(prim.is_unit());
        }
    }

    #[test]
    fn splitting_examples() {
        let d23 = Disc::new(-23).unwrap();
        let (s, ps) = prime_splitting(2, &d23);
        assert_eq!(s, Splitting::Split);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0].norm(), 2);
        let (s, ps) = prime_splitting(23, &d23);
        assert_eq!(s, Splitting::Ramified);
        assert_eq!(ps.len(), 1);
        let d4 = Disc::new(-4).unwrap();
        let (s, ps) = prime_splitting(3, &d4);
        assert_eq!(s, Splitting::Inert);
        assert!(ps.is_empty());
    }

    #[test]
    fn class_numbers() {
        for (dd, h) in [
            (-3i64, 1usize),
            (-4, 1),
            (-23, 3),
            (-20, 2),
            (-132, 4),
            (-388, 4),
        ] {
            let d = Disc::new(dd).unwrap();
            assert_eq!(class_number(&d), h, "class number of {dd}");
        }
    }

    #[test]
    fn equivalence_and_minimal_ideals() {
        let d = Disc::new(-20).unwrap();
        let reps = class_representatives(&d);
        assert_eq!(reps.len(), 2);
        let nontrivial = reps.iter().find(|r| !r.is_unit()).unwrap();
        let (n, ideals) = minimal_ideals_in_class(nontrivial, &d);
        assert_eq!(n, 2);
        assert_eq!(ideals.len(), 1);
        assert!(!ideals[0].is_principal(&d));
    }

    #[test]
    fn ideal_product_norms() {
        let d = Disc::new(-23).unwrap();
        let (_, p2) = Ideal::from_pair(&AlgInt::new(1, 1, &d), &AlgInt::from_int(2), &d).unwrap();
        let (c, sq) = p2.mul(&p2.conj(&d), &d);
        // p2 * conj(p2) = (2)
        assert_eq!(c, 2);
        assert!(sq.is_unit());
    }
}
