//! Elements of the order and of its quotient field.
//!
//! An algebraic integer is stored as `(a + b sqrt(d)) / 2` with the parity
//! constraint `a = b d (mod 2)`, which covers both maximal-order shapes
//! without case splits in the arithmetic kernels.

use super::disc::Disc;
use crate::exact::{rat, sign_rat, Rat};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgInt {
    a: i128,
    b: i128,
}

impl AlgInt {
    /// Builds `(a + b sqrt(d)) / 2`; panics if the parity invariant fails.
    pub fn new(a: i128, b: i128, d: &Disc) -> AlgInt {
        assert!(
            (a - b * d.d() as i128).rem_euclid(2) == 0,
            "parity violation: ({a} + {b} sqrt({})) / 2 is not integral",
            d.d()
        );
        AlgInt { a, b }
    }

    pub fn zero() -> AlgInt {
        AlgInt { a: 0, b: 0 }
    }

    pub fn one() -> AlgInt {
        AlgInt { a: 2, b: 0 }
    }

    pub fn from_int(n: i128) -> AlgInt {
        AlgInt { a: 2 * n, b: 0 }
    }

    /// The basis element omega = (tau + sqrt(d)) / 2.
    pub fn omega(d: &Disc) -> AlgInt {
        AlgInt { a: d.tau(), b: 1 }
    }

    /// sqrt(d) itself.
    pub fn sqrt_disc() -> AlgInt {
        AlgInt { a: 0, b: 2 }
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    /// Coordinates (m, n) with self = m + n omega.
    pub fn coords(&self, d: &Disc) -> (i128, i128) {
        let n = self.b;
        let m = (self.a - d.tau() * self.b) / 2;
        (m, n)
    }

    pub fn from_coords(m: i128, n: i128, d: &Disc) -> AlgInt {
        AlgInt {
            a: 2 * m + d.tau() * n,
            b: n,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn norm(&self, d: &Disc) -> i128 {
        (self.a * self.a + d.abs() * self.b * self.b) / 4
    }

    /// Twice the real part of `self * conj(other)`; an exact integer.
    pub fn inner2(&self, other: &AlgInt, d: &Disc) -> i128 {
        (self.a * other.a + d.abs() * self.b * other.b) / 2
    }

    pub fn conj(&self) -> AlgInt {
        AlgInt {
            a: self.a,
            b: -self.b,
        }
    }

    pub fn neg(&self) -> AlgInt {
        AlgInt {
            a: -self.a,
            b: -self.b,
        }
    }

    pub fn add(&self, other: &AlgInt) -> AlgInt {
        AlgInt {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    pub fn sub(&self, other: &AlgInt) -> AlgInt {
        AlgInt {
            a: self.a - other.a,
            b: self.b - other.b,
        }
    }

    pub fn mul(&self, other: &AlgInt, d: &Disc) -> AlgInt {
        AlgInt {
            a: (self.a * other.a + self.b * other.b * d.d() as i128) / 2,
            b: (self.a * other.b + self.b * other.a) / 2,
        }
    }

    pub fn mul_int(&self, n: i128) -> AlgInt {
        AlgInt {
            a: self.a * n,
            b: self.b * n,
        }
    }

    /// Exact division; None when `other` does not divide `self` in the order.
    pub fn div_exact(&self, other: &AlgInt, d: &Disc) -> Option<AlgInt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm(d);
        let num = self.mul(&other.conj(), d);
        if num.a % n != 0 || num.b % n != 0 {
            return None;
        }
        let q = AlgInt {
            a: num.a / n,
            b: num.b / n,
        };
        ((q.a - q.b * d.d() as i128).rem_euclid(2) == 0).then_some(q)
    }

    /// Canonical representative among {x, -x}: a > 0, or a = 0 and b >= 0.
    pub fn canonical_sign(&self) -> AlgInt {
        if self.a > 0 || (self.a == 0 && self.b >= 0) {
            *self
        } else {
            self.neg()
        }
    }

    /// Exact planar coordinates (u, v) with self = u + v sqrt(|d|) i.
    pub fn plane(&self) -> (Rat, Rat) {
        (rat(self.a, 2), rat(self.b, 2))
    }

    pub fn to_string_pretty(&self, d: &Disc) -> String {
        if self.b == 0 {
            return format!("{}", self.a / 2);
        }
        let core = if d.is_even() {
            format!("sqrt({})", d.d() / 4)
        } else {
            format!("sqrt({})", d.d())
        };
        let bq = if d.is_even() {
            rat(self.b, 1)
        } else {
            rat(self.b, 2)
        };
        let aq = rat(self.a, 2);
        let mut s = String::new();
        if !aq.is_zero() {
            s.push_str(&format!("{aq}"));
        }
        if sign_rat(&bq) > 0 && !s.is_empty() {
            s.push('+');
        }
        if bq == rat(1, 1) {
            s.push_str(&core);
        } else if bq == rat(-1, 1) {
            s.push('-');
            s.push_str(&core);
        } else {
            s.push_str(&format!("{bq}*{core}"));
        }
        s
    }
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt(D))/2", self.a, self.b)
    }
}

/// An element of the quotient field in lowest terms: `num / den` with
/// den > 0 and no rational prime dividing den together with both
/// coordinates of num.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: AlgInt,
    den: i128,
}

impl FieldElem {
    pub fn new(num: AlgInt, den: i128, d: &Disc) -> FieldElem {
        assert!(den != 0);
        let (num, den) = if den < 0 { (num.neg(), -den) } else { (num, den) };
        // Strip the common factor of den and both coordinates. Odd factors
        // never disturb the parity invariant of the numerator; factors of 2
        // come out only while the halved numerator stays in the order.
        let (mut a, mut b, mut den) = (num.a, num.b, den);
        let mut g = gcd3(a.abs(), b.abs(), den);
        let mut twos = 0u32;
        while g % 2 == 0 {
            g /= 2;
            twos += 1;
        }
        if g > 1 {
            a /= g;
            b /= g;
            den /= g;
        }
        let dd = d.d() as i128;
        while twos > 0 && (a / 2 - (b / 2) * dd).rem_euclid(2) == 0 && a % 2 == 0 && b % 2 == 0 {
            a /= 2;
            b /= 2;
            den /= 2;
            twos -= 1;
        }
        FieldElem {
            num: AlgInt { a, b },
            den,
        }
    }

    pub fn from_int(n: i128) -> FieldElem {
        FieldElem {
            num: AlgInt::from_int(n),
            den: 1,
        }
    }

    pub fn from_algint(x: AlgInt) -> FieldElem {
        FieldElem { num: x, den: 1 }
    }

    /// alpha / beta for order elements, beta nonzero.
    pub fn quotient(alpha: &AlgInt, beta: &AlgInt, d: &Disc) -> FieldElem {
        assert!(!beta.is_zero());
        let num = alpha.mul(&beta.conj(), d);
        FieldElem::new(num, beta.norm(d), d)
    }

    pub fn num(&self) -> AlgInt {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    /// Exact planar coordinates: self = u + v sqrt(|d|) i.
    pub fn plane(&self) -> (Rat, Rat) {
        (rat(self.num.a, 2 * self.den), rat(self.num.b, 2 * self.den))
    }

    /// Squared magnitude as an exact rational.
    pub fn norm_rat(&self, d: &Disc) -> Rat {
        rat(self.num.norm(d), self.den * self.den)
    }

    /// mu * self - lambda, as a field element.
    pub fn mul_sub(&self, mu: &AlgInt, lambda: &AlgInt, d: &Disc) -> FieldElem {
        let num = mu.mul(&self.num, d).sub(&lambda.mul_int(self.den));
        FieldElem::new(num, self.den, d)
    }

    /// Coordinates (x, y) with self = x + y omega, as exact rationals.
    pub fn basis_coords(&self, d: &Disc) -> (Rat, Rat) {
        let y = rat(self.num.b, self.den);
        let x = rat(self.num.a - d.tau() * self.num.b, 2 * self.den);
        (x, y)
    }

    /// Translation of self by the integral element t.
    pub fn add_int_elem(&self, t: &AlgInt, d: &Disc) -> FieldElem {
        FieldElem::new(self.num.add(&t.mul_int(self.den)), self.den, d)
    }

    /// Canonical representative modulo translation by the order: basis
    /// coordinates land in [-1/2, 1/2).
    pub fn reduce_mod_order(&self, d: &Disc) -> FieldElem {
        let (x, y) = self.basis_coords(d);
        let half = rat(1, 2);
        let nx = crate::exact::floor_rat(&(&x + &half));
        let ny = crate::exact::floor_rat(&(&y + &half));
        use num_traits::ToPrimitive;
        let nx = nx.to_i128().expect("translation overflow");
        let ny = ny.to_i128().expect("translation overflow");
        let t = AlgInt::from_coords(-nx, -ny, d);
        self.add_int_elem(&t, d)
    }

    pub fn to_string_pretty(&self, d: &Disc) -> String {
        if self.den == 1 {
            self.num.to_string_pretty(d)
        } else {
            format!("({})/{}", self.num.to_string_pretty(d), self.den)
        }
    }
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.abs()
    }
    gcd(gcd(a, b), c)
}

/// A point of the base plane: `u + v sqrt(|d|) i` with exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub u: Rat,
    pub v: Rat,
}

impl PlanePoint {
    pub fn new(u: Rat, v: Rat) -> PlanePoint {
        PlanePoint { u, v }
    }

    pub fn origin() -> PlanePoint {
        PlanePoint {
            u: Rat::zero(),
            v: Rat::zero(),
        }
    }

    pub fn from_field_elem(z: &FieldElem) -> PlanePoint {
        let (u, v) = z.plane();
        PlanePoint { u, v }
    }

    /// Squared magnitude u^2 + v^2 |d|.
    pub fn norm_sq(&self, d: &Disc) -> Rat {
        &self.u * &self.u + &self.v * &self.v * rat(d.abs(), 1)
    }

    pub fn dist_sq(&self, other: &PlanePoint, d: &Disc) -> Rat {
        let du = &self.u - &other.u;
        let dv = &self.v - &other.v;
        &du * &du + &dv * &dv * rat(d.abs(), 1)
    }

    /// Conversion to a field element; den is scaled so the parity
    /// invariant of the numerator holds.
    pub fn to_field_elem(&self, d: &Disc) -> FieldElem {
        use num_traits::ToPrimitive;
        let du = self.u.denom().to_i128().expect("denominator too large");
        let dv = self.v.denom().to_i128().expect("denominator too large");
        let g = {
            let mut a = du;
            let mut b = dv;
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a.abs()
        };
        let mut den = du / g * dv;
        let mut a = (self.u.numer() * (2 * den / du)).to_i128().unwrap();
        let mut b = (self.v.numer() * (2 * den / dv)).to_i128().unwrap();
        if (a - b * d.d() as i128).rem_euclid(2) != 0 {
            den *= 2;
            a *= 2;
            b *= 2;
        }
        FieldElem::new(AlgInt::new(a, b, d), den, d)
    }
}
