//! Exact scalar kernels: big rationals, integer square roots, and signs of
//! sums of square roots.
//!
//! Every geometric and arithmetic predicate in this crate bottoms out here.
//! Nothing in this module ever rounds; decimal output is rendering only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat_int<T: Into<i128>>(n: T) -> Rat {
    Rat::from_integer(BigInt::from(n.into()))
}

pub fn rat(num: i128, den: i128) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Largest integer `<= x`.
pub fn floor_rat(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Nearest integer to `x`, ties toward `+inf`.
pub fn round_rat(x: &Rat) -> BigInt {
    floor_rat(&(x + Rat::new(BigInt::one(), BigInt::from(2))))
}

pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0);
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128 + 2;
    while x * x > n {
        x = (x + n / x) / 2;
    }
    x
}

pub fn is_square_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt_i128(n);
    (r * r == n).then_some(r)
}

/// Squarefree decomposition `n = s * k^2` by trial division; returns `(s, k)`.
/// Intended for the small radicands of bound formulas, not for cryptographic sizes.
pub fn squarefree_part(n: i128) -> (i128, i128) {
    assert!(n >= 0);
    if n == 0 {
        return (0, 1);
    }
    let mut s = 1i128;
    let mut k = 1i128;
    let mut m = n;
    let mut p = 2i128;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                s *= p;
            }
            for _ in 0..e / 2 {
                k *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s * m, k)
}

/// Sign of `x + y*sqrt(s)` for rational x, y and integer s >= 0.
pub fn sign_lin_surd(x: &Rat, y: &Rat, s: i128) -> i32 {
    debug_assert!(s >= 0);
    if s == 0 || y.is_zero() {
        return sign_rat(x);
    }
    if let Some(r) = is_square_i128(s) {
        return sign_rat(&(x + y * rat_int(r)));
    }
    let sx = sign_rat(x);
    let sy = sign_rat(y);
    if sx == 0 {
        return sy;
    }
    if sx == sy {
        return sx;
    }
    // Opposite signs: compare x^2 against y^2 s.
    let d = x * x - y * y * rat_int(s);
    sx * sign_rat(&d)
}

/// Sign of `sqrt(a) - sqrt(b) - sqrt(c)` for rational a, b, c >= 0.
pub fn sign_sqrt_minus_two(a: &Rat, b: &Rat, c: &Rat) -> i32 {
    debug_assert!(!a.is_negative() && !b.is_negative() && !c.is_negative());
    let t = a - b - c;
    if t.is_negative() {
        return -1;
    }
    // sqrt(a) >= sqrt(b)+sqrt(c)  <=>  t >= 2 sqrt(bc)  (valid since t >= 0)
    let d = &t * &t - rat_int(4) * b * c;
    sign_rat(&d)
}

pub fn sign_rat(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A finite sum of terms `q * sqrt(s)` with rational q and squarefree
/// integer radicands s (s = 1 is the rational part). Exact comparisons
/// resolve by recursive sign-tracked squaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    /// Sorted by radicand, radicands distinct, no zero coefficients.
    terms: Vec<(Rat, i128)>,
}

impl Surd {
    pub fn zero() -> Surd {
        Surd { terms: vec![] }
    }

    pub fn from_rat(q: Rat) -> Surd {
        let mut s = Surd::zero();
        s.push(q, 1);
        s
    }

    pub fn from_int(n: i128) -> Surd {
        Surd::from_rat(rat_int(n))
    }

    /// `q * sqrt(s)` for integer s >= 0.
    pub fn sqrt_int(q: Rat, s: i128) -> Surd {
        assert!(s >= 0);
        if s == 0 {
            return Surd::zero();
        }
        let (s0, k) = squarefree_part(s);
        let mut out = Surd::zero();
        out.push(q * rat_int(k), s0);
        out
    }

    /// `sqrt(q)` for rational q >= 0.
    pub fn sqrt_rat(q: &Rat) -> Surd {
        assert!(!q.is_negative());
        if q.is_zero() {
            return Surd::zero();
        }
        let n = q.numer().to_i128().expect("radicand numerator too large");
        let d = q.denom().to_i128().expect("radicand denominator too large");
        // sqrt(n/d) = sqrt(n d) / d
        Surd::sqrt_int(rat(1, d), n.checked_mul(d).expect("radicand overflow"))
    }

    fn push(&mut self, q: Rat, s: i128) {
        if q.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(_, t)| t.cmp(&s)) {
            Ok(i) => {
                let sum = &self.terms[i].0 + q;
                if sum.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].0 = sum;
                }
            }
            Err(i) => self.terms.insert(i, (q, s)),
        }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        let mut out = self.clone();
        for (q, s) in &other.terms {
            out.push(q.clone(), *s);
        }
        out
    }

    pub fn neg(&self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(q, s)| (-q.clone(), *s)).collect(),
        }
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Surd {
        if c.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(q, s)| (q * c, *s)).collect(),
        }
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (q1, s1) in &self.terms {
            for (q2, s2) in &other.terms {
                let g = s1.gcd(s2);
                let rad = (s1 / g) * (s2 / g);
                out.push(q1 * q2 * rat_int(g), rad);
            }
        }
        out
    }

    pub fn square(&self) -> Surd {
        self.mul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].1 == 1 => Some(self.terms[0].0.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(Rat, i128)] {
        &self.terms
    }

    pub fn sign(&self) -> i32 {
        match self.terms.len() {
            0 => 0,
            1 => sign_rat(&self.terms[0].0),
            _ => {
                // Split on a prime p dividing some radicand: self = A + sqrt(p) B.
                let rad = self.terms.iter().map(|(_, s)| *s).max().unwrap();
                let p = smallest_prime_factor(rad);
                let mut a = Surd::zero();
                let mut b = Surd::zero();
                for (q, s) in &self.terms {
                    if s % p == 0 {
                        b.push(q.clone(), s / p);
                    } else {
                        a.push(q.clone(), *s);
                    }
                }
                let sa = a.sign();
                let sb = b.sign();
                if sa == 0 {
                    return sb;
                }
                if sb == 0 || sa == sb {
                    return sa;
                }
                let d = a.square().sub(&b.square().scale(&rat_int(p)));
                sa * d.sign()
            }
        }
    }

    pub fn cmp_surd(&self, other: &Surd) -> std::cmp::Ordering {
        match self.sub(other).sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn max_surd(a: Surd, b: Surd) -> Surd {
        if a.cmp_surd(&b) == std::cmp::Ordering::Less {
            b
        } else {
            a
        }
    }

    /// Fixed-point evaluation: returns n with |self - n / 10^digits| < #terms * 10^-digits.
    pub fn eval_scaled(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let mut acc = BigInt::zero();
        for (q, s) in &self.terms {
            // floor(sqrt(s) * 10^digits) with error < 1
            let root = (BigInt::from(*s) * &scale * &scale).sqrt();
            let term = q * Rat::from_integer(root);
            acc += round_rat(&term);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let digits = 30u32;
        let n = self.eval_scaled(digits);
        let r = Rat::new(n, BigInt::from(10u32).pow(digits));
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits (display only).
    pub fn decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = sig as u32 + 20;
        let n = self.eval_scaled(digits);
        format_scaled(&n, digits, sig)
    }
}

/// Formats `n / 10^digits` with `sig` significant digits.
pub fn format_scaled(n: &BigInt, digits: u32, sig: usize) -> String {
    if n.is_zero() {
        return "0".to_string();
    }
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    // Decimal exponent: value = 0.s * 10^(len - digits)
    let exp10 = s.len() as i64 - digits as i64;
    if s.len() < sig + 1 {
        s.push_str(&"0".repeat(sig + 1 - s.len()));
    }
    // Round to sig digits.
    let keep: String = s.chars().take(sig).collect();
    let next = s.chars().nth(sig).unwrap().to_digit(10).unwrap();
    let mut mant: Vec<u8> = keep.bytes().map(|b| b - b'0').collect();
    let mut exp10 = exp10;
    if next >= 5 {
        let mut i = mant.len();
        loop {
            if i == 0 {
                mant.insert(0, 1);
                exp10 += 1;
                mant.pop();
                break;
            }
            i -= 1;
            if mant[i] == 9 {
                mant[i] = 0;
            } else {
                mant[i] += 1;
                break;
            }
        }
    }
    let mant_str: String = mant.iter().map(|d| (d + b'0') as char).collect();
    let sign = if neg { "-" } else { "" };
    // Point position relative to mantissa start.
    if exp10 >= 1 && exp10 <= sig as i64 {
        let (int_part, frac_part) = mant_str.split_at(exp10 as usize);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    } else if (-4..=0).contains(&exp10) {
        let zeros = "0".repeat((-exp10) as usize);
        let frac = format!("{zeros}{mant_str}");
        let frac = frac.trim_end_matches('0');
        format!("{sign}0.{frac}")
    } else {
        let head = &mant_str[..1];
        let tail = mant_str[1..].trim_end_matches('0');
        let e = exp10 - 1;
        if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        }
    }
}

fn smallest_prime_factor(n: i128) -> i128 {
    debug_assert!(n > 1);
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3i128;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// Deterministic primes up to `limit` inclusive.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return vec![];
    }
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= limit {
        if sieve[p] {
            let mut q = p * p;
            while q <= limit {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(mut a: i128, mut n: i128) -> i32 {
    assert!(n > 0 && n % 2 == 1);
    a = a.rem_euclid(n);
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        t
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_sign_basic() {
        // sqrt(2) + sqrt(3) - sqrt(10) < 0 since (sqrt2+sqrt3)^2 = 5+2sqrt6 < 10
        let x = Surd::sqrt_int(rat_int(1), 2)
            .add(&Surd::sqrt_int(rat_int(1), 3))
            .sub(&Surd::sqrt_int(rat_int(1), 10));
        assert_eq!(x.sign(), -1);
        // sqrt(2)+sqrt(3) > sqrt(9)
        let y = Surd::sqrt_int(rat_int(1), 2)
            .add(&Surd::sqrt_int(rat_int(1), 3))
            .sub(&Surd::from_int(3));
        assert_eq!(y.sign(), 1);
        // exact zero: sqrt(8) - 2 sqrt(2)
        let z = Surd::sqrt_int(rat_int(1), 8).sub(&Surd::sqrt_int(rat_int(2), 2));
        assert!(z.is_zero());
    }

    #[test]
    fn surd_three_radicands() {
        // sqrt(3) + sqrt(5) - sqrt(2) - sqrt(7) = -0.0918...
        let x = Surd::sqrt_int(rat_int(1), 3)
            .add(&Surd::sqrt_int(rat_int(1), 5))
            .sub(&Surd::sqrt_int(rat_int(1), 2))
            .sub(&Surd::sqrt_int(rat_int(1), 7));
        assert_eq!(x.sign(), -1);
        let y = x.add(&Surd::from_rat(rat(1, 10)));
        assert_eq!(y.sign(), 1);
        assert!((x.to_f64() + 0.0918460884).abs() < 1e-8);
    }

    #[test]
    fn sqrt_comparison_kernels() {
        assert_eq!(sign_sqrt_minus_two(&rat_int(9), &rat_int(1), &rat_int(1)), 1);
        assert_eq!(sign_sqrt_minus_two(&rat_int(4), &rat_int(1), &rat_int(1)), 0);
        assert_eq!(sign_sqrt_minus_two(&rat_int(3), &rat_int(1), &rat_int(1)), -1);
        assert_eq!(sign_lin_surd(&rat_int(-2), &rat_int(1), 5), 1);
        assert_eq!(sign_lin_surd(&rat_int(-3), &rat_int(1), 5), -1);
        assert_eq!(sign_lin_surd(&rat_int(-2), &rat_int(1), 4), 0);
    }

    #[test]
    fn decimal_rendering() {
        let x = Surd::sqrt_int(rat_int(1), 23);
        assert_eq!(x.decimal(12), "4.79583152331");
        assert_eq!(Surd::from_rat(rat(1, 4)).decimal(12), "0.25");
        assert_eq!(Surd::from_int(28).decimal(12), "28");
        assert_eq!(Surd::from_rat(rat(-1, 3)).decimal(5), "-0.33333");
    }

    #[test]
    fn squarefree_decomposition() {
        assert_eq!(squarefree_part(1), (1, 1));
        assert_eq!(squarefree_part(8), (2, 2));
        assert_eq!(squarefree_part(360), (10, 6));
        assert_eq!(squarefree_part(388), (97, 2));
    }

    #[test]
    fn jacobi_symbol() {
        assert_eq!(jacobi(-23, 2 * 2 + 1), jacobi(-23, 5));
        assert_eq!(jacobi(2, 7), 1);
        assert_eq!(jacobi(3, 7), -1);
        assert_eq!(jacobi(14, 7), 0);
        // -23 is a square mod 3? -23 = 1 mod 3, yes.
        assert_eq!(jacobi(-23, 3), 1);
    }

    #[test]
    fn isqrt_and_squares() {
        assert_eq!(isqrt_i128(0), 0);
        assert_eq!(isqrt_i128(15), 3);
        assert_eq!(isqrt_i128(16), 4);
        assert_eq!(is_square_i128(2025), Some(45));
        assert_eq!(is_square_i128(2026), None);
    }
}
