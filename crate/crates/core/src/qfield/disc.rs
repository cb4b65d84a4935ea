//! Fundamental negative discriminants and derived constants of the order.

use std::fmt;

/// A fundamental discriminant `d < 0` of an imaginary quadratic field,
/// together with constants of its maximal order used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Disc {
    d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscError {
    NotNegative(i64),
    BadResidue(i64),
    NotFundamental(i64),
}

impl fmt::Display for DiscError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscError::NotNegative(d) => write!(f, "discriminant {d} is not negative"),
            DiscError::BadResidue(d) => {
                write!(f, "discriminant {d} is not 0 or 1 mod 4")
            }
            DiscError::NotFundamental(d) => write!(f, "discriminant {d} is not fundamental"),
        }
    }
}

impl std::error::Error for DiscError {}

fn is_squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

impl Disc {
    pub fn new(d: i64) -> Result<Disc, DiscError> {
        if d >= 0 {
            return Err(DiscError::NotNegative(d));
        }
        let r = d.rem_euclid(4);
        if r == 1 {
            if !is_squarefree(d) {
                return Err(DiscError::NotFundamental(d));
            }
        } else if r == 0 {
            let m = d / 4;
            let mr = m.rem_euclid(4);
            if !(mr == 2 || mr == 3) || !is_squarefree(m) {
                return Err(DiscError::NotFundamental(d));
            }
        } else {
            return Err(DiscError::BadResidue(d));
        }
        Ok(Disc { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// |d| as a positive integer.
    pub fn abs(&self) -> i128 {
        -(self.d as i128)
    }

    /// 1 when d is odd, 0 when d is even: the trace of the basis element omega.
    pub fn tau(&self) -> i128 {
        (self.d.rem_euclid(2)) as i128
    }

    /// Norm of omega = (tau + sqrt(d)) / 2.
    pub fn omega_norm(&self) -> i128 {
        (self.tau() * self.tau() + self.abs()) / 4
    }

    pub fn is_even(&self) -> bool {
        self.d % 2 == 0
    }

    /// Smallest rational prime dividing d.
    pub fn smallest_prime_factor(&self) -> i128 {
        let n = self.abs();
        let mut p = 2i128;
        while p * p <= n {
            if n % p == 0 {
                return p;
            }
            p += 1;
        }
        n
    }
}

/// All fundamental discriminants d with |d| < limit, in decreasing d
/// (increasing |d|) order.
pub fn fundamental_discs(limit_abs: i64) -> Vec<Disc> {
    let mut out = Vec::new();
    for a in 3..limit_abs {
        if let Ok(d) = Disc::new(-a) {
            out.push(d);
        }
    }
    out
}
