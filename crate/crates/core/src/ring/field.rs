//! Arithmetic in the prime field `F_p` for machine primes `p < 2^31`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest admissible characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// The prime field `F_p`. Residues are stored as `u32` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::Usage(format!("characteristic {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    ///
    /// Panics on zero; callers only invert lead coefficients.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        self.reduce(t)
    }

    /// Residue printed in the symmetric range `(-p/2, p/2]`.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn element(&self, value: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: self.reduce(value),
            field: *self,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue together with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    field: PrimeField,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        (self.value != 0).then(|| PrimeFieldElement {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }

    pub fn pow(&self, exp: u64) -> Self {
        PrimeFieldElement {
            value: self.field.pow(self.value, exp),
            field: self.field,
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for PrimeFieldElement {
            type Output = PrimeFieldElement;
            fn $m(self, rhs: Self) -> Self {
                assert_eq!(self.field, rhs.field, "mixed characteristics");
                PrimeFieldElement {
                    value: self.field.$m(self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for PrimeFieldElement {
    type Output = PrimeFieldElement;
    fn neg(self) -> Self {
        PrimeFieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}
