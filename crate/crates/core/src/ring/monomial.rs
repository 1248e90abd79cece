//! Exponent vectors with cached total degree.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 16;

/// A monomial `x^a` in at most [`MAX_VARS`] variables.
///
/// Stored inline so that monomials are `Copy`; `mask` has bit `i` set when
/// the `i`-th exponent is positive and gives a cheap divisibility pre-check.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
    mask: u16,
    arity: u8,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        assert!(arity <= MAX_VARS, "arity {arity} exceeds {MAX_VARS}");
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
            mask: 0,
            arity: arity as u8,
        }
    }

    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() > MAX_VARS {
            return Err(Error::Usage(format!(
                "{} variables exceed the supported maximum of {MAX_VARS}",
                exponents.len()
            )));
        }
        let mut m = Monomial::one(exponents.len());
        for (i, &e) in exponents.iter().enumerate() {
            let e: u16 = e
                .try_into()
                .map_err(|_| Error::Usage(format!("exponent {e} too large")))?;
            m.exps[i] = e;
        }
        m.refresh();
        Ok(m)
    }

    /// The monomial `x_index^exp`.
    pub fn var(arity: usize, index: usize, exp: u32) -> Self {
        assert!(index < arity);
        let mut m = Monomial::one(arity);
        m.exps[index] = exp.try_into().expect("exponent overflow");
        m.refresh();
        m
    }

    fn refresh(&mut self) {
        let mut d = 0u32;
        let mut mask = 0u16;
        for (i, &e) in self.exps[..self.arity as usize].iter().enumerate() {
            d += e as u32;
            if e > 0 {
                mask |= 1 << i;
            }
        }
        self.degree = d;
        self.mask = mask;
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.arity as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Largest single exponent; the gauge of the monomial.
    pub fn max_exponent(&self) -> u32 {
        self.exponents().iter().copied().max().unwrap_or(0) as u32
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = *self;
        for i in 0..self.arity as usize {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.degree = self.degree + other.degree;
        out.mask = self.mask | other.mask;
        out
    }

    /// True when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.degree > other.degree {
            return false;
        }
        self.exps[..self.arity as usize]
            .iter()
            .zip(&other.exps[..self.arity as usize])
            .all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..self.arity as usize {
            out.exps[i] -= other.exps[i];
        }
        out.refresh();
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.arity as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out.refresh();
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.arity as usize {
            out.exps[i] = self.exps[i].min(other.exps[i]);
        }
        out.refresh();
        out
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Every exponent multiplied by `q`; `None` on overflow.
    pub fn scale_exponents(&self, q: u64) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..self.arity as usize {
            let e = (self.exps[i] as u64).checked_mul(q)?;
            out.exps[i] = e.try_into().ok()?;
        }
        out.refresh();
        Some(out)
    }

    /// Same exponents in a ring with one extra trailing variable set to `exp`.
    pub fn extend(&self, exp: u32) -> Monomial {
        let n = self.arity as usize;
        assert!(n < MAX_VARS, "cannot append a variable beyond {MAX_VARS}");
        let mut out = *self;
        out.arity += 1;
        out.exps[n] = exp.try_into().expect("exponent overflow");
        out.refresh();
        out
    }

    /// Drops the last variable.
    pub fn truncate_last(&self) -> Monomial {
        let n = self.arity as usize;
        let mut out = *self;
        out.exps[n - 1] = 0;
        out.arity -= 1;
        out.refresh();
        out
    }

    pub(crate) fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut out = *self;
        out.exps[index] = exp.try_into().expect("exponent overflow");
        out.refresh();
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}
