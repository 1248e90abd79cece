//! Polynomial rings `F_p[x_1..x_n]` and their elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, PrimeField, MAX_VARS};

/// A polynomial ring over `F_p` with named variables and a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::Usage(format!(
                "a ring needs between 1 and {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Usage(format!("variable `{v}` declared twice")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block == 0 || block >= vars.len() {
                return Err(Error::Usage(format!(
                    "elimination block {block} must lie strictly between 0 and {}",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with a trailing variable appended.
    pub fn with_extra_var(&self, name: &str) -> Result<Arc<Ring>> {
        if self.var_index(name).is_some() {
            return Err(Error::Usage(format!(
                "homogenizing variable `{name}` collides with an existing variable"
            )));
        }
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Ring::new(self.field.characteristic() as u64, &vars, self.order)
    }

    /// The same ring with its last variable dropped.
    pub fn without_last_var(&self) -> Result<Arc<Ring>> {
        Ring::new(
            self.field.characteristic() as u64,
            &self.vars[..self.vars.len() - 1],
            self.order,
        )
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `Ok(())` when both rings agree.
pub fn check_same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "F_{}[{}] vs F_{}[{}]",
            a.characteristic(),
            a.vars.join(","),
            b.characteristic(),
            b.vars.join(",")
        )))
    }
}

/// The value of a gauge: either `-inf` (for zero) or a natural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gauge {
    NegInfinity,
    Finite(u32),
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::NegInfinity => f.write_str("-inf"),
            Gauge::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial as a strictly descending list of terms with nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.arity()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.arity(), index, 1), 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: i64) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity differs from ring");
        let c = ring.field.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let k = ring.field;
        let raw = terms
            .into_iter()
            .map(|(m, c)| {
                assert_eq!(m.arity(), ring.arity(), "monomial arity differs from ring");
                (m, k.reduce(c))
            })
            .collect();
        Polynomial::from_raw(ring, raw)
    }

    /// Canonicalises residues in `[0, p)` attached to arbitrary monomials.
    pub(crate) fn from_raw(ring: &Arc<Ring>, mut raw: Vec<(Monomial, u32)>) -> Self {
        let order = ring.order;
        let k = ring.field;
        raw.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == m => last.1 = k.add(last.1, c),
                _ => {
                    if let Some(last) = terms.last() {
                        if last.1 == 0 {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some(last) = terms.last() {
            if last.1 == 0 {
                terms.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// The filtration level for the box filtration `R_d = span{x^a : a_i <= d}`.
    pub fn gauge(&self) -> Gauge {
        self.terms
            .iter()
            .map(|t| t.0.max_exponent())
            .max()
            .map_or(Gauge::NegInfinity, Gauge::Finite)
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let k = self.ring.field;
        if c.is_multiple_of(k.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, k.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let k = self.ring.field;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), k.mul(a, c))).collect(),
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let k = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: u32| if negate { k.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.compare(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(*a);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0, sign(b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(a.1, sign(b.1));
                    if c != 0 {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|&(m, c)| (m, sign(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let k = self.ring.field;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(a, ca) in &self.terms {
            for &(b, cb) in &other.terms {
                raw.push((a.mul(&b), k.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_raw(&self.ring, raw))
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^(p^e)`: in characteristic `p` this scales every exponent by `p^e`
    /// and fixes the coefficients (`c^p = c` in `F_p`).
    pub fn frobenius_pow(&self, e: u32) -> Result<Polynomial> {
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::Usage(format!("p^{e} overflows")))?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            let m = m
                .scale_exponents(q)
                .ok_or_else(|| Error::Usage(format!("exponent overflow computing a {q}-th power")))?;
            terms.push((m, c));
        }
        // Scaling exponents by q preserves grevlex, lex and block orders.
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let k = self.ring.field;
        let raw = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(index) > 0)
            .map(|&(m, c)| {
                let e = m.exponent(index);
                (m.with_exponent(index, e - 1), k.mul(c, k.reduce(e as i64)))
            })
            .filter(|t| t.1 != 0)
            .collect();
        Polynomial::from_raw(&self.ring, raw)
    }

    /// Re-expresses the polynomial in another ring of the same arity and characteristic.
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.arity() != self.ring.arity() || ring.characteristic() != self.ring.characteristic()
        {
            return Err(Error::RingMismatch("cannot transport polynomial".into()));
        }
        Ok(Polynomial::from_raw(ring, self.terms.clone()))
    }

    /// Homogenises with respect to a new trailing variable.
    pub fn homogenize_into(&self, ring: &Arc<Ring>) -> Polynomial {
        let d = self.degree().unwrap_or(0);
        let raw = self
            .terms
            .iter()
            .map(|&(m, c)| (m.extend(d - m.degree()), c))
            .collect();
        Polynomial::from_raw(ring, raw)
    }

    /// Sets the last variable to 1 and moves into `ring` (one variable fewer).
    pub fn dehomogenize_into(&self, ring: &Arc<Ring>) -> Polynomial {
        let raw = self.terms.iter().map(|&(m, c)| (m.truncate_last(), c)).collect();
        Polynomial::from_raw(ring, raw)
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map_or(0, |t| t.1)
    }
}

/// Ring operations exposed through a single entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Multiply `f` by the constant term of `g`.
    Scale,
}

pub fn poly_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
        ArithOp::Scale => {
            check_same_ring(&f.ring, &g.ring)?;
            if g.terms.iter().any(|t| !t.0.is_one()) {
                return Err(Error::Usage("scale expects a constant".into()));
            }
            Ok(f.scale(g.terms.first().map_or(0, |t| t.1)))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

pub(crate) fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let k = self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let c = k.signed(*c);
            let (neg, mag) = (c < 0, c.unsigned_abs());
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(&self.ring, m);
            match (mag, mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(&mono)?,
                (_, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
