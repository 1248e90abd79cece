//! Ideals and the ideal-level operations built on the Buchberger engine.

use std::sync::{Arc, OnceLock};

use super::engine::{
    degree_cap_for, divide, prune_generators, syzygy_generators, Ctx, Engine, PairStrategy, Term,
    Vector,
};
use crate::error::{Error, Result};
use crate::ring::{check_same_ring, Monomial, Polynomial, Ring};

pub(crate) fn ctx_of(ring: &Ring) -> Ctx {
    Ctx {
        field: ring.field(),
        order: ring.order(),
    }
}

pub(crate) fn poly_to_vec(f: &Polynomial) -> Vector {
    Vector {
        terms: f
            .terms()
            .iter()
            .map(|&(mon, coeff)| Term { mon, pos: 0, coeff })
            .collect(),
    }
}

pub(crate) fn vec_to_poly(ring: &Arc<Ring>, v: &Vector) -> Polynomial {
    debug_assert!(v.terms.iter().all(|t| t.pos == 0));
    Polynomial::from_sorted(ring, v.terms.iter().map(|t| (t.mon, t.coeff)).collect())
}

/// An ideal given by generators, with a lazily computed reduced Gröbner basis.
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            gb,
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.generators.iter()).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same_ring(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn max_degree(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// The reduced Gröbner basis (cached after the first call).
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let gb = if self.generators.is_empty() {
            Vec::new()
        } else {
            buchberger_with(&self.generators, PairStrategy::Normal)?
        };
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Lead monomials of the reduced Gröbner basis.
    pub fn lead_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner_basis()?
            .iter()
            .filter_map(|g| g.lead_monomial().copied())
            .collect())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        ideal_membership(f, self)
    }

    /// Whether both ideals are equal (compared through reduced bases).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        check_same_ring(&self.ring, &other.ring)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (f)`.
    pub fn add_generator(&self, f: &Polynomial) -> Result<Ideal> {
        check_same_ring(&self.ring, f.ring())?;
        let mut gens = self.generators.clone();
        gens.push(f.clone());
        Ideal::new(&self.ring, gens)
    }
}

/// Remainder of multivariate division of `f` by the list `g`.
pub fn normal_form(f: &Polynomial, g: &[Polynomial]) -> Result<Polynomial> {
    if g.is_empty() {
        return Err(Error::Usage("normal form against an empty list".into()));
    }
    for h in g {
        check_same_ring(f.ring(), h.ring())?;
    }
    let ring = f.ring();
    let reducers: Vec<Vector> = g.iter().map(poly_to_vec).collect();
    let r = divide(ctx_of(ring), ring.arity(), poly_to_vec(f), &reducers);
    Ok(vec_to_poly(ring, &r))
}

/// The reduced Gröbner basis of the ideal generated by `gens`, ascending by lead term.
pub fn buchberger(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    buchberger_with(gens, PairStrategy::Normal)
}

pub fn buchberger_with(gens: &[Polynomial], strategy: PairStrategy) -> Result<Vec<Polynomial>> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::Usage("Gröbner basis of an empty generator list".into()))?
        .ring()
        .clone();
    for g in gens {
        check_same_ring(&ring, g.ring())?;
    }
    if gens.iter().all(Polynomial::is_zero) {
        return Err(Error::Usage("Gröbner basis of the zero ideal".into()));
    }
    let max_deg = gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let mut e = Engine::new(ctx_of(&ring), ring.arity(), vec![0])
        .strategy(strategy)
        .cap(Some(degree_cap_for(max_deg as i64)));
    for g in gens {
        e.push(poly_to_vec(g), Vector::default());
    }
    e.complete()?;
    Ok(e
        .reduced_basis()
        .iter()
        .map(|v| vec_to_poly(&ring, v))
        .collect())
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    check_same_ring(f.ring(), ideal.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    let gb = ideal.groebner_basis()?;
    if gb.is_empty() {
        return Ok(false);
    }
    Ok(normal_form(f, gb)?.is_zero())
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators of `I`.
pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let gens = ideal
        .generators
        .iter()
        .map(|g| g.frobenius_pow(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ideal.ring, gens)
}

/// Syzygies of a list of ring elements, as vectors in `R^len`.
pub(crate) fn poly_syzygies(ring: &Arc<Ring>, elems: &[Polynomial]) -> Result<Vec<Vector>> {
    let cols: Vec<Vector> = elems.iter().map(poly_to_vec).collect();
    syzygy_generators(ctx_of(ring), ring.arity(), &[0], &cols, PairStrategy::Normal)
}

/// Entry `pos` of a syzygy vector as a polynomial.
pub(crate) fn coordinate(ring: &Arc<Ring>, v: &Vector, pos: u32) -> Polynomial {
    let terms: Vec<(Monomial, u32)> = v
        .terms
        .iter()
        .filter(|t| t.pos == pos)
        .map(|t| (t.mon, t.coeff))
        .collect();
    Polynomial::from_sorted(ring, terms)
}

/// Tidies a generator list: minimal generators when homogeneous, otherwise the
/// reduced Gröbner basis.
fn tidy(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal> {
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ideal::new(ring, gens);
    }
    if let Some(u) = gens.iter().find(|g| g.is_unit()) {
        return Ideal::new(ring, vec![u.monic()]);
    }
    if gens.iter().all(Polynomial::is_homogeneous) {
        let pruned = prune_generators(
            ctx_of(ring),
            ring.arity(),
            &[0],
            gens.iter().map(poly_to_vec).collect(),
            &[],
        )?;
        let mut out: Vec<Polynomial> = pruned.iter().map(|v| vec_to_poly(ring, v).monic()).collect();
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| ring.order().compare(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()))
        });
        Ideal::new(ring, out)
    } else {
        let gb = buchberger(&gens)?;
        Ideal::new(ring, gb)
    }
}

/// `(I : f)`: first coordinates of the syzygies of `[f, g_1, ..., g_m]`.
pub fn colon_element(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    check_same_ring(ideal.ring(), f.ring())?;
    if f.is_zero() {
        return Err(Error::Usage("colon by the zero element".into()));
    }
    let ring = ideal.ring();
    if ideal.is_zero() {
        return Ideal::new(ring, Vec::new());
    }
    let mut elems = vec![f.clone()];
    elems.extend(ideal.generators.iter().cloned());
    let syz = poly_syzygies(ring, &elems)?;
    let gens = syz.iter().map(|s| coordinate(ring, s, 0)).collect();
    tidy(ring, gens)
}

/// `I ∩ J`, read off the syzygies of `[a_1..a_r, b_1..b_s]`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check_same_ring(a.ring(), b.ring())?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ideal::new(ring, Vec::new());
    }
    let r = a.generators.len();
    let mut elems = a.generators.clone();
    elems.extend(b.generators.iter().cloned());
    let syz = poly_syzygies(ring, &elems)?;
    let mut gens = Vec::with_capacity(syz.len());
    for s in &syz {
        let mut acc = Polynomial::zero(ring);
        for (i, g) in a.generators.iter().enumerate() {
            let c = coordinate(ring, s, i as u32);
            if !c.is_zero() {
                acc = &acc + &(&c * g);
            }
        }
        debug_assert!(r > 0);
        gens.push(acc);
    }
    tidy(ring, gens)
}

/// `(I : J) = {r : rJ ⊆ I}` as the intersection of `(I : f)` over the generators of `J`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same_ring(i.ring(), j.ring())?;
    if j.is_zero() {
        return Err(Error::Usage("colon by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for f in &j.generators {
        let part = colon_element(i, f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => {
                if is_unit_ideal(&prev) {
                    part
                } else if is_unit_ideal(&part) {
                    prev
                } else {
                    intersect(&prev, &part)?
                }
            }
        });
    }
    Ok(acc.expect("J has a generator"))
}

fn is_unit_ideal(i: &Ideal) -> bool {
    i.generators.iter().any(Polynomial::is_unit)
}

/// Homogenizes every generator with a new trailing variable `name`.
pub fn homogenize(ideal: &Ideal, name: &str) -> Result<Ideal> {
    let ring = ideal.ring.with_extra_var(name)?;
    let gens = ideal
        .generators
        .iter()
        .map(|g| g.homogenize_into(&ring))
        .collect();
    Ideal::new(&ring, gens)
}

/// Sets the last variable to one and drops it from the ring.
pub fn dehomogenize(ideal: &Ideal) -> Result<Ideal> {
    if ideal.ring.arity() < 2 {
        return Err(Error::Usage("cannot dehomogenize a one-variable ring".into()));
    }
    let ring = ideal.ring.without_last_var()?;
    let gens = ideal
        .generators
        .iter()
        .map(|g| g.dehomogenize_into(&ring).monic())
        .collect();
    Ideal::new(&ring, gens)
}

/// Minimal homogeneous generators of a homogeneous ideal, ascending by degree.
pub fn minimal_generators(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    if !ideal.is_homogeneous() {
        return Err(Error::Usage("minimal generators need a homogeneous ideal".into()));
    }
    Ok(tidy(&ideal.ring, ideal.generators.clone())?.generators)
}

/// S-polynomial of two ring elements.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_same_ring(f.ring(), g.ring())?;
    let (a, b) = match (f.lead_monomial(), g.lead_monomial()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(Error::Usage("S-polynomial of zero".into())),
    };
    let k = f.ring().field();
    let l = a.lcm(&b);
    let fa = f.mul_term(&l.div(&a).unwrap(), k.inv(f.lead_coeff().unwrap()));
    let gb = g.mul_term(&l.div(&b).unwrap(), k.inv(g.lead_coeff().unwrap()));
    Ok(&fa - &gb)
}
