//! Buchberger's algorithm over free modules `R^r`.
//!
//! Elements are sparse vectors of terms `c * m * e_pos` kept in descending
//! term-over-position order (monomial first, then lower position index is
//! larger). An ideal is the rank-one case. When lift tracking is enabled each
//! basis element carries its expression in terms of the input generators,
//! and every S-pair that reduces to zero yields a syzygy on those inputs.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicI64, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub pos: u32,
    pub coeff: u32,
}

/// A module element with terms in strictly descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// `e_pos` scaled by `coeff`.
    pub fn unit(arity: usize, pos: u32, coeff: u32) -> Vector {
        Vector {
            terms: vec![Term {
                mon: Monomial::one(arity),
                pos,
                coeff,
            }],
        }
    }
}

/// Coefficient field plus monomial order: everything needed to do arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Ctx {
    pub field: PrimeField,
    pub order: MonomialOrder,
}

impl Ctx {
    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order
            .compare(&a.mon, &b.mon)
            .then_with(|| b.pos.cmp(&a.pos))
    }

    /// Sorts and combines arbitrary terms.
    pub fn canon(&self, mut raw: Vec<Term>) -> Vector {
        raw.sort_unstable_by(|a, b| self.cmp(b, a));
        let k = self.field;
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.mon == t.mon && last.pos == t.pos => {
                    last.coeff = k.add(last.coeff, t.coeff);
                }
                _ => {
                    if out.last().is_some_and(|l| l.coeff == 0) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff == 0) {
            out.pop();
        }
        Vector { terms: out }
    }

    pub fn scale(&self, v: &Vector, c: u32) -> Vector {
        if c == 0 {
            return Vector::default();
        }
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    coeff: self.field.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    /// `c * m * v`.
    pub fn mul_term(&self, v: &Vector, c: u32, m: &Monomial) -> Vector {
        if c == 0 {
            return Vector::default();
        }
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    pos: t.pos,
                    coeff: self.field.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    /// `f - c * m * g` over the terms `f[..]`.
    pub fn sub_mul(&self, f: &[Term], c: u32, m: &Monomial, g: &[Term]) -> Vector {
        let k = self.field;
        let negc = k.neg(c);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() && j < g.len() {
            let gt = Term {
                mon: g[j].mon.mul(m),
                pos: g[j].pos,
                coeff: g[j].coeff,
            };
            match self.cmp(&f[i], &gt) {
                Ordering::Greater => {
                    out.push(f[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: k.mul(gt.coeff, negc),
                        ..gt
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = k.add(f[i].coeff, k.mul(gt.coeff, negc));
                    if coeff != 0 {
                        out.push(Term { coeff, ..f[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        for t in &g[j..] {
            out.push(Term {
                mon: t.mon.mul(m),
                pos: t.pos,
                coeff: k.mul(t.coeff, negc),
            });
        }
        Vector { terms: out }
    }

    pub fn sub(&self, f: &Vector, g: &Vector) -> Vector {
        let one = g.terms.first().map(|t| Monomial::one(t.mon.arity()));
        match one {
            None => f.clone(),
            Some(one) => self.sub_mul(&f.terms, 1, &one, &g.terms),
        }
    }

    /// Product of a ring element (rank-one vector, position ignored) with a vector.
    pub fn mul_scalar_poly(&self, poly: &Vector, v: &Vector) -> Vector {
        let mut raw = Vec::with_capacity(poly.terms.len() * v.terms.len());
        for a in &poly.terms {
            for b in &v.terms {
                raw.push(Term {
                    mon: a.mon.mul(&b.mon),
                    pos: b.pos,
                    coeff: self.field.mul(a.coeff, b.coeff),
                });
            }
        }
        self.canon(raw)
    }

    pub fn monic(&self, v: &Vector) -> (Vector, u32) {
        match v.lead() {
            None => (v.clone(), 1),
            Some(t) => {
                let inv = self.field.inv(t.coeff);
                (self.scale(v, inv), inv)
            }
        }
    }
}

/// S-pair selection rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm degree first, ties by smallest lcm in the term order.
    #[default]
    Normal,
    /// Pairs in creation order.
    Fifo,
}

/// Multiplier applied to the largest input degree to obtain the default cap.
pub const DEFAULT_GUARD_FACTOR: i64 = 8;

static CAP_OVERRIDE: AtomicI64 = AtomicI64::new(0);

/// Replaces the default degree cap with an absolute value (`None` restores it).
pub fn set_degree_cap_override(cap: Option<i64>) {
    CAP_OVERRIDE.store(cap.unwrap_or(0), AtomicOrdering::Relaxed);
}

/// The cap applied to a computation whose inputs have maximal degree `max_input`.
pub fn degree_cap_for(max_input: i64) -> i64 {
    match CAP_OVERRIDE.load(AtomicOrdering::Relaxed) {
        0 => DEFAULT_GUARD_FACTOR * max_input.max(1),
        c => c,
    }
}

struct Elem {
    v: Vector,
    lift: Vector,
    lead: Monomial,
    pos: u32,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i64,
    seq: usize,
}

pub(crate) struct Engine {
    ctx: Ctx,
    arity: usize,
    twists: Vec<i64>,
    basis: Vec<Elem>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    seq: usize,
    track: bool,
    product_criterion: bool,
    strategy: PairStrategy,
    cap: Option<i64>,
    syzygies: Vec<Vector>,
}

impl Engine {
    /// `twists[k]` is the degree of the basis vector `e_k` of the ambient module.
    pub fn new(ctx: Ctx, arity: usize, twists: Vec<i64>) -> Self {
        let product_criterion = twists.len() == 1;
        Engine {
            ctx,
            arity,
            twists,
            basis: Vec::new(),
            pairs: Vec::new(),
            pending: HashSet::new(),
            seq: 0,
            track: false,
            product_criterion,
            strategy: PairStrategy::Normal,
            cap: None,
            syzygies: Vec::new(),
        }
    }

    pub fn tracking(mut self, on: bool) -> Self {
        self.track = on;
        self
    }

    pub fn strategy(mut self, s: PairStrategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn cap(mut self, cap: Option<i64>) -> Self {
        self.cap = cap;
        self
    }

    /// Inserts a generator (with its lift, ignored unless tracking) without
    /// running the pair loop.
    pub fn push(&mut self, v: Vector, lift: Vector) {
        if v.is_zero() {
            if self.track && !lift.is_zero() {
                self.syzygies.push(lift);
            }
            return;
        }
        let (v, inv) = self.ctx.monic(&v);
        let lift = if self.track {
            self.ctx.scale(&lift, inv)
        } else {
            Vector::default()
        };
        let lead = v.terms[0];
        let new = self.basis.len();
        for (i, e) in self.basis.iter().enumerate() {
            if e.pos != lead.pos {
                continue;
            }
            if self.product_criterion && e.lead.is_coprime(&lead.mon) {
                if self.track {
                    // Koszul relation g_new * e_i - g_i * e_new.
                    let a = self.ctx.mul_scalar_poly(&v, &e.lift);
                    let b = self.ctx.mul_scalar_poly(&e.v, &lift);
                    let s = self.ctx.sub(&a, &b);
                    if !s.is_zero() {
                        self.syzygies.push(s);
                    }
                }
                continue;
            }
            let lcm = e.lead.lcm(&lead.mon);
            let deg = lcm.degree() as i64 + self.twists[lead.pos as usize];
            self.pairs.push(Pair {
                i,
                j: new,
                lcm,
                deg,
                seq: self.seq,
            });
            self.seq += 1;
            self.pending.insert((i, new));
        }
        self.basis.push(Elem {
            v,
            lift,
            lead: lead.mon,
            pos: lead.pos,
        });
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ctx.order;
        let best = match self.strategy {
            PairStrategy::Normal => {
                let mut best = 0;
                for k in 1..self.pairs.len() {
                    let (a, b) = (&self.pairs[k], &self.pairs[best]);
                    let ord = a
                        .deg
                        .cmp(&b.deg)
                        .then_with(|| order.compare(&a.lcm, &b.lcm))
                        .then_with(|| a.seq.cmp(&b.seq));
                    if ord == Ordering::Less {
                        best = k;
                    }
                }
                best
            }
            PairStrategy::Fifo => {
                let mut best = 0;
                for k in 1..self.pairs.len() {
                    if self.pairs[k].seq < self.pairs[best].seq {
                        best = k;
                    }
                }
                best
            }
        };
        let p = self.pairs.swap_remove(best);
        self.pending.remove(&(p.i, p.j));
        Some(p)
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pending.contains(&key)
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        let pos = self.basis[p.i].pos;
        self.basis.iter().enumerate().any(|(k, e)| {
            k != p.i
                && k != p.j
                && e.pos == pos
                && e.lead.divides(&p.lcm)
                && !self.is_pending(p.i, k)
                && !self.is_pending(p.j, k)
        })
    }

    /// Runs the pair loop until the basis is a Gröbner basis.
    pub fn complete(&mut self) -> Result<()> {
        while let Some(p) = self.next_pair() {
            if let Some(cap) = self.cap {
                if p.deg > cap {
                    return Err(Error::DegreeGuard {
                        degree: p.deg,
                        cap,
                        context: None,
                    });
                }
            }
            if self.chain_criterion(&p) {
                continue;
            }
            let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
            let mi = p.lcm.div(&gi.lead).expect("lcm divisible");
            let mj = p.lcm.div(&gj.lead).expect("lcm divisible");
            let s = {
                let a = self.ctx.mul_term(&gi.v, 1, &mi);
                self.ctx.sub_mul(&a.terms, 1, &mj, &gj.v.terms)
            };
            let lift = if self.track {
                let a = self.ctx.mul_term(&gi.lift, 1, &mi);
                self.ctx.sub_mul(&a.terms, 1, &mj, &gj.lift.terms)
            } else {
                Vector::default()
            };
            let (r, lift) = self.reduce_tracked(s, lift);
            self.push(r, lift);
        }
        Ok(())
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.basis
            .iter()
            .position(|e| e.pos == t.pos && e.lead.divides(&t.mon))
    }

    /// Full reduction of `v` against the current basis.
    pub fn reduce(&self, v: Vector) -> Vector {
        self.reduce_with(v, Vector::default(), false).0
    }

    fn reduce_tracked(&self, v: Vector, lift: Vector) -> (Vector, Vector) {
        self.reduce_with(v, lift, self.track)
    }

    fn reduce_with(&self, v: Vector, mut lift: Vector, track: bool) -> (Vector, Vector) {
        let mut rem: Vec<Term> = Vec::new();
        let mut cur = v;
        let mut off = 0;
        while off < cur.terms.len() {
            let t = cur.terms[off];
            match self.find_reducer(&t) {
                Some(k) => {
                    let e = &self.basis[k];
                    let m = t.mon.div(&e.lead).expect("divisible");
                    cur = self.ctx.sub_mul(&cur.terms[off..], t.coeff, &m, &e.v.terms);
                    off = 0;
                    if track {
                        lift = self.ctx.sub_mul(&lift.terms, t.coeff, &m, &e.lift.terms);
                    }
                }
                None => {
                    rem.push(t);
                    off += 1;
                }
            }
        }
        (Vector { terms: rem }, lift)
    }

    /// Syzygies on the inputs collected so far (tracking mode).
    pub fn take_syzygies(&mut self) -> Vec<Vector> {
        std::mem::take(&mut self.syzygies)
    }

    /// The reduced Gröbner basis, ascending by lead term.
    pub fn reduced_basis(&self) -> Vec<Vector> {
        let mut keep: Vec<usize> = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            let redundant = self.basis.iter().enumerate().any(|(k, o)| {
                k != i
                    && o.pos == e.pos
                    && o.lead.divides(&e.lead)
                    && (o.lead != e.lead || k < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut sub = Engine::new(self.ctx, self.arity, self.twists.clone());
        let mut out = Vec::with_capacity(keep.len());
        for &i in &keep {
            sub.basis = keep
                .iter()
                .filter(|&&k| k != i)
                .map(|&k| Elem {
                    v: self.basis[k].v.clone(),
                    lift: Vector::default(),
                    lead: self.basis[k].lead,
                    pos: self.basis[k].pos,
                })
                .collect();
            let e = &self.basis[i];
            let lead = e.v.terms[0];
            let tail = sub.reduce(Vector {
                terms: e.v.terms[1..].to_vec(),
            });
            let mut terms = Vec::with_capacity(tail.terms.len() + 1);
            terms.push(lead);
            terms.extend(tail.terms);
            out.push(Vector { terms });
        }
        out.sort_by(|a, b| self.ctx.cmp(&a.terms[0], &b.terms[0]));
        out
    }
}

/// Division of `v` by an arbitrary list of reducers (not necessarily a basis).
pub(crate) fn divide(ctx: Ctx, arity: usize, v: Vector, reducers: &[Vector]) -> Vector {
    let rank = reducers
        .iter()
        .chain(std::iter::once(&v))
        .flat_map(|r| r.terms.iter().map(|t| t.pos as usize + 1))
        .max()
        .unwrap_or(1);
    let mut e = Engine::new(ctx, arity, vec![0; rank]);
    for r in reducers {
        if r.is_zero() {
            continue;
        }
        let (m, _) = ctx.monic(r);
        let lead = m.terms[0];
        e.basis.push(Elem {
            v: m,
            lift: Vector::default(),
            lead: lead.mon,
            pos: lead.pos,
        });
    }
    e.reduce(v)
}

/// Gröbner basis of a submodule with every generator's lift tracked;
/// returns the syzygies on the generators (not pruned).
pub(crate) fn syzygy_generators(
    ctx: Ctx,
    arity: usize,
    twists: &[i64],
    columns: &[Vector],
    strategy: PairStrategy,
) -> Result<Vec<Vector>> {
    let col_degs: Vec<i64> = columns
        .iter()
        .filter_map(|c| {
            c.lead()
                .map(|t| t.mon.degree() as i64 + twists[t.pos as usize])
        })
        .collect();
    let cap = degree_cap_for(col_degs.iter().copied().max().unwrap_or(0));
    let mut e = Engine::new(ctx, arity, twists.to_vec())
        .tracking(true)
        .strategy(strategy)
        .cap(Some(cap));
    for (c, col) in columns.iter().enumerate() {
        e.push(col.clone(), Vector::unit(arity, c as u32, 1));
    }
    e.complete()?;
    let mut syz = e.take_syzygies();
    syz.retain(|s| !s.is_zero());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in syz {
        let (m, _) = ctx.monic(&s);
        if seen.insert(m.terms.clone()) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Homogeneous degree of a vector whose lead term sits at `pos` with `twists[pos]`.
pub(crate) fn homogeneous_degree(v: &Vector, twists: &[i64]) -> Option<i64> {
    v.lead()
        .map(|t| t.mon.degree() as i64 + twists[t.pos as usize])
}

/// Whether every term of `v` has the same weighted degree.
pub(crate) fn is_homogeneous(v: &Vector, twists: &[i64]) -> bool {
    match homogeneous_degree(v, twists) {
        None => true,
        Some(d) => v
            .terms
            .iter()
            .all(|t| t.mon.degree() as i64 + twists[t.pos as usize] == d),
    }
}

/// A minimal generating subset of a graded submodule (graded Nakayama),
/// modulo the submodule spanned by `background`.
///
/// Generators are visited in ascending degree; one is kept exactly when it
/// does not lie in the span of the background plus those kept before it.
pub(crate) fn prune_generators(
    ctx: Ctx,
    arity: usize,
    twists: &[i64],
    gens: Vec<Vector>,
    background: &[Vector],
) -> Result<Vec<Vector>> {
    let mut order: Vec<(i64, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (homogeneous_degree(g, twists).unwrap(), i))
        .collect();
    order.sort();
    let max_deg = order.last().map_or(0, |x| x.0).max(
        background
            .iter()
            .filter_map(|b| homogeneous_degree(b, twists))
            .max()
            .unwrap_or(0),
    );
    let mut e = Engine::new(ctx, arity, twists.to_vec()).cap(Some(degree_cap_for(max_deg)));
    for b in background {
        e.push(b.clone(), Vector::default());
    }
    e.complete()?;
    let mut kept = Vec::new();
    for (_, i) in order {
        let r = e.reduce(gens[i].clone());
        if r.is_zero() {
            continue;
        }
        kept.push(gens[i].clone());
        e.push(r, Vector::default());
        e.complete()?;
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> Ctx {
        Ctx {
            field: PrimeField::new(p).unwrap(),
            order: MonomialOrder::Grevlex,
        }
    }

    fn term(e: &[u32], pos: u32, c: u32) -> Term {
        Term {
            mon: Monomial::new(e).unwrap(),
            pos,
            coeff: c,
        }
    }

    #[test]
    fn canon_combines_and_sorts() {
        let c = ctx(5);
        let v = c.canon(vec![
            term(&[1, 0], 0, 2),
            term(&[0, 2], 0, 1),
            term(&[1, 0], 0, 3),
            term(&[1, 0], 1, 1),
        ]);
        assert_eq!(v.terms, vec![term(&[0, 2], 0, 1), term(&[1, 0], 1, 1)]);
    }

    #[test]
    fn top_order_breaks_ties_by_ascending_index() {
        let c = ctx(3);
        assert_eq!(
            c.cmp(&term(&[1, 0], 0, 1), &term(&[1, 0], 1, 1)),
            Ordering::Greater
        );
        assert_eq!(
            c.cmp(&term(&[1, 0], 1, 1), &term(&[0, 1], 0, 1)),
            Ordering::Greater
        );
    }

    #[test]
    fn koszul_syzygy_of_regular_pair() {
        let c = ctx(7);
        let x = Vector { terms: vec![term(&[1, 0], 0, 1)] };
        let y = Vector { terms: vec![term(&[0, 1], 0, 1)] };
        let syz = syzygy_generators(c, 2, &[0], &[x, y], PairStrategy::Normal).unwrap();
        assert_eq!(syz.len(), 1);
        // monic form of x e_1 - y e_0
        assert_eq!(syz[0].terms, vec![term(&[1, 0], 1, 1), term(&[0, 1], 0, 6)]);
    }

    #[test]
    fn degree_guard_aborts() {
        let c = ctx(2);
        set_degree_cap_override(None);
        let mut e = Engine::new(c, 2, vec![0]).cap(Some(1));
        e.push(Vector { terms: vec![term(&[1, 0], 0, 1), term(&[0, 1], 0, 1)] }, Vector::default());
        e.push(Vector { terms: vec![term(&[1, 1], 0, 1)] }, Vector::default());
        assert!(matches!(e.complete(), Err(Error::DegreeGuard { .. })));
    }
}
