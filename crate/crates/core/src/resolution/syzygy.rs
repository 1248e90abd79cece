//! Module Gröbner bases, submodule membership and Schreyer syzygies.

use std::sync::Arc;

use super::free_module::{vector_to_coords, FreeVector, GradedFreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::groebner::engine::{
    degree_cap_for, homogeneous_degree, is_homogeneous, prune_generators, syzygy_generators, Engine,
    PairStrategy, Vector,
};
use crate::groebner::ctx_of;
use crate::ring::{Polynomial, Ring};

fn common_ring(vectors: &[FreeVector]) -> Result<(Arc<Ring>, GradedFreeModule)> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::Usage("empty list of module elements".into()))?;
    let ambient = first.ambient().clone();
    let ring = first
        .coords()
        .first()
        .ok_or_else(|| Error::Usage("vectors in a rank-zero module".into()))?
        .ring()
        .clone();
    for v in vectors {
        if v.ambient() != &ambient {
            return Err(Error::Usage("vectors live in different free modules".into()));
        }
        for c in v.coords() {
            crate::ring::check_same_ring(&ring, c.ring())?;
        }
    }
    Ok((ring, ambient))
}

/// Reduced Gröbner basis (term-over-position) of the submodule spanned by `columns`.
pub fn module_gb(columns: &[FreeVector]) -> Result<Vec<FreeVector>> {
    let (ring, ambient) = common_ring(columns)?;
    let ctx = ctx_of(&ring);
    let vecs: Vec<Vector> = columns.iter().map(|c| c.to_vector(ctx)).collect();
    let max_deg = vecs
        .iter()
        .filter_map(|v| homogeneous_degree(v, ambient.twists()))
        .max()
        .unwrap_or(0);
    let mut e = Engine::new(ctx, ring.arity(), ambient.twists().to_vec())
        .cap(Some(degree_cap_for(max_deg)));
    for v in vecs {
        e.push(v, Vector::default());
    }
    e.complete()?;
    e.reduced_basis()
        .iter()
        .map(|v| FreeVector::new(vector_to_coords(&ring, v, ambient.rank()), ambient.clone()))
        .collect()
}

/// A submodule of a free module prepared for membership queries.
pub struct Submodule {
    ring: Arc<Ring>,
    ambient: GradedFreeModule,
    engine: Engine,
}

impl Submodule {
    pub fn new(ring: &Arc<Ring>, ambient: &GradedFreeModule, gens: &[FreeVector]) -> Result<Self> {
        let ctx = ctx_of(ring);
        let vecs: Vec<Vector> = gens.iter().map(|c| c.to_vector(ctx)).collect();
        let max_deg = vecs
            .iter()
            .filter_map(|v| homogeneous_degree(v, ambient.twists()))
            .max()
            .unwrap_or(0);
        let mut engine = Engine::new(ctx, ring.arity(), ambient.twists().to_vec())
            .cap(Some(degree_cap_for(max_deg)));
        for (g, v) in gens.iter().zip(vecs) {
            if g.ambient() != ambient {
                return Err(Error::Usage("generator outside the ambient module".into()));
            }
            engine.push(v, Vector::default());
        }
        engine.complete()?;
        Ok(Submodule {
            ring: ring.clone(),
            ambient: ambient.clone(),
            engine,
        })
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        if v.coords().len() != self.ambient.rank() {
            return Err(Error::Usage("vector rank differs from the ambient module".into()));
        }
        Ok(self
            .engine
            .reduce(v.to_vector(ctx_of(&self.ring)))
            .is_zero())
    }

    pub fn contains_all(&self, vs: &[FreeVector]) -> Result<bool> {
        for v in vs {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds the map whose columns are the given vectors in `R^rank` with
/// the given target twists. Column degrees become the source twists.
pub(crate) fn map_from_vectors(
    ring: &Arc<Ring>,
    target: &GradedFreeModule,
    vecs: &[Vector],
) -> Result<GradedMap> {
    let twists = vecs
        .iter()
        .map(|v| {
            homogeneous_degree(v, target.twists())
                .ok_or_else(|| Error::Invariant("zero syzygy generator".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let cols: Vec<Vec<Polynomial>> = vecs
        .iter()
        .map(|v| vector_to_coords(ring, v, target.rank()))
        .collect();
    let entries = (0..target.rank())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    GradedMap::new_unchecked(ring, GradedFreeModule::new(twists), target.clone(), entries)
}

/// Syzygies on the columns of `map`, as a map into its source.
///
/// The relations come from Schreyer's construction on the S-pair reductions
/// of a Gröbner basis of the column module; for homogeneous input they are
/// then pruned to a minimal generating set. An injective map yields a map
/// from the zero module.
pub fn syzygies(map: &GradedMap) -> Result<GradedMap> {
    syzygies_with(map, PairStrategy::Normal, true)
}

pub fn syzygies_with(map: &GradedMap, strategy: PairStrategy, prune: bool) -> Result<GradedMap> {
    let ring = map.ring().clone();
    let ctx = ctx_of(&ring);
    let cols = map.column_vectors();
    let homogeneous = cols.iter().all(|c| is_homogeneous(c, map.target().twists()));
    let raw = if cols.is_empty() {
        Vec::new()
    } else {
        syzygy_generators(ctx, ring.arity(), map.target().twists(), &cols, strategy)?
    };
    let gens = if prune && homogeneous {
        prune_generators(ctx, ring.arity(), map.source().twists(), raw, &[])?
    } else {
        raw
    };
    let mut gens = gens;
    sort_by_degree(&mut gens, map.source().twists(), ctx);
    map_from_vectors(&ring, map.source(), &gens)
}

pub(crate) fn sort_by_degree(gens: &mut [Vector], twists: &[i64], ctx: crate::groebner::engine::Ctx) {
    gens.sort_by(|a, b| {
        homogeneous_degree(a, twists)
            .cmp(&homogeneous_degree(b, twists))
            .then_with(|| ctx.cmp(&b.terms[0], &a.terms[0]))
    });
}

/// Syzygies among a list of vectors of a common free module.
pub fn syzygies_of_vectors(columns: &[FreeVector]) -> Result<GradedMap> {
    let (ring, ambient) = common_ring(columns)?;
    let cols: Vec<Vec<Polynomial>> = columns.iter().map(|c| c.coords().to_vec()).collect();
    let map = GradedMap::from_columns(&ring, ambient, cols)?;
    syzygies(&map)
}

/// Minimal generators (graded Nakayama) of the submodule spanned by the
/// columns of `map`, returned as a map with the same target.
pub fn prune_columns(map: &GradedMap) -> Result<GradedMap> {
    let ring = map.ring().clone();
    let ctx = ctx_of(&ring);
    let mut kept = prune_generators(ctx, ring.arity(), map.target().twists(), map.column_vectors(), &[])?;
    sort_by_degree(&mut kept, map.target().twists(), ctx);
    map_from_vectors(&ring, map.target(), &kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn xy() -> (Arc<Ring>, Polynomial, Polynomial) {
        let r = Ring::new(7, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        (r.clone(), Polynomial::var(&r, 0), Polynomial::var(&r, 1))
    }

    #[test]
    fn koszul_pair() {
        let (r, x, y) = xy();
        let m = GradedMap::row(&r, &[x.clone(), y.clone()]).unwrap();
        let s = syzygies(&m).unwrap();
        assert_eq!(s.source().twists(), &[2]);
        assert!(m.compose(&s).unwrap().is_zero());
        // (y, -x) up to a unit
        let col = s.column(0);
        assert_eq!(col[0].scale(r.field().inv(col[0].lead_coeff().unwrap())), y);
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let (r, x, _) = xy();
        let m = GradedMap::row(&r, &[x]).unwrap();
        assert_eq!(syzygies(&m).unwrap().source().rank(), 0);
    }

    #[test]
    fn module_gb_examples() {
        let (r, x, _) = xy();
        let amb = GradedFreeModule::free(2);
        let zero = Polynomial::zero(&r);
        let a = FreeVector::new(vec![x.clone(), zero.clone()], amb.clone()).unwrap();
        let b = FreeVector::new(vec![zero, x.clone()], amb.clone()).unwrap();
        let gb = module_gb(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&a) && gb.contains(&b));
        let c = FreeVector::new(vec![x.scale(3), x.scale(2)], amb).unwrap();
        let single = module_gb(&[c]).unwrap();
        assert_eq!(single[0].coords()[0], x);
    }

    #[test]
    fn membership_in_submodule() {
        let (r, x, y) = xy();
        let amb = GradedFreeModule::free(2);
        let v = FreeVector::new(vec![x.clone(), y.clone()], amb.clone()).unwrap();
        let sub = Submodule::new(&r, &amb, &[v]).unwrap();
        let w = FreeVector::new(vec![&x * &y, y.pow(2)], amb.clone()).unwrap();
        assert!(sub.contains(&w).unwrap());
        let u = FreeVector::new(vec![y.clone(), x.clone()], amb).unwrap();
        assert!(!sub.contains(&u).unwrap());
    }

    #[test]
    fn duplicate_generators_are_pruned() {
        let (r, x, _) = xy();
        let m = GradedMap::row(&r, &[x.clone(), x.scale(2)]).unwrap();
        assert_eq!(prune_columns(&m).unwrap().source().rank(), 1);
        let raw = syzygies_with(&m, PairStrategy::Normal, false).unwrap();
        assert!(raw.has_unit_entry());
    }
}
