//! Graded free modules `⊕ R(-d_j)` and homogeneous maps between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::engine::{Ctx, Term, Vector};
use crate::groebner::ctx_of;
use crate::ring::{check_same_ring, Polynomial, Ring};

/// `⊕_j R(-d_j)`, stored as the list of `d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn free(rank: usize) -> Self {
        GradedFreeModule {
            twists: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub(crate) fn remove(&mut self, idx: usize) {
        self.twists.remove(idx);
    }
}

/// An element of a graded free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    coords: Vec<Polynomial>,
    ambient: GradedFreeModule,
}

impl FreeVector {
    pub fn new(coords: Vec<Polynomial>, ambient: GradedFreeModule) -> Result<Self> {
        if coords.len() != ambient.rank() {
            return Err(Error::Usage(format!(
                "{} coordinates for a module of rank {}",
                coords.len(),
                ambient.rank()
            )));
        }
        if let Some(first) = coords.first() {
            for c in &coords[1..] {
                check_same_ring(first.ring(), c.ring())?;
            }
        }
        Ok(FreeVector { coords, ambient })
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Internal degree `deg(c_k) + d_k`, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (c, d) in self.coords.iter().zip(self.ambient.twists()) {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return None;
            }
            let this = c.degree().unwrap() as i64 + d;
            match deg {
                None => deg = Some(this),
                Some(prev) if prev != this => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub(crate) fn to_vector(&self, ctx: Ctx) -> Vector {
        coords_to_vector(ctx, &self.coords)
    }
}

pub(crate) fn coords_to_vector(ctx: Ctx, coords: &[Polynomial]) -> Vector {
    let raw: Vec<Term> = coords
        .iter()
        .enumerate()
        .flat_map(|(pos, c)| {
            c.terms().iter().map(move |&(mon, coeff)| Term {
                mon,
                pos: pos as u32,
                coeff,
            })
        })
        .collect();
    ctx.canon(raw)
}

pub(crate) fn vector_to_coords(ring: &Arc<Ring>, v: &Vector, rank: usize) -> Vec<Polynomial> {
    let mut buckets: Vec<Vec<(crate::ring::Monomial, u32)>> = vec![Vec::new(); rank];
    for t in &v.terms {
        buckets[t.pos as usize].push((t.mon, t.coeff));
    }
    buckets
        .into_iter()
        .map(|b| Polynomial::from_sorted(ring, b))
        .collect()
}

/// A homogeneous map `source -> target` given by a polynomial matrix with
/// `target.rank()` rows and `source.rank()` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    ring: Arc<Ring>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMap {
    /// Checks shape and that entry `(r, c)` is zero or homogeneous of degree
    /// `source[c] - target[r]`.
    pub fn new(
        ring: &Arc<Ring>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let map = GradedMap::new_unchecked(ring, source, target, entries)?;
        map.check_degrees()?;
        Ok(map)
    }

    /// Checks shape only.
    pub fn new_unchecked(
        ring: &Arc<Ring>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|row| row.len() != source.rank())
        {
            return Err(Error::Usage(format!(
                "matrix shape does not match a map R^{} -> R^{}",
                source.rank(),
                target.rank()
            )));
        }
        for row in &entries {
            for e in row {
                check_same_ring(ring, e.ring())?;
            }
        }
        Ok(GradedMap {
            ring: ring.clone(),
            source,
            target,
            entries,
        })
    }

    /// Builds a map from its columns; source twists are the column degrees.
    pub fn from_columns(
        ring: &Arc<Ring>,
        target: GradedFreeModule,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let mut twists = Vec::with_capacity(columns.len());
        for col in &columns {
            let v = FreeVector::new(col.clone(), target.clone())?;
            let d = v.degree().ok_or_else(|| {
                Error::Usage("columns must be nonzero and homogeneous".into())
            })?;
            twists.push(d);
        }
        let rows = (0..target.rank())
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        GradedMap::new(ring, GradedFreeModule::new(twists), target, rows)
    }

    /// The `1 x m` presentation `R^m -> R` of `R/(f_1..f_m)`.
    pub fn row(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Self> {
        GradedMap::from_columns(
            ring,
            GradedFreeModule::free(1),
            gens.iter().map(|g| vec![g.clone()]).collect(),
        )
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|row| row[c].clone()).collect()
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.source.rank())
            .map(|c| FreeVector {
                coords: self.column(c),
                ambient: self.target.clone(),
            })
            .collect()
    }

    pub fn check_degrees(&self) -> Result<()> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let want = self.source.twists()[c] - self.target.twists()[r];
                if !e.is_homogeneous() || e.degree().map(|d| d as i64) != Some(want) {
                    return Err(Error::Invariant(format!(
                        "entry ({r},{c}) = {e} is not homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().flatten().any(Polynomial::is_unit)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.source.rank() != other.target.rank() {
            return Err(Error::Usage("maps are not composable".into()));
        }
        let rows = self.target.rank();
        let cols = other.source.rank();
        let mut entries = vec![vec![Polynomial::zero(&self.ring); cols]; rows];
        for (r, out_row) in entries.iter_mut().enumerate() {
            for (c, out) in out_row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.source.rank() {
                    let (a, b) = (&self.entries[r][k], &other.entries[k][c]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                *out = acc;
            }
        }
        GradedMap::new_unchecked(&self.ring, other.source.clone(), self.target.clone(), entries)
    }

    pub(crate) fn column_vectors(&self) -> Vec<Vector> {
        let ctx = ctx_of(&self.ring);
        (0..self.source.rank())
            .map(|c| coords_to_vector(ctx, &self.column(c)))
            .collect()
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> GradedMap {
        GradedMap {
            ring: self.ring.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }

    pub(crate) fn parts_mut(
        &mut self,
    ) -> (
        &mut GradedFreeModule,
        &mut GradedFreeModule,
        &mut Vec<Vec<Polynomial>>,
    ) {
        (&mut self.source, &mut self.target, &mut self.entries)
    }
}
