//! Free resolutions by iterated syzygies, and minimalization of complexes.

use std::sync::Arc;

use super::betti::BettiTable;
use super::free_module::{GradedFreeModule, GradedMap};
use super::syzygy::{prune_columns, syzygies_with};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, PairStrategy};
use crate::ring::{Polynomial, Ring};

/// A complex of free modules `... -> F_2 -> F_1 -> F_0`, stored as the maps
/// `d_1, d_2, ...` (`maps[i]` is `d_{i+1}: F_{i+1} -> F_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    ring: Arc<Ring>,
    f0: GradedFreeModule,
    maps: Vec<GradedMap>,
}

impl Resolution {
    pub fn new(ring: &Arc<Ring>, f0: GradedFreeModule, maps: Vec<GradedMap>) -> Result<Self> {
        let mut prev = &f0;
        for m in &maps {
            if m.target() != prev {
                return Err(Error::Usage("consecutive maps do not match".into()));
            }
            prev = m.source();
        }
        Ok(Resolution {
            ring: ring.clone(),
            f0,
            maps,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    /// Number of nonzero maps.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_i` for `0 <= i <= length`.
    pub fn module(&self, i: usize) -> &GradedFreeModule {
        if i == 0 {
            &self.f0
        } else {
            self.maps[i - 1].source()
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|i| self.module(i).rank()).collect()
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules((0..=self.maps.len()).map(|i| self.module(i).twists().to_vec()), true)
    }

    /// Checks that consecutive compositions vanish and entries are graded.
    pub fn check_complex(&self) -> Result<()> {
        for (i, m) in self.maps.iter().enumerate() {
            m.check_degrees()?;
            if let Some(next) = self.maps.get(i + 1) {
                if !m.compose(next)?.is_zero() {
                    return Err(Error::Invariant(format!("d_{} d_{} != 0", i + 1, i + 2)));
                }
            }
        }
        Ok(())
    }
}

/// The minimal graded free resolution of `coker(presentation)`.
///
/// Each step computes Schreyer syzygies and prunes them to a minimal
/// generating set; a final pass removes any unit entries left in the
/// presentation itself. Over a polynomial ring this stops after at most
/// `n` steps, so running past `max_length` signals a bug.
pub fn free_resolution(presentation: &GradedMap, max_length: usize) -> Result<Resolution> {
    free_resolution_with(presentation, max_length, PairStrategy::Normal)
}

pub fn free_resolution_with(
    presentation: &GradedMap,
    max_length: usize,
    strategy: PairStrategy,
) -> Result<Resolution> {
    let ring = presentation.ring().clone();
    let first = prune_columns(presentation)?;
    let res = iterate(&ring, first, max_length, |m| syzygies_with(m, strategy, true))?;
    Ok(minimalize(&res))
}

/// Iterated Schreyer syzygies without pruning: usually not minimal.
pub fn schreyer_resolution(presentation: &GradedMap, max_length: usize) -> Result<Resolution> {
    let ring = presentation.ring().clone();
    iterate(&ring, presentation.clone(), max_length, |m| {
        syzygies_with(m, PairStrategy::Normal, false)
    })
}

fn iterate(
    ring: &Arc<Ring>,
    first: GradedMap,
    max_length: usize,
    mut step: impl FnMut(&GradedMap) -> Result<GradedMap>,
) -> Result<Resolution> {
    let f0 = first.target().clone();
    let mut maps = Vec::new();
    if first.source().rank() > 0 {
        maps.push(first);
    }
    while let Some(last) = maps.last() {
        let next = step(last)?;
        if next.source().rank() == 0 {
            break;
        }
        if maps.len() >= max_length {
            return Err(Error::Invariant(format!(
                "resolution did not terminate within {max_length} steps"
            )));
        }
        maps.push(next);
    }
    Resolution::new(ring, f0, maps)
}

/// Resolution of `R/I` for an ideal `I`.
pub fn resolve_quotient(ideal: &Ideal) -> Result<Resolution> {
    let ring = ideal.ring().clone();
    if !ideal.is_homogeneous() {
        return Err(Error::Usage("resolutions need a homogeneous ideal".into()));
    }
    let pres = GradedMap::row(&ring, ideal.generators())?;
    free_resolution(&pres, ring.arity() + 1)
}

/// Removes every nonzero constant entry by splitting off trivial summands
/// `R(-d) --unit--> R(-d)`.
pub fn minimalize(res: &Resolution) -> Resolution {
    minimalize_with(res, |p| p.clone())
}

/// As [`minimalize`], normalising every updated entry with `reduce`
/// (used over quotient rings).
pub fn minimalize_with(res: &Resolution, reduce: impl Fn(&Polynomial) -> Polynomial) -> Resolution {
    let ring = res.ring.clone();
    let k = ring.field();
    let mut f0 = res.f0.clone();
    let mut maps = res.maps.clone();
    loop {
        // Pivot: the unit entry with the smallest source twist (then the
        // lowest homological index, column, row).
        let mut pivot: Option<(i64, usize, usize, usize)> = None;
        for (i, m) in maps.iter().enumerate() {
            for (r, row) in m.entries().iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if e.is_unit() {
                        let cand = (m.source().twists()[c], i, c, r);
                        if pivot.is_none_or(|p| cand < p) {
                            pivot = Some(cand);
                        }
                    }
                }
            }
        }
        let Some((_, i, c, r)) = pivot else { break };
        let u_inv = k.inv(maps[i].entry(r, c).lead_coeff().unwrap());
        {
            let (source, target, entries) = maps[i].parts_mut();
            let pivot_row = entries[r].clone();
            for (rr, row) in entries.iter_mut().enumerate() {
                if rr == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].scale(u_inv);
                for (cc, e) in row.iter_mut().enumerate() {
                    if cc == c || pivot_row[cc].is_zero() {
                        continue;
                    }
                    *e = reduce(&(&*e - &(&factor * &pivot_row[cc])));
                }
            }
            entries.remove(r);
            for row in entries.iter_mut() {
                row.remove(c);
            }
            source.remove(c);
            target.remove(r);
        }
        if let Some(next) = maps.get_mut(i + 1) {
            let (_, target, entries) = next.parts_mut();
            entries.remove(c);
            target.remove(c);
        }
        if i == 0 {
            f0.remove(r);
        } else {
            let (source, _, entries) = maps[i - 1].parts_mut();
            for row in entries.iter_mut() {
                row.remove(r);
            }
            source.remove(r);
        }
    }
    if let Some(cut) = maps.iter().position(|m| m.source().rank() == 0) {
        maps.truncate(cut);
    }
    Resolution { ring, f0, maps }
}
