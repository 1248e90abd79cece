//! Resolutions over a hypersurface ring `S = R/fR` and detection of their
//! eventual 2-periodicity.
//!
//! Elements of `S` are represented by their normal forms modulo `f`.
//! Syzygies over `S` are obtained by lifting to `R`, adjoining `f * e_k`
//! for every target coordinate, computing syzygies over `R` and projecting
//! away the coordinates belonging to the `f`-columns.

pub mod determinantal;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::engine::{divide, prune_generators, syzygy_generators, Ctx, Vector};
use crate::groebner::{ctx_of, normal_form, PairStrategy};
use crate::resolution::{
    coords_to_vector, map_from_vectors, minimalize_with, sort_by_degree, BettiTable,
    GradedFreeModule, GradedMap, Resolution, Submodule, FreeVector,
};
use crate::ring::{check_same_ring, Monomial, Polynomial, Ring};

/// The ring `S = R/fR` for a nonzero homogeneous `f`.
#[derive(Clone, Debug)]
pub struct HypersurfaceContext {
    ring: Arc<Ring>,
    f: Polynomial,
}

impl HypersurfaceContext {
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.is_zero() || !f.is_homogeneous() {
            return Err(Error::Usage(
                "a hypersurface needs a nonzero homogeneous equation".into(),
            ));
        }
        if f.is_unit() {
            return Err(Error::Usage("the hypersurface equation is a unit".into()));
        }
        Ok(HypersurfaceContext {
            ring: f.ring().clone(),
            f: f.monic(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn equation(&self) -> &Polynomial {
        &self.f
    }

    /// Normal form modulo `f`.
    pub fn reduce(&self, g: &Polynomial) -> Polynomial {
        if g.is_zero() {
            return g.clone();
        }
        normal_form(g, std::slice::from_ref(&self.f)).expect("same ring")
    }

    pub fn reduce_map(&self, m: &GradedMap) -> GradedMap {
        m.map_entries(|e| self.reduce(e))
    }

    fn ctx(&self) -> Ctx {
        ctx_of(&self.ring)
    }

    /// `f * e_k` for `k < rank`.
    fn f_units(&self, rank: usize) -> Vec<Vector> {
        let ctx = self.ctx();
        (0..rank)
            .map(|k| {
                let mut coords = vec![Polynomial::zero(&self.ring); rank];
                coords[k] = self.f.clone();
                coords_to_vector(ctx, &coords)
            })
            .collect()
    }

    fn reduce_vector(&self, v: Vector, rank: usize) -> Vector {
        divide(self.ctx(), self.ring.arity(), v, &self.f_units(rank))
    }

    /// The submodule of `S^rank` spanned by `gens`, lifted to `R^rank` for
    /// membership tests (the lift includes `f * R^rank`).
    pub fn submodule(&self, ambient: &GradedFreeModule, gens: &[FreeVector]) -> Result<Submodule> {
        let mut all = gens.to_vec();
        for k in 0..ambient.rank() {
            let mut coords = vec![Polynomial::zero(&self.ring); ambient.rank()];
            coords[k] = self.f.clone();
            all.push(FreeVector::new(coords, ambient.clone())?);
        }
        Submodule::new(&self.ring, ambient, &all)
    }

    /// Minimal generators over `S` of the submodule spanned by the columns.
    pub fn prune_columns(&self, map: &GradedMap) -> Result<GradedMap> {
        check_same_ring(&self.ring, map.ring())?;
        let rank = map.target().rank();
        let cols: Vec<Vector> = self
            .reduce_map(map)
            .column_vectors()
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();
        let mut kept = prune_generators(
            self.ctx(),
            self.ring.arity(),
            map.target().twists(),
            cols,
            &self.f_units(rank),
        )?;
        sort_by_degree(&mut kept, map.target().twists(), self.ctx());
        map_from_vectors(&self.ring, map.target(), &kept)
    }
}

/// Minimal generators of the syzygies over `S` of the columns of `map`
/// (whose entries are taken modulo `f`).
pub fn syz_over_hypersurface(ctx: &HypersurfaceContext, map: &GradedMap) -> Result<GradedMap> {
    check_same_ring(&ctx.ring, map.ring())?;
    let ring = &ctx.ring;
    let target_rank = map.target().rank();
    let s = map.source().rank();
    if s == 0 {
        return map_from_vectors(ring, map.source(), &[]);
    }
    let reduced = ctx.reduce_map(map);
    let mut cols = reduced.column_vectors();
    let n_cols = cols.len();
    cols.extend(ctx.f_units(target_rank));
    let raw = syzygy_generators(
        ctx.ctx(),
        ring.arity(),
        map.target().twists(),
        &cols,
        PairStrategy::Normal,
    )?;
    let projected: Vec<Vector> = raw
        .into_iter()
        .map(|v| Vector {
            terms: v
                .terms
                .into_iter()
                .filter(|t| (t.pos as usize) < n_cols)
                .collect(),
        })
        .map(|v| ctx.reduce_vector(v, s))
        .filter(|v| !v.is_zero())
        .collect();
    let mut kept = prune_generators(
        ctx.ctx(),
        ring.arity(),
        map.source().twists(),
        projected,
        &ctx.f_units(s),
    )?;
    sort_by_degree(&mut kept, map.source().twists(), ctx.ctx());
    map_from_vectors(ring, map.source(), &kept)
}

/// The head of a minimal resolution over `S`, with detected periodicity.
#[derive(Clone, Debug)]
pub struct PeriodicResolution {
    head: Resolution,
    period_start: Option<usize>,
    period_shift: Option<i64>,
}

impl PeriodicResolution {
    pub fn head(&self) -> &Resolution {
        &self.head
    }

    /// First homological index from which `F_{i+2} = F_i(-shift)` holds.
    pub fn period_start(&self) -> Option<usize> {
        self.period_start
    }

    /// The uniform shift between `F_i` and `F_{i+2}` in the periodic range.
    pub fn period_shift(&self) -> Option<i64> {
        self.period_shift
    }

    /// Betti data of the computed head (marked truncated).
    pub fn betti(&self) -> BettiTable {
        let h = &self.head;
        BettiTable::from_modules(
            (0..=h.length()).map(|i| h.module(i).twists().to_vec()),
            false,
        )
    }

    /// Ranks and shifts of `F_i` for any `i`, extrapolated past the head
    /// using the detected period.
    pub fn predicted_twists(&self, i: usize) -> Option<Vec<i64>> {
        let len = self.head.length();
        if i <= len {
            let mut t = self.head.module(i).twists().to_vec();
            t.sort_unstable();
            return Some(t);
        }
        let (start, shift) = (self.period_start?, self.period_shift?);
        let k = (i - len).div_ceil(2);
        let base = i - 2 * k;
        if base < start {
            return None;
        }
        let k = k as i64;
        let mut t: Vec<i64> = self.head.module(base).twists().iter().map(|d| d + k * shift).collect();
        t.sort_unstable();
        Some(t)
    }

    /// Checks that consecutive maps compose to zero modulo `f`.
    pub fn check_complex(&self, ctx: &HypersurfaceContext) -> Result<()> {
        let maps = self.head.maps();
        for i in 0..maps.len().saturating_sub(1) {
            let comp = ctx.reduce_map(&maps[i].compose(&maps[i + 1])?);
            if !comp.is_zero() {
                return Err(Error::Invariant(format!(
                    "d_{} d_{} is not zero modulo the hypersurface",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(())
    }
}

/// Smallest `start` such that `F_{i+2}` is `F_i` shifted uniformly for every
/// `i >= start` in range, with at least two such comparisons available.
pub fn detect_period(modules: &[Vec<i64>]) -> Option<(usize, i64)> {
    let n = modules.len();
    let sorted: Vec<Vec<i64>> = modules
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.sort_unstable();
            t
        })
        .collect();
    let shift_between = |a: &[i64], b: &[i64]| -> Option<i64> {
        if a.is_empty() || a.len() != b.len() {
            return None;
        }
        let c = b[0] - a[0];
        a.iter().zip(b).all(|(x, y)| y - x == c).then_some(c)
    };
    'start: for start in 0..n {
        if start + 3 >= n {
            return None;
        }
        let mut shift = None;
        for i in start..n - 2 {
            match shift_between(&sorted[i], &sorted[i + 2]) {
                Some(c) if shift.is_none_or(|s| s == c) => shift = Some(c),
                _ => continue 'start,
            }
        }
        return shift.map(|s| (start, s));
    }
    None
}

/// Computes `steps` maps of a minimal resolution of `coker(presentation)`
/// over `S` and looks for a period of two in the Betti data.
pub fn resolve_over_hypersurface(
    ctx: &HypersurfaceContext,
    presentation: &GradedMap,
    steps: usize,
) -> Result<PeriodicResolution> {
    if steps < 4 {
        return Err(Error::Usage(format!(
            "at least 4 steps are needed to see a period of two, got {steps}"
        )));
    }
    let first = ctx.prune_columns(presentation)?;
    let f0 = first.target().clone();
    let mut maps = Vec::new();
    if first.source().rank() > 0 {
        maps.push(first);
    }
    while let Some(last) = maps.last().filter(|_| maps.len() < steps) {
        let next = syz_over_hypersurface(ctx, last)?;
        if next.source().rank() == 0 {
            break;
        }
        maps.push(next);
    }
    let res = Resolution::new(&ctx.ring, f0, maps)?;
    let head = minimalize_with(&res, |p| ctx.reduce(p));
    let modules: Vec<Vec<i64>> = (0..=head.length())
        .map(|i| head.module(i).twists().to_vec())
        .collect();
    let period = if head.length() < steps {
        None
    } else {
        detect_period(&modules)
    };
    Ok(PeriodicResolution {
        head,
        period_start: period.map(|p| p.0),
        period_shift: period.map(|p| p.1),
    })
}

/// `x^a` as a polynomial in `ring`.
pub(crate) fn mono(ring: &Arc<Ring>, exps: &[u32]) -> Polynomial {
    Polynomial::monomial(ring, Monomial::new(exps).expect("valid exponents"), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    #[test]
    fn period_detection_rules() {
        let m = |v: &[&[i64]]| v.iter().map(|t| t.to_vec()).collect::<Vec<_>>();
        assert_eq!(detect_period(&m(&[&[0], &[1], &[2], &[3], &[4]])), Some((0, 2)));
        assert_eq!(
            detect_period(&m(&[&[0], &[4, 4], &[6, 6, 6], &[7; 4], &[8; 4], &[9; 4], &[10; 4]])),
            Some((3, 2))
        );
        assert_eq!(detect_period(&m(&[&[0], &[1], &[2]])), None);
        assert_eq!(detect_period(&m(&[&[0], &[2, 2], &[3, 3, 3], &[4], &[5, 5]])), None);
    }

    #[test]
    fn dual_numbers_are_periodic_from_the_start() {
        let r = Ring::new(3, &["x"], MonomialOrder::Grevlex).unwrap();
        let x = Polynomial::var(&r, 0);
        let ctx = HypersurfaceContext::new(x.pow(2)).unwrap();
        let pres = GradedMap::row(&r, std::slice::from_ref(&x)).unwrap();
        let res = resolve_over_hypersurface(&ctx, &pres, 5).unwrap();
        assert_eq!(res.head().ranks(), vec![1; 6]);
        let twists: Vec<i64> = (0..6).map(|i| res.head().module(i).twists()[0]).collect();
        assert_eq!(twists, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(res.period_start(), Some(0));
        assert_eq!(res.period_shift(), Some(2));
        res.check_complex(&ctx).unwrap();
        assert_eq!(res.predicted_twists(9), Some(vec![9]));
    }

    #[test]
    fn nonzerodivisor_on_s_has_no_syzygies() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let ctx = HypersurfaceContext::new(y).unwrap();
        let m = GradedMap::row(&r, &[x]).unwrap();
        assert_eq!(syz_over_hypersurface(&ctx, &m).unwrap().source().rank(), 0);
    }

    #[test]
    fn free_module_has_empty_resolution() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let y = Polynomial::var(&r, 1);
        let ctx = HypersurfaceContext::new(y.clone()).unwrap();
        // the only generator of the relation module is zero in S
        let pres = GradedMap::row(&r, &[y]).unwrap();
        let res = resolve_over_hypersurface(&ctx, &pres, 4).unwrap();
        assert_eq!(res.head().length(), 0);
        assert_eq!(res.period_start(), None);
        assert!(resolve_over_hypersurface(&ctx, &pres, 3).is_err());
    }

    #[test]
    fn rejects_bad_equations() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let x = Polynomial::var(&r, 0);
        assert!(HypersurfaceContext::new(Polynomial::zero(&r)).is_err());
        assert!(HypersurfaceContext::new(&x + &Polynomial::one(&r)).is_err());
    }
}
