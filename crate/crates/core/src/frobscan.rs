//! Scans along Frobenius powers: regularity of `R/(I^[q] + g_i R)` and the
//! degrees of minimal generators of `(I^[q] : I)`, for `q = p^e`.
//!
//! A scan covers finitely many `e`, so its constants are evidence for linear
//! growth and never a proof of it.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{bracket_power, colon, homogenize, minimal_generators, Ideal};
use crate::resolution::{regularity, resolve_quotient};
use crate::ring::{Gauge, Monomial, Polynomial, Ring};

/// One `(e, i)` row: `reg_i(e) = reg R/(I^[q] + g_i R)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub e: u32,
    pub q: u64,
    pub i: usize,
    pub reg: i64,
    pub ratio: f64,
}

/// One row per `e` for the colon ideal `(I^[q] : I)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColonRow {
    pub e: u32,
    pub q: u64,
    pub generator_degrees: Vec<u32>,
    pub max_degree: u32,
    /// Largest gauge of the chosen generators in `R`.
    pub max_gauge: i64,
    /// Regularity of the colon ideal itself, `reg(R/J) + 1` (0 for the unit ideal).
    pub colon_reg: i64,
    pub ratio: f64,
    /// Every generator `r` satisfied `r g in I^[q]` for every generator `g` of `I`.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub p: u32,
    pub e_max: u32,
    /// Name of the variable added to homogenize the input, if any.
    pub homogenized_with: Option<String>,
    pub rows: Vec<ScanRow>,
    pub colon: Vec<ColonRow>,
    /// `max reg_i(e) / q` over the rows.
    pub c: f64,
    /// `max maxDeg(e) / q` over the colon rows, when they were computed.
    pub k: Option<f64>,
}

impl ScanReport {
    pub fn colon_row(&self, e: u32) -> Option<&ColonRow> {
        self.colon.iter().find(|r| r.e == e)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaugeBoundReport {
    pub scan: ScanReport,
    pub c: f64,
    pub k: f64,
    pub verdict: String,
    pub notes: Vec<String>,
}

/// Homogenizes `ideal` with a fresh variable when needed.
fn prepare(ideal: &Ideal) -> Result<(Ideal, Option<String>)> {
    if ideal.is_zero() {
        return Err(Error::Usage("cannot scan the zero ideal".into()));
    }
    if ideal.is_homogeneous() {
        return Ok((ideal.clone(), None));
    }
    let ring = ideal.ring();
    let name = std::iter::once("h".to_string())
        .chain((0..).map(|k| format!("h{k}")))
        .find(|n| ring.var_index(n).is_none())
        .expect("some name is free");
    Ok((homogenize(ideal, &name)?, Some(name)))
}

fn q_of(ring: &Ring, e: u32) -> Result<u64> {
    (ring.characteristic() as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::Usage(format!("p^{e} overflows")))
}

fn reg_row(ideal: &Ideal, e: u32, i: usize) -> Result<ScanRow> {
    let q = q_of(ideal.ring(), e)?;
    let g = &ideal.generators()[i - 1];
    let j = bracket_power(ideal, e)?.add_generator(g)?;
    let reg = resolve_quotient(&j)
        .and_then(|res| regularity(&res.betti()))
        .map_err(|err| err.with_guard_context(format!("e={e}, i={i}")))?;
    Ok(ScanRow {
        e,
        q,
        i,
        reg,
        ratio: reg as f64 / q as f64,
    })
}

fn reg_rows(ideal: &Ideal, e_max: u32) -> Result<Vec<ScanRow>> {
    let jobs: Vec<(u32, usize)> = (0..=e_max)
        .flat_map(|e| (1..=ideal.generators().len()).map(move |i| (e, i)))
        .collect();
    jobs.par_iter().map(|&(e, i)| reg_row(ideal, e, i)).collect()
}

fn max_ratio(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

/// `reg R/(I^[p^e] + g_i R)` for every `e <= e_max` and every generator `g_i`.
pub fn reg_growth_scan(ideal: &Ideal, e_max: u32) -> Result<ScanReport> {
    let (ideal, homogenized_with) = prepare(ideal)?;
    let rows = reg_rows(&ideal, e_max)?;
    Ok(ScanReport {
        p: ideal.ring().characteristic(),
        e_max,
        homogenized_with,
        c: max_ratio(rows.iter().map(|r| r.ratio)),
        rows,
        colon: Vec::new(),
        k: None,
    })
}

/// Regularity of an ideal `J` as a module: `reg(R/J) + 1`, and 0 for `J = R`.
fn ideal_regularity(j: &Ideal) -> Result<i64> {
    if j.generators().iter().any(Polynomial::is_unit) {
        return Ok(0);
    }
    Ok(regularity(&resolve_quotient(j)?.betti())? + 1)
}

fn colon_row(ideal: &Ideal, e: u32) -> Result<ColonRow> {
    let q = q_of(ideal.ring(), e)?;
    let ctx = format!("colon at e={e}");
    let bracket = bracket_power(ideal, e)?;
    let j = colon(&bracket, ideal).map_err(|err| err.with_guard_context(ctx.clone()))?;
    let gens = minimal_generators(&j)?;
    let mut certified = true;
    for r in &gens {
        for g in ideal.generators() {
            if !bracket.contains(&(r * g))? {
                certified = false;
            }
        }
    }
    if !certified {
        return Err(Error::Invariant(format!(
            "a generator of (I^[{q}] : I) does not multiply I into I^[{q}]"
        )));
    }
    let generator_degrees: Vec<u32> = {
        let mut d: Vec<u32> = gens.iter().filter_map(Polynomial::degree).collect();
        d.sort_unstable();
        d
    };
    let max_degree = generator_degrees.iter().copied().max().unwrap_or(0);
    let max_gauge = gens
        .iter()
        .map(|g| match g.gauge() {
            Gauge::Finite(d) => d as i64,
            Gauge::NegInfinity => 0,
        })
        .max()
        .unwrap_or(0);
    let colon_reg = ideal_regularity(&j).map_err(|err| err.with_guard_context(ctx))?;
    if max_degree as i64 > colon_reg {
        return Err(Error::Invariant(format!(
            "generator degree {max_degree} exceeds reg(I^[{q}] : I) = {colon_reg}"
        )));
    }
    Ok(ColonRow {
        e,
        q,
        generator_degrees,
        max_degree,
        max_gauge,
        colon_reg,
        ratio: max_degree as f64 / q as f64,
        certified,
    })
}

/// Minimal generator degrees of `(I^[p^e] : I)` for every `e <= e_max`,
/// each row certified by membership and checked against the regularity
/// of the colon ideal.
pub fn colon_degree_scan(ideal: &Ideal, e_max: u32) -> Result<Vec<ColonRow>> {
    let (ideal, _) = prepare(ideal)?;
    (0..=e_max)
        .into_par_iter()
        .map(|e| colon_row(&ideal, e))
        .collect()
}

/// Both scans together.
pub fn full_scan(ideal: &Ideal, e_max: u32) -> Result<ScanReport> {
    let (prepared, homogenized_with) = prepare(ideal)?;
    let (rows, colon) = rayon::join(
        || reg_rows(&prepared, e_max),
        || colon_degree_scan(&prepared, e_max),
    );
    let (rows, colon) = (rows?, colon?);
    Ok(ScanReport {
        p: prepared.ring().characteristic(),
        e_max,
        homogenized_with,
        c: max_ratio(rows.iter().map(|r| r.ratio)),
        k: Some(max_ratio(colon.iter().map(|r| r.ratio))),
        rows,
        colon,
    })
}

/// Combines both scans into a verdict on the scanned range.
pub fn gauge_bound_report(ideal: &Ideal, e_max: u32) -> Result<GaugeBoundReport> {
    let scan = full_scan(ideal, e_max)?;
    let (c, k) = (scan.c, scan.k.unwrap_or(0.0));
    let verdict = if e_max == 0 {
        "inconclusive: only e = 0 was scanned".to_string()
    } else {
        format!(
            "criterion satisfied on scanned range e <= {e_max} with constants (C, K) = ({c:.3}, {k:.3}); finite evidence, not a proof"
        )
    };
    let mut notes = vec![
        "linear growth is asymptotic in p^e; a finite scan cannot establish or refute it".to_string(),
        "gauges are of generators in the polynomial ring; gauges of normal forms on the quotient are upper bounds only".to_string(),
    ];
    if let Some(h) = &scan.homogenized_with {
        notes.push(format!("input was not homogeneous; scanned its homogenization in the extra variable {h}"));
    }
    Ok(GaugeBoundReport {
        scan,
        c,
        k,
        verdict,
        notes,
    })
}

/// Krull dimension of the affine cone `V(I + (g, dg/dx_1, ..., dg/dx_n))`,
/// that is of the part of the singular locus of `R/gR` lying on `V(I)`.
/// Returns -1 when the locus is empty.
pub fn singular_locus_dim(ideal: &Ideal, g: &Polynomial) -> Result<i64> {
    let ring = ideal.ring();
    crate::ring::check_same_ring(ring, g.ring())?;
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    gens.push(g.clone());
    gens.extend((0..ring.arity()).map(|k| g.derivative(k)));
    let j = Ideal::new(ring, gens)?;
    let leads = j.lead_monomials()?;
    Ok(monomial_dimension(ring.arity(), &leads))
}

/// Krull dimension of `R/(m_1, ..., m_r)` for monomials `m_k`: the largest set
/// of variables containing the support of no `m_k`, or -1 for the unit ideal.
pub fn monomial_dimension(arity: usize, monomials: &[Monomial]) -> i64 {
    let supports: Vec<u32> = monomials
        .iter()
        .map(|m| {
            (0..arity)
                .filter(|&k| m.exponent(k) > 0)
                .fold(0u32, |acc, k| acc | 1 << k)
        })
        .collect();
    if supports.contains(&0) {
        return -1;
    }
    (0u32..1 << arity)
        .filter(|&set| supports.iter().all(|&s| s & !set != 0))
        .map(|set| set.count_ones() as i64)
        .max()
        .unwrap_or(0)
}

/// The ring a scan of `ideal` actually runs in.
pub fn scan_ring(ideal: &Ideal) -> Result<Arc<Ring>> {
    Ok(prepare(ideal)?.0.ring().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn xy(p: u64) -> (Arc<Ring>, Polynomial, Polynomial) {
        let r = Ring::new(p, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        (r.clone(), Polynomial::var(&r, 0), Polynomial::var(&r, 1))
    }

    #[test]
    fn principal_colon_is_a_power() {
        let (r, x, _) = xy(2);
        let i = Ideal::new(&r, vec![x]).unwrap();
        let rows = colon_degree_scan(&i, 3).unwrap();
        let degs: Vec<u32> = rows.iter().map(|r| r.max_degree).collect();
        assert_eq!(degs, vec![0, 1, 3, 7]);
        assert!(rows.iter().all(|r| r.certified && r.generator_degrees.len() == 1));
    }

    #[test]
    fn e_zero_collapses_to_the_base_ideal() {
        let (r, x, y) = xy(2);
        let i = Ideal::new(&r, vec![&x * &y]).unwrap();
        let report = full_scan(&i, 2).unwrap();
        let base = regularity(&resolve_quotient(&i).unwrap().betti()).unwrap();
        assert_eq!(report.rows[0].reg, base);
        assert_eq!(report.colon[0].max_degree, 0);
        assert_eq!(report.colon[0].colon_reg, 0);
        // I^[q] + xyR = (xy) for every q, while (x^q y^q : xy) = (x^(q-1) y^(q-1))
        let regs: Vec<i64> = report.rows.iter().map(|r| r.reg).collect();
        assert_eq!(regs, vec![1, 1, 1]);
        let degs: Vec<u32> = report.colon.iter().map(|r| r.max_degree).collect();
        assert_eq!(degs, vec![0, 2, 6]);
    }

    #[test]
    fn non_homogeneous_input_is_homogenized() {
        let (r, x, y) = xy(3);
        let i = Ideal::new(&r, vec![&(&x * &y) - &Polynomial::one(&r)]).unwrap();
        let report = reg_growth_scan(&i, 1).unwrap();
        assert_eq!(report.homogenized_with.as_deref(), Some("h"));
        assert_eq!(scan_ring(&i).unwrap().arity(), 3);
    }

    #[test]
    fn monomial_dimension_counts_free_variables() {
        let m = |e: &[u32]| Monomial::new(e).unwrap();
        assert_eq!(monomial_dimension(3, &[]), 3);
        assert_eq!(monomial_dimension(3, &[m(&[0, 0, 0])]), -1);
        assert_eq!(monomial_dimension(3, &[m(&[1, 1, 0])]), 2);
        assert_eq!(monomial_dimension(3, &[m(&[1, 0, 0]), m(&[0, 1, 1])]), 1);
    }

    #[test]
    fn singular_locus_examples() {
        let (r, x, y) = xy(5);
        // a smooth line meets nothing singular
        let i = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert_eq!(singular_locus_dim(&i, &x).unwrap(), -1);
        // x^2 is singular everywhere on V(x)
        let sq = x.pow(2);
        assert_eq!(singular_locus_dim(&Ideal::new(&r, vec![sq.clone()]).unwrap(), &sq).unwrap(), 1);
        // the node xy is singular at the origin only
        let node = &x * &y;
        assert_eq!(singular_locus_dim(&Ideal::new(&r, vec![node.clone()]).unwrap(), &node).unwrap(), 0);
    }
}
