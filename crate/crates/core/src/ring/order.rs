//! Monomial orders. Variables are prioritised by index: `x_0 > x_1 > ...`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `block` variables: grevlex on the
    /// block, ties broken by grevlex on the remaining variables.
    Elimination { block: usize },
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a.exponents(), b.exponents(), a.degree(), b.degree()),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Elimination { block } => {
                let k = block.min(a.arity());
                let (ha, ta) = a.exponents().split_at(k);
                let (hb, tb) = b.exponents().split_at(k);
                let da: u32 = ha.iter().map(|&e| e as u32).sum();
                let db: u32 = hb.iter().map(|&e| e as u32).sum();
                grevlex(ha, hb, da, db).then_with(|| {
                    grevlex(ta, tb, a.degree() - da, b.degree() - db)
                })
            }
        }
    }

    /// Whether the order compares total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination { block } => format!("elim:{block}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::Grevlex),
            "lex" => Some(MonomialOrder::Lex),
            _ => s
                .strip_prefix("elim:")
                .and_then(|k| k.parse().ok())
                .map(|block| MonomialOrder::Elimination { block }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[inline]
fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Smaller exponent in the last differing variable wins.
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Compares two monomials, rejecting arity mismatches.
pub fn monomial_compare(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::Usage(format!(
            "monomials of arity {} and {} are not comparable",
            a.arity(),
            b.arity()
        )));
    }
    Ok(order.compare(a, b))
}
