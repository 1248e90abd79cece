//! Exact arithmetic: the prime field, monomials, monomial orders and
//! polynomials, together with gauges and Frobenius powers.

mod field;
mod monomial;
mod order;
mod poly;

pub use field::{PrimeField, PrimeFieldElement, MAX_PRIME};
pub use monomial::{Monomial, MAX_VARS};
pub use order::{monomial_compare, MonomialOrder};
pub use poly::{check_same_ring, poly_arith, ArithOp, Gauge, Polynomial, Ring};
