//! Normal forms, Buchberger's algorithm and ideal operations: sums, bracket
//! powers, colon ideals, intersections, homogenization and membership.

pub(crate) mod engine;
mod ideal;

pub use engine::{degree_cap_for, set_degree_cap_override, PairStrategy, DEFAULT_GUARD_FACTOR};
pub(crate) use ideal::ctx_of;
pub use ideal::{
    bracket_power, buchberger, buchberger_with, colon, colon_element, dehomogenize, homogenize,
    ideal_membership, intersect, minimal_generators, normal_form, s_polynomial, Ideal,
};
