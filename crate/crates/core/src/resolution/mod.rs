//! Graded free modules, module Gröbner bases, Schreyer syzygies, minimal
//! free resolutions, Betti tables and Castelnuovo–Mumford regularity.

mod betti;
mod free_module;
mod resolve;
mod syzygy;

pub use betti::{minimal_generator_degrees, regularity, BettiColumn, BettiTable};
pub(crate) use free_module::coords_to_vector;
pub use free_module::{FreeVector, GradedFreeModule, GradedMap};
pub use resolve::{
    free_resolution, free_resolution_with, minimalize, minimalize_with, resolve_quotient,
    schreyer_resolution, Resolution,
};
pub(crate) use syzygy::{map_from_vectors, sort_by_degree};
pub use syzygy::{module_gb, prune_columns, syzygies, syzygies_of_vectors, syzygies_with, Submodule};
