//! Graded commutative algebra over prime fields: Gröbner bases, Frobenius
//! bracket powers, colon ideals, syzygies, minimal free resolutions and
//! Castelnuovo–Mumford regularity, plus resolutions over hypersurface rings
//! and scans of regularity growth along Frobenius powers.

pub mod cli;
pub mod error;
pub mod frobscan;
pub mod groebner;
pub mod hypersurface;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
