//! Brute-force reference computations for monomial ideals, numerical
//! semigroup ideals and Newton polygons.
//!
//! Everything here works by enumerating lattice points or values below an
//! explicit bound. Nothing is shared with the engine, so agreement between
//! the two is evidence for both.

pub mod instances;
pub mod lattice;
pub mod newton;
pub mod values;
