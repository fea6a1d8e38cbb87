//! Exact multigraded Hilbert functions and polynomials of filtrations of
//! monomial ideals, with reduction vectors, postulation vectors, complete
//! reduction numbers, Kirby-Mehran complex homology, and executable checks of
//! the correspondence theorems relating them.

pub mod error;
pub mod ideal;

pub use error::{Error, Result};
pub mod filtration;
pub mod hilbert;
pub mod index;
pub mod km;
pub mod postulation;
pub mod reduction;
pub mod region;
pub mod report;
