pub mod cli;
pub mod curve;
pub mod error;
pub mod hilbert;
pub mod homology;
pub mod lattice;
pub mod lattice_homology;
pub mod semigroup;
pub mod series;
pub mod spectral;

pub use error::{Error, Result};
