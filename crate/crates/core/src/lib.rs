//! Exact computations with finite group extensions, cohomology and
//! quasihomomorphisms, plus symbolic arithmetic for a few infinite examples.

pub mod error;
pub mod group;
pub mod lattice;

pub use error::{Error, Result};
pub mod coeff;
pub mod cochain;
pub mod assertion;
pub mod quasihom;
pub mod symbolic;
pub mod extension;
pub mod obstruction;
