//! Mustafin degenerations of flag varieties over Q(t).
//!
//! The crate builds the degeneration ideal of a flag type and a finite set
//! of lattice classes, extracts its special fiber, splits the fiber into
//! irreducible components and labels each component as primary, secondary,
//! mixed or unresolved.

pub mod algebra;
pub mod cli;
pub mod components;
pub mod building;
pub mod degeneration;
pub mod error;

pub use error::{Error, ParseError, Result};
