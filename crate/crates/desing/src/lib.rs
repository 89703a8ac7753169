//! Constructive resolution of singularities for basic objects over the
//! rationals: order calculus via derivative ideals, the invariant-driven
//! choice of centers, blowups in affine charts, and principalization.

pub mod error;
pub mod charts;
pub mod deltaorder;
pub mod drivers;
pub mod invariants;
pub mod resolver;
pub mod exactpoly;

pub use error::{Error, Result};
