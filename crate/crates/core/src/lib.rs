//! Canonical `H^m`-nonconforming finite elements on `n`-simplices.
//!
//! The element is built from layered face-averaged normal derivatives and a
//! shape space of `P_m` enriched with integrated single-variable bubbles.
//! Unisolvence is certified by an exact rational determinant.

pub mod assembly;
pub mod element;
pub mod error;
pub mod fem_space;
pub mod mesh;
pub mod polycore;
pub mod reports;

pub use error::{Error, Result};
