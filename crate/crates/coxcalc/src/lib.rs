//! Exact combinatorics of Cox rings.
//!
//! The crate works with finitely generated graded algebras `R = K[T]/I`
//! graded by a finitely generated abelian group `K`, and with the combinatorial
//! data attached to them: orbit cones, GIT fans, bunches, the resulting
//! varieties and their divisor theory, and modifications of the ambient toric
//! variety. All arithmetic is exact.

pub mod bunched;
pub mod cones;
pub mod error;
pub mod geometry;
pub mod gitfan;
pub mod graded;
pub mod guard;
pub mod lattice;
pub mod linalg;
pub mod modifications;
pub mod orbit;
pub mod poly;

pub use error::{Error, Result};
