//! Integer lattices, normal forms and finitely generated abelian groups.

mod group;
mod matrix;
mod normal_form;

pub use group::{cokernel, gale_dual, grading_kernel, same_grading, AbelianGroup, Cokernel, GroupHom, Lattice};
pub use matrix::{ivec, IntMatrix, IntVec};
pub use normal_form::{hermite_normal_form, integer_kernel, lattice_basis, smith_normal_form, Hermite, Smith};
