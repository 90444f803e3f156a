//! Rational polyhedral cones, quasifans and fans.

mod cone;
mod dd;
mod fan;

pub use cone::{ray_primitive, Cone};
pub use fan::{validate_quasifan, Fan, Quasifan};
