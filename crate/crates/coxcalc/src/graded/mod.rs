//! Graded presentations, the complexity one construction and its criteria.

mod apdata;
mod presentation;
mod shape;

pub use apdata::{build_rap, continued_fraction_numerator, cox_ring_complexity_one, ow_isotropy_orders, recognize_complexity_one, ApData};
pub use presentation::GradedPresentation;
pub use shape::{MonomialSystem, MAX_VARS};
