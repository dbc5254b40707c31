//! Support cones, Dickson decompositions and Artin-Schreier roots for
//! generalized power series, in exact arithmetic.

pub mod binom_ideal;
pub mod charp;
pub mod fixtures;
pub mod gapcheck;
pub mod geom;
pub mod linalg;
pub mod num;
pub mod orders;
pub mod par;
pub mod plot;
pub mod registry;
pub mod support;

pub use geom::Cone;
pub use num::{RatVec, Q};
pub use par::Exec;
