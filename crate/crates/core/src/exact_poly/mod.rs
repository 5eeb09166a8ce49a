//! Exact rational polynomial arithmetic: Sturm root isolation and the
//! bivariate pseudo-division chain.

mod bipoly;
mod elimination;
mod ratpoly;
mod sturm;

pub use bipoly::{pseudo_divide, BiPoly, PseudoDivision};
pub use elimination::{b1_quintic, eliminate_b1_system, q1, q2, B1Elimination};
pub use ratpoly::{rat, ratio, RatPoly, Rational};
pub use sturm::{
    isolate_and_refine, isolate_roots, sturm_count, sturm_count_nudged, sturm_sequence, RefinedRoot, RootInterval,
};
