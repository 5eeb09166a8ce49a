//! Pre-Schwarzian and Schwarzian derivatives of normalized analytic functions
//! on the unit disk, their weighted sup-norms, the sharp bounds over the
//! univalent class, and the associated radius constants.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact_poly;
pub mod function_kernel;

pub use error::{Error, Result};
pub mod bounds;
pub mod cli;
pub mod norm_engine;
pub mod radius_solver;
