//! Analytic functions on the unit disk and their (pre-)Schwarzian derivatives.

mod analytic;
mod series;

pub use analytic::{dilate, pre_schwarzian, schwarzian, AnalyticFunction, DerivativeKind, Jet};
pub use series::PowerSeries;

/// Default truncation order for series computations.
pub const DEFAULT_ORDER: usize = 64;
