//! Symbolic Floquet–Magnus and rotating-frame expansions.

mod bch;
mod dpre;
mod magnus;
mod series;

pub use bch::bch;
pub use dpre::{conjugate_series, dpre_expand, DpreExpansion, MAX_DPRE_ORDER};
pub use magnus::{floquet_magnus, h_pre, omega_norms, MAX_MAGNUS_ORDER};
pub use series::Series;

use crate::algebra::OperatorSum;

/// Which small parameter indexes the orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesParam {
    Tau,
    Epsilon,
}

/// Operator-valued coefficients of a power series; entry `m` multiplies the `m`-th power.
#[derive(Clone, Debug)]
pub struct SeriesOperator {
    pub param: SeriesParam,
    pub orders: Vec<OperatorSum>,
}
