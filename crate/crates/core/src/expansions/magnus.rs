use num_complex::Complex64 as C64;

use super::bch::bch;
use super::series::Series;
use super::{SeriesOperator, SeriesParam};
use crate::algebra::{CyclicSum, OperatorSum};
use crate::error::{Error, Result};
use crate::model::FloquetModel;

pub const MAX_MAGNUS_ORDER: usize = 10;
const HERMITICITY_TOL: f64 = 1e-10;

/// `Ω_0..Ω_{m_max}` with `log U_F = −iτ Σ_m τ^m Ω_m`; independent of the model's `τ`.
pub fn floquet_magnus(model: &FloquetModel, m_max: usize) -> Result<SeriesOperator> {
    if m_max > MAX_MAGNUS_ORDER {
        return Err(Error::InvalidArgument(format!("Magnus order {m_max} exceeds the cap {MAX_MAGNUS_ORDER}")));
    }
    let minus_i = C64::new(0.0, -1.0);
    let h1 = CyclicSum::from_operator_sum(model.h1())?.scale(minus_i);
    let h2 = CyclicSum::from_operator_sum(model.h2())?.scale(minus_i);
    let top = m_max + 1;
    let log = bch(&Series::monomial(h2, 1, top), &Series::monomial(h1, 1, top), top)?;
    let mut orders = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let omega = log.coeff(m + 1).scale(C64::new(0.0, 1.0));
        let residual = omega.anti_hermitian_residual();
        if residual > HERMITICITY_TOL * (1.0 + omega.norm()) {
            return Err(Error::NotHermitian(residual));
        }
        orders.push(omega.to_operator_sum().hermitian_part());
    }
    Ok(SeriesOperator { param: SeriesParam::Tau, orders })
}

/// `‖Ω_m‖ / √(L·2^L)` per order.
pub fn omega_norms(series: &SeriesOperator) -> Vec<f64> {
    series.orders.iter().map(OperatorSum::normalized_norm).collect()
}

/// `H_pre = Σ_{k≤m} τ^k Ω_k`.
pub fn h_pre(series: &SeriesOperator, m: usize, tau: f64) -> Result<OperatorSum> {
    if m >= series.orders.len() {
        return Err(Error::InvalidArgument(format!(
            "order {m} not available (series has {} orders)",
            series.orders.len()
        )));
    }
    let len = series.orders[0].len();
    let mut out = OperatorSum::zero(len)?;
    let mut p = 1.0;
    for om in &series.orders[..=m] {
        out = out.try_add(&(om * p))?;
        p *= tau;
    }
    Ok(out)
}
