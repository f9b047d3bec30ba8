//! Rotating-frame expansion of the emergent dipolar order of the kicked model.
//!
//! With `c = i h τ Z` at order ε and `W = −iτ H1` at order ε², the unknown
//! generators `S = Σ ε^j S_j` are fixed order by order so that
//! `log(e^{c} e^{S} e^{−c} e^{W} e^{−S}) = −iτ Σ ε^j D_j` with `[Z, D_j] = 0`.

use num_complex::Complex64 as C64;

use super::bch::bch;
use super::series::Series;
use super::{SeriesOperator, SeriesParam};
use crate::algebra::{collective, Axis, CyclicSum, OperatorSum};
use crate::error::{Error, Result};
use crate::model::{FloquetModel, ModelKind};

pub const MAX_DPRE_ORDER: usize = 8;
const HERMITICITY_TOL: f64 = 1e-10;

/// Generators `S_j`, rotated-frame terms `D_j` and the known parts `h_j`, all indexed by ε order.
#[derive(Clone, Debug)]
pub struct DpreExpansion {
    pub s: SeriesOperator,
    pub d: SeriesOperator,
    pub h: Vec<OperatorSum>,
    s_cyclic: Series,
    d_cyclic: Series,
}

impl DpreExpansion {
    pub fn j_max(&self) -> usize {
        self.d.orders.len() - 1
    }

    /// `e^{−S} (Σ_j D_j) e^{S}` truncated at ε^`order`.
    pub fn d_pre(&self, order: usize) -> Result<OperatorSum> {
        check_order(order, self.j_max())?;
        Ok(conjugate_cyclic(&self.d_cyclic.truncate(order), &self.s_cyclic, order)?
            .evaluate(1.0)
            .to_operator_sum()
            .hermitian_part())
    }

    /// `D_pre / ‖D_pre‖`.
    pub fn d_pre_normalized(&self, order: usize) -> Result<OperatorSum> {
        normalize(self.d_pre(order)?)
    }

    /// ε-graded terms of `e^{−S} D e^{S}`, orders `0..=order`.
    pub fn d_pre_terms(&self, order: usize) -> Result<Vec<OperatorSum>> {
        check_order(order, self.j_max())?;
        let c = conjugate_cyclic(&self.d_cyclic.truncate(order), &self.s_cyclic, order)?;
        Ok(c.coeffs().iter().map(|t| t.to_operator_sum().hermitian_part()).collect())
    }

    /// Rotated-frame `D = Σ_{j≤order} D_j` and generator `S = Σ_{j<order} S_j` at ε = 1.
    ///
    /// Conjugating `D` by the untruncated `e^{S}` resums the frame change;
    /// see [`crate::ed::DiagonalProjection::conjugated`].
    pub fn frame(&self, order: usize) -> Result<(OperatorSum, OperatorSum)> {
        check_order(order, self.j_max())?;
        let d = self.d_cyclic.truncate(order).evaluate(1.0).to_operator_sum().hermitian_part();
        let s = self.s_cyclic.truncate(order.saturating_sub(1)).evaluate(1.0).to_operator_sum().anti_hermitian_part();
        Ok((d, s))
    }

    /// `e^{−S} Z e^{S}` truncated at ε^`order`.
    pub fn z_pre(&self, order: usize) -> Result<OperatorSum> {
        check_order(order, self.j_max())?;
        let z = CyclicSum::from_operator_sum(&collective(Axis::Z, self.s_cyclic.len())?)?;
        let zs = Series::monomial(z, 0, order);
        Ok(conjugate_cyclic(&zs, &self.s_cyclic, order)?.evaluate(1.0).to_operator_sum().hermitian_part())
    }
}

fn check_order(order: usize, j_max: usize) -> Result<()> {
    if order > j_max {
        Err(Error::InvalidArgument(format!("order {order} exceeds the expansion order {j_max}")))
    } else {
        Ok(())
    }
}

fn normalize(a: OperatorSum) -> Result<OperatorSum> {
    let n = a.norm();
    if n == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(&a * (1.0 / n))
}

/// `e^{c} S e^{−c}` for `c = i·phase·Z`, using `[Z, S_q] = q S_q` on every coherence component.
fn rotate_by_z(s: &Series, phase: f64, max_order: usize) -> Result<Series> {
    let mut out = Series::zero(s.len(), max_order)?;
    for (j, sj) in s.coeffs().iter().enumerate() {
        if sj.is_zero() || j > max_order {
            continue;
        }
        for (q, part) in sj.coherence_decompose() {
            let x = C64::new(0.0, phase * q as f64);
            let mut coef = C64::new(1.0, 0.0);
            for n in 0..=max_order - j {
                if n > 0 {
                    coef *= x / n as f64;
                }
                out.add_assign_scaled(&Series::monomial(part.scale(coef), j + n, max_order), C64::new(1.0, 0.0));
                if q == 0 {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `e^{−S} A e^{S} = Σ_n ad_{−S}^n A / n!` with ε-order truncation.
pub(crate) fn conjugate_cyclic(a: &Series, s: &Series, order: usize) -> Result<Series> {
    let a = a.truncate(order);
    let minus_s = s.truncate(order).scale(C64::new(-1.0, 0.0));
    if !minus_s.coeff(0).is_zero() {
        return Err(Error::InvalidArgument("generator must vanish at order zero".into()));
    }
    let mut out = a.clone();
    let mut term = a;
    for n in 1..=order {
        term = minus_s.commutator(&term)?.scale(C64::new(1.0 / n as f64, 0.0));
        if term.is_zero() {
            break;
        }
        out.add_assign_scaled(&term, C64::new(1.0, 0.0));
    }
    Ok(out)
}

fn to_cyclic_series(s: &SeriesOperator) -> Result<Series> {
    let len = s.orders.first().map(OperatorSum::len).ok_or_else(|| Error::InvalidArgument("empty series".into()))?;
    let mut out = Series::zero(len, s.orders.len() - 1)?;
    for (k, op) in s.orders.iter().enumerate() {
        out.set_coeff(k, CyclicSum::from_operator_sum(op)?);
    }
    Ok(out)
}

/// `e^{−S} A e^{S}` truncated at ε^`order`, with `A` at order zero.
pub fn conjugate_series(a: &OperatorSum, s: &SeriesOperator, order: usize) -> Result<OperatorSum> {
    let sc = to_cyclic_series(s)?;
    let ac = Series::monomial(CyclicSum::from_operator_sum(a)?, 0, order);
    Ok(conjugate_cyclic(&ac, &sc, order)?.evaluate(1.0).to_operator_sum())
}

/// Builds `S_1..S_{j_max−1}` and `D_1..D_{j_max}` for a kicked model.
pub fn dpre_expand(model: &FloquetModel, j_max: usize) -> Result<DpreExpansion> {
    if model.kind != ModelKind::Kdm {
        return Err(Error::InvalidArgument("the rotating-frame expansion is defined for the kicked model".into()));
    }
    if model.h == 0.0 {
        return Err(Error::InvalidArgument("field h must be nonzero".into()));
    }
    if model.tau <= 0.0 {
        return Err(Error::InvalidArgument("tau must be positive".into()));
    }
    if j_max == 0 || j_max > MAX_DPRE_ORDER {
        return Err(Error::InvalidArgument(format!("order {j_max} outside 1..={MAX_DPRE_ORDER}")));
    }
    let len = model.len;
    let (h, tau) = (model.h, model.tau);
    let w = CyclicSum::from_operator_sum(model.h1())?.scale(C64::new(0.0, -tau));

    let mut s = Series::zero(len, j_max)?;
    let mut d = Series::zero(len, j_max)?;
    let mut hs = vec![OperatorSum::zero(len)?];
    for j in 1..=j_max {
        let w_series = Series::monomial(w.clone(), 2, j);
        let s_known = s.truncate(j);
        let rotated = rotate_by_z(&s_known, h * tau, j)?;
        let inner = bch(&rotated, &w_series, j)?;
        let lhs = bch(&inner, &s_known.scale(C64::new(-1.0, 0.0)), j)?;
        let hj = lhs.coeff(j).clone();
        let mut s_next = CyclicSum::zero(len)?;
        for (q, part) in hj.coherence_decompose() {
            if q == 0 {
                d.set_coeff(j, part.scale(C64::new(0.0, 1.0 / tau)));
            } else {
                s_next.add_assign_scaled(&part, C64::new(0.0, 1.0 / (h * q as f64 * tau)));
            }
        }
        let residual = d.coeff(j).anti_hermitian_residual();
        if residual > HERMITICITY_TOL * (1.0 + d.coeff(j).norm()) {
            return Err(Error::NotHermitian(residual));
        }
        let residual = s_next.hermitian_residual();
        if residual > HERMITICITY_TOL * (1.0 + s_next.norm()) {
            return Err(Error::NotAntiHermitian(residual));
        }
        if j >= 2 && j - 1 < j_max {
            s.set_coeff(j - 1, s_next);
        }
        hs.push(hj.to_operator_sum());
    }
    // the last S_{j_max} slot is never determined at this order
    let s_ops = SeriesOperator {
        param: SeriesParam::Epsilon,
        orders: s.coeffs()[..j_max].iter().map(|c| c.to_operator_sum().anti_hermitian_part()).collect(),
    };
    let d_ops = SeriesOperator {
        param: SeriesParam::Epsilon,
        orders: d.coeffs().iter().map(|c| c.to_operator_sum().hermitian_part()).collect(),
    };
    let s_cyclic = s.truncate(j_max.saturating_sub(1));
    Ok(DpreExpansion { s: s_ops, d: d_ops, h: hs, s_cyclic, d_cyclic: d })
}
