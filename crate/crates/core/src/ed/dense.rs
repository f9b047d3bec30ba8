use ndarray::{Array2, ShapeBuilder};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

use super::sparse::{flip_groups, group_amplitude, SparseMatrix};
use crate::algebra::OperatorSum;
use crate::error::{Error, Result};
use crate::model::FloquetModel;

/// Dense matrices on the full `2^L` space; site `j` is bit `j` of the basis index, bit 0 is spin up.
pub type DenseOperator = Array2<C64>;

/// Default largest chain length accepted by the dense routines.
pub const DENSE_CAP: usize = 14;

const HERMITIAN_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;

pub(crate) fn check_cap(len: usize, cap: usize) -> Result<()> {
    if len > cap {
        Err(Error::DimensionCap { len, cap })
    } else {
        Ok(())
    }
}

/// Full-space sparse image of `a`.
pub fn to_sparse(a: &OperatorSum) -> Result<SparseMatrix> {
    check_cap(a.len(), DENSE_CAP)?;
    let dim = 1usize << a.len();
    let groups = flip_groups(a);
    let mut entries = Vec::with_capacity(dim * groups.len());
    for col in 0..dim as u64 {
        for (x, zs) in &groups {
            let v = group_amplitude(zs, col);
            if v != C64::new(0.0, 0.0) {
                entries.push(((col ^ x) as u32, col as u32, v));
            }
        }
    }
    Ok(SparseMatrix::from_entries(dim, entries))
}

pub fn to_dense(a: &OperatorSum) -> Result<DenseOperator> {
    to_dense_capped(a, DENSE_CAP)
}

pub fn to_dense_capped(a: &OperatorSum, cap: usize) -> Result<DenseOperator> {
    check_cap(a.len(), cap)?;
    Ok(to_sparse(a)?.to_dense())
}

/// Largest entry of `|A − A†|`.
pub fn hermitian_residual(a: &DenseOperator) -> f64 {
    let n = a.nrows();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            r = r.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    r
}

/// Largest entry of `|U†U − I|`.
pub fn unitarity_residual(u: &DenseOperator) -> f64 {
    let g = u.t().mapv(|z| z.conj()).dot(u);
    let mut r: f64 = 0.0;
    for ((i, j), v) in g.indexed_iter() {
        let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        r = r.max((v - target).norm());
    }
    r
}

pub(crate) fn check_unitary(u: &DenseOperator) -> Result<()> {
    let r = unitarity_residual(u);
    if r > UNITARY_TOL {
        Err(Error::NotUnitary(r))
    } else {
        Ok(())
    }
}

pub(crate) fn check_hermitian(h: &DenseOperator) -> Result<()> {
    let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let r = hermitian_residual(h);
    if r > HERMITIAN_TOL * scale {
        Err(Error::NotHermitian(r))
    } else {
        Ok(())
    }
}

/// Hermitian eigendecomposition, ascending.
///
/// The input is copied to column-major layout first; row-major complex input
/// returns conjugated eigenvectors from the LAPACK wrapper.
pub(crate) fn eigh_hermitian(h: &Array2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let mut f = Array2::<C64>::zeros(h.raw_dim().f());
    f.assign(h);
    let (e, v) = f.eigh(UPLO::Lower)?;
    Ok((e.to_vec(), v))
}

/// `V diag(f(E)) V†`.
pub(crate) fn reassemble(v: &Array2<C64>, phases: &[C64]) -> Array2<C64> {
    let mut scaled = v.clone();
    for (mut col, &p) in scaled.columns_mut().into_iter().zip(phases) {
        col.mapv_inplace(|z| z * p);
    }
    scaled.dot(&v.t().mapv(|z| z.conj()))
}

/// `e^{−iHt}` from the Hermitian eigendecomposition of `H`.
pub fn propagator(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    check_hermitian(h)?;
    let (e, v) = eigh_hermitian(h)?;
    let phases: Vec<C64> = e.iter().map(|&x| C64::from_polar(1.0, -x * t)).collect();
    Ok(reassemble(&v, &phases))
}

/// `U_F = e^{−iH2τ} e^{−iH1τ}` on the full space.
pub fn floquet_unitary(model: &FloquetModel) -> Result<DenseOperator> {
    let u1 = propagator(&to_dense(model.h1())?, model.tau)?;
    let u2 = propagator(&to_dense(model.h2())?, model.tau)?;
    Ok(u2.dot(&u1))
}
