//! Search for eigen-quasiconserved observables over a local translation-invariant basis.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};

use crate::algebra::{pattern_sum, Letter, OperatorSum};
use crate::ed::{DiagonalProjection, FloquetSpectrum};
use crate::error::{Error, Result};

const GRAM_TOL: f64 = 1e-12;
/// Largest tolerated `‖Λ − Λᵀ‖_F` before symmetrization.
pub const ASYMMETRY_TOL: f64 = 1e-8;
const SPAN_TOL: f64 = 1e-10;

/// Normalized translation sums `Σ_j T^j (S_{α1} ⋯ S_{αr})` with `α1, αr ≠ I` and `r ≤ r_c`.
#[derive(Clone, Debug)]
pub struct LocalBasis {
    pub len: usize,
    pub r_c: usize,
    pub patterns: Vec<Vec<Letter>>,
    pub members: Vec<OperatorSum>,
}

fn patterns_of_range(r: usize) -> Vec<Vec<Letter>> {
    const ENDS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
    const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    if r == 1 {
        return ENDS.iter().map(|&l| vec![l]).collect();
    }
    let mut inner: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..r - 2 {
        inner = inner.into_iter().flat_map(|p| ALL.iter().map(move |&l| [p.clone(), vec![l]].concat())).collect();
    }
    let mut out = Vec::new();
    for &a in &ENDS {
        for mid in &inner {
            for &b in &ENDS {
                let mut p = vec![a];
                p.extend_from_slice(mid);
                p.push(b);
                out.push(p);
            }
        }
    }
    out
}

/// Enumerates the basis by range, then site-major with `I < X < Y < Z`.
pub fn build_basis(len: usize, r_c: usize) -> Result<LocalBasis> {
    if r_c == 0 {
        return Err(Error::InvalidArgument("r_c must be at least 1".into()));
    }
    if len < 2 * r_c + 2 {
        return Err(Error::InvalidArgument(format!("basis with r_c = {r_c} needs L >= {}, got {len}", 2 * r_c + 2)));
    }
    let patterns: Vec<Vec<Letter>> = (1..=r_c).flat_map(patterns_of_range).collect();
    let members = patterns
        .iter()
        .map(|p| {
            let op = pattern_sum(p, len)?;
            let n = op.norm();
            Ok(&op * (1.0 / n))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = LocalBasis { len, r_c, patterns, members };
    let g = basis.gram_matrix()?;
    for ((i, j), v) in g.indexed_iter() {
        let target = if i == j { 1.0 } else { 0.0 };
        if (v - target).abs() > GRAM_TOL {
            return Err(Error::InvalidArgument(format!("basis members {i} and {j} are not orthonormal ({v:.3e})")));
        }
    }
    Ok(basis)
}

impl LocalBasis {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn pattern_label(&self, i: usize) -> String {
        self.patterns[i].iter().map(|l| l.as_char()).collect()
    }

    /// `Tr(O_μ O_ν)` over the full chain.
    pub fn gram_matrix(&self) -> Result<Array2<f64>> {
        let n = self.members.len();
        let mut g = Array2::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let v = self.members[i].hs_inner(&self.members[j])?.re;
                g[[i, j]] = v;
                g[[j, i]] = v;
            }
        }
        Ok(g)
    }

    /// Real coefficients `c_μ = Tr(O_μ A)` in the basis.
    pub fn coefficients(&self, a: &OperatorSum) -> Result<Array1<f64>> {
        self.members.iter().map(|m| Ok(m.hs_inner(a)?.re)).collect::<Result<Vec<_>>>().map(Array1::from)
    }

    /// `Σ_μ c_μ O_μ`.
    pub fn combine(&self, coeffs: &[f64]) -> Result<OperatorSum> {
        self.members.iter().zip(coeffs).try_fold(OperatorSum::zero(self.len)?, |acc, (m, &c)| acc.try_add(&(m * c)))
    }
}

/// Infinite-time pair correlations over a local basis and their eigen-observables.
#[derive(Clone, Debug)]
pub struct LambdaMatrix {
    pub basis: LocalBasis,
    /// symmetrized entries
    pub matrix: Array2<f64>,
    /// `‖Λ − Λᵀ‖_F` before symmetrization
    pub asymmetry: f64,
    /// descending
    pub eigenvalues: Vec<f64>,
    /// basis coefficients of the eigen-observables, one column per eigenvalue
    pub eigenvectors: Array2<f64>,
}

/// `Λ_μν = ⟨O_μ(∞) O_ν⟩` for every basis pair.
pub fn lambda_matrix(basis: &LocalBasis, spectrum: &FloquetSpectrum) -> Result<LambdaMatrix> {
    if basis.len != spectrum.len() {
        return Err(Error::LengthMismatch { left: basis.len, right: spectrum.len() });
    }
    let projections = basis.members.iter().map(|m| DiagonalProjection::new(m, spectrum)).collect::<Result<Vec<_>>>()?;
    let n = basis.size();
    let mut raw = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            raw[[i, j]] = projections[i].overlap(&projections[j]);
        }
    }
    lambda_from_raw(basis.clone(), raw)
}

fn lambda_from_raw(basis: LocalBasis, raw: Array2<f64>) -> Result<LambdaMatrix> {
    let asymmetry = (&raw - &raw.t()).iter().map(|v| v * v).sum::<f64>().sqrt();
    if asymmetry > ASYMMETRY_TOL {
        return Err(Error::Asymmetric(asymmetry));
    }
    let matrix = (&raw + &raw.t()) * 0.5;
    let (e, v) = matrix.eigh(UPLO::Lower)?;
    let n = e.len();
    let eigenvalues: Vec<f64> = (0..n).rev().map(|i| e[i]).collect();
    let mut eigenvectors = Array2::<f64>::zeros((n, n));
    for (dst, src) in (0..n).rev().enumerate() {
        eigenvectors.column_mut(dst).assign(&v.column(src));
        // fix the arbitrary sign: largest-magnitude coefficient positive
        let mut col = eigenvectors.column_mut(dst);
        let lead = col.iter().copied().fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if lead < 0.0 {
            col.mapv_inplace(|x| -x);
        }
    }
    Ok(LambdaMatrix { basis, matrix, asymmetry, eigenvalues, eigenvectors })
}

impl LambdaMatrix {
    /// `𝓔_k` as an operator, `k` counted from the largest eigenvalue.
    pub fn eigen_observable(&self, k: usize) -> Result<OperatorSum> {
        if k >= self.eigenvalues.len() {
            return Err(Error::InvalidArgument(format!("eigen-observable {k} outside 0..{}", self.eigenvalues.len())));
        }
        let col = self.eigenvectors.column(k).to_vec();
        self.basis.combine(&col)
    }

    /// The `top_k` largest eigenpairs `(λ_k, 𝓔_k)`.
    pub fn eigen_observables(&self, top_k: usize) -> Result<Vec<(f64, OperatorSum)>> {
        (0..top_k.min(self.eigenvalues.len())).map(|k| Ok((self.eigenvalues[k], self.eigen_observable(k)?))).collect()
    }

    /// `Σ_μ λ_μ ⟨O 𝓔_μ⟩⟨𝓔_μ O'⟩` over the full eigenset.
    pub fn decompose_correlation(&self, o: &OperatorSum, o2: &OperatorSum) -> Result<f64> {
        let ca = self.span_coefficients(o)?;
        let cb = self.span_coefficients(o2)?;
        let pa = self.eigenvectors.t().dot(&ca);
        let pb = self.eigenvectors.t().dot(&cb);
        Ok(self.eigenvalues.iter().zip(pa.iter().zip(pb.iter())).map(|(l, (a, b))| l * a * b).sum())
    }

    /// Normalized basis coefficients, failing when the basis misses part of `o`.
    fn span_coefficients(&self, o: &OperatorSum) -> Result<Array1<f64>> {
        let n = o.norm();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        if o.anti_hermitian_residual() > 1e-10 * n {
            return Err(Error::NotHermitian(o.anti_hermitian_residual()));
        }
        let c = self.basis.coefficients(o)? / n;
        let missing = 1.0 - c.dot(&c);
        if missing > SPAN_TOL {
            return Err(Error::OutsideSpan(missing));
        }
        Ok(c)
    }
}
