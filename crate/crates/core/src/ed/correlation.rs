use std::fmt::Write as _;

use ndarray::{Array2, Zip};
use num_complex::Complex64 as C64;

use super::dense::propagator;
use super::spectrum::{model_spectrum, FloquetSpectrum, Method};
use crate::algebra::OperatorSum;
use crate::error::{Error, Result};
use crate::model::FloquetModel;

fn check_observable(op: &OperatorSum, len: usize) -> Result<f64> {
    if op.len() != len {
        return Err(Error::LengthMismatch { left: len, right: op.len() });
    }
    let n = op.norm();
    if n == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let r = op.anti_hermitian_residual();
    if r > 1e-10 * n {
        return Err(Error::NotHermitian(r));
    }
    Ok(n)
}

/// Returns `iS` after checking that `S` is anti-Hermitian.
fn check_generator(generator: &OperatorSum, len: usize) -> Result<OperatorSum> {
    if generator.len() != len {
        return Err(Error::LengthMismatch { left: len, right: generator.len() });
    }
    let r = generator.hermitian_residual();
    if r > 1e-10 * (1.0 + generator.norm()) {
        return Err(Error::NotAntiHermitian(r));
    }
    Ok(generator * C64::new(0.0, 1.0))
}

/// `e^{−S} O e^{S}` in block `b`, with `e^{S} = e^{−i(iS)}`.
fn conjugated_block(op: &OperatorSum, i_s: &OperatorSum, spectrum: &FloquetSpectrum, b: usize) -> Result<Array2<C64>> {
    let layout = &spectrum.layout;
    let e_s = propagator(&layout.block_operator(i_s, b)?.to_dense(), 1.0)?;
    let a = layout.block_operator(op, b)?.to_dense();
    Ok(e_s.t().mapv(|z| z.conj()).dot(&a).dot(&e_s))
}

fn adjoint(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

/// An observable written in the Floquet eigenbasis, one matrix `V_b† O V_b` per block.
#[derive(Clone, Debug)]
pub struct EigenbasisOperator {
    blocks: Vec<Array2<C64>>,
    norm: f64,
}

impl EigenbasisOperator {
    pub fn new(op: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<Self> {
        let norm = check_observable(op, spectrum.len())?;
        let blocks = spectrum
            .blocks
            .iter()
            .enumerate()
            .map(|(b, blk)| {
                let w = spectrum.layout.block_operator(op, b)?.matmul(blk.vectors.view());
                Ok(adjoint(&blk.vectors).dot(&w))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenbasisOperator { blocks, norm })
    }

    /// `e^{−S} O e^{S}` with the conjugation done exactly.
    pub fn conjugated(op: &OperatorSum, generator: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<Self> {
        let norm = check_observable(op, spectrum.len())?;
        let i_s = check_generator(generator, spectrum.len())?;
        let blocks = spectrum
            .blocks
            .iter()
            .enumerate()
            .map(|(b, blk)| Ok(adjoint(&blk.vectors).dot(&conjugated_block(op, &i_s, spectrum, b)?).dot(&blk.vectors)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenbasisOperator { blocks, norm })
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }
}

/// Cluster blocks `⟨a|O|b⟩`, `a, b` in a common degeneracy cluster, flattened row-major.
#[derive(Clone, Debug)]
pub struct DiagonalProjection {
    entries: Vec<C64>,
    /// cluster sizes, in the same order as `entries`
    sizes: Vec<usize>,
    norm: f64,
}

impl DiagonalProjection {
    pub fn new(op: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<Self> {
        let norm = check_observable(op, spectrum.len())?;
        let images = (0..spectrum.blocks.len())
            .map(|b| Ok(spectrum.layout.block_operator(op, b)?.matmul(spectrum.blocks[b].vectors.view())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images(&images, spectrum, norm))
    }

    /// Projection of `e^{−S} O e^{S}` for an anti-Hermitian generator `S`, conjugated exactly per block.
    pub fn conjugated(op: &OperatorSum, generator: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<Self> {
        let norm = check_observable(op, spectrum.len())?;
        let i_s = check_generator(generator, spectrum.len())?;
        let images = (0..spectrum.blocks.len())
            .map(|b| Ok(conjugated_block(op, &i_s, spectrum, b)?.dot(&spectrum.blocks[b].vectors)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_images(&images, spectrum, norm))
    }

    /// `images[b] = O_b V_b` in block coordinates.
    fn from_images(images: &[Array2<C64>], spectrum: &FloquetSpectrum, norm: f64) -> Self {
        let mut entries = Vec::with_capacity(spectrum.dim());
        let mut sizes = Vec::with_capacity(spectrum.num_clusters());
        for (blk, w) in spectrum.blocks.iter().zip(images) {
            for cluster in &blk.clusters {
                sizes.push(cluster.len());
                for &a in cluster {
                    let va = blk.vectors.column(a);
                    for &c in cluster {
                        let wc = w.column(c);
                        entries.push(va.iter().zip(wc.iter()).map(|(x, y)| x.conj() * y).sum());
                    }
                }
            }
        }
        DiagonalProjection { entries, sizes, norm }
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `Σ_c Σ_{a,b∈c} Õ_ab Õ'_ba / (‖O‖‖O'‖)`, real part.
    pub fn overlap(&self, other: &DiagonalProjection) -> f64 {
        let mut s = 0.0;
        let mut off = 0;
        for &m in &self.sizes {
            if m == 1 {
                s += (self.entries[off] * other.entries[off]).re;
            } else {
                for a in 0..m {
                    for b in 0..m {
                        s += (self.entries[off + a * m + b] * other.entries[off + b * m + a]).re;
                    }
                }
            }
            off += m * m;
        }
        s / (self.norm * other.norm)
    }
}

/// Infinite-time average `⟨O(∞) O'⟩` from the block-diagonal part in the Floquet eigenbasis.
pub fn infinite_time_corr(o: &OperatorSum, o2: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<f64> {
    let a = DiagonalProjection::new(o, spectrum)?;
    let b = DiagonalProjection::new(o2, spectrum)?;
    Ok(a.overlap(&b))
}

/// `⟨A(∞) A⟩` for `A = e^{−S} O e^{S}`, with the conjugation done exactly on the dense blocks.
pub fn conjugated_autocorr(o: &OperatorSum, generator: &OperatorSum, spectrum: &FloquetSpectrum) -> Result<f64> {
    let p = DiagonalProjection::conjugated(o, generator, spectrum)?;
    Ok(p.overlap(&p))
}

/// `Tr[U^n O U^{−n} O'] / (‖O‖‖O'‖)` for `n = 0..=n_max`, complex.
pub fn correlation_values(
    o: &OperatorSum,
    o2: &OperatorSum,
    spectrum: &FloquetSpectrum,
    n_max: usize,
) -> Result<Vec<C64>> {
    let a = EigenbasisOperator::new(o, spectrum)?;
    let b = EigenbasisOperator::new(o2, spectrum)?;
    eigenbasis_correlation(&a, &b, spectrum, n_max)
}

/// [`correlation_values`] for observables already in the eigenbasis of `spectrum`.
pub fn eigenbasis_correlation(
    a: &EigenbasisOperator,
    b: &EigenbasisOperator,
    spectrum: &FloquetSpectrum,
    n_max: usize,
) -> Result<Vec<C64>> {
    let nblocks = spectrum.blocks.len();
    if a.blocks.len() != nblocks || b.blocks.len() != nblocks {
        return Err(Error::InvalidArgument("observable blocks do not match the spectrum".into()));
    }
    let mut out = vec![C64::new(0.0, 0.0); n_max + 1];
    for (blk, (oa, ob)) in spectrum.blocks.iter().zip(a.blocks.iter().zip(&b.blocks)) {
        // F_ab = Õ_ab Õ'_ba
        let mut f = oa.clone();
        Zip::from(&mut f).and(&ob.t()).for_each(|x, &y| *x *= y);
        let step: Vec<C64> = blk.phases.iter().map(|&t| C64::from_polar(1.0, -t)).collect();
        let mut u = vec![C64::new(1.0, 0.0); step.len()];
        for value in out.iter_mut() {
            let mut acc = C64::new(0.0, 0.0);
            for (i, row) in f.rows().into_iter().enumerate() {
                let inner: C64 = row.iter().zip(&u).map(|(x, ub)| x * ub.conj()).sum();
                acc += u[i] * inner;
            }
            *value += acc;
            for (ui, si) in u.iter_mut().zip(&step) {
                *ui *= si;
            }
        }
    }
    let scale = a.norm * b.norm;
    Ok(out.into_iter().map(|z| z / scale).collect())
}

/// Stroboscopic autocorrelation data for one observable pair.
#[derive(Clone, Debug)]
pub struct CorrelationSeries {
    pub model: String,
    pub left: String,
    pub right: String,
    pub values: Vec<f64>,
}

impl CorrelationSeries {
    pub fn from_spectrum(
        o: (&str, &OperatorSum),
        o2: (&str, &OperatorSum),
        spectrum: &FloquetSpectrum,
        model: &str,
        n_max: usize,
    ) -> Result<Self> {
        let values = correlation_values(o.1, o2.1, spectrum, n_max)?.into_iter().map(|z| z.re).collect();
        Ok(CorrelationSeries { model: model.to_string(), left: o.0.to_string(), right: o2.0.to_string(), values })
    }

    /// `n,value` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,value\n");
        for (n, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{n},{v:?}");
        }
        s
    }
}

/// Builds the model's spectrum (momentum blocks) and samples `⟨O(n) O'⟩`.
pub fn correlation_series(o: &OperatorSum, o2: &OperatorSum, model: &FloquetModel, n_max: usize) -> Result<Vec<f64>> {
    let method = if o.is_translation_invariant(1e-12) && o2.is_translation_invariant(1e-12) {
        Method::Momentum
    } else {
        Method::Dense
    };
    let spectrum = model_spectrum(model, method)?;
    Ok(correlation_values(o, o2, &spectrum, n_max)?.into_iter().map(|z| z.re).collect())
}
