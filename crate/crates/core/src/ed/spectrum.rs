use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::dense::{check_unitary, eigh_hermitian, reassemble, to_sparse, DenseOperator, DENSE_CAP};
use super::momentum::MomentumBasis;
use super::schur::schur;
use super::sparse::SparseMatrix;
use crate::algebra::OperatorSum;
use crate::error::{Error, Result};
use crate::model::FloquetModel;

/// Eigenphases closer than this (radians, around the circle) share a cluster.
pub const CLUSTER_TOL: f64 = 1e-10;

/// Eigenpairs of one symmetry block of `U_F`, sorted by phase.
#[derive(Clone, Debug)]
pub struct SpectrumBlock {
    /// Momentum index, `None` for the unreduced space.
    pub momentum: Option<usize>,
    /// `θ_a ∈ (−π, π]` with `U v_a = e^{−iθ_a} v_a`, ascending.
    pub phases: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in block coordinates.
    pub vectors: Array2<C64>,
    /// Index sets of degenerate phases.
    pub clusters: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub enum Layout {
    Full { len: usize },
    Momentum(Arc<MomentumBasis>),
}

impl Layout {
    pub fn len(&self) -> usize {
        match self {
            Layout::Full { len } => *len,
            Layout::Momentum(b) => b.len(),
        }
    }

    /// Always false; `L >= 1`.
    pub fn is_empty(&self) -> bool {
        false
    }

    fn num_blocks(&self) -> usize {
        match self {
            Layout::Full { .. } => 1,
            Layout::Momentum(b) => b.num_sectors(),
        }
    }

    /// Image of `op` in block `b`.
    pub(crate) fn block_operator(&self, op: &OperatorSum, b: usize) -> Result<SparseMatrix> {
        if op.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: op.len() });
        }
        match self {
            Layout::Full { .. } => to_sparse(op),
            Layout::Momentum(basis) => basis.sector_matrix(op, b),
        }
    }

    fn momentum(&self, b: usize) -> Option<usize> {
        match self {
            Layout::Full { .. } => None,
            Layout::Momentum(_) => Some(b),
        }
    }
}

/// Floquet eigenbasis of a stroboscopic map, possibly split into momentum blocks.
#[derive(Clone, Debug)]
pub struct FloquetSpectrum {
    pub layout: Layout,
    pub blocks: Vec<SpectrumBlock>,
}

impl FloquetSpectrum {
    pub fn len(&self) -> usize {
        self.layout.len()
    }

    /// Always false; `L >= 1`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.phases.len()).sum()
    }

    /// All eigenphases, sorted.
    pub fn phases(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.blocks.iter().flat_map(|b| b.phases.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn num_clusters(&self) -> usize {
        self.blocks.iter().map(|b| b.clusters.len()).sum()
    }

    /// `V diag(e^{−iθ}) V†` for block `b`.
    pub fn reconstruct_block(&self, b: usize) -> Array2<C64> {
        let blk = &self.blocks[b];
        let ph: Vec<C64> = blk.phases.iter().map(|&t| C64::from_polar(1.0, -t)).collect();
        reassemble(&blk.vectors, &ph)
    }
}

/// Partition of ascending phases into maximal runs with gaps below `tol`, wrapping at ±π.
pub fn cluster_phases(phases: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &p) in phases.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if p - phases[*c.last().expect("clusters are nonempty")] < tol => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.len() > 1 {
        let first = phases[0];
        let last = phases[phases.len() - 1];
        if first + 2.0 * PI - last < tol {
            let tail = clusters.pop().expect("more than one cluster");
            clusters[0].extend(tail);
        }
    }
    clusters
}

fn wrap_phase(theta: f64) -> f64 {
    if theta <= -PI {
        theta + 2.0 * PI
    } else if theta > PI {
        theta - 2.0 * PI
    } else {
        theta
    }
}

fn spectral_block(u: &Array2<C64>, momentum: Option<usize>) -> Result<SpectrumBlock> {
    let (w, q) = schur(u)?;
    let mut order: Vec<(f64, usize)> = w.iter().enumerate().map(|(i, z)| (wrap_phase(-z.arg()), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = u.nrows();
    let mut vectors = Array2::<C64>::zeros((n, n));
    for (dst, &(_, src)) in order.iter().enumerate() {
        vectors.column_mut(dst).assign(&q.column(src));
    }
    let phases: Vec<f64> = order.iter().map(|p| p.0).collect();
    let clusters = cluster_phases(&phases, CLUSTER_TOL);
    Ok(SpectrumBlock { momentum, phases, vectors, clusters })
}

/// Eigendecomposition of a dense unitary on the full `2^L` space.
pub fn floquet_spectrum(u: &DenseOperator) -> Result<FloquetSpectrum> {
    let n = u.nrows();
    if n != u.ncols() || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("expected a square 2^L matrix, got {}x{}", n, u.ncols())));
    }
    check_unitary(u)?;
    let len = (n.trailing_zeros() as usize).max(1);
    Ok(FloquetSpectrum { layout: Layout::Full { len }, blocks: vec![spectral_block(u, None)?] })
}

/// How `U_F` is block-diagonalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// One block on the full space.
    Dense,
    /// One block per lattice momentum.
    Momentum,
}

struct BlockPropagator {
    e1: Vec<f64>,
    v1h: Array2<C64>,
    e2: Vec<f64>,
    v2: Array2<C64>,
    /// `V2† V1`
    overlap: Array2<C64>,
}

fn eigh_block(m: &SparseMatrix) -> Result<(Vec<f64>, Array2<C64>)> {
    eigh_hermitian(&m.to_dense())
}

/// Caches the `τ`-independent eigendecompositions of `H1` and `H2` per block.
pub struct FloquetSolver {
    layout: Layout,
    blocks: Vec<BlockPropagator>,
}

impl FloquetSolver {
    pub fn new(model: &FloquetModel, method: Method) -> Result<Self> {
        if model.len > DENSE_CAP {
            return Err(Error::DimensionCap { len: model.len, cap: DENSE_CAP });
        }
        let layout = match method {
            Method::Dense => Layout::Full { len: model.len },
            Method::Momentum => Layout::Momentum(Arc::new(MomentumBasis::new(model.len)?)),
        };
        let mut blocks = Vec::with_capacity(layout.num_blocks());
        for b in 0..layout.num_blocks() {
            let (e1, v1) = eigh_block(&layout.block_operator(model.h1(), b)?)?;
            let (e2, v2) = eigh_block(&layout.block_operator(model.h2(), b)?)?;
            let v2h = v2.t().mapv(|z| z.conj());
            let overlap = v2h.dot(&v1);
            let v1h = v1.t().mapv(|z| z.conj());
            blocks.push(BlockPropagator { e1, v1h, e2, v2, overlap });
        }
        Ok(FloquetSolver { layout, blocks })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// `U_F` restricted to block `b` at step `tau`.
    pub fn block_unitary(&self, b: usize, tau: f64) -> Array2<C64> {
        let blk = &self.blocks[b];
        let mut mid = blk.overlap.clone();
        for ((i, j), z) in mid.indexed_iter_mut() {
            *z *= C64::from_polar(1.0, -(blk.e2[i] + blk.e1[j]) * tau);
        }
        blk.v2.dot(&mid).dot(&blk.v1h)
    }

    pub fn spectrum(&self, tau: f64) -> Result<FloquetSpectrum> {
        let blocks = (0..self.blocks.len())
            .map(|b| spectral_block(&self.block_unitary(b, tau), self.layout.momentum(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FloquetSpectrum { layout: self.layout.clone(), blocks })
    }
}

/// Spectrum of the model's `U_F` at its own `τ`.
pub fn model_spectrum(model: &FloquetModel, method: Method) -> Result<FloquetSpectrum> {
    FloquetSolver::new(model, method)?.spectrum(model.tau)
}
