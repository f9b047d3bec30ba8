//! Exact diagonalization of the stroboscopic map.

mod correlation;
mod dense;
mod momentum;
mod schur;
mod sparse;
mod spectrum;

pub use correlation::{
    conjugated_autocorr, correlation_series, correlation_values, eigenbasis_correlation, infinite_time_corr,
    CorrelationSeries, DiagonalProjection, EigenbasisOperator,
};
pub use dense::{
    floquet_unitary, hermitian_residual, propagator, to_dense, to_dense_capped, to_sparse, unitarity_residual,
    DenseOperator, DENSE_CAP,
};
pub use momentum::MomentumBasis;
pub use sparse::SparseMatrix;
pub use spectrum::{
    cluster_phases, floquet_spectrum, model_spectrum, FloquetSolver, FloquetSpectrum, Layout, Method, SpectrumBlock,
    CLUSTER_TOL,
};
