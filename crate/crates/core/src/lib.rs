//! Prethermal Floquet spin chains: symbolic Pauli algebra, exact
//! diagonalization, quasiconserved-observable search and prethermal
//! expansions.

pub mod algebra;
pub mod analysis;
pub mod ed;
pub mod error;
pub mod expansions;
pub mod model;
pub mod qc;

pub use error::{Error, Result};
pub use model::{FloquetModel, ModelKind};
