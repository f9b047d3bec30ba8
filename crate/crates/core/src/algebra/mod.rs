//! Spin-1/2 Pauli-string algebra.

mod builders;
mod coherence;
mod cyclic;
mod pauli;
mod sum;

pub use builders::{collective, dipolar, pattern_sum, CouplingProfile};
pub use cyclic::CyclicSum;
pub use pauli::{Axis, Letter, PauliString, MAX_SITES};
pub use sum::{OperatorSum, PRUNE_TOL};
