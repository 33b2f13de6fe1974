//! Dense complex linear algebra: states, operators, the operator norm and
//! operator exponentials.

mod expm;
mod norm;
mod operator;
mod random;
mod state;

pub use expm::{evolve_vec, exp_hermitian, expm_apply, matrix_exponential, power_limit_approx, propagator};
pub use norm::{operator_norm, operator_norm_power, NormValue};
pub use operator::{DenseOperator, PREDICATE_TOL};
pub use random::random_unitary;
pub use state::{distance, inner, l2, QuantumState, MAX_STATE_QUBITS};

/// `QuantumState::uniform`, under the name the rest of the crate uses.
pub fn uniform_state(n: u32) -> crate::Result<QuantumState> {
    QuantumState::uniform(n)
}
