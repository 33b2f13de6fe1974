//! Quantum search three ways: Grover's digital iterate, the Farhi-Gutmann
//! Hamiltonian, and the commutator Hamiltonian whose evolution reproduces
//! Grover's iterate step for step.
//!
//! Everything is dense and double precision. The supported envelope is
//! n <= 12 qubits (N <= 4096), which keeps every check on a laptop budget.
//!
//! * [`linalg`]: states, operators, operator norm and two exponential paths.
//! * [`grover`]: inverters, drivers, the iterate and full search runs.
//! * [`analog`]: the Hamiltonian family, closed-form plane propagators and
//!   the incremental `I + eps*A` stepper.
//! * [`verify`]: checks that turn the identities into sweep reports.
//! * [`cli`]: the `hamsearch` command-line front end.

pub mod analog;
pub mod cli;
mod error;
pub mod grover;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Overlaps at or below this magnitude count as an orthogonal start; overlaps
/// within this distance of one count as a degenerate plane.
pub const OVERLAP_EPS: f64 = 1e-12;
