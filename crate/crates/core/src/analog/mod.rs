//! The analog formulations of quantum search: the Farhi-Gutmann Hamiltonian
//! H' = E(|sigma><sigma| + |w><w|), the commutator Hamiltonian
//! H = (2i/E)[H_w, H_D], their closed-form plane dynamics, and the
//! incremental `I + eps*A` stepper that motivates H.

mod family;
mod naive;
mod plane;
mod timing;

pub use family::{
    augmented_hamiltonian, commutator_by_definition, commutator_hamiltonian, fg_hamiltonian,
    plane_projector_complement, HamiltonianFamily,
};
pub use naive::{naive_generator, naive_search, naive_step, NaiveTrajectory};
pub use plane::{
    adjust_phase, fg_evolution_closed_form, h_eigensystem, h_evolution_closed_form, PlaneBasis, PlaneCoords,
    PlaneEigenpair, PlaneMatrix,
};
pub use timing::{fg_arrival_time, grover_time, h_arrival_time, t0_series};
