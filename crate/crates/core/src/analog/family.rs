use std::f64::consts::PI;

use ndarray::Array2;

use super::plane::adjust_phase;
use super::timing::grover_time;
use crate::error::{invalid, Error, Result};
use crate::linalg::{DenseOperator, QuantumState};
use crate::{C64, OVERLAP_EPS};

fn check_energy(energy: f64) -> Result<()> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(invalid(format!("energy must be positive and finite, got {energy}")));
    }
    Ok(())
}

fn target_projector(dim: usize, target: usize, energy: f64) -> DenseOperator {
    let mut m = Array2::zeros((dim, dim));
    m[[target, target]] = C64::new(energy, 0.0);
    DenseOperator::from_array(m).expect("square")
}

/// H' = E(|sigma><sigma| + |w><w|)
pub fn fg_hamiltonian(sigma: &QuantumState, target: usize, energy: f64) -> Result<DenseOperator> {
    check_energy(energy)?;
    let (sigma, _) = adjust_phase(sigma, target)?;
    let h_d = DenseOperator::projector(&sigma).scale(C64::new(energy, 0.0));
    Ok(&h_d + &target_projector(sigma.dim(), target, energy))
}

/// H = 2iEx(|w><sigma| - |sigma><w|), with sigma rephased so x > 0.
pub fn commutator_hamiltonian(sigma: &QuantumState, target: usize, energy: f64) -> Result<DenseOperator> {
    check_energy(energy)?;
    let (sigma, x) = adjust_phase(sigma, target)?;
    let s = sigma.amplitudes();
    let coeff = C64::new(0.0, 2.0 * energy * x);
    let mut m = Array2::zeros((s.len(), s.len()));
    for j in 0..s.len() {
        m[[target, j]] += coeff * s[j].conj();
        m[[j, target]] -= coeff * s[j];
    }
    DenseOperator::from_array(m)
}

/// (2i/E)[H_w, H_D] evaluated with dense products. Independent of the
/// dyadic construction in [`commutator_hamiltonian`].
pub fn commutator_by_definition(sigma: &QuantumState, target: usize, energy: f64) -> Result<DenseOperator> {
    check_energy(energy)?;
    let (sigma, _) = adjust_phase(sigma, target)?;
    let h_w = target_projector(sigma.dim(), target, energy);
    let h_d = DenseOperator::projector(&sigma).scale(C64::new(energy, 0.0));
    let comm = &(&h_w * &h_d) - &(&h_d * &h_w);
    Ok(comm.scale(C64::new(0.0, 2.0 / energy)))
}

/// Orthogonal projection onto the complement of span{|sigma>, |w>}.
pub fn plane_projector_complement(sigma: &QuantumState, target: usize) -> Result<DenseOperator> {
    if target >= sigma.dim() {
        return Err(invalid(format!("target {target} outside 0..{}", sigma.dim())));
    }
    let overlap = sigma.amplitude(target).norm();
    if overlap >= 1.0 - OVERLAP_EPS {
        return Err(Error::DegeneratePlane { overlap });
    }
    // e2 = normalized component of sigma orthogonal to |w>
    let mut e2 = sigma.amplitudes().to_owned();
    e2[target] = C64::new(0.0, 0.0);
    let e2 = QuantumState::normalized(e2)?;
    let mut p = DenseOperator::identity(sigma.dim()).into_array();
    p[[target, target]] = C64::new(0.0, 0.0);
    let e2 = e2.amplitudes();
    for i in 0..e2.len() {
        for j in 0..e2.len() {
            p[[i, j]] -= e2[i] * e2[j].conj();
        }
    }
    DenseOperator::from_array(p)
}

/// Every operator of the analog picture for one (sigma, w, E), built once.
#[derive(Debug, Clone)]
pub struct HamiltonianFamily {
    energy: f64,
    sigma: QuantumState,
    target: usize,
    x: f64,
    theta: f64,
    eta: f64,
    t0: f64,
    h_w: DenseOperator,
    h_d: DenseOperator,
    h_prime: DenseOperator,
    h: DenseOperator,
    a: DenseOperator,
    p: DenseOperator,
    h_tilde: DenseOperator,
}

impl HamiltonianFamily {
    pub fn new(sigma: &QuantumState, target: usize, energy: f64) -> Result<Self> {
        check_energy(energy)?;
        let (sigma, x) = adjust_phase(sigma, target)?;
        let dim = sigma.dim();
        let theta = x.acos();
        let eta = energy * (2.0 * theta).sin();
        let t0 = grover_time(x)?;

        let h_w = target_projector(dim, target, energy);
        let h_d = DenseOperator::projector(&sigma).scale(C64::new(energy, 0.0));
        let h_prime = &h_d + &h_w;
        let h = commutator_hamiltonian(&sigma, target, energy)?;
        // sqrt(N)(|w><sigma| - |sigma><w|) = H sqrt(N) / (2iEx)
        let a = h.scale(C64::new(0.0, -(dim as f64).sqrt() / (2.0 * energy * x)));
        let p = plane_projector_complement(&sigma, target)?;
        let h_tilde = &h + &p.scale(C64::new(PI * energy / t0, 0.0));

        Ok(Self { energy, sigma, target, x, theta, eta, t0, h_w, h_d, h_prime, h, a, p, h_tilde })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }
    /// Phase-adjusted start state.
    pub fn sigma(&self) -> &QuantumState {
        &self.sigma
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }
    /// x = <w|sigma>
    pub fn overlap(&self) -> f64 {
        self.x
    }
    /// theta = arccos x
    pub fn theta(&self) -> f64 {
        self.theta
    }
    /// eta = E sin 2theta
    pub fn eta(&self) -> f64 {
        self.eta
    }
    /// t0 for E = 1.
    pub fn t0(&self) -> f64 {
        self.t0
    }
    /// t0 / E: the time at which e^{-iHt} equals G on the plane for this E.
    pub fn matching_time(&self) -> f64 {
        self.t0 / self.energy
    }
    pub fn h_w(&self) -> &DenseOperator {
        &self.h_w
    }
    pub fn h_d(&self) -> &DenseOperator {
        &self.h_d
    }
    pub fn h_prime(&self) -> &DenseOperator {
        &self.h_prime
    }
    pub fn h(&self) -> &DenseOperator {
        &self.h
    }
    /// sqrt(N)(|w><sigma| - |sigma><w|); the naive generator when sigma is uniform.
    pub fn a(&self) -> &DenseOperator {
        &self.a
    }
    pub fn p(&self) -> &DenseOperator {
        &self.p
    }
    pub fn h_tilde(&self) -> &DenseOperator {
        &self.h_tilde
    }
}

/// H~ = H + (pi / tau) P with tau = t0 / E, so that e^{-i H~ tau} = G on the
/// whole space.
pub fn augmented_hamiltonian(fam: &HamiltonianFamily) -> DenseOperator {
    fam.h_tilde.clone()
}
