//! The incremental picture: a real skew-symmetric generator that moves
//! amplitude evenly from every basis state onto the target, applied as
//! `I + eps*A` over and over.

use ndarray::{Array1, Array2};

use crate::error::{invalid, Result};
use crate::grover::SearchProblem;
use crate::linalg::{l2, DenseOperator};
use crate::C64;

/// A = sqrt(N)(|w><psi| - |psi><w|) for the uniform psi: +1 across row w,
/// -1 down column w, zero on the diagonal and everywhere else.
pub fn naive_generator(p: &SearchProblem) -> DenseOperator {
    let dim = p.dim();
    let w = p.target();
    let mut m = Array2::zeros((dim, dim));
    for i in 0..dim {
        if i != w {
            m[[w, i]] = C64::new(1.0, 0.0);
            m[[i, w]] = C64::new(-1.0, 0.0);
        }
    }
    DenseOperator::from_array(m).expect("square")
}

/// (I + eps A)|phi>, unnormalized.
pub fn naive_step(phi: &Array1<C64>, a: &DenseOperator, eps: f64) -> Result<Array1<C64>> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(invalid(format!("step size must be nonnegative, got {eps}")));
    }
    let a_phi = a.apply_vec(phi.view())?;
    Ok(phi + &a_phi.mapv(|z| z * eps))
}

/// Target amplitudes along a renormalized `I + eps*A` run.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveTrajectory {
    /// |<w|state_k>| for k = 0..=max_steps.
    pub amplitudes: Vec<f64>,
    pub peak_step: usize,
    pub peak_amplitude: f64,
}

/// Runs `max_steps` renormalized steps from the uniform state.
///
/// The generator is applied through its row/column structure, O(N) a step.
pub fn naive_search(p: &SearchProblem, eps: f64, max_steps: usize) -> Result<NaiveTrajectory> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(invalid(format!("step size must lie in (0, 0.1], got {eps}")));
    }
    let dim = p.dim();
    let w = p.target();
    let mut state = Array1::from_elem(dim, C64::new((dim as f64).sqrt().recip(), 0.0));
    let mut amplitudes = Vec::with_capacity(max_steps + 1);
    amplitudes.push(state[w].norm());
    for _ in 0..max_steps {
        let total: C64 = state.iter().sum();
        let gain = total - state[w];
        let loss = state[w];
        for (i, z) in state.iter_mut().enumerate() {
            if i == w {
                *z += gain * eps;
            } else {
                *z -= loss * eps;
            }
        }
        let norm = l2(state.view());
        state.mapv_inplace(|z| z / norm);
        amplitudes.push(state[w].norm());
    }
    let (peak_step, peak_amplitude) = amplitudes
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::MIN), |best, (k, a)| if a > best.1 { (k, a) } else { best });
    Ok(NaiveTrajectory { amplitudes, peak_step, peak_amplitude })
}
