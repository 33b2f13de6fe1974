//! Grover's digital search: selected inverters, the driver `U`, the iterate
//! `G = -U I_0 U^{-1} I_w`, and full search runs.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};

use crate::error::{invalid, Error, Result};
use crate::linalg::{DenseOperator, QuantumState, PREDICATE_TOL};
use crate::{C64, OVERLAP_EPS};

/// Largest qubit count for which dense operators are built.
pub const MAX_DENSE_QUBITS: u32 = 12;

/// A single-target search instance: n qubits, N = 2^n, marked index w.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchProblem {
    n: u32,
    target: usize,
}

impl SearchProblem {
    pub fn new(n: u32, target: usize) -> Result<Self> {
        if !(1..=MAX_DENSE_QUBITS).contains(&n) {
            return Err(invalid(format!("qubit count {n} outside 1..={MAX_DENSE_QUBITS}")));
        }
        let dim = 1usize << n;
        if target >= dim {
            return Err(invalid(format!("target {target} outside 0..{dim}")));
        }
        Ok(Self { n, target })
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// The oracle f: true exactly at the target.
    pub fn is_marked(&self, i: usize) -> bool {
        i == self.target
    }

    pub fn target_state(&self) -> QuantumState {
        QuantumState::basis(self.dim(), self.target).expect("target is in range")
    }
}

/// A driver unitary with its overlap x = <w|U|0> made real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DriverUnitary {
    u: DenseOperator,
    overlap: f64,
    theta: f64,
}

impl DriverUnitary {
    pub fn operator(&self) -> &DenseOperator {
        &self.u
    }

    /// x = <w|U|0>
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// theta = arccos x
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// psi = U|0>
    pub fn start_state(&self) -> QuantumState {
        let col = self.u.as_array().column(0).to_owned();
        QuantumState::normalized(col).expect("unitary columns are unit vectors")
    }
}

/// I - 2|v><v| for a basis vector v.
fn basis_inverter(dim: usize, index: usize) -> DenseOperator {
    let mut diag = vec![C64::new(1.0, 0.0); dim];
    diag[index] = C64::new(-1.0, 0.0);
    DenseOperator::diagonal(&diag)
}

/// I_w = sum_i (-1)^{f(i)} |i><i|
pub fn oracle_inverter(p: &SearchProblem) -> DenseOperator {
    basis_inverter(p.dim(), p.target())
}

/// I_0 = I - 2|0><0|
pub fn zero_inverter(dim: usize) -> Result<DenseOperator> {
    if dim < 2 {
        return Err(invalid(format!("zero inverter needs dimension >= 2, got {dim}")));
    }
    Ok(basis_inverter(dim, 0))
}

/// Walsh-Hadamard transform on n qubits: 2^{-n/2} (-1)^{popcount(i & j)}.
pub fn walsh_hadamard(n: u32) -> Result<DenseOperator> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n) {
        return Err(invalid(format!("qubit count {n} outside 1..={MAX_DENSE_QUBITS}")));
    }
    let dim = 1usize << n;
    let r = (dim as f64).sqrt().recip();
    let m = Array2::from_shape_fn((dim, dim), |(i, j)| {
        let sign = if (i & j).count_ones() % 2 == 0 { r } else { -r };
        C64::new(sign, 0.0)
    });
    DenseOperator::from_array(m)
}

/// Rephases `u` so that <w|U|0> is real and positive.
pub fn make_driver(u: &DenseOperator, p: &SearchProblem) -> Result<DriverUnitary> {
    if u.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: u.dim() });
    }
    if !u.is_unitary(PREDICATE_TOL) {
        return Err(invalid("driver must be unitary"));
    }
    let z = u.entry(p.target(), 0);
    let overlap = z.norm();
    if overlap <= OVERLAP_EPS {
        return Err(Error::OrthogonalStart { overlap });
    }
    if overlap >= 1.0 - OVERLAP_EPS {
        return Err(Error::DegeneratePlane { overlap });
    }
    let phase = z.conj() / overlap;
    Ok(DriverUnitary { u: u.scale(phase), overlap, theta: overlap.acos() })
}

/// G = -U I_0 U^{-1} I_w, formed densely.
pub fn grover_iterate(d: &DriverUnitary, p: &SearchProblem) -> Result<DenseOperator> {
    if d.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: d.dim() });
    }
    let u = d.u.as_array();
    // U I_0 flips column 0; U^{-1} = U^dagger; right-multiplying by I_w flips column w.
    let mut ui0 = u.to_owned();
    ui0.column_mut(0).mapv_inplace(|z| -z);
    let mut g = ui0.dot(&u.t().mapv(|z| z.conj()));
    g.column_mut(p.target()).mapv_inplace(|z| -z);
    g.mapv_inplace(|z| -z);
    DenseOperator::from_array(g)
}

/// One Grover step applied to a vector through U and U^dagger, never
/// forming G. O(N^2) per call.
pub fn apply_iterate(d: &DriverUnitary, p: &SearchProblem, v: &Array1<C64>) -> Result<Array1<C64>> {
    if v.len() != p.dim() || d.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: v.len() });
    }
    let u = d.u.as_array();
    let mut out = v.clone();
    out[p.target()] = -out[p.target()];
    // U^dagger v = conj(U^T conj(v))
    let mut out = u.t().dot(&out.mapv(|z| z.conj())).mapv(|z| z.conj());
    out[0] = -out[0];
    let out = u.dot(&out);
    Ok(out.mapv(|z| -z))
}

/// G on span{sigma, w} in the non-orthogonal basis (sigma, w). Row-major;
/// column j is the image of the j-th basis vector.
pub fn grover_on_plane(x: f64) -> Result<[[f64; 2]; 2]> {
    check_open_unit(x)?;
    Ok([[1.0 - 4.0 * x * x, -2.0 * x], [2.0 * x, 1.0]])
}

/// Iteration counts for overlap x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationCount {
    /// ceil(pi / 4x)
    pub paper: u64,
    /// round(pi / (4 arcsin x) - 1/2), the k maximizing sin^2((2k+1) arcsin x)
    pub optimal: u64,
}

pub fn iteration_count(x: f64) -> Result<IterationCount> {
    check_open_unit(x)?;
    let paper = (PI / (4.0 * x)).ceil() as u64;
    let optimal = (PI / (4.0 * x.asin()) - 0.5).round().max(0.0) as u64;
    Ok(IterationCount { paper, optimal })
}

/// G^k U|0> and its success probability |<w|state>|^2.
pub fn run_grover(p: &SearchProblem, d: &DriverUnitary, k: u64) -> Result<(QuantumState, f64)> {
    let state = iterate_from_start(p, d, k, |_| {})?;
    let success = state.probability(p.target());
    Ok((state, success))
}

/// Success probabilities after 0, 1, ..., k iterations.
pub fn success_trajectory(p: &SearchProblem, d: &DriverUnitary, k: u64) -> Result<Vec<f64>> {
    let mut probs = Vec::with_capacity(k as usize + 1);
    iterate_from_start(p, d, k, |s| probs.push(s[p.target()].norm_sqr()))?;
    Ok(probs)
}

fn iterate_from_start(
    p: &SearchProblem,
    d: &DriverUnitary,
    k: u64,
    mut observe: impl FnMut(&Array1<C64>),
) -> Result<QuantumState> {
    if d.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: d.dim() });
    }
    let mut v = d.start_state().into_amplitudes();
    observe(&v);
    for _ in 0..k {
        v = apply_iterate(d, p, &v)?;
        observe(&v);
    }
    QuantumState::normalized(v)
}

fn check_open_unit(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(invalid(format!("overlap {x} outside (0, 1)")));
    }
    Ok(())
}
