use ndarray::{Array1, ArrayView1};

use crate::error::{invalid, Result};
use crate::C64;

/// Largest qubit count accepted when building states.
pub const MAX_STATE_QUBITS: u32 = 20;

const NORM_TOL: f64 = 1e-12;

/// A normalized vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amps: Array1<C64>,
}

impl QuantumState {
    /// Wraps amplitudes that are already normalized (within 1e-12).
    pub fn from_amplitudes(amps: Array1<C64>) -> Result<Self> {
        check_finite(amps.view())?;
        let norm = l2(amps.view());
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(invalid(format!("amplitudes have norm {norm}, expected 1")));
        }
        Ok(Self { amps })
    }

    /// Rescales a nonzero vector to unit length.
    pub fn normalized(amps: Array1<C64>) -> Result<Self> {
        check_finite(amps.view())?;
        let norm = l2(amps.view());
        if norm == 0.0 {
            return Err(invalid("cannot normalize the zero vector"));
        }
        Ok(Self { amps: amps.mapv(|a| a / norm) })
    }

    /// Computational basis state |index> in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 || index >= dim {
            return Err(invalid(format!("basis index {index} outside dimension {dim}")));
        }
        let mut amps = Array1::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// The uniform superposition 2^{-n/2} sum_i |i> over n qubits.
    pub fn uniform(n: u32) -> Result<Self> {
        if !(1..=MAX_STATE_QUBITS).contains(&n) {
            return Err(invalid(format!("qubit count {n} outside 1..={MAX_STATE_QUBITS}")));
        }
        let dim = 1usize << n;
        let amp = C64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self { amps: Array1::from_elem(dim, amp) })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> ArrayView1<'_, C64> {
        self.amps.view()
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn into_amplitudes(self) -> Array1<C64> {
        self.amps
    }

    /// <self|other>
    pub fn inner(&self, other: &QuantumState) -> C64 {
        inner(self.amps.view(), other.amps.view())
    }

    pub fn norm(&self) -> f64 {
        l2(self.amps.view())
    }

    /// Euclidean distance |self - other|, phase included.
    pub fn distance(&self, other: &QuantumState) -> f64 {
        distance(self.amps.view(), other.amps.view())
    }

    /// Multiplies every amplitude by `phase`, which must have unit modulus.
    pub fn with_phase(&self, phase: C64) -> Result<Self> {
        if (phase.norm() - 1.0).abs() > NORM_TOL {
            return Err(invalid(format!("phase factor {phase} is not unimodular")));
        }
        Ok(Self { amps: self.amps.mapv(|a| a * phase) })
    }
}

/// sum_i conj(a_i) b_i
pub fn inner(a: ArrayView1<C64>, b: ArrayView1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn l2(v: ArrayView1<C64>) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn distance(a: ArrayView1<C64>, b: ArrayView1<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn check_finite(v: ArrayView1<C64>) -> Result<()> {
    if v.is_empty() {
        return Err(invalid("state must have at least one amplitude"));
    }
    if v.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(invalid("state has non-finite amplitudes"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn uniform_one_qubit() {
        let s = QuantumState::uniform(1).unwrap();
        for a in s.amplitudes() {
            assert!((a.re - 0.70710678).abs() < 1e-8);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn uniform_two_qubits_is_half() {
        let s = QuantumState::uniform(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| *a == C64::new(0.5, 0.0)));
    }

    #[test]
    fn uniform_overlap_with_every_basis_state() {
        for n in [1u32, 3, 7, 12] {
            let s = QuantumState::uniform(n).unwrap();
            let expected = 2f64.powf(-(n as f64) / 2.0);
            assert!((s.norm() - 1.0).abs() < 1e-12);
            for w in [0, s.dim() / 2, s.dim() - 1] {
                let b = QuantumState::basis(s.dim(), w).unwrap();
                assert!((b.inner(&s).re - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn uniform_rejects_out_of_range() {
        assert!(matches!(QuantumState::uniform(0), Err(crate::Error::InvalidArgument(_))));
        assert!(QuantumState::uniform(21).is_err());
    }

    #[test]
    fn from_amplitudes_requires_unit_norm() {
        let v = Array1::from_elem(2, C64::new(1.0, 0.0));
        assert!(QuantumState::from_amplitudes(v.clone()).is_err());
        let s = QuantumState::normalized(v).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(QuantumState::normalized(Array1::zeros(3)).is_err());
    }
}
