//! The search plane span{|sigma>, |w>} in its natural, non-orthogonal
//! basis, and the closed-form propagators expressed in it.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::linalg::{inner, l2, QuantumState};
use crate::{C64, OVERLAP_EPS};

/// Coefficients of c_sigma |sigma> + c_w |w>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneCoords {
    pub c_sigma: C64,
    pub c_w: C64,
}

impl PlaneCoords {
    pub fn new(c_sigma: C64, c_w: C64) -> Self {
        Self { c_sigma, c_w }
    }

    /// Squared length under the Gram matrix [[1, x], [x, 1]].
    pub fn norm_sqr(&self, x: f64) -> f64 {
        self.c_sigma.norm_sqr() + self.c_w.norm_sqr() + 2.0 * (self.c_sigma.conj() * self.c_w).re * x
    }

    pub fn max_abs_diff(&self, other: &PlaneCoords) -> f64 {
        (self.c_sigma - other.c_sigma).norm().max((self.c_w - other.c_w).norm())
    }
}

/// A real 2x2 action on plane coordinates, row-major. Column 0 is the image
/// of |sigma>, column 1 the image of |w>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneMatrix(pub [[f64; 2]; 2]);

impl PlaneMatrix {
    pub fn identity() -> Self {
        Self([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn column(&self, j: usize) -> PlaneCoords {
        PlaneCoords::new(C64::new(self.0[0][j], 0.0), C64::new(self.0[1][j], 0.0))
    }

    pub fn apply(&self, c: &PlaneCoords) -> PlaneCoords {
        let m = &self.0;
        PlaneCoords::new(m[0][0] * c.c_sigma + m[0][1] * c.c_w, m[1][0] * c.c_sigma + m[1][1] * c.c_w)
    }

    pub fn max_abs_diff(&self, other: &PlaneMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

/// Rephases sigma so that <w|sigma> is real and positive; returns the
/// adjusted state and the overlap.
pub fn adjust_phase(sigma: &QuantumState, target: usize) -> Result<(QuantumState, f64)> {
    if target >= sigma.dim() {
        return Err(crate::error::invalid(format!("target {target} outside 0..{}", sigma.dim())));
    }
    let z = sigma.amplitude(target);
    let overlap = z.norm();
    if overlap <= OVERLAP_EPS {
        return Err(Error::OrthogonalStart { overlap });
    }
    if overlap >= 1.0 - OVERLAP_EPS {
        return Err(Error::DegeneratePlane { overlap });
    }
    Ok((sigma.with_phase(z.conj() / overlap)?, overlap))
}

/// Converts between full-space vectors and plane coordinates.
#[derive(Debug, Clone)]
pub struct PlaneBasis {
    sigma: QuantumState,
    target: usize,
    x: f64,
}

impl PlaneBasis {
    pub fn new(sigma: &QuantumState, target: usize) -> Result<Self> {
        let (sigma, x) = adjust_phase(sigma, target)?;
        Ok(Self { sigma, target, x })
    }

    /// The phase-adjusted start state.
    pub fn sigma(&self) -> &QuantumState {
        &self.sigma
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn overlap(&self) -> f64 {
        self.x
    }

    /// Best-fit plane coordinates of v (exact when v lies in the plane).
    pub fn coords(&self, v: &Array1<C64>) -> PlaneCoords {
        let s = inner(self.sigma.amplitudes(), v.view());
        let t = v[self.target];
        let det = 1.0 - self.x * self.x;
        PlaneCoords::new((s - self.x * t) / det, (t - self.x * s) / det)
    }

    pub fn lift(&self, c: &PlaneCoords) -> Array1<C64> {
        let mut v = self.sigma.amplitudes().mapv(|a| a * c.c_sigma);
        v[self.target] += c.c_w;
        v
    }

    /// Norm of the component of v orthogonal to the plane.
    pub fn out_of_plane(&self, v: &Array1<C64>) -> f64 {
        let proj = self.lift(&self.coords(v));
        l2((v - &proj).view())
    }
}

/// e^{-iH't}|sigma> for the Farhi-Gutmann Hamiltonian:
/// e^{-iEt} (cos(xEt), -i sin(xEt)).
pub fn fg_evolution_closed_form(x: f64, energy: f64, t: f64) -> PlaneCoords {
    let global = C64::from_polar(1.0, -energy * t);
    let angle = x * energy * t;
    PlaneCoords::new(global * angle.cos(), global * C64::new(0.0, -angle.sin()))
}

/// An eigenvalue of the commutator Hamiltonian with its plane eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneEigenpair {
    pub value: f64,
    pub vector: PlaneCoords,
}

/// Eigensystem of the commutator Hamiltonian on the plane.
///
/// Eigenvalues are +-E sin 2theta (= +-eta), paired with
/// (e^{+-i theta}|sigma> - |w>) / (sqrt 2 sin theta).
pub fn h_eigensystem(x: f64, energy: f64) -> [PlaneEigenpair; 2] {
    let theta = x.acos();
    let eta = energy * (2.0 * theta).sin();
    let norm = 1.0 / (2f64.sqrt() * theta.sin());
    let pair = |sign: f64| PlaneEigenpair {
        value: sign * eta,
        vector: PlaneCoords::new(C64::from_polar(norm, sign * theta), C64::new(-norm, 0.0)),
    };
    [pair(1.0), pair(-1.0)]
}

/// e^{-iHt} on the plane for the commutator Hamiltonian, eta = E sin 2theta:
/// columns (sin(theta - eta t), sin(eta t)) / sin theta and
/// (-sin(eta t), sin(theta + eta t)) / sin theta.
pub fn h_evolution_closed_form(x: f64, energy: f64, t: f64) -> PlaneMatrix {
    let theta = x.acos();
    let eta = energy * (2.0 * theta).sin();
    let s = theta.sin();
    let et = eta * t;
    PlaneMatrix([[(theta - et).sin() / s, -et.sin() / s], [et.sin() / s, (theta + et).sin() / s]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fg_closed_form_endpoints() {
        let c = fg_evolution_closed_form(0.3, 1.7, 0.0);
        assert_eq!(c, PlaneCoords::new(C64::new(1.0, 0.0), C64::new(0.0, -0.0)));
        for (x, e) in [(0.5, 1.0), (0.125, 2.0), (0.03125, 0.5)] {
            let t = PI / (2.0 * e * x);
            let c = fg_evolution_closed_form(x, e, t);
            let want = C64::new(0.0, -1.0) * C64::from_polar(1.0, -PI / (2.0 * x));
            assert!(c.c_sigma.norm() < 1e-12);
            assert!((c.c_w - want).norm() < 1e-12);
        }
    }

    #[test]
    fn fg_closed_form_stays_normalized() {
        for x in [0.05, 0.3, 0.9] {
            for k in 0..50 {
                let t = 0.37 * k as f64;
                assert!((fg_evolution_closed_form(x, 1.3, t).norm_sqr(x) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eigensystem_values_and_normalization() {
        let [plus, minus] = h_eigensystem(0.5, 1.0);
        assert!((plus.value - 0.8660254037844386).abs() < 1e-15);
        assert_eq!(plus.value, -minus.value);
        assert!((plus.vector.norm_sqr(0.5) - 1.0).abs() < 1e-12);
        assert!((minus.vector.norm_sqr(0.5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn h_closed_form_landmarks() {
        let x: f64 = 0.2;
        assert!(h_evolution_closed_form(x, 1.0, 0.0).max_abs_diff(&PlaneMatrix::identity()) < 1e-15);
        let theta = x.acos();
        let eta = (2.0 * theta).sin();
        let arrive = h_evolution_closed_form(x, 1.0, theta / eta);
        assert!(arrive.column(0).max_abs_diff(&PlaneCoords::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))) < 1e-12);
    }

    #[test]
    fn plane_basis_round_trip() {
        let sigma = QuantumState::uniform(3).unwrap().with_phase(C64::from_polar(1.0, 0.7)).unwrap();
        let b = PlaneBasis::new(&sigma, 6).unwrap();
        assert!((b.overlap() - 8f64.sqrt().recip()).abs() < 1e-15);
        assert!((b.sigma().amplitude(6).im).abs() < 1e-15);
        let c = PlaneCoords::new(C64::new(0.3, -0.1), C64::new(-1.2, 0.4));
        let v = b.lift(&c);
        assert!(b.coords(&v).max_abs_diff(&c) < 1e-14);
        assert!(b.out_of_plane(&v) < 1e-14);
        let mut off = Array1::zeros(8);
        off[0] = C64::new(1.0, 0.0);
        off[1] = C64::new(-1.0, 0.0);
        assert!((b.out_of_plane(&off) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn adjust_phase_errors() {
        let s = QuantumState::basis(4, 1).unwrap();
        assert!(matches!(adjust_phase(&s, 0), Err(Error::OrthogonalStart { .. })));
        assert!(matches!(adjust_phase(&s, 1), Err(Error::DegeneratePlane { .. })));
    }
}
