//! Characteristic times of the two analog evolutions.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::OVERLAP_EPS;

/// Below this overlap the two-term series is used for t0.
const SERIES_CUTOFF: f64 = 1e-6;

/// The time t0 = (pi - 2 arccos x) / (2x sqrt(1 - x^2)) at which the
/// commutator evolution with E = 1 reproduces one Grover iterate on the
/// plane.
///
/// Evaluated as arcsin(x) / (x sqrt(1 - x^2)): `pi - 2 arccos x` is
/// `2 arcsin x` and `sin 2theta` is `2x sqrt(1 - x^2)`, and neither
/// rewritten factor cancels at small x.
pub fn grover_time(x: f64) -> Result<f64> {
    if !(x > OVERLAP_EPS && x < 1.0 - OVERLAP_EPS) {
        return Err(invalid(format!("grover time needs overlap in (0, 1), got {x}")));
    }
    if x < SERIES_CUTOFF {
        return Ok(t0_series(x));
    }
    Ok(x.asin() / (x * (1.0 - x * x).sqrt()))
}

/// 1 + (2/3) x^2
pub fn t0_series(x: f64) -> f64 {
    1.0 + 2.0 / 3.0 * x * x
}

/// Farhi-Gutmann arrival time pi / (2 E x).
pub fn fg_arrival_time(x: f64, energy: f64) -> f64 {
    PI / (2.0 * energy * x)
}

/// Commutator-Hamiltonian arrival time theta / eta.
pub fn h_arrival_time(x: f64, energy: f64) -> f64 {
    let theta = x.acos();
    theta / (energy * (2.0 * theta).sin())
}
