//! Operator exponentials.
//!
//! Two independent evaluation routes exist on purpose:
//!
//! * [`matrix_exponential`] sums the power series `I + A + A^2/2! + ...`
//!   after scaling `A` by `2^-s` so its norm is at most 0.5, then squares the
//!   result `s` times. Works for any square matrix.
//! * [`exp_hermitian`] diagonalizes a hermitian `H` with LAPACK and forms
//!   `V diag(e^{-i lambda t}) V^dagger`.
//!
//! [`expm_apply`] runs the same series against a single vector, which is
//! what large-N state evolution needs.

use ndarray::{Array1, Array2, ArrayView1, Axis, ShapeBuilder};
use ndarray_linalg::{Eigh, UPLO};

use super::operator::{DenseOperator, PREDICATE_TOL};
use super::state::l2;
use crate::error::{invalid, Error, Result};
use crate::C64;

const SCALED_NORM: f64 = 0.5;
const TERM_CUTOFF: f64 = 1e-16;
const MAX_TERMS: usize = 80;

/// Cheapest rigorous upper bound on the operator norm we have.
fn norm_bound(a: &DenseOperator) -> f64 {
    a.frobenius().min(a.one_inf_bound())
}

fn frobenius(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// e^A by truncated power series with scaling and squaring.
pub fn matrix_exponential(a: &DenseOperator) -> Result<DenseOperator> {
    if !a.is_finite() {
        return Err(invalid("cannot exponentiate an operator with non-finite entries"));
    }
    let bound = norm_bound(a);
    let squarings = if bound > SCALED_NORM {
        (bound / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scale = C64::new(2f64.powi(-squarings), 0.0);
    let scaled = a.as_array().mapv(|z| z * scale);

    let dim = a.dim();
    let mut sum: Array2<C64> = Array2::eye(dim);
    let mut term: Array2<C64> = Array2::eye(dim);
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = term.dot(&scaled);
        let inv_k = C64::new(1.0 / k as f64, 0.0);
        term.mapv_inplace(|z| z * inv_k);
        sum += &term;
        if frobenius(&term) < TERM_CUTOFF {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Backend("exponential series did not converge".into()));
    }
    for _ in 0..squarings {
        sum = sum.dot(&sum);
    }
    DenseOperator::from_array(sum)
}

/// e^{-iHt} from the eigendecomposition of a hermitian `H`.
pub fn exp_hermitian(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    if !h.is_finite() || !t.is_finite() {
        return Err(invalid("non-finite generator or time"));
    }
    if !h.is_hermitian(PREDICATE_TOL) {
        return Err(invalid("eigendecomposition route requires a hermitian generator"));
    }
    // LAPACK reads column-major storage; a row-major view would be
    // factored as its transpose, i.e. the conjugate of H.
    let mut fortran = Array2::zeros(h.as_array().raw_dim().f());
    fortran.assign(&h.as_array());
    let (values, vectors) = fortran.eigh(UPLO::Lower).map_err(|e| Error::Backend(e.to_string()))?;
    let phases = values.mapv(|lambda| C64::from_polar(1.0, -lambda * t));
    let scaled = &vectors * &phases.insert_axis(Axis(0));
    let adj = vectors.t().mapv(|z| z.conj());
    DenseOperator::from_array(scaled.dot(&adj))
}

/// e^{-iHt} through the series route; `H` need not be hermitian.
pub fn propagator(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    matrix_exponential(&h.scale(C64::new(0.0, -t)))
}

/// e^A v without forming e^A.
///
/// The interval is cut into `m = ceil(bound(A))` substeps so each Taylor
/// sum runs on a generator of norm at most one.
pub fn expm_apply(a: &DenseOperator, v: ArrayView1<C64>) -> Result<Array1<C64>> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: v.len() });
    }
    if !a.is_finite() {
        return Err(invalid("cannot exponentiate an operator with non-finite entries"));
    }
    let substeps = norm_bound(a).ceil().max(1.0) as usize;
    let arr = a.as_array();
    let mut acc = v.to_owned();
    for _ in 0..substeps {
        let mut term = acc.clone();
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            let factor = C64::new(1.0 / (k * substeps) as f64, 0.0);
            term = arr.dot(&term).mapv(|z| z * factor);
            acc += &term;
            if l2(term.view()) <= TERM_CUTOFF * l2(acc.view()).max(f64::MIN_POSITIVE) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Backend("exponential series did not converge".into()));
        }
    }
    Ok(acc)
}

/// e^{-iHt} |v> through [`expm_apply`].
pub fn evolve_vec(h: &DenseOperator, t: f64, v: ArrayView1<C64>) -> Result<Array1<C64>> {
    expm_apply(&h.scale(C64::new(0.0, -t)), v)
}

/// (I + A/k)^k by repeated multiplication.
pub fn power_limit_approx(a: &DenseOperator, k: u32) -> Result<DenseOperator> {
    if k == 0 {
        return Err(invalid("power limit needs k >= 1"));
    }
    let step = &DenseOperator::identity(a.dim()) + &a.scale(C64::new(1.0 / k as f64, 0.0));
    let mut acc = step.clone();
    for _ in 1..k {
        acc = &acc * &step;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_gives_identity() {
        let e = matrix_exponential(&DenseOperator::zeros(3)).unwrap();
        assert_eq!(e, DenseOperator::identity(3));
    }

    #[test]
    fn diagonal_i_pi() {
        let a = DenseOperator::diagonal(&[c(0.0, PI), c(0.0, 0.0)]);
        let e = matrix_exponential(&a).unwrap();
        let want = DenseOperator::diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(e.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn hermitian_route_matches_diagonal() {
        let h = DenseOperator::diagonal(&[c(PI, 0.0), c(0.5, 0.0)]);
        let e = exp_hermitian(&h, 1.0).unwrap();
        let want = DenseOperator::diagonal(&[c(-1.0, 0.0), C64::from_polar(1.0, -0.5)]);
        assert!(e.max_abs_diff(&want) < 1e-14);
        assert!(exp_hermitian(&h.scale(c(0.0, 1.0)), 1.0).is_err());
    }

    #[test]
    fn hermitian_route_on_pauli_y() {
        // e^{-i sigma_y t} = [[cos t, -sin t], [sin t, cos t]]
        let y = DenseOperator::from_array(ndarray::arr2(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]))
            .unwrap();
        let t: f64 = 0.7;
        let want = DenseOperator::from_real(ndarray::arr2(&[[t.cos(), -t.sin()], [t.sin(), t.cos()]])).unwrap();
        assert!(exp_hermitian(&y, t).unwrap().max_abs_diff(&want) < 1e-15);
        assert!(matrix_exponential(&y.scale(c(0.0, -t))).unwrap().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn large_norm_generator_is_scaled() {
        // rotation generator with angle 40 rad
        let a = DenseOperator::from_array(ndarray::array![[c(0.0, 0.0), c(-40.0, 0.0)], [c(40.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let e = matrix_exponential(&a).unwrap();
        assert!((e.entry(0, 0).re - 40f64.cos()).abs() < 1e-12);
        assert!((e.entry(1, 0).re - 40f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn apply_matches_full_exponential() {
        let a = DenseOperator::from_array(ndarray::array![[c(0.0, 1.0), c(-3.0, 0.5)], [c(3.0, 0.5), c(0.2, -2.0)]])
            .unwrap();
        let v = ndarray::array![c(0.6, 0.0), c(0.0, 0.8)];
        let full = matrix_exponential(&a).unwrap().apply_vec(v.view()).unwrap();
        let direct = expm_apply(&a, v.view()).unwrap();
        assert!(super::super::state::distance(full.view(), direct.view()) < 1e-13);
    }

    #[test]
    fn power_limit_basics() {
        let a = DenseOperator::from_array(ndarray::array![[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(matches!(power_limit_approx(&a, 0), Err(Error::InvalidArgument(_))));
        let one = power_limit_approx(&a, 1).unwrap();
        assert_eq!(one, &DenseOperator::identity(2) + &a);
        let z = power_limit_approx(&DenseOperator::zeros(2), 17).unwrap();
        assert_eq!(z, DenseOperator::identity(2));
    }
}
