use std::fmt;

use ndarray::Array1;
use ndarray_linalg::SVD;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operator::DenseOperator;
use super::state::{inner, l2};
use crate::error::{invalid, Error, Result};
use crate::C64;

/// Operator norm sup_{|v|=1} |Av|, dimensionless and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NormValue(f64);

impl NormValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<NormValue> for f64 {
    fn from(n: NormValue) -> f64 {
        n.0
    }
}

/// Largest singular value, computed by LAPACK.
pub fn operator_norm(a: &DenseOperator) -> Result<NormValue> {
    if !a.is_finite() {
        return Err(invalid("operator has non-finite entries"));
    }
    let (_, sv, _) = a
        .as_array()
        .svd(false, false)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok(NormValue(sv.iter().cloned().fold(0.0, f64::max)))
}

/// Power iteration on A^dagger A from a seeded random start.
///
/// Only matrix-vector products are used, so this route shares nothing with
/// [`operator_norm`]. Convergence is geometric in the ratio of the two
/// largest singular values; `max_iter` caps the work when they nearly tie.
pub fn operator_norm_power(a: &DenseOperator, seed: u64, max_iter: usize) -> Result<NormValue> {
    if !a.is_finite() {
        return Err(invalid("operator has non-finite entries"));
    }
    let dim = a.dim();
    let arr = a.as_array();
    let adj = a.adjoint().into_array();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Array1<C64> =
        Array1::from_shape_fn(dim, |_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let n0 = l2(v.view());
    v.mapv_inplace(|z| z / n0);

    let mut lambda = 0.0f64;
    let mut settled = 0;
    for _ in 0..max_iter {
        let av = arr.dot(&v);
        let w = adj.dot(&av);
        let next = inner(v.view(), w.view()).re;
        let wn = l2(w.view());
        if wn == 0.0 {
            return Ok(NormValue(0.0));
        }
        v = w.mapv(|z| z / wn);
        if (next - lambda).abs() <= 1e-15 * next.abs() {
            settled += 1;
            if settled >= 3 {
                lambda = next;
                break;
            }
        } else {
            settled = 0;
        }
        lambda = next;
    }
    Ok(NormValue(lambda.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn identity_has_unit_norm() {
        let n = operator_norm(&DenseOperator::identity(4)).unwrap();
        assert!((n.value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_norm_is_largest_entry() {
        let d = DenseOperator::diagonal(&[C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        assert!((operator_norm(&d).unwrap().value() - 2.0).abs() < 1e-15);
        assert!((operator_norm_power(&d, 7, 500).unwrap().value() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let d = DenseOperator::diagonal(&[C64::new(f64::NAN, 0.0), C64::new(2.0, 0.0)]);
        assert!(matches!(operator_norm(&d), Err(Error::InvalidArgument(_))));
        assert!(operator_norm_power(&d, 0, 10).is_err());
    }

    #[test]
    fn zero_operator() {
        assert_eq!(operator_norm(&DenseOperator::zeros(3)).unwrap().value(), 0.0);
        assert_eq!(operator_norm_power(&DenseOperator::zeros(3), 1, 10).unwrap().value(), 0.0);
    }
}
