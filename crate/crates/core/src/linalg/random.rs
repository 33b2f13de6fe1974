use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operator::DenseOperator;
use crate::error::{invalid, Result};
use crate::C64;

/// A seeded random unitary: Gram-Schmidt on the columns of a random complex
/// matrix with entries uniform in the unit square around zero.
pub fn random_unitary(dim: usize, seed: u64) -> Result<DenseOperator> {
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m: Array2<C64> =
        Array2::from_shape_fn((dim, dim), |_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    for j in 0..dim {
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for k in 0..j {
                let (done, mut rest) = m.view_mut().split_at(ndarray::Axis(1), j);
                let qk = done.column(k);
                let mut col = rest.column_mut(0);
                let proj: C64 = qk.iter().zip(col.iter()).map(|(q, v)| q.conj() * v).sum();
                col.zip_mut_with(&qk, |v, q| *v -= proj * q);
            }
        }
        let mut col = m.column_mut(j);
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        col.mapv_inplace(|z| z / norm);
    }
    DenseOperator::from_array(m)
}
