use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Zip};

use super::state::QuantumState;
use crate::error::{invalid, Error, Result};
use crate::C64;

/// Default entrywise tolerance for the structural predicates.
pub const PREDICATE_TOL: f64 = 1e-10;

/// A square complex matrix acting on the N-dimensional state space.
///
/// Arithmetic through the `std::ops` impls panics on mismatched dimensions,
/// the same way `ndarray` does; the fallible entry points are
/// [`DenseOperator::compose`] and [`DenseOperator::apply`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    m: Array2<C64>,
}

impl DenseOperator {
    pub fn from_array(m: Array2<C64>) -> Result<Self> {
        let (rows, cols) = m.dim();
        if rows != cols {
            return Err(invalid(format!("operator must be square, got {rows}x{cols}")));
        }
        if rows == 0 {
            return Err(invalid("operator must have positive dimension"));
        }
        Ok(Self { m })
    }

    pub fn from_real(m: Array2<f64>) -> Result<Self> {
        Self::from_array(m.mapv(|v| C64::new(v, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        Self { m: Array2::eye(dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: Array2::zeros((dim, dim)) }
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        Self { m: Array2::from_diag(&Array1::from(diag.to_vec())) }
    }

    /// |ket><bra|
    pub fn outer(ket: ArrayView1<C64>, bra: ArrayView1<C64>) -> Self {
        let m = Array2::from_shape_fn((ket.len(), bra.len()), |(i, j)| ket[i] * bra[j].conj());
        Self { m }
    }

    /// |s><s|
    pub fn projector(s: &QuantumState) -> Self {
        Self::outer(s.amplitudes(), s.amplitudes())
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn as_array(&self) -> ArrayView2<'_, C64> {
        self.m.view()
    }

    pub fn into_array(self) -> Array2<C64> {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[[row, col]]
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.t().mapv(|z| z.conj()) }
    }

    pub fn transpose(&self) -> Self {
        Self { m: self.m.t().to_owned() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { m: self.m.mapv(|z| z * c) }
    }

    pub fn trace(&self) -> C64 {
        self.m.diag().sum()
    }

    /// self * rhs, checked.
    pub fn compose(&self, rhs: &DenseOperator) -> Result<Self> {
        self.check_dim(rhs.dim())?;
        Ok(Self { m: self.m.dot(&rhs.m) })
    }

    /// Matrix-vector product on a raw (not necessarily normalized) vector.
    pub fn apply_vec(&self, v: ArrayView1<C64>) -> Result<Array1<C64>> {
        self.check_dim(v.len())?;
        Ok(self.m.dot(&v))
    }

    /// Applies the operator to a state; the result is normalized only when
    /// the operator is unitary.
    pub fn apply(&self, s: &QuantumState) -> Result<Array1<C64>> {
        self.apply_vec(s.amplitudes())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Zip::from(&self.m)
            .and(&other.m)
            .fold(0.0f64, |acc, a, b| acc.max((a - b).norm()))
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.m.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.symmetry_defect(|z| z.conj()) <= tol
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.symmetry_defect(|z| -z.conj()) <= tol
    }

    /// max |U^dagger U - I|_ij <= tol
    pub fn is_unitary(&self, tol: f64) -> bool {
        let gram = self.adjoint().m.dot(&self.m);
        Zip::indexed(&gram).all(|(i, j), z| {
            let target = if i == j { 1.0 } else { 0.0 };
            (z - target).norm() <= tol
        })
    }

    /// Frobenius norm, an upper bound on the operator norm.
    pub fn frobenius(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// sqrt(|A|_1 |A|_inf), another cheap upper bound on the operator norm.
    pub fn one_inf_bound(&self) -> f64 {
        let max_col = self
            .m
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let max_row = self
            .m
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max);
        (max_col * max_row).sqrt()
    }

    fn symmetry_defect(&self, f: impl Fn(C64) -> C64) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.m[[i, j]] - f(self.m[[j, i]])).norm());
            }
        }
        worst
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator { m: &self.m + &rhs.m }
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator { m: &self.m - &rhs.m }
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        DenseOperator { m: self.m.dot(&rhs.m) }
    }
}

impl Neg for &DenseOperator {
    type Output = DenseOperator;
    fn neg(self) -> DenseOperator {
        DenseOperator { m: -&self.m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_non_square() {
        let m = Array2::<C64>::zeros((2, 3));
        assert!(matches!(DenseOperator::from_array(m), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn predicates() {
        let h = DenseOperator::from_array(ndarray::array![[c(1.0, 0.0), c(0.0, 2.0)], [c(0.0, -2.0), c(3.0, 0.0)]])
            .unwrap();
        assert!(h.is_hermitian(1e-14));
        assert!(!h.is_skew_hermitian(1e-14));
        let k = h.scale(c(0.0, 1.0));
        assert!(k.is_skew_hermitian(1e-14));
        assert!(!k.is_hermitian(1e-14));
        assert!(DenseOperator::identity(5).is_unitary(1e-14));
        assert!(!h.is_unitary(1e-3));
    }

    #[test]
    fn outer_and_trace() {
        let s = QuantumState::uniform(2).unwrap();
        let p = DenseOperator::projector(&s);
        assert!((p.trace() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((&p * &p).max_abs_diff(&p) < 1e-15);
    }

    #[test]
    fn compose_checks_dimensions() {
        let a = DenseOperator::identity(2);
        let b = DenseOperator::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DimensionMismatch { expected: 2, found: 4 }));
        let v = Array1::<C64>::zeros(3);
        assert!(a.apply_vec(v.view()).is_err());
    }

    #[test]
    fn norm_bounds_dominate_largest_entry() {
        let m = DenseOperator::diagonal(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        assert!((m.frobenius() - 5f64.sqrt()).abs() < 1e-15);
        assert!((m.one_inf_bound() - 2.0).abs() < 1e-15);
    }
}
