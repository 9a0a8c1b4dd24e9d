use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::eig::{hermitian_eigen, Eigen};
use crate::linalg::layout::{partial_trace, permute_subsystems};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// A Hermitian operator on a tensor product of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T: Real> {
    matrix: ComplexMatrix<T>,
    dims: Vec<usize>,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates squareness, the subsystem factorization and Hermiticity.
    pub fn new(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!("{}x{} operator is not square", matrix.rows(), matrix.cols())));
        }
        let product: usize = dims.iter().product();
        if product != matrix.rows() {
            return Err(Error::Shape(format!("subsystem dims {dims:?} do not multiply to {}", matrix.rows())));
        }
        let deviation = matrix.hermitian_deviation().to_f64_lossy();
        let tolerance = T::HERMITIAN_TOL * (1.0 + matrix.max_abs().to_f64_lossy());
        if deviation > tolerance {
            return Err(Error::NotHermitian { deviation, tolerance });
        }
        Ok(Self { matrix, dims })
    }

    /// Single-subsystem operator.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![n])
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix<T>, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        Self { matrix, dims }
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        let n = dims.iter().product();
        Self { matrix: ComplexMatrix::identity(n), dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `tr(self · other)`; real for Hermitian arguments up to rounding.
    pub fn trace_product(&self, other: &Self) -> Result<Complex<T>> {
        self.matrix.trace_product(&other.matrix)
    }

    pub fn scale(&self, s: T) -> Self {
        Self { matrix: self.matrix.scale(s), dims: self.dims.clone() }
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(Self { matrix: self.matrix.kron(&other.matrix)?, dims })
    }

    /// Sum of two operators on the same subsystems.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { matrix: &self.matrix + &other.matrix, dims: self.dims.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { matrix: &self.matrix - &other.matrix, dims: self.dims.clone() })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!("subsystems {:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    /// Traces out every subsystem outside `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let (matrix, dims) = partial_trace(&self.matrix, &self.dims, keep)?;
        Ok(Self { matrix, dims })
    }

    /// Reorders subsystems: subsystem `i` of the result is subsystem `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let (matrix, dims) = permute_subsystems(&self.matrix, &self.dims, perm)?;
        Ok(Self { matrix, dims })
    }

    /// Full transpose in the computational basis of every subsystem.
    pub fn transpose_computational(&self) -> Self {
        Self { matrix: self.matrix.transpose(), dims: self.dims.clone() }
    }

    /// Conjugation `U A U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        let m = u.checked_matmul(&self.matrix)?.checked_matmul(&u.adjoint())?;
        Ok(Self { matrix: m, dims: self.dims.clone() })
    }

    pub fn eig(&self) -> Result<Eigen<T>> {
        hermitian_eigen(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(self.eig()?.values)
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or_else(T::zero))
    }
}

/// Eigendecomposition with the Hermiticity precondition checked.
pub fn hermitian_eig<T: Real>(a: &ComplexMatrix<T>) -> Result<Eigen<T>> {
    let deviation = a.hermitian_deviation().to_f64_lossy();
    let tolerance = T::HERMITIAN_TOL * (1.0 + a.max_abs().to_f64_lossy());
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation, tolerance });
    }
    hermitian_eigen(a)
}
