//! Dense complex linear algebra on multi-device tester spaces.

pub mod cap;
mod eig;
mod haar;
mod hermitian;
mod layout;
mod matrix;

pub use cap::{dim_cap, DEFAULT_DIM_CAP, DIM_CAP_ENV};
pub use eig::Eigen;
pub use haar::{haar_unitary, Unitary};
pub use hermitian::{hermitian_eig, HermitianOperator};
pub use layout::{partial_trace, permute_subsystems, permute_vector, SubsystemLayout};
pub use matrix::ComplexMatrix;

use crate::error::Result;
use crate::scalar::Real;

/// Kronecker product (free-function form).
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.kron(b)
}

/// Kronecker product of a list of factors; the empty list gives `[[1]]`.
pub fn kron_all<T: Real>(factors: &[&ComplexMatrix<T>]) -> Result<ComplexMatrix<T>> {
    factors.iter().try_fold(ComplexMatrix::identity(1), |acc, f| acc.kron(f))
}
