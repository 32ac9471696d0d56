//! Dense decompositions, delegated to `faer`.
//!
//! Matrices stay `nalgebra` values everywhere else; they are copied into
//! `faer` only for the factorizations. Both crates use `num_complex` scalars,
//! so the copy is entrywise.

use faer::{Mat, MatRef, Side};

use super::{CMatrix, C64};
use crate::error::{Error, Result};

fn to_faer(a: &CMatrix) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer(a: MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// `A = U diag(sigma) W*` with `sigma` descending; `U` is `m x m`, `W` is `n x n`.
pub(crate) fn svd(a: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    let f = to_faer(a)
        .svd()
        .map_err(|_| Error::NoConvergence("singular value decomposition"))?;
    let sigma = f.S().column_vector().iter().map(|z| z.re).collect();
    Ok((from_faer(f.U()), sigma, from_faer(f.V())))
}

/// Eigenpairs of a Hermitian matrix (lower triangle read), values ascending.
pub(crate) fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let f = to_faer(h)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::NoConvergence("Hermitian eigendecomposition"))?;
    let values = f.S().column_vector().iter().map(|z| z.re).collect();
    Ok((values, from_faer(f.U())))
}

/// Eigenvalues of a general square matrix, unordered.
pub(crate) fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    to_faer(a)
        .eigenvalues()
        .map_err(|_| Error::NoConvergence("eigenvalue decomposition"))
}
