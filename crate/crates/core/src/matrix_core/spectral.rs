//! Hermitian eigendecomposition and the spectral calculus built on it.

use super::{fro_norm, herm_part, scale, validate, CMatrix};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceContext;

/// Eigenpairs of a Hermitian matrix, values ascending, eigenvectors in columns.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `Q diag(f(lambda)) Q*`, symmetrized.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let fl = f(lambda);
            scaled.column_mut(j).scale_mut(fl);
        }
        herm_part(&(scaled * self.vectors.adjoint()))
    }
}

/// Eigendecomposition of an already-Hermitian matrix, no checks.
pub(crate) fn eig_unchecked(h: &CMatrix) -> Result<HermEig> {
    let (values, vectors) = super::dense::hermitian_eigen(h)?;
    Ok(HermEig { values, vectors })
}

pub fn herm_eig(a: &CMatrix, tol: &ToleranceContext) -> Result<HermEig> {
    validate(a)?;
    let s = scale(a);
    let residual = fro_norm(&(a - a.adjoint()));
    let threshold = tol.rel_bound(s);
    if residual > threshold {
        return Err(Error::NotHermitian {
            residual,
            threshold,
        });
    }
    eig_unchecked(&herm_part(a))
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_function(
    a: &CMatrix,
    tol: &ToleranceContext,
    f: impl Fn(f64) -> f64,
) -> Result<CMatrix> {
    Ok(herm_eig(a, tol)?.map(f))
}

pub fn exp_hermitian(a: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    hermitian_function(a, tol, f64::exp)
}

fn psd_eig(a: &CMatrix, tol: &ToleranceContext) -> Result<HermEig> {
    let mut eig = herm_eig(a, tol)?;
    let threshold = tol.abs_bound(scale(a));
    if eig.min() < -threshold {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min(),
            threshold,
        });
    }
    for v in &mut eig.values {
        *v = v.max(0.0);
    }
    Ok(eig)
}

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-atol * scale, 0)` are clamped to zero.
pub fn sqrt_psd(a: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    Ok(psd_eig(a, tol)?.map(f64::sqrt))
}

/// `A^p` for positive semidefinite `A` and `p` in `(0, 1]`.
pub fn frac_power_psd(a: &CMatrix, p: f64, tol: &ToleranceContext) -> Result<CMatrix> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let eig = psd_eig(a, tol)?;
    if p == 1.0 {
        return Ok(eig.map(|l| l));
    }
    Ok(eig.map(|l| if l == 0.0 { 0.0 } else { l.powf(p) }))
}

/// Principal logarithm of a positive definite matrix.
pub fn log_pd(a: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    let eig = herm_eig(a, tol)?;
    let threshold = tol.abs_bound(scale(a));
    if eig.min() <= threshold {
        return Err(Error::NotPd {
            min_eigenvalue: eig.min(),
            threshold,
        });
    }
    Ok(eig.map(f64::ln))
}
