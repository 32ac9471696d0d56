//! Loewner (positive semidefinite) order.

use serde::Serialize;

use super::spectral::eig_unchecked;
use super::{fro_norm, herm_part, scale, validate, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LoewnerOrder {
    Ge,
    Le,
    Eq,
    Incomparable,
}

impl LoewnerOrder {
    /// `A ⪰ B`, counting equality.
    pub fn is_ge(self) -> bool {
        matches!(self, Self::Ge | Self::Eq)
    }

    pub fn is_le(self) -> bool {
        matches!(self, Self::Le | Self::Eq)
    }
}

/// Extreme eigenpairs of `Herm(A - B)` plus the threshold they are judged against.
#[derive(Debug, Clone)]
pub struct LoewnerGap {
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub min_vector: CVector,
    pub max_vector: CVector,
    pub threshold: f64,
}

impl LoewnerGap {
    pub fn order(&self) -> LoewnerOrder {
        let ge = self.min_eigenvalue >= -self.threshold;
        let le = self.max_eigenvalue <= self.threshold;
        match (ge, le) {
            (true, true) => LoewnerOrder::Eq,
            (true, false) => LoewnerOrder::Ge,
            (false, true) => LoewnerOrder::Le,
            (false, false) => LoewnerOrder::Incomparable,
        }
    }

    /// How far `A ⪰ B` is from holding: `max(0, -lambda_min)`.
    pub fn ge_violation(&self) -> f64 {
        (-self.min_eigenvalue).max(0.0)
    }

    pub fn le_violation(&self) -> f64 {
        self.max_eigenvalue.max(0.0)
    }
}

fn check_hermitian(a: &CMatrix, tol: &ToleranceContext) -> Result<f64> {
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
    Ok(s)
}

/// Spectrum of the symmetrized difference `Herm(A - B)`.
pub fn loewner_gap(a: &CMatrix, b: &CMatrix, tol: &ToleranceContext) -> Result<LoewnerGap> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            actual: b.nrows(),
        });
    }
    let s = check_hermitian(a, tol)?.max(check_hermitian(b, tol)?);
    let eig = eig_unchecked(&herm_part(&(a - b)))?;
    let last = eig.values.len() - 1;
    Ok(LoewnerGap {
        min_eigenvalue: eig.min(),
        max_eigenvalue: eig.max(),
        min_vector: eig.vectors.column(0).into_owned(),
        max_vector: eig.vectors.column(last).into_owned(),
        threshold: tol.abs_bound(s),
    })
}

pub fn loewner_compare(a: &CMatrix, b: &CMatrix, tol: &ToleranceContext) -> Result<LoewnerOrder> {
    Ok(loewner_gap(a, b, tol)?.order())
}
