//! Mean, Duggal and Aluthge transforms.
//!
//! With `T = V|T|`:
//!
//! * Duggal: `|T| V`
//! * Aluthge: `|T|^{1/2} V |T|^{1/2}`
//! * mean: `(T + |T| V) / 2`, the average of `T` and its Duggal transform
//!
//! All three come from a single polar factorization so they share one rank
//! decision and one `V`.

use crate::error::{Error, Result};
use crate::matrix_core::CMatrix;
use crate::polar::{compare_kernels, PolarFactorization, PolarParts};
use crate::tolerance::ToleranceContext;

#[derive(Debug, Clone)]
pub struct TransformBundle {
    pub mean: CMatrix,
    pub duggal: CMatrix,
    pub aluthge: CMatrix,
    pub source_parts: PolarParts,
}

impl TransformBundle {
    pub fn new(t: &CMatrix, tol: &ToleranceContext) -> Result<Self> {
        let f = PolarFactorization::new(t, tol)?;
        Ok(Self::from_factorization(t, &f))
    }

    pub fn from_factorization(t: &CMatrix, f: &PolarFactorization) -> Self {
        let parts = &f.parts;
        let duggal = &parts.p * &parts.v;
        let mean = (t + &duggal).scale(0.5);
        let root = f.abs_power(0.5);
        let aluthge = &root * &parts.v * &root;
        Self {
            mean,
            duggal,
            aluthge,
            source_parts: parts.clone(),
        }
    }
}

pub fn mean_transform(t: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    let parts = crate::polar::polar_decompose(t, tol)?;
    Ok(mean_from_parts(t, &parts))
}

/// `(T + P V) / 2` for an existing decomposition of `T`.
pub fn mean_from_parts(t: &CMatrix, parts: &PolarParts) -> CMatrix {
    (t + &parts.p * &parts.v).scale(0.5)
}

pub fn duggal_transform(t: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    let parts = crate::polar::polar_decompose(t, tol)?;
    Ok(&parts.p * &parts.v)
}

pub fn aluthge_transform(t: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    Ok(TransformBundle::new(t, tol)?.aluthge)
}

fn require_adjoint_kernel_contained(t: &CMatrix, tol: &ToleranceContext) -> Result<()> {
    let cmp = compare_kernels(t, tol)?;
    if cmp.relation.adjoint_kernel_contained() {
        Ok(())
    } else {
        Err(Error::KernelConditionViolated {
            residual: cmp.ker_tstar_excess,
        })
    }
}

/// Polar decomposition of `M(T)` read off from that of `T`:
/// `M(T) = V ((|T| + V*|T|V) / 2)`.
///
/// Only valid when `Ker T* ⊆ Ker T`; otherwise the formula is wrong and the
/// call is refused.
pub fn mean_polar_parts(t: &CMatrix, tol: &ToleranceContext) -> Result<PolarParts> {
    require_adjoint_kernel_contained(t, tol)?;
    let parts = crate::polar::polar_decompose(t, tol)?;
    let vs = parts.v.adjoint();
    let q = (&parts.p + &vs * &parts.p * &parts.v).scale(0.5);
    let q = (&q + q.adjoint()).scale(0.5);
    Ok(PolarParts { p: q, ..parts })
}

/// `(|T~|, |T~*|) = (V*|T|V, |T|)` under `Ker T* ⊆ Ker T`.
pub fn duggal_moduli(t: &CMatrix, tol: &ToleranceContext) -> Result<(CMatrix, CMatrix)> {
    require_adjoint_kernel_contained(t, tol)?;
    let parts = crate::polar::polar_decompose(t, tol)?;
    let abs_duggal = parts.v.adjoint() * &parts.p * &parts.v;
    Ok(((&abs_duggal + abs_duggal.adjoint()).scale(0.5), parts.p))
}
