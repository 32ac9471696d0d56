//! Canonical polar decomposition `T = V|T|` with `Ker V = Ker T`.
//!
//! `V` is assembled only from the singular triples above the rank cutoff, so
//! it is a genuine partial isometry rather than a unitary completion. `|T|` is
//! truncated to the same triples, which makes `Ker |T| = Ker V` exact.

use serde::Serialize;

use crate::error::Result;
use crate::matrix_core::{
    fro_norm, kernel_projector, projection_onto_range, subspace_excess, validate, CMatrix,
    RankDecision, Svd,
};
use crate::tolerance::ToleranceContext;

#[derive(Debug, Clone)]
pub struct PolarParts {
    /// Partial isometry.
    pub v: CMatrix,
    /// Modulus `|T|`, positive semidefinite.
    pub p: CMatrix,
    pub rank: usize,
    pub diagnostics: RankDecision,
    pub tol: ToleranceContext,
}

/// Residuals of the identities a polar pair must satisfy.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PolarResiduals {
    pub reconstruction: f64,
    pub partial_isometry: f64,
    pub initial_projection: f64,
    pub final_projection: f64,
    pub kernel_mismatch: f64,
}

impl PolarResiduals {
    /// All residuals within `rtol * scale(T)` (projector residuals within `rtol`).
    pub fn holds(&self, t_scale: f64, tol: &ToleranceContext) -> bool {
        self.reconstruction <= tol.rel_bound(t_scale)
            && self.partial_isometry <= tol.rtol
            && self.initial_projection <= tol.rtol
            && self.final_projection <= tol.rtol
            && self.kernel_mismatch <= tol.rtol
    }
}

impl PolarParts {
    pub fn n(&self) -> usize {
        self.v.nrows()
    }

    /// `V * P`
    pub fn compose(&self) -> CMatrix {
        &self.v * &self.p
    }

    pub fn residuals(&self, t: &CMatrix) -> Result<PolarResiduals> {
        let tol = &self.tol;
        let vs = self.v.adjoint();
        let initial = &vs * &self.v;
        let fin = &self.v * &vs;
        let ker_v = kernel_projector(&self.v, tol)?;
        let ker_p = kernel_projector(&self.p, tol)?;
        Ok(PolarResiduals {
            reconstruction: fro_norm(&(t - self.compose())),
            partial_isometry: fro_norm(&(&fin * &self.v - &self.v)),
            initial_projection: fro_norm(&(initial - projection_onto_range(&self.p, tol)?)),
            final_projection: fro_norm(&(fin - projection_onto_range(t, tol)?)),
            kernel_mismatch: fro_norm(&(ker_v - ker_p)),
        })
    }
}

/// The polar decomposition together with the SVD it came from.
///
/// Keeping the singular triples around lets callers form `|T|^p` and
/// `|T*|^p` without taking roots of `T*T`, whose near-zero eigenvalues would
/// otherwise be amplified.
#[derive(Debug, Clone)]
pub struct PolarFactorization {
    pub parts: PolarParts,
    pub svd: Svd,
}

impl PolarFactorization {
    pub fn new(t: &CMatrix, tol: &ToleranceContext) -> Result<Self> {
        validate(t)?;
        let svd = Svd::new(t)?;
        let diagnostics = svd.rank_decision(tol);
        let r = diagnostics.rank;
        let u_r = svd.u.columns(0, r);
        let w_r = svd.w.columns(0, r);
        let v = u_r * w_r.adjoint();
        let p = spectral_sum(&w_r.into_owned(), &svd.sigma[..r], |s| s);
        Ok(Self {
            parts: PolarParts {
                v,
                p,
                rank: r,
                diagnostics,
                tol: *tol,
            },
            svd,
        })
    }

    /// `|T|^power`, built from the retained right singular vectors.
    pub fn abs_power(&self, power: f64) -> CMatrix {
        if power == 1.0 {
            return self.abs_function(|s| s);
        }
        self.abs_function(|s| s.powf(power))
    }

    /// `|T*|^power`, built from the retained left singular vectors.
    pub fn abs_adjoint_power(&self, power: f64) -> CMatrix {
        if power == 1.0 {
            return self.abs_adjoint_function(|s| s);
        }
        self.abs_adjoint_function(|s| s.powf(power))
    }

    /// `f(|T|)` on the numerical range of `|T|`, zero on its kernel.
    pub fn abs_function(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let r = self.parts.rank;
        spectral_sum(&self.svd.w.columns(0, r).into_owned(), &self.svd.sigma[..r], f)
    }

    /// `f(|T*|)` on the numerical range of `|T*|`, zero on its kernel.
    pub fn abs_adjoint_function(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let r = self.parts.rank;
        spectral_sum(&self.svd.u.columns(0, r).into_owned(), &self.svd.sigma[..r], f)
    }

    pub fn sigma_min(&self) -> f64 {
        self.svd.sigma.last().copied().unwrap_or(0.0)
    }
}

/// `B diag(f(sigma)) B*` for orthonormal columns `B`, symmetrized.
fn spectral_sum(basis: &CMatrix, sigma: &[f64], f: impl Fn(f64) -> f64) -> CMatrix {
    let n = basis.nrows();
    if sigma.is_empty() {
        return CMatrix::zeros(n, n);
    }
    let mut scaled = basis.clone();
    for (j, &s) in sigma.iter().enumerate() {
        scaled.column_mut(j).scale_mut(f(s));
    }
    let m = scaled * basis.adjoint();
    (&m + m.adjoint()).scale(0.5)
}

pub fn polar_decompose(t: &CMatrix, tol: &ToleranceContext) -> Result<PolarParts> {
    Ok(PolarFactorization::new(t, tol)?.parts)
}

/// `|T*| = V |T| V*`
pub fn abs_adjoint(parts: &PolarParts) -> CMatrix {
    &parts.v * &parts.p * parts.v.adjoint()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KernelRelation {
    Equal,
    /// `Ker T ⊆ Ker T*`, strictly.
    KerTInKerTstar,
    /// `Ker T* ⊆ Ker T`, strictly.
    KerTstarInKerT,
    None,
}

impl KernelRelation {
    /// Whether `Ker T* ⊆ Ker T`, the hypothesis of the mean-polar formula.
    pub fn adjoint_kernel_contained(self) -> bool {
        matches!(self, Self::Equal | Self::KerTstarInKerT)
    }

    pub fn kernel_contained(self) -> bool {
        matches!(self, Self::Equal | Self::KerTInKerTstar)
    }
}

/// Containment residuals between `Ker T` and `Ker T*`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelComparison {
    pub relation: KernelRelation,
    /// `||(I - K_{T*}) K_T||`
    pub ker_t_excess: f64,
    /// `||(I - K_T) K_{T*}||`
    pub ker_tstar_excess: f64,
}

/// Compares kernels through projector compositions; containment holds when
/// the excess is at most `rtol` (projectors are dimensionless).
pub fn compare_kernels(t: &CMatrix, tol: &ToleranceContext) -> Result<KernelComparison> {
    validate(t)?;
    let svd = Svd::new(t)?;
    let n = t.nrows();
    let r = svd.rank_decision(tol).rank;
    let ker_t = svd.right_projector(r..n);
    let ker_ts = svd.left_projector(r..n);
    let ker_t_excess = subspace_excess(&ker_t, &ker_ts);
    let ker_tstar_excess = subspace_excess(&ker_ts, &ker_t);
    let relation = match (ker_t_excess <= tol.rtol, ker_tstar_excess <= tol.rtol) {
        (true, true) => KernelRelation::Equal,
        (true, false) => KernelRelation::KerTInKerTstar,
        (false, true) => KernelRelation::KerTstarInKerT,
        (false, false) => KernelRelation::None,
    };
    Ok(KernelComparison {
        relation,
        ker_t_excess,
        ker_tstar_excess,
    })
}

pub fn kernel_relation(t: &CMatrix, tol: &ToleranceContext) -> Result<KernelRelation> {
    Ok(compare_kernels(t, tol)?.relation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_core::{diag_real, from_real_rows, identity, scale, sqrt_psd};

    fn tol() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn assert_close(a: &CMatrix, b: &CMatrix, eps: f64) {
        assert!(fro_norm(&(a - b)) <= eps, "\n{a}\nvs\n{b}");
    }

    #[test]
    fn self_adjoint_counterexample_factors() {
        let t = from_real_rows(2, &[1.0, 1.0, -1.0, -2.0]);
        let parts = polar_decompose(&t, &tol()).unwrap();
        assert_close(&parts.v, &diag_real(&[1.0, -1.0]), 1e-12);
        assert_close(&parts.p, &from_real_rows(2, &[1.0, 1.0, 1.0, 2.0]), 1e-12);
        assert_eq!(parts.rank, 2);
        assert!(parts.residuals(&t).unwrap().holds(scale(&t), &tol()));
    }

    #[test]
    fn unitary_counterexample_factors() {
        let t = from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]);
        let parts = polar_decompose(&t, &tol()).unwrap();
        assert_close(&parts.v, &from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]), 1e-12);
        assert_close(&parts.p, &diag_real(&[0.5, 1.5]), 1e-12);
    }

    #[test]
    fn identity_and_zero() {
        let parts = polar_decompose(&identity(3), &tol()).unwrap();
        assert_close(&parts.v, &identity(3), 1e-14);
        assert_close(&parts.p, &identity(3), 1e-14);
        let z = polar_decompose(&CMatrix::zeros(3, 3), &tol()).unwrap();
        assert_eq!(z.rank, 0);
        assert_eq!(z.v, CMatrix::zeros(3, 3));
        assert_eq!(z.p, CMatrix::zeros(3, 3));
    }

    #[test]
    fn nilpotent_partial_isometry() {
        let t = from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        let parts = polar_decompose(&t, &tol()).unwrap();
        assert_eq!(parts.rank, 1);
        assert_close(&parts.v, &t, 1e-14);
        assert_close(&parts.p, &diag_real(&[0.0, 1.0]), 1e-14);
        assert!(parts.residuals(&t).unwrap().holds(1.0, &tol()));
    }

    #[test]
    fn abs_adjoint_examples() {
        let t = from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]);
        let parts = polar_decompose(&t, &tol()).unwrap();
        assert_close(&abs_adjoint(&parts), &diag_real(&[1.5, 0.5]), 1e-12);
        let oracle = sqrt_psd(&(&t * t.adjoint()), &tol()).unwrap();
        assert_close(&abs_adjoint(&parts), &oracle, 1e-12);

        let psd = from_real_rows(2, &[1.0, 1.0, 1.0, 2.0]);
        let parts = polar_decompose(&psd, &tol()).unwrap();
        assert_close(&abs_adjoint(&parts), &psd, 1e-12);

        let n = from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        let parts = polar_decompose(&n, &tol()).unwrap();
        assert_close(&abs_adjoint(&parts), &diag_real(&[1.0, 0.0]), 1e-14);
    }

    #[test]
    fn kernel_relation_examples() {
        let inv = from_real_rows(2, &[1.0, 1.0, -1.0, -2.0]);
        assert_eq!(kernel_relation(&inv, &tol()).unwrap(), KernelRelation::Equal);
        let n = from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(kernel_relation(&n, &tol()).unwrap(), KernelRelation::None);
        let d = diag_real(&[0.0, 1.0]);
        assert_eq!(kernel_relation(&d, &tol()).unwrap(), KernelRelation::Equal);
    }

    #[test]
    fn kernel_relation_in_three_dimensions() {
        // e2 -> e3: Ker T = span{e1, e3}, Ker T* = span{e1, e2}
        let t = from_real_rows(3, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(kernel_relation(&t, &tol()).unwrap(), KernelRelation::None);
        // weighted swap of e1, e2: both kernels are span{e3}
        let s = from_real_rows(3, &[0.0, 1.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let cmp = compare_kernels(&s, &tol()).unwrap();
        assert_eq!(cmp.relation, KernelRelation::Equal);
        assert!(cmp.ker_t_excess < 1e-14);
    }

    #[test]
    fn abs_power_matches_root_of_gram() {
        let t = from_real_rows(3, &[1.0, 2.0, 0.0, -1.0, 0.5, 3.0, 0.2, 0.0, 1.0]);
        let f = PolarFactorization::new(&t, &tol()).unwrap();
        let gram = t.adjoint() * &t;
        assert_close(&f.abs_power(1.0), &sqrt_psd(&gram, &tol()).unwrap(), 1e-12);
        let quarter = crate::matrix_core::frac_power_psd(&gram, 0.25, &tol()).unwrap();
        assert_close(&f.abs_power(0.5), &quarter, 1e-12);
        let cogram = &t * t.adjoint();
        let root = sqrt_psd(&cogram, &tol()).unwrap();
        assert_close(&f.abs_adjoint_power(1.0), &root, 1e-12);
    }
}
