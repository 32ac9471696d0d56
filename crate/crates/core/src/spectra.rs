//! Eigenvalues and the joint point spectrum.
//!
//! In finite dimension an approximate joint eigenvector sequence has a
//! convergent subsequence, so the joint approximate point spectrum is the set
//! of `lambda` admitting a unit `x` with `Tx = lambda x` and
//! `T*x = conj(lambda) x`. That is what [`joint_point_spectrum`] computes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{ser_complex, ser_complex_list, ser_vector};
use crate::matrix_core::{eigenvalues_unordered, identity, scale, validate, CMatrix, CVector, Svd, C64};
use crate::polar::{abs_adjoint, polar_decompose};
use crate::tolerance::ToleranceContext;
use crate::transforms::mean_transform;

/// Eigenvalues sorted by `(re, im)`.
pub fn eigenvalues(t: &CMatrix) -> Result<Vec<C64>> {
    validate(t)?;
    let mut ev = eigenvalues_unordered(t)?;
    sort_canonical(&mut ev);
    Ok(ev)
}

fn sort_canonical(zs: &mut [C64]) {
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

#[derive(Debug, Clone, Serialize)]
pub struct JointSpectrumPoint {
    #[serde(serialize_with = "ser_complex")]
    pub lambda: C64,
    /// Unit vector with `Tx ≈ lambda x` and `T*x ≈ conj(lambda) x`.
    #[serde(serialize_with = "ser_vector")]
    pub witness: CVector,
    /// `(‖Tx - lambda x‖, ‖T*x - conj(lambda) x‖)`
    pub residuals: (f64, f64),
}

/// Smallest singular value of `[T - lambda I; T* - conj(lambda) I]` and the
/// matching right singular vector.
fn stacked_min(t: &CMatrix, lambda: C64) -> Result<(f64, CVector)> {
    let n = t.nrows();
    let id = identity(n);
    let top = t - &id * lambda;
    let bottom = t.adjoint() - &id * lambda.conj();
    let stacked = CMatrix::from_fn(2 * n, n, |i, j| {
        if i < n {
            top[(i, j)]
        } else {
            bottom[(i - n, j)]
        }
    });
    // singular values are descending, so the last pair is the smallest
    let svd = Svd::new(&stacked)?;
    Ok((svd.sigma[n - 1], svd.w.column(n - 1).into_owned()))
}

/// Groups eigenvalues that lie within `radius` of a cluster's first member.
fn clusters(ev: &[C64], radius: f64) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for &z in ev {
        match out.iter_mut().find(|c| (c[0] - z).norm() <= radius) {
            Some(c) => c.push(z),
            None => out.push(vec![z]),
        }
    }
    out
}

/// Moves `lambda` to the Rayleigh quotient of the current witness while that
/// lowers the stacked residual. Defective eigenvalues are computed with errors
/// near `sqrt(eps)`; a joint eigenvector pins them down.
fn refine(t: &CMatrix, lambda: C64) -> Result<(C64, f64, CVector)> {
    let (mut sigma, mut x) = stacked_min(t, lambda)?;
    let mut lambda = lambda;
    for _ in 0..3 {
        let next = x.dotc(&(t * &x));
        let (s2, x2) = stacked_min(t, next)?;
        if s2 >= sigma {
            break;
        }
        (lambda, sigma, x) = (next, s2, x2);
    }
    Ok((lambda, sigma, x))
}

pub fn joint_point_spectrum(t: &CMatrix, tol: &ToleranceContext) -> Result<Vec<JointSpectrumPoint>> {
    let ev = eigenvalues(t)?;
    let s = scale(t);
    let threshold = tol.abs_bound(s);
    let radius = tol.match_radius(s);
    let mut points: Vec<JointSpectrumPoint> = Vec::new();
    for cluster in clusters(&ev, radius) {
        let refined = cluster
            .iter()
            .map(|&lambda| refine(t, lambda))
            .collect::<Result<Vec<_>>>()?;
        let best = refined
            .into_iter()
            .filter(|(lambda, _, _)| (lambda - cluster[0]).norm() <= 2.0 * radius)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((lambda, sigma, x)) = best else {
            continue;
        };
        let duplicate = points.iter().any(|p| (p.lambda - lambda).norm() <= radius);
        if sigma <= threshold && !duplicate {
            let r1 = (t * &x - &x * lambda).norm();
            let r2 = (t.adjoint() * &x - &x * lambda.conj()).norm();
            points.push(JointSpectrumPoint {
                lambda,
                witness: x,
                residuals: (r1, r2),
            });
        }
    }
    Ok(points)
}

/// Residuals of the four modulus and phase identities satisfied by a joint
/// eigenvector with nonzero eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct XiaCheck {
    pub holds: bool,
    /// `‖|T|x - |λ|x‖, ‖|T*|x - |λ|x‖, ‖Vx - e^{iθ}x‖, ‖V*x - e^{-iθ}x‖`
    pub residuals: [f64; 4],
    pub threshold: f64,
}

pub fn xia_witness_check(
    t: &CMatrix,
    point: &JointSpectrumPoint,
    tol: &ToleranceContext,
) -> Result<XiaCheck> {
    let s = scale(t);
    let modulus = point.lambda.norm();
    if modulus <= tol.abs_bound(s) {
        return Err(Error::ZeroLambda(modulus));
    }
    let parts = polar_decompose(t, tol)?;
    let x = &point.witness;
    let phase = point.lambda / modulus;
    let residuals = [
        (&parts.p * x - x.scale(modulus)).norm(),
        (abs_adjoint(&parts) * x - x.scale(modulus)).norm(),
        (&parts.v * x - x * phase).norm(),
        (parts.v.adjoint() * x - x * phase.conj()).norm(),
    ];
    let threshold = tol.match_radius(s);
    Ok(XiaCheck {
        holds: residuals.iter().all(|&r| r <= threshold),
        residuals,
        threshold,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AjInclusionReport {
    /// Every joint eigenvalue of `T` has a partner in that of `M(T)`.
    pub holds: bool,
    #[serde(serialize_with = "ser_complex_list")]
    pub spectrum_t: Vec<C64>,
    #[serde(serialize_with = "ser_complex_list")]
    pub spectrum_mean: Vec<C64>,
    /// Points of the joint spectrum of `T` with no partner.
    #[serde(serialize_with = "ser_complex_list")]
    pub unmatched: Vec<C64>,
    /// Nonzero points of the joint spectrum of `M(T)` with no partner in
    /// that of `T`; empty when the nonzero parts coincide.
    #[serde(serialize_with = "ser_complex_list")]
    pub unmatched_nonzero_mean: Vec<C64>,
    pub radius: f64,
}

impl AjInclusionReport {
    pub fn nonzero_parts_equal(&self) -> bool {
        self.holds && self.unmatched_nonzero_mean.is_empty()
    }
}

fn lambdas(points: &[JointSpectrumPoint]) -> Vec<C64> {
    points.iter().map(|p| p.lambda).collect()
}

fn missing(from: &[C64], within: &[C64], radius: f64) -> Vec<C64> {
    from.iter()
        .copied()
        .filter(|a| !within.iter().any(|b| (a - b).norm() <= radius))
        .collect()
}

/// Checks that the joint spectrum of `T` sits inside that of `M(T)`.
pub fn check_aj_inclusion(t: &CMatrix, tol: &ToleranceContext) -> Result<AjInclusionReport> {
    let m = mean_transform(t, tol)?;
    let s = scale(t);
    let radius = tol.match_radius(s);
    let spectrum_t = lambdas(&joint_point_spectrum(t, tol)?);
    let spectrum_mean = lambdas(&joint_point_spectrum(&m, tol)?);
    let unmatched = missing(&spectrum_t, &spectrum_mean, radius);
    let nonzero_mean: Vec<C64> = spectrum_mean
        .iter()
        .copied()
        .filter(|z| z.norm() > radius)
        .collect();
    let unmatched_nonzero_mean = missing(&nonzero_mean, &spectrum_t, radius);
    Ok(AjInclusionReport {
        holds: unmatched.is_empty(),
        spectrum_t,
        spectrum_mean,
        unmatched,
        unmatched_nonzero_mean,
        radius,
    })
}
