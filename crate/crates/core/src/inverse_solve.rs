//! Preimages under the mean transform: solving `M(X) = T`.
//!
//! Tensor convention: `(x ⊗ y) h = <h, y> x`, i.e. the matrix `x y*`, with the
//! inner product linear in the first slot.
//!
//! The solvers build `X` in closed form and never call the mean transform
//! themselves, so checking `M(X) = T` afterwards is an independent test.

use serde::Serialize;

use crate::classify::{is_positive, is_quasinormal};
use crate::error::{Error, Result};
use crate::matrix_core::{fro_norm, inner, outer, scale, validate, CMatrix, CVector, C64};
use crate::tolerance::ToleranceContext;

/// Below this distance between the two phases, a Case 1 answer carries a
/// warning that the alternative branch is close.
pub const CASE_PROXIMITY_WARNING: f64 = 1e-3;

fn check_vector(v: &CVector, name: &'static str) -> Result<()> {
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DegenerateSpec(format!("vector `{name}` has non-finite entries")));
    }
    if v.is_empty() || v.norm() == 0.0 {
        return Err(Error::ZeroVector(name));
    }
    Ok(())
}

/// `T = x ⊗ y`.
#[derive(Debug, Clone)]
pub struct RankOneSpec {
    pub x: CVector,
    pub y: CVector,
}

impl RankOneSpec {
    pub fn new(x: CVector, y: CVector) -> Result<Self> {
        check_vector(&x, "x")?;
        check_vector(&y, "y")?;
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                actual: y.len(),
            });
        }
        Ok(Self { x, y })
    }

    pub fn matrix(&self) -> CMatrix {
        outer(&self.x, &self.y)
    }
}

/// `T = delta x ⊗ x + nu y ⊗ y` with `x`, `y` orthonormal.
#[derive(Debug, Clone)]
pub struct RankTwoNormalSpec {
    pub delta: C64,
    pub nu: C64,
    pub x: CVector,
    pub y: CVector,
}

impl RankTwoNormalSpec {
    pub fn new(delta: C64, nu: C64, x: CVector, y: CVector, tol: &ToleranceContext) -> Result<Self> {
        for (name, z) in [("delta", delta), ("nu", nu)] {
            if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
                return Err(Error::DegenerateSpec(format!("{name} must be finite and nonzero")));
            }
        }
        check_vector(&x, "x")?;
        check_vector(&y, "y")?;
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                actual: y.len(),
            });
        }
        if (x.norm() - 1.0).abs() > tol.rtol || (y.norm() - 1.0).abs() > tol.rtol {
            return Err(Error::DegenerateSpec("x and y must be unit vectors".into()));
        }
        let overlap = inner(&x, &y).norm();
        if overlap > tol.rtol {
            return Err(Error::DegenerateSpec(format!(
                "x and y must be orthogonal, |<x, y>| = {overlap:e}"
            )));
        }
        Ok(Self { delta, nu, x, y })
    }

    pub fn matrix(&self) -> CMatrix {
        outer(&self.x, &self.x) * self.delta + outer(&self.y, &self.y) * self.nu
    }

    /// `|e^{i theta} + e^{i phi}|` for `theta = arg delta`, `phi = arg nu`.
    pub fn phase_gap(&self) -> f64 {
        (self.delta / self.delta.norm() + self.nu / self.nu.norm()).norm()
    }
}

/// The solutions `X(beta)` when the two eigenvalues of `T` have opposite
/// phases. In the basis `{x, y}`:
///
/// ```text
/// X(beta) = e^{i theta} [[ |delta|, conj(beta) ],
///                        [ -beta,   -|nu|      ]]
/// ```
///
/// and zero on the orthogonal complement. Admissible for `|beta|^2 <= |delta nu|`.
#[derive(Debug, Clone)]
pub struct RankTwoFamily {
    pub phase: C64,
    pub delta_abs: f64,
    pub nu_abs: f64,
    pub x: CVector,
    pub y: CVector,
    rtol: f64,
}

impl RankTwoFamily {
    pub fn radius_sq(&self) -> f64 {
        self.delta_abs * self.nu_abs
    }

    pub fn is_admissible(&self, beta: C64) -> bool {
        beta.norm_sqr() <= self.radius_sq() * (1.0 + self.rtol)
    }

    pub fn evaluate(&self, beta: C64) -> Result<CMatrix> {
        if !self.is_admissible(beta) {
            return Err(Error::InadmissibleBeta {
                beta,
                radius_sq: self.radius_sq(),
            });
        }
        Ok(self.evaluate_unchecked(beta))
    }

    /// `X(beta)` without the admissibility check.
    pub fn evaluate_unchecked(&self, beta: C64) -> CMatrix {
        let (x, y) = (&self.x, &self.y);
        let block = outer(x, x) * C64::from(self.delta_abs) + outer(x, y) * beta.conj()
            - outer(y, x) * beta
            - outer(y, y) * C64::from(self.nu_abs);
        block * self.phase
    }

    /// A point on the admissibility circle at the given angle.
    pub fn boundary_beta(&self, angle: f64) -> C64 {
        C64::from_polar(self.radius_sq().sqrt(), angle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PreimageKind {
    Unique,
    Family,
    FixedPoint,
}

#[derive(Debug, Clone)]
pub enum MeanPreimage {
    Unique {
        solution: CMatrix,
        warnings: Vec<String>,
    },
    Family(RankTwoFamily),
    FixedPoint {
        solution: CMatrix,
    },
}

impl MeanPreimage {
    pub fn kind(&self) -> PreimageKind {
        match self {
            Self::Unique { .. } => PreimageKind::Unique,
            Self::Family(_) => PreimageKind::Family,
            Self::FixedPoint { .. } => PreimageKind::FixedPoint,
        }
    }

    /// The single solution, if there is one.
    pub fn solution(&self) -> Option<&CMatrix> {
        match self {
            Self::Unique { solution, .. } | Self::FixedPoint { solution } => Some(solution),
            Self::Family(_) => None,
        }
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            Self::Unique { warnings, .. } => warnings,
            _ => &[],
        }
    }
}

/// `X = z ⊗ y` with `z = 2x - (<x, y> / ‖y‖^2) y`.
pub fn solve_rank_one(spec: &RankOneSpec) -> Result<MeanPreimage> {
    check_vector(&spec.x, "x")?;
    check_vector(&spec.y, "y")?;
    let coeff = inner(&spec.x, &spec.y) / spec.y.norm_squared();
    let z = spec.x.scale(2.0) - &spec.y * coeff;
    Ok(MeanPreimage::Unique {
        solution: outer(&z, &spec.y),
        warnings: Vec::new(),
    })
}

/// Case 1 (phases not opposite): `X = T` is the only solution.
/// Case 2 (`e^{i theta} = -e^{i phi}` within `sqrt(atol)`): a one-parameter family.
pub fn solve_rank_two_normal(
    spec: &RankTwoNormalSpec,
    tol: &ToleranceContext,
) -> Result<MeanPreimage> {
    if spec.delta.norm() == 0.0 || spec.nu.norm() == 0.0 {
        return Err(Error::DegenerateSpec("delta and nu must be nonzero".into()));
    }
    let gap = spec.phase_gap();
    if gap <= tol.atol.sqrt() {
        return Ok(MeanPreimage::Family(RankTwoFamily {
            phase: spec.delta / spec.delta.norm(),
            delta_abs: spec.delta.norm(),
            nu_abs: spec.nu.norm(),
            x: spec.x.clone(),
            y: spec.y.clone(),
            rtol: tol.rtol,
        }));
    }
    let mut warnings = Vec::new();
    if gap < CASE_PROXIMITY_WARNING {
        warnings.push(format!(
            "phases of delta and nu are nearly opposite (|e^(i theta) + e^(i phi)| = {gap:e}); \
             the family of solutions is close"
        ));
    }
    Ok(MeanPreimage::Unique {
        solution: spec.matrix(),
        warnings,
    })
}

/// `T^2 = 0` gives `M(2T) = T`.
pub fn solve_square_zero(t: &CMatrix, tol: &ToleranceContext) -> Result<MeanPreimage> {
    validate(t)?;
    let s = scale(t);
    let residual = fro_norm(&(t * t));
    let threshold = tol.abs_bound(s * s);
    if residual > threshold {
        return Err(Error::NotSquareZero {
            residual,
            threshold,
        });
    }
    Ok(MeanPreimage::Unique {
        solution: t.scale(2.0),
        warnings: Vec::new(),
    })
}

/// A positive `T` is fixed by the mean transform, and any preimage of a
/// positive matrix is itself positive.
pub fn solve_positive(t: &CMatrix, tol: &ToleranceContext) -> Result<MeanPreimage> {
    let v = is_positive(t, tol)?;
    if !v.holds {
        return Err(Error::NotPositive(format!(
            "residual {:e} exceeds {:e}",
            v.residual, v.threshold
        )));
    }
    Ok(MeanPreimage::FixedPoint { solution: t.clone() })
}

/// A quasinormal `T` has `|T| V = V |T|`, hence `M(T) = T`.
pub fn solve_quasinormal(t: &CMatrix, tol: &ToleranceContext) -> Result<MeanPreimage> {
    let v = is_quasinormal(t, tol)?;
    if !v.holds {
        return Err(Error::NotQuasinormal {
            residual: v.residual,
            threshold: v.threshold,
        });
    }
    Ok(MeanPreimage::FixedPoint { solution: t.clone() })
}
