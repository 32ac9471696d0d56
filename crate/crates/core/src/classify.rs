//! Operator class predicates with residuals and witnesses.
//!
//! Every predicate returns a [`Verdict`] whose `holds` is exactly
//! `residual <= threshold`. Thresholds scale with the power of `‖T‖` that
//! matches the degree of the defining identity, so verdicts do not change
//! under `T -> cT` for reasonable `c`.
//!
//! The moduli `|T|^{2p}`, `|T*|^{2p}` and `log|T|^2` are built from singular
//! values rather than by taking roots of `T*T`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{ser_complex, ser_vector};
use crate::matrix_core::{
    commutator, fro_norm, herm_eig, herm_part, identity, loewner_gap, scale, validate, CMatrix,
    CVector, LoewnerGap, C64,
};
use crate::polar::PolarFactorization;
use crate::tolerance::ToleranceContext;

/// Exponent used for the `p`-hyponormal entry of [`classify_all`].
pub const REPORT_P: f64 = 0.25;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A vector on which the defining identity or inequality fails.
    Vector(#[serde(serialize_with = "ser_vector")] CVector),
    /// An eigenvalue of the defect matrix.
    Eigenvalue(#[serde(serialize_with = "ser_complex")] C64),
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub residual: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(residual: f64, threshold: f64) -> Self {
        Self {
            holds: residual <= threshold,
            residual,
            threshold,
            witness: None,
        }
    }

    fn with_witness(mut self, w: impl FnOnce() -> Option<Witness>) -> Self {
        if !self.holds {
            self.witness = w();
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum PredicateOutcome {
    Evaluated(Verdict),
    Skipped { skipped: String },
}

impl PredicateOutcome {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Self::Evaluated(v) => Some(v.holds),
            Self::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub verdicts: BTreeMap<String, PredicateOutcome>,
}

impl ClassificationReport {
    /// `Some(holds)` for an evaluated predicate, `None` if skipped or unknown.
    pub fn holds(&self, name: &str) -> Option<bool> {
        self.verdicts.get(name).and_then(PredicateOutcome::holds)
    }
}

/// Eigenvector of a Hermitian defect at its largest-magnitude eigenvalue.
fn dominant_vector(h: &CMatrix) -> Option<Witness> {
    let eig = crate::matrix_core::eig_unchecked(&herm_part(h)).ok()?;
    let last = eig.values.len() - 1;
    let k = if eig.values[0].abs() > eig.values[last].abs() {
        0
    } else {
        last
    };
    Some(Witness::Vector(eig.vectors.column(k).into_owned()))
}

fn ge_verdict(gap: &LoewnerGap) -> Verdict {
    Verdict::new(gap.ge_violation(), gap.threshold)
        .with_witness(|| Some(Witness::Vector(gap.min_vector.clone())))
}

fn le_verdict(gap: &LoewnerGap) -> Verdict {
    Verdict::new(gap.le_violation(), gap.threshold)
        .with_witness(|| Some(Witness::Vector(gap.max_vector.clone())))
}

pub fn is_self_adjoint(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let defect = t - t.adjoint();
    let v = Verdict::new(fro_norm(&defect), tol.abs_bound(scale(t)));
    // i(T* - T) is Hermitian; its dominant eigenvector shows the skew part
    Ok(v.with_witness(|| dominant_vector(&(defect * C64::new(0.0, 1.0)))))
}

pub fn is_normal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let s = scale(t);
    let ts = t.adjoint();
    let c = &ts * t - t * &ts;
    Ok(Verdict::new(fro_norm(&c), tol.abs_bound(s * s)).with_witness(|| dominant_vector(&c)))
}

/// `T` commutes with `T*T`.
pub fn is_quasinormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let s = scale(t);
    let gram = t.adjoint() * t;
    let residual = fro_norm(&commutator(t, &gram));
    Ok(Verdict::new(residual, tol.abs_bound(s.powi(3))))
}

/// `T*T` commutes with `TT*`. The commutator is quartic in `T`, so the
/// threshold uses `scale^4`.
pub fn is_binormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let s = scale(t);
    let ts = t.adjoint();
    let c = commutator(&(&ts * t), &(t * &ts));
    // the commutator of two Hermitian matrices is skew-Hermitian
    let w = &c * C64::new(0.0, 1.0);
    Ok(Verdict::new(fro_norm(&c), tol.abs_bound(s.powi(4))).with_witness(|| dominant_vector(&w)))
}

fn p_hyponormal_from(f: &PolarFactorization, p: f64, tol: &ToleranceContext) -> Result<Verdict> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let a = f.abs_power(2.0 * p);
    let b = f.abs_adjoint_power(2.0 * p);
    Ok(ge_verdict(&loewner_gap(&a, &b, tol)?))
}

/// `(T*T)^p ⪰ (TT*)^p` for `p` in `(0, 1]`.
pub fn is_p_hyponormal(t: &CMatrix, p: f64, tol: &ToleranceContext) -> Result<Verdict> {
    p_hyponormal_from(&PolarFactorization::new(t, tol)?, p, tol)
}

fn gram_pair(t: &CMatrix) -> (CMatrix, CMatrix) {
    let ts = t.adjoint();
    (herm_part(&(&ts * t)), herm_part(&(t * &ts)))
}

/// `T*T ⪰ TT*`
pub fn is_hyponormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let (a, b) = gram_pair(t);
    Ok(ge_verdict(&loewner_gap(&a, &b, tol)?))
}

/// `TT* ⪰ T*T`
pub fn is_co_hyponormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let (a, b) = gram_pair(t);
    Ok(le_verdict(&loewner_gap(&a, &b, tol)?))
}

fn semi_gap(f: &PolarFactorization, tol: &ToleranceContext) -> Result<LoewnerGap> {
    loewner_gap(&f.abs_power(1.0), &f.abs_adjoint_power(1.0), tol)
}

/// `|T| ⪰ |T*|`
pub fn is_semi_hyponormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    Ok(ge_verdict(&semi_gap(&PolarFactorization::new(t, tol)?, tol)?))
}

/// `|T*| ⪰ |T|`
pub fn is_semi_co_hyponormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    Ok(le_verdict(&semi_gap(&PolarFactorization::new(t, tol)?, tol)?))
}

fn log_hyponormal_from(f: &PolarFactorization, tol: &ToleranceContext) -> Result<Verdict> {
    let n = f.parts.n();
    if f.parts.rank < n {
        return Err(Error::SingularInput {
            sigma_min: f.sigma_min(),
            cutoff: f.parts.diagnostics.cutoff,
        });
    }
    let a = f.abs_function(|s| 2.0 * s.ln());
    let b = f.abs_adjoint_function(|s| 2.0 * s.ln());
    Ok(ge_verdict(&loewner_gap(&a, &b, tol)?))
}

/// `log(T*T) ⪰ log(TT*)`; requires `T` invertible.
pub fn is_log_hyponormal(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    log_hyponormal_from(&PolarFactorization::new(t, tol)?, tol)
}

/// `T*T = I`
pub fn is_unitary(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let d = t.adjoint() * t - identity(t.nrows());
    Ok(Verdict::new(fro_norm(&d), tol.abs_bound(scale(t))).with_witness(|| dominant_vector(&d)))
}

/// Hermitian with `lambda_min >= -atol * scale`. The residual is the larger
/// of the Hermitian defect and the negative part of `lambda_min`.
pub fn is_positive(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let skew = fro_norm(&(t - t.adjoint()));
    let eig = herm_eig(&herm_part(t), tol)?;
    let residual = skew.max(-eig.min()).max(0.0);
    let v = Verdict::new(residual, tol.abs_bound(scale(t)));
    Ok(v.with_witness(|| Some(Witness::Vector(eig.vectors.column(0).into_owned()))))
}

/// `TT*T = T`
pub fn is_partial_isometry(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let d = t * t.adjoint() * t - t;
    Ok(Verdict::new(fro_norm(&d), tol.abs_bound(scale(t))))
}

/// `T^2 = 0`
pub fn is_square_zero(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    validate(t)?;
    let s = scale(t);
    Ok(Verdict::new(fro_norm(&(t * t)), tol.abs_bound(s * s)))
}

fn invertible_from(f: &PolarFactorization) -> Verdict {
    let d = &f.parts.diagnostics;
    if f.parts.rank == f.parts.n() {
        Verdict::new(0.0, 0.0)
    } else {
        // distance of sigma_min below the rank cutoff, kept strictly positive
        let residual = (d.cutoff - f.sigma_min()).max(f64::MIN_POSITIVE);
        let last = f.svd.w.ncols() - 1;
        Verdict::new(residual, 0.0).with_witness(|| Some(Witness::Vector(f.svd.w.column(last).into_owned())))
    }
}

/// Numerical rank equals `n` under the rank cutoff.
pub fn is_invertible(t: &CMatrix, tol: &ToleranceContext) -> Result<Verdict> {
    Ok(invertible_from(&PolarFactorization::new(t, tol)?))
}

/// Runs every predicate. Log-hyponormality is skipped for singular input.
pub fn classify_all(t: &CMatrix, tol: &ToleranceContext) -> Result<ClassificationReport> {
    let f = PolarFactorization::new(t, tol)?;
    let mut verdicts = BTreeMap::new();
    let mut put = |name: &str, v: Verdict| {
        verdicts.insert(name.to_owned(), PredicateOutcome::Evaluated(v));
    };
    put("self_adjoint", is_self_adjoint(t, tol)?);
    put("normal", is_normal(t, tol)?);
    put("quasinormal", is_quasinormal(t, tol)?);
    put("binormal", is_binormal(t, tol)?);
    put("hyponormal", is_hyponormal(t, tol)?);
    put("co_hyponormal", is_co_hyponormal(t, tol)?);
    let semi = semi_gap(&f, tol)?;
    put("semi_hyponormal", ge_verdict(&semi));
    put("semi_co_hyponormal", le_verdict(&semi));
    put(&p_name(REPORT_P), p_hyponormal_from(&f, REPORT_P, tol)?);
    put("unitary", is_unitary(t, tol)?);
    put("positive", is_positive(t, tol)?);
    put("partial_isometry", is_partial_isometry(t, tol)?);
    put("square_zero", is_square_zero(t, tol)?);
    put("invertible", invertible_from(&f));
    let log = match log_hyponormal_from(&f, tol) {
        Ok(v) => PredicateOutcome::Evaluated(v),
        Err(Error::SingularInput { .. }) => PredicateOutcome::Skipped {
            skipped: "singular".into(),
        },
        Err(e) => return Err(e),
    };
    verdicts.insert("log_hyponormal".into(), log);
    Ok(ClassificationReport { verdicts })
}

/// Report key for the `p`-hyponormal predicate, e.g. `p_hyponormal_0.25`.
pub fn p_name(p: f64) -> String {
    format!("p_hyponormal_{p}")
}
