//! One check per theorem, applied to a single matrix.
//!
//! A check first tests the theorem's hypothesis (recording a skip when it
//! fails), then evaluates each labeled statement as a tolerance predicate and
//! records every arrow of the chain as its own clause.

use std::collections::BTreeMap;

use serde::Serialize;

use super::TheoremId;
use crate::classify;
use crate::error::Result;
use crate::matrix_core::{
    fro_norm, from_real_rows, kernel_projector, loewner_gap, numerical_rank, scale,
    CMatrix,
};
use crate::polar::{abs_adjoint, compare_kernels, polar_decompose, KernelRelation, PolarFactorization};
use crate::spectra::{check_aj_inclusion, eigenvalues, joint_point_spectrum, xia_witness_check};
use crate::tolerance::ToleranceContext;
use crate::transforms::{mean_polar_parts, mean_transform, TransformBundle};

/// Smallest `|lambda + mu|` over eigenvalue pairs of `V` that the unitary
/// theorem accepts as "not opposite".
pub const OPPOSITE_SPECTRUM_GAP: f64 = 0.05;

/// Entrywise tolerance for the fixed counterexample matrices.
pub const ANCHOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TrialOutcome {
    Pass,
    Fail,
    Skipped,
}

/// One labeled statement or implication evaluated on one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct ClauseEval {
    pub name: String,
    /// The antecedent held (or, for an equivalence, either side held).
    pub exercised: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialEval {
    pub outcome: TrialOutcome,
    pub residuals: BTreeMap<String, f64>,
    pub clauses: Vec<ClauseEval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialEval {
    pub(crate) fn skipped(reason: impl Into<String>) -> Self {
        Self {
            outcome: TrialOutcome::Skipped,
            residuals: BTreeMap::new(),
            clauses: Vec::new(),
            skip_reason: Some(reason.into()),
            error: None,
        }
    }

    pub fn failed_clauses(&self) -> Vec<String> {
        self.clauses
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.clone())
            .collect()
    }
}

#[derive(Default)]
struct Eval {
    residuals: BTreeMap<String, f64>,
    clauses: Vec<ClauseEval>,
    skip: Option<String>,
}

impl Eval {
    fn residual(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_owned(), value);
    }

    fn require(&mut self, name: &str, holds: bool) {
        self.clauses.push(ClauseEval {
            name: name.to_owned(),
            exercised: true,
            holds,
        });
    }

    fn implies(&mut self, name: &str, a: bool, b: bool) {
        self.clauses.push(ClauseEval {
            name: name.to_owned(),
            exercised: a,
            holds: !a || b,
        });
    }

    fn iff(&mut self, name: &str, a: bool, b: bool) {
        self.clauses.push(ClauseEval {
            name: name.to_owned(),
            exercised: a || b,
            holds: a == b,
        });
    }

    fn skip(&mut self, reason: &str) {
        self.skip = Some(reason.to_owned());
    }

    /// Records `‖a - b‖_F` and whether it is within `bound`.
    fn close(&mut self, name: &str, a: &CMatrix, b: &CMatrix, bound: f64) -> bool {
        let r = fro_norm(&(a - b));
        self.residual(name, r);
        r <= bound
    }

    fn finish(self, result: Result<()>) -> TrialEval {
        let (outcome, error) = match result {
            Err(e) => (TrialOutcome::Fail, Some(e.to_string())),
            Ok(()) if self.skip.is_some() => (TrialOutcome::Skipped, None),
            Ok(()) if self.clauses.iter().all(|c| c.holds) => (TrialOutcome::Pass, None),
            Ok(()) => (TrialOutcome::Fail, None),
        };
        TrialEval {
            outcome,
            residuals: self.residuals,
            clauses: self.clauses,
            skip_reason: self.skip,
            error,
        }
    }
}

/// Everything most checks need: the factorization, `V`, `|T|`, the three
/// transforms, `V|T|V*` and `V*|T|V`.
struct Frame {
    s: f64,
    f: PolarFactorization,
    v: CMatrix,
    p: CMatrix,
    mean: CMatrix,
    duggal: CMatrix,
    aluthge: CMatrix,
    /// `V |T| V* = |T*|`
    vpv_star: CMatrix,
    /// `V* |T| V`
    v_star_pv: CMatrix,
}

impl Frame {
    fn new(t: &CMatrix, tol: &ToleranceContext) -> Result<Self> {
        let f = PolarFactorization::new(t, tol)?;
        let b = TransformBundle::from_factorization(t, &f);
        let v = f.parts.v.clone();
        let p = f.parts.p.clone();
        let vs = v.adjoint();
        let vpv_star = herm(&(&v * &p * &vs));
        let v_star_pv = herm(&(&vs * &p * &v));
        Ok(Self {
            s: scale(t),
            f,
            v,
            p,
            mean: b.mean,
            duggal: b.duggal,
            aluthge: b.aluthge,
            vpv_star,
            v_star_pv,
        })
    }
}

fn herm(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// `A ⪰ B` in the Loewner order at the default threshold.
fn ge(a: &CMatrix, b: &CMatrix, tol: &ToleranceContext) -> Result<bool> {
    Ok(loewner_gap(a, b, tol)?.order().is_ge())
}

fn max_entry(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn relation(t: &CMatrix, tol: &ToleranceContext) -> Result<KernelRelation> {
    Ok(compare_kernels(t, tol)?.relation)
}

/// Smallest `|lambda + mu|` over pairs of distinct eigenvalues of `V`.
pub fn min_opposite_sum(v: &CMatrix, tol: &ToleranceContext) -> Result<Option<f64>> {
    let ev = eigenvalues(v)?;
    let radius = tol.match_radius(1.0);
    let mut best: Option<f64> = None;
    for (j, a) in ev.iter().enumerate() {
        for b in &ev[j + 1..] {
            if (a - b).norm() > radius {
                let d = (a + b).norm();
                best = Some(best.map_or(d, |m: f64| m.min(d)));
            }
        }
    }
    Ok(best)
}

fn kernels(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let fr = Frame::new(t, tol)?;
    let rank_t = fr.f.parts.rank;
    let rank_m = numerical_rank(&fr.mean, tol)?;
    e.residual("rank_t", rank_t as f64);
    e.residual("rank_mean", rank_m as f64);
    e.require("rank M(T) = rank T", rank_m == rank_t);

    let ker_t = kernel_projector(t, tol)?;
    let ker_m = kernel_projector(&fr.mean, tol)?;
    let ker_v = kernel_projector(&fr.v, tol)?;
    let a = e.close("ker_mean_vs_ker_t", &ker_m, &ker_t, tol.rtol);
    e.require("Ker M(T) = Ker T", a);
    let b = e.close("ker_t_vs_ker_v", &ker_t, &ker_v, tol.rtol);
    e.require("Ker T = Ker V", b);

    // Ker V ∩ Ker V* is the kernel of the positive matrix V*V + VV*
    let vs = fr.v.adjoint();
    let joint = kernel_projector(&(&vs * &fr.v + &fr.v * &vs), tol)?;
    let leak = fro_norm(&(fr.mean.adjoint() * joint));
    e.residual("joint_kernel_leak", leak);
    e.require("Ker V* ∩ Ker V ⊆ Ker M(T)*", leak <= tol.abs_bound(fr.s));

    let binormal = classify::is_binormal(t, tol)?.holds;
    let ker_ms = kernel_projector(&fr.mean.adjoint(), tol)?;
    let ker_vs = kernel_projector(&vs, tol)?;
    let c = e.close("ker_mean_star_vs_ker_v_star", &ker_ms, &ker_vs, tol.rtol);
    e.implies("binormal => Ker M(T)* = Ker V*", binormal, c);
    Ok(())
}

fn mean_polar(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    if !relation(t, tol)?.adjoint_kernel_contained() {
        e.skip("Ker T* not contained in Ker T");
        return Ok(());
    }
    let formula = mean_polar_parts(t, tol)?;
    let m = mean_transform(t, tol)?;
    let direct = polar_decompose(&m, tol)?;
    let s = scale(t);
    let v_ok = e.close("partial_isometry", &direct.v, &formula.v, tol.rtol);
    e.require("polar factor of M(T) is V", v_ok);
    let p_ok = e.close("modulus", &direct.p, &formula.p, tol.rel_bound(s));
    e.require("|M(T)| = (|T| + V*|T|V) / 2", p_ok);
    let parts_t = polar_decompose(t, tol)?;
    let vpv_star = &parts_t.v * &parts_t.p * parts_t.v.adjoint();
    let expect_star = herm(&(&parts_t.p + vpv_star).scale(0.5));
    let star_ok = e.close("adjoint_modulus", &abs_adjoint(&direct), &expect_star, tol.rel_bound(s));
    e.require("|M(T)*| = (|T| + V|T|V*) / 2", star_ok);
    Ok(())
}

fn duggal_moduli(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    if !relation(t, tol)?.adjoint_kernel_contained() {
        e.skip("Ker T* not contained in Ker T");
        return Ok(());
    }
    let fr = Frame::new(t, tol)?;
    let fd = PolarFactorization::new(&fr.duggal, tol)?;
    let bound = tol.rel_bound(fr.s);
    let a = e.close("abs_duggal", &fd.abs_power(1.0), &fr.v_star_pv, bound);
    e.require("|T~| = V*|T|V", a);
    let b = e.close("abs_duggal_adjoint", &fd.abs_adjoint_power(1.0), &fr.p, bound);
    e.require("|T~*| = |T|", b);
    Ok(())
}

fn semi_hyponormal_chain(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    if relation(t, tol)? != KernelRelation::Equal {
        e.skip("Ker T != Ker T*");
        return Ok(());
    }
    let fr = Frame::new(t, tol)?;
    let s1 = classify::is_semi_hyponormal(t, tol)?.holds;
    let s2 = ge(&fr.p, &fr.vpv_star, tol)? && ge(&fr.v_star_pv, &fr.p, tol)?;
    let s3 = classify::is_semi_hyponormal(&fr.duggal, tol)?.holds;
    let s4 = classify::is_semi_hyponormal(&fr.mean, tol)?.holds;
    let s5 = classify::is_hyponormal(&fr.aluthge, tol)?.holds;
    let s6 = ge(&fr.v_star_pv, &fr.vpv_star, tol)?;
    e.iff("(1)<=>(2)", s1, s2);
    e.iff("(2)<=>(3)", s2, s3);
    e.implies("(3)=>(4)", s3, s4);
    e.iff("(4)<=>(5)", s4, s5);
    e.iff("(5)<=>(6)", s5, s6);
    let normal = classify::is_normal(t, tol)?.holds;
    e.implies("collapse: (1)=>normal", s1, normal);
    Ok(())
}

fn semi_co_hyponormal_chain(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let rel = relation(t, tol)?;
    if !rel.adjoint_kernel_contained() {
        e.skip("Ker T* not contained in Ker T");
        return Ok(());
    }
    let fr = Frame::new(t, tol)?;
    let c1 = classify::is_semi_co_hyponormal(t, tol)?.holds;
    let c2 = ge(&fr.vpv_star, &fr.p, tol)? && ge(&fr.p, &fr.v_star_pv, tol)?;
    let c3 = classify::is_semi_co_hyponormal(&fr.duggal, tol)?.holds;
    let c4 = classify::is_semi_co_hyponormal(&fr.mean, tol)?.holds;
    let c5 = ge(&fr.vpv_star, &fr.v_star_pv, tol)?;
    let c6 = classify::is_co_hyponormal(&fr.aluthge, tol)?.holds;
    e.iff("(1)<=>(2)", c1, c2);
    e.iff("(2)<=>(3)", c2, c3);
    e.implies("(3)=>(4)", c3, c4);
    e.iff("(4)<=>(5)", c4, c5);
    e.implies("(5)=>(6)", c5, c6);
    if rel == KernelRelation::Equal {
        e.implies("(6)=>(5) given Ker T* = Ker T", c6, c5);
    }
    let normal = classify::is_normal(t, tol)?.holds;
    e.implies("collapse: (1)=>normal", c1, normal);
    Ok(())
}

fn co_hyponormal_binormal(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let co = classify::is_co_hyponormal(t, tol)?.holds;
    let bi = classify::is_binormal(t, tol)?.holds;
    if !(co && bi) {
        e.skip("T is not both co-hyponormal and binormal");
        return Ok(());
    }
    let m = mean_transform(t, tol)?;
    let v = classify::is_co_hyponormal(&m, tol)?;
    e.residual("mean_co_hyponormal_violation", v.residual);
    e.require("M(T) co-hyponormal", v.holds);
    let normal = classify::is_normal(t, tol)?.holds;
    e.require("collapse: co-hyponormal => normal", normal);
    Ok(())
}

fn aj_inclusion(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let report = check_aj_inclusion(t, tol)?;
    e.residual("joint_points_t", report.spectrum_t.len() as f64);
    e.residual("joint_points_mean", report.spectrum_mean.len() as f64);
    e.residual("unmatched", report.unmatched.len() as f64);
    e.require("σ_aj(T) ⊆ σ_aj(M(T))", report.holds);

    let s = scale(t);
    let mut xia = true;
    for point in joint_point_spectrum(t, tol)? {
        if point.lambda.norm() > tol.abs_bound(s) {
            xia &= xia_witness_check(t, &point, tol)?.holds;
        }
    }
    e.require("joint eigenvectors satisfy the modulus and phase identities", xia);

    let semi = classify::is_semi_hyponormal(t, tol)?.holds
        && relation(t, tol)? == KernelRelation::Equal;
    e.implies(
        "semi-hyponormal, Ker T = Ker T* => nonzero parts equal",
        semi,
        report.nonzero_parts_equal(),
    );
    Ok(())
}

fn self_adjoint(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let fr = Frame::new(t, tol)?;
    let a = classify::is_self_adjoint(&fr.v, tol)?.holds;
    let m_star = mean_transform(&t.adjoint(), tol)?;
    let b = e.close("mean_vs_mean_of_adjoint", &fr.mean, &m_star, tol.abs_bound(fr.s));
    let c = classify::is_self_adjoint(&fr.mean, tol)?.holds;
    e.iff("(1)<=>(2)", a, b);
    e.iff("(2)<=>(3)", b, c);
    e.iff("(1)<=>(3)", a, c);
    Ok(())
}

fn normal(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    if relation(t, tol)? != KernelRelation::Equal {
        e.skip("Ker T != Ker T*");
        return Ok(());
    }
    let fr = Frame::new(t, tol)?;
    let bound = tol.abs_bound(fr.s);
    let n1 = classify::is_normal(&fr.mean, tol)?.holds;
    let n2 = e.close("v_star_pv_vs_vpv_star", &fr.v_star_pv, &fr.vpv_star, bound);
    let v2 = &fr.v * &fr.v;
    let n3 = e.close("v2p_vs_pv2", &(&v2 * &fr.p), &(&fr.p * &v2), bound);
    let m_star = mean_transform(&t.adjoint(), tol)?;
    let n4 = e.close("mean_of_adjoint_vs_adjoint_of_mean", &m_star, &fr.mean.adjoint(), bound);
    e.iff("(1)<=>(2)", n1, n2);
    e.iff("(2)<=>(3)", n2, n3);
    e.iff("(3)<=>(4)", n3, n4);
    Ok(())
}

fn normal_corollary(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let fr = Frame::new(t, tol)?;
    if !classify::is_normal(&fr.mean, tol)?.holds {
        e.skip("M(T) is not normal");
        return Ok(());
    }
    let vs = fr.v.adjoint();
    let a = e.close("v_normality", &(&vs * &fr.v), &(&fr.v * &vs), tol.atol);
    e.require("V is normal", a);
    let b = classify::is_partial_isometry(&fr.v, tol)?.holds;
    e.require("V is a partial isometry", b);
    let bound = tol.abs_bound(fr.s);
    let c = e.close("v_star_pv_vs_vpv_star", &fr.v_star_pv, &fr.vpv_star, bound);
    e.require("V|T|V* = V*|T|V", c);
    let v2 = &fr.v * &fr.v;
    let d = e.close("v2p_vs_pv2", &(&v2 * &fr.p), &(&fr.p * &v2), bound);
    e.require("V^2 |T| = |T| V^2", d);
    Ok(())
}

fn positive(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let m = mean_transform(t, tol)?;
    let a = classify::is_positive(&m, tol)?.holds;
    let b = classify::is_positive(t, tol)?.holds;
    e.iff("M(T) >= 0 <=> T >= 0", a, b);
    if b {
        let ok = e.close("fixed_point", &m, t, tol.abs_bound(scale(t)));
        e.require("T >= 0 => M(T) = T", ok);
    }
    Ok(())
}

fn unitary(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let parts = polar_decompose(t, tol)?;
    let gap = min_opposite_sum(&parts.v, tol)?;
    if let Some(g) = gap {
        e.residual("min_opposite_sum", g);
        if g < OPPOSITE_SPECTRUM_GAP {
            e.skip("spectrum of V contains opposite values");
            return Ok(());
        }
    }
    let m = mean_transform(t, tol)?;
    let a = classify::is_unitary(&m, tol)?.holds;
    let b = classify::is_unitary(t, tol)?.holds;
    e.iff("M(T) unitary <=> T unitary", a, b);
    Ok(())
}

fn nilpotent(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let m = mean_transform(t, tol)?;
    let a = classify::is_square_zero(&m, tol)?;
    let b = classify::is_square_zero(t, tol)?;
    e.residual("mean_square", a.residual);
    e.residual("t_square", b.residual);
    e.iff("M(T)^2 = 0 <=> T^2 = 0", a.holds, b.holds);
    let half = e.close("mean_vs_half", &m, &t.scale(0.5), tol.abs_bound(scale(t)));
    e.implies("T^2 = 0 => M(T) = T/2", b.holds, half);
    Ok(())
}

fn self_adjoint_counterexample(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let anchor = from_real_rows(2, &[1.0, 1.0, -1.0, -2.0]);
    let parts = polar_decompose(&anchor, tol)?;
    let m = mean_transform(&anchor, tol)?;
    let err = max_entry(&(&parts.p - from_real_rows(2, &[1.0, 1.0, 1.0, 2.0])))
        .max(max_entry(&(&parts.v - from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]))))
        .max(max_entry(&(&m - from_real_rows(2, &[1.0, 0.0, 0.0, -2.0]))));
    e.residual("anchor_entry_error", err);
    e.require("anchor: M(T) = diag(1, -2)", err <= ANCHOR_TOL);

    let fr = Frame::new(t, tol)?;
    e.require("M(T) self-adjoint", classify::is_self_adjoint(&fr.mean, tol)?.holds);
    e.require("T not self-adjoint", !classify::is_self_adjoint(t, tol)?.holds);
    e.require("V self-adjoint", classify::is_self_adjoint(&fr.v, tol)?.holds);
    Ok(())
}

fn unitary_counterexample(t: &CMatrix, tol: &ToleranceContext, e: &mut Eval) -> Result<()> {
    let anchor = from_real_rows(2, &[0.0, 1.5, 0.5, 0.0]);
    let flip = from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]);
    let parts = polar_decompose(&anchor, tol)?;
    let m = mean_transform(&anchor, tol)?;
    let m_of_v = mean_transform(&parts.v, tol)?;
    let err = max_entry(&(&m - &flip)).max(max_entry(&(&m_of_v - &parts.v)));
    e.residual("anchor_entry_error", err);
    e.require("anchor: M(T) = M(V) = [[0,1],[1,0]]", err <= ANCHOR_TOL);
    e.require("anchor: T != V", max_entry(&(&anchor - &parts.v)) > 0.1);

    let fr = Frame::new(t, tol)?;
    e.require("M(T) unitary", classify::is_unitary(&fr.mean, tol)?.holds);
    e.require("T not unitary", !classify::is_unitary(t, tol)?.holds);
    let gap = min_opposite_sum(&fr.v, tol)?.unwrap_or(f64::INFINITY);
    e.residual("min_opposite_sum", gap);
    e.require("V has opposite eigenvalues", gap < OPPOSITE_SPECTRUM_GAP);
    Ok(())
}

/// Evaluates one theorem on one matrix.
pub fn check_theorem(id: TheoremId, t: &CMatrix, tol: &ToleranceContext) -> TrialEval {
    let mut e = Eval::default();
    let result = match id {
        TheoremId::Kernels => kernels(t, tol, &mut e),
        TheoremId::MeanPolar => mean_polar(t, tol, &mut e),
        TheoremId::DuggalModuli => duggal_moduli(t, tol, &mut e),
        TheoremId::SemiHyponormalChain => semi_hyponormal_chain(t, tol, &mut e),
        TheoremId::SemiCoHyponormalChain => semi_co_hyponormal_chain(t, tol, &mut e),
        TheoremId::CoHyponormalBinormal => co_hyponormal_binormal(t, tol, &mut e),
        TheoremId::JointSpectrumInclusion => aj_inclusion(t, tol, &mut e),
        TheoremId::SelfAdjoint => self_adjoint(t, tol, &mut e),
        TheoremId::Normal => normal(t, tol, &mut e),
        TheoremId::NormalCorollary => normal_corollary(t, tol, &mut e),
        TheoremId::Positive => positive(t, tol, &mut e),
        TheoremId::Unitary => unitary(t, tol, &mut e),
        TheoremId::Nilpotent => nilpotent(t, tol, &mut e),
        TheoremId::SelfAdjointCounterexample => self_adjoint_counterexample(t, tol, &mut e),
        TheoremId::UnitaryCounterexample => unitary_counterexample(t, tol, &mut e),
    };
    e.finish(result)
}
