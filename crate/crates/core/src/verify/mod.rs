//! Theorem harness: each labeled result becomes a check run over seeded
//! random ensembles, with every failing trial captured for reproduction.
//!
//! Trials are drawn per (dimension, ensemble, trial index) from seeds derived
//! from a single base seed, evaluated in parallel, and merged back in that
//! order so reports are identical from run to run.

mod checks;
mod ensembles;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use checks::{
    check_theorem, min_opposite_sum, ClauseEval, TrialEval, TrialOutcome, ANCHOR_TOL,
    OPPOSITE_SPECTRUM_GAP,
};
pub use ensembles::{default_ensembles, Ensemble};

use crate::error::{Error, Result};
use crate::generators::{derive_seed, generate, GenSpec};
use crate::tolerance::ToleranceContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Kernels,
    MeanPolar,
    DuggalModuli,
    SemiHyponormalChain,
    SemiCoHyponormalChain,
    CoHyponormalBinormal,
    JointSpectrumInclusion,
    SelfAdjoint,
    Normal,
    NormalCorollary,
    Positive,
    Unitary,
    Nilpotent,
    SelfAdjointCounterexample,
    UnitaryCounterexample,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        Self::Kernels,
        Self::MeanPolar,
        Self::DuggalModuli,
        Self::SemiHyponormalChain,
        Self::SemiCoHyponormalChain,
        Self::CoHyponormalBinormal,
        Self::JointSpectrumInclusion,
        Self::SelfAdjoint,
        Self::Normal,
        Self::NormalCorollary,
        Self::Positive,
        Self::Unitary,
        Self::Nilpotent,
        Self::SelfAdjointCounterexample,
        Self::UnitaryCounterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Kernels => "P2_1_KERNELS",
            Self::MeanPolar => "P2_2_MEAN_POLAR",
            Self::DuggalModuli => "L2_3_DUGGAL_MODULI",
            Self::SemiHyponormalChain => "T2_4_SEMIHYPO_CHAIN",
            Self::SemiCoHyponormalChain => "T2_5_SEMICOHYPO_CHAIN",
            Self::CoHyponormalBinormal => "T2_6_COHYPO_BINORMAL",
            Self::JointSpectrumInclusion => "P3_2_AJ_INCLUSION",
            Self::SelfAdjoint => "T4_1_SELFADJOINT",
            Self::Normal => "T4_2_NORMAL",
            Self::NormalCorollary => "C4_3_NORMAL_COROLLARY",
            Self::Positive => "T4_4_POSITIVE",
            Self::Unitary => "T4_5_UNITARY",
            Self::Nilpotent => "T5_1_NILPOTENT",
            Self::SelfAdjointCounterexample => "X4_SELFADJOINT_COUNTEREX",
            Self::UnitaryCounterexample => "X4_UNITARY_COUNTEREX",
        }
    }

    fn index(self) -> u64 {
        self as u64
    }

    /// Results whose hypotheses force normality in finite dimension; a pass
    /// for these is reported as a pass with collapse.
    pub fn collapses(self) -> bool {
        matches!(
            self,
            Self::SemiHyponormalChain | Self::SemiCoHyponormalChain | Self::CoHyponormalBinormal
        )
    }

    /// Parses a theorem name, or `all` for every theorem.
    pub fn parse_selection(s: &str) -> Result<Vec<TheoremId>> {
        if s.eq_ignore_ascii_case("all") {
            Ok(Self::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::MalformedInput(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Tolerances and reporting switches for a harness run.
#[derive(Debug, Clone, Default)]
pub struct HarnessConfig {
    pub tol: ToleranceContext,
    pub overrides: BTreeMap<TheoremId, ToleranceContext>,
    /// Include wall-clock time in reports. Off by default so that reports
    /// are byte-identical across runs.
    pub timings: bool,
}

impl HarnessConfig {
    pub fn new(tol: ToleranceContext) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub fn tolerance_for(&self, id: TheoremId) -> ToleranceContext {
        self.overrides.get(&id).copied().unwrap_or(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    Pass,
    PassWithCollapse,
    Vacuous,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnsembleSummary {
    pub name: Ensemble,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Every trial was skipped, so the hypothesis was never exercised.
    pub vacuous: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ClauseSummary {
    /// Trials in which the clause's antecedent held.
    pub exercised: usize,
    pub violations: usize,
}

/// A failing trial, with everything needed to regenerate it.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub ensemble: Ensemble,
    pub seed: u64,
    pub spec: GenSpec,
    pub residuals: BTreeMap<String, f64>,
    pub failed_clauses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub theorem: TheoremId,
    pub status: VerdictStatus,
    pub trials: usize,
    pub passed: usize,
    pub failures: usize,
    pub skipped: usize,
    pub ensembles: Vec<EnsembleSummary>,
    pub clauses: BTreeMap<String, ClauseSummary>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl VerdictReport {
    pub fn is_vacuous(&self) -> bool {
        self.ensembles.iter().any(|e| e.vacuous)
    }

    /// Accepted when nothing failed and every ensemble exercised the theorem.
    pub fn accepted(&self) -> bool {
        self.failures == 0 && !self.is_vacuous()
    }
}

struct Trial {
    ensemble: Ensemble,
    spec: Option<GenSpec>,
    seed: u64,
    eval: TrialEval,
}

fn run_one(id: TheoremId, ensemble: Ensemble, dim: usize, seed: u64, tol: &ToleranceContext) -> Trial {
    let spec = match ensemble.spec(dim, seed) {
        Ok(spec) => spec,
        Err(e) => {
            return Trial {
                ensemble,
                spec: None,
                seed,
                eval: TrialEval::skipped(format!("generator: {e}")),
            }
        }
    };
    let eval = match generate(&spec) {
        Ok(t) => check_theorem(id, &t, tol),
        Err(e) => TrialEval::skipped(format!("generator: {e}")),
    };
    Trial {
        ensemble,
        spec: Some(spec),
        seed,
        eval,
    }
}

/// Runs `trials_per_dim` trials for every (dimension, default ensemble).
pub fn run_trials(
    id: TheoremId,
    dims: &[usize],
    trials_per_dim: usize,
    seed: u64,
    config: &HarnessConfig,
) -> Result<VerdictReport> {
    run_trials_on(id, default_ensembles(id), dims, trials_per_dim, seed, config)
}

/// As [`run_trials`], with an explicit ensemble list.
pub fn run_trials_on(
    id: TheoremId,
    ensembles: &[Ensemble],
    dims: &[usize],
    trials_per_dim: usize,
    seed: u64,
    config: &HarnessConfig,
) -> Result<VerdictReport> {
    if trials_per_dim == 0 {
        return Err(Error::MalformedInput("trials per dimension must be at least 1".into()));
    }
    if dims.is_empty() {
        return Err(Error::MalformedInput("no dimensions given".into()));
    }
    let start = Instant::now();
    let tol = config.tolerance_for(id);
    let jobs: Vec<(usize, Ensemble, usize)> = dims
        .iter()
        .flat_map(|&d| {
            ensembles
                .iter()
                .flat_map(move |&e| (0..trials_per_dim).map(move |k| (d, e, k)))
        })
        .collect();
    let results: Vec<Trial> = jobs
        .par_iter()
        .map(|&(dim, ensemble, k)| {
            let s = derive_seed(seed, &[id.index(), dim as u64, ensemble.code(), k as u64]);
            run_one(id, ensemble, dim, s, &tol)
        })
        .collect();

    let mut per_ensemble: BTreeMap<Ensemble, EnsembleSummary> = BTreeMap::new();
    let mut clauses: BTreeMap<String, ClauseSummary> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let (mut passed, mut skipped) = (0, 0);
    for trial in results {
        let entry = per_ensemble.entry(trial.ensemble).or_insert(EnsembleSummary {
            name: trial.ensemble,
            trials: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            vacuous: false,
        });
        entry.trials += 1;
        for c in &trial.eval.clauses {
            let sum = clauses.entry(c.name.clone()).or_default();
            sum.exercised += usize::from(c.exercised);
            sum.violations += usize::from(!c.holds);
        }
        match trial.eval.outcome {
            TrialOutcome::Pass => {
                passed += 1;
                entry.passed += 1;
            }
            TrialOutcome::Skipped => {
                skipped += 1;
                entry.skipped += 1;
            }
            TrialOutcome::Fail => {
                entry.failed += 1;
                let failed_clauses = trial.eval.failed_clauses();
                if let Some(spec) = trial.spec {
                    counterexamples.push(Counterexample {
                        ensemble: trial.ensemble,
                        seed: trial.seed,
                        spec,
                        residuals: trial.eval.residuals,
                        failed_clauses,
                        error: trial.eval.error,
                    });
                }
            }
        }
    }
    let mut ensembles_out: Vec<EnsembleSummary> = ensembles
        .iter()
        .filter_map(|e| per_ensemble.remove(e))
        .collect();
    for e in &mut ensembles_out {
        e.vacuous = e.skipped == e.trials;
    }
    let trials = jobs.len();
    let failures = counterexamples.len();
    let vacuous = ensembles_out.iter().any(|e| e.vacuous);
    let status = if failures > 0 {
        VerdictStatus::Fail
    } else if vacuous {
        VerdictStatus::Vacuous
    } else if id.collapses() {
        VerdictStatus::PassWithCollapse
    } else {
        VerdictStatus::Pass
    };
    Ok(VerdictReport {
        theorem: id,
        status,
        trials,
        passed,
        failures,
        skipped,
        ensembles: ensembles_out,
        clauses,
        counterexamples,
        elapsed: config.timings.then(|| start.elapsed().as_secs_f64()),
    })
}
