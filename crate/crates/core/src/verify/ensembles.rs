//! Ensembles the harness draws from, and the default list for each theorem.
//!
//! An ensemble is a generator kind whose parameters (ranks, shift weights)
//! are drawn from the trial seed.

use std::fmt;

use serde::{Serialize, Serializer};

use super::TheoremId;
use crate::error::Result;
use crate::generators::{mix_seed, random_shift_weights, random_unit_sum_weights, GenKind, GenSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ensemble {
    Ginibre,
    Unitary,
    Normal,
    Positive,
    PartialIsometry,
    BinormalWeightedPerm,
    SquareZero,
    Singular,
    OppositeFreeUnitary,
    ShiftLike,
    /// Shift-like weights with `a + b = 2`, whose mean transform is unitary.
    ShiftLikeUnitSum,
    IndefiniteHermitian,
    SelfAdjointPolar,
}

impl Ensemble {
    pub const ALL: [Ensemble; 13] = [
        Self::Ginibre,
        Self::Unitary,
        Self::Normal,
        Self::Positive,
        Self::PartialIsometry,
        Self::BinormalWeightedPerm,
        Self::SquareZero,
        Self::Singular,
        Self::OppositeFreeUnitary,
        Self::ShiftLike,
        Self::ShiftLikeUnitSum,
        Self::IndefiniteHermitian,
        Self::SelfAdjointPolar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ginibre => "GINIBRE",
            Self::Unitary => "UNITARY",
            Self::Normal => "NORMAL",
            Self::Positive => "POSITIVE",
            Self::PartialIsometry => "PARTIAL_ISOMETRY",
            Self::BinormalWeightedPerm => "BINORMAL_WEIGHTED_PERM",
            Self::SquareZero => "SQUARE_ZERO",
            Self::Singular => "SINGULAR",
            Self::OppositeFreeUnitary => "OPPOSITE_FREE_UNITARY",
            Self::ShiftLike => "SHIFT_LIKE",
            Self::ShiftLikeUnitSum => "SHIFT_LIKE_UNIT_SUM",
            Self::IndefiniteHermitian => "INDEFINITE_HERMITIAN",
            Self::SelfAdjointPolar => "SELF_ADJOINT_POLAR",
        }
    }

    /// Stable code mixed into trial seeds.
    pub(crate) fn code(self) -> u64 {
        self as u64 + 1
    }

    /// The generator spec for one trial.
    pub fn spec(self, dim: usize, seed: u64) -> Result<GenSpec> {
        let param = mix_seed(seed ^ 0x5EED);
        let kind = match self {
            Self::Ginibre => GenKind::Ginibre,
            Self::Unitary => GenKind::Unitary,
            Self::Normal => GenKind::Normal,
            Self::Positive => GenKind::Positive,
            Self::PartialIsometry => GenKind::PartialIsometry(1 + (param % dim.max(1) as u64) as usize),
            Self::BinormalWeightedPerm => GenKind::BinormalWeightedPerm,
            Self::SquareZero => GenKind::SquareZero,
            Self::Singular => {
                let rank = if dim < 2 { 0 } else { 1 + (param % (dim as u64 - 1)) as usize };
                GenKind::Singular(rank)
            }
            Self::OppositeFreeUnitary => GenKind::OppositeFreeUnitary,
            Self::ShiftLike => {
                let (a, b) = random_shift_weights(param);
                GenKind::ShiftLike(a, b)
            }
            Self::ShiftLikeUnitSum => {
                let (a, b) = random_unit_sum_weights(param);
                GenKind::ShiftLike(a, b)
            }
            Self::IndefiniteHermitian => GenKind::IndefiniteHermitian,
            Self::SelfAdjointPolar => GenKind::SelfAdjointPolar,
        };
        Ok(GenSpec::new(kind, dim, seed))
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Ensemble {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Ensembles for each theorem, chosen so that every pair exercises the
/// hypothesis on at least some trials.
pub fn default_ensembles(id: TheoremId) -> &'static [Ensemble] {
    use Ensemble::*;
    match id {
        TheoremId::Kernels => &[
            Ginibre,
            Singular,
            BinormalWeightedPerm,
            PartialIsometry,
            SquareZero,
            Normal,
        ],
        TheoremId::MeanPolar | TheoremId::DuggalModuli => {
            &[Ginibre, Normal, Positive, SelfAdjointPolar, ShiftLike]
        }
        TheoremId::SemiHyponormalChain | TheoremId::SemiCoHyponormalChain => {
            &[Normal, Ginibre, ShiftLike, SelfAdjointPolar]
        }
        TheoremId::CoHyponormalBinormal => &[Normal, Positive, Unitary],
        TheoremId::JointSpectrumInclusion => {
            &[Ginibre, Normal, BinormalWeightedPerm, SquareZero, ShiftLike]
        }
        TheoremId::SelfAdjoint => &[Ginibre, IndefiniteHermitian, SelfAdjointPolar, Positive],
        TheoremId::Normal => &[Ginibre, ShiftLike, Normal, SelfAdjointPolar],
        TheoremId::NormalCorollary => &[ShiftLike, Normal, SelfAdjointPolar],
        TheoremId::Positive => &[Positive, IndefiniteHermitian, Ginibre, SelfAdjointPolar],
        TheoremId::Unitary => &[OppositeFreeUnitary, Ginibre],
        TheoremId::Nilpotent => &[SquareZero, Ginibre, PartialIsometry, Normal],
        TheoremId::SelfAdjointCounterexample => &[SelfAdjointPolar],
        TheoremId::UnitaryCounterexample => &[ShiftLikeUnitSum],
    }
}
