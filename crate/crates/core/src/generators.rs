//! Seeded random matrix ensembles.
//!
//! Every matrix is a pure function of `(kind, dim, seed)`. The stream is
//! ChaCha8 seeded through `SeedableRng::seed_from_u64`, so a seed printed in a
//! counterexample reproduces the matrix bit for bit.
//!
//! Quasinormal, hyponormal and log-hyponormal matrices are not listed: in
//! finite dimension each of those classes is the normal class, so `Normal`
//! stands in for all of them.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::linalg::QR;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use crate::classify;
use crate::error::{Error, Result};
use crate::matrix_core::{diag, diag_real, numerical_rank, CMatrix, CVector, C64};
use crate::polar::polar_decompose;
use crate::tolerance::ToleranceContext;

/// Minimum angular distance between `arg(a) - arg(b)` and `pi` for any two
/// eigenvalues `a`, `b` of an opposite-free unitary.
pub const OPPOSITE_GAP: f64 = 0.1;

/// Ridge added by `PositiveRidge`.
pub const POSITIVE_RIDGE: f64 = 1e-2;

/// Smallest eigenvalue modulus of an `INDEFINITE_HERMITIAN` sample.
pub const INDEFINITE_GAP: f64 = 0.1;

const MAX_RESAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// i.i.d. standard complex Gaussian entries.
    Ginibre,
    /// Haar-like unitary from QR of a Ginibre matrix.
    Unitary,
    /// `U diag(g) U*` with complex Gaussian `g`.
    Normal,
    /// `A*A`.
    Positive,
    /// `A*A + ridge I`.
    PositiveRidge,
    /// `U_r W_r*` for two random unitaries, rank `r`.
    PartialIsometry(usize),
    /// `diag(w) P` with nonnegative weights and a permutation `P`.
    BinormalWeightedPerm,
    /// `[[0, B], [0, 0]]` in a random unitary frame.
    SquareZero,
    /// Ginibre matrix restricted to a random rank-`r` subspace.
    Singular(usize),
    /// Unitary whose spectrum contains no pair `lambda`, `-lambda`.
    OppositeFreeUnitary,
    /// `[[0, b], [a, 0]]`, padded with the identity above dimension 2.
    ShiftLike(f64, f64),
    /// `(G + G*) / 2`.
    IndefiniteHermitian,
    /// `V P` with `V` a Hermitian unitary and `P = A*A + 0.1 I`.
    SelfAdjointPolar,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ginibre => f.write_str("GINIBRE"),
            Self::Unitary => f.write_str("UNITARY"),
            Self::Normal => f.write_str("NORMAL"),
            Self::Positive => f.write_str("POSITIVE"),
            Self::PositiveRidge => f.write_str("POSITIVE_RIDGE"),
            Self::PartialIsometry(r) => write!(f, "PARTIAL_ISOMETRY({r})"),
            Self::BinormalWeightedPerm => f.write_str("BINORMAL_WEIGHTED_PERM"),
            Self::SquareZero => f.write_str("SQUARE_ZERO"),
            Self::Singular(r) => write!(f, "SINGULAR({r})"),
            Self::OppositeFreeUnitary => f.write_str("OPPOSITE_FREE_UNITARY"),
            Self::ShiftLike(a, b) => write!(f, "SHIFT_LIKE({a},{b})"),
            Self::IndefiniteHermitian => f.write_str("INDEFINITE_HERMITIAN"),
            Self::SelfAdjointPolar => f.write_str("SELF_ADJOINT_POLAR"),
        }
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenerator(format!("unknown generator kind `{s}`"));
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => (name, Some(rest.strip_suffix(')').ok_or_else(bad)?)),
            None => (s, None),
        };
        let rank = |args: Option<&str>| -> Result<usize> {
            args.and_then(|a| a.trim().parse().ok()).ok_or_else(bad)
        };
        Ok(match (name.trim(), args) {
            ("GINIBRE", None) => Self::Ginibre,
            ("UNITARY", None) => Self::Unitary,
            ("NORMAL", None) => Self::Normal,
            ("POSITIVE", None) => Self::Positive,
            ("POSITIVE_RIDGE", None) => Self::PositiveRidge,
            ("BINORMAL_WEIGHTED_PERM", None) => Self::BinormalWeightedPerm,
            ("SQUARE_ZERO", None) => Self::SquareZero,
            ("OPPOSITE_FREE_UNITARY", None) => Self::OppositeFreeUnitary,
            ("INDEFINITE_HERMITIAN", None) => Self::IndefiniteHermitian,
            ("SELF_ADJOINT_POLAR", None) => Self::SelfAdjointPolar,
            ("PARTIAL_ISOMETRY", a) => Self::PartialIsometry(rank(a)?),
            ("SINGULAR", a) => Self::Singular(rank(a)?),
            ("SHIFT_LIKE", Some(a)) => {
                let (x, y) = a.split_once(',').ok_or_else(bad)?;
                let x = x.trim().parse().map_err(|_| bad())?;
                let y = y.trim().parse().map_err(|_| bad())?;
                Self::ShiftLike(x, y)
            }
            _ => return Err(bad()),
        })
    }
}

impl Serialize for GenKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub dim: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, dim: usize, seed: u64) -> Self {
        Self { kind, dim, seed }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} seed={}", self.kind, self.dim, self.seed)
    }
}

/// SplitMix64 finalizer, used to derive independent per-trial seeds.
pub fn mix_seed(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a list of integers into a base seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix_seed(base), |acc, &p| mix_seed(acc ^ p))
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Standard complex Gaussian vector, `E|z_i|^2 = 1`.
pub fn gaussian_vector(n: usize, seed: u64) -> CVector {
    let mut rng = rng_for(seed);
    CVector::from_fn(n, |_, _| complex_gaussian(&mut rng))
}

/// Haar-distributed unitary of size `n`.
pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    unitary(n, &mut rng_for(seed))
}

fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    // fill row by row so the stream order is independent of storage order
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

fn unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let qr = QR::new(ginibre(n, n, rng));
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random signs with both values present when `n > 1`.
fn mixed_signs(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut signs: Vec<f64> = (0..n)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    if n > 1 && signs.iter().all(|&x| x == signs[0]) {
        let k = rng.random_range(0..n);
        signs[k] = -signs[k];
    }
    signs
}

fn conjugate(u: &CMatrix, d: &CMatrix) -> CMatrix {
    u * d * u.adjoint()
}

fn hermitize(m: CMatrix) -> CMatrix {
    (&m + m.adjoint()).scale(0.5)
}

fn opposite_free_phases(n: usize, rng: &mut impl Rng) -> Result<Vec<f64>> {
    for _ in 0..MAX_RESAMPLES {
        let phases: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * TAU).collect();
        if phases_opposite_free(&phases, OPPOSITE_GAP) {
            return Ok(phases);
        }
    }
    Err(Error::InvalidGenerator(format!(
        "no opposite-free spectrum found in dimension {n}"
    )))
}

/// Angular distance of `x` from `pi` modulo `2 pi`.
fn distance_from_pi(x: f64) -> f64 {
    let d = (x - PI).rem_euclid(TAU);
    d.min(TAU - d)
}

/// No two phases differ by `pi` (mod `2 pi`) within `gap`.
pub fn phases_opposite_free(phases: &[f64], gap: f64) -> bool {
    phases.iter().enumerate().all(|(j, a)| {
        phases[j + 1..]
            .iter()
            .all(|b| distance_from_pi(a - b) >= gap)
    })
}

/// Smallest `|a + b|` over distinct pairs of eigenvalues, or `None` with fewer than two.
pub fn min_opposite_distance(ev: &[C64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (j, a) in ev.iter().enumerate() {
        for b in &ev[j + 1..] {
            let d = (a + b).norm();
            best = Some(best.map_or(d, |m| m.min(d)));
        }
    }
    best
}

fn check_rank(rank: usize, dim: usize) -> Result<()> {
    if rank > dim {
        Err(Error::InvalidRank { rank, dim })
    } else {
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<CMatrix> {
    let n = spec.dim;
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut rng = rng_for(spec.seed);
    let rng = &mut rng;
    let m = match spec.kind {
        GenKind::Ginibre => ginibre(n, n, rng),
        GenKind::Unitary => unitary(n, rng),
        GenKind::Normal => {
            let u = unitary(n, rng);
            let d: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            conjugate(&u, &diag(&d))
        }
        GenKind::Positive | GenKind::PositiveRidge => {
            let a = ginibre(n, n, rng);
            let mut p = hermitize(a.adjoint() * a);
            if spec.kind == GenKind::PositiveRidge {
                for i in 0..n {
                    p[(i, i)] += POSITIVE_RIDGE;
                }
            }
            p
        }
        GenKind::PartialIsometry(r) => {
            check_rank(r, n)?;
            let u = unitary(n, rng);
            let w = unitary(n, rng);
            u.columns(0, r) * w.columns(0, r).adjoint()
        }
        GenKind::BinormalWeightedPerm => {
            let weights: Vec<f64> = (0..n)
                .map(|_| {
                    let w = complex_gaussian(rng).norm();
                    if rng.random::<f64>() < 0.25 {
                        0.0
                    } else {
                        w
                    }
                })
                .collect();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let p = CMatrix::from_fn(n, n, |i, j| {
                if perm[i] == j {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            diag_real(&weights) * p
        }
        GenKind::SquareZero => {
            let k = n / 2;
            let b = ginibre(k, n - k, rng);
            let mut block = CMatrix::zeros(n, n);
            block.view_mut((0, k), (k, n - k)).copy_from(&b);
            let u = unitary(n, rng);
            conjugate(&u, &block)
        }
        GenKind::Singular(r) => {
            check_rank(r, n)?;
            let g = ginibre(n, n, rng);
            let q = unitary(n, rng);
            let qr = q.columns(0, r);
            g * (qr * qr.adjoint())
        }
        GenKind::OppositeFreeUnitary => {
            let u = unitary(n, rng);
            let d: Vec<C64> = opposite_free_phases(n, rng)?
                .into_iter()
                .map(|t| C64::from_polar(1.0, t))
                .collect();
            conjugate(&u, &diag(&d))
        }
        GenKind::ShiftLike(a, b) => shift_like(a, b, n)?,
        GenKind::IndefiniteHermitian => {
            if n < 2 {
                return Err(Error::InvalidGenerator(
                    "INDEFINITE_HERMITIAN needs dimension at least 2".into(),
                ));
            }
            let w = unitary(n, rng);
            let signs = mixed_signs(n, rng);
            let values: Vec<f64> = signs
                .iter()
                .map(|s| {
                    let g: f64 = rng.sample(StandardNormal);
                    s * (INDEFINITE_GAP + g.abs())
                })
                .collect();
            hermitize(conjugate(&w, &diag_real(&values)))
        }
        GenKind::SelfAdjointPolar => {
            let w = unitary(n, rng);
            // mixed signs, so that V and |T| do not commute generically
            let signs = mixed_signs(n, rng);
            let v = hermitize(conjugate(&w, &diag_real(&signs)));
            let a = ginibre(n, n, rng);
            // the ridge keeps |T| well conditioned so V is computed accurately
            let mut p = hermitize(a.adjoint() * a);
            for i in 0..n {
                p[(i, i)] += 0.1;
            }
            v * p
        }
    };
    Ok(m)
}

/// `[[0, b], [a, 0]]` with `a != b`, both positive, padded with the identity.
pub fn shift_like(a: f64, b: f64, n: usize) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::InvalidGenerator("SHIFT_LIKE needs dimension at least 2".into()));
    }
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) || a == b {
        return Err(Error::InvalidGenerator(format!(
            "SHIFT_LIKE needs distinct positive weights, got a = {a}, b = {b}"
        )));
    }
    let mut m = CMatrix::identity(n, n);
    m[(0, 0)] = C64::new(0.0, 0.0);
    m[(1, 1)] = C64::new(0.0, 0.0);
    m[(0, 1)] = C64::new(b, 0.0);
    m[(1, 0)] = C64::new(a, 0.0);
    Ok(m)
}

/// Draws the weights of a shift-like matrix from a seed: `a, b` uniform in
/// `[0.1, 3)` and at least `0.05` apart.
pub fn random_shift_weights(seed: u64) -> (f64, f64) {
    let mut rng = rng_for(seed);
    loop {
        let a: f64 = rng.random_range(0.1..3.0);
        let b: f64 = rng.random_range(0.1..3.0);
        if (a - b).abs() >= 0.05 {
            return (a, b);
        }
    }
}

/// Shift-like weights with `a + b = 2` and `|a - 1| >= 0.05`, so that the
/// mean transform is the flip `[[0, 1], [1, 0]]` while `T` is not unitary.
pub fn random_unit_sum_weights(seed: u64) -> (f64, f64) {
    let mut rng = rng_for(seed);
    loop {
        let a: f64 = rng.random_range(0.1..1.9);
        if (a - 1.0).abs() >= 0.05 {
            return (a, 2.0 - a);
        }
    }
}

/// Checks that a generated matrix belongs to the class its kind promises.
pub fn certify(spec: &GenSpec, t: &CMatrix, tol: &ToleranceContext) -> Result<bool> {
    Ok(match spec.kind {
        GenKind::Ginibre => t.shape() == (spec.dim, spec.dim),
        GenKind::Unitary => classify::is_unitary(t, tol)?.holds,
        GenKind::Normal => classify::is_normal(t, tol)?.holds,
        GenKind::Positive | GenKind::PositiveRidge => classify::is_positive(t, tol)?.holds,
        GenKind::PartialIsometry(r) => {
            classify::is_partial_isometry(t, tol)?.holds && numerical_rank(t, tol)? == r
        }
        GenKind::BinormalWeightedPerm => classify::is_binormal(t, tol)?.holds,
        GenKind::SquareZero => classify::is_square_zero(t, tol)?.holds,
        GenKind::Singular(r) => numerical_rank(t, tol)? == r,
        GenKind::OppositeFreeUnitary => {
            let ev = crate::spectra::eigenvalues(t)?;
            let phases: Vec<f64> = ev.iter().map(|z| z.arg()).collect();
            classify::is_unitary(t, tol)?.holds && phases_opposite_free(&phases, 0.5 * OPPOSITE_GAP)
        }
        GenKind::ShiftLike(..) => !classify::is_normal(t, tol)?.holds,
        GenKind::IndefiniteHermitian => {
            let eig = crate::matrix_core::herm_eig(t, tol)?;
            eig.min() <= -INDEFINITE_GAP * 0.5 && eig.max() >= INDEFINITE_GAP * 0.5
        }
        GenKind::SelfAdjointPolar => {
            let v = polar_decompose(t, tol)?.v;
            classify::is_self_adjoint(&v, tol)?.holds
        }
    })
}
