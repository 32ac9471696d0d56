//! Dense complex matrix substrate.
//!
//! Matrices are plain `nalgebra::DMatrix<Complex64>` values. Everything here
//! is a pure function of its inputs.

mod dense;
mod loewner;
mod spectral;

pub(crate) use dense::eigenvalues as eigenvalues_unordered;
pub(crate) use spectral::eig_unchecked;
pub use loewner::{loewner_compare, loewner_gap, LoewnerGap, LoewnerOrder};
pub use spectral::{
    exp_hermitian, frac_power_psd, herm_eig, hermitian_function, log_pd, sqrt_psd, HermEig,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::ToleranceContext;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Checks the `CMatrix` invariants: non-empty, square, finite entries.
pub fn validate(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if a.nrows() == 0 {
        return Err(Error::Empty);
    }
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let z = a[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Builds an `n x n` matrix from row-major complex entries.
pub fn from_rows(n: usize, entries: &[C64]) -> CMatrix {
    CMatrix::from_row_slice(n, n, entries)
}

/// Builds an `n x n` matrix from row-major real entries.
pub fn from_real_rows(n: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_iterator(
        n,
        n,
        (0..n * n).map(|k| {
            let (col, row) = (k / n, k % n);
            C64::new(entries[row * n + col], 0.0)
        }),
    )
}

pub fn diag_real(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&v| C64::new(v, 0.0)),
    ))
}

pub fn diag(values: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(values))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// `AB - BA`
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `(A + A*) / 2`
pub fn herm_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn fro_norm(a: &CMatrix) -> f64 {
    a.norm()
}

pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// `max(1, ||A||_2)`
pub fn scale(a: &CMatrix) -> f64 {
    spectral_norm(a).max(1.0)
}

/// Outer product `x y*`, i.e. the rank-one map `h -> <h, y> x`.
pub fn outer(x: &CVector, y: &CVector) -> CMatrix {
    x * y.adjoint()
}

/// Inner product `<x, y>`, linear in `x` and conjugate-linear in `y`.
pub fn inner(x: &CVector, y: &CVector) -> C64 {
    y.dotc(x)
}

/// Thin wrapper over a full SVD, `A = U diag(sigma) W*`, singular values descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub w: CMatrix,
}

impl Svd {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let (u, sigma, w) = dense::svd(a)?;
        Ok(Self { u, sigma, w })
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn rank_decision(&self, tol: &ToleranceContext) -> RankDecision {
        RankDecision::new(&self.sigma, self.u.nrows(), tol)
    }

    /// Columns `range` of `U` times their adjoint: projector onto that left subspace.
    pub fn left_projector(&self, cols: std::ops::Range<usize>) -> CMatrix {
        let block = self.u.columns(cols.start, cols.len());
        block * block.adjoint()
    }

    pub fn right_projector(&self, cols: std::ops::Range<usize>) -> CMatrix {
        let block = self.w.columns(cols.start, cols.len());
        block * block.adjoint()
    }
}

/// Outcome of a numerical rank decision.
///
/// A singular value counts as nonzero iff it is positive and not below
/// `cutoff = n * rank_eps * sigma_max`; a value equal to the cutoff is kept.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RankDecision {
    pub rank: usize,
    pub cutoff: f64,
    pub smallest_retained: Option<f64>,
    pub largest_dropped: Option<f64>,
}

impl RankDecision {
    pub fn new(sigma: &[f64], n: usize, tol: &ToleranceContext) -> Self {
        let sigma_max = sigma.first().copied().unwrap_or(0.0);
        let cutoff = tol.rank_cutoff(n, sigma_max);
        let rank = sigma.iter().take_while(|&&s| s > 0.0 && s >= cutoff).count();
        Self {
            rank,
            cutoff,
            smallest_retained: rank.checked_sub(1).map(|k| sigma[k]),
            largest_dropped: sigma.get(rank).copied(),
        }
    }

    /// `sigma_r / cutoff` for the smallest retained singular value.
    pub fn margin(&self) -> Option<f64> {
        match self.smallest_retained {
            Some(s) if self.cutoff > 0.0 => Some(s / self.cutoff),
            _ => None,
        }
    }

    /// True when a retained or dropped singular value lies within a factor of
    /// two of the cutoff, where the decision is fragile.
    pub fn near_cutoff(&self) -> bool {
        let kept_close = self.margin().is_some_and(|m| m < 2.0);
        let dropped_close = self
            .largest_dropped
            .is_some_and(|s| s > 0.0 && s >= 0.5 * self.cutoff);
        kept_close || dropped_close
    }
}

pub fn numerical_rank(a: &CMatrix, tol: &ToleranceContext) -> Result<usize> {
    Ok(Svd::new(a)?.rank_decision(tol).rank)
}

/// Orthogonal projector onto the numerical range of `A`.
pub fn projection_onto_range(a: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    let svd = Svd::new(a)?;
    let r = svd.rank_decision(tol).rank;
    Ok(svd.left_projector(0..r))
}

/// Orthogonal projector onto the numerical kernel of `A`.
pub fn kernel_projector(a: &CMatrix, tol: &ToleranceContext) -> Result<CMatrix> {
    let svd = Svd::new(a)?;
    let r = svd.rank_decision(tol).rank;
    let n = a.ncols();
    Ok(svd.right_projector(r..n))
}

/// `||(I - P_B) P_A||_F`: zero iff range(P_A) ⊆ range(P_B).
pub fn subspace_excess(pa: &CMatrix, pb: &CMatrix) -> f64 {
    fro_norm(&(pa - pb * pa))
}
