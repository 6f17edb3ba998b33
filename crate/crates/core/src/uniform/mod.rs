//! Matrices `A(k; x, y, r, ℓ)` with entries `A_ij = (x_i + r_j·y_i)^ℓ`.
//!
//! Three independent determinant routes live here and in the submodules:
//! elimination on the built matrix, the multilinear expansion
//! `Σ_α V_{k,α}(r)·det(B_α)`, and the finite-difference column reduction for
//! `r = (1, …, k)`. [`classify_regularity`] decides regularity, taking the
//! size bound and the positivity criterion as fast paths.

mod expansion;
mod reduction;
mod regularity;

pub use expansion::{
    closed_form_limit_det, det_b_alpha, det_b_alpha_direct, det_b_alpha_dual, det_b_alpha_rho,
    det_b_alpha_x_vanishing, det_b_alpha_y_vanishing, det_expansion, det_expansion_dual,
    det_expansion_factored, det_expansion_with_jobs,
};
pub use reduction::{column_reduce, derivative_at_zero, finite_diff_sum, reduced_column};
pub use regularity::{
    classify_regularity, positivity_hypotheses_hold, RegularityStatus, RegularityVerdict,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{CombinatoricsError, IndexTuple};
use crate::exact::{binom, Scalar};
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniformError {
    #[error("matrix size k must be at least 1")]
    ZeroSize,
    #[error("sequence {name} has {len} entries, need at least k = {k}")]
    SequenceTooShort {
        name: &'static str,
        len: usize,
        k: usize,
    },
    #[error("r is not injective: r_{i} = r_{j}")]
    RNotInjective { i: usize, j: usize },
    #[error("constant-gap matrices need N >= 1, got {0}")]
    InvalidStart(i64),
    #[error("column reduction needs r = (1, ..., k)")]
    ReductionNeedsConsecutiveR,
    #[error("column reduction needs k >= ell + 1, got k = {k}, ell = {ell}")]
    ReductionTooSmall { k: usize, ell: usize },
    #[error("polynomial degree {degree} exceeds ell = {ell}")]
    DegreeTooHigh { degree: usize, ell: usize },
    #[error("index tuple {alpha} does not fit k = {k}, ell = {ell}")]
    TupleMismatch { alpha: String, k: usize, ell: usize },
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The data `(k; x, y, r, ℓ)`. Sequences may be longer than `k`; only the
/// first `k` entries are used, and `r` must be injective on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct UniformMatrixSpec {
    k: usize,
    ell: usize,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    r: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    k: usize,
    ell: usize,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    r: Vec<Scalar>,
}

impl TryFrom<SpecJson> for UniformMatrixSpec {
    type Error = UniformError;
    fn try_from(raw: SpecJson) -> Result<Self, Self::Error> {
        UniformMatrixSpec::new(raw.k, raw.ell, raw.x, raw.y, raw.r)
    }
}

impl From<UniformMatrixSpec> for SpecJson {
    fn from(s: UniformMatrixSpec) -> Self {
        SpecJson {
            k: s.k,
            ell: s.ell,
            x: s.x,
            y: s.y,
            r: s.r,
        }
    }
}

impl UniformMatrixSpec {
    pub fn new(
        k: usize,
        ell: usize,
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        r: Vec<Scalar>,
    ) -> Result<Self, UniformError> {
        if k == 0 {
            return Err(UniformError::ZeroSize);
        }
        for (name, seq) in [("x", &x), ("y", &y), ("r", &r)] {
            if seq.len() < k {
                return Err(UniformError::SequenceTooShort {
                    name,
                    len: seq.len(),
                    k,
                });
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if r[i] == r[j] {
                    return Err(UniformError::RNotInjective { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(UniformMatrixSpec { k, ell, x, y, r })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x[..self.k]
    }

    pub fn y(&self) -> &[Scalar] {
        &self.y[..self.k]
    }

    pub fn r(&self) -> &[Scalar] {
        &self.r[..self.k]
    }

    pub(crate) fn ell_u32(&self) -> u32 {
        u32::try_from(self.ell).expect("exponent fits in u32")
    }

    /// True when `r = (1, 2, …, k)`.
    pub fn has_consecutive_r(&self) -> bool {
        self.r()
            .iter()
            .enumerate()
            .all(|(j, rj)| *rj == Scalar::from_int(j as i64 + 1))
    }

    /// Copy with row `i` (1-based) removed and `k` lowered by one.
    pub(crate) fn without_row(&self, i: usize) -> UniformMatrixSpec {
        let drop = |seq: &[Scalar]| -> Vec<Scalar> {
            seq.iter()
                .enumerate()
                .filter(|(n, _)| n + 1 != i)
                .map(|(_, v)| v.clone())
                .collect()
        };
        UniformMatrixSpec {
            k: self.k - 1,
            ell: self.ell,
            x: drop(self.x()),
            y: drop(self.y()),
            r: self.r[..self.k - 1].to_vec(),
        }
    }

    pub(crate) fn check_tuple(&self, alpha: &IndexTuple) -> Result<(), UniformError> {
        if alpha.len() != self.k || alpha.ceiling() != self.ell {
            return Err(UniformError::TupleMismatch {
                alpha: alpha.to_string(),
                k: self.k,
                ell: self.ell,
            });
        }
        Ok(())
    }
}

/// `A_ij = (x_i + r_j·y_i)^ℓ`, with `0^0 = 1`.
pub fn build_matrix(spec: &UniformMatrixSpec) -> Matrix {
    let (x, y, r) = (spec.x(), spec.y(), spec.r());
    let ell = spec.ell_u32();
    Matrix::from_fn(spec.k, spec.k, |i, j| {
        (&x[i - 1] + &r[j - 1] * &y[i - 1]).pow(ell)
    })
}

/// The matrix whose rows are consecutive integers to the `ℓ`-th power,
/// starting from `N`: `x_i = N + (i−1)k − 1`, `y_i = 1`, `r_j = j`.
pub fn constant_gap_spec(n: i64, k: usize, ell: usize) -> Result<UniformMatrixSpec, UniformError> {
    if n < 1 {
        return Err(UniformError::InvalidStart(n));
    }
    let kk = k as i64;
    let x = (1..=kk)
        .map(|i| Scalar::from_int(n + (i - 1) * kk - 1))
        .collect();
    let y = vec![Scalar::one(); k];
    let r = (1..=kk).map(Scalar::from_int).collect();
    UniformMatrixSpec::new(k, ell, x, y, r)
}

/// The `k × (ℓ+1)` grid `b_i^{(j)} = C(ℓ, j)·x_i^{ℓ−j}·y_i^j`: row `i` holds
/// the coefficients of `(x_i + t·y_i)^ℓ` in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCoefficientMatrix(Matrix);

impl BCoefficientMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// `B_α`: the columns for exponents `α_1, …, α_k`.
    pub fn select(&self, alpha: &IndexTuple) -> Result<Matrix, UniformError> {
        let cols: Vec<usize> = alpha.values().iter().map(|a| a + 1).collect();
        Ok(self.0.select_columns(&cols)?)
    }
}

pub fn b_matrix(spec: &UniformMatrixSpec) -> BCoefficientMatrix {
    let ell = spec.ell;
    let coeffs: Vec<Scalar> = (0..=ell)
        .map(|j| Scalar::from_bigint(binom(ell as u64, j as u64)))
        .collect();
    let (x, y) = (spec.x(), spec.y());
    BCoefficientMatrix(Matrix::from_fn(spec.k, ell + 1, |i, j| {
        let e = j - 1;
        &coeffs[e] * &x[i - 1].pow((ell - e) as u32) * y[i - 1].pow(e as u32)
    }))
}
