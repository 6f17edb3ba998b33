use super::{build_matrix, UniformError, UniformMatrixSpec};
use crate::exact::{binom, fact, Scalar};
use crate::linalg::{column_combination, Matrix};

fn degree(coeffs: &[Scalar]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

fn horner(coeffs: &[Scalar], at: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(Scalar::zero(), |acc, c| acc * at + c)
}

/// `Σ_{ν=0}^{ℓ} (−1)^ν C(ℓ, ν) q(ν)` for `q = a_0 + a_1 x + …`.
///
/// For `deg q ≤ ℓ` this equals `(−1)^ℓ q^{(ℓ)}(0)`; higher degrees are
/// rejected. Trailing zero coefficients do not count towards the degree.
pub fn finite_diff_sum(ell: usize, coeffs: &[Scalar]) -> Result<Scalar, UniformError> {
    if let Some(d) = degree(coeffs).filter(|&d| d > ell) {
        return Err(UniformError::DegreeTooHigh { degree: d, ell });
    }
    Ok((0..=ell)
        .map(|nu| {
            let term = Scalar::from_bigint(binom(ell as u64, nu as u64))
                * horner(coeffs, &Scalar::from_int(nu as i64));
            term.with_sign_of_power(nu)
        })
        .sum())
}

/// `q^{(order)}(0)` by differentiating the coefficient list `order` times.
pub fn derivative_at_zero(coeffs: &[Scalar], order: usize) -> Scalar {
    let mut current = coeffs.to_vec();
    for _ in 0..order {
        if current.len() <= 1 {
            return Scalar::zero();
        }
        current = current
            .iter()
            .enumerate()
            .skip(1)
            .map(|(e, c)| c * &Scalar::from_int(e as i64))
            .collect();
    }
    current.first().cloned().unwrap_or_default()
}

/// The column every reduced column collapses to: `(ℓ!·y_i^ℓ)_i`.
pub fn reduced_column(spec: &UniformMatrixSpec) -> Vec<Scalar> {
    let lf = Scalar::from_bigint(fact(spec.ell() as u64));
    spec.y()
        .iter()
        .map(|y| &lf * &y.pow(spec.ell_u32()))
        .collect()
}

/// For `r = (1, …, k)` and `k ≥ ℓ + 1`, replaces column `j = k, k−1, …, ℓ+1`
/// by `(−1)^ℓ Σ_{ν=0}^{ℓ} (−1)^ν C(ℓ, ν) C_{j−ℓ+ν}`.
///
/// The target column enters with coefficient `+1`, so the determinant is
/// unchanged, and every replaced column equals [`reduced_column`].
pub fn column_reduce(spec: &UniformMatrixSpec) -> Result<Matrix, UniformError> {
    if !spec.has_consecutive_r() {
        return Err(UniformError::ReductionNeedsConsecutiveR);
    }
    let (k, ell) = (spec.k(), spec.ell());
    if k < ell + 1 {
        return Err(UniformError::ReductionTooSmall { k, ell });
    }
    let weights: Vec<Scalar> = (0..=ell)
        .map(|nu| Scalar::from_bigint(binom(ell as u64, nu as u64)).with_sign_of_power(ell + nu))
        .collect();
    let mut m = build_matrix(spec);
    // descending j: the columns read by step j are all still original
    for j in (ell + 1..=k).rev() {
        let combo: Vec<(usize, Scalar)> = weights
            .iter()
            .enumerate()
            .map(|(nu, w)| (j - ell + nu, w.clone()))
            .collect();
        m = column_combination(&m, j, &combo)?;
    }
    Ok(m)
}
