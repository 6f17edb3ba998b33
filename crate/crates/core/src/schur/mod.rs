//! Vandermonde determinants, their generalized form `V_{k,α}`, and Schur
//! polynomials.
//!
//! `s_λ` is available two ways: as the bialternant quotient
//! `V_{k,α}(u) / V_k(u)` at distinct points, and as the tableau expansion
//! `Σ_μ Γ_λ^μ u^μ`, which is total.

mod poly;

pub use poly::SparsePolynomial;

use itertools::Itertools;
use thiserror::Error;

use crate::combinatorics::{
    gamma_table, partition_to_tuple, CombinatoricsError, ExponentVector, IndexTuple, Partition,
};
use crate::exact::Scalar;
use crate::linalg::{det_oracle, Matrix};

/// Largest `k` for which the `k!`-term symbolic determinants are built.
pub const MAX_SYMBOLIC_ARITY: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("symbolic determinant in {0} variables exceeds the limit of {MAX_SYMBOLIC_ARITY}")]
    SymbolicTooLarge(usize),
    #[error("at least one point is required")]
    NoPoints,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// `V_m(u) = ∏_{i<j} (u_j − u_i)`; the empty product for `m ≤ 1`.
pub fn vandermonde(points: &[Scalar]) -> Scalar {
    let mut acc = Scalar::one();
    for (i, ui) in points.iter().enumerate() {
        for uj in &points[i + 1..] {
            acc = acc * (uj - ui);
        }
    }
    acc
}

/// The `k × k` matrix `(u_i^{α_j})`.
pub fn generalized_vandermonde_matrix(
    points: &[Scalar],
    alpha: &IndexTuple,
) -> Result<Matrix, SchurError> {
    if points.len() != alpha.len() {
        return Err(SchurError::ArityMismatch {
            expected: alpha.len(),
            found: points.len(),
        });
    }
    let k = points.len();
    Ok(Matrix::from_fn(k, k, |i, j| {
        points[i - 1].pow(alpha.values()[j - 1] as u32)
    }))
}

/// `V_{k,α}(u) = det(u_i^{α_j})`, computed exactly by elimination.
pub fn generalized_vandermonde(
    points: &[Scalar],
    alpha: &IndexTuple,
) -> Result<Scalar, SchurError> {
    let m = generalized_vandermonde_matrix(points, alpha)?;
    Ok(det_oracle(&m).expect("generalized Vandermonde matrix is square"))
}

fn permutation_sign(perm: &[usize]) -> bool {
    let inversions = perm
        .iter()
        .enumerate()
        .map(|(i, a)| perm[i + 1..].iter().filter(|b| *b < a).count())
        .sum::<usize>();
    inversions % 2 == 1
}

/// `V_{k,α}` as a polynomial in `k` symbols: `Σ_σ sgn(σ) ∏_i u_i^{α_{σ(i)}}`.
pub fn generalized_vandermonde_polynomial(
    alpha: &IndexTuple,
) -> Result<SparsePolynomial, SchurError> {
    let k = alpha.len();
    if k > MAX_SYMBOLIC_ARITY {
        return Err(SchurError::SymbolicTooLarge(k));
    }
    let mut p = SparsePolynomial::zero(k);
    for perm in (0..k).permutations(k) {
        let exp = ExponentVector(perm.iter().map(|&s| alpha.values()[s]).collect());
        let coeff = if permutation_sign(&perm) {
            Scalar::from_int(-1)
        } else {
            Scalar::one()
        };
        p.add_term(exp, coeff);
    }
    Ok(p)
}

/// The Vandermonde polynomial `V_k` in `k` symbols.
pub fn vandermonde_polynomial(k: usize) -> Result<SparsePolynomial, SchurError> {
    let alpha = IndexTuple::staircase(k, k.saturating_sub(1)).map_err(|_| SchurError::NoPoints)?;
    generalized_vandermonde_polynomial(&alpha)
}

/// The exponent tuple `α` with `V_{k,α} = s_λ · V_k`, with the tightest ceiling.
pub fn bialternant_tuple(lambda: &Partition) -> Result<IndexTuple, SchurError> {
    let k = lambda.len();
    if k == 0 {
        return Err(SchurError::NoPoints);
    }
    let ceiling = lambda.parts()[0] + k - 1;
    Ok(partition_to_tuple(lambda, ceiling)?)
}

/// `s_λ = Σ_μ Γ_λ^μ u^μ` in `k` variables.
pub fn schur_expand(lambda: &Partition, k: usize) -> Result<SparsePolynomial, SchurError> {
    if lambda.len() != k {
        return Err(SchurError::ArityMismatch {
            expected: k,
            found: lambda.len(),
        });
    }
    let mut p = SparsePolynomial::zero(k);
    for (mu, count) in gamma_table(lambda, k) {
        p.add_term(mu, Scalar::from_int(count as i64));
    }
    Ok(p)
}

fn pairwise_distinct(points: &[Scalar]) -> bool {
    points
        .iter()
        .enumerate()
        .all(|(i, a)| points[i + 1..].iter().all(|b| a != b))
}

/// `V_{k,α}(u) / V_k(u)`, or `None` when two points coincide.
pub fn schur_eval_bialternant(
    lambda: &Partition,
    points: &[Scalar],
) -> Result<Option<Scalar>, SchurError> {
    if lambda.len() != points.len() {
        return Err(SchurError::ArityMismatch {
            expected: lambda.len(),
            found: points.len(),
        });
    }
    if !pairwise_distinct(points) {
        return Ok(None);
    }
    let alpha = bialternant_tuple(lambda)?;
    let num = generalized_vandermonde(points, &alpha)?;
    let den = vandermonde(points);
    Ok(Some(
        num.checked_div(&den)
            .expect("distinct points give a nonzero Vandermonde"),
    ))
}

/// Evaluates the tableau expansion of `s_λ` at `points`.
pub fn schur_eval_expansion(lambda: &Partition, points: &[Scalar]) -> Result<Scalar, SchurError> {
    schur_expand(lambda, points.len())?.evaluate(points)
}

/// `s_λ(points)`: bialternant quotient at distinct points, tableau expansion otherwise.
pub fn schur_eval(lambda: &Partition, points: &[Scalar]) -> Result<Scalar, SchurError> {
    match schur_eval_bialternant(lambda, points)? {
        Some(v) => Ok(v),
        None => schur_eval_expansion(lambda, points),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn tuple(v: &[usize], ceiling: usize) -> IndexTuple {
        IndexTuple::new(v.to_vec(), ceiling).unwrap()
    }

    #[test]
    fn vandermonde_values() {
        // (2−1)(3−1)(3−2)
        assert_eq!(vandermonde(&ints(&[1, 2, 3])), Scalar::from_int(2));
        assert_eq!(vandermonde(&ints(&[7, 7, 2])), Scalar::zero());
        assert_eq!(vandermonde(&ints(&[5])), Scalar::one());
    }

    #[test]
    fn generalized_vandermonde_values() {
        // 3² − 1²
        assert_eq!(
            generalized_vandermonde(&ints(&[1, 3]), &tuple(&[0, 2], 2)).unwrap(),
            Scalar::from_int(8)
        );
        assert_eq!(
            generalized_vandermonde(&ints(&[1, 2, 3]), &tuple(&[0, 1, 2], 2)).unwrap(),
            vandermonde(&ints(&[1, 2, 3]))
        );
        for alpha in [tuple(&[0, 1], 4), tuple(&[1, 4], 4), tuple(&[2, 3], 4)] {
            assert_eq!(
                generalized_vandermonde(&ints(&[2, 2]), &alpha).unwrap(),
                Scalar::zero()
            );
        }
        assert!(matches!(
            generalized_vandermonde(&ints(&[1, 2, 3]), &tuple(&[0, 2], 2)),
            Err(SchurError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn schur_eval_examples() {
        assert_eq!(
            schur_eval(&part(&[1, 0]), &ints(&[1, 3])).unwrap(),
            Scalar::from_int(4)
        );
        assert_eq!(
            schur_eval(&part(&[0, 0, 0]), &ints(&[4, -1, 9])).unwrap(),
            Scalar::one()
        );
        assert_eq!(
            schur_eval(&part(&[0, 0]), &ints(&[4, 4])).unwrap(),
            Scalar::one()
        );
        assert_eq!(
            schur_eval(&part(&[1, 1]), &ints(&[2, 5])).unwrap(),
            Scalar::from_int(10)
        );
        // coincident points fall through to the expansion: s_(1,0)(3,3) = 6
        assert_eq!(
            schur_eval(&part(&[1, 0]), &ints(&[3, 3])).unwrap(),
            Scalar::from_int(6)
        );
        assert_eq!(
            schur_eval_bialternant(&part(&[1, 0]), &ints(&[3, 3])).unwrap(),
            None
        );
    }

    #[test]
    fn schur_expand_examples() {
        let s10 = schur_expand(&part(&[1, 0]), 2).unwrap();
        assert_eq!(s10.to_string(), "u1 + u2");
        let s20 = schur_expand(&part(&[2, 0]), 2).unwrap();
        assert_eq!(s20.to_string(), "u1^2 + u1*u2 + u2^2");
        let s21 = schur_expand(&part(&[2, 1, 0]), 3).unwrap();
        assert_eq!(
            s21.coefficient(&ExponentVector(vec![1, 1, 1])),
            Scalar::from_int(2)
        );
        assert_eq!(s21.len(), 7);
        assert!(schur_expand(&part(&[2, 1]), 3).is_err());
    }

    #[test]
    fn symbolic_vandermonde_small() {
        let v2 = vandermonde_polynomial(2).unwrap();
        assert_eq!(v2.to_string(), "-u1 + u2");
        let v3 = vandermonde_polynomial(3).unwrap();
        assert_eq!(v3.len(), 6);
        assert_eq!(v3.evaluate(&ints(&[1, 2, 3])).unwrap(), Scalar::from_int(2));
        assert!(matches!(
            generalized_vandermonde_polynomial(&IndexTuple::staircase(6, 5).unwrap()),
            Err(SchurError::SymbolicTooLarge(6))
        ));
    }

    #[test]
    fn bialternant_identity_for_hook() {
        let lambda = part(&[2, 1, 0]);
        let alpha = bialternant_tuple(&lambda).unwrap();
        assert_eq!(alpha.values(), &[0, 2, 4]);
        let lhs = schur_expand(&lambda, 3)
            .unwrap()
            .try_mul(&vandermonde_polynomial(3).unwrap())
            .unwrap();
        assert_eq!(lhs, generalized_vandermonde_polynomial(&alpha).unwrap());
    }
}
