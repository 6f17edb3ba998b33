use rayon::prelude::*;

use super::{b_matrix, UniformError, UniformMatrixSpec};
use crate::combinatorics::{enumerate_index_tuples, IndexTuple};
use crate::exact::{binom, fact, Scalar};
use crate::linalg::det_oracle;
use crate::schur::generalized_vandermonde;

fn binomial_product(ell: usize, exps: &[usize]) -> Scalar {
    let ell = ell as u64;
    Scalar::from_bigint(exps.iter().map(|&a| binom(ell, a as u64)).product())
}

fn power_product<'a>(values: impl IntoIterator<Item = &'a Scalar>, ell: u32) -> Scalar {
    values.into_iter().map(|v| v.pow(ell)).product()
}

/// `ρ_i = y_i / x_i`, or `None` if some `x_i` vanishes.
fn ratios(spec: &UniformMatrixSpec) -> Option<Vec<Scalar>> {
    spec.x()
        .iter()
        .zip(spec.y())
        .map(|(x, y)| y.checked_div(x).ok())
        .collect()
}

/// `1/ρ_i = x_i / y_i`, or `None` if some `y_i` vanishes.
fn inverse_ratios(spec: &UniformMatrixSpec) -> Option<Vec<Scalar>> {
    spec.x()
        .iter()
        .zip(spec.y())
        .map(|(x, y)| x.checked_div(y).ok())
        .collect()
}

fn gv(points: &[Scalar], alpha: &IndexTuple) -> Scalar {
    generalized_vandermonde(points, alpha).expect("tuple length matches point count")
}

fn sub_tuple(values: &[usize], ell: usize) -> IndexTuple {
    IndexTuple::new(values.to_vec(), ell).expect("slice of a valid tuple is valid")
}

fn single_zero(values: &[Scalar]) -> Option<usize> {
    let mut zeros = values.iter().enumerate().filter(|(_, v)| v.is_zero());
    match (zeros.next(), zeros.next()) {
        (Some((i, _)), None) => Some(i + 1),
        _ => None,
    }
}

/// `det(B_α)` straight from the coefficient grid by elimination.
pub fn det_b_alpha_direct(
    spec: &UniformMatrixSpec,
    alpha: &IndexTuple,
) -> Result<Scalar, UniformError> {
    spec.check_tuple(alpha)?;
    Ok(det_oracle(&b_matrix(spec).select(alpha)?)?)
}

/// `det(B_α) = ∏ x_i^ℓ · ∏ C(ℓ, α_j) · V_{k,α}(ρ)`. `None` if some `x_i = 0`.
pub fn det_b_alpha_rho(
    spec: &UniformMatrixSpec,
    alpha: &IndexTuple,
) -> Result<Option<Scalar>, UniformError> {
    spec.check_tuple(alpha)?;
    let Some(rho) = ratios(spec) else {
        return Ok(None);
    };
    let value = power_product(spec.x(), spec.ell_u32())
        * binomial_product(spec.ell(), alpha.values())
        * gv(&rho, alpha);
    Ok(Some(value))
}

/// `det(B_α) = (−1)^{k(k−1)/2} · ∏ y_i^ℓ · ∏ C(ℓ, α_j) · V_{k,α^∁}(1/ρ)`.
/// `None` if some `y_i = 0`.
pub fn det_b_alpha_dual(
    spec: &UniformMatrixSpec,
    alpha: &IndexTuple,
) -> Result<Option<Scalar>, UniformError> {
    spec.check_tuple(alpha)?;
    let Some(inv_rho) = inverse_ratios(spec) else {
        return Ok(None);
    };
    let k = spec.k();
    let value = power_product(spec.y(), spec.ell_u32())
        * binomial_product(spec.ell(), alpha.values())
        * gv(&inv_rho, &alpha.complement());
    Ok(Some(value.with_sign_of_power(k * (k - 1) / 2)))
}

/// Reduction for a single vanishing `x_{i0}` with every other `x_i ≠ 0`.
///
/// Row `i0` of `B` is `(0, …, 0, y_{i0}^ℓ)`, so `det(B_α) = 0` unless
/// `α_k = ℓ`, and otherwise
/// `det(B_α) = (−1)^{i0+k} · y_{i0}^ℓ · ∏_{i≠i0} x_i^ℓ · ∏_{j<k} C(ℓ, α_j) · V_{k−1,α'}(ρ_i : i ≠ i0)`.
pub fn det_b_alpha_x_vanishing(
    spec: &UniformMatrixSpec,
    alpha: &IndexTuple,
) -> Result<Option<Scalar>, UniformError> {
    spec.check_tuple(alpha)?;
    let Some(i0) = single_zero(spec.x()) else {
        return Ok(None);
    };
    let (k, ell) = (spec.k(), spec.ell());
    let head = &alpha.values()[..k - 1];
    if alpha.values()[k - 1] != ell {
        return Ok(Some(Scalar::zero()));
    }
    let lead = spec.y()[i0 - 1].pow(spec.ell_u32());
    if k == 1 {
        return Ok(Some(lead));
    }
    let rest = spec.without_row(i0);
    let rho = ratios(&rest).expect("other x_i are nonzero");
    let value = lead
        * power_product(rest.x(), spec.ell_u32())
        * binomial_product(ell, head)
        * gv(&rho, &sub_tuple(head, ell));
    Ok(Some(value.with_sign_of_power(i0 + k)))
}

/// Reduction for a single vanishing `y_{i0}` with every other `x_i ≠ 0`.
///
/// Row `i0` of `B` is `(x_{i0}^ℓ, 0, …, 0)`, so `det(B_α) = 0` unless
/// `α_1 = 0`, and otherwise
/// `det(B_α) = (−1)^{i0+1} · x_{i0}^ℓ · ∏_{i≠i0} x_i^ℓ · ∏_{j>1} C(ℓ, α_j) · V_{k−1,α'}(ρ_i : i ≠ i0)`.
pub fn det_b_alpha_y_vanishing(
    spec: &UniformMatrixSpec,
    alpha: &IndexTuple,
) -> Result<Option<Scalar>, UniformError> {
    spec.check_tuple(alpha)?;
    let Some(i0) = single_zero(spec.y()) else {
        return Ok(None);
    };
    if spec
        .x()
        .iter()
        .enumerate()
        .any(|(i, x)| i + 1 != i0 && x.is_zero())
    {
        return Ok(None);
    }
    let (k, ell) = (spec.k(), spec.ell());
    if alpha.values()[0] != 0 {
        return Ok(Some(Scalar::zero()));
    }
    let lead = spec.x()[i0 - 1].pow(spec.ell_u32());
    if k == 1 {
        return Ok(Some(lead));
    }
    let tail = &alpha.values()[1..];
    let rest = spec.without_row(i0);
    let rho = ratios(&rest).expect("other x_i are nonzero");
    let value = lead
        * power_product(rest.x(), spec.ell_u32())
        * binomial_product(ell, tail)
        * gv(&rho, &sub_tuple(tail, ell));
    Ok(Some(value.with_sign_of_power(i0 + 1)))
}

/// `det(B_α)`, routed by the zero pattern of `x` and `y`: the ratio form when
/// no `x_i` vanishes, the dual form when no `y_i` vanishes, the one-row
/// reduction for a single vanishing `x_i`, and elimination otherwise.
pub fn det_b_alpha(spec: &UniformMatrixSpec, alpha: &IndexTuple) -> Result<Scalar, UniformError> {
    if let Some(v) = det_b_alpha_rho(spec, alpha)? {
        return Ok(v);
    }
    if let Some(v) = det_b_alpha_dual(spec, alpha)? {
        return Ok(v);
    }
    if let Some(v) = det_b_alpha_x_vanishing(spec, alpha)? {
        return Ok(v);
    }
    det_b_alpha_direct(spec, alpha)
}

fn expansion_term(spec: &UniformMatrixSpec, alpha: &IndexTuple) -> Scalar {
    let b = det_b_alpha(spec, alpha).expect("enumerated tuples match the spec");
    if b.is_zero() {
        return b;
    }
    gv(spec.r(), alpha) * b
}

/// `det(A) = Σ_α V_{k,α}(r) · det(B_α)` over `0 ≤ α_1 < … < α_k ≤ ℓ`.
///
/// For `k ≥ ℓ + 2` the sum is empty and the result is exactly zero.
pub fn det_expansion(spec: &UniformMatrixSpec) -> Scalar {
    det_expansion_with_jobs(spec, 1)
}

/// [`det_expansion`] with the α-terms spread over `jobs` worker threads.
///
/// Terms are summed in enumeration order, so the result does not depend on
/// `jobs`.
pub fn det_expansion_with_jobs(spec: &UniformMatrixSpec, jobs: usize) -> Scalar {
    let Ok(tuples) = enumerate_index_tuples(spec.k(), spec.ell()) else {
        return Scalar::zero();
    };
    let terms: Vec<Scalar> = if jobs <= 1 || tuples.len() < 2 {
        tuples.iter().map(|a| expansion_term(spec, a)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tuples.par_iter().map(|a| expansion_term(spec, a)).collect())
    };
    terms.iter().sum()
}

/// `∏ x_i^ℓ · Σ_α ∏ C(ℓ, α_j) · V_{k,α}(r) · V_{k,α}(ρ)`. `None` if some `x_i = 0`.
pub fn det_expansion_factored(spec: &UniformMatrixSpec) -> Option<Scalar> {
    let rho = ratios(spec)?;
    let Ok(tuples) = enumerate_index_tuples(spec.k(), spec.ell()) else {
        return Some(Scalar::zero());
    };
    let sum: Scalar = tuples
        .iter()
        .map(|a| binomial_product(spec.ell(), a.values()) * gv(spec.r(), a) * gv(&rho, a))
        .sum();
    Some(power_product(spec.x(), spec.ell_u32()) * sum)
}

/// `(−1)^{k(k−1)/2} · ∏ y_i^ℓ · Σ_α ∏ C(ℓ, α_j) · V_{k,α}(r) · V_{k,α^∁}(1/ρ)`.
/// `None` if some `y_i = 0`.
pub fn det_expansion_dual(spec: &UniformMatrixSpec) -> Option<Scalar> {
    let inv_rho = inverse_ratios(spec)?;
    let Ok(tuples) = enumerate_index_tuples(spec.k(), spec.ell()) else {
        return Some(Scalar::zero());
    };
    let k = spec.k();
    let sum: Scalar = tuples
        .iter()
        .map(|a| {
            binomial_product(spec.ell(), a.values())
                * gv(spec.r(), a)
                * gv(&inv_rho, &a.complement())
        })
        .sum();
    Some((power_product(spec.y(), spec.ell_u32()) * sum).with_sign_of_power(k * (k - 1) / 2))
}

/// Determinant of the constant-gap matrix at the limit size `k = ℓ + 1`:
/// `(−1)^{ℓ(ℓ+1)/2} · (ℓ+1)^{ℓ(ℓ+1)/2} · ∏_{j=0}^{ℓ} (j!)² · C(ℓ, j)`,
/// independent of the starting value `N`.
pub fn closed_form_limit_det(ell: usize) -> Scalar {
    let half = ell * (ell + 1) / 2;
    let base = Scalar::from_int(ell as i64 + 1).pow(half as u32);
    let product: Scalar = (0..=ell as u64)
        .map(|j| {
            let f = fact(j);
            Scalar::from_bigint(&f * &f * binom(ell as u64, j))
        })
        .product();
    (base * product).with_sign_of_power(half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_cofactor;
    use crate::uniform::{build_matrix, constant_gap_spec};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn spec(k: usize, ell: usize, x: &[i64], y: &[i64], r: &[i64]) -> UniformMatrixSpec {
        UniformMatrixSpec::new(k, ell, ints(x), ints(y), ints(r)).unwrap()
    }

    fn all_routes(s: &UniformMatrixSpec, alpha: &IndexTuple) -> Vec<Scalar> {
        [
            Some(det_b_alpha_direct(s, alpha).unwrap()),
            det_b_alpha_rho(s, alpha).unwrap(),
            det_b_alpha_dual(s, alpha).unwrap(),
            det_b_alpha_x_vanishing(s, alpha).unwrap(),
            det_b_alpha_y_vanishing(s, alpha).unwrap(),
        ]
        .into_iter()
        .flatten()
        .collect()
    }

    #[test]
    fn b_alpha_two_by_two() {
        let s = spec(2, 2, &[1, 1], &[1, 2], &[1, 2]);
        let alpha = IndexTuple::new(vec![0, 2], 2).unwrap();
        // det [[1,1],[1,4]]
        assert_eq!(det_b_alpha(&s, &alpha).unwrap(), Scalar::from_int(3));
        for v in all_routes(&s, &alpha) {
            assert_eq!(v, Scalar::from_int(3));
        }
    }

    #[test]
    fn proportional_pairs_give_zero() {
        let s = spec(3, 4, &[1, 2, 5], &[3, 6, -1], &[1, 2, 3]);
        for alpha in enumerate_index_tuples(3, 4).unwrap() {
            assert_eq!(det_b_alpha(&s, &alpha).unwrap(), Scalar::zero());
        }
        assert_eq!(det_expansion(&s), Scalar::zero());
    }

    #[test]
    fn vanishing_x_reduction_against_direct() {
        // x_1 = 0, hand-checked k = 2: B = [[0, y1^ℓ], [·, ·]]
        let s = spec(2, 3, &[0, 2], &[5, 3], &[1, 4]);
        for alpha in enumerate_index_tuples(2, 3).unwrap() {
            let routes = all_routes(&s, &alpha);
            assert!(routes.len() >= 3, "direct, dual and x-vanishing apply");
            assert!(
                routes.iter().all(|v| v == &routes[0]),
                "alpha {alpha}: {routes:?}"
            );
        }
        let zero_mid = spec(3, 3, &[4, 0, 2], &[1, 5, 3], &[1, 2, 3]);
        for alpha in enumerate_index_tuples(3, 3).unwrap() {
            let direct = det_b_alpha_direct(&zero_mid, &alpha).unwrap();
            assert_eq!(
                det_b_alpha_x_vanishing(&zero_mid, &alpha).unwrap(),
                Some(direct)
            );
        }
    }

    #[test]
    fn vanishing_y_reduction_against_direct() {
        let s = spec(3, 4, &[2, -1, 3], &[1, 0, 7], &[1, 2, 3]);
        for alpha in enumerate_index_tuples(3, 4).unwrap() {
            let direct = det_b_alpha_direct(&s, &alpha).unwrap();
            assert_eq!(
                det_b_alpha_y_vanishing(&s, &alpha).unwrap(),
                Some(direct.clone())
            );
            assert_eq!(det_b_alpha(&s, &alpha).unwrap(), direct);
        }
    }

    #[test]
    fn two_zeros_route_to_elimination() {
        let s = spec(3, 3, &[0, 0, 2], &[1, 5, 3], &[1, 2, 3]);
        let alpha = IndexTuple::new(vec![1, 2, 3], 3).unwrap();
        assert_eq!(det_b_alpha_x_vanishing(&s, &alpha).unwrap(), None);
        assert_eq!(
            det_b_alpha(&s, &alpha).unwrap(),
            det_b_alpha_direct(&s, &alpha).unwrap()
        );
    }

    #[test]
    fn wrong_tuple_is_rejected() {
        let s = spec(2, 2, &[1, 1], &[1, 2], &[1, 2]);
        let alpha = IndexTuple::new(vec![0, 2], 3).unwrap();
        assert!(matches!(
            det_b_alpha(&s, &alpha),
            Err(UniformError::TupleMismatch { .. })
        ));
    }

    #[test]
    fn expansion_matches_elimination_small() {
        for s in [
            spec(2, 1, &[1, 3], &[1, 1], &[0, 1]),
            spec(3, 2, &[1, -2, 5], &[2, 1, 1], &[0, 3, -1]),
            spec(3, 4, &[0, 2, 1], &[1, 1, 0], &[2, 3, 4]),
            spec(4, 3, &[1, 2, 3, 4], &[4, 3, 2, 1], &[1, 2, 3, 4]),
        ] {
            let oracle = det_oracle(&build_matrix(&s)).unwrap();
            assert_eq!(det_expansion(&s), oracle);
            assert_eq!(det_expansion_with_jobs(&s, 3), oracle);
            if let Some(v) = det_expansion_factored(&s) {
                assert_eq!(v, oracle);
            }
            if let Some(v) = det_expansion_dual(&s) {
                assert_eq!(v, oracle);
            }
        }
    }

    #[test]
    fn beyond_size_bound_is_zero() {
        let s = spec(4, 2, &[1, 2, 3, 4], &[1, 5, 2, 7], &[1, 3, 2, 9]);
        assert_eq!(det_expansion(&s), Scalar::zero());
        assert_eq!(det_expansion_factored(&s), Some(Scalar::zero()));
        assert_eq!(det_oracle(&build_matrix(&s)).unwrap(), Scalar::zero());
    }

    #[test]
    fn one_by_one() {
        let s = spec(1, 5, &[2], &[3], &[-1]);
        assert_eq!(det_expansion(&s), Scalar::from_int(-1).pow(5));
    }

    #[test]
    fn constant_gap_limit() {
        for n in [1, 2, 7] {
            assert_eq!(
                det_expansion(&constant_gap_spec(n, 3, 2).unwrap()),
                Scalar::from_int(-216)
            );
        }
    }

    #[test]
    fn closed_form_small() {
        assert_eq!(closed_form_limit_det(0), Scalar::one());
        assert_eq!(closed_form_limit_det(1), Scalar::from_int(-2));
        assert_eq!(closed_form_limit_det(2), Scalar::from_int(-27 * 8));
        for ell in 0..=3 {
            let m = build_matrix(&constant_gap_spec(1, ell + 1, ell).unwrap());
            assert_eq!(det_cofactor(&m).unwrap(), closed_form_limit_det(ell));
        }
    }
}
