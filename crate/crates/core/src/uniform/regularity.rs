use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{build_matrix, UniformMatrixSpec};
use crate::exact::Scalar;
use crate::linalg::det_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegularityStatus {
    /// `k ≥ ℓ + 2`: the rows are `k` polynomials of degree `≤ ℓ` evaluated at `r`.
    SingularBySize,
    /// Positive ratios, distinct cross products and positive `r`.
    RegularByPositivity,
    RegularByDeterminant,
    SingularByDeterminant,
}

impl RegularityStatus {
    pub fn is_regular(self) -> bool {
        matches!(self, Self::RegularByPositivity | Self::RegularByDeterminant)
    }
}

/// Outcome of [`classify_regularity`]. `witness` is the exact determinant and
/// is present exactly for the `*ByDeterminant` statuses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub status: RegularityStatus,
    pub witness: Option<Scalar>,
    pub method: String,
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        self.status.is_regular()
    }
}

/// Checks the positivity criterion over real data for `k ≤ ℓ + 1`:
///
/// * every `x_i`, `y_i`, `r_i` is real and every `r_i > 0`;
/// * `y_i / x_i > 0` for all rows, except that at most one row may have
///   exactly one of `x_i`, `y_i` equal to zero;
/// * `x_i y_j − x_j y_i ≠ 0` for all `i ≠ j`.
///
/// Under these conditions every term of the expansion has the same sign, so
/// the determinant cannot vanish.
pub fn positivity_hypotheses_hold(spec: &UniformMatrixSpec) -> bool {
    let (x, y, r) = (spec.x(), spec.y(), spec.r());
    let real = |v: &[Scalar]| v.iter().all(Scalar::is_real);
    if !(real(x) && real(y) && real(r)) {
        return false;
    }
    if !r.iter().all(Scalar::is_positive_real) {
        return false;
    }
    let mut vanishing_rows = 0;
    for (xi, yi) in x.iter().zip(y) {
        match (xi.is_zero(), yi.is_zero()) {
            (true, true) => return false,
            (true, false) | (false, true) => vanishing_rows += 1,
            (false, false) => {
                if !(xi.re() * yi.re()).is_positive() {
                    return false;
                }
            }
        }
    }
    if vanishing_rows > 1 {
        return false;
    }
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| &x[i] * &y[j] != &x[j] * &y[i]))
}

/// Decides whether `A(k; x, y, r, ℓ)` is regular.
///
/// `k ≥ ℓ + 2` is singular without computing anything; when the positivity
/// criterion holds the matrix is regular; otherwise the exact determinant
/// decides and is returned as the witness.
pub fn classify_regularity(spec: &UniformMatrixSpec) -> RegularityVerdict {
    if spec.k() >= spec.ell() + 2 {
        return RegularityVerdict {
            status: RegularityStatus::SingularBySize,
            witness: None,
            method: "size bound: k >= ell + 2".to_string(),
        };
    }
    if positivity_hypotheses_hold(spec) {
        let relaxed = spec.x().iter().chain(spec.y()).any(Scalar::is_zero);
        let method = if relaxed {
            "positivity: one row with a vanishing x_i or y_i, remaining ratios y_i/x_i > 0, distinct, r > 0"
        } else {
            "positivity: ratios y_i/x_i > 0, pairwise distinct, r > 0"
        };
        return RegularityVerdict {
            status: RegularityStatus::RegularByPositivity,
            witness: None,
            method: method.to_string(),
        };
    }
    let det = det_oracle(&build_matrix(spec)).expect("uniform matrices are square");
    let status = if det.is_zero() {
        RegularityStatus::SingularByDeterminant
    } else {
        RegularityStatus::RegularByDeterminant
    };
    RegularityVerdict {
        status,
        witness: Some(det),
        method: "exact determinant: fraction-free elimination".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniform::constant_gap_spec;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn spec(k: usize, ell: usize, x: &[i64], y: &[i64], r: &[i64]) -> UniformMatrixSpec {
        UniformMatrixSpec::new(k, ell, ints(x), ints(y), ints(r)).unwrap()
    }

    fn oracle(s: &UniformMatrixSpec) -> Scalar {
        det_oracle(&build_matrix(s)).unwrap()
    }

    #[test]
    fn size_bound() {
        let s = spec(4, 2, &[1, 2, 3, 4], &[5, -1, 2, 0], &[1, 2, 3, 4]);
        let v = classify_regularity(&s);
        assert_eq!(v.status, RegularityStatus::SingularBySize);
        assert_eq!(v.witness, None);
        assert!(oracle(&s).is_zero());
    }

    #[test]
    fn constant_gap_is_regular_by_positivity() {
        let s = constant_gap_spec(2, 3, 2).unwrap();
        let v = classify_regularity(&s);
        assert_eq!(v.status, RegularityStatus::RegularByPositivity);
        assert!(!oracle(&s).is_zero());
    }

    #[test]
    fn constant_gap_from_one_uses_relaxation() {
        // N = 1 gives x_1 = 0
        let s = constant_gap_spec(1, 3, 2).unwrap();
        assert!(s.x()[0].is_zero());
        let v = classify_regularity(&s);
        assert_eq!(v.status, RegularityStatus::RegularByPositivity);
        assert!(v.method.contains("vanishing"));
        assert_eq!(oracle(&s), Scalar::from_int(-216));
    }

    #[test]
    fn proportional_rows_are_singular() {
        let s = spec(2, 3, &[1, 2], &[2, 4], &[1, 2]);
        let v = classify_regularity(&s);
        assert_eq!(v.status, RegularityStatus::SingularByDeterminant);
        assert_eq!(v.witness, Some(Scalar::zero()));
    }

    #[test]
    fn negative_data_falls_back_to_determinant() {
        let s = spec(2, 2, &[1, -2], &[1, 3], &[1, 2]);
        assert!(!positivity_hypotheses_hold(&s));
        let v = classify_regularity(&s);
        assert_eq!(v.witness, Some(oracle(&s)));
        assert_eq!(v.status.is_regular(), !oracle(&s).is_zero());
    }

    #[test]
    fn hypotheses_edge_cases() {
        assert!(!positivity_hypotheses_hold(&spec(
            2,
            2,
            &[0, 0],
            &[1, 2],
            &[1, 2]
        )));
        assert!(!positivity_hypotheses_hold(&spec(
            2,
            2,
            &[0, 1],
            &[0, 2],
            &[1, 2]
        )));
        assert!(!positivity_hypotheses_hold(&spec(
            2,
            2,
            &[1, 2],
            &[1, 2],
            &[1, 2]
        )));
        assert!(!positivity_hypotheses_hold(&spec(
            2,
            2,
            &[1, 2],
            &[1, 3],
            &[-1, 2]
        )));
        assert!(positivity_hypotheses_hold(&spec(
            2,
            2,
            &[-1, -2],
            &[-1, -3],
            &[1, 2]
        )));
        let complex =
            UniformMatrixSpec::new(1, 1, vec![Scalar::i()], ints(&[1]), ints(&[1])).unwrap();
        assert!(!positivity_hypotheses_hold(&complex));
    }

    #[test]
    fn verdict_json() {
        let v = classify_regularity(&spec(2, 3, &[1, 2], &[2, 4], &[1, 2]));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"status":"SingularByDeterminant","witness":"0","method":"exact determinant: fraction-free elimination"}"#
        );
        let size = classify_regularity(&spec(3, 1, &[1, 2, 3], &[1, 1, 1], &[1, 2, 3]));
        assert!(serde_json::to_string(&size)
            .unwrap()
            .contains(r#""witness":null"#));
    }
}
