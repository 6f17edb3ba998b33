//! Exact arithmetic over the Gaussian rationals ℚ(i).
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; the
//! [`Scalar`] type layers the imaginary unit on top and is the single field
//! every matrix entry, point and coefficient in this crate lives in.

mod scalar;

pub use scalar::{ParseScalarError, Scalar};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type BigInteger = BigInt;

/// Always-reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{what} is undefined for negative argument {value}")]
    NegativeArgument { what: &'static str, value: i64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInteger, ExactError> {
    if n < 0 {
        return Err(ExactError::NegativeArgument {
            what: "binomial",
            value: n,
        });
    }
    if k < 0 || k > n {
        return Ok(BigInteger::zero());
    }
    Ok(binom(n as u64, k as u64))
}

/// Factorial `n!`.
pub fn factorial(n: i64) -> Result<BigInteger, ExactError> {
    if n < 0 {
        return Err(ExactError::NegativeArgument {
            what: "factorial",
            value: n,
        });
    }
    Ok(fact(n as u64))
}

/// Infallible `C(n, k)` for unsigned arguments.
pub(crate) fn binom(n: u64, k: u64) -> BigInteger {
    if k > n {
        return BigInteger::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInteger::one();
    // acc = C(n - k + i, i) after step i, so every division is exact
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub(crate) fn fact(n: u64) -> BigInteger {
    (2..=n).fold(BigInteger::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal_row(n: usize) -> Vec<BigInteger> {
        let mut row = vec![BigInteger::one()];
        for _ in 0..n {
            let mut next = vec![BigInteger::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(2, 1).unwrap(), BigInteger::from(2));
        assert_eq!(binomial(5, 7).unwrap(), BigInteger::zero());
        assert_eq!(binomial(5, -1).unwrap(), BigInteger::zero());
        assert_eq!(binomial(0, 0).unwrap(), BigInteger::one());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let row = pascal_row(10);
        assert_eq!(row[5], BigInteger::from(252));
        for n in 0..30usize {
            let row = pascal_row(n);
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(
                    &binomial(n as i64, k as i64).unwrap(),
                    expected,
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_rejects_negative_n() {
        assert!(matches!(
            binomial(-1, 0),
            Err(ExactError::NegativeArgument { .. })
        ));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), BigInteger::one());
        assert_eq!(factorial(1).unwrap(), BigInteger::one());
        let mut oracle = 1u64;
        for i in 1..=6u64 {
            oracle *= i;
        }
        assert_eq!(oracle, 720);
        assert_eq!(factorial(6).unwrap(), BigInteger::from(oracle));
        assert_eq!(
            factorial(25).unwrap().to_string(),
            "15511210043330985984000000"
        );
        assert!(factorial(-3).is_err());
    }

    #[test]
    fn pascal_recurrence() {
        for n in 2..40i64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn alternating_binomial_sum_vanishes() {
        for l in 1..30i64 {
            let sum: BigInteger = (0..=l)
                .map(|v| {
                    let c = binomial(l, v).unwrap();
                    if v % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum();
            assert!(sum.is_zero(), "ell = {l}");
        }
    }
}
