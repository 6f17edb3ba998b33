use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::SchurError;
use crate::combinatorics::ExponentVector;
use crate::exact::Scalar;

/// Multivariate polynomial in `u_1, …, u_k` stored as exponent vector →
/// coefficient. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    arity: usize,
    terms: BTreeMap<ExponentVector, Scalar>,
}

impl SparsePolynomial {
    pub fn zero(arity: usize) -> Self {
        SparsePolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(ExponentVector::zero(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    /// The variable `u_i`, 1-based. Panics when `i` is out of range.
    pub fn variable(arity: usize, i: usize) -> Self {
        assert!(
            (1..=arity).contains(&i),
            "variable index {i} outside 1..={arity}"
        );
        let mut exp = vec![0; arity];
        exp[i - 1] = 1;
        let mut p = Self::zero(arity);
        p.add_term(ExponentVector(exp), Scalar::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter().rev()
    }

    /// Adds `c · u^exp`, dropping the term if it cancels.
    ///
    /// Panics if `exp` has the wrong length.
    pub fn add_term(&mut self, exp: ExponentVector, c: Scalar) {
        assert_eq!(
            exp.len(),
            self.arity,
            "exponent vector length must equal arity"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_arity(&self, found: usize) -> Result<(), SchurError> {
        if found == self.arity {
            Ok(())
        } else {
            Err(SchurError::ArityMismatch {
                expected: self.arity,
                found,
            })
        }
    }

    pub fn evaluate(&self, points: &[Scalar]) -> Result<Scalar, SchurError> {
        self.check_arity(points.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(exp, c)| {
                exp.as_slice()
                    .iter()
                    .zip(points)
                    .filter(|(&e, _)| e > 0)
                    .fold(c.clone(), |acc, (&e, u)| acc * u.pow(e as u32))
            })
            .sum())
    }

    pub fn try_add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial, SchurError> {
        self.check_arity(other.arity)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial, SchurError> {
        self.check_arity(other.arity)?;
        let mut out = SparsePolynomial::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea
                    .as_slice()
                    .iter()
                    .zip(eb.as_slice())
                    .map(|(a, b)| a + b)
                    .collect();
                out.add_term(ExponentVector(exp), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.arity);
        for (exp, coeff) in &self.terms {
            out.add_term(exp.clone(), coeff * c);
        }
        out
    }
}

impl fmt::Display for SparsePolynomial {
    /// e.g. `u1^2 + u1*u2 + u2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (exp, c)) in self.terms().enumerate() {
            let mono: Vec<String> = exp
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("u{}", i + 1)
                    } else {
                        format!("u{}^{e}", i + 1)
                    }
                })
                .collect();
            let negative = c.is_real() && c.re().is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if n > 0 {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let coeff = if magnitude.is_real() {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            match (mono.is_empty(), magnitude.is_one()) {
                (true, _) => f.write_str(&coeff)?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: ExponentVector,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    arity: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson {
            arity: self.arity,
            terms: self
                .terms()
                .map(|(exp, coeff)| TermJson {
                    exp: exp.clone(),
                    coeff: coeff.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolynomialJson::deserialize(deserializer)?;
        let mut p = SparsePolynomial::zero(raw.arity);
        for term in raw.terms {
            if term.exp.len() != raw.arity {
                return Err(serde::de::Error::custom(SchurError::ArityMismatch {
                    expected: raw.arity,
                    found: term.exp.len(),
                }));
            }
            p.add_term(term.exp, term.coeff);
        }
        Ok(p)
    }
}
