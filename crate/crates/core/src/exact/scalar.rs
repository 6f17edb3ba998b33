use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ExactError;

/// An element of ℚ(i): `re + im·i` with both parts always-reduced rationals.
///
/// A rational embeds with `im = 0`. Equality and hashing are structural,
/// which is sound because both components are kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{input}`: {reason}")]
pub struct ParseScalarError {
    input: String,
    reason: &'static str,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self, ExactError> {
        if denom == 0 {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::from_rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The rational value if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.re)
    }

    /// True for real values strictly greater than zero.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Self::from_rational(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if rhs.is_real() {
            let d = &rhs.re;
            return Ok(Scalar::new(&self.re / d, &self.im / d));
        }
        Ok(self * &rhs.inv()?)
    }

    /// Repeated squaring; `z^0 = 1` including `0^0`.
    pub fn pow(&self, exp: u32) -> Self {
        if self.is_real() {
            return Self::from_rational(num_traits::Pow::pow(&self.re, exp));
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by `(-1)^n`.
    pub fn with_sign_of_power(self, n: usize) -> Self {
        if n.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Real values print in the `p/q` grammar; others as `re+im*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let im = &self.im;
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rational(im));
        }
        let op = if im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*i",
            fmt_rational(&self.re),
            op,
            fmt_rational(&im.abs())
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_rational(input: &str) -> Result<BigRational, ParseScalarError> {
    let err = |reason| ParseScalarError {
        input: input.to_string(),
        reason,
    };
    let s = input.trim();
    match s.split_once('/') {
        None => parse_int(s)
            .map(BigRational::from_integer)
            .ok_or_else(|| err("expected an integer or p/q")),
        Some((n, d)) => {
            let numer = parse_int(n).ok_or_else(|| err("bad numerator"))?;
            if d.is_empty() || d.starts_with('0') || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator must match [1-9][0-9]*"));
            }
            let denom: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            Ok(BigRational::new(numer, denom))
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses the real grammar `-?[0-9]+(/[1-9][0-9]*)?`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Scalar::from_rational)
    }
}

impl Scalar {
    /// Parses the [`Display`](fmt::Display) form: the real grammar, `b*i`,
    /// or `a+b*i` / `a-b*i`.
    pub fn parse_display(input: &str) -> Result<Scalar, ParseScalarError> {
        let s = input.trim();
        let Some(body) = s.strip_suffix("*i") else {
            return s.parse();
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(p, _)| p)
            .last();
        let (re, im) = match split {
            None => (BigRational::zero(), parse_rational(body)?),
            Some(p) => {
                let re = parse_rational(&body[..p])?;
                let tail = &body[p + 1..];
                if tail.starts_with('-') || tail.starts_with('+') {
                    return Err(ParseScalarError {
                        input: input.to_string(),
                        reason: "doubled sign in imaginary part",
                    });
                }
                let im = parse_rational(tail)?;
                (re, if &body[p..=p] == "-" { -im } else { im })
            }
        };
        Ok(Scalar::new(re, im))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_real() {
            serializer.serialize_str(&fmt_rational(&self.re))
        } else {
            let mut map = serializer.serialize_map(Some(2))?;
            map.serialize_entry("re", &fmt_rational(&self.re))?;
            map.serialize_entry("im", &fmt_rational(&self.im))?;
            map.end()
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Complex { re: String, im: String },
        }
        match Raw::deserialize(deserializer)
            .map_err(|_| de::Error::custom("scalar must be a \"p/q\" string or {\"re\", \"im\"}"))?
        {
            Raw::Text(s) => s.parse().map_err(de::Error::custom),
            Raw::Complex { re, im } => Ok(Scalar::new(
                parse_rational(&re).map_err(de::Error::custom)?,
                parse_rational(&im).map_err(de::Error::custom)?,
            )),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_real() && rhs.is_real() {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |acc, x| &acc * x)
    }
}
