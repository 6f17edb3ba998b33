//! Seeded generation of random exact data for property checks and benchmarks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::Scalar;
use crate::uniform::UniformMatrixSpec;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// What kind of sequences a [`SpecSampler`] draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    /// Arbitrary rationals (zeros and negatives included).
    Rational,
    /// Gaussian rationals with independent random parts.
    Gaussian,
    /// Positive rationals with pairwise distinct ratios `y_i/x_i`, positive `r`.
    Positive,
}

#[derive(Debug, Clone)]
pub struct SpecSampler {
    pub kind: SampleKind,
    /// Numerators are drawn from `-max_numer..=max_numer` (or `1..=max_numer`).
    pub max_numer: i64,
    pub max_denom: i64,
    /// Use `r = (1, …, k)` instead of random distinct values.
    pub consecutive_r: bool,
}

impl SpecSampler {
    pub fn new(kind: SampleKind) -> Self {
        SpecSampler {
            kind,
            max_numer: 9,
            max_denom: 5,
            consecutive_r: false,
        }
    }

    pub fn with_consecutive_r(mut self, yes: bool) -> Self {
        self.consecutive_r = yes;
        self
    }

    fn scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind {
            SampleKind::Rational => random_rational(rng, self.max_numer, self.max_denom),
            SampleKind::Positive => random_positive_rational(rng, self.max_numer, self.max_denom),
            SampleKind::Gaussian => Scalar::new(
                random_rational(rng, self.max_numer, self.max_denom)
                    .re()
                    .clone(),
                random_rational(rng, self.max_numer, self.max_denom)
                    .re()
                    .clone(),
            ),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, k: usize, ell: usize) -> UniformMatrixSpec {
        let (x, y) = loop {
            let x: Vec<Scalar> = (0..k).map(|_| self.scalar(rng)).collect();
            let y: Vec<Scalar> = (0..k).map(|_| self.scalar(rng)).collect();
            if self.kind != SampleKind::Positive || distinct_cross_products(&x, &y) {
                break (x, y);
            }
        };
        let r = if self.consecutive_r {
            (1..=k as i64).map(Scalar::from_int).collect()
        } else {
            distinct(rng, k, |rng| self.scalar(rng))
        };
        UniformMatrixSpec::new(k, ell, x, y, r).expect("sampled spec is valid")
    }
}

fn distinct_cross_products(x: &[Scalar], y: &[Scalar]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| &x[i] * &y[j] != &x[j] * &y[i]))
}

/// `n` pairwise distinct draws from `draw`.
pub fn distinct<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    mut draw: impl FnMut(&mut R) -> Scalar,
) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let v = draw(rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_numer: i64, max_denom: i64) -> Scalar {
    let n = rng.gen_range(-max_numer..=max_numer);
    let d = rng.gen_range(1..=max_denom.max(1));
    Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn random_positive_rational<R: Rng + ?Sized>(
    rng: &mut R,
    max_numer: i64,
    max_denom: i64,
) -> Scalar {
    let n = rng.gen_range(1..=max_numer.max(1));
    let d = rng.gen_range(1..=max_denom.max(1));
    Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniform::positivity_hypotheses_hold;

    #[test]
    fn same_seed_same_spec() {
        let sampler = SpecSampler::new(SampleKind::Gaussian);
        let a = sampler.sample(&mut seeded_rng(7), 4, 3);
        let b = sampler.sample(&mut seeded_rng(7), 4, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn positive_samples_meet_hypotheses() {
        let sampler = SpecSampler::new(SampleKind::Positive);
        let mut rng = seeded_rng(1);
        for k in 1..=5 {
            for _ in 0..20 {
                assert!(positivity_hypotheses_hold(&sampler.sample(&mut rng, k, 4)));
            }
        }
    }

    #[test]
    fn consecutive_r() {
        let spec = SpecSampler::new(SampleKind::Rational)
            .with_consecutive_r(true)
            .sample(&mut seeded_rng(3), 3, 1);
        assert!(spec.has_consecutive_r());
    }
}
