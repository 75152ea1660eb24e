//! Seeded, block-parallel sampling of the polytorus.
//!
//! Samples are drawn in fixed blocks of [`BLOCK`] points; block `b` uses the
//! ChaCha stream `b` of the configured seed. Results are gathered in sample
//! order and reduced with [`pairwise_sum`], so an estimate depends only on
//! `(inputs, seed, scheme, samples)` and never on the thread count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve;

pub const BLOCK: usize = 1024;

/// Half-width of the interval `t` is drawn from under [`Scheme::KroneckerQmc`].
pub const KRONECKER_HORIZON: f64 = 1.0e6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scheme {
    /// IID Haar points `(e^{i theta_j})_j`.
    IidUniform,
    /// Points on the Kronecker flow `t -> (p_j^{-it})_j` with IID uniform
    /// `t` in `[-KRONECKER_HORIZON, KRONECKER_HORIZON]`.
    KroneckerQmc,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::IidUniform => "IID_UNIFORM",
            Scheme::KroneckerQmc => "KRONECKER_QMC",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "iid" | "iid_uniform" => Ok(Scheme::IidUniform),
            "kronecker" | "kronecker_qmc" => Ok(Scheme::KroneckerQmc),
            other => Err(Error::Parse(format!("unknown sampling scheme {other:?}"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    samples: usize,
    seed: u64,
    scheme: Scheme,
}

impl SamplerConfig {
    pub fn new(samples: usize, seed: u64, scheme: Scheme) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParameter("sample count must be >= 1".into()));
        }
        Ok(Self { samples, seed, scheme })
    }

    pub fn iid(samples: usize, seed: u64) -> Result<Self> {
        Self::new(samples, seed, Scheme::IidUniform)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
            scheme: Scheme::IidUniform,
        }
    }
}

/// Applies `f` to `cfg.samples` points of `T^width`, returning the results in
/// sample order. `init` builds per-block scratch state.
pub(crate) fn map_torus<T, S, I, F>(cfg: &SamplerConfig, width: usize, init: I, f: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &[Complex64]) -> T + Sync,
{
    let logs: Vec<f64> = match cfg.scheme {
        Scheme::IidUniform => Vec::new(),
        Scheme::KroneckerQmc => sieve::first_primes(width)?
            .into_iter()
            .map(|p| (p as f64).ln())
            .collect(),
    };
    let blocks = cfg.samples.div_ceil(BLOCK);
    let per_block: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b as u64);
            let count = BLOCK.min(cfg.samples - b * BLOCK);
            let mut state = init();
            let mut point = vec![Complex64::new(1.0, 0.0); width];
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                match cfg.scheme {
                    Scheme::IidUniform => {
                        for w in point.iter_mut() {
                            let theta = std::f64::consts::TAU * rng.gen::<f64>();
                            *w = Complex64::cis(theta);
                        }
                    }
                    Scheme::KroneckerQmc => {
                        let t = KRONECKER_HORIZON * (2.0 * rng.gen::<f64>() - 1.0);
                        for (w, l) in point.iter_mut().zip(&logs) {
                            *w = Complex64::cis(-t * l);
                        }
                    }
                }
                out.push(f(&mut state, &point));
            }
            out
        })
        .collect();
    Ok(per_block.into_iter().flatten().collect())
}

/// Sum by recursive halving; the association order depends only on the length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// `(mean(v^p))^{1/p}` of non-negative samples together with its standard
/// error, propagated from the standard error of the mean of `v^p` by the
/// delta method: `se(value) = se(mean) * value^{1-p} / p`.
///
/// Values are scaled by their maximum before exponentiation so large `p`
/// cannot overflow.
pub fn power_mean(values: &[f64], p: f64) -> (f64, f64) {
    let n = values.len();
    let scale = values.iter().fold(0.0f64, |m, &v| m.max(v));
    if n == 0 || scale == 0.0 {
        return (0.0, 0.0);
    }
    let powered: Vec<f64> = values.iter().map(|&v| (v / scale).powf(p)).collect();
    let mean = pairwise_sum(&powered) / n as f64;
    let value = scale * mean.powf(1.0 / p);
    if n < 2 {
        return (value, value);
    }
    let dev: Vec<f64> = powered.iter().map(|&w| (w - mean) * (w - mean)).collect();
    let var = pairwise_sum(&dev) / (n - 1) as f64;
    let se_mean = (var / n as f64).sqrt();
    let se = scale * se_mean * mean.powf(1.0 / p - 1.0) / p;
    (value, se)
}
