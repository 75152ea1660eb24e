//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dirichlet_hardy::{CoeffSpaceSpec, CoeffVector, DirichletPoly, MultiIndex, NormTag, PowerPoly};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn vector(rng: &mut ChaCha8Rng, space: CoeffSpaceSpec) -> CoeffVector {
    CoeffVector::new((0..space.dim()).map(|_| complex(rng)).collect(), space).unwrap()
}

pub fn random_space(rng: &mut ChaCha8Rng, max_dim: usize) -> CoeffSpaceSpec {
    let norm = [NormTag::L1, NormTag::L2, NormTag::Linf][rng.gen_range(0..3)];
    CoeffSpaceSpec::new(rng.gen_range(1..=max_dim), norm).unwrap()
}

/// Up to `terms` coefficients at random indices in `1..=n_max`.
pub fn random_dirichlet(rng: &mut ChaCha8Rng, n_max: u64, space: CoeffSpaceSpec, terms: usize) -> DirichletPoly {
    let mut coeffs = BTreeMap::new();
    for _ in 0..terms {
        coeffs.insert(rng.gen_range(1..=n_max), vector(rng, space));
    }
    DirichletPoly::from_coeffs(space, coeffs).unwrap()
}

/// All indices `1..=n_max` with random scalar coefficients.
pub fn dense_scalar(rng: &mut ChaCha8Rng, n_max: u64) -> DirichletPoly {
    DirichletPoly::from_scalars((1..=n_max).map(|n| (n, complex(rng)))).unwrap()
}

pub fn random_index(rng: &mut ChaCha8Rng, width: usize, max_exp: u32) -> MultiIndex {
    MultiIndex::new((0..width).map(|_| rng.gen_range(0..=max_exp)).collect())
}

pub fn random_power(
    rng: &mut ChaCha8Rng,
    width: usize,
    max_exp: u32,
    space: CoeffSpaceSpec,
    terms: usize,
    constant: bool,
) -> PowerPoly {
    let mut p = PowerPoly::new(space);
    for _ in 0..terms {
        let a = random_index(rng, width, max_exp);
        if constant || !a.is_zero() {
            p.insert(a, vector(rng, space)).unwrap();
        }
    }
    p
}

/// A point of the open polydisc with every `|z_j| <= r_max`.
pub fn disc_point(rng: &mut ChaCha8Rng, m: usize, r_max: f64) -> Vec<Complex64> {
    (0..m)
        .map(|_| {
            Complex64::from_polar(
                r_max * rng.gen::<f64>().sqrt(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}

/// Dirichlet convolution of two scalar polynomials.
pub fn dirichlet_square(d: &DirichletPoly) -> DirichletPoly {
    let mut out: BTreeMap<u64, Complex64> = BTreeMap::new();
    for (n, a) in d.iter() {
        for (m, b) in d.iter() {
            *out.entry(n * m).or_default() += a.entries()[0] * b.entries()[0];
        }
    }
    DirichletPoly::from_scalars(out).unwrap()
}

/// `||D||_{H_4}` for scalar `D`, from `||D||_4^4 = ||D^2||_2^2`.
pub fn h4_exact(d: &DirichletPoly) -> f64 {
    let sq = dirichlet_square(d);
    sq.iter()
        .map(|(_, v)| v.entries()[0].norm_sqr())
        .sum::<f64>()
        .powf(0.25)
}

/// `||D||_{H_2}` summed directly.
pub fn h2_direct(d: &DirichletPoly) -> f64 {
    d.iter()
        .map(|(_, v)| v.entries().iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum::<f64>()
        .sqrt()
}

/// Trial-division factorization into `(prime, exponent)` pairs.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `||1 + z||_{L_p(T)}` for even `p = 2k` from `int |1 + w|^{2k} = C(2k, k)`.
pub fn one_plus_z_norm(p: u32) -> f64 {
    assert!(p % 2 == 0);
    let k = (p / 2) as u64;
    let mut c = 1.0f64;
    for j in 0..k {
        c = c * (2 * k - j) as f64 / (j + 1) as f64;
    }
    c.powf(1.0 / p as f64)
}
