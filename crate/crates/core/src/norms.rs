//! Hardy-norm estimators.
//!
//! The `H_p` norm of a Dirichlet polynomial can be computed either on the
//! polytorus (the `L_p` norm of its Bohr lift) or as a mean along the
//! imaginary axis. Both routes are implemented here, together with the
//! exact value at `p = 2` and sup-norm lower bounds for `p = infinity`.
//!
//! All torus integration happens over `T^m` with `m` the width of the lift:
//! the remaining coordinates integrate out exactly.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bohr::bohr_lift;
use crate::coeff::{CoeffSpaceSpec, CoeffVector};
use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};
use crate::power::{EvalPlan, PowerPoly};
use crate::sampling::{map_torus, pairwise_sum, power_mean, SamplerConfig};

/// Largest lift width accepted by the sup-norm grid scan.
pub const DEFAULT_GRID_DIM_CAP: usize = 8;

const VERTICAL_CHUNK: usize = 256;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    ExactParseval,
    TorusMc,
    TorusGridSup,
    VerticalMean,
    VerticalSup,
}

impl Method {
    /// Deterministic methods carry no statistical error.
    pub fn is_deterministic(self) -> bool {
        !matches!(self, Method::TorusMc)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactParseval => "EXACT_PARSEVAL",
            Method::TorusMc => "TORUS_MC",
            Method::TorusGridSup => "TORUS_GRID_SUP",
            Method::VerticalMean => "VERTICAL_MEAN",
            Method::VerticalSup => "VERTICAL_SUP",
        })
    }
}

/// A computed norm with its provenance.
///
/// `horizon` is the half-length `R` of the vertical window for the
/// vertical-line methods.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub method: Method,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

impl NormEstimate {
    fn deterministic(value: f64, method: Method, samples: u64) -> Self {
        Self {
            value,
            method,
            std_error: 0.0,
            samples,
            seed: 0,
            horizon: None,
        }
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "exponent p must be finite and >= 1, got {p}"
        )))
    }
}

/// `sqrt(sum ||c||_2^2)` for a Euclidean coefficient space.
pub(crate) fn parseval<'a, I>(space: CoeffSpaceSpec, coeffs: I) -> Result<f64>
where
    I: IntoIterator<Item = &'a CoeffVector>,
{
    if !space.is_euclidean() {
        return Err(Error::NoClosedForm(format!(
            "Parseval needs a Euclidean coefficient norm, got {} on C^{}; use norm_hp_mc",
            space.norm_tag(),
            space.dim()
        )));
    }
    let squares: Vec<f64> = coeffs.into_iter().map(|v| v.norm_sqr_l2()).collect();
    Ok(pairwise_sum(&squares).sqrt())
}

/// Exact `H_2` norm by orthonormality of the monomials.
pub fn norm_h2_exact(d: &DirichletPoly) -> Result<NormEstimate> {
    let value = parseval(d.space(), d.iter().map(|(_, v)| v))?;
    Ok(NormEstimate::deterministic(value, Method::ExactParseval, 0))
}

/// [`norm_h2_exact`] for a polynomial on the torus.
pub fn norm_h2_exact_power(p: &PowerPoly) -> Result<NormEstimate> {
    let value = parseval(p.space(), p.iter().map(|(_, v)| v))?;
    Ok(NormEstimate::deterministic(value, Method::ExactParseval, 0))
}

/// Monte-Carlo estimate of the `H_p` norm over the polytorus.
pub fn norm_hp_mc(d: &DirichletPoly, p: f64, cfg: &SamplerConfig) -> Result<NormEstimate> {
    norm_hp_mc_power(&bohr_lift(d)?, p, cfg)
}

/// Monte-Carlo estimate of `(int_{T^m} ||P(w)||^p dw)^{1/p}`.
///
/// A polynomial with at most one monomial has constant modulus on the torus;
/// its norm is returned exactly.
pub fn norm_hp_mc_power(poly: &PowerPoly, p: f64, cfg: &SamplerConfig) -> Result<NormEstimate> {
    check_p(p)?;
    if let Some(exact) = single_term_norm(poly) {
        return Ok(exact);
    }
    let norms = torus_norm_samples(poly, cfg)?;
    let (value, std_error) = power_mean(&norms, p);
    Ok(NormEstimate {
        value,
        method: Method::TorusMc,
        std_error,
        samples: cfg.samples() as u64,
        seed: cfg.seed(),
        horizon: None,
    })
}

pub(crate) fn single_term_norm(poly: &PowerPoly) -> Option<NormEstimate> {
    match poly.len() {
        0 => Some(NormEstimate::deterministic(0.0, Method::ExactParseval, 0)),
        1 => {
            let (_, c) = poly.iter().next()?;
            Some(NormEstimate::deterministic(c.norm(), Method::ExactParseval, 0))
        }
        _ => None,
    }
}

/// `||P(w_i)||` at the sample points of `cfg`, in sample order.
pub(crate) fn torus_norm_samples(poly: &PowerPoly, cfg: &SamplerConfig) -> Result<Vec<f64>> {
    let plan = EvalPlan::new(poly);
    let space = poly.space();
    map_torus(
        cfg,
        plan.width(),
        || plan.scratch(),
        |s, w| space.norm_of(plan.eval(w, s)),
    )
}

/// `H_p` estimates along an increasing list of exponents, all computed from
/// one shared sample so that the sequence is monotone by Jensen's inequality.
pub fn norm_p_limit_check(d: &DirichletPoly, p_grid: &[f64], cfg: &SamplerConfig) -> Result<Vec<(f64, NormEstimate)>> {
    if p_grid.is_empty() {
        return Err(Error::InvalidParameter("p grid is empty".into()));
    }
    for &p in p_grid {
        check_p(p)?;
    }
    if p_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("p grid must be strictly increasing".into()));
    }
    let poly = bohr_lift(d)?;
    if let Some(exact) = single_term_norm(&poly) {
        return Ok(p_grid.iter().map(|&p| (p, exact.clone())).collect());
    }
    let norms = torus_norm_samples(&poly, cfg)?;
    Ok(p_grid
        .iter()
        .map(|&p| {
            let (value, std_error) = power_mean(&norms, p);
            let est = NormEstimate {
                value,
                method: Method::TorusMc,
                std_error,
                samples: cfg.samples() as u64,
                seed: cfg.seed(),
                horizon: None,
            };
            (p, est)
        })
        .collect())
}

/// Angle fractions of the first `n` points of the base-2 van der Corput
/// sequence. Prefixes are nested, and for `n = 2^k` they form the uniform
/// lattice `{j / n}`.
fn van_der_corput(n: usize) -> Vec<f64> {
    (0..n as u64)
        .map(|k| (k.reverse_bits() as f64) / 2f64.powi(64))
        .collect()
}

/// Sup-norm lower bound on `T^m` from a lattice scan. See
/// [`norm_hinf_grid_power`].
pub fn norm_hinf_grid(d: &DirichletPoly, grid_per_dim: usize) -> Result<NormEstimate> {
    norm_hinf_grid_power(&bohr_lift(d)?, grid_per_dim, DEFAULT_GRID_DIM_CAP)
}

/// Maximum of `||P||` over the product grid `G^m`, `G = grid_per_dim`, on
/// `T^m`. Each axis uses the first `G` van der Corput angles, so the grid for
/// `G` is contained in the grid for `G + 1` and the result is non-decreasing
/// in `G`. The value is a lower bound for the sup norm.
pub fn norm_hinf_grid_power(poly: &PowerPoly, grid_per_dim: usize, dim_cap: usize) -> Result<NormEstimate> {
    if grid_per_dim == 0 {
        return Err(Error::InvalidParameter("grid_per_dim must be >= 1".into()));
    }
    let m = poly.width();
    if m > dim_cap {
        return Err(Error::DimensionCap { width: m, cap: dim_cap });
    }
    let total = (grid_per_dim as u64)
        .checked_pow(m as u32)
        .ok_or_else(|| Error::InvalidParameter("grid size overflows".into()))?;
    let space = poly.space();
    if m == 0 {
        let value = poly.constant_term().norm();
        return Ok(NormEstimate::deterministic(value, Method::TorusGridSup, 1));
    }
    let circle: Vec<Complex64> = van_der_corput(grid_per_dim)
        .into_iter()
        .map(|u| Complex64::cis(std::f64::consts::TAU * u))
        .collect();
    let plan = EvalPlan::new(poly);
    let value = (0..grid_per_dim)
        .into_par_iter()
        .map(|first| {
            let mut scratch = plan.scratch();
            let mut digits = vec![0usize; m];
            digits[0] = first;
            let mut point: Vec<Complex64> = digits.iter().map(|&k| circle[k]).collect();
            let mut best = 0.0f64;
            loop {
                best = best.max(space.norm_of(plan.eval(&point, &mut scratch)));
                // odometer over coordinates 1..m
                let mut j = 1;
                while j < m {
                    digits[j] += 1;
                    if digits[j] < grid_per_dim {
                        point[j] = circle[digits[j]];
                        break;
                    }
                    digits[j] = 0;
                    point[j] = circle[0];
                    j += 1;
                }
                if j == m {
                    break;
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(NormEstimate::deterministic(value, Method::TorusGridSup, total))
}

fn check_window(horizon: f64, t_samples: usize) -> Result<()> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidParameter(format!("R must be positive, got {horizon}")));
    }
    if t_samples < 2 {
        return Err(Error::InvalidParameter("t_samples must be >= 2".into()));
    }
    Ok(())
}

/// `||D(it_k)||` at the uniform nodes `t_k = -R + 2Rk/(n-1)`, `k = 0..n`.
///
/// Nodes are processed in chunks; within a chunk `n^{-it}` advances by
/// multiplication with `n^{-ih}` and is recomputed exactly at each chunk start.
pub fn vertical_norms(d: &DirichletPoly, horizon: f64, t_samples: usize) -> Result<Vec<f64>> {
    check_window(horizon, t_samples)?;
    let space = d.space();
    let dim = space.dim();
    let span = (t_samples - 1) as f64;
    let step = 2.0 * horizon / span;
    let terms: Vec<(f64, &[Complex64])> = d.iter().map(|(n, v)| ((n as f64).ln(), v.entries())).collect();
    let chunks = t_samples.div_ceil(VERTICAL_CHUNK);
    let per_chunk: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * VERTICAL_CHUNK;
            let len = VERTICAL_CHUNK.min(t_samples - start);
            let t0 = -horizon + 2.0 * horizon * start as f64 / span;
            let mut acc = vec![Complex64::new(0.0, 0.0); len * dim];
            for &(log_n, a) in &terms {
                let mut w = Complex64::cis(-t0 * log_n);
                let rot = Complex64::cis(-step * log_n);
                for i in 0..len {
                    for (o, ak) in acc[i * dim..(i + 1) * dim].iter_mut().zip(a) {
                        *o += ak * w;
                    }
                    w *= rot;
                }
            }
            acc.chunks(dim).map(|v| space.norm_of(v)).collect()
        })
        .collect();
    Ok(per_chunk.into_iter().flatten().collect())
}

/// `((1/2R) int_{-R}^{R} ||D(it)||^p dt)^{1/p}` by the trapezoid rule on
/// `t_samples` uniform nodes.
pub fn vertical_mean(d: &DirichletPoly, p: f64, horizon: f64, t_samples: usize) -> Result<NormEstimate> {
    check_p(p)?;
    let norms = vertical_norms(d, horizon, t_samples)?;
    Ok(NormEstimate {
        value: trapezoid_power_mean(&norms, p),
        method: Method::VerticalMean,
        std_error: 0.0,
        samples: t_samples as u64,
        seed: 0,
        horizon: Some(horizon),
    })
}

fn trapezoid_power_mean(norms: &[f64], p: f64) -> f64 {
    let scale = norms.iter().fold(0.0f64, |m, &v| m.max(v));
    if scale == 0.0 {
        return 0.0;
    }
    let mut powered: Vec<f64> = norms.iter().map(|&v| (v / scale).powf(p)).collect();
    let last = powered.len() - 1;
    powered[0] *= 0.5;
    powered[last] *= 0.5;
    let mean = pairwise_sum(&powered) / last as f64;
    scale * mean.powf(1.0 / p)
}

/// Vertical means at `R`, `2R` and `4R` with the node spacing held fixed,
/// for judging convergence of the Besicovitch limit.
pub fn vertical_mean_diagnostic(
    d: &DirichletPoly,
    p: f64,
    horizon: f64,
    t_samples: usize,
) -> Result<Vec<NormEstimate>> {
    check_window(horizon, t_samples)?;
    [1usize, 2, 4]
        .into_iter()
        .map(|k| vertical_mean(d, p, horizon * k as f64, (t_samples - 1) * k + 1))
        .collect()
}

/// `max_k ||D(it_k)||` over the uniform nodes in `[-R, R]`; a lower bound
/// for the sup norm.
pub fn vertical_sup(d: &DirichletPoly, horizon: f64, t_samples: usize) -> Result<NormEstimate> {
    let norms = vertical_norms(d, horizon, t_samples)?;
    Ok(NormEstimate {
        value: norms.iter().fold(0.0, |m, &v| m.max(v)),
        method: Method::VerticalSup,
        std_error: 0.0,
        samples: t_samples as u64,
        seed: 0,
        horizon: Some(horizon),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::NormTag;

    fn scalar(pairs: &[(u64, f64)]) -> DirichletPoly {
        DirichletPoly::from_reals(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn h2_exact_examples() {
        assert_eq!(norm_h2_exact(&scalar(&[(1, 3.0), (2, 4.0)])).unwrap().value, 5.0);
        let s = CoeffSpaceSpec::new(2, NormTag::L2).unwrap();
        let v = CoeffVector::new(vec![1.0.into(), 1.0.into()], s).unwrap();
        let d = DirichletPoly::from_coeffs(s, [(2, v)]).unwrap();
        assert!((norm_h2_exact(&d).unwrap().value - 2f64.sqrt()).abs() < 1e-15);
        let empty = DirichletPoly::new(CoeffSpaceSpec::scalar());
        let e = norm_h2_exact(&empty).unwrap();
        assert_eq!((e.value, e.std_error, e.method), (0.0, 0.0, Method::ExactParseval));
    }

    #[test]
    fn h2_exact_rejects_non_euclidean() {
        let s = CoeffSpaceSpec::new(2, NormTag::Linf).unwrap();
        let d = DirichletPoly::new(s);
        let err = norm_h2_exact(&d).unwrap_err();
        assert!(matches!(&err, Error::NoClosedForm(msg) if msg.contains("norm_hp_mc")));
    }

    #[test]
    fn mc_rejects_bad_p() {
        let cfg = SamplerConfig::default();
        assert!(norm_hp_mc(&scalar(&[(1, 1.0)]), 0.5, &cfg).is_err());
        assert!(norm_hp_mc(&scalar(&[(1, 1.0)]), f64::INFINITY, &cfg).is_err());
    }

    #[test]
    fn constant_and_monomial_are_exact() {
        let cfg = SamplerConfig::default();
        let c = norm_hp_mc(&scalar(&[(1, -2.5)]), 3.0, &cfg).unwrap();
        assert_eq!((c.value, c.std_error), (2.5, 0.0));
        let m = norm_hp_mc(&scalar(&[(2, 1.0)]), 7.0, &cfg).unwrap();
        assert_eq!((m.value, m.std_error), (1.0, 0.0));
    }

    #[test]
    fn mc_estimate_p4() {
        // (1/2pi) int (2 + 2 cos t)^2 dt = 6
        let cfg = SamplerConfig::iid(20_000, 11).unwrap();
        let e = norm_hp_mc(&scalar(&[(1, 1.0), (2, 1.0)]), 4.0, &cfg).unwrap();
        assert_eq!(e.method, Method::TorusMc);
        assert!(e.std_error > 0.0);
        assert!((e.value - 6f64.powf(0.25)).abs() <= 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn mc_matches_parseval_at_p2() {
        let cfg = SamplerConfig::iid(20_000, 5).unwrap();
        let e = norm_hp_mc(&scalar(&[(1, 3.0), (2, 4.0)]), 2.0, &cfg).unwrap();
        assert!((e.value - 5.0).abs() <= 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn grid_sup_examples() {
        assert_eq!(norm_hinf_grid(&scalar(&[(1, 1.0), (2, 1.0)]), 4).unwrap().value, 2.0);
        assert_eq!(norm_hinf_grid(&scalar(&[(2, 1.0)]), 3).unwrap().value, 1.0);
        let v = norm_hinf_grid(&scalar(&[(1, 1.0), (2, -1.0)]), 2).unwrap().value;
        assert!((v - 2.0).abs() < 1e-15);
        let e = norm_hinf_grid(&scalar(&[(1, 1.0), (3, 1.0)]), 5).unwrap();
        assert_eq!((e.samples, e.std_error), (25, 0.0));
    }

    #[test]
    fn grid_sup_is_monotone_in_resolution() {
        let d = DirichletPoly::from_scalars([
            (1, Complex64::new(0.3, 0.1)),
            (2, Complex64::new(-0.7, 0.2)),
            (3, Complex64::new(0.1, 0.9)),
            (6, Complex64::new(0.5, -0.5)),
        ])
        .unwrap();
        let mut last = 0.0;
        for g in 1..20 {
            let v = norm_hinf_grid(&d, g).unwrap().value;
            assert!(v >= last, "g={g}: {v} < {last}");
            last = v;
        }
    }

    #[test]
    fn grid_sup_dimension_cap() {
        let d = scalar(&[(23, 1.0), (1, 1.0)]);
        assert!(matches!(
            norm_hinf_grid(&d, 2),
            Err(Error::DimensionCap { width: 9, cap: 8 })
        ));
    }

    #[test]
    fn van_der_corput_prefix_is_lattice() {
        let mut v = van_der_corput(8);
        v.sort_by(f64::total_cmp);
        for (k, u) in v.iter().enumerate() {
            assert_eq!(*u, k as f64 / 8.0);
        }
    }

    #[test]
    fn vertical_examples() {
        let mono = scalar(&[(2, 1.0)]);
        for p in [1.0, 2.0, 5.0] {
            let e = vertical_mean(&mono, p, 37.0, 1001).unwrap();
            assert!((e.value - 1.0).abs() < 1e-12);
            assert_eq!(e.horizon, Some(37.0));
        }
        let d = scalar(&[(1, 1.0), (2, 1.0)]);
        let e = vertical_mean(&d, 2.0, 1e4, 200_001).unwrap();
        assert!((e.value - 2f64.sqrt()).abs() < 1e-3, "{e:?}");
        let s = vertical_sup(&d, 10.0, 201).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
        assert!((vertical_sup(&mono, 10.0, 11).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn vertical_matches_direct_evaluation() {
        let d = DirichletPoly::from_scalars([
            (1, Complex64::new(0.3, 0.1)),
            (5, Complex64::new(-0.7, 0.2)),
            (12, Complex64::new(0.1, 0.9)),
        ])
        .unwrap();
        let n = 1001;
        let norms = vertical_norms(&d, 500.0, n).unwrap();
        for k in [0, 1, 255, 256, 257, 700, 1000] {
            let t = -500.0 + 1000.0 * k as f64 / (n - 1) as f64;
            let direct = d.eval_vertical(t)[0].norm();
            assert!((norms[k] - direct).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn diagnostic_returns_three_horizons() {
        let d = scalar(&[(1, 1.0), (2, 1.0), (3, 1.0)]);
        let rows = vertical_mean_diagnostic(&d, 2.0, 100.0, 2001).unwrap();
        let hs: Vec<_> = rows.iter().map(|r| r.horizon.unwrap()).collect();
        assert_eq!(hs, vec![100.0, 200.0, 400.0]);
        assert_eq!(rows[2].samples, 8001);
        let err = |e: &NormEstimate| (e.value - 3f64.sqrt()).abs();
        assert!(err(&rows[2]) < 0.02);
    }

    #[test]
    fn estimate_json_shape() {
        let e = norm_h2_exact(&scalar(&[(1, 3.0), (2, 4.0)])).unwrap();
        let j = serde_json::to_value(&e).unwrap();
        assert_eq!(j["value"], 5.0);
        assert_eq!(j["method"], "EXACT_PARSEVAL");
        assert!(j.get("R").is_none());
        let back: NormEstimate = serde_json::from_value(j).unwrap();
        assert_eq!(back, e);
    }
}
