//! Poisson kernels on the polydisc and Poisson convolution of polynomials.
//!
//! For a polynomial `f = sum c_alpha w^alpha` on `T^m`, the convolution
//! `F_r(z) = int f(w) K(w, r z) dw` scales each coefficient by
//! `r^{|alpha|} = prod_j r_j^{alpha_j}`. That scaling is the primary path
//! ([`poisson_convolve_exact`]); [`poisson_convolve_numeric`] evaluates the
//! integral by tensor-grid quadrature and serves as its oracle.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::coeff::CoeffVector;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::norms::{norm_h2_exact_power, norm_hp_mc_power, NormEstimate};
use crate::power::{EvalPlan, PowerPoly};
use crate::sampling::SamplerConfig;

/// Largest width accepted by the quadrature convolution.
pub const DEFAULT_CONVOLVE_DIM_CAP: usize = 4;

const UNIMODULAR_TOL: f64 = 1e-12;

/// Radii `r_j` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusVector(Vec<f64>);

impl RadiusVector {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if let Some(r) = radii.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return Err(Error::Domain(format!("radius {r} is outside [0, 1)")));
        }
        Ok(Self(radii))
    }

    /// `m` copies of `r`.
    pub fn uniform(r: f64, m: usize) -> Result<Self> {
        Self::new(vec![r; m])
    }

    pub fn radii(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r^{|alpha|}`; `alpha` must fit in `len()` coordinates.
    pub fn weight(&self, alpha: &MultiIndex) -> f64 {
        alpha.support().map(|(j, e)| self.0[j].powi(e as i32)).product()
    }

    /// Componentwise product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }
}

/// `K(w, z) = (|w|^2 - |z|^2) / |w - z|^2` for `|w| = 1`, `|z| < 1`.
pub fn kernel_1d(omega: Complex64, z: Complex64) -> Result<f64> {
    if (omega.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::Domain(format!("{omega} is not on the unit circle")));
    }
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("{z} is not inside the unit disc")));
    }
    Ok((omega.norm_sqr() - z.norm_sqr()) / (omega - z).norm_sqr())
}

/// `prod_j K(w_j, r_j z_j)` for `w, z` on `T^m`.
pub fn kernel_m(omega: &[Complex64], z: &[Complex64], r: &RadiusVector) -> Result<f64> {
    if omega.len() != z.len() || z.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: omega.len(),
            got: if omega.len() != z.len() { z.len() } else { r.len() },
        });
    }
    if let Some(bad) = z.iter().find(|w| (w.norm() - 1.0).abs() > UNIMODULAR_TOL) {
        return Err(Error::Domain(format!("{bad} is not on the unit circle")));
    }
    omega
        .iter()
        .zip(z)
        .zip(r.radii())
        .try_fold(1.0, |acc, ((&w, &zj), &rj)| Ok(acc * kernel_1d(w, zj * rj)?))
}

fn check_cover(p: &PowerPoly, r: &RadiusVector) -> Result<()> {
    if r.len() < p.width() {
        return Err(Error::LengthMismatch {
            expected: p.width(),
            got: r.len(),
        });
    }
    Ok(())
}

/// Poisson convolution of a polynomial: `c_alpha -> c_alpha r^{|alpha|}`.
pub fn poisson_convolve_exact(p: &PowerPoly, r: &RadiusVector) -> Result<PowerPoly> {
    check_cover(p, r)?;
    Ok(p.map_coeffs(|a, v| v.scaled(r.weight(a).into())))
}

/// Bound on the coefficient error of [`poisson_convolve_numeric`] caused by
/// sampling the kernel on a `G`-point grid.
///
/// Along an axis with radius `r` and maximal degree `d < G/2` the sampled
/// kernel has discrete Fourier weight `r^k + (r^{G+k} + r^{G-k}) / (1 - r^G)`
/// at frequency `k <= d`, so each weight is off by at most
/// `e = 2 r^{G-d} / (1 - r^G)`. Multiplying over axes gives a relative error
/// of at most `prod (1 + e_i) - 1` on every coefficient.
pub fn aliasing_bound(p: &PowerPoly, r: &RadiusVector, grid_per_dim: usize) -> Result<f64> {
    check_cover(p, r)?;
    let g = grid_per_dim as i32;
    let factor = p
        .max_exponents()
        .iter()
        .zip(r.radii())
        .map(|(&d, &ri)| 1.0 + 2.0 * ri.powi(g - d as i32) / (1.0 - ri.powi(g)))
        .product::<f64>()
        - 1.0;
    let largest = p.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    Ok(largest * factor)
}

/// [`poisson_convolve_numeric_capped`] with [`DEFAULT_CONVOLVE_DIM_CAP`].
pub fn poisson_convolve_numeric(p: &PowerPoly, r: &RadiusVector, grid_per_dim: usize) -> Result<PowerPoly> {
    poisson_convolve_numeric_capped(p, r, grid_per_dim, DEFAULT_CONVOLVE_DIM_CAP)
}

/// Poisson convolution by quadrature on the `G^m` grid `w_k = e^{2 pi i k/G}`.
///
/// `F_r` is first computed at the grid nodes: because
/// `K(w, r z) = K(w conj(z), r)`, the quadrature sum along each axis is a
/// circular convolution with the sampled kernel, applied axis by axis. The
/// coefficients of `F_r` are then read off by discrete orthogonality (a
/// forward DFT). Only the non-negative frequencies below `G/2` are kept, and
/// values below `1e-13` of the largest are dropped as quadrature noise.
///
/// The grid must have more than `2 * max_degree + 1` nodes per axis.
pub fn poisson_convolve_numeric_capped(
    p: &PowerPoly,
    r: &RadiusVector,
    grid_per_dim: usize,
    dim_cap: usize,
) -> Result<PowerPoly> {
    check_cover(p, r)?;
    let m = p.width();
    if m > dim_cap {
        return Err(Error::DimensionCap { width: m, cap: dim_cap });
    }
    let g = grid_per_dim;
    let max_exp = p.max_exponents();
    let needed = 2 * max_exp.iter().copied().max().unwrap_or(0) as usize + 1;
    if g <= needed {
        return Err(Error::InvalidParameter(format!(
            "grid of {g} nodes per axis must exceed 2 * degree + 1 = {needed}"
        )));
    }
    let space = p.space();
    let dim = space.dim();
    let total = g
        .checked_pow(m as u32)
        .ok_or_else(|| Error::InvalidParameter("grid too large".into()))?;
    let nodes: Vec<Complex64> = (0..g)
        .map(|k| Complex64::cis(std::f64::consts::TAU * k as f64 / g as f64))
        .collect();

    // samples of f on the grid, coordinate 0 slowest, coefficient index fastest
    let plan = EvalPlan::new(p);
    let mut scratch = plan.scratch();
    let mut data = vec![Complex64::new(0.0, 0.0); total * dim];
    let mut point = vec![Complex64::new(1.0, 0.0); m];
    for flat in 0..total {
        let mut rest = flat;
        for j in (0..m).rev() {
            point[j] = nodes[rest % g];
            rest /= g;
        }
        data[flat * dim..(flat + 1) * dim].copy_from_slice(plan.eval(&point, &mut scratch));
    }

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(g);
    let ifft = planner.plan_fft_inverse(g);

    // F_r on the grid: per-axis circular convolution with (1/G) K(w_k, r_j)
    for j in 0..m {
        let mut kernel: Vec<Complex64> = nodes
            .iter()
            .map(|&w| Ok(Complex64::new(kernel_1d(w, r.radii()[j].into())?, 0.0)))
            .collect::<Result<_>>()?;
        fft.process(&mut kernel);
        // 1/G quadrature weight, 1/G from the unnormalized inverse transform
        let factor = 1.0 / (g * g) as f64;
        for_each_line(&mut data, m, g, dim, j, |line| {
            fft.process(line);
            for (x, k) in line.iter_mut().zip(&kernel) {
                *x *= k * factor;
            }
            ifft.process(line);
        });
    }

    // coefficients by discrete orthogonality
    for j in 0..m {
        let factor = 1.0 / g as f64;
        for_each_line(&mut data, m, g, dim, j, |line| {
            fft.process(line);
            line.iter_mut().for_each(|x| *x *= factor);
        });
    }

    let half = g.div_ceil(2);
    let mut found: Vec<(MultiIndex, Vec<Complex64>)> = Vec::new();
    let mut digits = vec![0usize; m];
    loop {
        let flat = digits.iter().fold(0, |acc, &k| acc * g + k);
        found.push((
            MultiIndex::new(digits.iter().map(|&k| k as u32).collect()),
            data[flat * dim..(flat + 1) * dim].to_vec(),
        ));
        let mut j = 0;
        while j < m {
            digits[j] += 1;
            if digits[j] < half {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        if j == m {
            break;
        }
    }
    let largest = found.iter().map(|(_, v)| space.norm_of(v)).fold(0.0, f64::max);
    let keep = 1e-13 * largest;
    PowerPoly::from_coeffs(
        space,
        found
            .into_iter()
            .filter(|(_, v)| largest > 0.0 && space.norm_of(v) > keep)
            .map(|(a, v)| Ok((a, CoeffVector::new(v, space)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Runs `f` on every line of `data` along `axis`, coefficient by coefficient.
fn for_each_line<F>(data: &mut [Complex64], m: usize, g: usize, dim: usize, axis: usize, mut f: F)
where
    F: FnMut(&mut [Complex64]),
{
    let inner = g.pow((m - 1 - axis) as u32) * dim;
    let outer = g.pow(axis as u32);
    let mut line = vec![Complex64::new(0.0, 0.0); g];
    for o in 0..outer {
        let base = o * g * inner;
        for i in 0..inner {
            for (k, x) in line.iter_mut().enumerate() {
                *x = data[base + k * inner + i];
            }
            f(&mut line);
            for (k, x) in line.iter().enumerate() {
                data[base + k * inner + i] = *x;
            }
        }
    }
}

/// Both sides of `||F_r||_p <= ||f||_p`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ContractionCheck {
    pub lhs: NormEstimate,
    pub rhs: NormEstimate,
}

impl ContractionCheck {
    /// `lhs <= rhs + 3 * sqrt(se_lhs^2 + se_rhs^2)`, with rounding slack for
    /// exact values.
    pub fn holds(&self) -> bool {
        let combined = self.lhs.std_error.hypot(self.rhs.std_error);
        self.lhs.value <= self.rhs.value + 3.0 * combined + 1e-12 * self.rhs.value
    }
}

/// Norms of `F_r` and `f` for the contraction inequality. Exact at `p = 2`
/// with Euclidean coefficients; otherwise both sides are estimated on the
/// same torus sample.
pub fn contraction_check(
    p: &PowerPoly,
    r: &RadiusVector,
    exponent: f64,
    cfg: &SamplerConfig,
) -> Result<ContractionCheck> {
    let conv = poisson_convolve_exact(p, r)?;
    if exponent == 2.0 && p.space().is_euclidean() {
        return Ok(ContractionCheck {
            lhs: norm_h2_exact_power(&conv)?,
            rhs: norm_h2_exact_power(p)?,
        });
    }
    Ok(ContractionCheck {
        lhs: norm_hp_mc_power(&conv, exponent, cfg)?,
        rhs: norm_hp_mc_power(p, exponent, cfg)?,
    })
}
