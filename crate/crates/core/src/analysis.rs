//! Identities and inequalities checked numerically: the Cayley transform and
//! the Stolz-region ratio, Schwarz's lemma and the pointwise-evaluation bound
//! on the polydisc, linear polynomials with square-summable coefficients,
//! and the finite-variable restriction criterion for membership in the
//! infinite-variable Hardy space.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bohr::{factorize, index_of};
use crate::coeff::{CoeffSpaceSpec, CoeffVector};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::norms::{self, NormEstimate, DEFAULT_GRID_DIM_CAP};
use crate::power::PowerPoly;
use crate::sampling::SamplerConfig;

/// `phi(z) = (1 + z) / (1 - z)`, the disc onto the right half-plane.
pub fn cayley(z: Complex64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("cayley needs |z| < 1, got {z}")));
    }
    Ok((1.0 + z) / (1.0 - z))
}

/// `phi^{-1}(s) = (s - 1) / (s + 1)` for `Re s > 0`.
pub fn cayley_inv(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!("cayley_inv needs Re s > 0, got {s}")));
    }
    Ok((s - 1.0) / (s + 1.0))
}

/// `phi^{-1}(it)`, the boundary point on the unit circle.
pub fn cayley_inv_boundary(t: f64) -> Complex64 {
    let s = Complex64::new(0.0, t);
    (s - 1.0) / (s + 1.0)
}

/// Both sides of
///
/// ```text
/// |phi^{-1}(eps + it) - phi^{-1}(it)| / (1 - |phi^{-1}(eps + it)|)
///     = (sqrt((1 + eps)^2 + t^2) + sqrt((1 - eps)^2 + t^2)) / (2 sqrt(1 + t^2))
/// ```
///
/// The left side is assembled from the Moebius map itself, with
/// `a(s) - a(it) = 2 eps / ((s + 1)(1 + it))` and
/// `1 - |a| = (4 Re s / |s + 1|^2) / (1 + |a|)`. Subtracting nearby points
/// directly would lose about `log10(1 / eps)` digits.
pub fn stolz_ratio(eps: f64, t: f64) -> Result<(f64, f64)> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let s = Complex64::new(eps, t);
    let inner = cayley_inv(s)?;
    let gap = (2.0 * eps / ((s + 1.0) * Complex64::new(1.0, t))).norm();
    let depth = 4.0 * eps / (s + 1.0).norm_sqr() / (1.0 + inner.norm());
    let lhs = gap / depth;
    let rhs = ((1.0 + eps).hypot(t) + (1.0 - eps).hypot(t)) / (2.0 * 1f64.hypot(t));
    Ok((lhs, rhs))
}

fn check_polydisc(z: &[Complex64], width: usize) -> Result<()> {
    if z.len() < width {
        return Err(Error::LengthMismatch {
            expected: width,
            got: z.len(),
        });
    }
    if let Some(bad) = z.iter().find(|w| !(w.norm() < 1.0)) {
        return Err(Error::Domain(format!(
            "point coordinate {bad} is outside the open disc"
        )));
    }
    Ok(())
}

/// `(||P(z)||, max_j |z_j|)` over the `width(P)` coordinates of `P`.
///
/// The caller is responsible for `sup ||P|| <= 1`; the constant term must be
/// zero.
pub fn schwarz_bound_check(p: &PowerPoly, z: &[Complex64]) -> Result<(f64, f64)> {
    if !p.constant_term().is_zero() {
        return Err(Error::InvalidParameter("Schwarz bound needs P(0) = 0".into()));
    }
    check_polydisc(z, p.width())?;
    let value = p.space().norm_of(&p.eval(z)?);
    let bound = z[..p.width()].iter().map(|w| w.norm()).fold(0.0, f64::max);
    Ok((value, bound))
}

/// Outcome of a normalized Schwarz trial.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzTrial {
    pub value: f64,
    pub bound: f64,
    /// Grid resolution of the sup-norm scan used for the final normalization.
    pub grid_per_dim: usize,
    pub holds: bool,
}

/// Divides `P` by its grid sup-norm inflated by `1 + delta` and checks the
/// Schwarz bound. The grid scan is only a lower bound for the sup norm, so a
/// failure is retried with the grid doubled, up to `refinements` times.
pub fn schwarz_trial(
    p: &PowerPoly,
    z: &[Complex64],
    grid_per_dim: usize,
    delta: f64,
    refinements: usize,
) -> Result<SchwarzTrial> {
    let mut grid = grid_per_dim.max(1);
    let mut attempt = 0;
    loop {
        let sup = norms::norm_hinf_grid_power(p, grid, DEFAULT_GRID_DIM_CAP)?.value;
        let normalized = if sup > 0.0 {
            p.scaled((1.0 / (sup * (1.0 + delta))).into())
        } else {
            p.clone()
        };
        let (value, bound) = schwarz_bound_check(&normalized, z)?;
        let holds = value <= bound * (1.0 + 1e-12);
        if holds || attempt == refinements {
            return Ok(SchwarzTrial {
                value,
                bound,
                grid_per_dim: grid,
                holds,
            });
        }
        grid *= 2;
        attempt += 1;
    }
}

/// `(||P(z)||, ||P||_{H_2} prod_j (1 - |z_j|^2)^{-1/2})` over the `width(P)`
/// coordinates of `P`, for Euclidean coefficients.
pub fn pointwise_eval_bound_h2(p: &PowerPoly, z: &[Complex64]) -> Result<(f64, f64)> {
    check_polydisc(z, p.width())?;
    let norm = norms::norm_h2_exact_power(p)?.value;
    let value = p.space().norm_of(&p.eval(z)?);
    let factor: f64 = z[..p.width()].iter().map(|w| (1.0 - w.norm_sqr()).powf(-0.5)).product();
    Ok((value, norm * factor))
}

/// The reproducing kernel `prod_j (1 - conj(z_j) w_j)^{-1}` of `H_2(D^m)`
/// truncated to exponents `<= degree` in each variable and normalized to
/// unit `H_2` norm. It attains the pointwise bound at `z` up to the
/// truncation error.
pub fn reproducing_kernel(z: &[Complex64], degree: u32) -> Result<PowerPoly> {
    check_polydisc(z, z.len())?;
    let m = z.len();
    let mut terms: Vec<(MultiIndex, Complex64)> = Vec::new();
    let mut digits = vec![0u32; m];
    loop {
        let c = digits
            .iter()
            .zip(z)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, w)| acc * w.conj().powu(e));
        if c != Complex64::new(0.0, 0.0) {
            terms.push((MultiIndex::new(digits.clone()), c));
        }
        let mut j = 0;
        while j < m {
            digits[j] += 1;
            if digits[j] <= degree {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        if j == m {
            break;
        }
    }
    let norm = terms.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
    PowerPoly::from_scalars(terms.into_iter().map(|(a, c)| (a, c / norm)))
}

/// `Q_m(z) = sum_{k <= m} xi_k z_k` with its exact `H_2` norm.
pub fn khintchine_linear(xi: &[Complex64], m: usize) -> Result<(PowerPoly, f64)> {
    if m > xi.len() {
        return Err(Error::LengthMismatch {
            expected: m,
            got: xi.len(),
        });
    }
    let q = PowerPoly::from_scalars(xi[..m].iter().enumerate().map(|(k, &c)| (MultiIndex::unit(k), c)))?;
    let norm = norms::norm_h2_exact_power(&q)?.value;
    Ok((q, norm))
}

/// `||Q_m - Q_n||_{H_2}` for `n < m`.
pub fn khintchine_increment(xi: &[Complex64], n: usize, m: usize) -> Result<f64> {
    if n >= m {
        return Err(Error::InvalidParameter(format!("need n < m, got n = {n}, m = {m}")));
    }
    let (qm, _) = khintchine_linear(xi, m)?;
    let (qn, _) = khintchine_linear(xi, n)?;
    Ok(norms::norm_h2_exact_power(&qm.add_scaled((-1.0).into(), &qn)?)?.value)
}

/// A coefficient family `(c_alpha)` indexed by all multi-indices.
pub trait CoeffFamily: Sync {
    fn label(&self) -> String;

    fn space(&self) -> CoeffSpaceSpec;

    /// `c_alpha`, or `None` for zero.
    fn coeff(&self, alpha: &MultiIndex) -> Option<CoeffVector>;

    /// Indices within the first `m` variables and of total degree
    /// `<= degree_cap` that may carry non-zero coefficients. `None` means
    /// every such index is queried.
    fn support_hint(&self, _m: usize, _degree_cap: u32) -> Option<Vec<MultiIndex>> {
        None
    }
}

/// All indices in `m` variables of total degree `<= cap`.
pub fn indices_up_to_degree(m: usize, cap: u32) -> Vec<MultiIndex> {
    fn rec(j: usize, m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if j == m {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[j] = e;
            rec(j + 1, m, left - e, cur, out);
        }
        cur[j] = 0;
    }
    let mut out = Vec::new();
    rec(0, m, cap, &mut vec![0; m], &mut out);
    out
}

/// `f_m`: the family restricted to the first `m` variables and truncated at
/// total degree `degree_cap`.
pub fn materialize(family: &dyn CoeffFamily, m: usize, degree_cap: u32) -> Result<PowerPoly> {
    let candidates = family
        .support_hint(m, degree_cap)
        .unwrap_or_else(|| indices_up_to_degree(m, degree_cap));
    let mut p = PowerPoly::new(family.space());
    for a in candidates {
        if !a.within(m) || a.degree() > degree_cap as u64 {
            continue;
        }
        if let Some(c) = family.coeff(&a) {
            p.insert(a, c)?;
        }
    }
    Ok(p)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    BoundedSoFar,
    DivergentTrend,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionRow {
    pub m: usize,
    pub norm: NormEstimate,
}

/// Norms of the restrictions `f_1, ..., f_{m_max}` and a trend verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub family: String,
    #[serde(with = "crate::json::exponent")]
    pub p: f64,
    pub per_m: Vec<CriterionRow>,
    pub verdict: Verdict,
    pub sup_value: f64,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CriterionOptions {
    pub degree_cap: u32,
    /// Relative increment below which growth counts as stalled.
    pub tolerance: f64,
    /// Resolution of the sup-norm scan when `p = infinity`.
    pub grid_per_dim: usize,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        Self {
            degree_cap: 12,
            tolerance: 1e-3,
            grid_per_dim: 8,
        }
    }
}

/// Estimates `||f_m||_{H_p}` for `m = 1..=m_max` and classifies the trend:
/// [`Verdict::BoundedSoFar`] when each of the last three relative increments
/// is at most `tolerance`, [`Verdict::DivergentTrend`] otherwise.
///
/// Exact at `p = 2` with Euclidean coefficients, a grid sup scan at
/// `p = infinity`, and Monte-Carlo with a shared seed otherwise. The verdict
/// is a heuristic: boundedness of the full sequence is not decidable from
/// finitely many terms.
pub fn hilbert_criterion(
    family: &dyn CoeffFamily,
    p: f64,
    m_max: usize,
    cfg: &SamplerConfig,
    opts: &CriterionOptions,
) -> Result<CriterionReport> {
    if m_max == 0 {
        return Err(Error::InvalidParameter("m_max must be >= 1".into()));
    }
    if !p.is_infinite() {
        norms::check_p(p)?;
    } else if p < 0.0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    let per_m = (1..=m_max)
        .map(|m| {
            let f = materialize(family, m, opts.degree_cap)?;
            let norm = if p.is_infinite() {
                norms::norm_hinf_grid_power(&f, opts.grid_per_dim, DEFAULT_GRID_DIM_CAP)?
            } else if p == 2.0 && f.space().is_euclidean() {
                norms::norm_h2_exact_power(&f)?
            } else {
                norms::norm_hp_mc_power(&f, p, cfg)?
            };
            Ok(CriterionRow { m, norm })
        })
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = per_m.iter().map(|r| r.norm.value).collect();
    let stalled = values
        .windows(2)
        .rev()
        .take(3)
        .all(|w| (w[1] - w[0]).abs() <= opts.tolerance * w[1].abs().max(f64::MIN_POSITIVE));
    Ok(CriterionReport {
        family: family.label(),
        p,
        sup_value: values.iter().copied().fold(0.0, f64::max),
        verdict: if stalled {
            Verdict::BoundedSoFar
        } else {
            Verdict::DivergentTrend
        },
        per_m,
    })
}

/// `c_alpha = 1` for `alpha = e_k`, `k < k_max`; zero elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitLinear {
    pub k_max: usize,
}

/// `c_alpha = 1` for every `alpha = e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AllLinear;

/// `c_{alpha(n)} = e_n` in `(C^dim, l_inf)` for `n <= dim`, where
/// `p^{alpha(n)} = n`: the Bohr lift of the `c0` gallery entry.
#[derive(Clone, Debug, PartialEq)]
pub struct C0Family {
    pub dim: usize,
}

fn unit_coordinate(alpha: &MultiIndex) -> Option<usize> {
    match alpha.support().collect::<Vec<_>>().as_slice() {
        [(k, 1)] => Some(*k),
        _ => None,
    }
}

impl CoeffFamily for UnitLinear {
    fn label(&self) -> String {
        format!("unit_linear(k_max={})", self.k_max)
    }

    fn space(&self) -> CoeffSpaceSpec {
        CoeffSpaceSpec::scalar()
    }

    fn coeff(&self, alpha: &MultiIndex) -> Option<CoeffVector> {
        unit_coordinate(alpha)
            .filter(|&k| k < self.k_max)
            .map(|_| CoeffVector::scalar(1.0.into()))
    }

    fn support_hint(&self, m: usize, degree_cap: u32) -> Option<Vec<MultiIndex>> {
        Some(if degree_cap == 0 {
            Vec::new()
        } else {
            (0..m.min(self.k_max)).map(MultiIndex::unit).collect()
        })
    }
}

impl CoeffFamily for AllLinear {
    fn label(&self) -> String {
        "all_linear".into()
    }

    fn space(&self) -> CoeffSpaceSpec {
        CoeffSpaceSpec::scalar()
    }

    fn coeff(&self, alpha: &MultiIndex) -> Option<CoeffVector> {
        unit_coordinate(alpha).map(|_| CoeffVector::scalar(1.0.into()))
    }

    fn support_hint(&self, m: usize, degree_cap: u32) -> Option<Vec<MultiIndex>> {
        Some(if degree_cap == 0 {
            Vec::new()
        } else {
            (0..m).map(MultiIndex::unit).collect()
        })
    }
}

impl CoeffFamily for C0Family {
    fn label(&self) -> String {
        format!("c0(dim={})", self.dim)
    }

    fn space(&self) -> CoeffSpaceSpec {
        CoeffSpaceSpec::new(self.dim.max(1), crate::coeff::NormTag::Linf).expect("dim >= 1")
    }

    fn coeff(&self, alpha: &MultiIndex) -> Option<CoeffVector> {
        let n = index_of(alpha).ok()?;
        if n as usize > self.dim {
            return None;
        }
        CoeffVector::basis(self.space(), n as usize - 1).ok()
    }

    fn support_hint(&self, m: usize, degree_cap: u32) -> Option<Vec<MultiIndex>> {
        Some(
            (1..=self.dim as u64)
                .filter_map(|n| factorize(n).ok())
                .filter(|a| a.within(m) && a.degree() <= degree_cap as u64)
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(cayley_inv(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(cayley(c(1.0, 0.0)).is_err());
        assert!(cayley(c(0.6, 0.8)).is_err());
        assert!(cayley_inv(c(0.0, 2.0)).is_err());
        let z = c(0.3, -0.45);
        assert!((cayley_inv(cayley(z).unwrap()).unwrap() - z).norm() < 1e-15);
    }

    #[test]
    fn boundary_points_lie_on_the_circle() {
        for t in [-10.0, -1.0, 0.0, 0.5, 3.0] {
            assert!((cayley_inv_boundary(t).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn stolz_examples() {
        let (l, r) = stolz_ratio(1.0, 0.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15 && (l - 1.0).abs() < 1e-15);
        let (l, r) = stolz_ratio(1.0, 1.0).unwrap();
        let expected = (5f64.sqrt() + 1.0) / (2.0 * 2f64.sqrt());
        assert!((r - expected).abs() < 1e-15);
        assert!((r - 1.14412).abs() < 5e-6);
        assert!((l - r).abs() < 1e-12);
        let (_, r) = stolz_ratio(1e-9, 4.0).unwrap();
        assert!((r - 1.0).abs() < 1e-8);
        assert!(stolz_ratio(0.0, 1.0).is_err());
    }

    #[test]
    fn schwarz_examples() {
        let one = c(1.0, 0.0);
        let p = PowerPoly::from_scalars([(mi(&[1, 1]), one)]).unwrap();
        assert_eq!(
            schwarz_bound_check(&p, &[c(0.5, 0.0), c(0.5, 0.0)]).unwrap(),
            (0.25, 0.5)
        );
        let z1 = PowerPoly::from_scalars([(mi(&[1]), one)]).unwrap();
        let (v, b) = schwarz_bound_check(&z1, &[c(0.7, 0.0), c(0.9, 0.0)]).unwrap();
        assert_eq!((v, b), (0.7, 0.7));
        let with_const = PowerPoly::from_scalars([(mi(&[]), one), (mi(&[1]), one)]).unwrap();
        assert!(schwarz_bound_check(&with_const, &[c(0.1, 0.0)]).is_err());
        assert!(schwarz_bound_check(&z1, &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn schwarz_trial_normalizes() {
        let p = PowerPoly::from_scalars([(mi(&[1]), c(3.0, 0.0)), (mi(&[0, 2]), c(0.0, -2.0))]).unwrap();
        let t = schwarz_trial(&p, &[c(0.6, 0.1), c(-0.2, 0.5)], 8, 0.01, 3).unwrap();
        assert!(t.holds, "{t:?}");
    }

    #[test]
    fn pointwise_examples() {
        let z1 = PowerPoly::from_scalars([(mi(&[1]), c(1.0, 0.0))]).unwrap();
        let (v, b) = pointwise_eval_bound_h2(&z1, &[c(0.5, 0.0)]).unwrap();
        assert_eq!(v, 0.5);
        assert!((b - 0.75f64.powf(-0.5)).abs() < 1e-15);
        assert!((b - 1.1547).abs() < 1e-4);
        let k = PowerPoly::from_scalars([(mi(&[]), c(-2.0, 1.0))]).unwrap();
        let (v, b) = pointwise_eval_bound_h2(&k, &[c(0.3, 0.3)]).unwrap();
        assert!(v <= b);
        let s = CoeffSpaceSpec::new(2, crate::NormTag::L1).unwrap();
        let p = PowerPoly::from_coeffs(s, [(mi(&[1]), CoeffVector::zeros(s))]).unwrap();
        assert!(pointwise_eval_bound_h2(&p, &[c(0.1, 0.0)]).is_err());
    }

    #[test]
    fn reproducing_kernel_is_nearly_sharp() {
        let z = [c(0.5, 0.0), c(0.0, -0.3)];
        let k = reproducing_kernel(&z, 20).unwrap();
        let (v, b) = pointwise_eval_bound_h2(&k, &z).unwrap();
        assert!(v <= b * (1.0 + 1e-12));
        assert!(1.0 - v / b < 1e-9, "gap {}", 1.0 - v / b);
    }

    #[test]
    fn khintchine_examples() {
        let (q, n) = khintchine_linear(&[c(3.0, 0.0), c(0.0, 4.0)], 2).unwrap();
        assert_eq!(n, 5.0);
        assert_eq!(q.width(), 2);
        assert!(khintchine_linear(&[c(1.0, 0.0)], 2).is_err());
        let xi: Vec<Complex64> = (1..=40).map(|k| c(1.0 / k as f64, 0.0)).collect();
        let inc = khintchine_increment(&xi, 10, 30).unwrap();
        let direct: f64 = (11..=30).map(|k| 1.0 / (k * k) as f64).sum::<f64>().sqrt();
        assert!((inc - direct).abs() < 1e-15);
    }

    #[test]
    fn khintchine_divergent_sequence() {
        // xi_k = 1/sqrt(k): ||Q_m||^2 is the harmonic number H_m
        let xi: Vec<Complex64> = (1..=2000).map(|k| c((k as f64).powf(-0.5), 0.0)).collect();
        for m in [10, 100, 1000, 2000] {
            let (_, n) = khintchine_linear(&xi, m).unwrap();
            let h: f64 = (1..=m).map(|k| 1.0 / k as f64).sum();
            assert!((n * n - h).abs() < 1e-11);
            assert!(n > (m as f64).ln().sqrt());
        }
    }

    #[test]
    fn index_enumeration() {
        assert_eq!(indices_up_to_degree(0, 5), vec![MultiIndex::zero()]);
        assert_eq!(indices_up_to_degree(2, 2).len(), 6);
        assert_eq!(indices_up_to_degree(3, 12).len(), 455);
    }

    #[test]
    fn materialize_without_hint_matches_hint() {
        struct Plain;
        impl CoeffFamily for Plain {
            fn label(&self) -> String {
                "plain".into()
            }
            fn space(&self) -> CoeffSpaceSpec {
                CoeffSpaceSpec::scalar()
            }
            fn coeff(&self, alpha: &MultiIndex) -> Option<CoeffVector> {
                AllLinear.coeff(alpha)
            }
        }
        for m in 0..5 {
            assert_eq!(
                materialize(&Plain, m, 4).unwrap(),
                materialize(&AllLinear, m, 4).unwrap()
            );
        }
    }

    #[test]
    fn criterion_examples() {
        let cfg = SamplerConfig::default();
        let opts = CriterionOptions::default();
        let r = hilbert_criterion(&UnitLinear { k_max: 5 }, 2.0, 8, &cfg, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::BoundedSoFar);
        assert!((r.sup_value - 5f64.sqrt()).abs() < 1e-15);
        for row in &r.per_m {
            assert!((row.norm.value - (row.m.min(5) as f64).sqrt()).abs() < 1e-15);
        }
        let r = hilbert_criterion(&AllLinear, 2.0, 8, &cfg, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::DivergentTrend);
        let r = hilbert_criterion(&C0Family { dim: 8 }, f64::INFINITY, 5, &cfg, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::BoundedSoFar);
        assert!(r.per_m.iter().all(|row| (row.norm.value - 1.0).abs() < 1e-12));
        assert!(hilbert_criterion(&AllLinear, 2.0, 0, &cfg, &opts).is_err());
    }
}
