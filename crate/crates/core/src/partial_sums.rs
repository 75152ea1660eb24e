//! Partial sums `S_N D`: the Abel summation identity, projection sanity
//! checks and the `log N` growth experiment.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bohr::partial_sum;
use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};
use crate::gallery::PolyFamily;
use crate::norms::{self, Method, NormEstimate};
use crate::sampling::SamplerConfig;
use crate::translations::translate;

/// The block `sum_{n=N}^{M} a_n n^{-eps-s}` and its summation-by-parts
/// expansion, with the largest coefficient gap relative to the largest
/// coefficient of the block.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelCheck {
    pub lhs: DirichletPoly,
    pub rhs: DirichletPoly,
    pub max_coeff_gap: f64,
}

/// Builds both sides of
///
/// ```text
/// sum_{n=N}^{M} a_n n^{-eps} n^{-s}
///   = sum_{n=N}^{M-1} S_n (n^{-eps} - (n+1)^{-eps}) + S_M M^{-eps} - S_{N-1} N^{-eps}
/// ```
///
/// where `S_n = sum_{k <= n} a_k k^{-s}`. The right side is accumulated as a
/// literal sum of partial-sum polynomials.
pub fn abel_identity_check(d: &DirichletPoly, n_lo: u64, n_hi: u64, eps: f64) -> Result<AbelCheck> {
    if !(1 < n_lo && n_lo < n_hi && n_hi <= d.max_index()) {
        return Err(Error::InvalidParameter(format!(
            "need 1 < N < M <= max index ({}), got N = {n_lo}, M = {n_hi}",
            d.max_index()
        )));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let pow = |n: u64| (n as f64).powf(-eps);
    let lhs = translate(&d.filtered(|n| (n_lo..=n_hi).contains(&n)), eps.into());

    let mut running = partial_sum(d, n_lo - 1);
    let mut rhs = running.scaled((-pow(n_lo)).into());
    for n in n_lo..n_hi {
        if let Some(a) = d.get(n) {
            running.insert(n, a.clone())?;
        }
        rhs = rhs.add_scaled((pow(n) - pow(n + 1)).into(), &running)?;
    }
    if let Some(a) = d.get(n_hi) {
        running.insert(n_hi, a.clone())?;
    }
    rhs = rhs.add_scaled(pow(n_hi).into(), &running)?;

    let scale = lhs.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let mut gap = 0.0f64;
    for (n, r) in rhs.iter() {
        let diff = match lhs.get(n) {
            Some(l) => l.sub(r)?.norm(),
            None => r.norm(),
        };
        gap = gap.max(diff);
    }
    for (n, l) in lhs.iter() {
        if rhs.get(n).is_none() {
            gap = gap.max(l.norm());
        }
    }
    let max_coeff_gap = if scale > 0.0 { gap / scale } else { gap };
    Ok(AbelCheck {
        lhs,
        rhs,
        max_coeff_gap,
    })
}

/// `S_N` is idempotent and does not increase the `H_2` norm.
pub fn partial_sum_projection_check(d: &DirichletPoly, n_max: u64) -> Result<bool> {
    let s = partial_sum(d, n_max);
    let idempotent = partial_sum(&s, n_max) == s;
    let contracts = norms::norm_h2_exact(&s)?.value <= norms::norm_h2_exact(d)?.value;
    Ok(idempotent && contracts)
}

/// One row of the partial-sum growth experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogBoundRow {
    #[serde(rename = "N")]
    pub n: u64,
    /// `||S_N D|| / ||D||`.
    pub ratio: f64,
    /// `ratio / log N`.
    pub ratio_over_log: f64,
    #[serde(with = "crate::json::exponent")]
    pub p: f64,
    pub method: Method,
    pub std_error: f64,
}

/// Window settings for the `p = infinity` rows, which use the vertical sup
/// with `R = r_per_n * N`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SupWindow {
    pub r_per_n: f64,
    pub t_samples: usize,
}

impl Default for SupWindow {
    fn default() -> Self {
        Self {
            r_per_n: 100.0,
            t_samples: 20_001,
        }
    }
}

fn estimate(d: &DirichletPoly, p: f64, horizon: f64, cfg: &SamplerConfig, window: &SupWindow) -> Result<NormEstimate> {
    if p.is_infinite() {
        norms::vertical_sup(d, horizon, window.t_samples)
    } else if p == 2.0 && d.space().is_euclidean() {
        norms::norm_h2_exact(d)
    } else {
        norms::norm_hp_mc(d, p, cfg)
    }
}

/// `||S_N D|| / ||D||` and its ratio to `log N` for each `N`, where `D` is
/// the family member of size `max(Ns)`. `p` may be `f64::INFINITY`.
///
/// Rows are independent and computed in parallel; output order follows `ns`.
pub fn log_bound_experiment(
    family: &dyn PolyFamily,
    p: f64,
    ns: &[u64],
    cfg: &SamplerConfig,
    window: &SupWindow,
) -> Result<Vec<LogBoundRow>> {
    if !(p.is_infinite() && p > 0.0) {
        norms::check_p(p)?;
    }
    if ns.is_empty() || ns.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParameter("every N must be >= 2".into()));
    }
    let n_max = *ns.iter().max().expect("non-empty");
    let d = family.build(n_max)?;
    let full = estimate(&d, p, window.r_per_n * n_max as f64, cfg, window)?;
    if full.value == 0.0 {
        return Err(Error::InvalidParameter("the family member has zero norm".into()));
    }
    ns.par_iter()
        .map(|&n| {
            let part = estimate(&partial_sum(&d, n), p, window.r_per_n * n as f64, cfg, window)?;
            let ratio = part.value / full.value;
            let rel = |e: &NormEstimate| if e.value > 0.0 { e.std_error / e.value } else { 0.0 };
            Ok(LogBoundRow {
                n,
                ratio,
                ratio_over_log: ratio / (n as f64).ln(),
                p,
                method: part.method,
                std_error: ratio * rel(&part).hypot(rel(&full)),
            })
        })
        .collect()
}

/// Powers of two from 4 to `max` inclusive.
pub fn octave_sweep(max: u64) -> Vec<u64> {
    std::iter::successors(Some(4u64), |n| n.checked_mul(2))
        .take_while(|&n| n <= max)
        .collect()
}

/// Largest `ratio_over_log` among rows with `N > max_N / 2` (the final
/// octave) and over all rows.
pub fn octave_maxima(rows: &[LogBoundRow]) -> (f64, f64) {
    let n_max = rows.iter().map(|r| r.n).max().unwrap_or(0);
    let overall = rows.iter().map(|r| r.ratio_over_log).fold(f64::NEG_INFINITY, f64::max);
    let last = rows
        .iter()
        .filter(|r| 2 * r.n > n_max)
        .map(|r| r.ratio_over_log)
        .fold(f64::NEG_INFINITY, f64::max);
    (last, overall)
}
