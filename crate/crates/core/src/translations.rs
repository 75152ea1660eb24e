//! Vertical translations `D_z`, rotation twists `D^theta`, and the `H_p^+`
//! norm `sup_{eps > 0} ||D_eps||_{H_p}`.

use num_complex::Complex64;

use crate::bohr::bohr_lift;
use crate::dirichlet::DirichletPoly;
use crate::error::{Error, Result};
use crate::norms::{self, check_p, single_term_norm, Method, NormEstimate};
use crate::power::EvalPlan;
use crate::sampling::{map_torus, power_mean, SamplerConfig};

const UNIMODULAR_TOL: f64 = 1e-12;

/// A point `theta` of the polytorus, one coordinate per prime.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistPoint(Vec<Complex64>);

impl TwistPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|w| (w.norm() - 1.0).abs() > UNIMODULAR_TOL) {
            return Err(Error::Domain(format!("twist coordinate {bad} is not unimodular")));
        }
        Ok(Self(coords))
    }

    /// `theta_j = e^{i angle_j}`.
    pub fn from_angles(angles: &[f64]) -> Self {
        Self(angles.iter().map(|&a| Complex64::cis(a)).collect())
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|w| w.conj()).collect())
    }
}

/// `D_z = sum a_n n^{-z} n^{-s}`.
pub fn translate(d: &DirichletPoly, z: Complex64) -> DirichletPoly {
    d.map_coeffs(|n, v| v.scaled((-z * (n as f64).ln()).exp()))
}

/// `D^theta` with coefficients `b_n = a_n theta^{alpha(n)}`.
pub fn twist(d: &DirichletPoly, theta: &TwistPoint) -> Result<DirichletPoly> {
    let lift = bohr_lift(d)?;
    if theta.0.len() < lift.width() {
        return Err(Error::LengthMismatch {
            expected: lift.width(),
            got: theta.0.len(),
        });
    }
    let twisted = lift.map_coeffs(|a, v| {
        let w = a
            .support()
            .fold(Complex64::new(1.0, 0.0), |acc, (j, e)| acc * theta.0[j].powu(e));
        v.scaled(w)
    });
    crate::bohr::bohr_transform(&twisted)
}

/// `{2^{-k} : k = 0..=20}`.
pub fn default_eps_grid() -> Vec<f64> {
    (0..=20).map(|k| 2f64.powi(-k)).collect()
}

fn check_eps_grid(eps: &[f64]) -> Result<()> {
    if eps.is_empty() {
        return Err(Error::InvalidParameter("eps grid is empty".into()));
    }
    if eps.iter().any(|&e| !(e.is_finite() && e > 0.0)) {
        return Err(Error::InvalidParameter("eps values must be positive".into()));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("eps grid must be strictly decreasing".into()));
    }
    Ok(())
}

/// `||D_eps||_{H_p}` along `eps_grid`.
///
/// At `p = 2` with Euclidean coefficients every row is the closed form
/// `sqrt(sum ||a_n||^2 n^{-2 eps})`. Otherwise all rows are estimated on one
/// shared torus sample (common random numbers), so differences between rows
/// reflect the translation rather than sampling noise.
pub fn eps_norm_profile(
    d: &DirichletPoly,
    p: f64,
    eps_grid: &[f64],
    cfg: &SamplerConfig,
) -> Result<Vec<(f64, NormEstimate)>> {
    check_p(p)?;
    check_eps_grid(eps_grid)?;
    if p == 2.0 && d.space().is_euclidean() {
        return eps_grid
            .iter()
            .map(|&e| Ok((e, norms::norm_h2_exact(&translate(d, e.into()))?)))
            .collect();
    }
    let lifts = eps_grid
        .iter()
        .map(|&e| bohr_lift(&translate(d, e.into())))
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = lifts.first() {
        if single_term_norm(first).is_some() {
            return Ok(eps_grid
                .iter()
                .zip(&lifts)
                .map(|(&e, l)| (e, single_term_norm(l).expect("same support")))
                .collect());
        }
    }
    let plans: Vec<EvalPlan> = lifts.iter().map(EvalPlan::new).collect();
    let width = plans[0].width();
    let space = d.space();
    let rows: Vec<Vec<f64>> = map_torus(
        cfg,
        width,
        || plans.iter().map(EvalPlan::scratch).collect::<Vec<_>>(),
        |scratch, w| {
            plans
                .iter()
                .zip(scratch.iter_mut())
                .map(|(plan, s)| space.norm_of(plan.eval(w, s)))
                .collect()
        },
    )?;
    Ok(eps_grid
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let column: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            let (value, std_error) = power_mean(&column, p);
            let est = NormEstimate {
                value,
                method: Method::TorusMc,
                std_error,
                samples: cfg.samples() as u64,
                seed: cfg.seed(),
                horizon: None,
            };
            (e, est)
        })
        .collect())
}

/// The `H_p^+` norm of a Dirichlet polynomial.
///
/// On polynomials `H_p^+` and `H_p` coincide isometrically, so this returns
/// the plain `H_p` value (exact at `p = 2` with Euclidean coefficients,
/// Monte-Carlo otherwise). As a consistency check the profile at the
/// smallest default `eps` is compared against it: on a shared sample the two
/// may differ by at most `sum ||a_n|| (1 - n^{-eps})`, and a larger gap is
/// reported as [`Error::Inconsistent`].
pub fn hplus_norm(d: &DirichletPoly, p: f64, cfg: &SamplerConfig) -> Result<NormEstimate> {
    check_p(p)?;
    let base = if p == 2.0 && d.space().is_euclidean() {
        norms::norm_h2_exact(d)?
    } else {
        norms::norm_hp_mc(d, p, cfg)?
    };
    let eps = *default_eps_grid().last().expect("non-empty grid");
    let (_, near) = eps_norm_profile(d, p, &[eps], cfg)?.remove(0);
    let slack: f64 = d
        .iter()
        .map(|(n, v)| v.norm() * -(-eps * (n as f64).ln()).exp_m1())
        .sum::<f64>()
        + 1e-12 * (1.0 + base.value);
    if (near.value - base.value).abs() > slack {
        return Err(Error::Inconsistent(format!(
            "H_p estimate {} and profile value {} at eps = {eps} differ by more than {slack}",
            base.value, near.value
        )));
    }
    Ok(base)
}
