//! Experiment orchestration behind the `dhardy` binary.
//!
//! An [`ExperimentSpec`] names a subcommand, an optional input file, a map of
//! string parameters and an output target. [`run`] validates the parameters
//! for the subcommand, dispatches to the library and writes the result
//! atomically. Errors map onto two exit statuses: 2 for invalid input and 3
//! for a failed numerical check.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use dirichlet_hardy::analysis::{self, AllLinear, C0Family, CoeffFamily, CriterionOptions, UnitLinear};
use dirichlet_hardy::gallery::{GalleryEntry, PolyFamily, DEFAULT_ZETA_SIGMA};
use dirichlet_hardy::json::{self, parse_exponent};
use dirichlet_hardy::norms;
use dirichlet_hardy::partial_sums::{self, SupWindow};
use dirichlet_hardy::poisson::{self, RadiusVector};
use dirichlet_hardy::translations;
use dirichlet_hardy::{bohr_lift, bohr_transform, DirichletPoly, NormEstimate, PowerPoly, SamplerConfig, Scheme};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Relative gap allowed by the identity checks.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Allowed gap between exact and grid Poisson convolution, on top of the
/// aliasing bound of the grid.
pub const CONVOLVE_TOL: f64 = 1e-9;

const DEFAULT_SUP_GRID: usize = 16;
const DEFAULT_T_SAMPLES: usize = 20_001;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Validation(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Library(#[from] dirichlet_hardy::Error),
    #[error("numerical check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) | CliError::Library(dirichlet_hardy::Error::Inconsistent(_)) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Lift,
    Transform,
    Norm,
    Translate,
    EpsProfile,
    Poisson,
    LogBound,
    AbelCheck,
    Criterion,
    CayleyCheck,
    Gallery,
}

impl Subcommand {
    pub const ALL: [Subcommand; 11] = [
        Subcommand::Lift,
        Subcommand::Transform,
        Subcommand::Norm,
        Subcommand::Translate,
        Subcommand::EpsProfile,
        Subcommand::Poisson,
        Subcommand::LogBound,
        Subcommand::AbelCheck,
        Subcommand::Criterion,
        Subcommand::CayleyCheck,
        Subcommand::Gallery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Lift => "lift",
            Subcommand::Transform => "transform",
            Subcommand::Norm => "norm",
            Subcommand::Translate => "translate",
            Subcommand::EpsProfile => "eps-profile",
            Subcommand::Poisson => "poisson",
            Subcommand::LogBound => "log-bound",
            Subcommand::AbelCheck => "abel-check",
            Subcommand::Criterion => "criterion",
            Subcommand::CayleyCheck => "cayley-check",
            Subcommand::Gallery => "gallery",
        }
    }

    fn needs_input(self) -> bool {
        !matches!(
            self,
            Subcommand::LogBound | Subcommand::Criterion | Subcommand::CayleyCheck | Subcommand::Gallery
        )
    }

    fn csv_capable(self) -> bool {
        matches!(
            self,
            Subcommand::Norm
                | Subcommand::Translate
                | Subcommand::EpsProfile
                | Subcommand::LogBound
                | Subcommand::Criterion
                | Subcommand::CayleyCheck
        )
    }

    /// `(required, optional)` parameter names.
    fn params(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Subcommand::Lift | Subcommand::Transform => (&[], &[]),
            Subcommand::Norm => (
                &["p"],
                &["exact", "grid", "R", "t-samples", "samples", "seed", "scheme"],
            ),
            Subcommand::Translate => (&["eps"], &["t", "p", "samples", "seed", "scheme"]),
            Subcommand::EpsProfile => (&[], &["p", "eps", "samples", "seed", "scheme"]),
            Subcommand::Poisson => (&["radii"], &["p", "grid", "samples", "seed", "scheme"]),
            Subcommand::LogBound => (
                &["family", "p"],
                &["N", "size", "sigma", "R", "t-samples", "samples", "seed", "scheme"],
            ),
            Subcommand::AbelCheck => (&["N", "M"], &["eps"]),
            Subcommand::Criterion => (
                &["family"],
                &["size", "m-max", "p", "grid", "samples", "seed", "scheme"],
            ),
            Subcommand::CayleyCheck => (&[], &["eps", "t"]),
            Subcommand::Gallery => (&["name", "size"], &["seed", "sigma"]),
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid(format!("unknown subcommand {s:?}")))
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(invalid(format!("unknown format {other:?}, expected json or csv"))),
        }
    }
}

/// One invocation. `output_path = None` writes to standard output.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub subcommand: Subcommand,
    pub input_path: Option<PathBuf>,
    pub params: BTreeMap<String, String>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentSpec {
    pub fn new(subcommand: Subcommand) -> Self {
        Self {
            subcommand,
            input_path: None,
            params: BTreeMap::new(),
            output_path: None,
            format: Format::Json,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn input(mut self, path: impl Into<PathBuf>) -> Self {
        self.input_path = Some(path.into());
        self
    }

    pub fn output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output_path = Some(path.into());
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    /// Checks the parameter set against the subcommand before any work.
    pub fn validate(&self) -> CliResult<()> {
        let cmd = self.subcommand;
        let (required, optional) = cmd.params();
        if let Some(missing) = required.iter().find(|k| !self.params.contains_key(**k)) {
            return Err(invalid(format!("{cmd} requires --{missing}")));
        }
        if let Some(extra) = self
            .params
            .keys()
            .find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str()))
        {
            return Err(invalid(format!("{cmd} does not take --{extra}")));
        }
        if cmd.needs_input() && self.input_path.is_none() {
            return Err(invalid(format!("{cmd} requires --input")));
        }
        if !cmd.needs_input() && self.input_path.is_some() {
            return Err(invalid(format!("{cmd} does not read an input file")));
        }
        if self.format == Format::Csv && !cmd.csv_capable() {
            return Err(invalid(format!("{cmd} only writes JSON")));
        }
        Ok(())
    }
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn parse<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.trim()
                    .parse::<T>()
                    .map_err(|_| invalid(format!("cannot parse --{key} {v:?}")))
            })
            .transpose()
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, key: &str) -> CliResult<T> {
        self.parse(key)?.ok_or_else(|| invalid(format!("missing --{key}")))
    }

    fn exponent_or(&self, default: f64) -> CliResult<f64> {
        match self.raw("p") {
            None => Ok(default),
            Some(v) => {
                let p = parse_exponent(v).map_err(|e| invalid(e.to_string()))?;
                if p < 1.0 {
                    return Err(invalid(format!("--p must be >= 1, got {v}")));
                }
                Ok(p)
            }
        }
    }

    fn list<T: FromStr>(&self, key: &str) -> CliResult<Option<Vec<T>>> {
        self.raw(key)
            .map(|v| {
                v.split(',')
                    .map(|item| {
                        item.trim()
                            .parse::<T>()
                            .map_err(|_| invalid(format!("cannot parse {item:?} in --{key}")))
                    })
                    .collect()
            })
            .transpose()
    }

    fn flag(&self, key: &str) -> CliResult<bool> {
        match self.raw(key) {
            None => Ok(false),
            Some("" | "true" | "1") => Ok(true),
            Some("false" | "0") => Ok(false),
            Some(v) => Err(invalid(format!("--{key} is a switch, got {v:?}"))),
        }
    }

    fn sampler(&self) -> CliResult<SamplerConfig> {
        let d = SamplerConfig::default();
        let scheme: Scheme = match self.raw("scheme") {
            None => d.scheme(),
            Some(v) => v.parse().map_err(|e: dirichlet_hardy::Error| invalid(e.to_string()))?,
        };
        Ok(SamplerConfig::new(
            self.get_or("samples", d.samples())?,
            self.get_or("seed", 0)?,
            scheme,
        )?)
    }
}

fn read_input(spec: &ExperimentSpec) -> CliResult<String> {
    let path = spec.input_path.as_ref().expect("validated");
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn read_dirichlet(spec: &ExperimentSpec) -> CliResult<DirichletPoly> {
    json::dirichlet_from_json(&read_input(spec)?).map_err(|e| invalid(e.to_string()))
}

fn read_power(spec: &ExperimentSpec) -> CliResult<PowerPoly> {
    json::power_from_json(&read_input(spec)?).map_err(|e| invalid(e.to_string()))
}

/// Writes `text` to `path` through a temporary file in the same directory
/// followed by a rename, so readers never observe a partial file.
pub fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("outputs serialize");
    text.push('\n');
    text
}

fn to_csv<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("CSV is UTF-8")
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        p.to_string()
    }
}

/// Rendered output plus an optional failed check, reported after the output
/// has been written.
struct Rendered {
    text: String,
    failure: Option<String>,
}

impl From<String> for Rendered {
    fn from(text: String) -> Self {
        Self { text, failure: None }
    }
}

/// Executes `spec` and returns the text written.
pub fn run(spec: &ExperimentSpec) -> CliResult<String> {
    spec.validate()?;
    let rendered = dispatch(spec)?;
    match &spec.output_path {
        Some(path) => write_atomic(path, &rendered.text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(rendered.text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    match rendered.failure {
        Some(msg) => Err(CliError::CheckFailed(msg)),
        None => Ok(rendered.text),
    }
}

fn dispatch(spec: &ExperimentSpec) -> CliResult<Rendered> {
    let params = Params(&spec.params);
    match spec.subcommand {
        Subcommand::Lift => Ok(json::power_to_json(&bohr_lift(&read_dirichlet(spec)?)?).into()),
        Subcommand::Transform => Ok(json::dirichlet_to_json(&bohr_transform(&read_power(spec)?)?).into()),
        Subcommand::Norm => norm_cmd(spec, &params),
        Subcommand::Translate => translate_cmd(spec, &params),
        Subcommand::EpsProfile => eps_profile_cmd(spec, &params),
        Subcommand::Poisson => poisson_cmd(spec, &params),
        Subcommand::LogBound => log_bound_cmd(spec, &params),
        Subcommand::AbelCheck => abel_cmd(spec, &params),
        Subcommand::Criterion => criterion_cmd(spec, &params),
        Subcommand::CayleyCheck => cayley_cmd(spec, &params),
        Subcommand::Gallery => gallery_cmd(&params),
    }
}

#[derive(Serialize)]
struct EstimateRow {
    value: f64,
    method: String,
    std_error: f64,
    samples: u64,
    seed: u64,
    #[serde(rename = "R")]
    horizon: Option<f64>,
}

fn estimate_row(e: &NormEstimate) -> EstimateRow {
    EstimateRow {
        value: e.value,
        method: e.method.to_string(),
        std_error: e.std_error,
        samples: e.samples,
        seed: e.seed,
        horizon: e.horizon,
    }
}

/// `norm`: `--exact` forces the closed form at `p = 2`. `--R` selects the
/// vertical-line estimators. At `p = inf` without `--R` the torus grid scan
/// runs with `--grid` points per coordinate. Otherwise the torus
/// Monte-Carlo estimator runs with the sampler flags.
fn norm_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let d = read_dirichlet(spec)?;
    let p = params.exponent_or(2.0)?;
    let horizon: Option<f64> = params.parse("R")?;
    let t_samples = params.get_or("t-samples", DEFAULT_T_SAMPLES)?;
    let est = if params.flag("exact")? {
        if p != 2.0 {
            return Err(invalid("--exact is only available at p = 2"));
        }
        norms::norm_h2_exact(&d)?
    } else if let Some(r) = horizon {
        if p.is_infinite() {
            norms::vertical_sup(&d, r, t_samples)?
        } else {
            norms::vertical_mean(&d, p, r, t_samples)?
        }
    } else if p.is_infinite() {
        norms::norm_hinf_grid(&d, params.get_or("grid", DEFAULT_SUP_GRID)?)?
    } else {
        norms::norm_hp_mc(&d, p, &params.sampler()?)?
    };
    Ok(match spec.format {
        Format::Json => to_json(&est),
        Format::Csv => to_csv(
            &["value", "method", "std_error", "samples", "seed", "R"],
            [estimate_row(&est)],
        ),
    }
    .into())
}

fn profile_norm(d: &DirichletPoly, p: f64, cfg: &SamplerConfig) -> CliResult<NormEstimate> {
    if p.is_infinite() {
        return Err(invalid("translation norms need a finite --p"));
    }
    Ok(if p == 2.0 && d.space().is_euclidean() {
        norms::norm_h2_exact(d)?
    } else {
        norms::norm_hp_mc(d, p, cfg)?
    })
}

/// `translate`: `D_z` for `z = eps + i t`, with its `H_p` norm.
fn translate_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let d = read_dirichlet(spec)?;
    let eps: f64 = params.required("eps")?;
    let t: f64 = params.get_or("t", 0.0)?;
    if !(eps.is_finite() && eps >= 0.0 && t.is_finite()) {
        return Err(invalid("--eps must be finite and >= 0 and --t finite"));
    }
    let shifted = translations::translate(&d, Complex64::new(eps, t));
    let norm = profile_norm(&shifted, params.exponent_or(2.0)?, &params.sampler()?)?;
    Ok(match spec.format {
        Format::Json => to_json(&json!({
            "eps": eps,
            "t": t,
            "poly": shifted,
            "norm": norm,
        })),
        Format::Csv => to_csv(&["eps", "value", "std_error"], [(eps, norm.value, norm.std_error)]),
    }
    .into())
}

/// `eps-profile`: `||D_eps||_{H_p}` along a decreasing grid.
fn eps_profile_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let d = read_dirichlet(spec)?;
    let p = params.exponent_or(2.0)?;
    if p.is_infinite() {
        return Err(invalid("eps-profile needs a finite --p"));
    }
    let grid = params.list("eps")?.unwrap_or_else(translations::default_eps_grid);
    let cfg = params.sampler()?;
    let rows = translations::eps_norm_profile(&d, p, &grid, &cfg)?;
    Ok(match spec.format {
        Format::Json => to_json(&json!({
            "p": p,
            "seed": cfg.seed(),
            "rows": rows.iter().map(|(eps, e)| json!({"eps": eps, "estimate": e})).collect::<Vec<_>>(),
        })),
        Format::Csv => to_csv(
            &["eps", "value", "std_error"],
            rows.iter().map(|(eps, e)| (*eps, e.value, e.std_error)),
        ),
    }
    .into())
}

/// `poisson`: exact convolution by `r^{|alpha|}` and the contraction
/// inequality at `--p`. A single radius is used for every coordinate. With
/// `--grid` the numeric convolution is also run and compared.
fn poisson_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let poly = read_power(spec)?;
    let radii: Vec<f64> = params.list("radii")?.expect("validated");
    let radii = match radii.as_slice() {
        [r] => vec![*r; poly.width()],
        _ if radii.len() < poly.width() => {
            return Err(invalid(format!(
                "--radii has {} entries but the polynomial uses {} variables",
                radii.len(),
                poly.width()
            )))
        }
        _ => radii,
    };
    let r = RadiusVector::new(radii).map_err(|e| invalid(e.to_string()))?;
    let p = params.exponent_or(2.0)?;
    if p.is_infinite() {
        return Err(invalid("the contraction check needs a finite --p"));
    }
    let conv = poisson::poisson_convolve_exact(&poly, &r)?;
    let check = poisson::contraction_check(&poly, &r, p, &params.sampler()?)?;
    let mut failure = (!check.holds()).then(|| {
        format!(
            "contraction violated: {} > {} beyond three standard errors",
            check.lhs.value, check.rhs.value
        )
    });
    let mut out = json!({
        "poly": conv,
        "p": p,
        "contraction": check,
        "holds": check.holds(),
    });
    if let Some(grid) = params.parse::<usize>("grid")? {
        let numeric = poisson::poisson_convolve_numeric(&poly, &r, grid)?;
        let diff = conv.add_scaled((-1.0).into(), &numeric)?;
        let gap = diff.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
        let tol = CONVOLVE_TOL + poisson::aliasing_bound(&poly, &r, grid)?;
        out["numeric_max_gap"] = json!(gap);
        out["numeric_tolerance"] = json!(tol);
        if gap > tol && failure.is_none() {
            failure = Some(format!("exact and grid convolution differ by {gap}"));
        }
    }
    Ok(Rendered {
        text: to_json(&out),
        failure,
    })
}

/// `log-bound`: the partial-sum ratio sweep for a gallery family.
fn log_bound_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let name: String = params.required("family")?;
    let cfg = params.sampler()?;
    let family = GalleryEntry::from_name(&name, cfg.seed(), params.get_or("sigma", DEFAULT_ZETA_SIGMA)?)?;
    let ns = match params.list::<u64>("N")? {
        Some(ns) => ns,
        None => partial_sums::octave_sweep(params.get_or("size", 1024)?),
    };
    let p = params.exponent_or(f64::INFINITY)?;
    let window = SupWindow {
        r_per_n: params.get_or("R", SupWindow::default().r_per_n)?,
        t_samples: params.get_or("t-samples", SupWindow::default().t_samples)?,
    };
    let rows = partial_sums::log_bound_experiment(&family as &dyn PolyFamily, p, &ns, &cfg, &window)?;
    Ok(match spec.format {
        Format::Json => {
            let (final_octave, overall) = partial_sums::octave_maxima(&rows);
            to_json(&json!({
                "family": family.to_string(),
                "p": fmt_p(p),
                "seed": cfg.seed(),
                "rows": rows,
                "final_octave_max": final_octave,
                "overall_max": overall,
            }))
        }
        Format::Csv => to_csv(
            &["N", "ratio", "ratio_over_log", "p", "method", "std_error"],
            rows.iter().map(|r| {
                (
                    r.n,
                    r.ratio,
                    r.ratio_over_log,
                    fmt_p(r.p),
                    r.method.to_string(),
                    r.std_error,
                )
            }),
        ),
    }
    .into())
}

/// `abel-check`: both sides of the summation-by-parts identity.
fn abel_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let d = read_dirichlet(spec)?;
    let check = partial_sums::abel_identity_check(
        &d,
        params.required("N")?,
        params.required("M")?,
        params.get_or("eps", 0.5)?,
    )?;
    let holds = check.max_coeff_gap <= IDENTITY_TOL;
    Ok(Rendered {
        text: to_json(&json!({
            "lhs": check.lhs,
            "rhs": check.rhs,
            "max_coeff_gap": check.max_coeff_gap,
            "holds": holds,
        })),
        failure: (!holds).then(|| format!("Abel identity gap {} exceeds {IDENTITY_TOL}", check.max_coeff_gap)),
    })
}

/// `criterion`: restriction norms for `unit_linear` (`--size` = number of
/// non-zero coefficients, default 5), `all_linear`, or `c0` (`--size` =
/// coefficient dimension, default 8).
fn criterion_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let name: String = params.required("family")?;
    let family: Box<dyn CoeffFamily> = match name.as_str() {
        "unit_linear" => Box::new(UnitLinear {
            k_max: params.get_or("size", 5)?,
        }),
        "all_linear" => Box::new(AllLinear),
        "c0" => Box::new(C0Family {
            dim: params.get_or("size", 8)?,
        }),
        other => {
            return Err(invalid(format!(
                "unknown criterion family {other:?}, expected unit_linear, all_linear or c0"
            )))
        }
    };
    let defaults = CriterionOptions::default();
    let opts = CriterionOptions {
        grid_per_dim: params.get_or("grid", defaults.grid_per_dim)?,
        ..defaults
    };
    let p = params.exponent_or(2.0)?;
    let cfg = params.sampler()?;
    let report = analysis::hilbert_criterion(family.as_ref(), p, params.get_or("m-max", 8)?, &cfg, &opts)?;
    Ok(match spec.format {
        Format::Json => to_json(&json!({ "seed": cfg.seed(), "report": report })),
        Format::Csv => to_csv(&["m", "norm"], report.per_m.iter().map(|r| (r.m, r.norm.value))),
    }
    .into())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// `cayley-check`: the Stolz ratio identity and the Cayley round trip on
/// the product grid `--eps x --t`. The defaults are 100 log-spaced `eps` in
/// `[1e-6, 1e2]` and 100 equispaced `t` in `[-100, 100]`.
fn cayley_cmd(spec: &ExperimentSpec, params: &Params) -> CliResult<Rendered> {
    let eps = params.list("eps")?.unwrap_or_else(|| log_grid(1e-6, 1e2, 100));
    let ts = params.list("t")?.unwrap_or_else(|| lin_grid(-100.0, 100.0, 100));
    let mut rows = Vec::with_capacity(eps.len() * ts.len());
    for &e in &eps {
        for &t in &ts {
            let (lhs, rhs) = analysis::stolz_ratio(e, t)?;
            let s = Complex64::new(e, t);
            let back = analysis::cayley(analysis::cayley_inv(s)?)?;
            rows.push((e, t, lhs, rhs, (lhs - rhs).abs() / rhs, (back - s).norm() / s.norm()));
        }
    }
    let stolz_gap = rows.iter().map(|r| r.4).fold(0.0, f64::max);
    let round_trip_gap = rows.iter().map(|r| r.5).fold(0.0, f64::max);
    let holds = stolz_gap <= IDENTITY_TOL && round_trip_gap <= IDENTITY_TOL;
    let text = match spec.format {
        Format::Json => to_json(&json!({
            "points": rows.len(),
            "max_stolz_gap": stolz_gap,
            "max_round_trip_gap": round_trip_gap,
            "holds": holds,
        })),
        Format::Csv => to_csv(&["eps", "t", "lhs", "rhs", "gap", "round_trip_gap"], rows),
    };
    Ok(Rendered {
        text,
        failure: (!holds).then(|| format!("Stolz gap {stolz_gap}, round-trip gap {round_trip_gap}")),
    })
}

/// `gallery`: a named series as polynomial JSON, with the construction
/// parameters echoed under `"gallery"`. Readers of polynomial JSON ignore
/// that field.
fn gallery_cmd(params: &Params) -> CliResult<Rendered> {
    let name: String = params.required("name")?;
    let size: u64 = params.required("size")?;
    let seed: u64 = params.get_or("seed", 0)?;
    let sigma: f64 = params.get_or("sigma", DEFAULT_ZETA_SIGMA)?;
    let entry = GalleryEntry::from_name(&name, seed, sigma).map_err(|e| invalid(e.to_string()))?;
    let d = entry.build(size)?;
    let mut value: Value = serde_json::to_value(&d).expect("polynomials serialize");
    value["gallery"] = json!({
        "name": entry.name(),
        "label": entry.to_string(),
        "size": size,
        "seed": seed,
    });
    Ok(to_json(&value).into())
}
