use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dirichlet_hardy_cli::{run, ExperimentSpec, Format, Subcommand};

/// Numerical experiments with Dirichlet polynomials and their Hardy norms.
///
/// Polynomials are read and written as JSON:
/// {"space": {"dim": d, "norm": "l1|l2|linf"}, "coeffs": [{"n": 6, "re": [..], "im": [..]}]}
/// with "alpha": [exponents] in place of "n" for power polynomials.
#[derive(Parser, Debug)]
#[command(name = "dhardy", version)]
struct Cli {
    /// One of: lift, transform, norm, translate, eps-profile, poisson,
    /// log-bound, abel-check, criterion, cayley-check, gallery
    command: String,

    /// Input polynomial JSON file
    #[arg(long)]
    input: Option<PathBuf>,

    /// Output file, written atomically; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// json or csv
    #[arg(long, default_value = "json")]
    format: String,

    /// Exponent p >= 1, or "inf"
    #[arg(long)]
    p: Option<String>,

    /// Use the closed form (p = 2 only)
    #[arg(long)]
    exact: bool,

    /// Monte-Carlo sample count
    #[arg(long)]
    samples: Option<String>,

    /// Sampler seed, 0 when omitted
    #[arg(long)]
    seed: Option<String>,

    /// iid or kronecker
    #[arg(long)]
    scheme: Option<String>,

    /// Grid points per coordinate for sup-norm scans and grid convolution
    #[arg(long)]
    grid: Option<String>,

    /// Vertical window half-length; for log-bound the multiplier of N
    #[arg(long = "R")]
    horizon: Option<String>,

    /// Number of vertical-line nodes
    #[arg(long = "t-samples")]
    t_samples: Option<String>,

    /// Comma-separated radii in [0, 1); a single value applies to every coordinate
    #[arg(long)]
    radii: Option<String>,

    /// Translation parameter, or a comma-separated decreasing grid
    #[arg(long)]
    eps: Option<String>,

    /// Imaginary part of the translation, or a comma-separated grid for cayley-check
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,

    /// Partial-sum cutoff, or a comma-separated list for log-bound
    #[arg(long = "N")]
    n: Option<String>,

    /// Upper end of the Abel block
    #[arg(long = "M")]
    m: Option<String>,

    /// Family name for log-bound (gallery names) or criterion
    #[arg(long)]
    family: Option<String>,

    /// Gallery name
    #[arg(long)]
    name: Option<String>,

    /// Size of the generated series or family
    #[arg(long)]
    size: Option<String>,

    /// Abscissa of the zeta_shift gallery entry
    #[arg(long)]
    sigma: Option<String>,

    /// Number of variables for criterion
    #[arg(long = "m-max")]
    m_max: Option<String>,
}

impl Cli {
    fn into_spec(self) -> Result<ExperimentSpec, dirichlet_hardy_cli::CliError> {
        let mut spec = ExperimentSpec::new(self.command.parse::<Subcommand>()?).format(self.format.parse::<Format>()?);
        spec.input_path = self.input;
        spec.output_path = self.out;
        let pairs = [
            ("p", self.p),
            ("samples", self.samples),
            ("seed", self.seed),
            ("scheme", self.scheme),
            ("grid", self.grid),
            ("R", self.horizon),
            ("t-samples", self.t_samples),
            ("radii", self.radii),
            ("eps", self.eps),
            ("t", self.t),
            ("N", self.n),
            ("M", self.m),
            ("family", self.family),
            ("name", self.name),
            ("size", self.size),
            ("sigma", self.sigma),
            ("m-max", self.m_max),
            ("exact", self.exact.then(|| "true".to_string())),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                spec.params.insert(key.to_string(), v);
            }
        }
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let result = Cli::parse().into_spec().and_then(|spec| run(&spec));
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dhardy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
