mod commands;
mod report;
mod terms;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kq_core::ErrorKind;

use crate::report::Format;

/// Spectra of q-deformed Laplacians on compact quantum groups.
#[derive(Debug, Parser)]
#[command(name = "kq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TypeArg {
    /// Type label such as `A2` or `A1xB2`.
    #[arg(long = "type", value_name = "LABEL")]
    pub ty: String,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Laplacian term `mu=1,0:a=1[:zeta=0,0]`; repeatable.
    #[arg(long = "term", value_name = "TERM", required = true)]
    pub terms: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue table over a ball of dominant weights, with lower bound and minimum.
    Spectrum {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Bound on `(lambda, lambda)`, as `p`, `p/q` or a decimal.
        #[arg(long)]
        radius: String,
    },
    /// Distance to the classical eigenvalue at q = 0.9, 0.99, 0.999.
    Limit {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        spec: SpecArgs,
        /// Weights to tabulate; repeatable. Defaults to all of coordinate sum <= --max-height.
        #[arg(long = "lambda", value_name = "COORDS")]
        lambdas: Vec<String>,
        #[arg(long, default_value_t = 4)]
        max_height: u32,
    },
    /// Non-Markovianity witness per weight, with the semigroup verdict.
    Witness {
        #[command(flatten)]
        ty: TypeArg,
        /// Weight to test; repeatable. Defaults to every nonzero weight of coordinate sum <= --max-height.
        #[arg(long = "mu", value_name = "COORDS")]
        mus: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_height: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// Bicovariant first-order calculi and the functionals inducing them.
    Fodc {
        #[command(subcommand)]
        action: FodcAction,
    },
    /// Heat trace over a time grid, or heat evolution of block coefficients.
    Heat {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Time; repeatable. Defaults to 0.1, 0.5, 1, 2, 5, 10.
        #[arg(long = "t", value_name = "T", allow_negative_numbers = true)]
        times: Vec<f64>,
        #[arg(long)]
        radius: Option<String>,
        /// JSON list of `{lambda, matrix}` blocks to evolve to the single given time.
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// The center `P^vee / Q^vee` and its half-coroot classes.
    Center {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Weights and multiplicities of an irreducible representation.
    Weights {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, value_name = "COORDS")]
        mu: String,
    },
}

#[derive(Debug, Subcommand)]
enum FodcAction {
    /// Every index built from pairs of bounded height.
    Enumerate {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value_t = 1)]
        max_height: u32,
        #[arg(long)]
        include_center: bool,
        #[arg(long, default_value_t = kq_core::fodc::DEFAULT_INDEX_CAP)]
        cap: usize,
    },
    /// Self-adjointness, Hermiticity and Laplacian conditions for a functional.
    Validate {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Dimension and star structure of an index.
    Index {
        #[command(flatten)]
        ty: TypeArg,
        /// Pair `zeta=0,0:mu=1,0`; repeatable.
        #[arg(long = "pair", value_name = "PAIR")]
        pairs: Vec<String>,
        /// JSON list of `{zeta, mu}` pairs.
        #[arg(long)]
        index_file: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kq_core::Error),
    #[error("rejected: {}", .0.join("; "))]
    Rejected(Vec<String>),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Rejected(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Invariant => 2,
                ErrorKind::Resource => 3,
            },
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let report = match cli.command {
        Command::Spectrum {
            ty,
            spec,
            q,
            radius,
        } => commands::spectrum(&ty.ty, &spec.terms, q, &radius)?,
        Command::Limit {
            ty,
            spec,
            lambdas,
            max_height,
        } => commands::limit(&ty.ty, &spec.terms, &lambdas, max_height)?,
        Command::Witness {
            ty,
            mus,
            max_height,
            q,
        } => commands::witness(&ty.ty, &mus, max_height, q)?,
        Command::Fodc { action } => match action {
            FodcAction::Enumerate {
                ty,
                max_height,
                include_center,
                cap,
            } => commands::fodc_enumerate(&ty.ty, max_height, include_center, cap)?,
            FodcAction::Validate { ty, spec } => commands::fodc_validate(&ty.ty, &spec.terms)?,
            FodcAction::Index {
                ty,
                pairs,
                index_file,
            } => commands::fodc_index(&ty.ty, &pairs, index_file.as_deref())?,
        },
        Command::Heat {
            ty,
            spec,
            q,
            times,
            radius,
            coeffs,
        } => commands::heat(
            &ty.ty,
            &spec.terms,
            q,
            &times,
            radius.as_deref(),
            coeffs.as_deref(),
        )?,
        Command::Center { ty } => commands::center(&ty.ty)?,
        Command::Weights { ty, mu } => commands::weights(&ty.ty, &mu)?,
    };
    Ok(report.render(cli.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.output.clone();
    let text = match run(cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("kq: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &output {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
