use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use curvelat::cli::{self, parse_outputs, parse_weights, Format, Output, RunConfig};

/// Lattice homology, spectral pages and Poincaré series of curve singularities.
#[derive(Parser, Debug)]
#[command(name = "curvelat", version)]
struct Args {
    /// Curve document (JSON or TOML).
    #[arg(long)]
    input: PathBuf,
    /// Largest weight level to compute.
    #[arg(long)]
    n_max: Option<i64>,
    /// Bound on |l| for the multivariable series.
    #[arg(long)]
    t_max: Option<i64>,
    /// Level weights a1,..,ar for the filtration.
    #[arg(long)]
    weights: Option<String>,
    /// Comma-separated outputs, e.g. homology,pages,pe.
    #[arg(long)]
    emit: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Run the checks only and print their summary.
    #[arg(long)]
    check_only: bool,
}

fn configure(args: &Args) -> curvelat::Result<RunConfig> {
    let mut cfg = RunConfig::load(&args.input)?;
    if args.n_max.is_some() {
        cfg.n_max = args.n_max;
    }
    if args.t_max.is_some() {
        cfg.t_max = args.t_max;
    }
    if let Some(w) = &args.weights {
        cfg.weights = Some(parse_weights(w)?);
    }
    if let Some(e) = &args.emit {
        cfg.outputs = Some(parse_outputs(e)?);
    }
    if args.check_only {
        cfg.outputs = Some([Output::Checks].into_iter().collect());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = configure(&args).and_then(|cfg| {
        let format = args.format.or(cfg.format).unwrap_or_default();
        cli::run(&cfg).map(|r| (r, format))
    });
    match result {
        Ok((report, format)) => {
            print!("{}", cli::render(&report, format));
            let code = if report.failed() { cli::EXIT_INVARIANT } else { cli::EXIT_OK };
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
