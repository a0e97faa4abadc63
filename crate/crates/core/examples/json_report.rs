//! The full analysis pipeline as a library call, printed as JSON.
//!
//!     cargo run --example json_report -- data/cusp34.toml

use std::path::PathBuf;

use curvelat::cli::{run, RunConfig};

fn main() -> curvelat::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/cusp34.toml"));
    let report = run(&RunConfig::load(&path)?)?;
    print!("{}", report.to_json());
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == curvelat::cli::Status::Fail).map(|c| c.name.as_str()).collect();
    eprintln!("{} checks, failed: {failed:?}", report.checks.len());
    Ok(())
}
