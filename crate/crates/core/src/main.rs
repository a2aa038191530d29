use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use mcbdqm::app::{self, Mode, PartialConfig, RunConfig};
use mcbdqm::Error;

/// Coupled viscous Burgers solver (modified cubic B-spline DQM + SSP-RK54).
#[derive(Debug, Parser)]
#[command(name = "mcbdqm", version)]
struct Cli {
    /// TOML file with any of the options below; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// solve | converge | table-check
    #[arg(long)]
    mode: Option<String>,
    /// fletcher | sincos
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    re: Option<f64>,
    /// Intervals along x (nodes = nx + 1).
    #[arg(long)]
    nx: Option<usize>,
    /// Intervals along y; defaults to nx.
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Comma-separated output times.
    #[arg(long, value_delimiter = ',')]
    snapshots: Option<Vec<f64>>,
    /// Output directory (default: $MCBDQM_OUT or ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated interval counts for converge mode.
    #[arg(long, value_delimiter = ',')]
    grids: Option<Vec<usize>>,
    /// Reference table id for table-check mode: 2, 3 or 6.
    #[arg(long)]
    table: Option<u8>,
    /// Also write the four weight matrices as CSV.
    #[arg(long)]
    dump_weights: bool,
}

fn build_config(cli: Cli) -> Result<RunConfig, Error> {
    let file = match &cli.config {
        Some(path) => PartialConfig::from_toml_file(path)?,
        None => PartialConfig::default(),
    };
    let flags = PartialConfig {
        problem: cli.problem,
        re: cli.re,
        nx: cli.nx,
        ny: cli.ny,
        dt: cli.dt,
        t_end: cli.t_end,
        snapshots: cli.snapshots,
        out: cli.out,
        mode: cli.mode.as_deref().map(str::parse::<Mode>).transpose()?,
        grids: cli.grids,
        table: cli.table,
        dump_weights: cli.dump_weights.then_some(true),
    };
    RunConfig::resolve(file.overlay(flags))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| app::run(&cfg));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
