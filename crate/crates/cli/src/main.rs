use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use hecke_cellular_cli::{run, Command, Format, RunConfig, CACHE_ENV};

/// Exact Kazhdan-Lusztig cells, the asymptotic ring J and integral cellular
/// bases of Iwahori-Hecke algebras of finite Weyl groups.
#[derive(Parser)]
#[command(name = "hecke-cellular", version)]
struct Cli {
    /// Stage to compute.
    #[arg(value_enum)]
    command: Command,
    /// Cartan type, e.g. A3, B2, G2.
    #[arg(long = "type", short = 't')]
    cartan_type: String,
    /// Weights of the simple reflections, comma separated. Defaults to all 1.
    #[arg(long, short = 'w')]
    weights: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    out: Format,
    /// Directory for cached Kazhdan-Lusztig tables.
    #[arg(long, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Worker threads for table builds.
    #[arg(long, short = 'j')]
    jobs: Option<usize>,
    /// Seed for splitting reducible representations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compare against an embedded reference table (`b2`).
    #[arg(long)]
    golden: Option<String>,
    /// Specialization point, `v=<value>`.
    #[arg(long, default_value = "v=1")]
    at: String,
    /// Target field: `Q`, `Fp:<p>` or `Cyc:<e>`.
    #[arg(long, default_value = "Q")]
    field: String,
    /// With `verify`, also run the specialization suites.
    #[arg(long)]
    all: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        cartan_type: cli.cartan_type,
        weights: cli.weights,
        command: cli.command,
        format: cli.out,
        cache_dir: cli.cache,
        jobs: cli.jobs,
        seed: cli.seed,
        golden: cli.golden,
        at: cli.at,
        field: cli.field,
        all: cli.all,
    };
    let outcome = run(&cfg);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
