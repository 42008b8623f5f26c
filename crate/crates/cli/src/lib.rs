//! Command-line driver: builds the requested stage for one Weyl group and
//! weight function, prints it as text or JSON, and runs the verification
//! suites.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use sha2::{Digest, Sha256};
use thiserror::Error;

use hecke_cellular::cellmod::Specialization;
use hecke_cellular::coxeter::{CartanType, CoxeterGroup, WeightFunction, DEFAULT_ORDER_CAP};
use hecke_cellular::hecke::CACHE_FORMAT;
use hecke_cellular::pipeline::{Pipeline, Tables};
use hecke_cellular::report::Report;

pub mod golden;
mod output;

/// Environment variable naming the cache directory when `--cache` is absent.
pub const CACHE_ENV: &str = "HECKE_CELLULAR_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Group,
    Kl,
    Cells,
    Jring,
    Reps,
    Cellular,
    Specialize,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cartan_type: String,
    /// Comma separated weights; equal parameters when absent.
    pub weights: Option<String>,
    pub command: Command,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub golden: Option<String>,
    /// Image of `v` for `specialize`, as `v=<value>`.
    pub at: String,
    /// Target field for `specialize`: `Q`, `Fp:<p>` or `Cyc:<e>`.
    pub field: String,
    /// `verify` also runs the specialization suites.
    pub all: bool,
}

impl RunConfig {
    pub fn new(command: Command, cartan_type: &str) -> Self {
        Self {
            cartan_type: cartan_type.to_string(),
            weights: None,
            command,
            format: Format::Text,
            cache_dir: None,
            jobs: None,
            seed: 0,
            golden: None,
            at: "v=1".into(),
            field: "Q".into(),
            all: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hecke_cellular::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use hecke_cellular::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::UnsupportedType(_) | E::OrderCap { .. } => 3,
                E::Property { .. } | E::Representation(_) => 1,
                E::Degenerate(_) | E::InvalidWeights(_) | E::DegenerateWeight(_) | E::Specialization(_) | E::Io(_) => 2,
            },
        }
    }
}

/// What a run prints, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit status when every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification or golden comparison failed.
pub const EXIT_FAILED: i32 = 1;

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))
            .and_then(|pool| pool.install(|| execute(cfg))),
        None => execute(cfg),
    };
    match result {
        Ok((passed, stdout)) => {
            Outcome { code: if passed { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn parse_type(cfg: &RunConfig) -> Result<(CartanType, WeightFunction), CliError> {
    let cartan: CartanType = cfg.cartan_type.parse()?;
    let weights = match &cfg.weights {
        Some(w) => WeightFunction::parse(cartan, w)?,
        None => WeightFunction::equal(cartan.rank),
    };
    Ok((cartan, weights))
}

/// `<dir>/<sha256 of type, weights and format>.json`.
pub fn cache_path(dir: &Path, cartan: CartanType, weights: &WeightFunction) -> PathBuf {
    let key = format!("{cartan}|{:?}|{CACHE_FORMAT}", weights.values());
    dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
}

fn tables(cfg: &RunConfig) -> Result<Tables, CliError> {
    let (cartan, weights) = parse_type(cfg)?;
    let cache = cfg.cache_dir.as_ref().map(|d| cache_path(d, cartan, &weights));
    Ok(Tables::build(cartan, weights, DEFAULT_ORDER_CAP, cache.as_deref())?)
}

fn pipeline(cfg: &RunConfig) -> Result<Pipeline, CliError> {
    Ok(Pipeline::build(tables(cfg)?, cfg.seed)?)
}

fn check_golden_name(cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.golden {
        Some(g) if !golden::NAMES.contains(&g.as_str()) => {
            Err(CliError::Usage(format!("unknown golden table `{g}`; known: {:?}", golden::NAMES)))
        }
        _ => Ok(()),
    }
}

/// Runs the command; returns whether all checks passed and the rendered output.
fn execute(cfg: &RunConfig) -> Result<(bool, String), CliError> {
    check_golden_name(cfg)?;
    let json = cfg.format == Format::Json;
    match cfg.command {
        Command::Group => {
            let (cartan, weights) = parse_type(cfg)?;
            let g = CoxeterGroup::build(cartan, DEFAULT_ORDER_CAP)?;
            Ok((true, output::group(&g, &weights, json)))
        }
        Command::Kl => {
            let t = tables(cfg)?;
            Ok((true, output::kl(&t, json)))
        }
        Command::Cells => Ok((true, output::cells(&pipeline(cfg)?, json))),
        Command::Jring => Ok((true, output::jring(&pipeline(cfg)?, json))),
        Command::Reps => Ok((true, output::reps(&pipeline(cfg)?, json))),
        Command::Cellular => {
            let p = pipeline(cfg)?;
            let report = hecke_cellular::cellular::check_axioms(&p.datum, &p.axiom_inputs());
            let gold = golden_report(cfg, &p)?;
            let passed = report.all_passed() && gold.as_ref().is_none_or(golden::GoldenReport::passed);
            Ok((passed, output::cellular(&p, &report, gold.as_ref(), json)))
        }
        Command::Specialize => {
            let sp = Specialization::parse(&cfg.field, &cfg.at)?;
            let p = pipeline(cfg)?;
            let data = p.specialize(&sp)?;
            Ok((data.report.all_passed(), output::specialized(&p, &data, json)))
        }
        Command::Verify => {
            let p = pipeline(cfg)?;
            let report = verify_pipeline(cfg, &p)?;
            let gold = golden_report(cfg, &p)?;
            let passed = report.all_passed() && gold.as_ref().is_none_or(golden::GoldenReport::passed);
            Ok((passed, output::verify(&p, &report, gold.as_ref(), json)))
        }
    }
}

fn golden_report(cfg: &RunConfig, p: &Pipeline) -> Result<Option<golden::GoldenReport>, CliError> {
    match &cfg.golden {
        None => Ok(None),
        Some(name) => golden::compare(name, p)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("golden table `{name}` applies to B2 with weights 1,1 only"))),
    }
}

/// Every verification suite for the configured group as one report.
pub fn verify_all(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = pipeline(cfg)?;
    verify_pipeline(cfg, &p)
}

fn verify_pipeline(cfg: &RunConfig, p: &Pipeline) -> Result<Report, CliError> {
    let mut report = p.verify();
    if cfg.all {
        let n = p.group().order() as u64;
        let mut targets = vec![("Q".to_string(), "v=1".to_string())];
        targets.extend(
            hecke_cellular::cellmod::SUPPORTED_PRIMES
                .iter()
                .filter(|&&q| n.is_multiple_of(q) && !p.bad_primes.contains(&q))
                .map(|q| (format!("Fp:{q}"), "v=1".to_string())),
        );
        for (field, at) in targets {
            let data = p.specialize(&Specialization::parse(&field, &at)?)?;
            for c in data.report.checks {
                report.checks.push(hecke_cellular::report::Check { name: format!("{} ({field}, {at})", c.name), ..c });
            }
            if field == "Q" {
                let identity = data
                    .decomposition
                    .iter()
                    .enumerate()
                    .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == usize::from(i == j)));
                report.record(
                    "decomposition matrix at v = 1 over Q is the identity",
                    if identity { Ok(()) } else { Err(format!("{:?}", data.decomposition)) },
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecke_cellular::Error as E;

    #[test]
    fn exit_codes() {
        let code = |e: E| CliError::from(e).exit_code();
        assert_eq!(code(E::UnsupportedType("X2".into())), 3);
        assert_eq!(code(E::OrderCap { name: "E8".into(), order: 696729600, cap: 1200 }), 3);
        assert_eq!(code(E::property("P1", "w")), EXIT_FAILED);
        assert_eq!(code(E::Representation("no split".into())), EXIT_FAILED);
        assert_eq!(code(E::InvalidWeights("length".into())), 2);
        assert_eq!(code(E::Specialization("bad prime".into())), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn cache_key_depends_on_weights() {
        let dir = Path::new("/tmp");
        let b2: CartanType = "B2".parse().unwrap();
        let a = cache_path(dir, b2, &WeightFunction::equal(2));
        let b = cache_path(dir, b2, &WeightFunction::parse(b2, "2,1").unwrap());
        assert_ne!(a, b);
        assert_eq!(a, cache_path(dir, b2, &WeightFunction::parse(b2, "1,1").unwrap()));
    }

    #[test]
    fn golden_requires_b2() {
        let mut cfg = RunConfig::new(Command::Cellular, "A2");
        cfg.golden = Some("b2".into());
        assert_eq!(run(&cfg).code, 2);
        cfg.cartan_type = "B2".into();
        assert_eq!(run(&cfg).code, EXIT_OK);
    }
}
