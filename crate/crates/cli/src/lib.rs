//! Command-line experiments on periodic prolate matrices.
//!
//! Every command writes one table (CSV, or JSON with the full reports) and,
//! for CSV output to a file, a gnuplot script next to it. Exit status:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a requested certification failed |
//! | 2 | usage or parameter error |
//! | 3 | numerical failure (solver did not converge) |
//!
//! Non-zero exits print one JSON failure record to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prolate::eigen::Method;
use prolate::{Error, ProlateParams};

mod commands;
pub mod params;
pub mod report;

use params::{KeyValues, UsageError};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Default epsilon list.
pub const DEFAULT_EPSILONS: [f64; 4] = [1e-3, 1e-6, 1e-9, 1e-12];

#[derive(Debug, Parser)]
#[command(
    name = "prolate",
    version,
    about = "Spectra and certificates for periodic prolate matrices"
)]
pub struct Cli {
    /// Output file; stdout if omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads for sweeps. Output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Eigenvalues of [B_{M,W}]_N: `eigs M=1024 N=256 K=128 [method=ql|jacobi]`.
    Eigs {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Transition-band width against 2R: `transition M=.. N=.. K=.. [eps=..]`
    /// or `transition ratio-sweep M=64..4096 [eps=..]` (N = M/4, K = M/8).
    Transition {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// All three transition verdicts, for `M N K` or for DFT blocks
    /// `M=.. p=.. [offsets=r:c,..]`.
    Certify {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Singular values of the M/p x M/p DFT block: `dft-sub M=.. p=.. [offsets=r:c]`.
    #[command(name = "dft-sub")]
    DftSub {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Low-rank plus small-norm split: `decompose M=.. N=.. K=.. [eps=..]`.
    Decompose {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
    /// Commuting tridiagonal fit and its eigenvectors: `commute M=.. N=.. K=..`.
    Commute {
        #[arg(value_name = "KEY=VALUE")]
        args: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Eigs,
    Transition,
    Certify,
    DftSub,
    Decompose,
    Commute,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Eigs => "eigs",
            CommandKind::Transition => "transition",
            CommandKind::Certify => "certify",
            CommandKind::DftSub => "dft-sub",
            CommandKind::Decompose => "decompose",
            CommandKind::Commute => "commute",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Prolate(ProlateParams),
    /// `N = M/4`, `K = M/8` (lowered if `2K + 1 >= M`).
    RatioSweep(Vec<ProlateParams>),
    DftBlock {
        m: usize,
        p: usize,
        offsets: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub target: Target,
    pub epsilon_list: Vec<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Certification {
        command: &'static str,
        failures: Vec<Value>,
    },
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Certification { .. } => EXIT_CERTIFICATION,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    /// The JSON record printed to stderr.
    pub fn record(&self) -> Value {
        match self {
            Failure::Usage(msg) => {
                json!({ "status": "usage_error", "exit_code": EXIT_USAGE, "message": msg })
            }
            Failure::Certification { command, failures } => json!({
                "status": "certification_failure",
                "exit_code": EXIT_CERTIFICATION,
                "command": command,
                "failures": failures,
            }),
            Failure::Numerical(msg) => {
                json!({ "status": "numerical_failure", "exit_code": EXIT_NUMERICAL, "message": msg })
            }
        }
    }
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Dimension(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let (command, args) = match &cli.command {
            CliCommand::Eigs { args } => (CommandKind::Eigs, args),
            CliCommand::Transition { args } => (CommandKind::Transition, args),
            CliCommand::Certify { args } => (CommandKind::Certify, args),
            CliCommand::DftSub { args } => (CommandKind::DftSub, args),
            CliCommand::Decompose { args } => (CommandKind::Decompose, args),
            CliCommand::Commute { args } => (CommandKind::Commute, args),
        };
        let mut kv = KeyValues::parse(args)?;

        let target = match command {
            CommandKind::Transition if kv.take_word("ratio-sweep") => {
                let ms = kv.take_sizes("M")?.ok_or_else(|| {
                    UsageError("ratio-sweep needs M=<lo>..<hi> or M=<list>".into())
                })?;
                Target::RatioSweep(ms.into_iter().map(ratio_params).collect::<Result<_, _>>()?)
            }
            CommandKind::DftSub => dft_target(&mut kv, true)?,
            CommandKind::Certify if kv.has("p") => dft_target(&mut kv, false)?,
            _ => {
                let m = kv.require_usize("M")?;
                let n = kv.require_usize("N")?;
                let k = kv.require_usize("K")?;
                Target::Prolate(ProlateParams::new(m, n, k)?)
            }
        };

        let takes_epsilon = matches!(
            command,
            CommandKind::Transition | CommandKind::Certify | CommandKind::Decompose
        );
        let epsilon_list = if takes_epsilon {
            let list = kv
                .take_reals("eps")?
                .unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
            if let Some(bad) = list.iter().find(|e| !(**e > 0.0 && **e < 0.5)) {
                return Err(Failure::Usage(format!("eps = {bad} outside (0, 1/2)")));
            }
            list
        } else {
            Vec::new()
        };

        let method = match (command, kv.take_raw("method").as_deref()) {
            (_, None) => Method::HouseholderQl,
            (CommandKind::Eigs, Some("ql")) => Method::HouseholderQl,
            (CommandKind::Eigs, Some("jacobi")) => Method::Jacobi,
            (CommandKind::Eigs, Some(other)) => {
                return Err(Failure::Usage(format!(
                    "method must be ql or jacobi, got '{other}'"
                )))
            }
            (_, Some(_)) => return Err(Failure::Usage("method= only applies to eigs".into())),
        };
        kv.finish()?;

        Ok(RunConfig {
            command,
            target,
            epsilon_list,
            output_path: cli.out.clone(),
            format: cli.format,
            jobs: cli.jobs as usize,
            method,
        })
    }
}

fn ratio_params(m: usize) -> Result<ProlateParams, Failure> {
    let n = m / 4;
    let mut k = m / 8;
    if 2 * k + 1 >= m {
        k = m.saturating_sub(2) / 2;
    }
    ProlateParams::new(m, n.max(1), k).map_err(Failure::from)
}

fn dft_target(kv: &mut KeyValues, single: bool) -> Result<Target, Failure> {
    let m = kv.require_usize("M")?;
    let p = kv.require_usize("p")?;
    if m == 0 || p == 0 || m % p != 0 {
        return Err(Failure::Usage(format!("p = {p} must divide M = {m}")));
    }
    let offsets = kv.take_offsets("offsets")?.unwrap_or_else(|| vec![(0, 0)]);
    if single && offsets.len() != 1 {
        return Err(Failure::Usage("dft-sub takes a single offsets=r:c".into()));
    }
    Ok(Target::DftBlock { m, p, offsets })
}

/// Runs one configured command and writes its outputs.
pub fn run(config: &RunConfig) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Failure::Numerical(format!("thread pool: {e}")))?;
    let report = pool.install(|| commands::execute(config))?;
    write_outputs(config, &report)?;
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Certification {
            command: config.command.name(),
            failures: report.failures.clone(),
        })
    }
}

fn write_outputs(config: &RunConfig, report: &Report) -> Result<(), Failure> {
    let body = match config.format {
        Format::Csv => report.table.to_csv(),
        Format::Json => report.to_json(config.command.name()),
    };
    let io = |path: &Path, e: std::io::Error| {
        Failure::Usage(format!("cannot write {}: {e}", path.display()))
    };
    match &config.output_path {
        Some(path) => {
            fs::write(path, &body).map_err(|e| io(path, e))?;
            if let (Format::Csv, Some(plot)) = (config.format, &report.plot) {
                let script = plot_path(path);
                let data = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                fs::write(&script, plot.render(&data)).map_err(|e| io(&script, e))?;
            }
        }
        None => {
            std::io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| Failure::Usage(format!("cannot write stdout: {e}")))?;
        }
    }
    Ok(())
}

/// `eigs.csv` -> `eigs.gp`.
pub fn plot_path(out: &Path) -> PathBuf {
    out.with_extension("gp")
}

/// Parses `args` (including the program name), runs, and returns the exit
/// status. Failure records go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let _ = e.print();
            let failure = Failure::Usage(e.kind().to_string());
            eprintln!("{}", failure.record());
            return failure.exit_code();
        }
    };
    match RunConfig::from_cli(&cli).and_then(|config| run(&config)) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("{}", failure.record());
            failure.exit_code()
        }
    }
}
