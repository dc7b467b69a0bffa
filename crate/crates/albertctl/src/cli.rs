//! Command-line verbs and the exit-code contract: 0 on success, 1 when a
//! suite fails, 2 on configuration or construction errors.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use albert_core::albert::division_probe;
use clap::{Args, Parser, Subcommand};

use crate::config::{self, Built, RunConfig};
use crate::error::CtlError;
use crate::eval::eval_expr;
use crate::suites::run_all;

#[derive(Debug, Parser)]
#[command(name = "albertctl", version, about = "Construct and check Albert algebras exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Named fixture: split-f7, split-q, h3-zorn, cyclic7-q or division-qs.
    /// Replaces the algebra of `--config`.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Overrides the config seed (0 when there is no config).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct the algebra and dump its structure constants as JSON.
    Build {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the configured suites, printing one JSON report per line.
    Check {
        #[command(flatten)]
        source: Source,
        /// Append reports to this JSONL file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an expression such as `norm(unit)` or `u-op(e0; unit)`.
    Eval {
        #[command(flatten)]
        source: Source,
        expression: String,
    },
    /// Search for nonzero elements of norm zero.
    ProbeDivision {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Config plus the directory that relative paths in it resolve against.
fn resolve(source: &Source) -> Result<(RunConfig, PathBuf), CtlError> {
    let (mut cfg, base) = match &source.config {
        Some(path) => {
            let cfg = config::load_config(path)?;
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (cfg, base)
        }
        None => {
            let Some(name) = &source.fixture else {
                return Err(CtlError::Usage("give --config or --fixture".into()));
            };
            let text = serde_json::json!({ "fixture": name, "seed": 0 }).to_string();
            (config::parse_config(&text)?, PathBuf::new())
        }
    };
    if let Some(name) = &source.fixture {
        cfg.fixture = Some(name.clone());
        cfg.field = None;
        cfg.algebra = None;
        if !albert_core::fixtures::NAMES.contains(&name.as_str()) {
            return Err(CtlError::UnknownFixture(name.clone()));
        }
    }
    if let Some(seed) = source.seed {
        cfg.seed = seed;
    }
    Ok((cfg, base))
}

fn configure_threads() -> Result<(), CtlError> {
    let Ok(raw) = std::env::var("ALBERTCTL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CtlError::Usage(format!("ALBERTCTL_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CtlError::Usage(e.to_string()))
}

fn write_out(path: &Path, text: &str, append: bool) -> Result<(), CtlError> {
    let io = |e: std::io::Error| CtlError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut file = OpenOptions::new()
        .create(true)
        .write(true)
        .append(append)
        .truncate(!append)
        .open(path)
        .map_err(io)?;
    file.write_all(text.as_bytes()).map_err(io)
}

fn build(source: &Source) -> Result<(RunConfig, PathBuf, Built), CtlError> {
    let (cfg, base) = resolve(source)?;
    let built = config::build(&cfg, &base)?;
    Ok((cfg, base, built))
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> Result<ExitCode, CtlError> {
    configure_threads()?;
    match cli.command {
        Command::Build { source, out } => {
            let (_, _, built) = build(&source)?;
            let json = serde_json::to_string(&built.jordan().table().to_json()).expect("table serializes");
            match out {
                Some(path) => write_out(&path, &(json + "\n"), false)?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { source, out } => {
            let (cfg, base, built) = build(&source)?;
            let out = out.or_else(|| cfg.output.as_ref().map(|p| base.join(p)));
            let reports = run_all(&cfg, &built);
            let mut lines = String::new();
            for r in &reports {
                lines.push_str(&serde_json::to_string(r).expect("report serializes"));
                lines.push('\n');
            }
            print!("{lines}");
            if let Some(path) = out {
                write_out(&path, &lines, true)?;
            }
            let failed = reports.iter().any(|r| !r.passed);
            Ok(ExitCode::from(u8::from(failed)))
        }
        Command::Eval { source, expression } => {
            let (_, _, built) = build(&source)?;
            println!("{}", eval_expr(&built, &expression)?.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::ProbeDivision { source, trials, out } => {
            let (cfg, _, built) = build(&source)?;
            let report = division_probe(built.normed(), trials, cfg.seed)?;
            let json = serde_json::to_string(&report).expect("report serializes");
            match out {
                Some(path) => write_out(&path, &(json + "\n"), true)?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
