//! `symlab`: run symmetrization experiments, built-in demos and renderings.
//!
//! Exit codes: 0 on success, 1 on configuration or usage errors, 2 when a
//! checked invariant fails.

mod config;
mod demo;
mod render;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Usage(String),
    Io(String),
    Assertion(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Assertion(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Assertion(m) => write!(f, "assertion failed: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "symlab", version, about = "Iterated Minkowski, fiber and Steiner symmetrization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML or JSON config.
    Run { config: PathBuf },
    /// Run a built-in reproduction and print its pass/fail table.
    Demo {
        /// One of klain-two-point, idempotency-1d, sfs-gap, boundary-sum, fiber-3d, hadwiger.
        name: String,
    },
    /// Render a 1-D or 2-D set file as SVG.
    Render {
        set: PathBuf,
        out: PathBuf,
        /// Render layer z = k of a 3-D set.
        #[arg(long)]
        slice: Option<i64>,
    },
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SYMLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("SYMLAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot size the thread pool: {e}")))
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    init_threads()?;
    match cmd {
        Command::Run { config } => {
            let plan = config::load(&config)?;
            let (mut stdout, mut stderr) = (std::io::stdout().lock(), std::io::stderr().lock());
            run::execute(&plan, &mut stdout, &mut stderr).map(|_| ())
        }
        Command::Demo { name } => {
            if demo::run(&name, &mut std::io::stdout().lock())? {
                Ok(())
            } else {
                Err(CliError::Assertion(format!("demo {name} has failing lines")))
            }
        }
        Command::Render { set, out, slice } => {
            let text = std::fs::read_to_string(&set).map_err(|e| CliError::Io(format!("{}: {e}", set.display())))?;
            let rep = symlab_core::parse_set(&text).map_err(|e| CliError::Usage(format!("{}: {e}", set.display())))?;
            let rep = match slice {
                Some(k) => render::slice(&rep, k)?,
                None => rep,
            };
            let svg = render::svg(&rep)?;
            std::fs::write(&out, svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.exit_code() == 0 => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "symlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
