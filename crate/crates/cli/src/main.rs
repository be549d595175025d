use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use rabiqed_cli::experiment::invariant_suite;
use rabiqed_cli::{parse_config, parse_thread_cap, run_experiment, write_output, CliError, Format, THREADS_ENV};
use rabiqed_core::exec::{self, Execution};

#[derive(Parser)]
#[command(
    name = "rabiqed",
    version,
    about = "Spin-1/2 magnetic resonance: semiclassical, quantized and fermionic models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides `output.path`. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `output.format`.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Run the operator-identity suite; exits 0 when every check passes.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn run(config: PathBuf, out: Option<PathBuf>, format: Option<FormatArg>) -> Result<(), CliError> {
    let text = fs::read_to_string(&config).map_err(|source| CliError::ReadConfig { path: config, source })?;
    let mut cfg = parse_config(&text)?;
    if let Some(p) = out {
        cfg.output.path = Some(p);
    }
    if let Some(f) = format {
        cfg.output.format = f.into();
    }
    let start = Instant::now();
    let table = run_experiment(&cfg, Execution::Parallel)?;
    // Timing stays off the artifact so repeated runs are byte-identical.
    eprintln!(
        "{}: {} rows in {:.3}s",
        cfg.experiment,
        table.rows().len(),
        start.elapsed().as_secs_f64()
    );
    write_output(&table, cfg.output.path.as_deref(), cfg.output.format)
}

fn check() -> Result<bool, CliError> {
    let suite = invariant_suite()?;
    for c in &suite {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {} (max deviation {:e}, tolerance {:e})",
            c.name, c.max_deviation, c.tolerance
        );
    }
    let failed = suite.iter().filter(|c| !c.passed()).count();
    println!("{} checks, {failed} failed", suite.len());
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match parse_thread_cap(std::env::var(THREADS_ENV).ok().as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let outcome = exec::with_thread_cap(threads, move || match cli.command {
        Command::Run { config, out, format } => run(config, out, format).map(|()| true),
        Command::Check => check(),
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
