//! `coinduct`: runs experiment specs and writes deterministic JSON reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use coinduct::dsl::{parse_spec, run_experiment, DslError, Report, RunOptions};
use coinduct::x1::JumpTable;
use coinduct::Exec;

#[derive(Parser)]
#[command(
    name = "coinduct",
    version,
    about = "Co-induced systems, independence sets and pattern entropy"
)]
struct Cli {
    /// Run the engines on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a spec file and print its JSON report.
    Run {
        spec: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the CSV table (entropy only) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Parse a spec and print its canonical form.
    Parse { spec: PathBuf },
    /// Pattern complexity and h* bounds for a declared system and cover.
    Entropy {
        /// File with declarations only; the verb is built from the flags.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        cover: String,
        #[arg(long)]
        n: u32,
        /// `ball(R)` or an element list such as `[0, 1, 5]`.
        #[arg(long)]
        pool: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the jump table of the X1 construction as JSON.
    JumpTable {
        #[arg(long, default_value_t = 3)]
        levels: u32,
    },
}

enum Failure {
    Dsl(DslError),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Dsl(e) => e.exit_code() as u8,
            Failure::Usage(_) => 3,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Dsl(e) => write!(f, "{e}"),
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Stdout write; a reader that hung up early is not an error.
fn stdout(text: &str) -> Result<(), Failure> {
    let mut lock = std::io::stdout().lock();
    match lock.write_all(text.as_bytes()).and_then(|_| lock.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Io(format!("stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn budget() -> Result<Option<u64>, Failure> {
    match std::env::var("COINDUCT_BUDGET") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "COINDUCT_BUDGET must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn emit(
    report: &Report,
    out: Option<&Path>,
    csv: Option<&Path>,
    started: Instant,
) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, &report.json)?,
        None => stdout(&report.json)?,
    }
    if let (Some(p), Some(rows)) = (csv, &report.csv) {
        write(p, rows)?;
    }
    eprint!("{}", report.table);
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = RunOptions {
        budget: budget()?,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    };
    let started = Instant::now();
    match cli.command {
        Command::Run { spec, out, csv } => {
            let spec = parse_spec(&read(&spec)?).map_err(|e| Failure::Dsl(e.into()))?;
            let report = run_experiment(&spec, &opts).map_err(Failure::Dsl)?;
            emit(&report, out.as_deref(), csv.as_deref(), started)
        }
        Command::Parse { spec } => {
            let spec = parse_spec(&read(&spec)?).map_err(|e| Failure::Dsl(e.into()))?;
            stdout(&spec.to_string())
        }
        Command::Entropy {
            spec,
            system,
            cover,
            n,
            pool,
            out,
            csv,
        } => {
            let mut text = read(&spec)?;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text.push_str(&format!(
                "pool cli_pool = {pool}\nentropy cover={cover} n={n} pool=cli_pool system={system}\n"
            ));
            let spec = parse_spec(&text).map_err(|e| Failure::Dsl(e.into()))?;
            let report = run_experiment(&spec, &opts).map_err(Failure::Dsl)?;
            emit(&report, out.as_deref(), csv.as_deref(), started)
        }
        Command::JumpTable { levels } => {
            let t = JumpTable::build(levels).map_err(|e| Failure::Dsl(e.into()))?;
            let json = serde_json::to_string_pretty(&t.export()).expect("table serializes");
            stdout(&format!("{json}\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
