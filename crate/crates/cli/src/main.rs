use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gpi_cli::commands::{self, Outcome, EXIT_PARSE};
use gpi_cli::store::{write_atomic, Store};
use gpi_core::pi::DEFAULT_BUDGET;

/// Semigroup-graded algebras: structure, codimensions and PI-exponents.
#[derive(Parser)]
#[command(name = "gpi", version)]
struct Cli {
    /// Worker threads for the codimension engine (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document; exit 0 iff it describes a graded algebra.
    Check {
        /// Algebra document, or - for stdin.
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radical, graded simplicity, faithfulness and the graded
    /// Wedderburn-Malcev decomposition.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Codimensions c_1..c_n as CSV.
    Codim {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Graded codimensions; ordinary ones otherwise.
        #[arg(long)]
        graded: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent report as JSON; with --n and --out, also the growth table.
    Exponent {
        file: PathBuf,
        #[arg(long, requires = "out")]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Growth table CSV.
        #[arg(long, requires = "n")]
        out: Option<PathBuf>,
    },
    /// Build an algebra document: fixture, m2-family, munn, existence or
    /// decomposition, from a JSON parameter file.
    Construct {
        kind: String,
        /// Parameter file, or - for stdin.
        params: Option<PathBuf>,
        /// Parameters given inline instead of by file.
        #[arg(long, conflicts_with = "params")]
        json: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(o: Outcome, out: Option<&Path>, side: Option<&Path>) -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let _ = stderr.write_all(o.stderr.as_bytes());
    let write = |path: &Path, text: &str, stderr: &mut dyn Write| -> bool {
        match write_atomic(path, text) {
            Ok(()) => true,
            Err(e) => {
                let _ = writeln!(stderr, "{}: {e}", path.display());
                false
            }
        }
    };
    match out.filter(|_| side.is_none()) {
        Some(p) if o.code == 0 => {
            if !write(p, &o.stdout, &mut stderr) {
                return ExitCode::from(1);
            }
        }
        _ => {
            let _ = stdout.write_all(o.stdout.as_bytes());
        }
    }
    if let (Some(p), Some(text)) = (side, &o.side) {
        if !write(p, text, &mut stderr) {
            return ExitCode::from(1);
        }
    }
    ExitCode::from(o.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("--threads: {e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    }
    let store = Store::from_env();
    let input = |p: &Path| read_input(p).map_err(|e| emit(Outcome { stdout: String::new(), stderr: e + "\n", code: EXIT_PARSE, side: None }, None, None));
    match cli.command {
        Command::Check { file, out } => match input(&file) {
            Ok(t) => emit(commands::check(&t), out.as_deref(), None),
            Err(c) => c,
        },
        Command::Analyze { file, out } => match input(&file) {
            Ok(t) => emit(commands::analyze(&t, store.as_ref()), out.as_deref(), None),
            Err(c) => c,
        },
        Command::Codim { file, n, graded, budget, out } => match input(&file) {
            Ok(t) => emit(commands::codim(&t, n, graded, budget, store.as_ref()), out.as_deref(), None),
            Err(c) => c,
        },
        Command::Exponent { file, n, budget, out } => match input(&file) {
            Ok(t) => emit(commands::exponent(&t, n, budget, store.as_ref()), None, out.as_deref()),
            Err(c) => c,
        },
        Command::Construct { kind, params, json, out } => {
            let text = match (params, json) {
                (_, Some(j)) => j,
                (Some(p), None) => match input(&p) {
                    Ok(t) => t,
                    Err(c) => return c,
                },
                (None, None) => "{}".to_string(),
            };
            emit(commands::construct(&kind, &text), out.as_deref(), None)
        }
    }
}
