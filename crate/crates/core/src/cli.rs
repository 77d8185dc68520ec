//! Command-line front end: `analyze`, `verify-catalog` and `example`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::caps::Caps;
use crate::catalog::{load_catalog, load_group_file};
use crate::error::{Error, Result};
use crate::report::{emit_report, exit_code, Format, ReportRecord};
use crate::theorem::{analyze_entry, analyze_setup, build_a6_example, scan_catalog, Mode, PrimeSelection, A6_EXAMPLE_NAME};

#[derive(Debug, Parser)]
#[command(name = "sylsplit", version, about = "Checks whether W_G(S) is a direct factor of Z(S) for permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze one group file at one prime.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Record wall-clock time per entry.
        #[arg(long)]
        timing: bool,
    },
    /// Analyze every group file of a directory (or one file) at the selected primes.
    VerifyCatalog {
        path: PathBuf,
        /// `all`, or a comma-separated list of primes.
        #[arg(long, default_value = "all")]
        primes: String,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        timing: bool,
    },
    /// Rebuild a built-in example.
    Example {
        #[arg(value_enum)]
        which: ExampleArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Wgs,
    Zf,
    All,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wgs => Mode::Wgs,
            ModeArg::Zf => Mode::Zf,
            ModeArg::All => Mode::All,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Md => Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleArg {
    A6,
}

pub fn parse_primes(text: &str) -> Result<PrimeSelection> {
    if text.trim() == "all" {
        return Ok(PrimeSelection::All);
    }
    let primes = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u64>() {
                Ok(p) if crate::group::is_prime(p) => Ok(p),
                _ => Err(Error::InvalidArgument(format!("`{t}` is not a prime"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimeSelection::List(primes))
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code: 0 all verified, 2 some hypothesis not satisfied,
/// 3 a counterexample, 1 any error or bad usage.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match run(cli) {
        Ok((records, format)) => {
            let _ = out.write_all(emit_report(&records, format).as_bytes());
            for r in records.iter().filter(|r| r.error.is_some()) {
                let _ = writeln!(err, "error: {} (p = {}): {}", r.group, r.prime, r.error.as_deref().unwrap_or(""));
            }
            exit_code(&records)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn run(cli: Cli) -> Result<(Vec<ReportRecord>, Format)> {
    // an invalid override is an error here rather than a silent fallback
    Caps::from_env()?;
    match cli.command {
        Command::Analyze {
            file,
            prime,
            mode,
            format,
            timing,
        } => {
            let entry = load_group_file(&file)?;
            let g = entry.to_group()?;
            Ok((vec![analyze_entry(&entry.name, &g, prime, mode.into(), timing)], format.into()))
        }
        Command::VerifyCatalog {
            path,
            primes,
            mode,
            jobs,
            format,
            timing,
        } => {
            let primes = parse_primes(&primes)?;
            if jobs == Some(0) {
                return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
            }
            let catalog = load_catalog(&path)?;
            Ok((scan_catalog(&catalog, &primes, mode.into(), jobs, timing)?, format.into()))
        }
        Command::Example { which: ExampleArg::A6, format } => {
            let ex = build_a6_example()?;
            Ok((vec![analyze_setup(A6_EXAMPLE_NAME, &ex.setup, Mode::All, false)], format.into()))
        }
    }
}
