//! Command line front end of `coxcalc`.

pub mod commands;
pub mod json;
pub mod schema;
pub mod svg;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use coxcalc::guard::SizeGuard;
use coxcalc::lattice::IntVec;
use num_bigint::BigInt;

use commands::Options;
use schema::Document;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Math(#[from] coxcalc::error::Error),
    #[error("{0} of {1} rows failed")]
    RowsFailed(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) | CliError::Io(_) => 1,
            CliError::Math(e) => e.exit_code(),
            CliError::RowsFailed(..) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "coxcalc", version, about = "Combinatorics of varieties with finitely generated Cox rings")]
struct Cli {
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Interior weight selecting the chamber, e.g. "1,2".
    #[arg(long, global = true, value_name = "W")]
    chamber: Option<String>,
    /// Treat the generators as pairwise nonassociated K-primes.
    #[arg(long, global = true)]
    assert_k_prime: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// GIT fan of the grading.
    Gitfan {
        input: PathBuf,
        /// Draw the fan (rank at most three) as SVG.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// F-faces and orbit cones.
    OrbitCones { input: PathBuf },
    /// Maximal true bunches.
    Bunches { input: PathBuf },
    /// Geometric invariants of the variety.
    Report { input: PathBuf },
    /// Intersection numbers.
    Intersect {
        input: PathBuf,
        /// Classes as free parts, e.g. "1,0;0,1".
        #[arg(long)]
        classes: Option<String>,
        /// Generator divisors by name, e.g. "T1,T2".
        #[arg(long)]
        divisors: Option<String>,
    },
    /// Toric ambient modification.
    Modify { input: PathBuf },
    /// Operations on K*-surfaces.
    Kstar {
        #[command(subcommand)]
        command: KstarCommand,
    },
    /// Recompute the invariants of every row of a table.
    Verify { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum KstarCommand {
    /// Canonical resolution of singularities.
    Resolve { input: PathBuf },
}

/// Result of a run: exit code and the text for both streams.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_ints(s: &str) -> Result<IntVec, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("not an integer vector: {s}"))))
        .collect()
}

fn read_document(path: &PathBuf) -> Result<Document, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    Document::parse(&text)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Runs the tool on the arguments (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, out, note)) => {
            let mut outcome = Outcome { code, stderr: note, ..Default::default() };
            match &cli.out {
                Some(p) => {
                    if let Err(e) = write_file(p, &out) {
                        return Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
                    }
                }
                None => outcome.stdout = out,
            }
            outcome
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Exit code, rendered result and a note for standard error.
fn execute(cli: &Cli) -> Result<(i32, String, String), CliError> {
    let guard = SizeGuard::from_env()?;
    let mut opts = Options { assert_k_prime: cli.assert_k_prime, guard, ..Default::default() };
    if let Some(w) = &cli.chamber {
        opts.chamber = Some(parse_ints(w)?);
    }
    let render = |o: commands::Output| match cli.format {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("values serialize") + "\n",
        Format::Text => o.text,
    };
    let done = |o: commands::Output| Ok((0, render(o), String::new()));
    match &cli.command {
        Command::Gitfan { input, svg } => {
            let doc = read_document(input)?;
            let (out, fan) = commands::gitfan_cmd(&doc, &opts)?;
            if let Some(path) = svg {
                write_file(path, &svg::render(&fan)?)?;
            }
            done(out)
        }
        Command::OrbitCones { input } => done(commands::orbit_cones_cmd(&read_document(input)?, &opts)?),
        Command::Bunches { input } => done(commands::bunches_cmd(&read_document(input)?, &opts)?),
        Command::Report { input } => done(commands::report_cmd(&read_document(input)?, &opts)?),
        Command::Intersect { input, classes, divisors } => {
            if let Some(c) = classes {
                opts.classes = Some(c.split(';').map(parse_ints).collect::<Result<_, _>>()?);
            }
            if let Some(d) = divisors {
                opts.divisors = Some(d.split(',').map(|s| s.trim().to_string()).collect());
            }
            if opts.classes.is_some() && opts.divisors.is_some() {
                return Err(CliError::Usage("give either --classes or --divisors".into()));
            }
            done(commands::intersect_cmd(&read_document(input)?, &opts)?)
        }
        Command::Modify { input } => done(commands::modify_cmd(&read_document(input)?, &opts)?),
        Command::Kstar { command: KstarCommand::Resolve { input } } => {
            done(commands::kstar_resolve_cmd(&read_document(input)?, &opts)?)
        }
        Command::Verify { input } => {
            let doc = read_document(input)?;
            let Document::Table(table) = &doc else {
                return Err(CliError::Schema(format!("verify expects a table document, got {}", doc.kind())));
            };
            let report = verify::verify_table(table, &opts);
            let failed = report.failed();
            let code = if failed > 0 { CliError::RowsFailed(failed, report.rows.len()).exit_code() } else { 0 };
            let note = if failed > 0 { format!("{failed} of {} rows failed\n", report.rows.len()) } else { String::new() };
            Ok((code, render(report.output()), note))
        }
    }
}
