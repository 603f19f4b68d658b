//! Command-line front end. Exit codes: 0 pass, 1 input error, 2 verdict
//! failure under `--strict`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::load_model;
use crate::error::InputError;
use crate::model::SurfaceModel;
use crate::quadrature::Tolerance;
use crate::report;
use crate::sweep::{run_sweep, spaced_schedule, SweepReport};
use crate::zoo::{all_entries, zoo_entry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cvlab",
    version,
    about = "Truncation sweeps and Gauss-Bonnet checks for surfaces with cylindrical ends"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in surfaces.
    List {
        #[arg(long, value_enum, default_value_t = ListFormat::Human)]
        format: ListFormat,
    },
    /// Sweep a surface over truncation heights and write the report.
    Sweep(RunArgs),
    /// Sweep a surface and print the verdict table.
    Verify(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Built-in surface name (see `list`).
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub surface: Option<String>,
    /// TOML surface definition.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub h_min: f64,
    #[arg(long, default_value_t = 1024.0)]
    pub h_max: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Output format (`sweep` defaults to json, `verify` to human).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 2 if any verdict fails.
    #[arg(long)]
    pub strict: bool,
}

fn resolve_model(args: &RunArgs) -> Result<SurfaceModel, InputError> {
    match (&args.surface, &args.config) {
        (Some(name), _) => Ok(zoo_entry(name)?.model),
        (None, Some(path)) => load_model(path),
        (None, None) => Err(InputError::Config(
            "one of --surface or --config is required".into(),
        )),
    }
}

fn sweep_for(args: &RunArgs) -> Result<SweepReport, String> {
    let model = resolve_model(args).map_err(|e| e.to_string())?;
    let tol = Tolerance::new(args.abs_tol, args.rel_tol)?;
    let schedule =
        spaced_schedule(args.h_min, args.h_max, args.steps).map_err(|e| e.to_string())?;
    run_sweep(&model, &schedule, &tol).map_err(|e| e.to_string())
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn run_report(
    args: &RunArgs,
    default: Format,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let report = match sweep_for(args) {
        Ok(r) => r,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    let text = match args.format.unwrap_or(default) {
        Format::Json => report::render_json(&report),
        Format::Csv => report::render_csv(&report),
        Format::Human if default == Format::Human => report::render_verdict_table(&report),
        Format::Human => report::render_human(&report),
    };
    if let Err(msg) = emit(&text, &args.out, stdout) {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INPUT;
    }
    let notes_shown = matches!(args.format.unwrap_or(default), Format::Human);
    if !notes_shown {
        for n in &report.notes {
            let _ = writeln!(stderr, "note: {n}");
        }
    }
    if args.strict && report.any_failure() {
        EXIT_VERDICT
    } else {
        EXIT_OK
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match cli.command {
        Command::List { format } => {
            let records = report::list_records(&all_entries());
            let text = match format {
                ListFormat::Human => report::render_list_human(&records),
                ListFormat::Json => report::render_list_json(&records),
            };
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Command::Sweep(args) => run_report(&args, Format::Json, stdout, stderr),
        Command::Verify(args) => run_report(&args, Format::Human, stdout, stderr),
    }
}
