//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, input or output errors, 2 when
//! `--fail-on-flagged` is set and at least one requirement was flagged.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dictionary::{builtin_dictionaries, load_dictionary_file};
use crate::engine::AnalysisConfig;
use crate::ingest::{load_requirements, ColumnMapping};
use crate::report::{build_report, load_thresholds, render_to_vec, Format, ReportOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FLAGGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "reqsmell", version, about = "Detect bad smells in natural-language requirements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a delimited requirements file and print a report.
    Analyze(CliConfig),
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Delimited requirements file with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Header of the requirement id column.
    #[arg(long, default_value = "ID")]
    pub id_column: String,
    /// Header of the requirement text column.
    #[arg(long, default_value = "Text")]
    pub text_column: String,
    /// Field delimiter (single ASCII character; `\t` for tab).
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: char,
    /// Dictionary file whose sections replace the builtin keyword lists.
    #[arg(long)]
    pub dictionaries: Option<PathBuf>,
    /// Threshold rules, one `METRIC OP LIMIT` per line.
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
    /// Report format: json, csv or table.
    #[arg(long, default_value = "table")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Exit with status 2 when any requirement is flagged.
    #[arg(long)]
    pub fail_on_flagged: bool,
    /// Record the generation time in the report.
    #[arg(long)]
    pub timestamp: bool,
}

fn parse_delimiter(s: &str) -> Result<char, String> {
    if s == "\\t" || s == "tab" {
        return Ok('\t');
    }
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(format!("delimiter must be a single character, got `{s}`")),
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so a failed run never leaves a truncated report behind.
fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn analyze(config: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, String> {
    let mapping = ColumnMapping::new(&config.id_column, &config.text_column, config.delimiter);
    let dictionaries = match &config.dictionaries {
        Some(path) => load_dictionary_file(path).map_err(|e| e.to_string())?,
        None => builtin_dictionaries(),
    };
    let rules = match &config.thresholds {
        Some(path) => load_thresholds(path).map_err(|e| e.to_string())?,
        None => Vec::new(),
    };
    let corpus = load_requirements(&config.input, &mapping).map_err(|e| e.to_string())?;
    for w in &corpus.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let options = ReportOptions { mapping, timestamp: config.timestamp };
    let report = build_report(&corpus, &AnalysisConfig::new(dictionaries), &rules, &options);
    let bytes = render_to_vec(&report, config.format).map_err(|e| e.to_string())?;
    match &config.output {
        Some(path) => write_atomically(path, &bytes)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => stdout
            .write_all(&bytes)
            .and_then(|()| stdout.flush())
            .map_err(|e| format!("cannot write report: {e}"))?,
    }
    if config.fail_on_flagged && report.summary.flagged > 0 {
        Ok(EXIT_FLAGGED)
    } else {
        Ok(EXIT_OK)
    }
}

/// Runs the tool with `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    match cli.command {
        Command::Analyze(config) => analyze(&config, stdout, stderr).unwrap_or_else(|msg| {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_ERROR
        }),
    }
}
