//! Command-line front end: argument handling, tables and plot scripts.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Report;
pub use error::CliError;
pub use table::ScanResult;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_VAR: &str = "SOLSCAT_OUTPUT_DIR";

#[derive(Debug)]
pub struct Outcome {
    /// False when `--check` was given and the check failed.
    pub passed: bool,
    pub written: Vec<PathBuf>,
}

/// Seconds since the epoch, or `SOURCE_DATE_EPOCH` when set.
fn timestamp() -> String {
    if let Ok(v) = std::env::var("SOURCE_DATE_EPOCH") {
        if v.trim().parse::<u64>().is_ok() {
            return v.trim().to_string();
        }
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".into())
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Classical(c) => commands::classical(c),
        Command::Quantum(c) => commands::quantum(c),
        Command::Compare(c) => commands::compare(c),
        Command::Mc(c) => commands::mc(c),
        Command::Asymmetry(c) => commands::asymmetry_cmd(c),
        Command::LimitScan(c) => commands::limit_scan(c),
        Command::Amplitude(c) => commands::amplitude(c),
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// artifacts. Progress goes to `log`.
pub fn run<W: Write>(argv: Vec<OsString>, log: &mut W) -> Result<Outcome, CliError> {
    let argv = config::expand_argv(argv)?;
    let cli = Cli::try_parse_from(argv)?;
    let out = cli.command.output().clone();
    if out.plot && out.format == Format::Json {
        return Err(CliError::Parameters("--plot needs CSV output".into()));
    }

    let mut report = execute(&cli.command)?;
    report.table.meta("timestamp", timestamp());
    let text = match out.format {
        Format::Csv => report.table.to_csv(),
        Format::Json => report.table.to_json(),
    };

    let mut written = Vec::new();
    let to_stdout = out.output.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if to_stdout {
        if out.plot {
            return Err(CliError::Parameters("--plot needs a file, not stdout".into()));
        }
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e))?;
    } else {
        let path = match &out.output {
            Some(p) => p.clone(),
            None => {
                let dir = std::env::var_os(OUTPUT_DIR_VAR)
                    .map(PathBuf::from)
                    .unwrap_or_else(|| ".".into());
                std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                let ext = match out.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                dir.join(format!("{}.{ext}", cli.command.name()))
            }
        };
        std::fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
        written.push(path.clone());
        if out.plot {
            let script = path.with_extension("gp");
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            plot::emit_plot_script(&report.table, &name, &script)?;
            written.push(script);
        }
    }

    // logging failures are not worth aborting a finished run over
    for line in &report.summary {
        let _ = writeln!(log, "{line}");
    }
    for p in &written {
        let _ = writeln!(log, "wrote {}", p.display());
    }
    let passed = !out.check || report.check_passed;
    if out.check {
        let _ = writeln!(log, "check {}", if passed { "passed" } else { "FAILED" });
    }
    Ok(Outcome { passed, written })
}
