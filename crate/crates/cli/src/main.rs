//! Batch experiment runner.
//!
//! `holoframe run <config.json> [--out <dir>] [--quiet]` executes one
//! experiment described by a JSON config and writes:
//!
//! - `report.json` — schema-versioned payload: the echoed config, all
//!   numerical outputs, and the library version. Byte-identical across runs
//!   with the same config.
//! - `meta.json` — run metadata (timestamp), segregated so the primary
//!   report stays deterministic.
//! - optional CSV tables (coefficient lists, modulus sweeps) for plotting.
//!
//! Invalid configs exit nonzero with a diagnostic naming the offending
//! field. Numerical failures inside an experiment exit zero with the
//! failure recorded in the report.

mod config;
mod experiments;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::json;

use config::ExperimentConfig;

#[derive(Parser)]
#[command(name = "holoframe", about = "Numerical frame-theory experiment runner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Output directory for report files (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Suppress progress output.
        #[arg(long)]
        quiet: bool,
    },
}

/// Write `contents` to `dir/name` atomically (temp file + rename).
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), String> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| format!("cannot create temp file in {}: {e}", dir.display()))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| format!("cannot write {name}: {e}"))?;
    tmp.persist(dir.join(name))
        .map_err(|e| format!("cannot persist {name}: {e}"))?;
    Ok(())
}

fn run_command(config_path: &Path, out: Option<PathBuf>, quiet: bool) -> Result<(), String> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| format!("cannot read config {}: {e}", config_path.display()))?;
    let config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| format!("invalid config: {e}"))?;
    config.validate().map_err(|e| format!("invalid config: {e}"))?;

    let out_dir = out.unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| format!("cannot create output directory {}: {e}", out_dir.display()))?;

    if !quiet {
        eprintln!("running experiment `{}`", config.name());
    }
    let result = experiments::run(&config)?;

    let report = json!({
        "schema_version": 1,
        "library_version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "outputs": result.payload,
    });
    let report_text = serde_json::to_string_pretty(&report)
        .map_err(|e| format!("cannot serialize report: {e}"))?;
    write_atomic(&out_dir, "report.json", &report_text)?;

    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = json!({ "schema_version": 1, "unix_timestamp": now });
    write_atomic(&out_dir, "meta.json", &meta.to_string())?;

    for (name, contents) in &result.tables {
        write_atomic(&out_dir, name, contents)?;
    }
    if !quiet {
        eprintln!("wrote {}", out_dir.join("report.json").display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out, quiet } => match run_command(&config, out, quiet) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::FAILURE
            }
        },
    }
}
