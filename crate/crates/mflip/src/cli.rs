//! Command implementations. Each returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use mflip_core::families::{self, Family};

use crate::angle::parse_angle;
use crate::check::{self, Suite};
use crate::statefile::StateFile;
use crate::{csv, report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mflip", version, about = "Complementarity and m-flip concurrence analysis of multipartite states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a state file and write a JSON report.
    Analyze {
        #[arg(long, value_name = "FILE")]
        state: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Sweep a named three-qubit family and write CSV.
    Sweep {
        /// bisep, phi_w, psi_wghz or ghzw_mix
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Radians; accepts pi fractions such as `pi/3`.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha_start: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        alpha_end: f64,
        /// Grid points including both endpoints (at least 2).
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run an invariant suite and print one line per check.
    Check {
        /// identities, oracles, decomposition or bounds
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: mflip_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn core_code(e: &mflip_core::Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INVALID
    }
}

fn write_file(path: &Path, text: &str, err: &mut dyn Write) -> i32 {
    match fs::write(path, text) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            EXIT_INVALID
        }
    }
}

pub fn analyze(state: &Path, out: &Path, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(state) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", state.display());
            return EXIT_INVALID;
        }
    };
    let loaded = match StateFile::from_json(&text).and_then(|f| f.load()) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", state.display());
            return if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INVALID };
        }
    };
    match report::analyze(&loaded) {
        Ok(r) => write_file(out, &r.to_json(), err),
        Err(e) => {
            let _ = writeln!(err, "error: analysis failed: {e}");
            core_code(&e)
        }
    }
}

pub fn sweep(family: Family, start: f64, end: f64, steps: usize, out: &Path, err: &mut dyn Write) -> i32 {
    if let Err(e) = families::alpha_grid(start, end, steps) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INVALID;
    }
    match families::sweep(family, start, end, steps) {
        Ok(rows) => write_file(out, &csv::render(&rows), err),
        Err(e) => {
            let _ = writeln!(err, "error: sweep failed {e}");
            core_code(&e.source)
        }
    }
}

pub fn check(suite: Suite, samples: usize, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if samples == 0 {
        let _ = writeln!(err, "error: --samples must be positive");
        return EXIT_INVALID;
    }
    let r = check::run(suite, samples, seed);
    let _ = out.write_all(r.render().as_bytes());
    if r.passed() {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Analyze { state, out: path } => analyze(&state, &path, err),
        Command::Sweep { family, alpha_start, alpha_end, steps, out: path } => {
            sweep(family, alpha_start, alpha_end, steps, &path, err)
        }
        Command::Check { suite, samples, seed } => check(suite, samples, seed, out, err),
    }
}
