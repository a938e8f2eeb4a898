//! Command implementations for the `ztorsion` binary.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use ztorsion_core::export::{poset_dot, poset_json};
use ztorsion_core::{
    build_poset, face_module_hilbert, parse_realization, verify_realization, InputError, Realization, VerifyOptions,
};

#[derive(Parser, Debug)]
#[command(name = "ztorsion", version, about = "Arithmetic Tutte polynomials and posets of torsions of realized Z-matroids")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ranks, multiplicities and essentiality.
    Info {
        /// Realization file (JSON or matrix shorthand), `-` for stdin.
        file: PathBuf,
        /// Print the table of all subsets.
        #[arg(long)]
        all: bool,
    },
    /// The arithmetic Tutte polynomial.
    Tutte {
        file: PathBuf,
        /// Print the polynomial of the dual.
        #[arg(long)]
        dual: bool,
    },
    /// The poset of torsions.
    Poset {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PosetFormat::Json)]
        format: PosetFormat,
    },
    /// Hilbert series of the face module.
    Hilbert {
        file: PathBuf,
        /// Use the dual realization.
        #[arg(long)]
        dual: bool,
    },
    /// Run the identity suite; exits 1 if any check fails.
    Verify {
        file: PathBuf,
        /// Drop one cover before checking (negative control).
        #[arg(long, hide = true)]
        corrupt_drop_cover: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PosetFormat {
    Json,
    Dot,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("the dual is undefined: M(∅) has torsion (m(∅) = {0})")]
    DualUndefined(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

/// Output text and exit code of a successful run.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn read_input(path: &PathBuf) -> Result<Realization, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: "-".into(), source })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?
    };
    Ok(parse_realization(&text)?)
}

fn require_dual(r: &Realization) -> Result<Realization, CliError> {
    if !r.initial_structure().is_free() {
        return Err(CliError::DualUndefined(r.initial_multiplicity().to_string()));
    }
    r.dual().map_err(|e| CliError::Verification(e.to_string()))
}

pub fn info_text(r: &Realization, all: bool) -> String {
    let mut out = format!(
        "d(∅)={} m(∅)={} r={} essential={}\n",
        r.initial_structure().free_rank,
        r.initial_multiplicity(),
        r.rank(),
        r.is_essential()
    );
    if all {
        out.push_str(&format!("{:<16} {:>4} {:>4} {:>6}  independent\n", "subset", "d", "cork", "m"));
        for p in r.profiles() {
            out.push_str(&format!(
                "{:<16} {:>4} {:>4} {:>6}  {}\n",
                p.subset.to_string(),
                p.d,
                p.cork,
                p.multiplicity.to_string(),
                p.independent
            ));
        }
    }
    out
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let ok = |text: String| Ok(Outcome { text, code: 0 });
    match command {
        Command::Info { file, all } => ok(info_text(&read_input(file)?, *all)),
        Command::Tutte { file, dual } => {
            let r = read_input(file)?;
            let t = r.arithmetic_tutte();
            if !dual {
                return ok(format!("{t}\n"));
            }
            if r.initial_structure().is_free() {
                let explicit = require_dual(&r)?.arithmetic_tutte();
                if explicit != t.swap_xy() {
                    return Err(CliError::Verification(format!(
                        "dual realization gives {explicit}, expected {}",
                        t.swap_xy()
                    )));
                }
            }
            // T_M*(x, y) = T_M(y, x): print T_M with the variable names exchanged
            ok(format!("{}\n", t.display_with("y", "x")))
        }
        Command::Poset { file, format } => {
            let gr = build_poset(&read_input(file)?);
            match format {
                PosetFormat::Json => ok(format!("{}\n", poset_json(&gr))),
                PosetFormat::Dot => ok(poset_dot(&gr)),
            }
        }
        Command::Hilbert { file, dual } => {
            let r = read_input(file)?;
            let target = if *dual { require_dual(&r)? } else { r };
            let series = face_module_hilbert(&target).map_err(|e| CliError::Verification(e.to_string()))?;
            ok(format!("{series}\n"))
        }
        Command::Verify { file, corrupt_drop_cover } => {
            let r = read_input(file)?;
            let report = verify_realization(&r, VerifyOptions { corrupt_drop_cover: *corrupt_drop_cover });
            let code = if report.all_passed() { 0 } else { 1 };
            Ok(Outcome { text: report.to_string(), code })
        }
    }
}

/// Runs a parsed command line, printing results and errors; returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|source| CliError::Io { path: "stdout".into(), source }),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
