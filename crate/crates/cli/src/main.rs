//! Command-line front end: build the canonical designs, classify and
//! analyse design files, run the verification suite, export incidence
//! matrices.
//!
//! Exit codes: 0 success, 1 domain error (invalid design, failed
//! verification, I/O), 2 usage error (bad flags, malformed JSON).
//! Data goes to stdout, diagnostics to stderr.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use fano_designs::design::{CliqueType, Design};
use fano_designs::geometry::PointSet;
use fano_designs::group::{flag_transitive, full_automorphism_group, group_report};
use fano_designs::verify::{self, Scope};

#[derive(Parser)]
#[command(
    name = "fano-designs",
    version,
    about = "Symmetric (15,8,4) designs, their five types and automorphism groups",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical design of a type (C1, C2, C3, C4 or NC)
    Build {
        /// Design type token, case-insensitive
        r#type: CliqueType,
        /// Write the design JSON here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Classify a design file into its type
    Classify {
        /// Design JSON file
        file: PathBuf,
    },
    /// Compute the full automorphism group of a design file
    Aut {
        /// Design JSON file
        file: PathBuf,
        /// What to print
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Point and block orbits of the full automorphism group
    Orbits {
        /// Design JSON file
        file: PathBuf,
    },
    /// Run the verification suite
    Verify {
        /// Scope: all, theorem, orbits, pyramidal or fano
        scope: Option<Scope>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export a design file in matrix form
    Export {
        /// Design JSON file
        file: PathBuf,
        /// Emit the n-by-n incidence matrix (row = block, column = point)
        #[arg(long, required = true)]
        matrix: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Generators,
    Elements,
    Report,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Writes data to stdout; a closed pipe downstream (e.g. `| head`)
/// ends the process quietly instead of panicking.
fn out(data: impl fmt::Display) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = write!(stdout, "{data}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

fn outln(data: impl fmt::Display) {
    out(format_args!("{data}\n"));
}

/// A failure destined for stderr, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl fmt::Display) -> Failure {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }

    fn usage(message: impl fmt::Display) -> Failure {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

/// The raw wire shape; kept separate from `Design` so that syntax
/// errors (exit 2) are distinguishable from axiom violations (exit 1).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireDesign {
    n: u8,
    blocks: Vec<Vec<u8>>,
}

fn load_design(path: &PathBuf) -> Result<Design, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::domain(format!("cannot read {}: {e}", path.display())))?;
    let wire: WireDesign = serde_json::from_str(&raw)
        .map_err(|e| Failure::usage(format!("malformed JSON in {}: {e}", path.display())))?;
    let mut blocks = Vec::with_capacity(wire.blocks.len());
    for block in wire.blocks {
        blocks.push(PointSet::from_elems(block).map_err(Failure::domain)?);
    }
    Design::new(wire.n, blocks).map_err(Failure::domain)
}

fn design_json(design: &Design) -> String {
    let mut out = serde_json::to_string_pretty(design).expect("serializable");
    out.push('\n');
    out
}

fn invariant_line(design: &Design) -> Result<String, Failure> {
    let centers = design.center_points().map_err(Failure::domain)?.len();
    let lines = design.internal_lines().map_err(Failure::domain)?.len();
    Ok(format!("centers={centers} lines={lines}\n"))
}

fn cmd_build(t: CliqueType, dest: Option<PathBuf>) -> Result<(), Failure> {
    let design = fano_designs::design::build_type(t);
    let invariants = invariant_line(&design)?;
    match dest {
        Some(path) => {
            std::fs::write(&path, design_json(&design))
                .map_err(|e| Failure::domain(format!("cannot write {}: {e}", path.display())))?;
            out(&invariants);
        }
        None => {
            out(design_json(&design));
            eprint!("{invariants}");
        }
    }
    Ok(())
}

fn cmd_classify(file: &PathBuf) -> Result<(), Failure> {
    let design = load_design(file)?;
    let t = design.classify().map_err(Failure::domain)?;
    outln(t);
    Ok(())
}

fn cmd_aut(file: &PathBuf, emit: Emit) -> Result<(), Failure> {
    let design = load_design(file)?;
    let group = full_automorphism_group(&design);
    match emit {
        Emit::Generators => {
            let gens: Vec<String> = group
                .reduced_generators()
                .iter()
                .map(|p| p.to_string())
                .collect();
            outln(serde_json::to_string_pretty(&gens).expect("serializable"));
        }
        Emit::Elements => {
            let elems: Vec<String> = group.elements().iter().map(|p| p.to_string()).collect();
            outln(serde_json::to_string_pretty(&elems).expect("serializable"));
        }
        Emit::Report => {
            let report = group_report(&design, &group).map_err(Failure::domain)?;
            let flags = flag_transitive(&design, &group).map_err(Failure::domain)?;
            outln(serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("flag-transitive: {flags}");
        }
    }
    Ok(())
}

fn cmd_orbits(file: &PathBuf) -> Result<(), Failure> {
    let design = load_design(file)?;
    let group = full_automorphism_group(&design);
    let report = group_report(&design, &group).map_err(Failure::domain)?;
    let orbits = serde_json::json!({
        "point_orbits": report.point_orbits,
        "block_orbits": report.block_orbits,
    });
    outln(serde_json::to_string_pretty(&orbits).expect("serializable"));
    Ok(())
}

fn cmd_verify(scope: Option<Scope>, format: Format) -> Result<(), Failure> {
    let report = verify::run(scope.unwrap_or(Scope::All));
    match format {
        Format::Text => out(report.text()),
        Format::Json => {
            outln(serde_json::to_string_pretty(&report).expect("serializable"))
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::domain("verification failed"))
    }
}

fn cmd_export(file: &PathBuf, format: Format) -> Result<(), Failure> {
    let design = load_design(file)?;
    let matrix = design.incidence_matrix();
    match format {
        Format::Json => {
            outln(serde_json::to_string(&matrix).expect("serializable"));
        }
        Format::Text => {
            for row in &matrix {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                outln(cells.join(" "));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { r#type, out } => cmd_build(r#type, out),
        Command::Classify { file } => cmd_classify(&file),
        Command::Aut { file, emit } => cmd_aut(&file, emit),
        Command::Orbits { file } => cmd_orbits(&file),
        Command::Verify { scope, format } => cmd_verify(scope, format),
        Command::Export { file, matrix, format } => {
            debug_assert!(matrix);
            cmd_export(&file, format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
