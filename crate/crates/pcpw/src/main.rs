//! Command-line front end for the correspondence workbench.
//!
//! Four commands tie the pipeline together: `tm2pcp` compiles a machine
//! file into a conjugate-correspondence instance, `solve` searches an
//! instance for a minimal solution, `roundtrip` drives a machine's circular
//! derivation through encode/check/decode, and `zpcp` handles the
//! bi-infinite variant. Human-readable reports go to standard output;
//! every command can record a machine-readable run manifest with
//! `--run-manifest`.
//!
//! Exit codes: 0 success or found, 1 not found within the given bounds,
//! 2 input or parse errors, 3 validation failures.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use pcp_workbench::cpcp::solve_bounded;
use pcp_workbench::formats::{
    parse_candidate, parse_instance, parse_machine, parse_zpcp_instance, write_instance,
    write_manifest, write_system, MachineParseError,
};
use pcp_workbench::rewriting::orbit;
use pcp_workbench::st2cpcp::{build_instance, decode_solution, encode_derivation};
use pcp_workbench::tm2st::{build_reduction, validate_reduction};
use pcp_workbench::zpcp::{find_periodic_solution, test_procedure, Verdict};

#[derive(Parser)]
#[command(name = "pcpw", version, about = "Workbench for Post correspondence problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a machine file into a conjugate-correspondence instance.
    ///
    /// Writes the instance to --out, the underlying rewriting system and
    /// its manifest to sidecar files, and prints a validation report.
    Tm2pcp {
        /// Machine description file.
        tm_file: PathBuf,
        /// Instance file to write.
        #[arg(long)]
        out: PathBuf,
        /// Run manifest path; defaults to the --out path with a run.json
        /// extension.
        #[arg(long)]
        run_manifest: Option<PathBuf>,
    },
    /// Search an instance file for a minimal solution.
    Solve {
        /// Instance file.
        instance_file: PathBuf,
        /// Longest candidate word to try; must be at least 1.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        #[arg(long)]
        run_manifest: Option<PathBuf>,
    },
    /// Find a machine's circular derivation, encode it as a solution,
    /// check the solution, and decode it back.
    Roundtrip {
        /// Machine description file.
        tm_file: PathBuf,
        /// Maximum number of rewriting steps to follow.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long)]
        run_manifest: Option<PathBuf>,
    },
    /// Bi-infinite correspondence commands.
    #[command(subcommand)]
    Zpcp(ZpcpCommand),
}

#[derive(Subcommand)]
enum ZpcpCommand {
    /// Search for a purely periodic solution.
    FindPeriodic {
        /// Pair list file.
        instance_file: PathBuf,
        /// Longest period to try.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_len: u64,
        #[arg(long)]
        run_manifest: Option<PathBuf>,
    },
    /// Check a candidate bi-infinite word over a schedule of shifts.
    Verify {
        /// Pair list file.
        instance_file: PathBuf,
        /// Candidate word file.
        #[arg(long)]
        candidate: PathBuf,
        /// Number of shifts to try, scheduled 0, 1, -1, 2, -2, ...
        #[arg(long, default_value_t = 16)]
        rounds: u64,
        /// Window radius checked around the origin for each shift.
        #[arg(long, default_value_t = 64)]
        window: u64,
        #[arg(long)]
        run_manifest: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error("{}: {}", .0.display(), .1)]
    Parse(PathBuf, String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Parse(..) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

fn invalid(message: impl ToString) -> CliError {
    CliError::Validation(message.to_string())
}

struct Outcome {
    found: bool,
    summary: String,
}

impl Outcome {
    fn found(summary: impl Into<String>) -> Self {
        Outcome {
            found: true,
            summary: summary.into(),
        }
    }

    fn not_found(summary: impl Into<String>) -> Self {
        Outcome {
            found: false,
            summary: summary.into(),
        }
    }
}

/// Machine-readable record of one invocation.
#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<String>,
    params: BTreeMap<String, String>,
    outcome: String,
    duration_ms: u128,
}

struct RunInfo {
    command: &'static str,
    inputs: Vec<PathBuf>,
    params: BTreeMap<String, String>,
    manifest_path: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (info, result) = dispatch(cli.command);

    let (outcome, code) = match &result {
        Ok(outcome) => (outcome.summary.clone(), u8::from(!outcome.found)),
        Err(e) => {
            eprintln!("error: {e}");
            (format!("error: {e}"), e.exit_code())
        }
    };

    if let Some(path) = &info.manifest_path {
        let manifest = RunManifest {
            command: info.command.to_string(),
            inputs: info.inputs.iter().map(|p| p.display().to_string()).collect(),
            params: info.params,
            outcome,
            duration_ms: start.elapsed().as_millis(),
        };
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        if let Err(e) = fs::write(path, json + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}

fn dispatch(command: Command) -> (RunInfo, Result<Outcome, CliError>) {
    match command {
        Command::Tm2pcp {
            tm_file,
            out,
            run_manifest,
        } => {
            let info = RunInfo {
                command: "tm2pcp",
                inputs: vec![tm_file.clone()],
                params: BTreeMap::from([("out".into(), out.display().to_string())]),
                manifest_path: Some(run_manifest.unwrap_or_else(|| out.with_extension("run.json"))),
            };
            (info, cmd_tm2pcp(&tm_file, &out))
        }
        Command::Solve {
            instance_file,
            max_len,
            run_manifest,
        } => {
            let info = RunInfo {
                command: "solve",
                inputs: vec![instance_file.clone()],
                params: BTreeMap::from([("max-len".into(), max_len.to_string())]),
                manifest_path: run_manifest,
            };
            (info, cmd_solve(&instance_file, max_len as usize))
        }
        Command::Roundtrip {
            tm_file,
            depth,
            run_manifest,
        } => {
            let info = RunInfo {
                command: "roundtrip",
                inputs: vec![tm_file.clone()],
                params: BTreeMap::from([("depth".into(), depth.to_string())]),
                manifest_path: run_manifest,
            };
            (info, cmd_roundtrip(&tm_file, depth as usize))
        }
        Command::Zpcp(ZpcpCommand::FindPeriodic {
            instance_file,
            max_len,
            run_manifest,
        }) => {
            let info = RunInfo {
                command: "zpcp find-periodic",
                inputs: vec![instance_file.clone()],
                params: BTreeMap::from([("max-len".into(), max_len.to_string())]),
                manifest_path: run_manifest,
            };
            (info, cmd_zpcp_find_periodic(&instance_file, max_len as usize))
        }
        Command::Zpcp(ZpcpCommand::Verify {
            instance_file,
            candidate,
            rounds,
            window,
            run_manifest,
        }) => {
            let info = RunInfo {
                command: "zpcp verify",
                inputs: vec![instance_file.clone(), candidate.clone()],
                params: BTreeMap::from([
                    ("rounds".into(), rounds.to_string()),
                    ("window".into(), window.to_string()),
                ]),
                manifest_path: run_manifest,
            };
            (
                info,
                cmd_zpcp_verify(&instance_file, &candidate, rounds as usize, window as usize),
            )
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn read_machine(path: &Path) -> Result<pcp_workbench::machine::TuringMachine, CliError> {
    let text = read(path)?;
    parse_machine(&text).map_err(|e| match e {
        MachineParseError::Parse(e) => CliError::Parse(path.to_path_buf(), e.to_string()),
        MachineParseError::Machine(e) => invalid(e),
    })
}

fn cmd_tm2pcp(tm_file: &Path, out: &Path) -> Result<Outcome, CliError> {
    let tm = read_machine(tm_file)?;
    let reduction = build_reduction(&tm).map_err(invalid)?;
    let report = validate_reduction(&reduction);
    println!("{report}");
    if !report.passed() {
        println!("Properties 1-3: FAIL");
        return Err(invalid("the built system failed validation"));
    }
    println!("Properties 1-3: pass");

    let instance = build_instance(&reduction).map_err(invalid)?;
    let system_path = out.with_extension("system");
    let manifest_path = out.with_extension("manifest");
    let manifest_name = manifest_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned());
    write_file(&system_path, &write_system(&reduction.system))?;
    write_file(&manifest_path, &write_manifest(&reduction))?;
    write_file(out, &write_instance(&instance, manifest_name.as_deref()))?;
    println!(
        "wrote {}, {}, {}",
        out.display(),
        system_path.display(),
        manifest_path.display()
    );
    Ok(Outcome::found(format!(
        "instance with {} rows; Properties 1-3: pass",
        instance.rows.len()
    )))
}

fn cmd_solve(instance_file: &Path, max_len: usize) -> Result<Outcome, CliError> {
    let text = read(instance_file)?;
    let (instance, _) =
        parse_instance(&text).map_err(|e| CliError::Parse(instance_file.to_path_buf(), e.to_string()))?;
    match solve_bounded(&instance.h, &instance.g, max_len) {
        Some(solution) => {
            println!("minimal solution of length {}:", solution.w.len());
            print!("{solution}");
            Ok(Outcome::found(format!(
                "w = \"{}\" with {} splits",
                solution.w,
                solution.splits.len()
            )))
        }
        None => {
            println!("none up to {max_len}");
            Ok(Outcome::not_found(format!("none up to {max_len}")))
        }
    }
}

fn cmd_roundtrip(tm_file: &Path, depth: usize) -> Result<Outcome, CliError> {
    let tm = read_machine(tm_file)?;
    let reduction = build_reduction(&tm).map_err(invalid)?;
    let trace = orbit(&reduction.system, &reduction.w0, depth).map_err(invalid)?;
    if !trace.is_circular() {
        println!("no circular orbit within depth {depth}");
        return Ok(Outcome::not_found(format!(
            "no circular orbit within depth {depth}"
        )));
    }

    let instance = build_instance(&reduction).map_err(invalid)?;
    let w = encode_derivation(&instance, &trace).map_err(invalid)?;
    let solution = solve_checked(&instance, &w)?;
    let decoded = decode_solution(&instance, &w).map_err(invalid)?;
    if decoded != trace {
        return Err(invalid("decoding did not reproduce the original derivation"));
    }
    println!("circular orbit length {}; encode/check/decode OK", trace.len());
    Ok(Outcome::found(format!(
        "circular orbit length {}; solution of length {} with {} splits",
        trace.len(),
        solution.w.len(),
        solution.splits.len()
    )))
}

fn solve_checked(
    instance: &pcp_workbench::st2cpcp::CpcpInstance,
    w: &pcp_workbench::wordcore::Word,
) -> Result<pcp_workbench::cpcp::ConjugateSolution, CliError> {
    match pcp_workbench::cpcp::check_solution(&instance.h, &instance.g, w) {
        Ok(Some(solution)) => Ok(solution),
        Ok(None) => Err(invalid("the encoded word is not a solution")),
        Err(e) => Err(invalid(e)),
    }
}

fn cmd_zpcp_find_periodic(instance_file: &Path, max_len: usize) -> Result<Outcome, CliError> {
    let text = read(instance_file)?;
    let instance = parse_zpcp_instance(&text)
        .map_err(|e| CliError::Parse(instance_file.to_path_buf(), e.to_string()))?;
    match find_periodic_solution(&instance.h, &instance.g, max_len).map_err(invalid)? {
        Some((z, shift)) => {
            println!("z = {z}, shift = {shift}");
            Ok(Outcome::found(format!("z = {z}, shift = {shift}")))
        }
        None => {
            println!("none up to {max_len}");
            Ok(Outcome::not_found(format!("none up to {max_len}")))
        }
    }
}

fn cmd_zpcp_verify(
    instance_file: &Path,
    candidate_file: &Path,
    rounds: usize,
    window: usize,
) -> Result<Outcome, CliError> {
    let text = read(instance_file)?;
    let instance = parse_zpcp_instance(&text)
        .map_err(|e| CliError::Parse(instance_file.to_path_buf(), e.to_string()))?;
    let candidate_text = read(candidate_file)?;
    let candidate = parse_candidate(&candidate_text)
        .map_err(|e| CliError::Parse(candidate_file.to_path_buf(), e.to_string()))?;

    let verdict = test_procedure(&instance.h, &instance.g, &candidate, rounds, window)
        .map_err(invalid)?;
    println!("{verdict}");
    let found = matches!(verdict, Verdict::Accepted { .. });
    Ok(Outcome {
        found,
        summary: verdict.to_string(),
    })
}
