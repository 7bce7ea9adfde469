//! `reeb` — JSON-in/JSON-out front end for the bubbling calculus.
//!
//! Exit codes: 0 = feasible/verified, 1 = infeasible/failed, 2 = input
//! error (malformed JSON, missing file, bad flags).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use reeb_core::bubbling::{apply_plan, delta_of_plan};
use reeb_core::oracle::{search_realization, SearchBounds, SearchOutcome};
use reeb_core::planner::{
    decide, find_min_n, plan_peel, plan_prop3, sequence_from_function, verify_plan,
};
use reeb_core::{Error as CoreError, FunctionSpec, Plan, TargetSequence};

#[derive(Parser)]
#[command(
    name = "reeb",
    version,
    about = "Reeb-space homology under bubbling surgeries: check targets, build and verify surgery plans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the feasibility checkers on a target sequence and report verdicts.
    Check {
        /// Target sequence JSON file.
        target: PathBuf,
        /// Key the exit code to a single criterion instead of the verdict.
        #[arg(long)]
        criterion: Option<Criterion>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Construct a surgery plan realizing a target sequence.
    Plan {
        /// Target sequence JSON file.
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Replay a plan and print the resulting Reeb-space homology.
    Apply {
        /// Plan JSON file.
        plan: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check that a plan's homology increment equals a target sequence.
    Verify {
        /// Plan JSON file.
        plan: PathBuf,
        /// Target sequence JSON file.
        target: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Build the target sequence induced by a function spec.
    #[command(name = "from-function")]
    FromFunction {
        /// Function spec JSON file.
        spec: PathBuf,
        /// Target dimension for the induced sequence.
        #[arg(
            long,
            conflicts_with = "find_min_n",
            required_unless_present = "find_min_n"
        )]
        n: Option<usize>,
        /// Scan n = 1..=N_MAX and report the smallest feasible dimension.
        #[arg(long = "find-min-n", value_name = "N_MAX")]
        find_min_n: Option<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Exhaustive bounded search for a realization of a target sequence.
    Search {
        /// Target sequence JSON file.
        target: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_copies: usize,
        #[arg(long, default_value_t = 8)]
        max_total_rank: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args)]
struct OutputArg {
    /// Write the JSON result here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Thm1,
    Remark1,
    Prop3,
    Necessary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    /// prop3 when its budget condition holds, otherwise peel.
    Auto,
    Prop3,
    Peel,
}

enum CmdError {
    Input(String),
    Outcome(String),
}

impl CmdError {
    fn exit_code(&self) -> u8 {
        match self {
            CmdError::Input(_) => 2,
            CmdError::Outcome(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Input(m) | CmdError::Outcome(m) => m,
        }
    }
}

impl From<CoreError> for CmdError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::UnsupportedTorsion { .. }
            | CoreError::StrategyNotApplicable { .. }
            | CoreError::PeelFailed { .. } => CmdError::Outcome(err.to_string()),
            other => CmdError::Input(other.to_string()),
        }
    }
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CmdError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, out: &OutputArg) -> Result<(), CmdError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CmdError::Input(format!("serialization failed: {e}")))?;
    text.push('\n');
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CmdError> {
    match cli.command {
        Command::Check {
            target,
            criterion,
            out,
        } => {
            let target: TargetSequence = load_json(&target)?;
            let report = decide(&target);
            emit(&report, &out)?;
            let ok = match criterion {
                None => report.realized(),
                Some(Criterion::Thm1) => report.checks.thm1,
                Some(Criterion::Remark1) => report.checks.remark1,
                Some(Criterion::Prop3) => report.checks.prop3,
                Some(Criterion::Necessary) => report.checks.necessary,
            };
            Ok(if ok { 0 } else { 1 })
        }
        Command::Plan {
            target,
            strategy,
            out,
        } => {
            let target: TargetSequence = load_json(&target)?;
            let plan = match strategy {
                Strategy::Auto => {
                    let report = decide(&target);
                    match report.plan {
                        Some(plan) => plan,
                        None => {
                            // No plan to write; the report explains why.
                            emit(&report, &out)?;
                            return Ok(1);
                        }
                    }
                }
                Strategy::Prop3 => plan_prop3(&target)?,
                Strategy::Peel => plan_peel(&target)?,
            };
            emit(&plan, &out)?;
            Ok(0)
        }
        Command::Apply { plan, out } => {
            let plan: Plan = load_json(&plan)?;
            let model = apply_plan(&plan).map_err(|e| CmdError::Input(e.to_string()))?;
            emit(&model, &out)?;
            Ok(0)
        }
        Command::Verify { plan, target, out } => {
            let plan: Plan = load_json(&plan)?;
            let target: TargetSequence = load_json(&target)?;
            let verified =
                verify_plan(&plan, &target).map_err(|e| CmdError::Input(e.to_string()))?;
            let delta = delta_of_plan(&plan).map_err(|e| CmdError::Input(e.to_string()))?;
            #[derive(Serialize)]
            struct VerifyReport {
                verified: bool,
                delta: reeb_core::GradedGroup,
            }
            emit(&VerifyReport { verified, delta }, &out)?;
            Ok(if verified { 0 } else { 1 })
        }
        Command::FromFunction {
            spec,
            n,
            find_min_n: scan,
            out,
        } => {
            let spec: FunctionSpec = load_json(&spec)?;
            if let Some(n_max) = scan {
                let report = find_min_n(&spec, n_max)?;
                let found = report.min_feasible_n.is_some();
                emit(&report, &out)?;
                Ok(if found { 0 } else { 1 })
            } else {
                let n = n.expect("clap enforces one of --n / --find-min-n");
                let target = sequence_from_function(&spec, n)?;
                emit(&target, &out)?;
                Ok(0)
            }
        }
        Command::Search {
            target,
            max_n,
            max_copies,
            max_total_rank,
            out,
        } => {
            let target: TargetSequence = load_json(&target)?;
            let bounds = SearchBounds {
                max_n,
                max_copies,
                max_total_rank,
            };
            let outcome = search_realization(&target, &bounds)?;
            #[derive(Serialize)]
            struct SearchReport {
                outcome: &'static str,
                bounds: SearchBounds,
                plan: Option<Plan>,
            }
            let (label, plan) = match outcome {
                SearchOutcome::Realized(plan) => ("REALIZED", Some(plan)),
                SearchOutcome::InfeasibleWithinBounds => ("INFEASIBLE_WITHIN_BOUNDS", None),
            };
            let realized = plan.is_some();
            emit(
                &SearchReport {
                    outcome: label,
                    bounds,
                    plan,
                },
                &out,
            )?;
            Ok(if realized { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
