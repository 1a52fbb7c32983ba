//! `divjump`: generate instances, run dynamics, check and construct
//! equilibria, and run the exhaustive oracles from the command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0  | success (run converged, equilibrium confirmed, report written) |
//! | 2  | usage error |
//! | 3  | unreadable or malformed input |
//! | 10 | dynamics reached a repeated state (cycle detected) |
//! | 11 | dynamics hit the step limit |
//! | 12 | state space over the budget |
//! | 13 | assignment is not an equilibrium |
//! | 14 | tree constructor: topology is not a tree |
//! | 15 | tree constructor: stubborn agents present |
//! | 16 | tree constructor: too many agents for the tree |
//! | 17 | tree constructor: internal verification failed |
//! | 18 | a poa-suite row failed |

mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use divjump::dynamics::{run_ird, IrdOptions, Policy, PotentialConfig, RunStatus};
use divjump::equilibria::{
    brute_force, construct_tree_equilibrium, find_irc, find_irc_from, is_equilibrium, IrcWitness,
    OracleError, Stability, TreeError,
};
use divjump::instances::{parse_pos_fixture, pinned_pos_fixture, random_assignment, InstanceSpec};
use divjump::utility::social_welfare;
use divjump::{Assignment, GameInstance, Rational};

const USAGE: u8 = 2;
const BAD_INPUT: u8 = 3;
const CYCLE: u8 = 10;
const STEP_LIMIT: u8 = 11;
const BUDGET: u8 = 12;
const NOT_EQUILIBRIUM: u8 = 13;
const NOT_A_TREE: u8 = 14;
const STUBBORN_PRESENT: u8 = 15;
const TOO_MANY_AGENTS: u8 = 16;
const VERIFICATION_FAILED: u8 = 17;
const SUITE_FAILED: u8 = 18;

#[derive(Parser)]
#[command(name = "divjump", version, about = "Diversity-seeking jump games on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance from a spec and write it as a game file.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run improving-response dynamics and write a JSON-lines trace.
    Ird(IrdArgs),
    /// Check whether an assignment is an equilibrium.
    CheckEq {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        start: PathBuf,
    },
    /// Construct an equilibrium on a tree with strategic agents only.
    SolveTree {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all class states and report OPT, PoA and PoS.
    Brute {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the improving-move graph for a cycle.
    FindIrc {
        #[command(flatten)]
        source: Source,
        /// Only explore states reachable from this assignment.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the price-of-anarchy / price-of-stability battery.
    PoaSuite {
        /// Comma-separated row names; all rows when omitted.
        #[arg(long)]
        rows: Option<String>,
        /// Use this fixture file instead of the pinned one.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Game file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Instance spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    First,
    Best,
    Random,
    /// Replay the jumps of a cycle witness written by find-irc (--script).
    Replay,
}

#[derive(Args)]
struct IrdArgs {
    #[command(flatten)]
    source: Source,
    /// Start assignment file.
    #[arg(long, conflicts_with = "random_start", required_unless_present = "random_start")]
    start: Option<PathBuf>,
    /// Place the strategic agents on random free nodes (uses --seed).
    #[arg(long)]
    random_start: bool,
    #[arg(long, value_enum, default_value = "first")]
    policy: PolicyArg,
    /// find-irc output whose jumps the replay policy cycles through.
    #[arg(long, required_if_eq("policy", "replay"))]
    script: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// Potential parameter, as p/q.
    #[arg(long, default_value = "1/4")]
    m: String,
    /// Keep going through repeated states until the step limit.
    #[arg(long)]
    no_cycle_detection: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display())))
}

fn load_game(source: &Source) -> Result<GameInstance, Failure> {
    match (&source.instance, &source.spec) {
        (Some(path), _) => parse_json(path),
        (None, Some(path)) => {
            let spec: InstanceSpec = parse_json(path)?;
            spec.build()
                .map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display())))
        }
        (None, None) => Err(fail(USAGE, "one of --instance or --spec is required")),
    }
}

fn load_assignment(game: &GameInstance, path: &Path) -> Result<Assignment, Failure> {
    let a: Assignment = parse_json(path)?;
    a.validate(game)
        .map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display())))?;
    Ok(a)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| fail(BAD_INPUT, e.to_string()))
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn show(r: Rational) -> String {
    format!("{r} ({:.4})", r.to_f64())
}

fn cmd_gen(spec: &Path, out: Option<&Path>) -> Outcome {
    let game = load_game(&Source {
        instance: None,
        spec: Some(spec.to_path_buf()),
    })?;
    emit(out, &to_json(&game))?;
    Ok(0)
}

fn cmd_ird(args: &IrdArgs) -> Outcome {
    let game = load_game(&args.source)?;
    let m: Rational = args
        .m
        .parse()
        .map_err(|e| fail(USAGE, format!("--m {}: {e}", args.m)))?;
    let potential = PotentialConfig::new(m).map_err(|e| fail(USAGE, e.to_string()))?;
    if args.max_steps == 0 {
        return Err(fail(USAGE, "--max-steps must be positive"));
    }
    let start = match &args.start {
        Some(path) => load_assignment(&game, path)?,
        None => random_assignment(&game, args.seed),
    };
    let policy = match args.policy {
        PolicyArg::First => Policy::First,
        PolicyArg::Best => Policy::BestResponse,
        PolicyArg::Random => Policy::Random { seed: args.seed },
        PolicyArg::Replay => {
            let path = args.script.as_deref().ok_or_else(|| fail(USAGE, "--script is required"))?;
            let report: IrcFile = parse_json(path)?;
            let witness = report
                .witness
                .ok_or_else(|| fail(BAD_INPUT, format!("{}: no witness", path.display())))?;
            Policy::Scripted {
                jumps: witness.moves.iter().map(|m| (m.from, m.to)).collect(),
            }
        }
    };
    let options = IrdOptions {
        policy,
        max_steps: args.max_steps,
        detect_cycles: !args.no_cycle_detection,
        potential,
    };
    let outcome = run_ird(&game, &start, &options).map_err(|e| fail(BAD_INPUT, e.to_string()))?;
    emit(args.out.as_deref(), &outcome.to_json_lines(&game, &potential))?;
    let terminal = outcome.terminal_record(&game, &potential);
    let status = match outcome.status {
        RunStatus::Converged => "converged",
        RunStatus::CycleDetected => "cycle detected",
        RunStatus::StepLimit => "step limit reached",
    };
    eprintln!(
        "{status} after {} moves; welfare {}",
        outcome.steps(),
        show(terminal.social_welfare)
    );
    Ok(match outcome.status {
        RunStatus::Converged => 0,
        RunStatus::CycleDetected => CYCLE,
        RunStatus::StepLimit => STEP_LIMIT,
    })
}

#[derive(Serialize)]
struct CheckReport {
    equilibrium: bool,
    social_welfare: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<divjump::equilibria::DeviationWitness>,
}

fn cmd_check_eq(source: &Source, start: &Path) -> Outcome {
    let game = load_game(source)?;
    let assignment = load_assignment(&game, start)?;
    let stability = is_equilibrium(&game, &assignment).map_err(|e| fail(BAD_INPUT, e.to_string()))?;
    let report = CheckReport {
        equilibrium: stability.is_equilibrium(),
        social_welfare: social_welfare(&game, &assignment).map_err(|e| fail(BAD_INPUT, e.to_string()))?,
        witness: stability.witness().cloned(),
    };
    emit(None, &to_json(&report))?;
    Ok(match stability {
        Stability::Equilibrium => 0,
        Stability::Deviation(_) => NOT_EQUILIBRIUM,
    })
}

fn cmd_solve_tree(source: &Source, out: Option<&Path>) -> Outcome {
    let game = load_game(source)?;
    let assignment = construct_tree_equilibrium(&game).map_err(|e| {
        let code = match e {
            TreeError::NotATree => NOT_A_TREE,
            TreeError::StubbornPresent => STUBBORN_PRESENT,
            TreeError::TooManyAgents { .. } => TOO_MANY_AGENTS,
            TreeError::InternalVerificationFailed(_) => VERIFICATION_FAILED,
        };
        fail(code, e.to_string())
    })?;
    emit(out, &to_json(&assignment))?;
    let welfare = social_welfare(&game, &assignment).map_err(|e| fail(BAD_INPUT, e.to_string()))?;
    let verified = is_equilibrium(&game, &assignment)
        .map(|s| s.is_equilibrium())
        .unwrap_or(false);
    eprintln!("welfare {}", show(welfare));
    eprintln!(
        "verification: {}",
        if verified { "equilibrium" } else { "NOT an equilibrium" }
    );
    Ok(0)
}

fn budget_failure(e: OracleError) -> Failure {
    match e {
        OracleError::BudgetExceeded { states, budget } => fail(
            BUDGET,
            format!("budget exceeded: {states} class states (budget {budget})"),
        ),
    }
}

fn cmd_brute(source: &Source, budget: u128, out: Option<&Path>) -> Outcome {
    let game = load_game(source)?;
    let report = brute_force(&game, budget).map_err(budget_failure)?;
    emit(out, &to_json(&report))?;
    eprintln!(
        "{} states, {} equilibria, opt {}, poa {}, pos {}",
        report.total_states_examined,
        report.equilibrium_count,
        show(report.opt_welfare),
        report.poa.map_or("undefined".into(), |p| p.to_string()),
        report.pos.map_or("undefined".into(), |p| p.to_string()),
    );
    Ok(0)
}

#[derive(Serialize)]
struct IrcReport {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<IrcWitness>,
}

#[derive(serde::Deserialize)]
struct IrcFile {
    witness: Option<IrcWitness>,
}

fn cmd_find_irc(source: &Source, start: Option<&Path>, budget: u128, out: Option<&Path>) -> Outcome {
    let game = load_game(source)?;
    let result = match start {
        Some(path) => find_irc_from(&game, &load_assignment(&game, path)?, budget),
        None => find_irc(&game, budget),
    }
    .map_err(budget_failure)?;
    match &result {
        Some(w) => eprintln!(
            "cycle of {} moves found; replay {}",
            w.moves.len(),
            if w.verify(&game) { "verified" } else { "FAILED" }
        ),
        None => eprintln!("no cycle: explored every reachable class state"),
    }
    emit(
        out,
        &to_json(&IrcReport {
            found: result.is_some(),
            witness: result,
        }),
    )?;
    Ok(0)
}

fn cmd_poa_suite(rows: Option<&str>, fixture: Option<&Path>, out: Option<&Path>) -> Outcome {
    let rows: Vec<String> = match rows {
        None => suite::ROW_NAMES.iter().map(|s| s.to_string()).collect(),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect(),
    };
    if rows.is_empty() {
        return Err(fail(USAGE, "--rows names no rows"));
    }
    if let Some(bad) = rows.iter().find(|r| !suite::ROW_NAMES.contains(&r.as_str())) {
        return Err(fail(
            USAGE,
            format!("unknown row {bad}; rows are {}", suite::ROW_NAMES.join(", ")),
        ));
    }
    let fixture = match fixture {
        Some(path) => parse_pos_fixture(&read(path)?)
            .map_err(|e| fail(BAD_INPUT, format!("{}: {e}", path.display())))?,
        None => pinned_pos_fixture(),
    };
    let report = suite::run(&rows, &fixture);
    print!("{}", suite::render(&report));
    if let Some(path) = out {
        emit(Some(path), &to_json(&report))?;
    }
    Ok(if report.pass { 0 } else { SUITE_FAILED })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Gen { spec, out } => cmd_gen(spec, out.as_deref()),
        Command::Ird(args) => cmd_ird(args),
        Command::CheckEq { source, start } => cmd_check_eq(source, start),
        Command::SolveTree { source, out } => cmd_solve_tree(source, out.as_deref()),
        Command::Brute { source, budget, out } => cmd_brute(source, *budget, out.as_deref()),
        Command::FindIrc {
            source,
            start,
            budget,
            out,
        } => cmd_find_irc(source, start.as_deref(), *budget, out.as_deref()),
        Command::PoaSuite { rows, fixture, out } => {
            cmd_poa_suite(rows.as_deref(), fixture.as_deref(), out.as_deref())
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
