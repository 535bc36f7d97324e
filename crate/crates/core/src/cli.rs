//! Command-line front end. [`run`] takes the argument list and two writers so
//! it can be driven from tests; the binary only forwards the exit code.
//!
//! Exit codes: 0 success, 1 verification or acceptance failure, 2 user error,
//! 3 internal error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::lemma_checks;
use crate::dynamics::trace;
use crate::error::Error;
use crate::model::{check_feasibility, ProblemInstance, Schedule, DEFAULT_FEASIBILITY_TOL};
use crate::oracle::{
    compare, coordinate_ascent, grid_oracle, reconstruct, OracleConfig, OracleRun,
};
use crate::oracle::{Verdict, GRID_MAX_TASKS};
use crate::presets::{self, Reported, REPORTED_TOL};
use crate::solver::{solve, verify_stationarity, CaseLabel, Solution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Relative stationarity residual accepted by `verify`.
pub const STATIONARITY_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "workrest",
    version,
    about = "Optimal work/rest schedules under utilization bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance
    Solve {
        #[command(flatten)]
        io: Io,
    },
    /// Check a schedule or a solution document against an instance
    Verify {
        #[command(flatten)]
        io: Io,
        /// Schedule array or solution document
        #[arg(long)]
        schedule: PathBuf,
        /// Feasibility tolerance
        #[arg(long, default_value_t = DEFAULT_FEASIBILITY_TOL)]
        tol: f64,
    },
    /// Structure-free baseline: lattice search for N <= 2, multi-start ascent above
    Oracle {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Sample the utilization ratio of a schedule as CSV
    Trace {
        #[command(flatten)]
        io: Io,
        #[arg(
            long,
            conflicts_with = "from_solve",
            required_unless_present = "from_solve"
        )]
        schedule: Option<PathBuf>,
        /// Trace the solver's schedule instead of a file
        #[arg(long)]
        from_solve: bool,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// Compare the solver against a schedule, or against the oracle
    Compare {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Objective gap counted as a match
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Run the three built-in worked examples against their reported values
    Examples {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Io {
    /// Instance JSON
    #[arg(long)]
    pub instance: PathBuf,
    /// Also write the output document here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        let mut config = OracleConfig {
            grid_step: self.grid_step,
            ..OracleConfig::default()
        };
        if let Some(starts) = self.starts {
            config.starts = starts;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        config
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

/// Errors from input checks are the user's; anything else is ours.
fn user_or_internal(e: Error) -> Failure {
    let code = match e {
        Error::InvalidArgument(_)
        | Error::InvalidInstance(_)
        | Error::InvalidSchedule(_)
        | Error::UnsupportedSize { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    };
    Failure {
        code,
        msg: e.to_string(),
    }
}

fn internal(e: Error) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        msg: e.to_string(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve { io } => run_solve(&io, out),
        Command::Verify { io, schedule, tol } => run_verify(&io, &schedule, tol, out),
        Command::Oracle { io, oracle } => run_oracle(&io, &oracle, out),
        Command::Trace {
            io,
            schedule,
            from_solve,
            dt,
        } => run_trace(&io, schedule.as_deref(), from_solve, dt, out),
        Command::Compare {
            io,
            schedule,
            oracle,
            tol,
        } => run_compare(&io, schedule.as_deref(), &oracle, tol, out),
        Command::Examples { format, out: path } => run_examples(format, path.as_deref(), out),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(
    path: &Path,
    text: &str,
) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<ProblemInstance, Failure> {
    let inst: ProblemInstance = parse(path, &read(path)?)?;
    inst.validate()
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(inst)
}

/// A schedule file holds either a bare task array or a solution document.
enum ScheduleDoc {
    Bare(Schedule),
    Solution(Box<Solution>),
}

impl ScheduleDoc {
    fn schedule(&self) -> &Schedule {
        match self {
            ScheduleDoc::Bare(s) => s,
            ScheduleDoc::Solution(sol) => &sol.schedule,
        }
    }
}

fn load_schedule(path: &Path) -> std::result::Result<ScheduleDoc, Failure> {
    let value: Value = parse(path, &read(path)?)?;
    if value.is_array() {
        let s = serde_json::from_value(value)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        Ok(ScheduleDoc::Bare(s))
    } else {
        let sol = serde_json::from_value(value).map_err(|e| {
            Failure::usage(format!(
                "{}: expected a task array or a solution document: {e}",
                path.display()
            ))
        })?;
        Ok(ScheduleDoc::Solution(Box::new(sol)))
    }
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents are always serializable");
    s.push('\n');
    s
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        msg: format!("cannot write output: {e}"),
    })
}

fn save(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    if let Some(path) = path {
        fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// JSON goes to `--out` if given, and to stdout in JSON mode; text mode
/// prints `summary` instead.
fn deliver(
    io_out: Option<&Path>,
    format: Format,
    doc: &str,
    summary: &str,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    save(io_out, doc)?;
    match format {
        Format::Json => emit(out, doc),
        Format::Text => emit(out, summary),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"))
}

fn summary(inst: &ProblemInstance, sol: &Solution) -> String {
    let boundary = match sol.case {
        CaseLabel::Structured { boundary, .. } => boundary.to_string(),
        _ => "-".into(),
    };
    let used = sol.schedule.total_duration();
    let mut s = String::new();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<14}{v}\n"));
    line("case", sol.case.name().to_string());
    line("m", sol.m().map_or_else(|| "-".into(), |m| m.to_string()));
    line("boundary", boundary);
    line("t1_tilde", fmt_opt(sol.t1_tilde));
    line("t2_tilde", fmt_opt(sol.t2_tilde));
    line("r1_tilde", fmt_opt(sol.r1_tilde));
    line("r2_tilde", fmt_opt(sol.r2_tilde));
    line("objective", format!("{:.6}", sol.objective));
    line("budget used", format!("{used:.6}"));
    line("unused budget", format!("{:.6}", inst.t_horizon - used));
    s
}

fn run_solve(io: &Io, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&io.instance)?;
    let sol = solve(&inst).map_err(internal)?;
    deliver(
        io.out.as_deref(),
        io.format,
        &pretty(&sol.to_json()),
        &summary(&inst, &sol),
        out,
    )?;
    Ok(EXIT_OK)
}

fn run_verify(io: &Io, schedule: &Path, tol: f64, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&io.instance)?;
    let doc = load_schedule(schedule)?;
    let sched = doc.schedule();
    let report = check_feasibility(&inst, sched, tol).map_err(user_or_internal)?;
    let objective = crate::model::total_utility(sched, &inst.utility).map_err(user_or_internal)?;
    let lemmas = lemma_checks(&inst, sched, tol).map_err(user_or_internal)?;

    // Optimality is only audited when the file claims to be a solution.
    let (stationarity, claim_ok) = match &doc {
        ScheduleDoc::Bare(_) => (None, true),
        ScheduleDoc::Solution(sol) => {
            let st = verify_stationarity(&inst, sol, STATIONARITY_TOL).map_err(user_or_internal)?;
            let objective_ok =
                (sol.objective - objective).abs() <= tol.max(1e-12) * (1.0 + objective.abs());
            (Some(st), objective_ok)
        }
    };
    let stationarity_ok = stationarity
        .as_ref()
        .and_then(|s| s.passed())
        .unwrap_or(true);
    let pass = report.feasible && stationarity_ok && claim_ok;

    let doc = pretty(&json!({
        "pass": pass,
        "objective": objective,
        "feasibility": report,
        "lemma_checks": lemmas,
        "stationarity": stationarity,
        "objective_matches_claim": claim_ok,
    }));
    let mut text = String::new();
    text.push_str(&format!("{:<14}{}\n", "feasible", report.feasible));
    text.push_str(&format!("{:<14}{:.6}\n", "budget used", report.budget_used));
    text.push_str(&format!(
        "{:<14}{:.6e}\n",
        "worst excess", report.worst_violation
    ));
    text.push_str(&format!("{:<14}{objective:.6}\n", "objective"));
    text.push_str(&format!("{:<14}{}\n", "structure", lemmas.all_hold()));
    if let Some(st) = &stationarity {
        let shown = match st {
            crate::solver::StationarityReport::Checked {
                lhs,
                rhs,
                residual,
                pass,
            } => {
                format!("{lhs:.6} vs {rhs:.6}, residual {residual:.3e}, pass {pass}")
            }
            crate::solver::StationarityReport::NotApplicable { reason } => {
                format!("n/a ({reason})")
            }
        };
        text.push_str(&format!("{:<14}{shown}\n", "stationarity"));
        text.push_str(&format!("{:<14}{claim_ok}\n", "claim"));
    }
    text.push_str(&format!(
        "{:<14}{}\n",
        "result",
        if pass { "PASS" } else { "FAIL" }
    ));
    deliver(io.out.as_deref(), io.format, &doc, &text, out)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}

fn oracle_run(
    inst: &ProblemInstance,
    args: &OracleArgs,
) -> std::result::Result<(&'static str, OracleRun), Failure> {
    let config = args.config();
    config.validate().map_err(user_or_internal)?;
    if inst.n <= GRID_MAX_TASKS {
        Ok((
            "grid",
            grid_oracle(inst, &config).map_err(user_or_internal)?,
        ))
    } else {
        Ok((
            "ascent",
            coordinate_ascent(inst, &config).map_err(user_or_internal)?,
        ))
    }
}

fn run_oracle(io: &Io, args: &OracleArgs, out: &mut dyn Write) -> Outcome {
    let inst = load_instance(&io.instance)?;
    let (method, run) = oracle_run(&inst, args)?;
    let doc = pretty(&json!({
        "method": method,
        "evaluations": run.evaluations,
        "budget_exhausted": run.budget_exhausted,
        "solution": run.solution.to_json(),
    }));
    let mut text = format!(
        "{:<14}{method}\n{:<14}{}\n",
        "method", "evaluations", run.evaluations
    );
    text.push_str(&summary(&inst, &run.solution));
    deliver(io.out.as_deref(), io.format, &doc, &text, out)?;
    Ok(EXIT_OK)
}

fn run_trace(
    io: &Io,
    schedule: Option<&Path>,
    from_solve: bool,
    dt: f64,
    out: &mut dyn Write,
) -> Outcome {
    let inst = load_instance(&io.instance)?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Failure::usage(format!("--dt must be positive, got {dt}")));
    }
    let sched = match (schedule, from_solve) {
        (Some(path), false) => load_schedule(path)?.schedule().clone(),
        (None, true) => solve(&inst).map_err(internal)?.schedule,
        _ => {
            return Err(Failure::usage(
                "give exactly one of --schedule and --from-solve",
            ))
        }
    };
    let report =
        check_feasibility(&inst, &sched, DEFAULT_FEASIBILITY_TOL).map_err(user_or_internal)?;
    if !report.feasible {
        emit(out, &pretty(&report))?;
        return Ok(EXIT_FAILED);
    }
    let csv = trace(&inst, &sched, dt).map_err(user_or_internal)?.to_csv();
    save(io.out.as_deref(), &csv)?;
    emit(out, &csv)?;
    Ok(EXIT_OK)
}

fn run_compare(
    io: &Io,
    schedule: Option<&Path>,
    args: &OracleArgs,
    tol: f64,
    out: &mut dyn Write,
) -> Outcome {
    let inst = load_instance(&io.instance)?;
    if !(tol >= 0.0) {
        return Err(Failure::usage(format!(
            "--tol must be non-negative, got {tol}"
        )));
    }
    let sol = solve(&inst).map_err(internal)?;
    let (against, other) = match schedule {
        Some(path) => {
            let s = load_schedule(path)?.schedule().clone();
            let report =
                check_feasibility(&inst, &s, DEFAULT_FEASIBILITY_TOL).map_err(user_or_internal)?;
            if !report.feasible {
                emit(out, &pretty(&report))?;
                return Ok(EXIT_FAILED);
            }
            (
                "schedule",
                reconstruct(&inst, s, 1e-6).map_err(user_or_internal)?,
            )
        }
        None => {
            let (method, run) = oracle_run(&inst, args)?;
            (method, run.solution)
        }
    };
    let report = compare(&inst, &sol, &other, tol).map_err(user_or_internal)?;
    let doc = pretty(&json!({ "against": against, "report": report }));
    let text = format!(
        "{:<16}{against}\n{:<16}{:.6}\n{:<16}{:.6}\n{:<16}{:.6e}\n{:<16}{:.6e}\n{:<16}{}\n",
        "against",
        "solver",
        sol.objective,
        "other",
        other.objective,
        "gap",
        report.objective_gap_abs,
        "schedule linf",
        report.schedule_linf,
        "verdict",
        serde_json::to_value(report.verdict)
            .expect("verdict serializes")
            .as_str()
            .unwrap_or("?"),
    );
    deliver(io.out.as_deref(), io.format, &doc, &text, out)?;
    // Something beating the solver by more than `tol` is a failure.
    Ok(if report.verdict == Verdict::BDominates {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleCheck {
    pub example: &'static str,
    pub quantity: String,
    pub computed: Value,
    pub reported: Value,
    pub pass: bool,
}

fn numeric(
    example: &'static str,
    quantity: &str,
    computed: Option<f64>,
    reported: f64,
) -> ExampleCheck {
    ExampleCheck {
        example,
        quantity: quantity.to_string(),
        computed: json!(computed),
        reported: json!(reported),
        pass: computed.is_some_and(|c| (c - reported).abs() <= REPORTED_TOL),
    }
}

fn label(example: &'static str, quantity: &str, computed: String, reported: &str) -> ExampleCheck {
    ExampleCheck {
        example,
        quantity: quantity.to_string(),
        pass: computed == reported,
        computed: json!(computed),
        reported: json!(reported),
    }
}

fn case_text(sol: &Solution) -> String {
    match sol.case {
        CaseLabel::Structured { m, boundary } => {
            format!(
                "{} m={m} {}",
                sol.case.name(),
                if boundary { "boundary" } else { "interior" }
            )
        }
        other => other.name().to_string(),
    }
}

fn tilde(sol: &Solution, name: &str) -> Option<f64> {
    match name {
        "t1_tilde" => sol.t1_tilde,
        "t2_tilde" => sol.t2_tilde,
        "r1_tilde" => sol.r1_tilde,
        "r2_tilde" => sol.r2_tilde,
        _ => None,
    }
}

pub type NamedSolution = (&'static str, Solution);

/// Solve the built-in examples and check them against their reported values.
pub fn example_checks() -> crate::Result<(Vec<NamedSolution>, Vec<ExampleCheck>)> {
    let mut checks = Vec::new();
    let mut solutions = Vec::new();

    let inst = presets::example1();
    let sol = solve(&inst)?;
    let report = check_feasibility(&inst, &sol.schedule, DEFAULT_FEASIBILITY_TOL)?;
    checks.push(label(
        "example1",
        "case",
        case_text(&sol),
        "NO_REST_EQUAL_SPLIT",
    ));
    for (i, task) in sol.schedule.tasks().iter().enumerate() {
        checks.push(numeric(
            "example1",
            &format!("r_{}", i + 1),
            Some(task.rest),
            0.0,
        ));
        checks.push(numeric(
            "example1",
            &format!("t_{}", i + 1),
            Some(task.work),
            presets::EXAMPLE1_WORK,
        ));
    }
    checks.push(numeric(
        "example1",
        "x_terminal",
        report.terminal_ratio(),
        presets::EXAMPLE1_TERMINAL,
    ));
    solutions.push(("example1", sol));

    let rows: [(&'static str, ProblemInstance, &str, &[Reported]); 2] = [
        (
            "example2",
            presets::example2(),
            "STRUCTURED m=2 boundary",
            &presets::EXAMPLE2,
        ),
        (
            "example3",
            presets::example3(),
            "STRUCTURED m=2 interior",
            &presets::EXAMPLE3,
        ),
    ];
    for (name, inst, case, reported) in rows {
        let sol = solve(&inst)?;
        checks.push(label(name, "case", case_text(&sol), case));
        for r in reported {
            checks.push(numeric(name, r.name, tilde(&sol, r.name), r.value));
        }
        solutions.push((name, sol));
    }
    if let Some((_, sol)) = solutions.iter().find(|(n, _)| *n == "example2") {
        checks.push(label("example2", "r1_tilde", fmt_opt(sol.r1_tilde), "-"));
    }
    Ok((solutions, checks))
}

fn show(v: &Value) -> String {
    match v {
        Value::Number(n) => format!("{:.6}", n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn run_examples(format: Format, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (solutions, checks) = example_checks().map_err(internal)?;
    let pass = checks.iter().all(|c| c.pass);
    let docs: Vec<Value> = solutions
        .iter()
        .map(|(name, sol)| json!({ "example": name, "solution": sol.to_json() }))
        .collect();
    let doc = pretty(
        &json!({ "pass": pass, "tolerance": REPORTED_TOL, "examples": docs, "checks": checks }),
    );
    let mut text = format!(
        "{:<10}{:<12}{:>26}{:>26}  result\n",
        "example", "quantity", "computed", "reported"
    );
    for c in &checks {
        text.push_str(&format!(
            "{:<10}{:<12}{:>26}{:>26}  {}\n",
            c.example,
            c.quantity,
            show(&c.computed),
            show(&c.reported),
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    deliver(path, format, &doc, &text, out)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}
