//! Problem instances, schedules, feasibility and the objective.

use serde::{Deserialize, Serialize};

use crate::dynamics::{rest_transition, work_transition};
use crate::error::{invalid, Error, Result};
use crate::utility::{Utility, UtilityFunction};

/// Absolute tolerance on ratios and budget used when none is given.
pub const DEFAULT_FEASIBILITY_TOL: f64 = 1e-9;

/// `N` identical tasks over horizon `T` with ratio bounds and a utility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub n: usize,
    pub t_horizon: f64,
    pub alpha: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub x0: f64,
    pub utility: UtilityFunction,
}

impl ProblemInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.n < 1 {
            return bad("n must be at least 1".into());
        }
        if !(self.t_horizon.is_finite() && self.t_horizon >= 0.0) {
            return bad(format!(
                "t_horizon must be non-negative, got {}",
                self.t_horizon
            ));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(0.0 < self.x_min && self.x_min < self.x_max && self.x_max < 1.0) {
            return bad(format!(
                "need 0 < x_min < x_max < 1, got x_min = {}, x_max = {}",
                self.x_min, self.x_max
            ));
        }
        if !(self.x_min <= self.x0 && self.x0 <= self.x_max) {
            return bad(format!(
                "x0 = {} lies outside [x_min, x_max] = [{}, {}]",
                self.x0, self.x_min, self.x_max
            ));
        }
        self.utility
            .check_params()
            .map_err(|e| Error::InvalidInstance(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub rest: f64,
    pub work: f64,
}

impl Task {
    pub fn new(rest: f64, work: f64) -> Self {
        Task { rest, work }
    }
}

/// One rest-then-work pair per task. Idle time after the last task is not a
/// segment; it only shows up as unused budget.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Schedule(Vec<Task>);

impl Schedule {
    pub fn new(tasks: Vec<Task>) -> Self {
        Schedule(tasks)
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Schedule(pairs.iter().map(|&(r, t)| Task::new(r, t)).collect())
    }

    pub fn tasks(&self) -> &[Task] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.0.iter().map(|t| t.rest + t.work).sum()
    }

    pub fn check_shape(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::InvalidSchedule(format!(
                "schedule has {} tasks, instance expects {n}",
                self.0.len()
            )));
        }
        for (i, task) in self.0.iter().enumerate() {
            for (name, d) in [("rest", task.rest), ("work", task.work)] {
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::InvalidSchedule(format!(
                        "task {}: {name} = {d} is not a non-negative duration",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Total time exceeds the horizon.
    Budget { excess: f64 },
    /// Pre-work ratio of a task fell below `x_min`.
    BelowMin { task: usize, amount: f64 },
    /// Post-work ratio of a task rose above `x_max`.
    AboveMax { task: usize, amount: f64 },
}

impl Violation {
    pub fn magnitude(&self) -> f64 {
        match *self {
            Violation::Budget { excess } => excess,
            Violation::BelowMin { amount, .. } | Violation::AboveMax { amount, .. } => amount,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskRecord {
    pub x_bar: f64,
    pub x: f64,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub budget_used: f64,
    pub budget_violation: Option<Violation>,
    pub tasks: Vec<TaskRecord>,
    pub worst_violation: f64,
}

impl FeasibilityReport {
    /// Ratio after the last task, or `None` for an empty schedule.
    pub fn terminal_ratio(&self) -> Option<f64> {
        self.tasks.last().map(|t| t.x)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.budget_violation
            .iter()
            .chain(self.tasks.iter().flat_map(|t| t.violations.iter()))
    }
}

/// Walk the schedule from `x0` and flag every budget or ratio-bound violation
/// beyond `tol`. Checking segment ends is enough: the ratio is monotone within
/// each segment.
pub fn check_feasibility(
    instance: &ProblemInstance,
    schedule: &Schedule,
    tol: f64,
) -> Result<FeasibilityReport> {
    instance.validate()?;
    if !(tol >= 0.0) {
        return Err(invalid(format!(
            "tolerance must be non-negative, got {tol}"
        )));
    }
    schedule.check_shape(instance.n)?;

    let mut x = instance.x0;
    let mut tasks = Vec::with_capacity(schedule.len());
    for (i, task) in schedule.tasks().iter().enumerate() {
        let x_bar = rest_transition(x, task.rest, instance.alpha)?;
        x = work_transition(x_bar, task.work, instance.alpha)?;
        let mut violations = Vec::new();
        if x_bar < instance.x_min - tol {
            violations.push(Violation::BelowMin {
                task: i + 1,
                amount: instance.x_min - x_bar,
            });
        }
        if x > instance.x_max + tol {
            violations.push(Violation::AboveMax {
                task: i + 1,
                amount: x - instance.x_max,
            });
        }
        tasks.push(TaskRecord {
            x_bar,
            x,
            violations,
        });
    }

    let budget_used = schedule.total_duration();
    let budget_violation = (budget_used > instance.t_horizon + tol).then_some(Violation::Budget {
        excess: budget_used - instance.t_horizon,
    });

    let mut report = FeasibilityReport {
        feasible: false,
        budget_used,
        budget_violation,
        tasks,
        worst_violation: 0.0,
    };
    report.worst_violation = report
        .violations()
        .map(Violation::magnitude)
        .fold(0.0, f64::max);
    let feasible = report.violations().next().is_none();
    report.feasible = feasible;
    Ok(report)
}

/// Sum of per-task utilities; rests earn nothing.
pub fn total_utility(schedule: &Schedule, u: &dyn Utility) -> Result<f64> {
    schedule.tasks().iter().map(|t| u.value(t.work)).sum()
}
