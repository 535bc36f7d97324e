//! Structural optimal-policy solver.
//!
//! The optimum takes one of three shapes:
//!
//! * **slack** - the horizon is long enough to rest down to `x_min` and work
//!   up to `x_max` on every task;
//! * **equal split** - working back to back for the whole horizon never
//!   reaches `x_max`, so every task gets `T / N` with no rest;
//! * **structured** - `m` tasks are processed back to back with common work
//!   time `t1` (policy 1), then the remaining `N - m` tasks each rest and work
//!   `t2`, ending every task exactly at `x_max` (policy 2). The first policy-2
//!   rest `r1` differs from the steady-state rest `r2` unless policy 1 itself
//!   ended at `x_max` (the boundary sub-case).
//!
//! For the structured shape the horizon pins `t2` once `m` and `t1` are
//! chosen, so the search is one-dimensional per `m`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{rest_time_to_reach, work_time_to_reach, work_transition};
use crate::error::{invalid, DomainBound, Error, Result};
use crate::model::{total_utility, ProblemInstance, Schedule, Task};
use crate::utility::Utility;

/// Slack in ratio comparisons that should hold exactly in real arithmetic.
const RATIO_EPS: f64 = 1e-12;
/// Points in the coarse scan over `t1`.
const COARSE_POINTS: usize = 64;
/// Width at which golden-section refinement over `t1` stops.
const GOLDEN_WIDTH: f64 = 1e-9;
/// Objective ties closer than this are broken toward smaller `m`.
const TIE_EPS: f64 = 1e-12;
/// Policy-1 work may exceed the time to `x_max` by this much and still count
/// as reaching it, so values rounded to four decimals are accepted.
pub const OVERSHOOT_SLACK: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    Slack,
    NoRestEqualSplit,
    Structured {
        m: usize,
        /// Policy-1 work ends exactly at `x_max`, so there is no separate `r1`.
        boundary: bool,
    },
}

impl CaseLabel {
    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::Slack => "SLACK",
            CaseLabel::NoRestEqualSplit => "NO_REST_EQUAL_SPLIT",
            CaseLabel::Structured { .. } => "STRUCTURED",
        }
    }
}

/// Best policy found for one value of `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub m: usize,
    pub t1: Option<f64>,
    pub t2: f64,
    pub r1: f64,
    pub r2: f64,
    pub objective: f64,
    pub boundary: bool,
    /// Horizon left idle because policy 2 already rests to `x_min`.
    pub slack: f64,
    /// Ratio after policy 1.
    pub x_m: f64,
    /// Pre-work ratio of every policy-2 task.
    pub x_bar: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub stationarity_residual: Option<f64>,
    pub budget_residual: f64,
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    #[serde(flatten)]
    pub case: CaseLabel,
    pub schedule: Schedule,
    pub t1_tilde: Option<f64>,
    pub t2_tilde: Option<f64>,
    pub r1_tilde: Option<f64>,
    pub r2_tilde: Option<f64>,
    pub objective: f64,
    pub diagnostics: Diagnostics,
}

impl Solution {
    /// Number of policy-1 tasks: `m` when structured, `N` for the equal split.
    pub fn m(&self) -> Option<usize> {
        match self.case {
            CaseLabel::Structured { m, .. } => Some(m),
            CaseLabel::NoRestEqualSplit => Some(self.schedule.len()),
            CaseLabel::Slack => None,
        }
    }

    /// Serialized document with `m` spelled out next to the case tag.
    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::to_value(self).expect("solution is always serializable");
        if let serde_json::Value::Object(map) = &mut doc {
            map.insert("m".into(), serde_json::json!(self.m()));
            map.entry("boundary").or_insert(serde_json::Value::Null);
        }
        doc
    }
}

/// Longest work from `x_min` to `x_max` and longest rest from `x_max` to `x_min`.
fn saturating_times(inst: &ProblemInstance) -> (f64, f64) {
    let t_star = work_time_to_reach(inst.x_min, inst.x_max, inst.alpha).expect("x_min < x_max < 1");
    let r_star = rest_time_to_reach(inst.x_max, inst.x_min, inst.alpha).expect("0 < x_min < x_max");
    (t_star, r_star)
}

/// No-rest work time that drives `x0` up to `x_max`.
fn policy_one_capacity(inst: &ProblemInstance) -> f64 {
    work_time_to_reach(inst.x0, inst.x_max, inst.alpha).expect("x0 <= x_max < 1")
}

/// Rest to `x_min`, then work to `x_max`, on every task. Returned whether or
/// not it fits the horizon, together with its total length.
pub fn greedy_saturating_schedule(inst: &ProblemInstance) -> Result<(Schedule, f64)> {
    inst.validate()?;
    let (t_star, r_star) = saturating_times(inst);
    let first_rest = rest_time_to_reach(inst.x0, inst.x_min, inst.alpha)?;
    let tasks = (0..inst.n)
        .map(|i| Task::new(if i == 0 { first_rest } else { r_star }, t_star))
        .collect::<Vec<_>>();
    let schedule = Schedule::new(tasks);
    let total = schedule.total_duration();
    Ok((schedule, total))
}

/// Pre-work ratio from which work `t2` ends exactly at `x_max`.
pub fn policy2_pre_work_ratio(t2: f64, x_max: f64, alpha: f64) -> Result<f64> {
    if !(t2.is_finite() && t2 >= 0.0) {
        return Err(invalid(format!("t2 must be non-negative, got {t2}")));
    }
    if !(alpha > 0.0) {
        return Err(invalid(format!("alpha must be positive, got {alpha}")));
    }
    let x_bar = 1.0 - (1.0 - x_max) * (alpha * t2).exp();
    if x_bar < 0.0 {
        return Err(invalid(format!(
            "t2 = {t2} is too long: no non-negative ratio reaches x_max = {x_max}"
        )));
    }
    Ok(x_bar)
}

/// Fixed part of the policy-2 budget: everything determined by `m` and `t1`.
#[derive(Debug, Clone, Copy)]
struct PolicyOne {
    m: usize,
    t1: f64,
    x_m: f64,
    /// Shortest admissible `t2` (pre-work ratio equals `x_m`, no first rest).
    t2_lo: f64,
    /// Longest admissible `t2` (pre-work ratio equals `x_min`).
    t2_hi: f64,
}

impl PolicyOne {
    fn new(inst: &ProblemInstance, m: usize, t1: f64) -> Result<Self> {
        if m >= inst.n {
            return Err(Error::InfeasibleCombination {
                m,
                bound: DomainBound::PolicyCount,
            });
        }
        let t1 = if m == 0 { 0.0 } else { t1 };
        if !(t1.is_finite() && t1 >= 0.0) {
            return Err(invalid(format!("t1 must be non-negative, got {t1}")));
        }
        let capacity = policy_one_capacity(inst);
        let work = m as f64 * t1;
        if work > capacity + OVERSHOOT_SLACK {
            return Err(Error::InfeasibleCombination {
                m,
                bound: DomainBound::PolicyOneOvershoot,
            });
        }
        let x_m = work_transition(inst.x0, work, inst.alpha)?.min(inst.x_max);
        let t2_lo = work_time_to_reach(x_m, inst.x_max, inst.alpha)?;
        let (t2_hi, _) = saturating_times(inst);
        Ok(PolicyOne {
            m,
            t1,
            x_m,
            t2_lo,
            t2_hi,
        })
    }

    /// Pre-work ratio for `t2`, pinned to `[x_min, x_m]` against round-off.
    fn x_bar(&self, inst: &ProblemInstance, t2: f64) -> f64 {
        (1.0 - (1.0 - inst.x_max) * (inst.alpha * t2).exp()).clamp(inst.x_min, self.x_m)
    }

    fn rests(&self, inst: &ProblemInstance, t2: f64) -> (f64, f64, f64) {
        let x_bar = self.x_bar(inst, t2);
        let r1 = (self.x_m / x_bar).ln() / inst.alpha;
        let r2 = (inst.x_max / x_bar).ln() / inst.alpha;
        (x_bar, r1, r2)
    }

    fn budget(&self, inst: &ProblemInstance, t2: f64) -> f64 {
        let (_, r1, r2) = self.rests(inst, t2);
        let rest_tasks = (inst.n - self.m) as f64;
        self.m as f64 * self.t1 + r1 + rest_tasks * t2 + (rest_tasks - 1.0) * r2
    }
}

/// Total time used by `m` policy-1 tasks of length `t1` followed by `N - m`
/// policy-2 tasks of length `t2`.
pub fn budget(inst: &ProblemInstance, m: usize, t1: f64, t2: f64) -> Result<f64> {
    inst.validate()?;
    let p1 = PolicyOne::new(inst, m, t1)?;
    let x_bar = policy2_pre_work_ratio(t2, inst.x_max, inst.alpha).map_err(|_| {
        Error::InfeasibleCombination {
            m,
            bound: DomainBound::BelowMinimum,
        }
    })?;
    if x_bar < inst.x_min - RATIO_EPS {
        return Err(Error::InfeasibleCombination {
            m,
            bound: DomainBound::BelowMinimum,
        });
    }
    if x_bar > p1.x_m + RATIO_EPS {
        return Err(Error::InfeasibleCombination {
            m,
            bound: DomainBound::AboveStart,
        });
    }
    Ok(p1.budget(inst, t2))
}

/// Root of `budget(m, t1, t2) = T` in `t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetRoot {
    pub t2: f64,
    /// Unused horizon when even resting to `x_min` leaves time over.
    pub residual_slack: f64,
}

fn solve_t2(inst: &ProblemInstance, p1: &PolicyOne) -> Result<BudgetRoot> {
    let horizon = inst.t_horizon;
    let at_lo = p1.budget(inst, p1.t2_lo);
    if at_lo > horizon * (1.0 + RATIO_EPS) + RATIO_EPS {
        return Err(Error::InfeasibleCombination {
            m: p1.m,
            bound: DomainBound::HorizonTooShort,
        });
    }
    if at_lo >= horizon {
        return Ok(BudgetRoot {
            t2: p1.t2_lo,
            residual_slack: 0.0,
        });
    }
    let at_hi = p1.budget(inst, p1.t2_hi);
    if at_hi <= horizon {
        return Ok(BudgetRoot {
            t2: p1.t2_hi,
            residual_slack: horizon - at_hi,
        });
    }
    // Budget is strictly increasing in t2; bisect down to adjacent floats.
    let (mut lo, mut hi) = (p1.t2_lo, p1.t2_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p1.budget(inst, mid) > horizon {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let t2 = if (p1.budget(inst, hi) - horizon).abs() < (p1.budget(inst, lo) - horizon).abs() {
        hi
    } else {
        lo
    };
    Ok(BudgetRoot {
        t2,
        residual_slack: 0.0,
    })
}

/// Policy-2 work time that makes the whole schedule last exactly `T`.
pub fn solve_t2_for_budget(inst: &ProblemInstance, m: usize, t1: f64) -> Result<BudgetRoot> {
    inst.validate()?;
    let p1 = PolicyOne::new(inst, m, t1)?;
    solve_t2(inst, &p1)
}

/// Which regime an instance falls in, before any optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Slack,
    EqualSplit,
    Structured,
}

fn regime(inst: &ProblemInstance) -> Result<Regime> {
    let (_, greedy_total) = greedy_saturating_schedule(inst)?;
    if greedy_total <= inst.t_horizon {
        return Ok(Regime::Slack);
    }
    let x_end = work_transition(inst.x0, inst.t_horizon, inst.alpha)?;
    if x_end < inst.x_max {
        Ok(Regime::EqualSplit)
    } else {
        Ok(Regime::Structured)
    }
}

pub fn classify_case(inst: &ProblemInstance) -> Result<CaseLabel> {
    Ok(match regime(inst)? {
        Regime::Slack => CaseLabel::Slack,
        Regime::EqualSplit => CaseLabel::NoRestEqualSplit,
        Regime::Structured => solve(inst)?.case,
    })
}

fn evaluate(inst: &ProblemInstance, m: usize, t1: f64) -> Option<Candidate> {
    let p1 = PolicyOne::new(inst, m, t1).ok()?;
    let root = solve_t2(inst, &p1).ok()?;
    let (x_bar, r1, r2) = p1.rests(inst, root.t2);
    let u = &inst.utility;
    let objective =
        m as f64 * u.value(p1.t1).ok()? + (inst.n - m) as f64 * u.value(root.t2).ok()?;
    Some(Candidate {
        m,
        t1: (m > 0).then_some(p1.t1),
        t2: root.t2,
        r1,
        r2,
        objective,
        boundary: p1.x_m >= inst.x_max - RATIO_EPS,
        slack: root.residual_slack,
        x_m: p1.x_m,
        x_bar,
    })
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        c
    } else {
        d
    }
}

/// Best `(t1, t2)` for a fixed `m`, or `None` if no `t1` fits the horizon.
fn best_for_m(inst: &ProblemInstance, m: usize) -> Option<Candidate> {
    if m == 0 {
        return evaluate(inst, 0, 0.0);
    }
    let t1_max = policy_one_capacity(inst) / m as f64;
    if t1_max <= 0.0 {
        return None;
    }
    let boundary = evaluate(inst, m, t1_max)?;

    // The shortest-t2 budget falls as t1 grows, so the feasible t1 form an
    // interval ending at t1_max.
    let fits = |t1: f64| evaluate(inst, m, t1).is_some();
    let t1_min = if fits(0.0) {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, t1_max);
        while hi - lo > 1e-14 * t1_max.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if fits(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let score = |t1: f64| evaluate(inst, m, t1).map_or(f64::NEG_INFINITY, |c| c.objective);
    let step = (t1_max - t1_min) / (COARSE_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..COARSE_POINTS)
        .map(|k| {
            if k + 1 == COARSE_POINTS {
                t1_max
            } else {
                t1_min + k as f64 * step
            }
        })
        .collect();
    let (best_k, _) =
        grid.iter()
            .map(|&t| score(t))
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
            );
    let lo = grid[best_k.saturating_sub(1)];
    let hi = grid[(best_k + 1).min(COARSE_POINTS - 1)];
    let t1_refined = golden_section_max(score, lo, hi, GOLDEN_WIDTH);

    match evaluate(inst, m, t1_refined) {
        Some(interior) if interior.objective > boundary.objective + TIE_EPS => Some(interior),
        _ => Some(boundary),
    }
}

fn equal_split(inst: &ProblemInstance) -> Result<Schedule> {
    let t = inst.t_horizon / inst.n as f64;
    Ok(Schedule::new(vec![Task::new(0.0, t); inst.n]))
}

fn assemble(inst: &ProblemInstance, c: &Candidate) -> Schedule {
    let tasks = (0..inst.n)
        .map(|i| match i.cmp(&c.m) {
            std::cmp::Ordering::Less => Task::new(0.0, c.t1.unwrap_or(0.0)),
            std::cmp::Ordering::Equal => Task::new(c.r1, c.t2),
            std::cmp::Ordering::Greater => Task::new(c.r2, c.t2),
        })
        .collect();
    Schedule::new(tasks)
}

/// Relative gap between the two sides of `u'(t1) x_m = u'(t2) x_bar`.
pub fn stationarity_residual(
    u: &dyn Utility,
    t1: f64,
    t2: f64,
    x_m: f64,
    x_bar: f64,
) -> Result<(f64, f64, f64)> {
    let lhs = u.slope(t1)? * x_m;
    let rhs = u.slope(t2)? * x_bar;
    let scale = lhs.max(rhs);
    let residual = if scale > 0.0 {
        (lhs - rhs).abs() / scale
    } else {
        0.0
    };
    Ok((lhs, rhs, residual))
}

pub fn solve(inst: &ProblemInstance) -> Result<Solution> {
    inst.validate()?;
    let u = &inst.utility;
    match regime(inst)? {
        Regime::Slack => {
            let (schedule, total) = greedy_saturating_schedule(inst)?;
            let (t_star, r_star) = saturating_times(inst);
            let objective = total_utility(&schedule, u)?;
            Ok(Solution {
                case: CaseLabel::Slack,
                r1_tilde: Some(schedule.tasks()[0].rest),
                schedule,
                t1_tilde: None,
                t2_tilde: Some(t_star),
                r2_tilde: Some(r_star),
                objective,
                diagnostics: Diagnostics {
                    stationarity_residual: None,
                    budget_residual: inst.t_horizon - total,
                    candidates: Vec::new(),
                },
            })
        }
        Regime::EqualSplit => {
            let schedule = equal_split(inst)?;
            let objective = total_utility(&schedule, u)?;
            Ok(Solution {
                case: CaseLabel::NoRestEqualSplit,
                t1_tilde: Some(inst.t_horizon / inst.n as f64),
                t2_tilde: None,
                r1_tilde: None,
                r2_tilde: None,
                objective,
                diagnostics: Diagnostics {
                    stationarity_residual: None,
                    budget_residual: inst.t_horizon - schedule.total_duration(),
                    candidates: Vec::new(),
                },
                schedule,
            })
        }
        Regime::Structured => solve_structured(inst),
    }
}

fn solve_structured(inst: &ProblemInstance) -> Result<Solution> {
    let u = &inst.utility;
    let candidates: Vec<Candidate> = (0..inst.n).filter_map(|m| best_for_m(inst, m)).collect();
    let best = candidates
        .iter()
        .fold(None::<&Candidate>, |acc, c| match acc {
            Some(b) if c.objective <= b.objective + TIE_EPS => Some(b),
            _ => Some(c),
        })
        .ok_or_else(|| {
            Error::Internal(format!(
                "no policy-1 task count admits a feasible schedule (T = {}, N = {})",
                inst.t_horizon, inst.n
            ))
        })?
        .clone();

    // Working straight through may end exactly at x_max; the equal split is
    // then feasible as well and competes on objective.
    let x_end = work_transition(inst.x0, inst.t_horizon, inst.alpha)?;
    if (x_end - inst.x_max).abs() <= RATIO_EPS {
        let schedule = equal_split(inst)?;
        let objective = total_utility(&schedule, u)?;
        if objective > best.objective + TIE_EPS {
            return Ok(Solution {
                case: CaseLabel::NoRestEqualSplit,
                t1_tilde: Some(inst.t_horizon / inst.n as f64),
                t2_tilde: None,
                r1_tilde: None,
                r2_tilde: None,
                objective,
                diagnostics: Diagnostics {
                    stationarity_residual: None,
                    budget_residual: inst.t_horizon - schedule.total_duration(),
                    candidates,
                },
                schedule,
            });
        }
    }

    let schedule = assemble(inst, &best);
    let objective = total_utility(&schedule, u)?;
    let stationarity = match best.t1 {
        Some(t1) if !best.boundary => {
            Some(stationarity_residual(u, t1, best.t2, best.x_m, best.x_bar)?.2)
        }
        _ => None,
    };
    Ok(Solution {
        case: CaseLabel::Structured {
            m: best.m,
            boundary: best.boundary,
        },
        t1_tilde: best.t1,
        t2_tilde: Some(best.t2),
        r1_tilde: (!best.boundary).then_some(best.r1),
        r2_tilde: Some(best.r2),
        objective,
        diagnostics: Diagnostics {
            stationarity_residual: stationarity,
            budget_residual: inst.t_horizon - schedule.total_duration(),
            candidates,
        },
        schedule,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StationarityReport {
    Checked {
        lhs: f64,
        rhs: f64,
        residual: f64,
        pass: bool,
    },
    NotApplicable {
        reason: String,
    },
}

impl StationarityReport {
    pub fn passed(&self) -> Option<bool> {
        match self {
            StationarityReport::Checked { pass, .. } => Some(*pass),
            StationarityReport::NotApplicable { .. } => None,
        }
    }
}

/// First-order optimality audit for interior structured optima. Raising `t1`
/// costs `m / x_m` of horizon per unit and raising `t2` costs `(N - m) / x_bar`,
/// so at an interior optimum `u'(t1) x_m = u'(t2) x_bar`.
pub fn verify_stationarity(
    inst: &ProblemInstance,
    solution: &Solution,
    tol: f64,
) -> Result<StationarityReport> {
    let na = |reason: &str| {
        Ok(StationarityReport::NotApplicable {
            reason: reason.to_string(),
        })
    };
    let m = match solution.case {
        CaseLabel::Slack => return na("slack schedule: the horizon does not bind"),
        CaseLabel::NoRestEqualSplit => return na("equal split: no policy-2 tasks"),
        CaseLabel::Structured { boundary: true, .. } => {
            return na("boundary optimum: policy-1 work is capped at x_max")
        }
        CaseLabel::Structured { m: 0, .. } => return na("m = 0: no policy-1 tasks"),
        CaseLabel::Structured { m, .. } => m,
    };
    let (Some(t1), Some(t2)) = (solution.t1_tilde, solution.t2_tilde) else {
        return Err(invalid(
            "structured solution is missing t1_tilde or t2_tilde",
        ));
    };
    let x_m = work_transition(inst.x0, m as f64 * t1, inst.alpha)?;
    let x_bar = policy2_pre_work_ratio(t2, inst.x_max, inst.alpha)?;
    let (lhs, rhs, residual) = stationarity_residual(&inst.utility, t1, t2, x_m, x_bar)?;
    Ok(StationarityReport::Checked {
        lhs,
        rhs,
        residual,
        pass: residual <= tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    T1Greater,
    T1Less,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderingPrediction {
    pub ordering: Ordering,
    /// The prediction came from the `N < 2m` ratio comparison.
    pub ratio_branch: bool,
    /// Ratio-branch output disagrees with the ordering implied by
    /// `u'(t1) x_m = u'(t2) x_bar` for strictly concave `u`.
    pub discrepancy: bool,
}

/// Predicted ordering of `t1` and `t2` for a structured optimum, by the
/// textbook case rule taken as stated. When `N < 2m` and the optimum is not on the
/// boundary, it compares `m (1 - x_m) / x_m` against
/// `(N - m) (1 - x_bar) / x_bar`; that branch is flagged if it contradicts the
/// stationarity ordering.
pub fn ordering_rule(
    case: CaseLabel,
    n: usize,
    m: usize,
    x_m: f64,
    x_bar: f64,
) -> Result<OrderingPrediction> {
    let boundary = match case {
        CaseLabel::Structured { boundary, .. } => boundary,
        other => {
            return Err(invalid(format!(
                "ordering rule applies to structured cases only, got {}",
                other.name()
            )))
        }
    };
    if boundary || n >= 2 * m {
        return Ok(OrderingPrediction {
            ordering: Ordering::T1Greater,
            ratio_branch: false,
            discrepancy: false,
        });
    }
    let left = m as f64 * (1.0 - x_m) / x_m;
    let right = (n - m) as f64 * (1.0 - x_bar) / x_bar;
    let ordering = if (left - right).abs() <= 1e-12 {
        Ordering::Equal
    } else if left < right {
        Ordering::T1Greater
    } else {
        Ordering::T1Less
    };
    let implied = if (x_bar - x_m).abs() <= 1e-12 {
        Ordering::Equal
    } else if x_bar < x_m {
        Ordering::T1Greater
    } else {
        Ordering::T1Less
    };
    Ok(OrderingPrediction {
        ordering,
        ratio_branch: true,
        discrepancy: ordering != implied,
    })
}
