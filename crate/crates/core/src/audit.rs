//! Structural properties every optimal schedule must satisfy, checked on a
//! concrete schedule without reference to how it was produced.

use serde::Serialize;

use crate::error::Result;
use crate::model::{check_feasibility, ProblemInstance, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaChecks {
    /// Unused horizon implies every task rests to `x_min` and works to `x_max`.
    /// `None` when the horizon is used up.
    pub slack_saturates: Option<bool>,
    /// Horizon used up with the final ratio below `x_max` implies no rest and
    /// an equal split. `None` when that premise does not hold.
    pub no_rest_equal_split: Option<bool>,
    /// Any task with positive rest ends at `x_max`.
    pub rest_implies_cap: bool,
    /// Every task after the first one ending at `x_max` gets the same work.
    pub equal_after_cap: bool,
}

impl LemmaChecks {
    pub fn all_hold(&self) -> bool {
        self.slack_saturates.unwrap_or(true)
            && self.no_rest_equal_split.unwrap_or(true)
            && self.rest_implies_cap
            && self.equal_after_cap
    }
}

pub fn lemma_checks(inst: &ProblemInstance, schedule: &Schedule, tol: f64) -> Result<LemmaChecks> {
    let report = check_feasibility(inst, schedule, tol)?;
    let tasks = schedule.tasks();
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    let capped = |x: f64| x >= inst.x_max - tol;

    let slack = inst.t_horizon - report.budget_used;
    let slack_saturates = (slack > tol).then(|| {
        report
            .tasks
            .iter()
            .all(|r| near(r.x_bar, inst.x_min) && near(r.x, inst.x_max))
    });

    let terminal = report.terminal_ratio().unwrap_or(inst.x0);
    let no_rest_equal_split = (slack <= tol && !capped(terminal)).then(|| {
        let share = inst.t_horizon / inst.n as f64;
        tasks.iter().all(|t| t.rest <= tol && near(t.work, share))
    });

    let rest_implies_cap = tasks
        .iter()
        .zip(&report.tasks)
        .all(|(t, r)| t.rest <= tol || capped(r.x));

    let equal_after_cap = match report.tasks.iter().position(|r| capped(r.x)) {
        Some(k) => tasks[k + 1..]
            .windows(2)
            .all(|w| near(w[0].work, w[1].work)),
        None => true,
    };

    Ok(LemmaChecks {
        slack_saturates,
        no_rest_equal_split,
        rest_implies_cap,
        equal_after_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{example1, example2, example3};
    use crate::solver::solve;

    #[test]
    fn solver_outputs_satisfy_all_properties() {
        for inst in [example1(), example2(), example3()] {
            let sol = solve(&inst).unwrap();
            let checks = lemma_checks(&inst, &sol.schedule, 1e-9).unwrap();
            assert!(checks.all_hold(), "{checks:?}");
        }
    }

    #[test]
    fn rest_without_reaching_the_cap_is_caught() {
        let inst = example1();
        let sched = Schedule::from_pairs(&[(0.5, 2.0), (0.0, 2.0), (0.0, 2.0)]);
        let checks = lemma_checks(&inst, &sched, 1e-9).unwrap();
        assert!(!checks.rest_implies_cap);
        assert_eq!(checks.slack_saturates, Some(false));
    }

    #[test]
    fn unequal_split_is_caught() {
        let inst = example1();
        let sched = Schedule::from_pairs(&[(0.0, 3.0), (0.0, 2.0), (0.0, 2.0)]);
        let checks = lemma_checks(&inst, &sched, 1e-9).unwrap();
        assert_eq!(checks.no_rest_equal_split, Some(false));
        assert!(!checks.all_hold());
    }
}
