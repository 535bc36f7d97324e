use std::time::Instant;

use workrest::dynamics::work_time_to_reach;
use workrest::model::check_feasibility;
use workrest::oracle::{compare, coordinate_ascent, grid_oracle, OracleConfig, Verdict};
use workrest::presets::{example2, example3};
use workrest::solver::solve;
use workrest::{CaseLabel, ProblemInstance, Schedule, UtilityFunction};

fn two_tasks(t_horizon: f64, x0: f64) -> ProblemInstance {
    ProblemInstance {
        n: 2,
        t_horizon,
        alpha: 0.125,
        x_min: 0.4,
        x_max: 0.85,
        x0,
        utility: UtilityFunction::LogOnePlus,
    }
}

#[test]
fn grid_oracle_matches_solver_on_two_task_instances() {
    for (t, x0) in [
        (5.87, 0.7),
        (6.5, 0.7),
        (4.0, 0.6),
        (12.0, 0.8),
        (40.0, 0.6),
    ] {
        let inst = two_tasks(t, x0);
        let sol = solve(&inst).unwrap();
        let run = grid_oracle(&inst, &OracleConfig::default()).unwrap();
        let report = check_feasibility(&inst, &run.solution.schedule, 1e-6).unwrap();
        assert!(report.feasible);
        let cmp = compare(&inst, &sol, &run.solution, 1e-3).unwrap();
        assert_eq!(cmp.verdict, Verdict::Match, "T = {t}, x0 = {x0}: {cmp:?}");
    }
}

#[test]
fn polish_lifts_lattice_off_a_ridge() {
    // Optimum has the cap and the budget both active; lattice refinement
    // stalls about 1e-3 short of it.
    let inst = ProblemInstance {
        n: 2,
        t_horizon: 9.333434616189384,
        alpha: 0.2689097096244474,
        x_min: 0.23472422155641903,
        x_max: 0.9332447120114963,
        x0: 0.6885379512192624,
        utility: UtilityFunction::LogOnePlus,
    };
    let sol = solve(&inst).unwrap();
    let lattice = OracleConfig {
        polish: false,
        refinement_rounds: 6,
        ..OracleConfig::default()
    };
    let raw = grid_oracle(&inst, &lattice).unwrap();
    assert!(sol.objective - raw.solution.objective > 1e-3);
    let run = grid_oracle(&inst, &OracleConfig::default()).unwrap();
    assert!((sol.objective - run.solution.objective).abs() < 1e-8);
    assert!(
        check_feasibility(&inst, &run.solution.schedule, 0.0)
            .unwrap()
            .feasible
    );
}

#[test]
fn ascent_matches_solver_on_worked_examples() {
    for inst in [example2(), example3()] {
        let started = Instant::now();
        let sol = solve(&inst).unwrap();
        let run = coordinate_ascent(&inst, &OracleConfig::default()).unwrap();
        let gap = sol.objective - run.solution.objective;
        assert!(gap.abs() <= 1e-3, "gap {gap}");
        assert!(run.solution.objective >= 3.6304 - 1e-3);
        println!(
            "T = {}: solver {:.6}, ascent {:.6}, {} evals, {:?}",
            inst.t_horizon,
            sol.objective,
            run.solution.objective,
            run.evaluations,
            started.elapsed()
        );
    }
}

#[test]
fn ascent_from_zero_saturates_slack_instance() {
    let inst = two_tasks(40.0, 0.6);
    let config = OracleConfig {
        starts: 1,
        ..OracleConfig::default()
    };
    let run = coordinate_ascent(&inst, &config).unwrap();
    let t_star = work_time_to_reach(0.4, 0.85, 0.125).unwrap();
    for task in run.solution.schedule.tasks() {
        assert!((task.work - t_star).abs() < 1e-3, "{task:?}");
    }
    assert_eq!(run.solution.case, CaseLabel::Slack);
}

#[test]
fn ascent_is_deterministic() {
    let config = OracleConfig {
        starts: 4,
        seed: 7,
        ..OracleConfig::default()
    };
    let a = coordinate_ascent(&example3(), &config).unwrap();
    let b = coordinate_ascent(&example3(), &config).unwrap();
    assert_eq!(a, b);
}

#[test]
fn compare_verdicts() {
    let inst = example3();
    let sol = solve(&inst).unwrap();
    let same = compare(&inst, &sol, &sol, 1e-9).unwrap();
    assert_eq!(same.verdict, Verdict::Match);
    assert_eq!(same.objective_gap_abs, 0.0);
    assert_eq!(same.schedule_linf, 0.0);
    assert!(same.lemma_checks.agree);

    let mut truncated = sol.clone();
    let tasks: Vec<_> = sol
        .schedule
        .tasks()
        .iter()
        .map(|t| workrest::Task::new(t.rest, t.work * 0.5))
        .collect();
    truncated.schedule = Schedule::new(tasks);
    truncated.objective = workrest::total_utility(&truncated.schedule, &inst.utility).unwrap();
    let cmp = compare(&inst, &sol, &truncated, 1e-6).unwrap();
    assert_eq!(cmp.verdict, Verdict::ADominates);
    let cmp = compare(&inst, &truncated, &sol, 1e-6).unwrap();
    assert_eq!(cmp.verdict, Verdict::BDominates);
}
