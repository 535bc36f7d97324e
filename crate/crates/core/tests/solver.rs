use workrest::dynamics::{rest_time_to_reach, work_time_to_reach, work_transition};
use workrest::error::{DomainBound, Error};
use workrest::model::{check_feasibility, total_utility, DEFAULT_FEASIBILITY_TOL};
use workrest::presets::{example1, example2, example3};
use workrest::solver::{
    budget, classify_case, greedy_saturating_schedule, ordering_rule, policy2_pre_work_ratio,
    solve, solve_t2_for_budget, verify_stationarity, CaseLabel, Ordering, StationarityReport,
};
use workrest::{ProblemInstance, Schedule, Solution, UtilityFunction};

const ALPHA: f64 = 0.125;

fn instance(n: usize, t_horizon: f64, x0: f64) -> ProblemInstance {
    ProblemInstance {
        n,
        t_horizon,
        alpha: ALPHA,
        x_min: 0.4,
        x_max: 0.85,
        x0,
        utility: UtilityFunction::LogOnePlus,
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn greedy_saturating_times() {
    let (sched, _) = greedy_saturating_schedule(&instance(3, 5.0, 0.4)).unwrap();
    assert_eq!(sched.tasks()[0].rest, 0.0);

    let (sched, total) = greedy_saturating_schedule(&instance(2, 5.0, 0.6)).unwrap();
    let [first, second] = sched.tasks() else {
        panic!()
    };
    assert!(close(first.rest, 3.243721, 1e-6));
    assert!(close(first.work, 11.090355, 1e-6));
    assert!(close(second.rest, 8.0 * (0.85f64 / 0.4).ln(), 1e-12));
    assert!(close(second.rest, 6.030176, 1e-5));
    assert!(close(second.work, 11.090355, 1e-6));
    assert!(close(total, 31.454607, 1e-5));
}

#[test]
fn case_classification() {
    assert_eq!(
        classify_case(&example1()).unwrap(),
        CaseLabel::NoRestEqualSplit
    );
    assert_eq!(
        classify_case(&example2()).unwrap(),
        CaseLabel::Structured {
            m: 2,
            boundary: true
        }
    );
    assert_eq!(
        classify_case(&example3()).unwrap(),
        CaseLabel::Structured {
            m: 2,
            boundary: false
        }
    );
    assert_eq!(
        classify_case(&instance(2, 40.0, 0.6)).unwrap(),
        CaseLabel::Slack
    );
}

#[test]
fn pre_work_ratio() {
    assert!(close(
        policy2_pre_work_ratio(0.0, 0.85, ALPHA).unwrap(),
        0.85,
        1e-15
    ));
    let x2 = policy2_pre_work_ratio(2.6740, 0.85, ALPHA).unwrap();
    assert!(close(x2, 0.790467, 1e-5));
    assert!(close(
        rest_time_to_reach(0.85, x2, ALPHA).unwrap(),
        0.5808,
        1e-3
    ));
    let x3 = policy2_pre_work_ratio(2.2610, 0.85, ALPHA).unwrap();
    assert!(close(x3, 0.801010, 1e-5));
    assert!(close(
        rest_time_to_reach(0.835403, x3, ALPHA).unwrap(),
        0.3364,
        1e-3
    ));
    assert!(close(
        work_transition(x3, 2.2610, ALPHA).unwrap(),
        0.85,
        1e-12
    ));
    assert!(policy2_pre_work_ratio(100.0, 0.85, ALPHA).is_err());
}

#[test]
fn budget_examples() {
    assert!(close(
        budget(&example2(), 2, 2.7726, 2.6740).unwrap(),
        8.8,
        1e-3
    ));
    assert!(close(
        budget(&example3(), 2, 2.4013, 2.2610).unwrap(),
        7.4,
        1e-3
    ));

    let inst = instance(3, 30.0, 0.6);
    let w1 = work_time_to_reach(0.6, 0.85, ALPHA).unwrap();
    let expected = 3.0 * w1 + 2.0 * rest_time_to_reach(0.85, 0.6, ALPHA).unwrap();
    assert!(close(budget(&inst, 0, 123.0, w1).unwrap(), expected, 1e-12));
}

#[test]
fn budget_domain_errors() {
    let inst = example3();
    let bound = |r| match r {
        Err(Error::InfeasibleCombination { bound, .. }) => bound,
        other => panic!("expected domain error, got {other:?}"),
    };
    assert_eq!(bound(budget(&inst, 3, 1.0, 2.0)), DomainBound::PolicyCount);
    assert_eq!(
        bound(budget(&inst, 2, 4.0, 2.0)),
        DomainBound::PolicyOneOvershoot
    );
    assert_eq!(
        bound(budget(&inst, 2, 2.4, 12.0)),
        DomainBound::BelowMinimum
    );
    assert_eq!(bound(budget(&inst, 2, 2.4, 0.1)), DomainBound::AboveStart);
}

#[test]
fn budget_increases_in_t2() {
    let inst = example3();
    let t1 = 2.0;
    let x_m = work_transition(0.7, 2.0 * t1, ALPHA).unwrap();
    let lo = work_time_to_reach(x_m, 0.85, ALPHA).unwrap();
    let hi = work_time_to_reach(0.4, 0.85, ALPHA).unwrap();
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=50 {
        let t2 = lo + (hi - lo) * k as f64 / 50.0;
        let b = budget(&inst, 2, t1, t2).unwrap();
        assert!(b > prev);
        prev = b;
    }
}

#[test]
fn t2_root() {
    let root = solve_t2_for_budget(&example2(), 2, 2.7726).unwrap();
    assert!(close(root.t2, 2.6740, 1e-3));
    assert_eq!(root.residual_slack, 0.0);

    let root = solve_t2_for_budget(&example3(), 2, 2.4013).unwrap();
    assert!(close(root.t2, 2.2610, 1e-3));

    for (inst, t1) in [(example2(), 2.5), (example3(), 2.2), (example3(), 1.9)] {
        let root = solve_t2_for_budget(&inst, 2, t1).unwrap();
        let b = budget(&inst, 2, t1, root.t2).unwrap();
        assert!(close(b, inst.t_horizon, 1e-9), "{b}");
    }

    // Very short first tasks leave too little room: three policy-2 tasks
    // cannot fit in the horizon.
    assert!(matches!(
        solve_t2_for_budget(&example3(), 0, 0.0),
        Err(Error::InfeasibleCombination {
            bound: DomainBound::HorizonTooShort,
            ..
        })
    ));

    // Long horizon but greedy does not fit: policy 2 rests to x_min and idles.
    let inst = instance(2, 30.0, 0.6);
    let root =
        solve_t2_for_budget(&inst, 1, work_time_to_reach(0.6, 0.85, ALPHA).unwrap()).unwrap();
    assert!(close(
        root.t2,
        work_time_to_reach(0.4, 0.85, ALPHA).unwrap(),
        1e-12
    ));
    assert!(root.residual_slack > 0.0);
}

#[test]
fn worked_examples() {
    let s1 = solve(&example1()).unwrap();
    assert_eq!(s1.case, CaseLabel::NoRestEqualSplit);
    for task in s1.schedule.tasks() {
        assert_eq!(task.rest, 0.0);
        assert!(close(task.work, 2.3333, 1e-3));
    }

    let s2 = solve(&example2()).unwrap();
    assert_eq!(
        s2.case,
        CaseLabel::Structured {
            m: 2,
            boundary: true
        }
    );
    assert!(close(s2.t1_tilde.unwrap(), 2.7726, 1e-3));
    assert!(close(s2.t2_tilde.unwrap(), 2.6740, 1e-3));
    assert!(close(s2.r2_tilde.unwrap(), 0.5808, 1e-3));
    assert_eq!(s2.r1_tilde, None);
    assert_eq!(s2.schedule.tasks()[2].rest, s2.r2_tilde.unwrap());

    let s3 = solve(&example3()).unwrap();
    assert_eq!(
        s3.case,
        CaseLabel::Structured {
            m: 2,
            boundary: false
        }
    );
    assert!(close(s3.t1_tilde.unwrap(), 2.4013, 1e-3));
    assert!(close(s3.t2_tilde.unwrap(), 2.2610, 1e-3));
    assert!(close(s3.r1_tilde.unwrap(), 0.3364, 1e-3));

    for (inst, sol) in [(example1(), &s1), (example2(), &s2), (example3(), &s3)] {
        let report = check_feasibility(&inst, &sol.schedule, DEFAULT_FEASIBILITY_TOL).unwrap();
        assert!(report.feasible, "{report:?}");
        let obj = total_utility(&sol.schedule, &inst.utility).unwrap();
        assert!(close(obj, sol.objective, 1e-12));
    }
}

#[test]
fn stationarity_audit() {
    let inst = example3();
    let s3 = solve(&inst).unwrap();
    match verify_stationarity(&inst, &s3, 1e-6).unwrap() {
        StationarityReport::Checked { residual, pass, .. } => {
            assert!(pass, "residual {residual}");
        }
        other => panic!("{other:?}"),
    }

    let mut rounded = s3.clone();
    rounded.t1_tilde = Some(2.4013);
    rounded.t2_tilde = Some(2.2610);
    match verify_stationarity(&inst, &rounded, 1e-3).unwrap() {
        StationarityReport::Checked {
            lhs,
            rhs,
            residual,
            pass,
        } => {
            assert!(close(lhs, 0.2456, 1e-3) && close(rhs, 0.2456, 1e-3));
            assert!(residual < 2e-4);
            assert!(pass);
        }
        other => panic!("{other:?}"),
    }

    let s2 = solve(&example2()).unwrap();
    assert!(matches!(
        verify_stationarity(&example2(), &s2, 1e-6).unwrap(),
        StationarityReport::NotApplicable { .. }
    ));
    let s1 = solve(&example1()).unwrap();
    assert_eq!(
        verify_stationarity(&example1(), &s1, 1e-6)
            .unwrap()
            .passed(),
        None
    );
}

#[test]
fn ordering_rule_cases() {
    let boundary = CaseLabel::Structured {
        m: 2,
        boundary: true,
    };
    let p = ordering_rule(boundary, 3, 2, 0.85, 0.790467).unwrap();
    assert_eq!(p.ordering, Ordering::T1Greater);
    assert!(!p.discrepancy);

    let interior = |m| CaseLabel::Structured { m, boundary: false };
    let p = ordering_rule(interior(1), 4, 1, 0.8, 0.7).unwrap();
    assert_eq!(p.ordering, Ordering::T1Greater);
    assert!(!p.ratio_branch);

    let p = ordering_rule(interior(2), 3, 2, 0.835403, 0.801010).unwrap();
    assert!(p.ratio_branch);
    assert_eq!(p.ordering, Ordering::T1Less);
    assert!(p.discrepancy);

    assert!(ordering_rule(CaseLabel::Slack, 3, 0, 0.5, 0.5).is_err());
}

#[test]
fn slack_solution_saturates() {
    let inst = instance(2, 40.0, 0.6);
    let sol = solve(&inst).unwrap();
    assert_eq!(sol.case, CaseLabel::Slack);
    assert!(close(
        sol.diagnostics.budget_residual,
        40.0 - 31.454607,
        1e-5
    ));
    let report = check_feasibility(&inst, &sol.schedule, 1e-9).unwrap();
    for rec in &report.tasks {
        assert!(close(rec.x_bar, 0.4, 1e-9) && close(rec.x, 0.85, 1e-9));
    }
}

#[test]
fn starting_at_the_cap_rests_first() {
    let inst = instance(3, 12.0, 0.85);
    let sol = solve(&inst).unwrap();
    assert_eq!(
        sol.case,
        CaseLabel::Structured {
            m: 0,
            boundary: true
        }
    );
    let t = sol.schedule.tasks();
    assert!(t[0].rest > 0.0 && close(t[0].rest, t[1].rest, 1e-12));
    assert!(close(sol.schedule.total_duration(), 12.0, 1e-9));
}

#[test]
fn equal_split_tie_at_the_cap() {
    // Working the whole horizon ends exactly at x_max.
    let t = work_time_to_reach(0.6, 0.85, ALPHA).unwrap();
    let inst = instance(3, t, 0.6);
    let sol = solve(&inst).unwrap();
    for task in sol.schedule.tasks() {
        assert!(close(task.work, t / 3.0, 1e-6));
        assert!(task.rest < 1e-9);
    }
}

#[test]
fn solution_document_round_trips() {
    let sol = solve(&example3()).unwrap();
    let doc = sol.to_json();
    assert_eq!(doc["case"], "STRUCTURED");
    assert_eq!(doc["m"], 2);
    assert!(doc["diagnostics"]["candidates"].is_array());
    let back: Solution = serde_json::from_value(doc).unwrap();
    assert_eq!(back, sol);

    let sol = solve(&example1()).unwrap();
    let doc = sol.to_json();
    assert_eq!(doc["m"], 3);
    let back: Solution = serde_json::from_value(doc).unwrap();
    assert_eq!(back.case, CaseLabel::NoRestEqualSplit);
    let _: Schedule = back.schedule;
}
