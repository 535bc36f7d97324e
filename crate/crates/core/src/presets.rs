//! The three worked instances and the values reported for them.
//!
//! The decay rate and utility are not given with the instances; they were
//! recovered from the reported numbers (`alpha = 0.125` reproduces the
//! example-1 terminal ratio 0.8332, and `ln(1 + t)` makes the example-3 values
//! satisfy the interior optimality condition).

use crate::model::ProblemInstance;
use crate::utility::UtilityFunction;

pub const ALPHA: f64 = 0.125;
pub const X_MIN: f64 = 0.4;
pub const X_MAX: f64 = 0.85;

fn instance(t_horizon: f64, x0: f64) -> ProblemInstance {
    ProblemInstance {
        n: 3,
        t_horizon,
        alpha: ALPHA,
        x_min: X_MIN,
        x_max: X_MAX,
        x0,
        utility: UtilityFunction::LogOnePlus,
    }
}

/// Equal split with no rest.
pub fn example1() -> ProblemInstance {
    instance(7.0, 0.6)
}

/// Two policy-1 tasks ending exactly at `x_max`.
pub fn example2() -> ProblemInstance {
    instance(8.8, 0.7)
}

/// Two policy-1 tasks, then a first rest before the last task.
pub fn example3() -> ProblemInstance {
    instance(7.4, 0.7)
}

/// A quantity and its reported value.
#[derive(Debug, Clone, Copy)]
pub struct Reported {
    pub name: &'static str,
    pub value: f64,
}

pub const EXAMPLE1_WORK: f64 = 7.0 / 3.0;
pub const EXAMPLE1_TERMINAL: f64 = 0.8332;

pub const EXAMPLE2: [Reported; 3] = [
    Reported {
        name: "t1_tilde",
        value: 2.7726,
    },
    Reported {
        name: "t2_tilde",
        value: 2.6740,
    },
    Reported {
        name: "r2_tilde",
        value: 0.5808,
    },
];

pub const EXAMPLE3: [Reported; 3] = [
    Reported {
        name: "t1_tilde",
        value: 2.4013,
    },
    Reported {
        name: "t2_tilde",
        value: 2.2610,
    },
    Reported {
        name: "r1_tilde",
        value: 0.3364,
    },
];

/// Comparison tolerance against reported values (given to four decimals).
pub const REPORTED_TOL: f64 = 1e-3;
