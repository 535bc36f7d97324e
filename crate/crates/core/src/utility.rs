//! Concave per-task utilities.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A utility of processing time. Implement this to plug in a concave family
/// beyond the built-in ones; [`validate`] checks the shape numerically.
pub trait Utility {
    fn value(&self, t: f64) -> Result<f64>;
    fn slope(&self, t: f64) -> Result<f64>;
}

/// Built-in utility families. Serialized as
/// `{ "family": "exp_saturation", "a": 0.5 }` with unused parameters omitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum UtilityFunction {
    /// `ln(1 + t)`
    LogOnePlus,
    /// `1 - exp(-a t)`, the speed-accuracy saturation curve.
    ExpSaturation { a: f64 },
    /// `a / (1 + b / t)`
    RateDistortion { a: f64, b: f64 },
}

impl UtilityFunction {
    pub fn check_params(&self) -> Result<()> {
        let ok = |p: f64| p.is_finite() && p > 0.0;
        match *self {
            UtilityFunction::LogOnePlus => Ok(()),
            UtilityFunction::ExpSaturation { a } if ok(a) => Ok(()),
            UtilityFunction::RateDistortion { a, b } if ok(a) && ok(b) => Ok(()),
            other => Err(invalid(format!(
                "utility parameters must be positive: {other:?}"
            ))),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "utility argument must be non-negative, got {t}"
        )))
    }
}

impl Utility for UtilityFunction {
    fn value(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(match *self {
            UtilityFunction::LogOnePlus => t.ln_1p(),
            UtilityFunction::ExpSaturation { a } => -(-a * t).exp_m1(),
            UtilityFunction::RateDistortion { a, b } => {
                if t == 0.0 {
                    0.0
                } else {
                    a * t / (t + b)
                }
            }
        })
    }

    fn slope(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(match *self {
            UtilityFunction::LogOnePlus => 1.0 / (1.0 + t),
            UtilityFunction::ExpSaturation { a } => a * (-a * t).exp(),
            UtilityFunction::RateDistortion { a, b } => {
                if t == 0.0 {
                    return Err(Error::SingularDerivative { t });
                }
                a * b / ((t + b) * (t + b))
            }
        })
    }
}

pub fn eval(u: &UtilityFunction, t: f64) -> Result<f64> {
    u.value(t)
}

pub fn derivative(u: &UtilityFunction, t: f64) -> Result<f64> {
    u.slope(t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub monotone: bool,
    pub concave: bool,
    /// Most negative first difference seen on the grid.
    pub min_increment: f64,
    /// Largest second difference seen on the grid.
    pub max_second_difference: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.concave
    }
}

pub const CONCAVITY_TOL: f64 = 1e-9;

/// Check monotonicity and concavity of `u` on an evenly spaced grid over `[0, t_max]`.
pub fn validate(u: &dyn Utility, t_max: f64, grid_points: usize) -> Result<ValidationReport> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(invalid(format!("t_max must be positive, got {t_max}")));
    }
    if grid_points < 3 {
        return Err(invalid("validation needs at least 3 grid points"));
    }
    let h = t_max / (grid_points - 1) as f64;
    let values = (0..grid_points)
        .map(|k| u.value(k as f64 * h))
        .collect::<Result<Vec<_>>>()?;

    let min_increment = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let max_second_difference = values
        .windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .fold(f64::NEG_INFINITY, f64::max);

    // Derivative sign wherever the closed form is defined.
    let slopes_ok = (0..grid_points)
        .filter_map(|k| u.slope(k as f64 * h).ok())
        .all(|s| s >= 0.0);

    Ok(ValidationReport {
        monotone: slopes_ok && min_increment >= 0.0,
        concave: max_second_difference <= CONCAVITY_TOL,
        min_increment,
        max_second_difference,
    })
}
