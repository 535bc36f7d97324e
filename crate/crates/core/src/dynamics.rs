//! Closed-form utilization-ratio dynamics.
//!
//! The ratio obeys `dx/dt = alpha * (b(t) - x)` with `b = 1` while working and
//! `b = 0` while resting, so each segment is a single exponential. Everything
//! here evaluates those exponentials directly; nothing is integrated.

use crate::error::{invalid, Error, Result};
use crate::model::{ProblemInstance, Schedule};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "alpha must be positive and finite, got {alpha}"
        )))
    }
}

fn check_duration(name: &str, d: f64) -> Result<()> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "{name} must be a finite non-negative duration, got {d}"
        )))
    }
}

fn check_ratio(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(invalid(format!("{name} must lie in [0, 1], got {x}")))
    }
}

/// Ratio after resting for `r` starting from `x`: `x * exp(-alpha * r)`.
pub fn rest_transition(x: f64, r: f64, alpha: f64) -> Result<f64> {
    check_ratio("x", x)?;
    check_duration("rest", r)?;
    check_alpha(alpha)?;
    Ok(x * (-alpha * r).exp())
}

/// Ratio after working for `t` starting from `x_bar`: `1 - exp(-alpha * t) * (1 - x_bar)`.
pub fn work_transition(x_bar: f64, t: f64, alpha: f64) -> Result<f64> {
    check_ratio("x_bar", x_bar)?;
    check_duration("work", t)?;
    check_alpha(alpha)?;
    Ok(x_bar - (1.0 - x_bar) * (-alpha * t).exp_m1())
}

/// Rest for `r`, then work for `t`.
pub fn rest_work_transition(x0: f64, r: f64, t: f64, alpha: f64) -> Result<f64> {
    check_ratio("x0", x0)?;
    check_duration("rest", r)?;
    check_duration("work", t)?;
    check_alpha(alpha)?;
    Ok(-(-alpha * t).exp_m1() + x0 * (-alpha * (r + t)).exp())
}

/// Work time that carries the ratio from `x_from` up to `x_to`.
pub fn work_time_to_reach(x_from: f64, x_to: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_ratio("x_from", x_from)?;
    if !(x_to < 1.0) {
        return Err(Error::UnreachableTarget(format!(
            "work drives the ratio toward 1 but never reaches x_to = {x_to}"
        )));
    }
    if x_to < x_from {
        return Err(invalid(format!(
            "work cannot lower the ratio from {x_from} to {x_to}"
        )));
    }
    Ok(((-x_from).ln_1p() - (-x_to).ln_1p()) / alpha)
}

/// Rest time that lets the ratio decay from `x_from` down to `x_to`.
pub fn rest_time_to_reach(x_from: f64, x_to: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_ratio("x_from", x_from)?;
    if !(x_to > 0.0) {
        return Err(Error::UnreachableTarget(format!(
            "rest decays the ratio toward 0 but never reaches x_to = {x_to}"
        )));
    }
    if x_to > x_from {
        return Err(invalid(format!(
            "rest cannot raise the ratio from {x_from} to {x_to}"
        )));
    }
    Ok((x_from / x_to).ln() / alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub time: f64,
    pub x: f64,
    pub working: bool,
}

/// Sampled ratio path of a schedule. Breakpoints are the segment boundaries,
/// starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilizationTrace {
    pub samples: Vec<TraceSample>,
    pub breakpoints: Vec<f64>,
}

impl UtilizationTrace {
    pub fn final_sample(&self) -> &TraceSample {
        self.samples
            .last()
            .expect("a trace always holds the t = 0 sample")
    }

    /// CSV with header `time,x,working`, working as 0/1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,x,working\n");
        for s in &self.samples {
            out.push_str(&format!("{},{},{}\n", s.time, s.x, u8::from(s.working)));
        }
        out
    }
}

#[derive(Clone, Copy)]
struct Segment {
    start: f64,
    end: f64,
    x_start: f64,
    working: bool,
}

impl Segment {
    fn ratio_at(&self, time: f64, alpha: f64) -> f64 {
        let dt = (time - self.start).max(0.0);
        if self.working {
            self.x_start - (1.0 - self.x_start) * (-alpha * dt).exp_m1()
        } else {
            self.x_start * (-alpha * dt).exp()
        }
    }
}

/// Sample the ratio path every `dt`, plus every segment boundary.
pub fn trace(instance: &ProblemInstance, schedule: &Schedule, dt: f64) -> Result<UtilizationTrace> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(invalid(format!("trace step must be positive, got {dt}")));
    }
    if schedule.len() != instance.n {
        return Err(Error::InvalidSchedule(format!(
            "schedule has {} tasks, instance expects {}",
            schedule.len(),
            instance.n
        )));
    }
    let alpha = instance.alpha;

    let mut segments = Vec::new();
    let mut clock = 0.0;
    let mut x = instance.x0;
    for task in schedule.tasks() {
        for (len, working) in [(task.rest, false), (task.work, true)] {
            check_duration(if working { "work" } else { "rest" }, len)?;
            if len == 0.0 {
                continue;
            }
            let seg = Segment {
                start: clock,
                end: clock + len,
                x_start: x,
                working,
            };
            x = if working {
                work_transition(x, len, alpha)?
            } else {
                rest_transition(x, len, alpha)?
            };
            clock = seg.end;
            segments.push(seg);
        }
    }

    let mut breakpoints = vec![0.0];
    breakpoints.extend(segments.iter().map(|s| s.end));

    let Some(first) = segments.first() else {
        return Ok(UtilizationTrace {
            samples: vec![TraceSample {
                time: 0.0,
                x: instance.x0,
                working: false,
            }],
            breakpoints,
        });
    };

    let mut samples = vec![TraceSample {
        time: 0.0,
        x: instance.x0,
        working: first.working,
    }];
    for seg in &segments {
        // Grid points strictly inside the segment, then its exact end.
        let mut k = (seg.start / dt).floor() as u64 + 1;
        loop {
            let time = k as f64 * dt;
            if time >= seg.end - 1e-12 {
                break;
            }
            if time > seg.start + 1e-12 {
                samples.push(TraceSample {
                    time,
                    x: seg.ratio_at(time, alpha),
                    working: seg.working,
                });
            }
            k += 1;
        }
        let x_end = seg.ratio_at(seg.end, alpha);
        samples.push(TraceSample {
            time: seg.end,
            x: x_end,
            working: seg.working,
        });
    }
    // The end-of-segment value above is recomputed from the segment start;
    // replace the final value with the sequential closed form.
    if let Some(last) = samples.last_mut() {
        last.x = x;
    }

    Ok(UtilizationTrace {
        samples,
        breakpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHA: f64 = 0.125;

    #[test]
    fn rest_examples() {
        assert_eq!(rest_transition(0.85, 0.0, ALPHA).unwrap(), 0.85);
        let half_life = 8.0 * std::f64::consts::LN_2;
        assert!((rest_transition(0.8, half_life, ALPHA).unwrap() - 0.4).abs() < 1e-12);
        // 0.5808 carries four decimals, which pins the result to about 1e-5.
        assert!((rest_transition(0.85, 0.5808, ALPHA).unwrap() - 0.790467).abs() < 1e-4);
    }

    #[test]
    fn work_examples() {
        for xb in [0.0, 0.3, 0.77, 1.0] {
            assert_eq!(work_transition(xb, 0.0, ALPHA).unwrap(), xb);
        }
        assert_eq!(work_transition(1.0, 3.7, ALPHA).unwrap(), 1.0);
        assert!((work_transition(0.6, 7.0, ALPHA).unwrap() - 0.8332).abs() < 1e-3);
    }

    #[test]
    fn rest_work_examples() {
        let x = rest_work_transition(0.7, 0.0, 5.545177, ALPHA).unwrap();
        assert!((x - 0.85).abs() < 1e-6);
        assert_eq!(rest_work_transition(0.42, 0.0, 0.0, ALPHA).unwrap(), 0.42);
        let x = rest_work_transition(0.8354, 0.3364, 2.2610, ALPHA).unwrap();
        assert!((x - 0.85).abs() < 1e-3);
    }

    #[test]
    fn inversions() {
        assert_eq!(work_time_to_reach(0.5, 0.5, ALPHA).unwrap(), 0.0);
        assert!((work_time_to_reach(0.7, 0.85, ALPHA).unwrap() - 5.545177).abs() < 1e-6);
        assert!((work_time_to_reach(0.4, 0.85, ALPHA).unwrap() - 11.090355).abs() < 1e-6);
        assert_eq!(rest_time_to_reach(0.5, 0.5, ALPHA).unwrap(), 0.0);
        assert!((rest_time_to_reach(0.85, 0.790467, ALPHA).unwrap() - 0.5808).abs() < 1e-3);
        assert!((rest_time_to_reach(0.835403, 0.801010, ALPHA).unwrap() - 0.3364).abs() < 1e-3);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            rest_transition(0.5, -1.0, ALPHA),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            rest_transition(0.5, 1.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            work_transition(0.5, -0.1, ALPHA),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            work_transition(0.5, 1.0, -2.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            work_time_to_reach(0.5, 1.0, ALPHA),
            Err(Error::UnreachableTarget(_))
        ));
        assert!(matches!(
            work_time_to_reach(0.6, 0.5, ALPHA),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            rest_time_to_reach(0.5, 0.0, ALPHA),
            Err(Error::UnreachableTarget(_))
        ));
        assert!(matches!(
            rest_time_to_reach(0.5, 0.6, ALPHA),
            Err(Error::InvalidArgument(_))
        ));
    }
}
