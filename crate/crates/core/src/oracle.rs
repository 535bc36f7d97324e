//! Structure-free baselines for cross-checking the solver.
//!
//! Neither search here knows about policies 1 and 2. The grid oracle
//! enumerates every `(r_i, t_i)` on a lattice; coordinate ascent climbs the
//! objective over all `2N` durations from many starting points. Both report
//! whatever schedule they find, and the case tag is read off its shape.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::audit::{lemma_checks, LemmaChecks};
use crate::dynamics::rest_time_to_reach;
use crate::error::{invalid, Error, Result};
use crate::model::{check_feasibility, total_utility, ProblemInstance, Schedule, Task};
use crate::solver::{CaseLabel, Diagnostics, Solution};
use crate::utility::Utility;

pub const GRID_MAX_TASKS: usize = 2;
pub const ASCENT_MAX_TASKS: usize = 8;
/// Default coarse lattice has this many steps across the horizon.
pub const DEFAULT_GRID_DIVISIONS: f64 = 60.0;
/// Each refinement round divides the step by this factor.
pub const REFINE_FACTOR: f64 = 5.0;
const MAX_RECENTRES: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Lattice step; `None` means `T / 60`.
    pub grid_step: Option<f64>,
    pub refinement_rounds: usize,
    /// Finish the lattice search with a continuous local climb. Lattice
    /// refinement alone stalls on ridges where two constraints are active.
    pub polish: bool,
    pub starts: usize,
    pub seed: u64,
    pub max_evals: usize,
    /// Feasibility tolerance applied to every candidate.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_step: None,
            refinement_rounds: 3,
            polish: true,
            starts: 32,
            seed: 0,
            max_evals: 50_000_000,
            tol: 1e-9,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(step) = self.grid_step {
            if !(step.is_finite() && step > 0.0) {
                return Err(invalid(format!("grid step must be positive, got {step}")));
            }
        }
        if self.starts < 1 {
            return Err(invalid("need at least one start"));
        }
        if self.max_evals < 1 {
            return Err(invalid("max_evals must be at least 1"));
        }
        if !(self.tol >= 0.0) {
            return Err(invalid(format!(
                "tolerance must be non-negative, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    fn step_for(&self, inst: &ProblemInstance) -> f64 {
        self.grid_step
            .unwrap_or(inst.t_horizon / DEFAULT_GRID_DIVISIONS)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub solution: Solution,
    pub evaluations: usize,
    /// The evaluation cap was hit; the solution is the incumbent at that point.
    pub budget_exhausted: bool,
}

/// Read a case label and the policy parameters off a schedule's shape.
/// Durations within `eps` of zero count as zero.
pub fn reconstruct(inst: &ProblemInstance, schedule: Schedule, eps: f64) -> Result<Solution> {
    let report = check_feasibility(inst, &schedule, eps.max(0.0))?;
    let objective = total_utility(&schedule, &inst.utility)?;
    let tasks = schedule.tasks();
    let n = tasks.len();
    let eps_x = eps * inst.alpha.max(1.0);
    let capped = |x: f64| x >= inst.x_max - eps_x;
    let mean = |xs: &[f64]| (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64);
    let works: Vec<f64> = tasks.iter().map(|t| t.work).collect();
    let rests: Vec<f64> = tasks.iter().map(|t| t.rest).collect();
    let budget_residual = inst.t_horizon - report.budget_used;

    let diagnostics = Diagnostics {
        stationarity_residual: None,
        budget_residual,
        candidates: Vec::new(),
    };
    let solution = |case, t1, t2, r1, r2| Solution {
        case,
        schedule: schedule.clone(),
        t1_tilde: t1,
        t2_tilde: t2,
        r1_tilde: r1,
        r2_tilde: r2,
        objective,
        diagnostics: diagnostics.clone(),
    };

    let saturating = report
        .tasks
        .iter()
        .all(|r| (r.x_bar - inst.x_min).abs() <= eps_x && capped(r.x));
    if budget_residual > eps && saturating {
        return Ok(solution(
            CaseLabel::Slack,
            None,
            mean(&works),
            rests.first().copied(),
            mean(&rests[1.min(n)..]),
        ));
    }
    if rests.iter().all(|&r| r <= eps) {
        return Ok(solution(
            CaseLabel::NoRestEqualSplit,
            mean(&works),
            None,
            None,
            None,
        ));
    }

    let k = (0..n)
        .find(|&i| rests[i] > eps || capped(report.tasks[i].x))
        .unwrap_or(n);
    let (m, boundary) = if k < n && rests[k] > eps {
        (k, k == 0 && capped(inst.x0))
    } else {
        (k + 1, true)
    };
    let m = m.min(n - 1);
    let t1 = mean(&works[..m]);
    let t2 = mean(&works[m..]);
    let (r1, r2) = if boundary {
        (None, mean(&rests[m..]))
    } else {
        (Some(rests[m]), mean(&rests[m + 1..]))
    };
    Ok(solution(
        CaseLabel::Structured { m, boundary },
        t1,
        t2,
        r1,
        r2,
    ))
}

/// Depth-first enumeration of `(r_1, t_1, ..., r_N, t_N)` over sorted axes,
/// pruning as soon as a bound or the horizon is crossed.
struct GridSearch<'a> {
    inst: &'a ProblemInstance,
    axes: Vec<Vec<f64>>,
    tol: f64,
    max_evals: usize,
    evals: usize,
    current: Vec<f64>,
    best: Option<(f64, Vec<f64>)>,
}

impl GridSearch<'_> {
    fn run(&mut self) {
        self.current = vec![0.0; self.axes.len()];
        self.descend(0, self.inst.x0, 0.0, 0.0);
    }

    fn exhausted(&self) -> bool {
        self.evals >= self.max_evals
    }

    fn descend(&mut self, task: usize, x: f64, elapsed: f64, value: f64) {
        let inst = self.inst;
        if task == inst.n {
            self.evals += 1;
            let better = self.best.as_ref().is_none_or(|(v, _)| value > *v);
            if better {
                self.best = Some((value, self.current.clone()));
            }
            return;
        }
        let horizon = inst.t_horizon + self.tol;
        for ri in 0..self.axes[2 * task].len() {
            let r = self.axes[2 * task][ri];
            if elapsed + r > horizon {
                break;
            }
            let x_bar = x * (-inst.alpha * r).exp();
            if x_bar < inst.x_min - self.tol {
                break;
            }
            self.current[2 * task] = r;
            for ti in 0..self.axes[2 * task + 1].len() {
                if self.exhausted() {
                    return;
                }
                let t = self.axes[2 * task + 1][ti];
                if elapsed + r + t > horizon {
                    break;
                }
                let x_end = x_bar - (1.0 - x_bar) * (-inst.alpha * t).exp_m1();
                if x_end > inst.x_max + self.tol {
                    break;
                }
                let gain = inst.utility.value(t).unwrap_or(f64::NEG_INFINITY);
                self.current[2 * task + 1] = t;
                self.descend(task + 1, x_end, elapsed + r + t, value + gain);
            }
        }
    }
}

fn to_schedule(z: &[f64]) -> Schedule {
    Schedule::new(z.chunks(2).map(|p| Task::new(p[0], p[1])).collect())
}

/// Exhaustive lattice search with local refinement, for `N <= 2`.
pub fn grid_oracle(inst: &ProblemInstance, config: &OracleConfig) -> Result<OracleRun> {
    inst.validate()?;
    config.validate()?;
    if inst.n > GRID_MAX_TASKS {
        return Err(Error::UnsupportedSize {
            n: inst.n,
            max: GRID_MAX_TASKS,
            hint: "use coordinate_ascent for larger instances",
        });
    }
    let dims = 2 * inst.n;
    if inst.t_horizon == 0.0 {
        let solution = reconstruct(inst, to_schedule(&vec![0.0; dims]), config.tol)?;
        return Ok(OracleRun {
            solution,
            evaluations: 1,
            budget_exhausted: false,
        });
    }

    let mut step = config.step_for(inst);
    let divisions = (inst.t_horizon / step + 1e-9).floor() as usize;
    let coarse: Vec<f64> = (0..=divisions).map(|k| k as f64 * step).collect();
    let mut search = GridSearch {
        inst,
        axes: vec![coarse; dims],
        tol: config.tol,
        max_evals: config.max_evals,
        evals: 0,
        current: Vec::new(),
        best: None,
    };
    search.run();

    // Each round re-centres the box on the incumbent until it stops moving,
    // so the search can drift out of a basin the coarse lattice misjudged.
    for _ in 0..config.refinement_rounds {
        let fine = step / REFINE_FACTOR;
        let reach = REFINE_FACTOR as i64;
        for _ in 0..MAX_RECENTRES {
            let Some((_, center)) = search.best.clone() else {
                break;
            };
            search.axes = center
                .iter()
                .map(|&c| {
                    (-reach..=reach)
                        .map(|j| c + j as f64 * fine)
                        .filter(|&v| v >= 0.0)
                        .collect()
                })
                .collect();
            search.run();
            if search.exhausted() || search.best.as_ref().map(|b| &b.1) == Some(&center) {
                break;
            }
        }
        step = fine;
    }

    let Some((value, mut best)) = search.best.clone() else {
        return Err(Error::Internal(
            "grid oracle found no feasible lattice point".into(),
        ));
    };
    let mut evaluations = search.evals;
    let mut exhausted = search.exhausted();
    let mut eps = step.max(config.tol);
    if config.polish && !exhausted {
        // The climb runs strictly feasible so it cannot bank the tolerance.
        let mut ascent = Ascent {
            inst,
            tol: 0.0,
            max_evals: config.max_evals - evaluations,
            evals: 0,
        };
        // Lattice points may overshoot by up to `tol`; pull the works in
        // until the projection accepts the start.
        let mut start = best.clone();
        for k in 0..30 {
            if project(inst, &start, 0.0).is_some() {
                break;
            }
            let shrink = 1.0 - 1e-12 * 2f64.powi(k);
            start
                .iter_mut()
                .skip(1)
                .step_by(2)
                .for_each(|t| *t *= shrink);
        }
        if let Some((v, z)) = ascent.climb(&start, true) {
            if v > value {
                best = z;
                eps = 1e-6;
            }
        }
        evaluations += ascent.evals;
        exhausted = ascent.evals >= ascent.max_evals;
    }
    Ok(OracleRun {
        solution: reconstruct(inst, to_schedule(&best), eps)?,
        evaluations,
        budget_exhausted: exhausted,
    })
}

/// Maps raw durations to a feasible schedule by lengthening each rest just
/// enough that the following work stays at or below `x_max`. Returns `None`
/// if that would need a rest below `x_min` or the horizon is exceeded.
fn project(inst: &ProblemInstance, z: &[f64], tol: f64) -> Option<Vec<f64>> {
    let mut out = Vec::with_capacity(z.len());
    let mut x = inst.x0;
    let mut elapsed = 0.0;
    for pair in z.chunks(2) {
        let (mut r, t) = (pair[0].max(0.0), pair[1].max(0.0));
        let mut x_bar = x * (-inst.alpha * r).exp();
        let x_end = x_bar - (1.0 - x_bar) * (-inst.alpha * t).exp_m1();
        if x_end > inst.x_max {
            let needed = 1.0 - (1.0 - inst.x_max) * (inst.alpha * t).exp();
            if needed < inst.x_min - tol || needed <= 0.0 {
                return None;
            }
            r = rest_time_to_reach(x, needed.min(x), inst.alpha).ok()?;
            x_bar = needed.min(x);
        }
        if x_bar < inst.x_min - tol {
            return None;
        }
        x = x_bar - (1.0 - x_bar) * (-inst.alpha * t).exp_m1();
        elapsed += r + t;
        if elapsed > inst.t_horizon + tol {
            return None;
        }
        out.push(r);
        out.push(t);
    }
    Some(out)
}

struct Ascent<'a> {
    inst: &'a ProblemInstance,
    tol: f64,
    max_evals: usize,
    evals: usize,
}

/// How a line search turns a step length into a trial point.
#[derive(Clone, Copy)]
enum Move {
    /// Shift a single coordinate.
    Single(usize),
    /// Shift `a` up and `b` down by the same amount.
    Transfer(usize, usize),
    /// Shift the work of tasks `from..=to`, then stretch the work of task
    /// `into` as far as feasibility allows.
    Absorb { from: usize, to: usize, into: usize },
}

impl Ascent<'_> {
    fn value(&mut self, z: &[f64]) -> Option<(f64, Vec<f64>)> {
        self.evals += 1;
        let p = project(self.inst, z, self.tol)?;
        let v = p
            .chunks(2)
            .map(|pair| self.inst.utility.value(pair[1]))
            .sum::<Result<f64>>()
            .ok()?;
        Some((v, p))
    }

    /// Longest feasible value of coordinate `b`, others fixed.
    fn stretch(&mut self, mut z: Vec<f64>, b: usize) -> Option<(f64, Vec<f64>)> {
        z[b] = 0.0;
        self.value(&z)?;
        let (mut lo, mut hi) = (0.0, self.inst.t_horizon);
        z[b] = hi;
        if let Some(found) = self.value(&z) {
            return Some(found);
        }
        while hi - lo > 1e-13 * (1.0 + self.inst.t_horizon) {
            let mid = 0.5 * (lo + hi);
            z[b] = mid;
            if self.value(&z).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        z[b] = lo;
        self.value(&z)
    }

    fn trial(&mut self, z: &[f64], mv: Move, delta: f64) -> Option<(f64, Vec<f64>)> {
        let mut w = z.to_vec();
        match mv {
            Move::Single(k) => w[k] += delta,
            Move::Transfer(a, b) => {
                w[a] += delta;
                w[b] -= delta;
            }
            Move::Absorb { from, to, into } => {
                for k in from..=to {
                    w[2 * k + 1] += delta;
                }
                return self.stretch(w, 2 * into + 1);
            }
        }
        self.value(&w)
    }

    fn range(&self, z: &[f64], mv: Move) -> (f64, f64) {
        match mv {
            Move::Single(k) => (-z[k], self.inst.t_horizon),
            Move::Absorb { from, to, .. } => {
                let floor = (from..=to)
                    .map(|k| z[2 * k + 1])
                    .fold(f64::INFINITY, f64::min);
                (-floor, self.inst.t_horizon)
            }
            Move::Transfer(a, b) => (-z[a], z[b]),
        }
    }

    /// Best point along a move, or `None` if nothing beats `current`.
    fn line_search(
        &mut self,
        z: &[f64],
        current: f64,
        mv: Move,
        scale: f64,
    ) -> Option<(f64, Vec<f64>)> {
        let (lo, hi) = self.range(z, mv);
        if hi - lo <= 0.0 {
            return None;
        }
        let mut probes: Vec<f64> = (0..=16).map(|k| lo + (hi - lo) * k as f64 / 16.0).collect();
        for j in 0..4 {
            let s = scale / 4f64.powi(j);
            probes.extend([s, -s]);
        }
        probes.push(0.0);
        probes.retain(|d| (lo..=hi).contains(d));
        probes.sort_by(f64::total_cmp);
        probes.dedup();

        let score =
            |this: &mut Self, d: f64| this.trial(z, mv, d).map_or(f64::NEG_INFINITY, |(v, _)| v);
        let scores: Vec<f64> = probes.iter().map(|&d| score(self, d)).collect();
        let best = (0..probes.len()).fold(0, |b, i| if scores[i] > scores[b] { i } else { b });

        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut a = probes[best.saturating_sub(1)];
        let mut b = probes[(best + 1).min(probes.len() - 1)];
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (score(self, c), score(self, d));
        let width = 1e-12 * (1.0 + self.inst.t_horizon);
        while b - a > width && self.evals < self.max_evals {
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = score(self, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = score(self, d);
            }
        }
        let mut pick = (scores[best], probes[best]);
        for (v, delta) in [(fc, c), (fd, d)] {
            if v > pick.0 {
                pick = (v, delta);
            }
        }
        if pick.0 > current {
            self.trial(z, mv, pick.1)
        } else {
            None
        }
    }

    fn moves(&self, absorb: bool) -> Vec<Move> {
        let dims = 2 * self.inst.n;
        let mut moves: Vec<Move> = (0..dims).map(Move::Single).collect();
        for a in 0..dims {
            for b in a + 1..dims {
                moves.push(Move::Transfer(a, b));
            }
        }
        if absorb {
            let n = self.inst.n;
            for from in 0..n {
                for to in from..n {
                    for into in (0..n).filter(|k| !(from..=to).contains(k)) {
                        moves.push(Move::Absorb { from, to, into });
                    }
                }
            }
        }
        moves
    }

    /// Drops each rest to zero where the projection lifts it back anyway, so
    /// later moves can shorten it as well as lengthen it.
    fn relax_rests(&mut self, z: &[f64]) -> Vec<f64> {
        let mut z = z.to_vec();
        for k in (0..z.len()).step_by(2) {
            let kept = z[k];
            z[k] = 0.0;
            if self.value(&z).is_none() {
                z[k] = kept;
            }
        }
        z
    }

    /// Sweep every move until a full sweep stops improving.
    fn climb(&mut self, start: &[f64], absorb: bool) -> Option<(f64, Vec<f64>)> {
        let (mut current, mut z) = self.value(start)?;
        if absorb {
            z = self.relax_rests(&z);
        }
        let moves = self.moves(absorb);
        let mut scale = self.inst.t_horizon / self.inst.n as f64;
        for _sweep in 0..500 {
            let before = current;
            for &mv in &moves {
                if let Some((v, w)) = self.line_search(&z, current, mv, scale) {
                    current = v;
                    z = if absorb { self.relax_rests(&w) } else { w };
                }
            }
            if self.evals >= self.max_evals {
                break;
            }
            if current - before <= 1e-13 {
                if scale < 1e-9 {
                    break;
                }
                scale *= 0.25;
            }
        }
        self.value(&z)
    }
}

fn random_start(inst: &ProblemInstance, rng: &mut ChaCha8Rng, tol: f64) -> Vec<f64> {
    let share = inst.t_horizon / inst.n as f64;
    let mut z: Vec<f64> = (0..inst.n)
        .flat_map(|_| [0.0, rng.gen::<f64>() * share])
        .collect();
    while project(inst, &z, tol).is_none() {
        z.iter_mut().for_each(|v| *v *= 0.5);
    }
    z
}

/// Multi-start coordinate ascent over all rests and work times, for `N <= 8`.
/// Start 0 is the all-zero schedule; the rest are drawn from `config.seed`.
pub fn coordinate_ascent(inst: &ProblemInstance, config: &OracleConfig) -> Result<OracleRun> {
    inst.validate()?;
    config.validate()?;
    if inst.n > ASCENT_MAX_TASKS {
        return Err(Error::UnsupportedSize {
            n: inst.n,
            max: ASCENT_MAX_TASKS,
            hint: "coordinate ascent is a small-instance cross-check",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut ascent = Ascent {
        inst,
        tol: config.tol,
        max_evals: config.max_evals,
        evals: 0,
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for s in 0..config.starts {
        let start = if s == 0 {
            vec![0.0; 2 * inst.n]
        } else {
            random_start(inst, &mut rng, config.tol)
        };
        let (v, z) = ascent.climb(&start, false).expect("starts are feasible");
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, z));
        }
        if ascent.evals >= config.max_evals {
            break;
        }
    }
    // Polish the winner with moves that let one work time take up the slack
    // left by another coordinate; these follow active constraints.
    let (mut v, mut z) = best.expect("at least one start");
    if let Some((pv, pz)) = ascent.climb(&z, true) {
        if pv > v {
            (v, z) = (pv, pz);
        }
    }
    let _ = v;
    let schedule = to_schedule(&z);
    let report = check_feasibility(inst, &schedule, config.tol)?;
    if !report.feasible {
        return Err(Error::Internal(format!(
            "coordinate ascent produced an infeasible schedule: {report:?}"
        )));
    }
    Ok(OracleRun {
        solution: reconstruct(inst, schedule, 1e-6)?,
        evaluations: ascent.evals,
        budget_exhausted: ascent.evals >= config.max_evals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Match,
    ADominates,
    BDominates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaAgreement {
    pub a: LemmaChecks,
    pub b: LemmaChecks,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub objective_gap_abs: f64,
    pub objective_gap_rel: f64,
    pub schedule_linf: f64,
    pub lemma_checks: LemmaAgreement,
    pub verdict: Verdict,
}

/// Compare two solutions of the same instance. `tol` is the objective gap
/// below which they match, and the tolerance for the structural checks.
pub fn compare(
    inst: &ProblemInstance,
    a: &Solution,
    b: &Solution,
    tol: f64,
) -> Result<ComparisonReport> {
    let gap = a.objective - b.objective;
    let scale = a.objective.abs().max(b.objective.abs());
    let schedule_linf = if a.schedule.len() == b.schedule.len() {
        a.schedule
            .tasks()
            .iter()
            .zip(b.schedule.tasks())
            .flat_map(|(p, q)| [(p.rest - q.rest).abs(), (p.work - q.work).abs()])
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let la = lemma_checks(inst, &a.schedule, tol)?;
    let lb = lemma_checks(inst, &b.schedule, tol)?;
    let verdict = if gap.abs() <= tol {
        Verdict::Match
    } else if gap > 0.0 {
        Verdict::ADominates
    } else {
        Verdict::BDominates
    };
    Ok(ComparisonReport {
        objective_gap_abs: gap.abs(),
        objective_gap_rel: if scale > 0.0 { gap.abs() / scale } else { 0.0 },
        schedule_linf,
        lemma_checks: LemmaAgreement {
            a: la,
            b: lb,
            agree: la == lb,
        },
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::utility::UtilityFunction;

    fn single(t_horizon: f64) -> ProblemInstance {
        ProblemInstance {
            n: 1,
            t_horizon,
            alpha: 0.125,
            x_min: 0.4,
            x_max: 0.85,
            x0: 0.6,
            utility: UtilityFunction::LogOnePlus,
        }
    }

    #[test]
    fn single_task_works_the_whole_horizon() {
        let run = grid_oracle(&single(2.0), &OracleConfig::default()).unwrap();
        let task = run.solution.schedule.tasks()[0];
        assert!(task.rest.abs() < 1e-12);
        assert!((task.work - 2.0).abs() < 1e-12);
        assert!((run.solution.objective - 3f64.ln()).abs() < 1e-9);
        assert_eq!(run.solution.case, CaseLabel::NoRestEqualSplit);
    }

    #[test]
    fn zero_horizon() {
        let run = grid_oracle(&single(0.0), &OracleConfig::default()).unwrap();
        assert_eq!(run.solution.schedule, Schedule::from_pairs(&[(0.0, 0.0)]));
        assert_eq!(run.solution.objective, 0.0);
    }

    #[test]
    fn grid_rejects_three_tasks() {
        let mut inst = single(5.0);
        inst.n = 3;
        assert!(matches!(
            grid_oracle(&inst, &OracleConfig::default()),
            Err(Error::UnsupportedSize { n: 3, max: 2, .. })
        ));
    }

    #[test]
    fn config_validation() {
        let bad = OracleConfig {
            starts: 0,
            ..OracleConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = OracleConfig {
            grid_step: Some(0.0),
            ..OracleConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn projection_lifts_rest_to_respect_the_cap() {
        let inst = single(20.0);
        let p = project(&inst, &[0.0, 8.0], 1e-9).unwrap();
        assert!(p[0] > 0.0);
        let sched = to_schedule(&p);
        let report = check_feasibility(&inst, &sched, 1e-9).unwrap();
        assert!(report.feasible);
        assert!((report.tasks[0].x - 0.85).abs() < 1e-12);
        // Work longer than x_min -> x_max cannot be made feasible by resting.
        assert!(project(&inst, &[0.0, 12.0], 1e-9).is_none());
    }
}
