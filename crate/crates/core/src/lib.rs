//! Optimal work/rest scheduling for an operator whose utilization ratio rises
//! while working and decays while resting.
//!
//! [`solver::solve`] returns the structured optimum of a [`ProblemInstance`];
//! [`oracle`] holds structure-free baselines used to cross-check it.

pub mod audit;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod solver;
pub mod utility;

pub use error::{Error, Result};
pub use model::{check_feasibility, total_utility, ProblemInstance, Schedule, Task};
pub use solver::{solve, CaseLabel, Solution};
pub use utility::{Utility, UtilityFunction};
