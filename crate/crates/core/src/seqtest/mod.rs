//! The sequential test: a convergence search followed by a separation
//! search over one stored trajectory, plus the shift-distance analyses used
//! to inspect a run.

mod analysis;

pub use analysis::{
    closeness_intervals, closeness_intervals_with_min, coordinate_distance_series,
    cross_separation_matrix, dominant_coordinate, exceedances, shift_distance_series,
    ClosenessReport, CrossSeparationMatrix, ShiftDistanceSeries, DEFAULT_MIN_INTERVAL_POINTS,
};

use crate::error::{Error, Result};
use crate::outcome::{ConvergenceEntry, SeparationEntry, SequentialTestOutcome, TestConfig, TestStatus};
use crate::state::euclidean;
use crate::trajectory::{grid_index_floor, TrajectoryGrid};

/// Convergence search over the whole trajectory.
///
/// Entry `n` is the first grid point after both `t_fix` and entry `n - 1`
/// whose distance to `x(0)` is below `1/n`. The list stops early when no such
/// point remains.
pub fn convergence_sequence(
    traj: &TrajectoryGrid,
    t_fix: f64,
    k_max: usize,
) -> Result<Vec<ConvergenceEntry>> {
    if !(t_fix >= 0.0) {
        return Err(Error::invalid(format!("t_fix must be non-negative, got {t_fix}")));
    }
    Ok(convergence_upto(traj, t_fix, k_max, traj.last_index()))
}

/// Separation search for the given convergence entries, over the whole trajectory.
///
/// Entry `n` is the first grid offset `s` after entry `n - 1` (initially 0)
/// with `|x(t_n + s) - x(s)| > eps0`; `t_n + s` never leaves the trajectory.
pub fn separation_sequence(
    traj: &TrajectoryGrid,
    convergence: &[ConvergenceEntry],
    eps0: f64,
) -> Result<Vec<SeparationEntry>> {
    if !(eps0 > 0.0 && eps0.is_finite()) {
        return Err(Error::invalid(format!("eps0 must be positive, got {eps0}")));
    }
    if convergence.is_empty() {
        return Err(Error::invalid("separation search needs at least one convergence entry"));
    }
    Ok(separation_upto(traj, convergence, eps0, traj.last_index()))
}

/// Runs both searches on grid indices `0..=config.horizon`.
pub fn run_sequential_test(
    traj: &TrajectoryGrid,
    config: &TestConfig,
) -> Result<SequentialTestOutcome> {
    config.validate()?;
    if config.horizon > traj.last_index() {
        return Err(Error::invalid(format!(
            "horizon {} exceeds the trajectory's last index {}",
            config.horizon,
            traj.last_index()
        )));
    }
    let convergence = convergence_upto(traj, config.t_fix, config.k_max, config.horizon);
    let separation = if convergence.is_empty() {
        Vec::new()
    } else {
        separation_upto(traj, &convergence, config.eps0, config.horizon)
    };
    let status = if separation.len() < convergence.len() {
        TestStatus::TruncatedAtSeparation(separation.len() + 1)
    } else if convergence.len() < config.k_max {
        TestStatus::TruncatedAtConvergence(convergence.len() + 1)
    } else {
        TestStatus::Confirmed(config.k_max)
    };
    let outcome = SequentialTestOutcome { config: *config, convergence, separation, status };
    debug_assert!(outcome.check_invariants().is_ok());
    Ok(outcome)
}

fn convergence_upto(
    traj: &TrajectoryGrid,
    t_fix: f64,
    k_max: usize,
    last: usize,
) -> Vec<ConvergenceEntry> {
    let origin = traj.row(0);
    let mut prev = grid_index_floor(t_fix - traj.t0(), traj.h());
    let mut out = Vec::new();
    for n in 1..=k_max {
        let bound = 1.0 / n as f64;
        let hit = (prev + 1..=last)
            .map(|m| (m, euclidean(traj.row(m), origin)))
            .find(|&(_, d)| d < bound);
        let Some((index, delta)) = hit else { break };
        out.push(ConvergenceEntry { n, index, time: traj.time_at(index), delta });
        prev = index;
    }
    out
}

fn separation_upto(
    traj: &TrajectoryGrid,
    convergence: &[ConvergenceEntry],
    eps0: f64,
    last: usize,
) -> Vec<SeparationEntry> {
    let mut prev = 0usize;
    let mut out = Vec::with_capacity(convergence.len());
    for c in convergence {
        let shift = c.index;
        if shift >= last {
            break;
        }
        let hit = (prev + 1..=last - shift)
            .map(|s| (s, euclidean(traj.row(shift + s), traj.row(s))))
            .find(|&(_, d)| d > eps0);
        let Some((index, distance)) = hit else { break };
        out.push(SeparationEntry {
            n: c.n,
            index,
            time: traj.time_at(index) - traj.t0(),
            distance,
        });
        prev = index;
    }
    out
}
