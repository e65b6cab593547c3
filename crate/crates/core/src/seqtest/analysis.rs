//! Distances between a trajectory and its own shift.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::euclidean;
use crate::trajectory::TrajectoryGrid;

/// Reported closeness intervals must span at least this many grid points.
pub const DEFAULT_MIN_INTERVAL_POINTS: usize = 2;

/// `d[i]` for `i = 0 .. n_samples - gamma`: distance between `x(i)` and the
/// shifted trajectory `x(i + gamma)`, either full or in one coordinate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftDistanceSeries {
    pub gamma: usize,
    pub h: f64,
    /// `None` for the full Euclidean distance.
    pub coordinate: Option<usize>,
    pub values: Vec<f64>,
}

impl ShiftDistanceSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_gamma(traj: &TrajectoryGrid, gamma: usize) -> Result<()> {
    if gamma >= traj.n_samples() {
        return Err(Error::IndexOutOfRange { index: gamma, len: traj.n_samples() });
    }
    Ok(())
}

pub fn shift_distance_series(traj: &TrajectoryGrid, gamma: usize) -> Result<ShiftDistanceSeries> {
    check_gamma(traj, gamma)?;
    let values = (0..traj.n_samples() - gamma)
        .into_par_iter()
        .map(|i| euclidean(traj.row(i + gamma), traj.row(i)))
        .collect();
    Ok(ShiftDistanceSeries { gamma, h: traj.h(), coordinate: None, values })
}

pub fn coordinate_distance_series(
    traj: &TrajectoryGrid,
    gamma: usize,
    coord: usize,
) -> Result<ShiftDistanceSeries> {
    check_gamma(traj, gamma)?;
    if coord >= traj.dimension() {
        return Err(Error::IndexOutOfRange { index: coord, len: traj.dimension() });
    }
    let values = (0..traj.n_samples() - gamma)
        .into_par_iter()
        .map(|i| (traj.row(i + gamma)[coord] - traj.row(i)[coord]).abs())
        .collect();
    Ok(ShiftDistanceSeries { gamma, h: traj.h(), coordinate: Some(coord), values })
}

/// Coordinate with the largest `|x_c(probe + gamma) - x_c(probe)|`; ties go
/// to the lowest index.
pub fn dominant_coordinate(traj: &TrajectoryGrid, gamma: usize, probe: usize) -> Result<usize> {
    check_gamma(traj, gamma)?;
    if probe + gamma >= traj.n_samples() {
        return Err(Error::IndexOutOfRange { index: probe, len: traj.n_samples() - gamma });
    }
    let (a, b) = (traj.row(probe), traj.row(probe + gamma));
    let mut best = 0;
    let mut best_diff = (b[0] - a[0]).abs();
    for c in 1..a.len() {
        let diff = (b[c] - a[c]).abs();
        if diff > best_diff {
            best = c;
            best_diff = diff;
        }
    }
    Ok(best)
}

/// All `(i, d[i])` with `i < upto` and `d[i] > eps0`, ascending in `i`.
/// `upto` is clamped to the series length.
pub fn exceedances(series: &ShiftDistanceSeries, eps0: f64, upto: usize) -> Vec<(usize, f64)> {
    let end = upto.min(series.len());
    series.values[..end]
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > eps0)
        .map(|(i, &d)| (i, d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosenessReport {
    pub threshold: f64,
    /// Inclusive, disjoint, ascending index ranges.
    pub intervals: Vec<(usize, usize)>,
    /// Largest distance attained on the union of `intervals`.
    pub max_distance: Option<f64>,
}

/// Maximal runs of the window where `d < threshold`, keeping runs of at
/// least [`DEFAULT_MIN_INTERVAL_POINTS`] points.
pub fn closeness_intervals(
    series: &ShiftDistanceSeries,
    threshold: f64,
    window: RangeInclusive<usize>,
) -> Result<ClosenessReport> {
    closeness_intervals_with_min(series, threshold, window, DEFAULT_MIN_INTERVAL_POINTS)
}

/// As [`closeness_intervals`], with an explicit minimum run length
/// (`min_points = 1` keeps isolated grid points).
pub fn closeness_intervals_with_min(
    series: &ShiftDistanceSeries,
    threshold: f64,
    window: RangeInclusive<usize>,
    min_points: usize,
) -> Result<ClosenessReport> {
    if !(threshold > 0.0) {
        return Err(Error::invalid(format!("threshold must be positive, got {threshold}")));
    }
    let (start, end) = (*window.start(), *window.end());
    if start > end {
        return Err(Error::invalid(format!("empty window [{start}, {end}]")));
    }
    if end >= series.len() {
        return Err(Error::IndexOutOfRange { index: end, len: series.len() });
    }
    let min_points = min_points.max(1);
    let mut intervals = Vec::new();
    let mut max_distance: Option<f64> = None;
    let mut i = start;
    while i <= end {
        if series.values[i] < threshold {
            let first = i;
            while i < end && series.values[i + 1] < threshold {
                i += 1;
            }
            if i - first + 1 >= min_points {
                intervals.push((first, i));
                let m = series.values[first..=i].iter().copied().fold(f64::NEG_INFINITY, f64::max);
                max_distance = Some(max_distance.map_or(m, |cur| cur.max(m)));
            }
        }
        i += 1;
    }
    Ok(ClosenessReport { threshold, intervals, max_distance })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossSeparationMatrix {
    pub shifts: Vec<usize>,
    pub probes: Vec<usize>,
    /// `distances[r][c] = |x(probes[r]) - x(probes[r] + shifts[c])|`.
    pub distances: Vec<Vec<f64>>,
}

impl CrossSeparationMatrix {
    pub fn min(&self) -> Option<f64> {
        self.distances.iter().flatten().copied().reduce(f64::min)
    }
}

pub fn cross_separation_matrix(
    traj: &TrajectoryGrid,
    shifts: &[usize],
    probes: &[usize],
) -> Result<CrossSeparationMatrix> {
    let last = traj.last_index();
    for &p in probes {
        for &s in shifts {
            if p.checked_add(s).is_none_or(|i| i > last) {
                return Err(Error::invalid(format!(
                    "probe {p} with shift {s} runs past the last index {last}"
                )));
            }
        }
    }
    let distances = probes
        .par_iter()
        .map(|&p| shifts.iter().map(|&s| euclidean(traj.row(p), traj.row(p + s))).collect())
        .collect();
    Ok(CrossSeparationMatrix { shifts: shifts.to_vec(), probes: probes.to_vec(), distances })
}
