//! Uniformly sampled trajectories and their on-disk formats.
//!
//! Samples are stored row-major in one flat buffer so that the sequential
//! test can read two offsets of a ten-million-sample run without chasing
//! per-sample allocations.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::numfmt::fmt_f64;
use crate::state::StateVector;

/// Hard cap on stored samples unless a caller asks for a different one.
pub const DEFAULT_SAMPLE_CAP: usize = 20_000_000;

const HEADER_LEN: usize = 4 + 8 + 8 + 8;

/// A trajectory sampled at `t0 + i * h`, `i = 0 .. n_samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryGrid {
    dimension: usize,
    h: f64,
    t0: f64,
    data: Vec<f64>,
}

impl TrajectoryGrid {
    /// Builds a trajectory from a flat row-major buffer.
    pub fn from_flat(dimension: usize, h: f64, t0: f64, data: Vec<f64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("trajectory dimension must be at least 1"));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!("grid spacing must be positive, got {h}")));
        }
        if !t0.is_finite() {
            return Err(Error::invalid("start time must be finite"));
        }
        if data.is_empty() || !data.len().is_multiple_of(dimension) {
            return Err(Error::invalid(format!(
                "buffer of {} values does not hold a whole number of {dimension}-dimensional samples",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::Divergence { index: pos / dimension });
        }
        Ok(TrajectoryGrid { dimension, h, t0, data })
    }

    /// Builds a trajectory from individual samples, which must share one dimension.
    pub fn from_samples(h: f64, t0: f64, samples: &[StateVector]) -> Result<Self> {
        let dimension = samples
            .first()
            .ok_or_else(|| Error::invalid("trajectory needs at least one sample"))?
            .dimension();
        let mut data = Vec::with_capacity(dimension * samples.len());
        for s in samples {
            if s.dimension() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, actual: s.dimension() });
            }
            data.extend_from_slice(s.components());
        }
        Self::from_flat(dimension, h, t0, data)
    }

    pub(crate) fn from_parts_unchecked(dimension: usize, h: f64, t0: f64, data: Vec<f64>) -> Self {
        debug_assert!(data.len().is_multiple_of(dimension) && !data.is_empty());
        TrajectoryGrid { dimension, h, t0, data }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn n_samples(&self) -> usize {
        self.data.len() / self.dimension
    }

    /// Last valid grid index.
    pub fn last_index(&self) -> usize {
        self.n_samples() - 1
    }

    /// Row-major sample buffer.
    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Borrowed view of sample `index`. Panics when out of range.
    #[inline]
    pub fn row(&self, index: usize) -> &[f64] {
        let start = index * self.dimension;
        &self.data[start..start + self.dimension]
    }

    pub fn sample_at(&self, index: usize) -> Result<StateVector> {
        if index >= self.n_samples() {
            return Err(Error::IndexOutOfRange { index, len: self.n_samples() });
        }
        Ok(StateVector::new(self.row(index).to_vec()))
    }

    /// Time of grid index `index`.
    pub fn time_at(&self, index: usize) -> f64 {
        self.t0 + grid_offset(index, self.h)
    }

    /// Keeps only the first `n` samples.
    pub fn truncated(&self, n: usize) -> Result<TrajectoryGrid> {
        if n == 0 || n > self.n_samples() {
            return Err(Error::IndexOutOfRange { index: n, len: self.n_samples() });
        }
        Ok(TrajectoryGrid::from_parts_unchecked(
            self.dimension,
            self.h,
            self.t0,
            self.data[..n * self.dimension].to_vec(),
        ))
    }

    /// Writes the little-endian binary layout: `dimension: u32`,
    /// `n_samples: u64`, `h: f64`, `t0: f64`, then row-major `f64` samples.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        let dim = u32::try_from(self.dimension)
            .map_err(|_| Error::invalid("dimension does not fit in u32"))?;
        let mut header = Vec::with_capacity(HEADER_LEN);
        header.extend_from_slice(&dim.to_le_bytes());
        header.extend_from_slice(&(self.n_samples() as u64).to_le_bytes());
        header.extend_from_slice(&self.h.to_le_bytes());
        header.extend_from_slice(&self.t0.to_le_bytes());
        w.write_all(&header)?;
        let mut buf = Vec::with_capacity(8 * 4096);
        for chunk in self.data.chunks(4096) {
            buf.clear();
            for v in chunk {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    /// Reads the layout produced by [`TrajectoryGrid::write_binary`].
    pub fn read_binary<R: Read>(mut r: R) -> Result<TrajectoryGrid> {
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)
            .map_err(|e| Error::Format(format!("truncated header: {e}")))?;
        let dimension = u32::from_le_bytes(header[0..4].try_into().unwrap()) as usize;
        let n_samples = u64::from_le_bytes(header[4..12].try_into().unwrap());
        let h = f64::from_le_bytes(header[12..20].try_into().unwrap());
        let t0 = f64::from_le_bytes(header[20..28].try_into().unwrap());
        let n_samples = usize::try_from(n_samples)
            .map_err(|_| Error::Format("sample count does not fit in memory".into()))?;
        if n_samples > DEFAULT_SAMPLE_CAP {
            return Err(Error::CapacityExceeded { requested: n_samples, cap: DEFAULT_SAMPLE_CAP });
        }
        let n_values = n_samples
            .checked_mul(dimension)
            .ok_or_else(|| Error::Format("sample count overflows".into()))?;
        let mut bytes = vec![0u8; n_values * 8];
        r.read_exact(&mut bytes)
            .map_err(|e| Error::Format(format!("truncated sample data: {e}")))?;
        let data = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        TrajectoryGrid::from_flat(dimension, h, t0, data)
    }

    /// CSV with one row per sample: `time,x1,..,xm`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let mut line = String::from("time");
        for c in 1..=self.dimension {
            line.push_str(&format!(",x{c}"));
        }
        writeln!(w, "{line}")?;
        for i in 0..self.n_samples() {
            line.clear();
            line.push_str(&fmt_f64(self.time_at(i)));
            for v in self.row(i) {
                line.push(',');
                line.push_str(&fmt_f64(*v));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// `index * h`, computed as `index / (1/h)` when `1/h` is an integer so
/// that times like 640.35 on an `h = 0.01` grid print exactly.
pub fn grid_offset(index: usize, h: f64) -> f64 {
    match steps_per_unit(h) {
        Some(per_unit) => index as f64 / per_unit,
        None => index as f64 * h,
    }
}

/// Largest grid index whose time offset does not exceed `t`.
///
/// Offsets within a relative 1e-9 of a grid point snap to it, so that
/// `t = 631.36` on `h = 0.01` maps to index 63136.
pub fn grid_index_floor(t: f64, h: f64) -> usize {
    if t <= 0.0 {
        return 0;
    }
    let r = t / h;
    let nearest = r.round();
    if (r - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        r.floor() as usize
    }
}

fn steps_per_unit(h: f64) -> Option<f64> {
    let inv = 1.0 / h;
    let rounded = inv.round();
    if rounded >= 1.0 && (inv - rounded).abs() <= 1e-9 * rounded {
        Some(rounded)
    } else {
        None
    }
}
