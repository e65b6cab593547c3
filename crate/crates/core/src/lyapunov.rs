//! Largest Lyapunov exponent by two-trajectory renormalization.
//!
//! A companion state is kept at distance `perturbation` from the reference
//! orbit; after each renormalization interval the growth of the gap is
//! logged and the companion is pulled back along the current gap direction.

use serde::{Deserialize, Serialize};

use crate::dynamics::{rk4_step, DiscreteMap, Rk4Workspace, VectorField};
use crate::error::{Error, Result};
use crate::state::{euclidean, StateVector};

pub const DEFAULT_PERTURBATION: f64 = 1e-8;
pub const DEFAULT_MAP_TRANSIENT: usize = 1_000;
pub const DEFAULT_FLOW_TRANSIENT: usize = 10_000;
pub const MIN_STEPS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovEstimate {
    /// Nats per iteration for maps, per time unit for flows.
    pub exponent: f64,
    /// Steps averaged over, after the transient.
    pub n_steps: usize,
    pub transient_skipped: usize,
    pub renorm_interval: usize,
    pub perturbation: f64,
}

pub fn largest_lyapunov_map<M: DiscreteMap + ?Sized>(
    map: &M,
    x0: &StateVector,
    n_steps: usize,
    transient: usize,
) -> Result<LyapunovEstimate> {
    largest_lyapunov_map_with(map, x0, n_steps, transient, DEFAULT_PERTURBATION)
}

pub fn largest_lyapunov_map_with<M: DiscreteMap + ?Sized>(
    map: &M,
    x0: &StateVector,
    n_steps: usize,
    transient: usize,
    perturbation: f64,
) -> Result<LyapunovEstimate> {
    check_inputs(map.dimension(), x0, n_steps, perturbation)?;
    let dim = x0.dimension();
    let mut x = x0.components().to_vec();
    let mut next = vec![0.0; dim];
    for i in 1..=transient {
        map.apply(&x, &mut next);
        ensure_finite(&next, i)?;
        std::mem::swap(&mut x, &mut next);
    }

    let mut y = offset(&x, perturbation);
    let mut next_y = vec![0.0; dim];
    let mut log_sum = 0.0;
    for i in 1..=n_steps {
        map.apply(&x, &mut next);
        map.apply(&y, &mut next_y);
        ensure_finite(&next, transient + i)?;
        ensure_finite(&next_y, transient + i)?;
        log_sum += renormalize(&next, &mut next_y, perturbation, transient + i)?;
        std::mem::swap(&mut x, &mut next);
        std::mem::swap(&mut y, &mut next_y);
    }
    Ok(LyapunovEstimate {
        exponent: log_sum / n_steps as f64,
        n_steps,
        transient_skipped: transient,
        renorm_interval: 1,
        perturbation,
    })
}

pub fn largest_lyapunov_flow<F: VectorField + ?Sized>(
    field: &F,
    x0: &StateVector,
    h: f64,
    n_steps: usize,
    transient: usize,
    renorm_interval: usize,
) -> Result<LyapunovEstimate> {
    largest_lyapunov_flow_with(field, x0, h, n_steps, transient, renorm_interval, DEFAULT_PERTURBATION)
}

/// RK4 integration of the reference and companion states; `n_steps` is
/// rounded down to a whole number of renormalization intervals.
pub fn largest_lyapunov_flow_with<F: VectorField + ?Sized>(
    field: &F,
    x0: &StateVector,
    h: f64,
    n_steps: usize,
    transient: usize,
    renorm_interval: usize,
    perturbation: f64,
) -> Result<LyapunovEstimate> {
    check_inputs(field.dimension(), x0, n_steps, perturbation)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid(format!("step size must be positive, got {h}")));
    }
    if renorm_interval == 0 || renorm_interval > n_steps {
        return Err(Error::invalid(format!(
            "renormalization interval must lie in 1..={n_steps}, got {renorm_interval}"
        )));
    }
    let dim = x0.dimension();
    let mut ws = Rk4Workspace::new(dim);
    let mut x = x0.components().to_vec();
    let mut next = vec![0.0; dim];
    for i in 1..=transient {
        rk4_step(field, &x, h, &mut ws, &mut next);
        ensure_finite(&next, i)?;
        std::mem::swap(&mut x, &mut next);
    }

    let mut y = offset(&x, perturbation);
    let mut next_y = vec![0.0; dim];
    let blocks = n_steps / renorm_interval;
    let mut step = transient;
    let mut log_sum = 0.0;
    for _ in 0..blocks {
        for _ in 0..renorm_interval {
            step += 1;
            rk4_step(field, &x, h, &mut ws, &mut next);
            rk4_step(field, &y, h, &mut ws, &mut next_y);
            ensure_finite(&next, step)?;
            ensure_finite(&next_y, step)?;
            std::mem::swap(&mut x, &mut next);
            std::mem::swap(&mut y, &mut next_y);
        }
        log_sum += renormalize(&x, &mut y, perturbation, step)?;
    }
    let used = blocks * renorm_interval;
    Ok(LyapunovEstimate {
        exponent: log_sum / (used as f64 * h),
        n_steps: used,
        transient_skipped: transient,
        renorm_interval,
        perturbation,
    })
}

fn check_inputs(dim: usize, x0: &StateVector, n_steps: usize, perturbation: f64) -> Result<()> {
    if x0.dimension() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: x0.dimension() });
    }
    if n_steps < MIN_STEPS {
        return Err(Error::invalid(format!("need at least {MIN_STEPS} steps, got {n_steps}")));
    }
    if !(perturbation > 0.0 && perturbation < 1.0) {
        return Err(Error::invalid(format!("perturbation must lie in (0, 1), got {perturbation}")));
    }
    ensure_finite(x0.components(), 0)
}

fn ensure_finite(x: &[f64], index: usize) -> Result<()> {
    if x.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Divergence { index })
    }
}

/// Companion start: `x + perturbation * (1, .., 1) / sqrt(m)`.
fn offset(x: &[f64], perturbation: f64) -> Vec<f64> {
    let scale = perturbation / (x.len() as f64).sqrt();
    x.iter().map(|v| v + scale).collect()
}

/// Returns `ln(gap / perturbation)` and rescales the companion back to
/// `perturbation` along the gap direction.
fn renormalize(x: &[f64], y: &mut [f64], perturbation: f64, step: usize) -> Result<f64> {
    let gap = euclidean(x, y);
    if !(gap > 0.0) {
        return Err(Error::invalid(format!("perturbation collapsed to zero at step {step}")));
    }
    let factor = perturbation / gap;
    for (yj, xj) in y.iter_mut().zip(x) {
        *yj = xj + (*yj - xj) * factor;
    }
    Ok((gap / perturbation).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Doubling, FnMap, Identity, Linear, Logistic};

    #[test]
    fn doubling_map_gives_ln_2() {
        let est = largest_lyapunov_map(&Doubling, &StateVector::from([0.1234]), 100_000, 100).unwrap();
        assert!((est.exponent - 2f64.ln()).abs() < 1e-3, "{}", est.exponent);
    }

    #[test]
    fn identity_map_gives_zero() {
        let est = largest_lyapunov_map(&Identity::new(2), &StateVector::from([0.3, 0.4]), 10_000, 0)
            .unwrap();
        assert!(est.exponent.abs() < 1e-6, "{}", est.exponent);
    }

    #[test]
    fn contracting_flow_gives_minus_one() {
        let est = largest_lyapunov_flow(&Linear::new(-1.0), &StateVector::from([1.0]), 0.01, 20_000, 0, 10)
            .unwrap();
        assert!((est.exponent + 1.0).abs() < 1e-3, "{}", est.exponent);
        assert_eq!(est.n_steps, 20_000);
    }

    #[test]
    fn logistic_matches_derivative_sum() {
        let map = Logistic::default();
        let x0 = StateVector::from([0.5]);
        let n = 200_000;
        let transient = 1_000;
        let est = largest_lyapunov_map(&map, &x0, n, transient).unwrap();
        let mut x = 0.5_f64;
        for _ in 0..transient {
            x = 3.9 * x * (1.0 - x);
        }
        let mut sum = 0.0;
        for _ in 0..n {
            sum += (3.9 * (1.0 - 2.0 * x)).abs().ln();
            x = 3.9 * x * (1.0 - x);
        }
        let oracle = sum / n as f64;
        assert!((est.exponent - oracle).abs() < 5e-3, "{} vs {}", est.exponent, oracle);
    }

    #[test]
    fn rejects_bad_inputs() {
        let x0 = StateVector::from([0.5]);
        assert!(largest_lyapunov_map(&Logistic::default(), &x0, 10, 0).is_err());
        assert!(largest_lyapunov_map_with(&Logistic::default(), &x0, 5000, 0, 0.0).is_err());
        assert!(largest_lyapunov_flow(&Linear::new(1.0), &x0, 0.01, 5000, 0, 0).is_err());
        let blowup = FnMap::new(1, |x: &[f64], out: &mut [f64]| out[0] = x[0] * 1e200);
        let err = largest_lyapunov_map(&blowup, &x0, 5000, 0).unwrap_err();
        assert!(matches!(err, Error::Divergence { index: 2 }));
    }
}
