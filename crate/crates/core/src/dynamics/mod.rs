//! Discrete maps, autonomous vector fields, and the generators that turn
//! them into [`TrajectoryGrid`] values.

mod definition;
mod registry;
mod systems;

pub use definition::{Family, SystemDefinition};
pub use registry::{lookup_system, registry, RegistryEntry, SYSTEM_NAMES};
pub use systems::{
    Doubling, DynamicalSystem, FlowSystem, FnField, FnMap, Henon, Identity, Ikeda, Linear,
    Logistic, Lorenz, MapSystem, Rossler,
};

use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::trajectory::{TrajectoryGrid, DEFAULT_SAMPLE_CAP};

/// A map `x(i+1) = f(x(i))`.
pub trait DiscreteMap {
    fn dimension(&self) -> usize;

    /// Writes `f(x)` into `out`; both slices have length `dimension()`.
    fn apply(&self, x: &[f64], out: &mut [f64]);
}

/// An autonomous vector field `x' = f(x)`.
pub trait VectorField {
    fn dimension(&self) -> usize;

    fn eval(&self, x: &[f64], out: &mut [f64]);
}

/// Iterates `map` from `x0`, storing `n_steps + 1` samples with `h = 1`.
pub fn iterate_map<M: DiscreteMap + ?Sized>(
    map: &M,
    x0: &StateVector,
    n_steps: usize,
) -> Result<TrajectoryGrid> {
    iterate_map_with_cap(map, x0, n_steps, DEFAULT_SAMPLE_CAP)
}

pub fn iterate_map_with_cap<M: DiscreteMap + ?Sized>(
    map: &M,
    x0: &StateVector,
    n_steps: usize,
    cap: usize,
) -> Result<TrajectoryGrid> {
    let dim = check_start(map.dimension(), x0, n_steps, cap)?;
    let mut data = Vec::with_capacity((n_steps + 1) * dim);
    data.extend_from_slice(x0.components());
    let mut next = vec![0.0; dim];
    for i in 1..=n_steps {
        let start = (i - 1) * dim;
        map.apply(&data[start..start + dim], &mut next);
        if !next.iter().all(|v| v.is_finite()) {
            return Err(Error::Divergence { index: i });
        }
        data.extend_from_slice(&next);
    }
    Ok(TrajectoryGrid::from_parts_unchecked(dim, 1.0, 0.0, data))
}

/// Scratch space for [`rk4_step`].
#[derive(Debug, Clone)]
pub struct Rk4Workspace {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4Workspace {
    pub fn new(dimension: usize) -> Self {
        Rk4Workspace {
            k1: vec![0.0; dimension],
            k2: vec![0.0; dimension],
            k3: vec![0.0; dimension],
            k4: vec![0.0; dimension],
            tmp: vec![0.0; dimension],
        }
    }
}

/// One classical fourth-order Runge-Kutta step of size `h` from `x` into `out`.
pub fn rk4_step<F: VectorField + ?Sized>(
    field: &F,
    x: &[f64],
    h: f64,
    ws: &mut Rk4Workspace,
    out: &mut [f64],
) {
    let half = 0.5 * h;
    let Rk4Workspace { k1, k2, k3, k4, tmp } = ws;
    field.eval(x, k1);
    for j in 0..x.len() {
        tmp[j] = x[j] + half * k1[j];
    }
    field.eval(tmp, k2);
    for j in 0..x.len() {
        tmp[j] = x[j] + half * k2[j];
    }
    field.eval(tmp, k3);
    for j in 0..x.len() {
        tmp[j] = x[j] + h * k3[j];
    }
    field.eval(tmp, k4);
    let sixth = h / 6.0;
    for j in 0..x.len() {
        out[j] = x[j] + sixth * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
}

/// Integrates `field` with fixed-step RK4, sampling every step.
pub fn integrate_rk4<F: VectorField + ?Sized>(
    field: &F,
    x0: &StateVector,
    h: f64,
    n_steps: usize,
) -> Result<TrajectoryGrid> {
    integrate_rk4_with_cap(field, x0, h, n_steps, DEFAULT_SAMPLE_CAP)
}

pub fn integrate_rk4_with_cap<F: VectorField + ?Sized>(
    field: &F,
    x0: &StateVector,
    h: f64,
    n_steps: usize,
    cap: usize,
) -> Result<TrajectoryGrid> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid(format!("step size must be positive, got {h}")));
    }
    let dim = check_start(field.dimension(), x0, n_steps, cap)?;
    let mut data = Vec::with_capacity((n_steps + 1) * dim);
    data.extend_from_slice(x0.components());
    let mut ws = Rk4Workspace::new(dim);
    let mut next = vec![0.0; dim];
    for i in 1..=n_steps {
        let start = (i - 1) * dim;
        rk4_step(field, &data[start..start + dim], h, &mut ws, &mut next);
        if !next.iter().all(|v| v.is_finite()) {
            return Err(Error::Divergence { index: i });
        }
        data.extend_from_slice(&next);
    }
    Ok(TrajectoryGrid::from_parts_unchecked(dim, h, 0.0, data))
}

fn check_start(dim: usize, x0: &StateVector, n_steps: usize, cap: usize) -> Result<usize> {
    if x0.dimension() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: x0.dimension() });
    }
    if !x0.is_finite() {
        return Err(Error::Divergence { index: 0 });
    }
    let requested = n_steps.saturating_add(1);
    if requested > cap {
        return Err(Error::CapacityExceeded { requested, cap });
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_keeps_only_the_initial_condition() {
        let t = iterate_map(&Logistic::default(), &StateVector::from([0.5]), 0).unwrap();
        assert_eq!(t.n_samples(), 1);
        assert_eq!(t.sample_at(0).unwrap(), StateVector::from([0.5]));
    }

    #[test]
    fn logistic_first_step() {
        let t = iterate_map(&Logistic::default(), &StateVector::from([0.5]), 1).unwrap();
        assert_eq!(t.sample_at(1).unwrap().components(), &[0.975]);
        assert_eq!(t.h(), 1.0);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn henon_first_step_by_hand() {
        let (x, y) = (-0.27518575309954679_f64, -0.32515652033839654_f64);
        let t = iterate_map(&Henon::default(), &StateVector::from([x, y]), 1).unwrap();
        let expected = [1.0 - 1.4 * (x * x) + y, 0.3 * x];
        assert_eq!(t.sample_at(1).unwrap().components(), &expected);
    }

    #[test]
    fn divergence_reports_first_bad_index() {
        let blowup = FnMap::new(1, |x: &[f64], out: &mut [f64]| out[0] = x[0] * 1e200);
        let err = iterate_map(&blowup, &StateVector::from([1.0]), 10).unwrap_err();
        assert!(matches!(err, Error::Divergence { index: 2 }));
    }

    #[test]
    fn capacity_is_enforced() {
        let err = iterate_map_with_cap(&Identity::new(1), &StateVector::from([0.0]), 10, 10)
            .unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { requested: 11, cap: 10 }));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = iterate_map(&Henon::default(), &StateVector::from([0.0]), 3).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, actual: 1 }));
    }

    #[test]
    fn zero_field_gives_constant_trajectory() {
        let zero = FnField::new(3, |_: &[f64], out: &mut [f64]| out.fill(0.0));
        let x0 = StateVector::from([1.0, -2.0, 3.5]);
        let t = integrate_rk4(&zero, &x0, 0.01, 500).unwrap();
        for i in 0..t.n_samples() {
            assert_eq!(t.row(i), x0.components());
        }
    }

    #[test]
    fn exponential_growth_reaches_e() {
        let t = integrate_rk4(&Linear::new(1.0), &StateVector::from([1.0]), 0.01, 100).unwrap();
        assert!((t.row(100)[0] - std::f64::consts::E).abs() < 1e-9);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let err = |h: f64, n: usize| {
            let t = integrate_rk4(&Linear::new(1.0), &StateVector::from([1.0]), h, n).unwrap();
            (t.row(n)[0] - std::f64::consts::E).abs()
        };
        let ratio = err(0.01, 100) / err(0.005, 200);
        assert!((14.0..=18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rotation_error_is_fourth_order_and_norm_drift_is_bounded() {
        let rot = FnField::new(2, |x: &[f64], out: &mut [f64]| {
            out[0] = -x[1];
            out[1] = x[0];
        });
        let t_end = 10.0_f64;
        let run = |h: f64, n: usize| {
            let t = integrate_rk4(&rot, &StateVector::from([1.0, 0.0]), h, n).unwrap();
            let end = t.row(n).to_vec();
            let err = ((end[0] - t_end.cos()).powi(2) + (end[1] - t_end.sin()).powi(2)).sqrt();
            let drift = ((end[0] * end[0] + end[1] * end[1]).sqrt() - 1.0).abs();
            (err, drift)
        };
        let (err_coarse, drift_coarse) = run(0.1, 100);
        let (err_fine, drift_fine) = run(0.05, 200);
        let ratio = err_coarse / err_fine;
        assert!((14.0..=18.0).contains(&ratio), "ratio {ratio}");
        // The norm is lost even faster than the state error, so h^4 * T bounds it.
        assert!(drift_coarse <= 0.1f64.powi(4) * t_end);
        assert!(drift_fine <= 0.05f64.powi(4) * t_end);
        assert!(drift_fine < drift_coarse / 16.0);
    }

    #[test]
    fn map_iteration_is_bit_reproducible() {
        let x0 = StateVector::from([0.0, 0.0]);
        let a = iterate_map(&Ikeda::default(), &x0, 5000).unwrap();
        let b = iterate_map(&Ikeda::default(), &x0, 5000).unwrap();
        assert!(a.as_flat().iter().zip(b.as_flat()).all(|(p, q)| p.to_bits() == q.to_bits()));
    }
}
