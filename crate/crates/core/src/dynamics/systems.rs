use serde::{Deserialize, Serialize};

use super::{DiscreteMap, VectorField};
use crate::error::Result;
use crate::state::StateVector;
use crate::trajectory::TrajectoryGrid;

/// Hénon map `x' = 1 - a x^2 + y`, `y' = b x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Henon {
    pub a: f64,
    pub b: f64,
}

impl Default for Henon {
    fn default() -> Self {
        Henon { a: 1.4, b: 0.3 }
    }
}

impl DiscreteMap for Henon {
    fn dimension(&self) -> usize {
        2
    }

    #[inline]
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        // x^2 is formed before scaling by a; the reference tables depend on it bitwise.
        out[0] = 1.0 - self.a * (x[0] * x[0]) + x[1];
        out[1] = self.b * x[0];
    }
}

/// Logistic map `x' = r x (1 - x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Logistic {
    pub r: f64,
}

impl Default for Logistic {
    fn default() -> Self {
        Logistic { r: 3.9 }
    }
}

impl DiscreteMap for Logistic {
    fn dimension(&self) -> usize {
        1
    }

    #[inline]
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out[0] = self.r * x[0] * (1.0 - x[0]);
    }
}

/// Ikeda map with `tau = c - d / (1 + x^2 + y^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ikeda {
    pub a: f64,
    pub u: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for Ikeda {
    fn default() -> Self {
        Ikeda { a: 1.0, u: 0.9, c: 0.4, d: 6.0 }
    }
}

impl DiscreteMap for Ikeda {
    fn dimension(&self) -> usize {
        2
    }

    #[inline]
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let (px, py) = (x[0], x[1]);
        let tau = self.c - self.d / (1.0 + px * px + py * py);
        let (s, c) = (tau.sin(), tau.cos());
        out[0] = self.a + self.u * (px * c - py * s);
        out[1] = self.u * (px * s + py * c);
    }
}

/// The identity map on `R^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Identity {
    pub dimension: usize,
}

impl Identity {
    pub fn new(dimension: usize) -> Self {
        Identity { dimension }
    }
}

impl DiscreteMap for Identity {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(x);
    }
}

/// Doubling map `x' = 2x mod 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Doubling;

impl DiscreteMap for Doubling {
    fn dimension(&self) -> usize {
        1
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        out[0] = (2.0 * x[0]).rem_euclid(1.0);
    }
}

/// Lorenz-type flow `x1' = s(x2 - x1)`, `x2' = r x1 - x1 x3 - x2`,
/// `x3' = x1 x2 - b x3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lorenz {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
}

impl Lorenz {
    pub fn with_rho(rho: f64) -> Self {
        Lorenz { sigma: 10.0, rho, beta: 8.0 / 3.0 }
    }
}

impl VectorField for Lorenz {
    fn dimension(&self) -> usize {
        3
    }

    #[inline]
    fn eval(&self, x: &[f64], out: &mut [f64]) {
        out[0] = self.sigma * (x[1] - x[0]);
        out[1] = self.rho * x[0] - x[0] * x[2] - x[1];
        out[2] = x[0] * x[1] - self.beta * x[2];
    }
}

/// Rössler flow `x1' = -x2 - x3`, `x2' = x1 + a x2`, `x3' = b + x1 x3 - c x3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rossler {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for Rossler {
    fn default() -> Self {
        Rossler { a: 0.2, b: 0.2, c: 5.7 }
    }
}

impl VectorField for Rossler {
    fn dimension(&self) -> usize {
        3
    }

    #[inline]
    fn eval(&self, x: &[f64], out: &mut [f64]) {
        out[0] = -x[1] - x[2];
        out[1] = x[0] + self.a * x[1];
        out[2] = self.b + x[0] * x[2] - self.c * x[2];
    }
}

/// Scalar linear flow `x' = rate * x`, applied per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Linear {
    pub rate: f64,
    pub dimension: usize,
}

impl Linear {
    pub fn new(rate: f64) -> Self {
        Linear { rate, dimension: 1 }
    }
}

impl VectorField for Linear {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, v) in out.iter_mut().zip(x) {
            *o = self.rate * v;
        }
    }
}

/// Adapts a closure into a [`DiscreteMap`].
pub struct FnMap<F> {
    dimension: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnMap<F> {
    pub fn new(dimension: usize, f: F) -> Self {
        FnMap { dimension, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> DiscreteMap for FnMap<F> {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// Adapts a closure into a [`VectorField`].
pub struct FnField<F> {
    dimension: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnField<F> {
    pub fn new(dimension: usize, f: F) -> Self {
        FnField { dimension, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> VectorField for FnField<F> {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// Built-in discrete systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MapSystem {
    Henon(Henon),
    Logistic(Logistic),
    Ikeda(Ikeda),
    Identity(Identity),
    Doubling(Doubling),
}

impl DiscreteMap for MapSystem {
    fn dimension(&self) -> usize {
        match self {
            MapSystem::Henon(m) => m.dimension(),
            MapSystem::Logistic(m) => m.dimension(),
            MapSystem::Ikeda(m) => m.dimension(),
            MapSystem::Identity(m) => m.dimension(),
            MapSystem::Doubling(m) => m.dimension(),
        }
    }

    #[inline]
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        match self {
            MapSystem::Henon(m) => m.apply(x, out),
            MapSystem::Logistic(m) => m.apply(x, out),
            MapSystem::Ikeda(m) => m.apply(x, out),
            MapSystem::Identity(m) => m.apply(x, out),
            MapSystem::Doubling(m) => m.apply(x, out),
        }
    }
}

/// Built-in continuous systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FlowSystem {
    Lorenz(Lorenz),
    Rossler(Rossler),
    Linear(Linear),
}

impl VectorField for FlowSystem {
    fn dimension(&self) -> usize {
        match self {
            FlowSystem::Lorenz(f) => f.dimension(),
            FlowSystem::Rossler(f) => f.dimension(),
            FlowSystem::Linear(f) => f.dimension(),
        }
    }

    #[inline]
    fn eval(&self, x: &[f64], out: &mut [f64]) {
        match self {
            FlowSystem::Lorenz(f) => f.eval(x, out),
            FlowSystem::Rossler(f) => f.eval(x, out),
            FlowSystem::Linear(f) => f.eval(x, out),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DynamicalSystem {
    Map(MapSystem),
    Flow(FlowSystem),
}

impl DynamicalSystem {
    pub fn dimension(&self) -> usize {
        match self {
            DynamicalSystem::Map(m) => m.dimension(),
            DynamicalSystem::Flow(f) => f.dimension(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, DynamicalSystem::Map(_))
    }

    /// Generates `n_steps + 1` samples. `h` is ignored for maps, which
    /// always use unit spacing.
    pub fn trajectory(&self, x0: &StateVector, h: f64, n_steps: usize) -> Result<TrajectoryGrid> {
        match self {
            DynamicalSystem::Map(m) => super::iterate_map(m, x0, n_steps),
            DynamicalSystem::Flow(f) => super::integrate_rk4(f, x0, h, n_steps),
        }
    }
}
