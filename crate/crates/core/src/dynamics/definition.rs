//! JSON system definitions: a built-in family with its own constants and
//! initial condition.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::systems::{
    Doubling, DynamicalSystem, FlowSystem, Henon, Identity, Ikeda, Linear, Logistic, Lorenz,
    MapSystem, Rossler,
};
use crate::error::{Error, Result};
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Henon,
    Logistic,
    Ikeda,
    Lorenz,
    Rossler,
    Identity,
    Doubling,
    Linear,
}

impl Family {
    fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Family::Henon => &["a", "b"],
            Family::Logistic => &["r"],
            Family::Ikeda => &["a", "u", "c", "d"],
            Family::Lorenz => &["sigma", "rho", "beta"],
            Family::Rossler => &["a", "b", "c"],
            Family::Identity | Family::Doubling => &[],
            Family::Linear => &["rate"],
        }
    }
}

/// A serializable system description.
///
/// ```json
/// {"name": "lorenz-28", "family": "lorenz",
///  "parameters": {"rho": 28.0},
///  "initial_condition": [1.0, 1.0, 1.0], "eps0": 20.0}
/// ```
///
/// Parameters left out take the family's default constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemDefinition {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub family: Family,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    pub initial_condition: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_fix: Option<f64>,
}

impl SystemDefinition {
    /// Describes a built-in system with every parameter spelled out.
    pub fn describe(system: &DynamicalSystem, initial_condition: &StateVector) -> Self {
        let (family, params): (Family, Vec<(&str, f64)>) = match system {
            DynamicalSystem::Map(MapSystem::Henon(m)) => (Family::Henon, vec![("a", m.a), ("b", m.b)]),
            DynamicalSystem::Map(MapSystem::Logistic(m)) => (Family::Logistic, vec![("r", m.r)]),
            DynamicalSystem::Map(MapSystem::Ikeda(m)) => (
                Family::Ikeda,
                vec![("a", m.a), ("u", m.u), ("c", m.c), ("d", m.d)],
            ),
            DynamicalSystem::Map(MapSystem::Identity(_)) => (Family::Identity, vec![]),
            DynamicalSystem::Map(MapSystem::Doubling(_)) => (Family::Doubling, vec![]),
            DynamicalSystem::Flow(FlowSystem::Lorenz(f)) => (
                Family::Lorenz,
                vec![("sigma", f.sigma), ("rho", f.rho), ("beta", f.beta)],
            ),
            DynamicalSystem::Flow(FlowSystem::Rossler(f)) => {
                (Family::Rossler, vec![("a", f.a), ("b", f.b), ("c", f.c)])
            }
            DynamicalSystem::Flow(FlowSystem::Linear(f)) => (Family::Linear, vec![("rate", f.rate)]),
        };
        SystemDefinition {
            name: None,
            family,
            parameters: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            initial_condition: initial_condition.components().to_vec(),
            eps0: None,
            t_fix: None,
        }
    }

    pub fn initial_state(&self) -> StateVector {
        StateVector::new(self.initial_condition.clone())
    }

    /// Builds the system, checking parameter names and the initial condition.
    pub fn to_system(&self) -> Result<DynamicalSystem> {
        let allowed = self.family.parameter_names();
        if let Some(bad) = self.parameters.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::invalid(format!(
                "unknown parameter '{bad}' for family {:?} (allowed: {})",
                self.family,
                allowed.join(", ")
            )));
        }
        if let Some(v) = self.parameters.values().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite parameter value {v}")));
        }
        let p = |name: &str, default: f64| self.parameters.get(name).copied().unwrap_or(default);
        let dim = self.initial_condition.len();
        let system = match self.family {
            Family::Henon => {
                let d = Henon::default();
                DynamicalSystem::Map(MapSystem::Henon(Henon { a: p("a", d.a), b: p("b", d.b) }))
            }
            Family::Logistic => {
                DynamicalSystem::Map(MapSystem::Logistic(Logistic { r: p("r", Logistic::default().r) }))
            }
            Family::Ikeda => {
                let d = Ikeda::default();
                DynamicalSystem::Map(MapSystem::Ikeda(Ikeda {
                    a: p("a", d.a),
                    u: p("u", d.u),
                    c: p("c", d.c),
                    d: p("d", d.d),
                }))
            }
            Family::Identity => DynamicalSystem::Map(MapSystem::Identity(Identity::new(dim))),
            Family::Doubling => DynamicalSystem::Map(MapSystem::Doubling(Doubling)),
            Family::Lorenz => {
                let d = Lorenz::with_rho(28.0);
                DynamicalSystem::Flow(FlowSystem::Lorenz(Lorenz {
                    sigma: p("sigma", d.sigma),
                    rho: p("rho", d.rho),
                    beta: p("beta", d.beta),
                }))
            }
            Family::Rossler => {
                let d = Rossler::default();
                DynamicalSystem::Flow(FlowSystem::Rossler(Rossler {
                    a: p("a", d.a),
                    b: p("b", d.b),
                    c: p("c", d.c),
                }))
            }
            Family::Linear => DynamicalSystem::Flow(FlowSystem::Linear(Linear {
                rate: p("rate", 1.0),
                dimension: dim,
            })),
        };
        if dim == 0 {
            return Err(Error::invalid("initial condition is empty"));
        }
        if system.dimension() != dim {
            return Err(Error::DimensionMismatch { expected: system.dimension(), actual: dim });
        }
        if self.initial_condition.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("initial condition must be finite"));
        }
        Ok(system)
    }

    /// Parses a file holding one definition or an array of them.
    pub fn load(path: &Path) -> Result<Vec<SystemDefinition>> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Vec<SystemDefinition>> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum OneOrMany {
            One(SystemDefinition),
            Many(Vec<SystemDefinition>),
        }
        let defs = match serde_json::from_str::<OneOrMany>(text)? {
            OneOrMany::One(d) => vec![d],
            OneOrMany::Many(v) => v,
        };
        if defs.is_empty() {
            return Err(Error::invalid("system file contains no definitions"));
        }
        for d in &defs {
            d.to_system()?;
        }
        Ok(defs)
    }
}
