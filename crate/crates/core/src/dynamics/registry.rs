//! The six benchmark systems with their reference constants.

// initial conditions are kept digit-for-digit as published
#![allow(clippy::excessive_precision)]

use serde::Serialize;

use super::definition::SystemDefinition;
use super::systems::{DynamicalSystem, FlowSystem, Henon, Ikeda, Logistic, Lorenz, MapSystem, Rossler};
use crate::error::{Error, Result};
use crate::state::StateVector;

pub const SYSTEM_NAMES: [&str; 6] =
    ["henon", "logistic", "period_doubling", "rossler", "ikeda", "intermittency"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegistryEntry {
    pub name: String,
    pub system: DynamicalSystem,
    pub initial_condition: StateVector,
    /// Reference separation threshold.
    pub eps0: f64,
    /// Reference convergence cutoff (time units; an index for maps).
    ///
    /// The maps use 1: their published tables start the convergence
    /// sequence at index 2 although index 1 already lies within distance 1.
    pub t_fix: f64,
}

impl RegistryEntry {
    /// Definition-file form of this entry, including `eps0` and `t_fix`.
    pub fn definition(&self) -> SystemDefinition {
        let mut def = SystemDefinition::describe(&self.system, &self.initial_condition);
        def.name = Some(self.name.clone());
        def.eps0 = Some(self.eps0);
        def.t_fix = Some(self.t_fix);
        def
    }
}

fn entry(name: &str, system: DynamicalSystem, ic: &[f64], eps0: f64, t_fix: f64) -> RegistryEntry {
    RegistryEntry {
        name: name.to_string(),
        system,
        initial_condition: StateVector::new(ic.to_vec()),
        eps0,
        t_fix,
    }
}

pub fn lookup_system(name: &str) -> Result<RegistryEntry> {
    let e = match name {
        "henon" => entry(
            name,
            DynamicalSystem::Map(MapSystem::Henon(Henon { a: 1.4, b: 0.3 })),
            &[-0.27518575309954679, -0.32515652033839654],
            2.1,
            1.0,
        ),
        "logistic" => entry(
            name,
            DynamicalSystem::Map(MapSystem::Logistic(Logistic { r: 3.9 })),
            &[0.5],
            0.7,
            1.0,
        ),
        "period_doubling" => entry(
            name,
            DynamicalSystem::Flow(FlowSystem::Lorenz(Lorenz::with_rho(99.51))),
            &[23.319088231571342, -15.11725273004282, 130.76383915267931],
            45.0,
            631.36,
        ),
        "rossler" => entry(
            name,
            DynamicalSystem::Flow(FlowSystem::Rossler(Rossler { a: 0.2, b: 0.2, c: 5.7 })),
            &[-7.9208550704681606, -0.32213157410506699, 0.01470711076246217],
            22.0,
            35.0,
        ),
        "ikeda" => entry(
            name,
            DynamicalSystem::Map(MapSystem::Ikeda(Ikeda { a: 1.0, u: 0.9, c: 0.4, d: 6.0 })),
            &[0.0, 0.0],
            2.0,
            1.0,
        ),
        "intermittency" => entry(
            name,
            DynamicalSystem::Flow(FlowSystem::Lorenz(Lorenz::with_rho(166.29))),
            &[-6.9027101537827207, 6.1214285868616205, 146.73481404307805],
            200.0,
            11.64,
        ),
        _ => {
            return Err(Error::UnknownSystem {
                name: name.to_string(),
                valid: SYSTEM_NAMES.join(", "),
            })
        }
    };
    Ok(e)
}

/// All registry entries in listing order.
pub fn registry() -> Vec<RegistryEntry> {
    SYSTEM_NAMES.iter().map(|n| lookup_system(n).expect("registry name")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_constants() {
        let henon = lookup_system("henon").unwrap();
        assert_eq!(henon.eps0, 2.1);
        assert_eq!(henon.t_fix, 1.0);
        assert_eq!(
            henon.initial_condition.components(),
            &["-0.27518575309954679".parse::<f64>().unwrap(), "-0.32515652033839654".parse().unwrap()]
        );

        let rossler = lookup_system("rossler").unwrap();
        assert_eq!(rossler.t_fix, 35.0);
        assert_eq!(rossler.eps0, 22.0);
        assert_eq!(rossler.system, DynamicalSystem::Flow(FlowSystem::Rossler(Rossler { a: 0.2, b: 0.2, c: 5.7 })));

        let pd = lookup_system("period_doubling").unwrap();
        assert_eq!((pd.eps0, pd.t_fix), (45.0, 631.36));
        assert_eq!(pd.system, DynamicalSystem::Flow(FlowSystem::Lorenz(Lorenz { sigma: 10.0, rho: 99.51, beta: 8.0 / 3.0 })));
        assert_eq!(pd.initial_condition.components()[2], 130.76383915267931);

        let im = lookup_system("intermittency").unwrap();
        assert_eq!((im.eps0, im.t_fix), (200.0, 11.64));
        assert_eq!(im.initial_condition.components(), &[-6.9027101537827207, 6.1214285868616205, 146.73481404307805]);

        let ik = lookup_system("ikeda").unwrap();
        assert_eq!((ik.eps0, ik.t_fix), (2.0, 1.0));
        assert_eq!(ik.initial_condition.components(), &[0.0, 0.0]);

        let lg = lookup_system("logistic").unwrap();
        assert_eq!((lg.eps0, lg.t_fix), (0.7, 1.0));
        assert_eq!(lg.system, DynamicalSystem::Map(MapSystem::Logistic(Logistic { r: 3.9 })));
    }

    #[test]
    fn unknown_name_lists_valid_names() {
        let err = lookup_system("lorenz63").unwrap_err();
        let msg = err.to_string();
        assert!(err.is_usage());
        for name in SYSTEM_NAMES {
            assert!(msg.contains(name));
        }
    }

    #[test]
    fn registry_has_six_entries_matching_their_dimension() {
        let all = registry();
        assert_eq!(all.len(), 6);
        for e in all {
            assert_eq!(e.system.dimension(), e.initial_condition.dimension());
            let def = e.definition();
            assert_eq!(def.to_system().unwrap(), e.system);
        }
    }
}
