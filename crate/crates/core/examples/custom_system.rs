//! Systems outside the registry: a Lorenz flow loaded from a JSON
//! definition, and a tent map written as a closure.

use poincare_seqtest::dynamics::{iterate_map, FnMap, SystemDefinition};
use poincare_seqtest::seqtest::run_sequential_test;
use poincare_seqtest::{StateVector, TestConfig};

const LORENZ: &str = r#"{
    "name": "lorenz",
    "family": "lorenz",
    "parameters": { "sigma": 10.0, "rho": 28.0, "beta": 2.6666666666666665 },
    "initial_condition": [1.0, 1.0, 1.0],
    "eps0": 15.0,
    "t_fix": 5.0
}"#;

fn main() -> poincare_seqtest::Result<()> {
    let def = SystemDefinition::parse(LORENZ)?.remove(0);
    let system = def.to_system()?;
    // start on the attractor rather than at the listed point
    let transient = system.trajectory(&def.initial_state(), 0.01, 5_000)?;
    let x0 = transient.sample_at(transient.last_index())?;
    let horizon = 10_000_000;
    let traj = system.trajectory(&x0, 0.01, horizon)?;
    let config = TestConfig::new(def.eps0.unwrap(), def.t_fix.unwrap(), horizon, 5)?;
    let outcome = run_sequential_test(&traj, &config)?;
    println!("lorenz: {}", outcome.status);
    for (c, s) in outcome.convergence.iter().zip(&outcome.separation) {
        println!("  k={} t={} s={}", c.n, c.time, s.time);
    }

    // mu slightly below 2 keeps the orbit off the dyadic rationals
    let tent = FnMap::new(1, |x: &[f64], out: &mut [f64]| {
        out[0] = 1.99 * x[0].min(1.0 - x[0]);
    });
    let horizon = 100_000;
    let traj = iterate_map(&tent, &StateVector::new(vec![0.3141]), horizon)?;
    let outcome = run_sequential_test(&traj, &TestConfig::new(0.5, 1.0, horizon, 8)?)?;
    println!("tent: {}", outcome.status);
    for (c, s) in outcome.convergence.iter().zip(&outcome.separation) {
        println!("  k={} zeta={} eta={}", c.n, c.index, s.index);
    }
    Ok(())
}
