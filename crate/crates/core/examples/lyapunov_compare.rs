//! Largest Lyapunov exponent next to the sequential-test verdict for every
//! registry system.

use poincare_seqtest::dynamics::{registry, DynamicalSystem};
use poincare_seqtest::lyapunov::{
    largest_lyapunov_flow, largest_lyapunov_map, DEFAULT_FLOW_TRANSIENT, DEFAULT_MAP_TRANSIENT,
};
use poincare_seqtest::seqtest::run_sequential_test;
use poincare_seqtest::TestConfig;

fn main() -> poincare_seqtest::Result<()> {
    println!("{:<16} {:>10} {:>8}  sequential test", "system", "lambda_1", "unit");
    for entry in registry() {
        let (lambda, unit, h, horizon) = match &entry.system {
            DynamicalSystem::Map(m) => {
                let e = largest_lyapunov_map(m, &entry.initial_condition, 1_000_000, DEFAULT_MAP_TRANSIENT)?;
                (e.exponent, "1/iter", 1.0, 100_000)
            }
            DynamicalSystem::Flow(f) => {
                let e = largest_lyapunov_flow(f, &entry.initial_condition, 0.01, 1_000_000, DEFAULT_FLOW_TRANSIENT, 10)?;
                (e.exponent, "1/time", 0.01, 10_000_000)
            }
        };
        let traj = entry.system.trajectory(&entry.initial_condition, h, horizon)?;
        let outcome = run_sequential_test(&traj, &TestConfig::new(entry.eps0, entry.t_fix, horizon, 10)?)?;
        println!("{:<16} {:>10.4} {:>8}  {}", entry.name, lambda, unit, outcome.status);
    }
    Ok(())
}
