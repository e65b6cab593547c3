//! Logistic map at r = 3.9: ten thresholds of the sequential test, then the
//! windows where the orbit and its shift by zeta_10 stay within 0.119.

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::seqtest::{closeness_intervals, run_sequential_test, shift_distance_series};
use poincare_seqtest::TestConfig;

fn main() -> poincare_seqtest::Result<()> {
    let logistic = lookup_system("logistic")?;
    let horizon = 100_000;
    let traj = logistic.system.trajectory(&logistic.initial_condition, 1.0, horizon)?;
    let outcome = run_sequential_test(&traj, &TestConfig::new(logistic.eps0, logistic.t_fix, horizon, 10)?)?;

    println!("status: {}", outcome.status);
    for (c, s) in outcome.convergence.iter().zip(&outcome.separation) {
        println!("k={:<2} zeta={:<3} eta={:<3} delta={:.6} sep={:.6}", c.n, c.index, s.index, c.delta, s.distance);
    }

    let gamma = outcome.convergence.last().expect("confirmed run").index;
    let series = shift_distance_series(&traj, gamma)?;
    let report = closeness_intervals(&series, 0.119, 30..=100)?;
    println!("close on (gamma = {gamma}, threshold {}):", report.threshold);
    for (a, b) in &report.intervals {
        println!("  [{a}, {b}]");
    }
    if let Some(max) = report.max_distance {
        println!("greatest distance on these intervals: {max:.10}");
    }
    Ok(())
}
