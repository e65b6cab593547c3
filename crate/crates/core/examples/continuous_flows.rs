//! The three flows integrated with RK4 at h = 0.01 for 1e5 time units.
//! Pass a registry name to run just one of them.

use std::time::Instant;

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::seqtest::run_sequential_test;
use poincare_seqtest::TestConfig;

const H: f64 = 0.01;
const HORIZON: usize = 10_000_000;

fn main() -> poincare_seqtest::Result<()> {
    let only = std::env::args().nth(1);
    for name in ["rossler", "intermittency", "period_doubling"] {
        if only.as_deref().is_some_and(|o| o != name) {
            continue;
        }
        let entry = lookup_system(name)?;
        let started = Instant::now();
        let traj = entry.system.trajectory(&entry.initial_condition, H, HORIZON)?;
        let config = TestConfig::new(entry.eps0, entry.t_fix, HORIZON, 20)?;
        let outcome = run_sequential_test(&traj, &config)?;
        outcome.check_invariants()?;

        println!("{name}: {} in {:.1?}", outcome.status, started.elapsed());
        println!("  {:>3} {:>12} {:>10} {:>10}", "k", "t_k", "s_k", "delta");
        for (i, c) in outcome.convergence.iter().enumerate() {
            let s = outcome.separation.get(i).map_or("-".to_string(), |s| s.time.to_string());
            println!("  {:>3} {:>12} {:>10} {:>10.6}", c.n, c.time, s, c.delta);
        }
    }
    Ok(())
}
