//! Ikeda map with sixteen thresholds. The exact indices depend on the
//! platform's sin/cos, so this prints what the local libm produces.

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::seqtest::{
    coordinate_distance_series, dominant_coordinate, exceedances, run_sequential_test,
};
use poincare_seqtest::TestConfig;

fn main() -> poincare_seqtest::Result<()> {
    let ikeda = lookup_system("ikeda")?;
    let horizon = 20_000;
    let traj = ikeda.system.trajectory(&ikeda.initial_condition, 1.0, horizon)?;
    let outcome = run_sequential_test(&traj, &TestConfig::new(ikeda.eps0, ikeda.t_fix, horizon, 16)?)?;
    outcome.check_invariants()?;
    println!("status: {}", outcome.status);

    for (c, s) in outcome.convergence.iter().zip(&outcome.separation) {
        println!("k={:<2} zeta={:<5} eta={}", c.n, c.index, s.index);
    }

    let (Some(last_c), Some(last_s)) = (outcome.convergence.last(), outcome.separation.last()) else {
        return Ok(());
    };
    let (gamma, eta) = (last_c.index, last_s.index);
    let coord = dominant_coordinate(&traj, gamma, eta)?;
    let name = ["x", "y"][coord];
    let series = coordinate_distance_series(&traj, gamma, coord)?;
    println!("dominant coordinate at {eta}: {name}");
    let hits = exceedances(&series, ikeda.eps0, eta);
    println!("{} exceedances of |{name} - {name}_shift| above {} before {eta}:", hits.len(), ikeda.eps0);
    for (i, d) in hits {
        println!("  {i:>4}  {d:.9}");
    }
    Ok(())
}
