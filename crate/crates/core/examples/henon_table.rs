//! Sequential test on the Hénon map: the two-row table, the spot distances
//! at the second separation, and the earlier exceedances of the x-coordinate.

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::seqtest::{
    coordinate_distance_series, exceedances, run_sequential_test, shift_distance_series,
};
use poincare_seqtest::TestConfig;

fn main() -> poincare_seqtest::Result<()> {
    let henon = lookup_system("henon")?;
    let horizon = 200_000;
    let traj = henon.system.trajectory(&henon.initial_condition, 1.0, horizon)?;

    let config = TestConfig::new(henon.eps0, henon.t_fix, horizon, 2)?;
    let outcome = run_sequential_test(&traj, &config)?;
    println!("status: {}", outcome.status);
    println!("{:>3} {:>6} {:>8} {:>6}", "k", "1/k", "zeta_k", "eta_k");
    for (c, s) in outcome.convergence.iter().zip(&outcome.separation) {
        println!("{:>3} {:>6.3} {:>8} {:>6}", c.n, 1.0 / c.n as f64, c.index, s.index);
    }

    let gamma = outcome.convergence[1].index;
    let eta = outcome.separation[1].index;
    let dx = coordinate_distance_series(&traj, gamma, 0)?;
    let full = shift_distance_series(&traj, gamma)?;
    println!("|x({eta}) - x_shift({eta})|   = {:.10}", dx.values[eta]);
    println!("||X({eta}) - X_shift({eta})|| = {:.10}", full.values[eta]);

    println!("x-coordinate exceedances of {} before {eta}:", henon.eps0);
    for (i, d) in exceedances(&dx, henon.eps0, eta) {
        println!("  i = {i:>3}  {d:.10}");
    }
    Ok(())
}
