//! Separation of the orbit from several of its shifts at once: rows are
//! shifts t_k for a few thresholds, columns are the separation times s_n.

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::seqtest::{cross_separation_matrix, run_sequential_test};
use poincare_seqtest::TestConfig;

fn main() -> poincare_seqtest::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "rossler".into());
    let entry = lookup_system(&name)?;
    let h = if entry.system.is_discrete() { 1.0 } else { 0.01 };
    let horizon = if entry.system.is_discrete() { 200_000 } else { 10_000_000 };
    let traj = entry.system.trajectory(&entry.initial_condition, h, horizon)?;
    let outcome = run_sequential_test(&traj, &TestConfig::new(entry.eps0, entry.t_fix, horizon, 20)?)?;

    let k = outcome.pairs();
    if k == 0 {
        println!("{name}: {}, nothing to tabulate", outcome.status);
        return Ok(());
    }
    let mut ks = vec![1, k.div_ceil(3), (2 * k).div_ceil(3), k];
    ks.dedup();
    let shifts: Vec<usize> = ks.iter().map(|&k| outcome.convergence[k - 1].index).collect();
    let probes: Vec<usize> = outcome.separation[..k].iter().map(|s| s.index).collect();
    let m = cross_separation_matrix(&traj, &shifts, &probes)?;

    println!("{name}: {} (eps0 = {})", outcome.status, entry.eps0);
    print!("{:>10}", "s \\ t");
    for &s in &shifts {
        print!("{:>12}", traj.time_at(s));
    }
    println!();
    for (&p, row) in probes.iter().zip(&m.distances) {
        print!("{:>10}", traj.time_at(p));
        for d in row {
            print!("{d:>12.6}");
        }
        println!();
    }
    let above = m.distances.iter().flatten().filter(|&&d| d > entry.eps0).count();
    println!("{above} of {} entries exceed eps0", probes.len() * shifts.len());
    println!("smallest entry: {:.6}", m.min().unwrap_or(f64::NAN));
    Ok(())
}
