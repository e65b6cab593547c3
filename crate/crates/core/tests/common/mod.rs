//! Brute-force reference searches and synthetic trajectories shared by the
//! integration tests.

#![allow(dead_code)]

use poincare_seqtest::TrajectoryGrid;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + (y - x) * (y - x)).sqrt()
}

/// `(n, index, delta)` for every convergence entry, found by collecting all
/// qualifying indices and taking the smallest.
pub fn oracle_convergence(
    traj: &TrajectoryGrid,
    fix_index: usize,
    k_max: usize,
    last: usize,
) -> Vec<(usize, usize, f64)> {
    let origin = traj.row(0);
    let mut out = Vec::new();
    let mut floor = fix_index;
    for n in 1..=k_max {
        let candidates: Vec<usize> = (0..=last)
            .filter(|&m| m > floor && dist(traj.row(m), origin) < 1.0 / n as f64)
            .collect();
        match candidates.iter().min() {
            Some(&m) => {
                out.push((n, m, dist(traj.row(m), origin)));
                floor = m;
            }
            None => break,
        }
    }
    out
}

/// `(n, offset, distance)` for every separation entry.
pub fn oracle_separation(
    traj: &TrajectoryGrid,
    convergence: &[(usize, usize, f64)],
    eps0: f64,
    last: usize,
) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    let mut floor = 0;
    for &(n, shift, _) in convergence {
        let candidates: Vec<usize> = (0..=last)
            .filter(|&s| s > floor && s + shift <= last)
            .filter(|&s| dist(traj.row(s + shift), traj.row(s)) > eps0)
            .collect();
        match candidates.iter().min() {
            Some(&s) => {
                out.push((n, s, dist(traj.row(s + shift), traj.row(s))));
                floor = s;
            }
            None => break,
        }
    }
    out
}

/// One randomized test case.
#[derive(Debug, Clone)]
pub struct SyntheticCase {
    pub traj: TrajectoryGrid,
    pub fix_index: usize,
    pub t_fix: f64,
    pub eps0: f64,
    pub k_max: usize,
    pub horizon: usize,
    pub kind: &'static str,
}

/// Deterministic case number `seed`: dimension 1 to 3, at most 10^4 samples.
pub fn synthetic_case(seed: u64) -> SyntheticCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=3);
    let n = rng.gen_range(10..=10_000);
    let h = [1.0, 0.5, 0.25, 0.01][rng.gen_range(0..4)];
    let t0 = if rng.gen_bool(0.3) { 2.5 } else { 0.0 };
    let kinds = ["uniform", "quasi_periodic", "random_walk", "lattice"];
    let kind = kinds[(seed % 4) as usize];

    let mut data = Vec::with_capacity(n * dim);
    let scale = rng.gen_range(0.3..2.5);
    let mut walk = vec![0.0; dim];
    let freqs: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.5)).collect();
    for i in 0..n {
        for d in 0..dim {
            let v = match kind {
                "uniform" => rng.gen_range(0.0..scale),
                "quasi_periodic" => {
                    scale * (freqs[d] * i as f64).sin() + rng.gen_range(-0.01..0.01)
                }
                "random_walk" => {
                    walk[d] += rng.gen_range(-0.2..0.2);
                    walk[d]
                }
                // multiples of 1/4 hit the 1/n bounds exactly
                _ => rng.gen_range(0..8) as f64 * 0.25,
            };
            data.push(v);
        }
    }
    let traj = TrajectoryGrid::from_flat(dim, h, t0, data).expect("finite data");
    let last = traj.last_index();
    let fix_index = rng.gen_range(0..=(last / 10).min(50));
    SyntheticCase {
        t_fix: t0 + poincare_seqtest::trajectory::grid_offset(fix_index, h),
        fix_index,
        eps0: rng.gen_range(0.05..2.0 * scale),
        k_max: rng.gen_range(1..=30),
        horizon: rng.gen_range(last / 2..=last),
        traj,
        kind,
    }
}
