//! Saving a trajectory in the binary layout, reading it back, and exporting
//! the first few samples as CSV.

use std::fs::File;
use std::io::{BufReader, BufWriter};

use poincare_seqtest::dynamics::lookup_system;
use poincare_seqtest::TrajectoryGrid;

fn main() -> poincare_seqtest::Result<()> {
    let rossler = lookup_system("rossler")?;
    let traj = rossler.system.trajectory(&rossler.initial_condition, 0.01, 50_000)?;

    let dir = std::env::temp_dir().join("poincare-seqtest-example");
    std::fs::create_dir_all(&dir)?;
    let bin = dir.join("rossler.bin");
    traj.write_binary(BufWriter::new(File::create(&bin)?))?;
    let back = TrajectoryGrid::read_binary(BufReader::new(File::open(&bin)?))?;
    assert_eq!(back, traj);
    println!("{}: {} samples, {} bytes", bin.display(), back.n_samples(), std::fs::metadata(&bin)?.len());

    let csv = dir.join("rossler_head.csv");
    back.truncated(6)?.write_csv(BufWriter::new(File::create(&csv)?))?;
    print!("{}", std::fs::read_to_string(&csv)?);
    Ok(())
}
