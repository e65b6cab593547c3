//! Sequential test for Poincaré chaos.
//!
//! A trajectory passes the test when it returns ever closer to its initial
//! point along an increasing *convergence sequence* `t_n` (with
//! `|x(t_n) - x(0)| < 1/n`) while, along an increasing *separation sequence*
//! `s_n`, it sits more than `eps0` away from its own shift by `t_n`.
//!
//! The crate provides the two searches ([`seqtest::run_sequential_test`]),
//! the shift-distance analyses used to inspect a run, six benchmark systems
//! ([`dynamics::lookup_system`]), fixed-step map and RK4 trajectory
//! generators, and a largest-Lyapunov-exponent estimator for comparison.
//!
//! ```
//! use poincare_seqtest::{dynamics, seqtest::run_sequential_test, TestConfig, TestStatus};
//!
//! let entry = dynamics::lookup_system("henon").unwrap();
//! let traj = entry.system.trajectory(&entry.initial_condition, 1.0, 200_000).unwrap();
//! let config = TestConfig::new(entry.eps0, entry.t_fix, 200_000, 2).unwrap();
//! let outcome = run_sequential_test(&traj, &config).unwrap();
//! assert_eq!(outcome.status, TestStatus::Confirmed(2));
//! assert_eq!(outcome.convergence[1].index, 7);
//! assert_eq!(outcome.separation[1].index, 181);
//! ```

// `!(x < bound)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod lyapunov;
pub mod numfmt;
pub mod outcome;
pub mod seqtest;
pub mod state;
pub mod trajectory;

pub use error::{Error, Result};
pub use outcome::{ConvergenceEntry, SeparationEntry, SequentialTestOutcome, TestConfig, TestStatus};
pub use state::{distance, StateVector};
pub use trajectory::TrajectoryGrid;
