use serde::{Deserialize, Serialize};

use crate::dynamics::SystemDefinition;
use crate::outcome::{ConvergenceEntry, SeparationEntry, TestStatus};

/// Everything needed to repeat a `run` and compare its tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub system: SystemDefinition,
    pub config: RunConfig,
    pub outcome: OutcomeSummary,
    pub duration_secs: f64,
    pub convergence: Vec<ConvergenceEntry>,
    pub separation: Vec<SeparationEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub eps0: f64,
    pub t_fix: f64,
    pub horizon: usize,
    pub h: f64,
    pub k_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeSummary {
    pub status: TestStatus,
    pub k_reached: usize,
    pub largest_convergence: Option<f64>,
}
