//! Configuration and result types of the sequential test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of one sequential-test run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestConfig {
    /// Separation threshold, in units of the state norm.
    pub eps0: f64,
    /// Convergence candidates must lie strictly after this time.
    pub t_fix: f64,
    /// Last grid index the searches may touch.
    pub horizon: usize,
    /// Largest threshold index `n` to attempt.
    pub k_max: usize,
}

impl TestConfig {
    pub fn new(eps0: f64, t_fix: f64, horizon: usize, k_max: usize) -> Result<Self> {
        let cfg = TestConfig { eps0, t_fix, horizon, k_max };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > 0.0 && self.eps0.is_finite()) {
            return Err(Error::invalid(format!("eps0 must be positive, got {}", self.eps0)));
        }
        if !(self.t_fix >= 0.0 && self.t_fix.is_finite()) {
            return Err(Error::invalid(format!("t_fix must be non-negative, got {}", self.t_fix)));
        }
        if self.horizon < 1 {
            return Err(Error::invalid("horizon must be at least 1"));
        }
        if self.k_max < 1 {
            return Err(Error::invalid("k_max must be at least 1"));
        }
        Ok(())
    }
}

/// A return of the trajectory to within `1/n` of its initial point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceEntry {
    /// Threshold index; the entry satisfies `delta < 1/n`.
    pub n: usize,
    /// Grid index of the return.
    pub index: usize,
    /// Grid time of the return (equal to `index` for maps).
    pub time: f64,
    /// `|x(index) - x(0)|`.
    pub delta: f64,
}

/// A time at which the trajectory and its shift by the matching
/// convergence entry are more than `eps0` apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationEntry {
    pub n: usize,
    pub index: usize,
    pub time: f64,
    /// `|x(t_n + s_n) - x(s_n)|`.
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum TestStatus {
    /// Both sequences reached `k` aligned entries.
    Confirmed(usize),
    /// No return within `1/n` was found inside the horizon.
    TruncatedAtConvergence(usize),
    /// No separation above `eps0` was found for threshold index `n`.
    TruncatedAtSeparation(usize),
}

impl TestStatus {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, TestStatus::Confirmed(_))
    }
}

impl std::fmt::Display for TestStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TestStatus::Confirmed(k) => write!(f, "confirmed(k={k})"),
            TestStatus::TruncatedAtConvergence(n) => write!(f, "truncated at convergence (n={n})"),
            TestStatus::TruncatedAtSeparation(n) => write!(f, "truncated at separation (n={n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequentialTestOutcome {
    pub config: TestConfig,
    pub convergence: Vec<ConvergenceEntry>,
    pub separation: Vec<SeparationEntry>,
    pub status: TestStatus,
}

impl SequentialTestOutcome {
    /// Number of aligned (convergence, separation) pairs.
    pub fn pairs(&self) -> usize {
        self.separation.len().min(self.convergence.len())
    }

    /// Checks threshold compliance, strict monotonicity and alignment.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, c) in self.convergence.iter().enumerate() {
            if c.n != i + 1 {
                return Err(Error::invalid(format!("convergence entry {i} has n={}", c.n)));
            }
            if !(c.delta < 1.0 / c.n as f64) {
                return Err(Error::invalid(format!("delta {} violates 1/{}", c.delta, c.n)));
            }
        }
        for w in self.convergence.windows(2) {
            if w[1].index <= w[0].index {
                return Err(Error::invalid(format!(
                    "convergence not increasing at n={}",
                    w[1].n
                )));
            }
        }
        if self.separation.len() > self.convergence.len() {
            return Err(Error::invalid("more separation than convergence entries"));
        }
        for (s, c) in self.separation.iter().zip(&self.convergence) {
            if s.n != c.n {
                return Err(Error::invalid(format!("separation n={} misaligned", s.n)));
            }
            if !(s.distance > self.config.eps0) {
                return Err(Error::invalid(format!(
                    "separation distance {} does not exceed eps0 at n={}",
                    s.distance, s.n
                )));
            }
        }
        for w in self.separation.windows(2) {
            if w[1].index <= w[0].index {
                return Err(Error::invalid(format!("separation not increasing at n={}", w[1].n)));
            }
        }
        Ok(())
    }
}
