//! Node-count and wall-clock limits shared by the exponential searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000_000;

const FLUSH_EVERY: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Some(DEFAULT_NODE_BUDGET), max_time: None }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None, max_time: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), max_time: None }
    }

    pub fn with_time(mut self, max_time: Duration) -> Self {
        self.max_time = Some(max_time);
        self
    }
}

/// Shared consumption state for one budgeted call, possibly used by many
/// workers at once.
#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter { budget, start: Instant::now(), nodes: AtomicU64::new(0), tripped: AtomicBool::new(false) }
    }

    pub fn nodes_used(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Adds `n` nodes and checks both limits.
    pub fn charge(&self, n: u64) -> Result<()> {
        let used = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if self.tripped.load(Ordering::Relaxed) {
            return Err(self.error());
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|max| used > max);
        let over_time = self.budget.max_time.is_some_and(|max| self.start.elapsed() > max);
        if over_nodes || over_time {
            self.tripped.store(true, Ordering::Relaxed);
            return Err(self.error());
        }
        Ok(())
    }

    fn error(&self) -> Error {
        let mut parts = Vec::new();
        if let Some(max) = self.budget.max_nodes {
            parts.push(format!("node limit {max}"));
        }
        if let Some(max) = self.budget.max_time {
            parts.push(format!("time limit {:.3}s", max.as_secs_f64()));
        }
        Error::BudgetExceeded(format!(
            "{} nodes after {:.3}s ({})",
            self.nodes_used(),
            self.start.elapsed().as_secs_f64(),
            parts.join(", ")
        ))
    }
}

/// Per-worker counter that batches charges to the shared [`Meter`].
pub struct Tally<'a> {
    meter: &'a Meter,
    pending: u64,
}

impl<'a> Tally<'a> {
    pub fn new(meter: &'a Meter) -> Self {
        Tally { meter, pending: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush()
        } else {
            Ok(())
        }
    }

    pub fn flush(&mut self) -> Result<()> {
        let n = std::mem::take(&mut self.pending);
        self.meter.charge(n)
    }
}

impl Drop for Tally<'_> {
    fn drop(&mut self) {
        if self.pending > 0 {
            let _ = self.flush();
        }
    }
}
