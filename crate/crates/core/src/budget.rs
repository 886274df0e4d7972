//! Node budgets and worker-count configuration for the enumeration engines.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default node limit, sized so every bundled check finishes in seconds.
pub const DEFAULT_MAX_NODES: u64 = 50_000_000;

/// Resource limits passed to every search.
///
/// `jobs` caps the number of worker threads. Results never depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: u64,
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: DEFAULT_MAX_NODES, jobs: 1 }
    }
}

impl Limits {
    pub fn new(max_nodes: u64, jobs: usize) -> Self {
        Limits { max_nodes, jobs: jobs.max(1) }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    /// Run `f` inside a rayon pool with exactly `jobs` workers.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// A node counter shared between the workers of one search.
#[derive(Debug)]
pub struct NodeCounter {
    used: AtomicU64,
    limit: u64,
    what: &'static str,
}

impl NodeCounter {
    pub fn new(limit: u64, what: &'static str) -> Self {
        NodeCounter { used: AtomicU64::new(0), limit, what }
    }

    /// Charge `n` nodes; fails once the running total passes the limit.
    pub fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(Error::budget(self.what, self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}
