//! Resource caps and run statistics shared by every computation.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Size limits. All of them are configuration; the defaults keep the
/// acceptance matrix well inside a few seconds per case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest group for which a multiplication table is materialized.
    pub order: usize,
    /// Largest group whose full subgroup lattice is enumerated.
    pub subgroup_lattice: usize,
    /// Largest backtracking search (in candidate tuples / nodes).
    pub search_nodes: u64,
    /// Largest `|X|^n` scanned by the literal G-set oracle.
    pub gset_points: u64,
    /// Largest truncation order accepted from configuration.
    pub truncation: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 20160,
            subgroup_lattice: 384,
            search_nodes: 100_000_000,
            gset_points: 10_000_000,
            truncation: 8,
        }
    }
}

/// Counters updated while computing; reported alongside verifications.
#[derive(Debug, Default)]
pub struct Stats {
    homs: AtomicU64,
    classes: AtomicU64,
}

impl Stats {
    pub fn add_homs(&self, n: u64) {
        self.homs.fetch_add(n, Ordering::Relaxed);
    }

    pub fn add_classes(&self, n: u64) {
        self.classes.fetch_add(n, Ordering::Relaxed);
    }

    pub fn homs(&self) -> u64 {
        self.homs.load(Ordering::Relaxed)
    }

    pub fn classes(&self) -> u64 {
        self.classes.load(Ordering::Relaxed)
    }
}

/// Caps plus statistics, threaded through every entry point.
#[derive(Debug, Default)]
pub struct Ctx {
    pub caps: Caps,
    pub stats: Stats,
}

impl Ctx {
    pub fn new(caps: Caps) -> Self {
        Ctx { caps, stats: Stats::default() }
    }
}
