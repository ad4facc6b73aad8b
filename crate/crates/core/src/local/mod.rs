//! Local iterated h-index engines.
//!
//! Every r-clique starts at its s-degree and repeatedly replaces its estimate
//! τ(R) by the h-index of `{ min τ(R') : R' ⊂ S, R' ≠ R }` over the s-cliques
//! `S ⊃ R`. Estimates only decrease, never drop below κ, and stop changing
//! exactly at κ. The engines differ in which τ values a recomputation reads
//! and which cliques get recomputed:
//!
//! * [`snd`]: synchronous, every read comes from the previous pass;
//! * [`and`]: asynchronous, reads the live values, optionally skipping
//!   cliques whose neighbourhood saw no relevant decrease (notifications);
//! * [`partial_and`]: the asynchronous loop restricted to a target set, used
//!   for ego-network estimates of single vertices or edges.

mod and;
mod partial;
mod snd;

pub use and::{and, and_observed};
pub use partial::{
    ego_targets, estimate_edge_truss, estimate_ego, estimate_vertex_core, partial_and,
    PartialResult,
};
pub use snd::{snd, snd_observed};

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::degree_levels;
use crate::cliques::{CliqueId, CliqueSet, Decomposition};
use crate::error::{Error, Result};
use crate::hindex::HIndexAccumulator;

/// Cliques handed to a worker at a time.
pub const CHUNK_SIZE: usize = 100;

/// Processing order of the asynchronous engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Ascending clique id.
    #[default]
    Natural,
    /// Seeded uniform shuffle.
    Random(u64),
    /// Ascending degree level, ties by id.
    DegreeLevels,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineOptions {
    pub threads: usize,
    /// Cap on passes, the confirming pass included.
    pub max_iterations: Option<usize>,
    /// Stop once a pass recomputes fewer than this fraction of cliques.
    pub stop_active_ratio: Option<f64>,
    pub order: Order,
    pub notify: bool,
    /// Stop scanning a clique's s-cliques once its current τ is confirmed.
    /// Turning this off makes every recomputation evaluate the full
    /// h-index, which exposes any would-be increase in the statistics.
    pub early_exit: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            threads: 1,
            max_iterations: None,
            stop_active_ratio: None,
            order: Order::Natural,
            notify: true,
            early_exit: true,
        }
    }
}

impl EngineOptions {
    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidConfig("max iterations must be at least 1".into()));
        }
        if let Some(r) = self.stop_active_ratio {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidConfig(format!(
                    "active-ratio threshold {r} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<Option<rayon::ThreadPool>> {
        if self.threads <= 1 {
            return Ok(None);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map(Some)
            .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationStats {
    /// 1-based pass number.
    pub iteration: usize,
    /// τ recomputations performed.
    pub recomputed: usize,
    /// Recomputations that changed τ.
    pub updated: usize,
    /// Recomputations whose result exceeded the previous τ. Always zero;
    /// only observable with `early_exit` off.
    pub increases: usize,
    /// `recomputed / |R|`.
    pub active_ratio: f64,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineDescriptor {
    pub name: &'static str,
    pub decomposition: Decomposition,
    pub order: Option<Order>,
    pub threads: usize,
    pub notify: bool,
    pub stop_active_ratio: Option<f64>,
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionResult {
    /// Final τ; equals κ when `converged`.
    pub kappa: Vec<u32>,
    /// Passes that changed at least one τ.
    pub iterations: usize,
    /// All passes, including the final confirming pass when converged.
    pub passes: usize,
    /// A pass completed without any change.
    pub converged: bool,
    pub stats: Vec<IterationStats>,
    pub engine: EngineDescriptor,
}

impl DecompositionResult {
    pub fn approximate(&self) -> bool {
        !self.converged
    }

    pub fn total_recomputed(&self) -> usize {
        self.stats.iter().map(|s| s.recomputed).sum()
    }
}

/// One application of the update operator to a single clique, materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateStep {
    pub anchor: CliqueId,
    /// `ρ(S, R)` for every s-clique `S ⊃ R`, in visit order.
    pub rho: Vec<u32>,
    pub h: u32,
}

/// Applies the update operator to `anchor` against the estimates `tau`.
pub fn update_step(cs: &CliqueSet<'_>, tau: &[u32], anchor: CliqueId) -> Result<UpdateStep> {
    cs.check(anchor)?;
    if tau.len() != cs.len() {
        return Err(Error::LengthMismatch {
            left: tau.len(),
            right: cs.len(),
        });
    }
    let mut rho = Vec::with_capacity(cs.s_degree(anchor) as usize);
    cs.for_each_s_clique(anchor, |_, others| {
        rho.push(min_over(others, |o| tau[o as usize]));
        ControlFlow::Continue(())
    });
    let h = crate::hindex::h_index(&rho);
    Ok(UpdateStep { anchor, rho, h })
}

#[inline]
fn min_over<F: Fn(CliqueId) -> u32>(ids: &[CliqueId], tau: F) -> u32 {
    ids.iter().map(|&o| tau(o)).min().unwrap_or(0)
}

/// `U τ(id)`, streamed through the accumulator. `cap` bounds the result
/// from above; passing the clique's current τ lets the scan stop as soon as
/// that value is confirmed.
#[inline]
pub(crate) fn recompute<F: Fn(CliqueId) -> u32>(
    cs: &CliqueSet<'_>,
    id: CliqueId,
    cap: u32,
    tau: F,
    acc: &mut HIndexAccumulator,
) -> u32 {
    acc.reset(cap);
    if acc.saturated() {
        return cap;
    }
    cs.for_each_s_clique(id, |_, others| {
        if acc.push(min_over(others, &tau)) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    acc.finish()
}

pub(crate) fn processing_order(cs: &CliqueSet<'_>, order: Order) -> Vec<CliqueId> {
    let n = cs.len() as CliqueId;
    match order {
        Order::Natural => (0..n).collect(),
        Order::Random(seed) => {
            let mut ids: Vec<CliqueId> = (0..n).collect();
            ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            ids
        }
        Order::DegreeLevels => degree_levels(cs).processing_order(),
    }
}

/// Why the pass loop ended, given the pass just completed.
pub(crate) fn should_stop(opts: &EngineOptions, stats: &IterationStats) -> Option<bool> {
    if stats.updated == 0 {
        return Some(true);
    }
    if opts.max_iterations.is_some_and(|m| stats.iteration >= m) {
        return Some(false);
    }
    if opts
        .stop_active_ratio
        .is_some_and(|threshold| stats.active_ratio < threshold)
    {
        return Some(false);
    }
    None
}

pub(crate) fn ratio(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}
