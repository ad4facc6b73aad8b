use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{
    processing_order, ratio, recompute, should_stop, DecompositionResult, EngineDescriptor,
    EngineOptions, IterationStats, CHUNK_SIZE,
};
use crate::cliques::{CliqueId, CliqueSet};
use crate::error::Result;
use crate::hindex::HIndexAccumulator;

/// Asynchronous engine: each recomputation reads the latest τ values.
///
/// With `opts.notify`, a clique is recomputed only while its active flag is
/// set. It clears its own flag when processed, and a clique whose τ drops to
/// `h` re-activates each neighbour `R'` with `τ(R') >= h`; a neighbour below
/// `h` cannot be affected. Flags are live within a pass, so a neighbour later
/// in the order is picked up in the same pass.
pub fn and(cs: &CliqueSet<'_>, opts: &EngineOptions) -> Result<DecompositionResult> {
    and_observed(cs, opts, &mut |_, _| {})
}

/// [`and`], calling `observer` with the statistics and a τ snapshot after
/// every pass.
pub fn and_observed(
    cs: &CliqueSet<'_>,
    opts: &EngineOptions,
    observer: &mut dyn FnMut(&IterationStats, &[u32]),
) -> Result<DecompositionResult> {
    opts.validate()?;
    let pool = opts.pool()?;
    let n = cs.len();
    let order = processing_order(cs, opts.order);
    let state = SharedState {
        cs,
        tau: cs.s_degrees().iter().map(|&d| AtomicU32::new(d)).collect(),
        active: (0..n).map(|_| AtomicBool::new(true)).collect(),
        notify: opts.notify,
        early_exit: opts.early_exit,
    };
    let mut stats = Vec::new();
    let mut snapshot = Vec::new();

    let converged = loop {
        let started = Instant::now();
        let counters = PassCounters::default();
        match &pool {
            None => {
                let mut acc = HIndexAccumulator::new();
                let mut local = LocalCounts::default();
                for &id in &order {
                    state.process(id, &mut acc, &mut local);
                }
                counters.add(&local);
            }
            Some(pool) => pool.install(|| {
                order.par_chunks(CHUNK_SIZE).for_each_init(HIndexAccumulator::new, |acc, chunk| {
                    let mut local = LocalCounts::default();
                    for &id in chunk {
                        state.process(id, acc, &mut local);
                    }
                    counters.add(&local);
                });
            }),
        }

        let recomputed = counters.recomputed.load(Ordering::Relaxed);
        let pass = IterationStats {
            iteration: stats.len() + 1,
            recomputed,
            updated: counters.updated.load(Ordering::Relaxed),
            increases: counters.increases.load(Ordering::Relaxed),
            active_ratio: ratio(recomputed, n),
            elapsed_secs: started.elapsed().as_secs_f64(),
        };
        state.snapshot_into(&mut snapshot);
        observer(&pass, &snapshot);
        let stop = should_stop(opts, &pass);
        stats.push(pass);
        if let Some(converged) = stop {
            break converged;
        }
    };

    state.snapshot_into(&mut snapshot);
    Ok(DecompositionResult {
        kappa: snapshot,
        iterations: stats.iter().filter(|s| s.updated > 0).count(),
        passes: stats.len(),
        converged,
        stats,
        engine: EngineDescriptor {
            name: if opts.notify { "and" } else { "and-nonotify" },
            decomposition: cs.decomposition(),
            order: Some(opts.order),
            threads: opts.threads,
            notify: opts.notify,
            stop_active_ratio: opts.stop_active_ratio,
            max_iterations: opts.max_iterations,
        },
    })
}

/// τ and flag cells shared by the workers. Each cell is accessed atomically;
/// stale reads are harmless because estimates only move down towards κ.
struct SharedState<'a, 'g> {
    cs: &'a CliqueSet<'g>,
    tau: Vec<AtomicU32>,
    active: Vec<AtomicBool>,
    notify: bool,
    early_exit: bool,
}

impl SharedState<'_, '_> {
    #[inline]
    fn process(&self, id: CliqueId, acc: &mut HIndexAccumulator, counts: &mut LocalCounts) {
        let i = id as usize;
        // Acquire pairs with the Release in `activate`: a notification seen
        // here guarantees the notifier's new τ is visible to the reads below.
        if self.notify && !self.active[i].swap(false, Ordering::AcqRel) {
            return;
        }
        counts.recomputed += 1;
        let current = self.tau[i].load(Ordering::Relaxed);
        let cap = if self.early_exit { current } else { self.cs.s_degree(id) };
        let h = recompute(self.cs, id, cap, |o| self.tau[o as usize].load(Ordering::Relaxed), acc);
        if h == current {
            return;
        }
        counts.updated += 1;
        if h > current {
            counts.increases += 1;
        }
        // Publish before notifying so a notified neighbour reads the new value.
        self.tau[i].store(h, Ordering::Relaxed);
        if self.notify {
            self.cs.for_each_s_clique(id, |_, others| {
                for &o in others {
                    if h <= self.tau[o as usize].load(Ordering::Relaxed) {
                        self.active[o as usize].store(true, Ordering::Release);
                    }
                }
                ControlFlow::Continue(())
            });
        }
    }

    fn snapshot_into(&self, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.tau.iter().map(|t| t.load(Ordering::Relaxed)));
    }
}

#[derive(Default)]
struct LocalCounts {
    recomputed: usize,
    updated: usize,
    increases: usize,
}

#[derive(Default)]
struct PassCounters {
    recomputed: AtomicUsize,
    updated: AtomicUsize,
    increases: AtomicUsize,
}

impl PassCounters {
    fn add(&self, local: &LocalCounts) {
        self.recomputed.fetch_add(local.recomputed, Ordering::Relaxed);
        self.updated.fetch_add(local.updated, Ordering::Relaxed);
        self.increases.fetch_add(local.increases, Ordering::Relaxed);
    }
}
