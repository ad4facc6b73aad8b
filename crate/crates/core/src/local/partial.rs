use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{recompute, EngineOptions};
use crate::cliques::{CliqueId, CliqueSet, Decomposition};
use crate::error::{Error, Result};
use crate::hindex::HIndexAccumulator;

/// Final estimates of a target-restricted run.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialResult {
    /// Sorted, deduplicated targets.
    pub targets: Vec<CliqueId>,
    /// τ per target, aligned with `targets`.
    pub tau: Vec<u32>,
    pub passes: usize,
    pub recomputed: usize,
    pub converged: bool,
}

impl PartialResult {
    pub fn get(&self, id: CliqueId) -> Option<u32> {
        self.targets.binary_search(&id).ok().map(|i| self.tau[i])
    }
}

/// Runs the notified asynchronous loop on `targets` only. Every other clique
/// keeps its s-degree and is never activated. Since only a subset of the
/// updates happens, each returned τ is still an upper bound of κ.
///
/// Targets are processed in ascending id order on the calling thread; of
/// `opts` only `max_iterations` and `early_exit` apply.
pub fn partial_and(
    cs: &CliqueSet<'_>,
    targets: &[CliqueId],
    opts: &EngineOptions,
) -> Result<PartialResult> {
    if targets.is_empty() {
        return Err(Error::InvalidConfig("target set is empty".into()));
    }
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    for &t in &targets {
        cs.check(t)?;
    }
    let slot: HashMap<CliqueId, usize> = targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut tau: Vec<u32> = targets.iter().map(|&t| cs.s_degree(t)).collect();
    let mut active = vec![true; targets.len()];
    let mut acc = HIndexAccumulator::new();
    let (mut passes, mut recomputed) = (0, 0);

    let converged = loop {
        passes += 1;
        let mut changed = false;
        for i in 0..targets.len() {
            if !std::mem::replace(&mut active[i], false) {
                continue;
            }
            recomputed += 1;
            let id = targets[i];
            let lookup = |o: CliqueId| slot.get(&o).map_or_else(|| cs.s_degree(o), |&j| tau[j]);
            let cap = if opts.early_exit { tau[i] } else { cs.s_degree(id) };
            let h = recompute(cs, id, cap, lookup, &mut acc);
            if h == tau[i] {
                continue;
            }
            changed = true;
            tau[i] = h;
            cs.for_each_s_clique(id, |_, others| {
                for o in others {
                    if let Some(&j) = slot.get(o) {
                        if h <= tau[j] {
                            active[j] = true;
                        }
                    }
                }
                ControlFlow::Continue(())
            });
        }
        if !changed {
            break true;
        }
        if opts.max_iterations.is_some_and(|m| passes >= m) {
            break false;
        }
    };

    Ok(PartialResult {
        targets,
        tau,
        passes,
        recomputed,
        converged,
    })
}

/// `{id} ∪ N_s(id)`: a vertex with its neighbours, an edge with the edges it
/// shares a triangle with, a triangle with those it shares a four-clique with.
pub fn ego_targets(cs: &CliqueSet<'_>, id: CliqueId) -> Result<Vec<CliqueId>> {
    cs.check(id)?;
    let mut targets = cs.neighbor_cliques(id);
    targets.push(id);
    targets.sort_unstable();
    Ok(targets)
}

/// Ego-network estimate of κ for any clique; never below the exact value.
pub fn estimate_ego(cs: &CliqueSet<'_>, id: CliqueId) -> Result<u32> {
    let targets = ego_targets(cs, id)?;
    let result = partial_and(cs, &targets, &EngineOptions::default())?;
    Ok(result.get(id).expect("anchor is a target"))
}

/// Core-number estimate of vertex `v` from its ego network.
pub fn estimate_vertex_core(cs: &CliqueSet<'_>, v: CliqueId) -> Result<u32> {
    expect_kind(cs, Decomposition::Core)?;
    estimate_ego(cs, v)
}

/// Truss-number estimate of edge `e` from the edges sharing a triangle with it.
pub fn estimate_edge_truss(cs: &CliqueSet<'_>, e: CliqueId) -> Result<u32> {
    expect_kind(cs, Decomposition::Truss)?;
    estimate_ego(cs, e)
}

fn expect_kind(cs: &CliqueSet<'_>, kind: Decomposition) -> Result<()> {
    if cs.decomposition() == kind {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "expected a {} clique set, got {}",
            kind.name(),
            cs.decomposition().name()
        )))
    }
}
