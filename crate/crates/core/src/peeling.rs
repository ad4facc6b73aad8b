//! Exact κ values by repeated removal of a minimum-s-degree r-clique.
//!
//! This is the sequential baseline every local engine is checked against.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cliques::{CliqueId, CliqueSet};
use crate::graph::{Graph, VertexId};

/// Which clique leaves first among those sharing the minimum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestId,
    /// Uniformly random priority, seeded.
    Random(u64),
}

#[derive(Debug, Clone)]
pub struct PeelOutcome {
    pub kappa: Vec<u32>,
    /// Cliques in the order they were removed.
    pub order: Vec<CliqueId>,
}

/// Residual degrees plus a bucket per degree value. Buckets are lazy heaps:
/// a clique is re-pushed whenever its degree drops, and entries whose degree
/// no longer matches their bucket are discarded on pop.
struct PeelState {
    degree: Vec<u32>,
    processed: Vec<bool>,
    priority: Vec<u32>,
    buckets: Vec<BinaryHeap<Reverse<(u32, CliqueId)>>>,
    level: usize,
}

impl PeelState {
    fn new(cs: &CliqueSet<'_>, tie: TieBreak) -> Self {
        let n = cs.len();
        let degree = cs.s_degrees().to_vec();
        let priority: Vec<u32> = match tie {
            TieBreak::LowestId => (0..n as u32).collect(),
            TieBreak::Random(seed) => {
                let mut p: Vec<u32> = (0..n as u32).collect();
                p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                p
            }
        };
        let max = degree.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets = vec![BinaryHeap::new(); max + 1];
        for (id, &d) in degree.iter().enumerate() {
            buckets[d as usize].push(Reverse((priority[id], id as CliqueId)));
        }
        PeelState {
            degree,
            processed: vec![false; n],
            priority,
            buckets,
            level: 0,
        }
    }

    fn extract_min(&mut self) -> Option<CliqueId> {
        while self.level < self.buckets.len() {
            match self.buckets[self.level].pop() {
                Some(Reverse((_, id))) => {
                    let i = id as usize;
                    if !self.processed[i] && self.degree[i] as usize == self.level {
                        return Some(id);
                    }
                }
                None => self.level += 1,
            }
        }
        None
    }

    fn decrement(&mut self, id: CliqueId) {
        let i = id as usize;
        self.degree[i] -= 1;
        let d = self.degree[i] as usize;
        self.buckets[d].push(Reverse((self.priority[i], id)));
    }
}

/// κ for every r-clique, ties broken by lowest clique id.
pub fn peel(cs: &CliqueSet<'_>) -> Vec<u32> {
    peel_with(cs, TieBreak::LowestId).kappa
}

pub fn peel_with(cs: &CliqueSet<'_>, tie: TieBreak) -> PeelOutcome {
    let n = cs.len();
    let mut state = PeelState::new(cs, tie);
    let mut kappa = vec![0u32; n];
    let mut order = Vec::with_capacity(n);
    let mut touched: Vec<CliqueId> = Vec::new();

    while let Some(id) = state.extract_min() {
        let k = state.degree[id as usize];
        kappa[id as usize] = k;
        order.push(id);
        touched.clear();
        cs.for_each_s_clique(id, |_, others| {
            if others.iter().all(|&o| !state.processed[o as usize]) {
                touched.extend(others.iter().copied().filter(|&o| state.degree[o as usize] > k));
            }
            ControlFlow::Continue(())
        });
        for &o in &touched {
            state.decrement(o);
        }
        state.processed[id as usize] = true;
    }
    PeelOutcome { kappa, order }
}

/// Core numbers by the array-based bucket sort of Batagelj and Zaversnik,
/// O(|V| + |E|).
pub fn core_numbers(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n as VertexId).map(|v| g.degree(v)).collect();
    let max = deg.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0 as VertexId; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v as VertexId;
        bin[deg[v]] += 1;
    }
    for d in (1..=max).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;
    for i in 0..n {
        let v = vert[i];
        for &u in g.adj(v) {
            let u = u as usize;
            if deg[u] > deg[v as usize] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u as VertexId != w {
                    pos[u] = pw;
                    vert[pu] = w;
                    pos[w as usize] = pu;
                    vert[pw] = u as VertexId;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg.into_iter().map(|d| d as u32).collect()
}
