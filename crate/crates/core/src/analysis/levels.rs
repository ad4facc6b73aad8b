use std::ops::ControlFlow;

use crate::cliques::{CliqueId, CliqueSet};

const UNASSIGNED: u32 = u32::MAX;

/// Partition of the r-cliques into degree levels: `L₀` holds every clique of
/// minimum s-degree; removing them (and every s-clique touching them)
/// leaves a residual structure whose minimum-degree cliques form `L₁`, and
/// so on. The level count bounds the number of synchronous passes that
/// change anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLevels {
    levels: Vec<Vec<CliqueId>>,
    level_of: Vec<u32>,
}

impl DegreeLevels {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Members of level `i`, ascending.
    pub fn level(&self, i: usize) -> &[CliqueId] {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Vec<CliqueId>] {
        &self.levels
    }

    pub fn level_of(&self, id: CliqueId) -> u32 {
        self.level_of[id as usize]
    }

    /// Cliques by ascending level, ties by id.
    pub fn processing_order(&self) -> Vec<CliqueId> {
        self.levels.iter().flatten().copied().collect()
    }

    /// `(level, size)` pairs.
    pub fn histogram(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(Vec::len).enumerate().collect()
    }
}

pub fn degree_levels(cs: &CliqueSet<'_>) -> DegreeLevels {
    let n = cs.len();
    let mut residual = cs.s_degrees().to_vec();
    let max = residual.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<CliqueId>> = vec![Vec::new(); max + 1];
    for (id, &d) in residual.iter().enumerate() {
        buckets[d as usize].push(id as CliqueId);
    }
    let mut level_of = vec![UNASSIGNED; n];
    let mut levels: Vec<Vec<CliqueId>> = Vec::new();
    let mut lowest = 0usize;
    let mut remaining = n;

    while remaining > 0 {
        // Buckets hold stale entries for cliques whose degree has since
        // dropped; only entries matching their bucket are live.
        let mut level: Vec<CliqueId> = loop {
            while buckets[lowest].is_empty() {
                lowest += 1;
            }
            let live: Vec<CliqueId> = buckets[lowest]
                .drain(..)
                .filter(|&id| level_of[id as usize] == UNASSIGNED && residual[id as usize] as usize == lowest)
                .collect();
            if !live.is_empty() {
                break live;
            }
        };
        level.sort_unstable();
        let index = levels.len() as u32;
        for &id in &level {
            level_of[id as usize] = index;
        }
        for &id in &level {
            cs.for_each_s_clique(id, |_, others| {
                // An s-clique already gone, or one that a lower-id member of
                // this same level accounts for, is skipped.
                let skip = others.iter().any(|&o| {
                    let l = level_of[o as usize];
                    l < index || (l == index && o < id)
                });
                if !skip {
                    for &o in others {
                        if level_of[o as usize] == UNASSIGNED {
                            let d = &mut residual[o as usize];
                            *d -= 1;
                            buckets[*d as usize].push(o);
                            lowest = lowest.min(*d as usize);
                        }
                    }
                }
                ControlFlow::Continue(())
            });
        }
        remaining -= level.len();
        levels.push(level);
    }
    DegreeLevels { levels, level_of }
}
