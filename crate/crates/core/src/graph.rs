//! Simple undirected graphs in compressed adjacency form, and the edge-list
//! loader that builds them.
//!
//! A [`Graph`] is immutable once built. Every vertex owns a strictly ascending
//! slice of the flat neighbor array, which is what the clique enumerators
//! intersect.

use std::collections::HashMap;
use std::io::BufRead;

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    edge_count: usize,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `vertex_count` vertices. Self-loops are dropped and
    /// duplicate or reversed edges merged.
    ///
    /// Panics if an endpoint is `>= vertex_count`.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let labels = (0..vertex_count as u64).collect();
        Self::build(vertex_count, edges, labels).0
    }

    fn build<I>(vertex_count: usize, edges: I, labels: Vec<u64>) -> (Self, usize, usize)
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut self_loops = 0;
        let mut pairs: Vec<(VertexId, VertexId)> = edges
            .into_iter()
            .filter_map(|(u, v)| {
                assert!(
                    (u as usize) < vertex_count && (v as usize) < vertex_count,
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                );
                match u.cmp(&v) {
                    std::cmp::Ordering::Less => Some((u, v)),
                    std::cmp::Ordering::Greater => Some((v, u)),
                    std::cmp::Ordering::Equal => {
                        self_loops += 1;
                        None
                    }
                }
            })
            .collect();
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        let duplicates = before - pairs.len();

        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, v) in &pairs {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..vertex_count].to_vec();
        let mut neighbors = vec![0; 2 * pairs.len()];
        // Lower neighbours first, then upper ones: pairs are sorted, so each
        // slice comes out ascending without a second sort.
        for &(u, v) in &pairs {
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }

        let graph = Graph {
            offsets,
            neighbors,
            edge_count: pairs.len(),
            labels,
        };
        (graph, self_loops, duplicates)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor slice of `v`.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        if (v as usize) < self.vertex_count() {
            Ok(self.adj(v))
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as u64,
                vertex_count: self.vertex_count(),
            })
        }
    }

    #[inline]
    pub(crate) fn adj(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Start of `v`'s slice in the flat neighbor array.
    #[inline]
    pub(crate) fn offset(&self, v: VertexId) -> usize {
        self.offsets[v as usize]
    }

    pub(crate) fn flat_neighbors(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let n = self.vertex_count();
        (u as usize) < n && (v as usize) < n && self.adj(u).binary_search(&v).is_ok()
    }

    /// Iterates every edge once as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count() as VertexId).flat_map(move |u| {
            self.adj(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Identifier of `v` in the source file.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    /// Internal id of the vertex labelled `label` in the source file.
    pub fn vertex_by_label(&self, label: u64) -> Option<VertexId> {
        // Identity mappings are the common case and need no search.
        let guess = label.checked_sub(self.labels.first().copied().unwrap_or(0));
        if let Some(g) = guess {
            if (g as usize) < self.labels.len() && self.labels[g as usize] == label {
                return Some(g as VertexId);
            }
        }
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|p| p as VertexId)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexBase {
    #[default]
    Zero,
    One,
}

/// How file ids become dense vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdMapping {
    /// Keep file ids (minus the index base) when they are reasonably dense,
    /// otherwise compact them.
    #[default]
    Auto,
    /// Vertex `i` is file id `i + base`; unreferenced ids become isolated vertices.
    Identity,
    /// Dense ids in first-seen order.
    Compact,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub base: IndexBase,
    pub comment_prefix: String,
    pub ids: IdMapping,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            base: IndexBase::Zero,
            comment_prefix: "#".to_string(),
            ids: IdMapping::Auto,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LoadStats {
    pub lines: usize,
    pub edges_read: usize,
    pub self_loops: usize,
    pub duplicates: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub compacted: bool,
}

/// Reads a whitespace-separated edge list. Tokens past the second on a line
/// are ignored.
pub fn load_edge_list<R: BufRead>(source: R, options: &LoadOptions) -> Result<(Graph, LoadStats)> {
    let base = match options.base {
        IndexBase::Zero => 0u64,
        IndexBase::One => 1u64,
    };
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut stats = LoadStats::default();

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        stats.lines = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty()
            || (!options.comment_prefix.is_empty() && trimmed.starts_with(&options.comment_prefix))
        {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two vertex ids".to_string(),
            })?;
            let id: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })?;
            id.checked_sub(base).ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("vertex id {id} is below the index base {base}"),
            })
        };
        let u = endpoint()?;
        let v = endpoint()?;
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    stats.edges_read = raw.len();

    let max_id = raw.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let compact = match options.ids {
        IdMapping::Identity => false,
        IdMapping::Compact => true,
        IdMapping::Auto => {
            let mut seen: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
            seen.sort_unstable();
            seen.dedup();
            max_id + 1 > 2 * seen.len() as u64 || max_id >= u32::MAX as u64
        }
    };
    if !compact && max_id >= u32::MAX as u64 {
        return Err(Error::InvalidConfig(format!(
            "vertex id {max_id} does not fit identity mapping; use compaction"
        )));
    }

    let (vertex_count, edges, labels) = if compact {
        let mut index: HashMap<u64, VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut intern = |id: u64| {
            *index.entry(id).or_insert_with(|| {
                labels.push(id + base);
                (labels.len() - 1) as VertexId
            })
        };
        let edges: Vec<(VertexId, VertexId)> =
            raw.iter().map(|&(u, v)| (intern(u), intern(v))).collect();
        (labels.len(), edges, labels)
    } else {
        let n = max_id as usize + 1;
        let edges = raw
            .iter()
            .map(|&(u, v)| (u as VertexId, v as VertexId))
            .collect();
        (n, edges, (0..n as u64).map(|i| i + base).collect())
    };

    let (graph, self_loops, duplicates) = Graph::build(vertex_count, edges, labels);
    stats.self_loops = self_loops;
    stats.duplicates = duplicates;
    stats.vertex_count = graph.vertex_count();
    stats.edge_count = graph.edge_count();
    stats.compacted = compact;
    Ok((graph, stats))
}
