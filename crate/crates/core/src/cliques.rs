//! r-clique enumeration (r = 1, 2, 3) and on-the-fly discovery of the
//! (r+1)-cliques that contain a given r-clique.
//!
//! The s-cliques are never stored. Containing s-cliques are recovered from
//! sorted-list intersections:
//!
//! * vertices: every incident edge;
//! * edges: `N(u) ∩ N(v)`, where the merge positions give the ids of the two
//!   other edges directly through a per-slot edge index;
//! * triangles: a three-way merge of the per-edge "third vertex" tables of the
//!   triangle's edges, which yields the ids of the three other triangles.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type CliqueId = u32;

/// The three supported `(r, s = r + 1)` decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decomposition {
    /// (1,2): vertices in edges, core numbers.
    Core,
    /// (2,3): edges in triangles, truss numbers.
    Truss,
    /// (3,4): triangles in four-cliques.
    Nucleus34,
}

impl Decomposition {
    pub fn from_r(r: usize) -> Result<Self> {
        match r {
            1 => Ok(Decomposition::Core),
            2 => Ok(Decomposition::Truss),
            3 => Ok(Decomposition::Nucleus34),
            other => Err(Error::UnsupportedCliqueSize(other)),
        }
    }

    pub fn r(self) -> usize {
        match self {
            Decomposition::Core => 1,
            Decomposition::Truss => 2,
            Decomposition::Nucleus34 => 3,
        }
    }

    pub fn s(self) -> usize {
        self.r() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Decomposition::Core => "core",
            Decomposition::Truss => "truss",
            Decomposition::Nucleus34 => "nucleus34",
        }
    }

    pub const ALL: [Decomposition; 3] = [
        Decomposition::Core,
        Decomposition::Truss,
        Decomposition::Nucleus34,
    ];
}

impl std::str::FromStr for Decomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Decomposition::Core),
            "truss" => Ok(Decomposition::Truss),
            "nucleus34" => Ok(Decomposition::Nucleus34),
            other => Err(Error::InvalidConfig(format!(
                "unknown decomposition {other:?} (expected core, truss or nucleus34)"
            ))),
        }
    }
}

/// One s-clique containing an anchor r-clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCliqueVisit {
    /// Sorted vertex tuple of the s-clique.
    pub vertices: Vec<VertexId>,
    /// Ids of the other r-cliques of the s-clique.
    pub neighbors: Vec<CliqueId>,
}

/// All r-cliques of a graph with their s-degrees.
#[derive(Debug, Clone)]
pub struct CliqueSet<'g> {
    graph: &'g Graph,
    kind: Decomposition,
    vertices: Vec<VertexId>,
    s_degree: Vec<u32>,
    /// Edge id for every slot of the graph's flat neighbor array (r >= 2).
    edge_at: Vec<CliqueId>,
    /// Per-edge sorted third vertices of incident triangles, with triangle
    /// ids alongside (r = 3).
    tri_offsets: Vec<usize>,
    tri_third: Vec<VertexId>,
    tri_ids: Vec<CliqueId>,
}

/// Enumerates all r-cliques of `g` for `r` in 1..=3.
pub fn enumerate_r_cliques(g: &Graph, r: usize) -> Result<CliqueSet<'_>> {
    Ok(CliqueSet::new(g, Decomposition::from_r(r)?))
}

impl<'g> CliqueSet<'g> {
    pub fn new(graph: &'g Graph, kind: Decomposition) -> Self {
        let mut cs = CliqueSet {
            graph,
            kind,
            vertices: Vec::new(),
            s_degree: Vec::new(),
            edge_at: Vec::new(),
            tri_offsets: Vec::new(),
            tri_third: Vec::new(),
            tri_ids: Vec::new(),
        };
        match kind {
            Decomposition::Core => {
                cs.vertices = (0..graph.vertex_count() as VertexId).collect();
                cs.s_degree = (0..graph.vertex_count() as VertexId)
                    .map(|v| graph.degree(v) as u32)
                    .collect();
            }
            Decomposition::Truss => {
                cs.index_edges();
                cs.s_degree = (0..(cs.vertices.len() / kind.r()) as CliqueId)
                    .into_par_iter()
                    .map(|e| {
                        let mut n = 0;
                        cs.for_each_s_clique(e, |_, _| {
                            n += 1;
                            ControlFlow::Continue(())
                        });
                        n
                    })
                    .collect();
            }
            Decomposition::Nucleus34 => {
                cs.index_edges();
                cs.index_triangles();
                cs.s_degree = (0..(cs.vertices.len() / kind.r()) as CliqueId)
                    .into_par_iter()
                    .map(|t| {
                        let mut n = 0;
                        cs.for_each_s_clique(t, |_, _| {
                            n += 1;
                            ControlFlow::Continue(())
                        });
                        n
                    })
                    .collect();
            }
        }
        cs
    }

    /// Assigns edge ids in `(u, v)`, `u < v` lexicographic order and fills
    /// the per-slot edge index.
    fn index_edges(&mut self) {
        let g = self.graph;
        let n = g.vertex_count();
        let mut edge_at = vec![0 as CliqueId; g.flat_neighbors().len()];
        let mut vertices = Vec::with_capacity(2 * g.edge_count());
        // Lower neighbours of v sit at the front of v's slice in ascending
        // order, which is exactly the order in which u < v is visited.
        let mut lower_cursor: Vec<usize> = (0..n as VertexId).map(|v| g.offset(v)).collect();
        let mut next: CliqueId = 0;
        for u in 0..n as VertexId {
            let base = g.offset(u);
            for (i, &v) in g.adj(u).iter().enumerate() {
                if v > u {
                    edge_at[base + i] = next;
                    edge_at[lower_cursor[v as usize]] = next;
                    lower_cursor[v as usize] += 1;
                    vertices.push(u);
                    vertices.push(v);
                    next += 1;
                }
            }
        }
        self.edge_at = edge_at;
        self.vertices = vertices;
    }

    fn index_triangles(&mut self) {
        let g = self.graph;
        let n = g.vertex_count();
        // Orient each edge from lower to higher (degree, id) rank.
        let higher = |u: VertexId, v: VertexId| (g.degree(v), v) > (g.degree(u), u);
        let mut out_offsets = vec![0usize; n + 1];
        let mut out: Vec<VertexId> = Vec::with_capacity(g.edge_count());
        for u in 0..n as VertexId {
            out.extend(g.adj(u).iter().copied().filter(|&v| higher(u, v)));
            out_offsets[u as usize + 1] = out.len();
        }
        let out_adj = |u: VertexId| &out[out_offsets[u as usize]..out_offsets[u as usize + 1]];

        let mut triangles: Vec<[VertexId; 3]> = (0..n as VertexId)
            .into_par_iter()
            .flat_map_iter(|u| {
                let nu = out_adj(u);
                let mut found = Vec::new();
                for &v in nu {
                    intersect_sorted(nu, out_adj(v), |w, _, _| {
                        let mut t = [u, v, w];
                        t.sort_unstable();
                        found.push(t);
                    });
                }
                found
            })
            .collect();
        triangles.par_sort_unstable();
        assert!(
            triangles.len() <= CliqueId::MAX as usize,
            "triangle count exceeds id space"
        );

        let edge_count = self.vertices.len() / 2;
        let mut offsets = vec![0usize; edge_count + 1];
        let mut edge_triples = Vec::with_capacity(triangles.len());
        for &[a, b, c] in &triangles {
            let ids = [
                self.edge_between(a, b),
                self.edge_between(a, c),
                self.edge_between(b, c),
            ];
            for &e in &ids {
                offsets[e as usize + 1] += 1;
            }
            edge_triples.push(ids);
        }
        for i in 0..edge_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..edge_count].to_vec();
        let mut third = vec![0 as VertexId; offsets[edge_count]];
        let mut ids = vec![0 as CliqueId; offsets[edge_count]];
        // Lexicographic triangle order leaves every per-edge list ascending.
        for (t, (&[a, b, c], &[ab, ac, bc])) in triangles.iter().zip(&edge_triples).enumerate() {
            for (e, w) in [(ab, c), (ac, b), (bc, a)] {
                let slot = cursor[e as usize];
                third[slot] = w;
                ids[slot] = t as CliqueId;
                cursor[e as usize] += 1;
            }
        }

        self.tri_offsets = offsets;
        self.tri_third = third;
        self.tri_ids = ids;
        self.vertices = triangles.into_iter().flatten().collect();
    }

    #[inline]
    fn edge_between(&self, u: VertexId, v: VertexId) -> CliqueId {
        let pos = self
            .graph
            .adj(u)
            .binary_search(&v)
            .expect("edge endpoints must be adjacent");
        self.edge_at[self.graph.offset(u) + pos]
    }

    #[inline]
    fn edge_triangles(&self, e: CliqueId) -> (&[VertexId], &[CliqueId]) {
        let range = self.tri_offsets[e as usize]..self.tri_offsets[e as usize + 1];
        (&self.tri_third[range.clone()], &self.tri_ids[range])
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn decomposition(&self) -> Decomposition {
        self.kind
    }

    pub fn r(&self) -> usize {
        self.kind.r()
    }

    pub fn len(&self) -> usize {
        self.s_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_degree.is_empty()
    }

    /// Sorted vertex tuple of clique `id`. Panics on an invalid id.
    pub fn vertices(&self, id: CliqueId) -> &[VertexId] {
        let r = self.r();
        &self.vertices[id as usize * r..(id as usize + 1) * r]
    }

    pub fn s_degree(&self, id: CliqueId) -> u32 {
        self.s_degree[id as usize]
    }

    pub fn s_degrees(&self) -> &[u32] {
        &self.s_degree
    }

    pub fn check(&self, id: CliqueId) -> Result<()> {
        if (id as usize) < self.len() {
            Ok(())
        } else {
            Err(Error::CliqueOutOfRange {
                id: id as u64,
                count: self.len(),
            })
        }
    }

    /// Reverse index: id of the r-clique on `vertices` (any order), if present.
    pub fn clique_of(&self, vertices: &[VertexId]) -> Option<CliqueId> {
        if vertices.len() != self.r() {
            return None;
        }
        let mut key = [0 as VertexId; 3];
        key[..vertices.len()].copy_from_slice(vertices);
        key[..vertices.len()].sort_unstable();
        let n = self.graph.vertex_count() as VertexId;
        if key[..vertices.len()].iter().any(|&v| v >= n) {
            return None;
        }
        match self.kind {
            Decomposition::Core => Some(key[0]),
            Decomposition::Truss => self.edge_id(key[0], key[1]),
            Decomposition::Nucleus34 => {
                let e = self.edge_id(key[0], key[1])?;
                let (third, ids) = self.edge_triangles(e);
                third.binary_search(&key[2]).ok().map(|p| ids[p])
            }
        }
    }

    /// Edge id of `{u, v}` when r >= 2.
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<CliqueId> {
        if self.edge_at.is_empty() || u == v {
            return None;
        }
        let n = self.graph.vertex_count() as VertexId;
        if u >= n || v >= n {
            return None;
        }
        let pos = self.graph.adj(u).binary_search(&v).ok()?;
        Some(self.edge_at[self.graph.offset(u) + pos])
    }

    /// Calls `f(extra_vertex, other_ids)` for every s-clique containing `id`.
    /// The s-clique is `vertices(id) ∪ {extra_vertex}`; `other_ids` are its
    /// r-cliques other than `id`. Returning `Break` stops the walk.
    ///
    /// Panics on an invalid id; see [`s_cliques_containing`](Self::s_cliques_containing)
    /// for the checked form.
    #[inline]
    pub fn for_each_s_clique<F>(&self, id: CliqueId, mut f: F)
    where
        F: FnMut(VertexId, &[CliqueId]) -> ControlFlow<()>,
    {
        let g = self.graph;
        match self.kind {
            Decomposition::Core => {
                for &u in g.adj(id) {
                    if f(u, &[u]).is_break() {
                        return;
                    }
                }
            }
            Decomposition::Truss => {
                let (u, v) = (self.vertices[2 * id as usize], self.vertices[2 * id as usize + 1]);
                let (ou, ov) = (g.offset(u), g.offset(v));
                let _ = try_intersect_sorted(g.adj(u), g.adj(v), |w, i, j| {
                    f(w, &[self.edge_at[ou + i], self.edge_at[ov + j]])
                });
            }
            Decomposition::Nucleus34 => {
                let t = 3 * id as usize;
                let (a, b, c) = (self.vertices[t], self.vertices[t + 1], self.vertices[t + 2]);
                let (ab_w, ab_id) = self.edge_triangles(self.edge_between(a, b));
                let (ac_w, ac_id) = self.edge_triangles(self.edge_between(a, c));
                let (bc_w, bc_id) = self.edge_triangles(self.edge_between(b, c));
                let (mut i, mut j, mut k) = (0, 0, 0);
                while i < ab_w.len() && j < ac_w.len() && k < bc_w.len() {
                    let (x, y, z) = (ab_w[i], ac_w[j], bc_w[k]);
                    let hi = x.max(y).max(z);
                    if x == hi && y == hi && z == hi {
                        if f(hi, &[ab_id[i], ac_id[j], bc_id[k]]).is_break() {
                            return;
                        }
                        i += 1;
                        j += 1;
                        k += 1;
                    } else {
                        if x < hi {
                            i += 1;
                        }
                        if y < hi {
                            j += 1;
                        }
                        if z < hi {
                            k += 1;
                        }
                    }
                }
            }
        }
    }

    /// Every s-clique containing `id`, materialized.
    pub fn s_cliques_containing(&self, id: CliqueId) -> Result<Vec<SCliqueVisit>> {
        self.check(id)?;
        let anchor = self.vertices(id);
        let mut out = Vec::with_capacity(self.s_degree(id) as usize);
        self.for_each_s_clique(id, |w, others| {
            let mut vertices = Vec::with_capacity(anchor.len() + 1);
            vertices.extend_from_slice(anchor);
            vertices.push(w);
            vertices.sort_unstable();
            out.push(SCliqueVisit {
                vertices,
                neighbors: others.to_vec(),
            });
            ControlFlow::Continue(())
        });
        Ok(out)
    }

    /// Distinct members of `N_s(id)`, ascending.
    pub fn neighbor_cliques(&self, id: CliqueId) -> Vec<CliqueId> {
        let mut out = Vec::new();
        self.for_each_s_clique(id, |_, others| {
            out.extend_from_slice(others);
            ControlFlow::Continue(())
        });
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Total number of s-cliques.
    pub fn s_clique_count(&self) -> u64 {
        let incidences: u64 = self.s_degree.iter().map(|&d| d as u64).sum();
        incidences / self.kind.s() as u64
    }
}

/// Merge-intersects two ascending slices, calling `f(value, i, j)` for each
/// common value at positions `i` and `j`.
fn intersect_sorted<F: FnMut(VertexId, usize, usize)>(a: &[VertexId], b: &[VertexId], mut f: F) {
    let _ = try_intersect_sorted(a, b, |w, i, j| {
        f(w, i, j);
        ControlFlow::Continue(())
    });
}

#[inline]
fn try_intersect_sorted<F>(a: &[VertexId], b: &[VertexId], mut f: F) -> ControlFlow<()>
where
    F: FnMut(VertexId, usize, usize) -> ControlFlow<()>,
{
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i], i, j)?;
                i += 1;
                j += 1;
            }
        }
    }
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, gnp};

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)])
    }

    #[test]
    fn k4_has_four_triangles_each_in_one_four_clique() {
        let g = complete_graph(4);
        let cs = enumerate_r_cliques(&g, 3).unwrap();
        assert_eq!(cs.len(), 4);
        for t in 0..4 {
            assert_eq!(cs.s_degree(t), 1);
        }
        assert_eq!(cs.vertices(0), &[0, 1, 2]);
        assert_eq!(cs.vertices(3), &[1, 2, 3]);
    }

    #[test]
    fn path_has_no_triangles() {
        let g = path3();
        assert_eq!(enumerate_r_cliques(&g, 3).unwrap().len(), 0);
        let edges = enumerate_r_cliques(&g, 2).unwrap();
        assert_eq!(edges.len(), 2);
        assert!(edges.s_degrees().iter().all(|&d| d == 0));
    }

    #[test]
    fn unsupported_r() {
        let g = path3();
        assert!(matches!(enumerate_r_cliques(&g, 0), Err(Error::UnsupportedCliqueSize(0))));
        assert!(matches!(enumerate_r_cliques(&g, 4), Err(Error::UnsupportedCliqueSize(4))));
    }

    #[test]
    fn edge_of_k4_sits_in_two_triangles() {
        let g = complete_graph(4);
        let cs = CliqueSet::new(&g, Decomposition::Truss);
        let e = cs.edge_id(0, 1).unwrap();
        let visits = cs.s_cliques_containing(e).unwrap();
        assert_eq!(visits.len(), 2);
        assert_eq!(visits[0].vertices, vec![0, 1, 2]);
        assert_eq!(visits[1].vertices, vec![0, 1, 3]);
        assert_eq!(
            visits[0].neighbors,
            vec![cs.edge_id(0, 2).unwrap(), cs.edge_id(1, 2).unwrap()]
        );
    }

    #[test]
    fn triangle_of_k5_sits_in_two_four_cliques() {
        let g = complete_graph(5);
        let cs = CliqueSet::new(&g, Decomposition::Nucleus34);
        let t = cs.clique_of(&[2, 0, 1]).unwrap();
        let visits = cs.s_cliques_containing(t).unwrap();
        assert_eq!(visits.len(), 2);
        assert_eq!(visits[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(visits[1].vertices, vec![0, 1, 2, 4]);
        for v in &visits {
            assert_eq!(v.neighbors.len(), 3);
        }
    }

    #[test]
    fn vertex_visits_are_incident_edges() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let cs = CliqueSet::new(&g, Decomposition::Core);
        let visits = cs.s_cliques_containing(0).unwrap();
        assert_eq!(visits.len(), 3);
        assert_eq!(visits[2].vertices, vec![0, 3]);
        assert_eq!(visits[2].neighbors, vec![3]);
    }

    #[test]
    fn invalid_id_is_rejected() {
        let g = complete_graph(4);
        let cs = CliqueSet::new(&g, Decomposition::Truss);
        assert!(matches!(
            cs.s_cliques_containing(6),
            Err(Error::CliqueOutOfRange { id: 6, count: 6 })
        ));
    }

    /// Independent triangle count: every vertex triple checked for adjacency.
    fn brute_triangles(g: &Graph) -> Vec<[VertexId; 3]> {
        let n = g.vertex_count() as VertexId;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !g.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if g.has_edge(a, c) && g.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    fn brute_four_cliques(g: &Graph) -> usize {
        let tri = brute_triangles(g);
        tri.iter()
            .map(|&[a, b, c]| {
                (c + 1..g.vertex_count() as VertexId)
                    .filter(|&d| g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d))
                    .count()
            })
            .sum()
    }

    #[test]
    fn double_counting_identities_on_random_graphs() {
        for seed in 0..30 {
            let n = 10 + (seed as usize % 5) * 8;
            let g = gnp(n, 0.15 + 0.05 * (seed % 6) as f64, seed);
            let tri = brute_triangles(&g);
            let k4 = brute_four_cliques(&g);

            let cs1 = CliqueSet::new(&g, Decomposition::Core);
            assert_eq!(cs1.s_clique_count() as usize, g.edge_count());

            let cs2 = CliqueSet::new(&g, Decomposition::Truss);
            let sum: u64 = cs2.s_degrees().iter().map(|&d| d as u64).sum();
            assert_eq!(sum as usize, 3 * tri.len());

            let cs3 = CliqueSet::new(&g, Decomposition::Nucleus34);
            assert_eq!(cs3.len(), tri.len());
            for (t, want) in tri.iter().enumerate() {
                assert_eq!(cs3.vertices(t as CliqueId), want);
            }
            let sum: u64 = cs3.s_degrees().iter().map(|&d| d as u64).sum();
            assert_eq!(sum as usize, 4 * k4);
        }
    }

    #[test]
    fn visits_round_trip_through_reverse_index() {
        let g = gnp(30, 0.4, 7);
        for kind in Decomposition::ALL {
            let cs = CliqueSet::new(&g, kind);
            for id in 0..cs.len() as CliqueId {
                let tuple = cs.vertices(id);
                assert!(tuple.windows(2).all(|w| w[0] < w[1]));
                for (i, &a) in tuple.iter().enumerate() {
                    for &b in &tuple[i + 1..] {
                        assert!(g.has_edge(a, b));
                    }
                }
                assert_eq!(cs.clique_of(tuple), Some(id));
                let visits = cs.s_cliques_containing(id).unwrap();
                assert_eq!(visits.len() as u32, cs.s_degree(id));
                for visit in visits {
                    assert_eq!(visit.neighbors.len(), kind.r());
                    for &nb in &visit.neighbors {
                        let members = cs.vertices(nb);
                        assert!(members.iter().all(|v| visit.vertices.contains(v)));
                        assert_eq!(cs.clique_of(members), Some(nb));
                        assert_ne!(nb, id);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = gnp(40, 0.3, 11);
        let a = CliqueSet::new(&g, Decomposition::Nucleus34);
        let b = CliqueSet::new(&g, Decomposition::Nucleus34);
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(a.s_degree, b.s_degree);
    }
}
