//! Seeded graph generators used by tests, benchmarks and the acceptance suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n as VertexId).flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)));
    Graph::from_edges(n, edges)
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Holme–Kim growth: preferential attachment with `m` edges per new vertex,
/// each followed by a triad-closing step with probability `p_triad`. Gives
/// heavy-tailed degrees and high clustering, the shape of social graphs.
pub fn powerlaw_cluster(n: usize, m: usize, p_triad: f64, seed: u64) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    // Endpoint multiset: sampling from it is degree-proportional.
    let mut endpoints: Vec<VertexId> = Vec::new();
    let mut edges = Vec::new();

    let mut connect = |u: VertexId, v: VertexId, adj: &mut Vec<Vec<VertexId>>, endpoints: &mut Vec<VertexId>| {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        endpoints.push(u);
        endpoints.push(v);
        edges.push((u, v));
    };

    // Seed clique on the first m + 1 vertices.
    for u in 0..=m as VertexId {
        for v in u + 1..=m as VertexId {
            connect(u, v, &mut adj, &mut endpoints);
        }
    }
    for new in (m + 1) as VertexId..n as VertexId {
        let mut chosen: Vec<VertexId> = Vec::with_capacity(m);
        let mut last: Option<VertexId> = None;
        while chosen.len() < m {
            let candidate = match last {
                Some(anchor) if rng.gen_bool(p_triad) => {
                    let pool: Vec<VertexId> = adj[anchor as usize]
                        .iter()
                        .copied()
                        .filter(|w| *w != new && !chosen.contains(w))
                        .collect();
                    pool.choose(&mut rng).copied()
                }
                _ => None,
            };
            let target = match candidate {
                Some(t) => t,
                None => loop {
                    let t = endpoints[rng.gen_range(0..endpoints.len())];
                    if !chosen.contains(&t) {
                        break t;
                    }
                },
            };
            chosen.push(target);
            connect(new, target, &mut adj, &mut endpoints);
            last = Some(target);
        }
    }
    Graph::from_edges(n, edges)
}

/// Vertex-disjoint union; `b`'s vertices are shifted past `a`'s.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.vertex_count() as VertexId;
    let edges = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + shift, v + shift)));
    Graph::from_edges(a.vertex_count() + b.vertex_count(), edges.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g = complete_graph(5);
        assert_eq!(g.edge_count(), 10);
        assert!((0..5).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn gnp_is_seeded() {
        assert_eq!(gnp(30, 0.3, 1), gnp(30, 0.3, 1));
        assert_ne!(gnp(30, 0.3, 1), gnp(30, 0.3, 2));
    }

    #[test]
    fn powerlaw_cluster_shape() {
        let g = powerlaw_cluster(500, 4, 0.7, 3);
        assert_eq!(g.vertex_count(), 500);
        // Seed clique plus m edges per added vertex.
        assert_eq!(g.edge_count(), 10 + 4 * 495);
        let max_deg = (0..500).map(|v| g.degree(v)).max().unwrap();
        assert!(max_deg > 30, "expected hubs, max degree {max_deg}");
    }

    #[test]
    fn union_shifts_ids() {
        let k3 = complete_graph(3);
        let g = disjoint_union(&k3, &k3);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(3, 5));
        assert!(!g.has_edge(2, 3));
    }
}
