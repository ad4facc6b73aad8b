//! Fixtures shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use nucleus_core::generators::{complete_graph, disjoint_union, gnp, powerlaw_cluster};
use nucleus_core::{Graph, Order};

/// Graph on vertices `a`, `b`, … from two-letter edge names.
pub fn lettered(n: usize, edges: &str) -> Graph {
    let id = |c: u8| (c - b'a') as u32;
    let edges: Vec<(u32, u32)> = edges
        .split_whitespace()
        .map(|e| {
            let b = e.as_bytes();
            (id(b[0]), id(b[1]))
        })
        .collect();
    Graph::from_edges(n, edges)
}

/// A triangle `bcd` with a tail `b-a-e-f`; the minimum-degree vertex sits at
/// the end of the tail, and corrections ripple inwards one hop per pass.
pub fn tailed_triangle() -> Graph {
    lettered(6, "ab ae bc bd cd ef")
}

/// `K5` on `abcde` minus the edge `de`, plus triangles `aeg` and `aef`.
pub fn fringed_k5() -> Graph {
    lettered(7, "ab ac ad bc bd cd be ce ae ag eg af ef")
}

/// Pendant `a` on `b`, which joins `c` and `g`; those hang off the triangle `def`.
pub fn pendant_chain() -> Graph {
    lettered(7, "ab bc bg cd ce ge gf de ef df")
}

pub fn toys() -> Vec<(String, Graph)> {
    vec![
        ("tailed_triangle".into(), tailed_triangle()),
        ("fringed_k5".into(), fringed_k5()),
        ("pendant_chain".into(), pendant_chain()),
    ]
}

/// ≥ 200 seeded random graphs with at most 60 vertices and densities from
/// near-empty to dense, a few clustered and disconnected ones, plus the toys.
pub fn corpus() -> Vec<(String, Graph)> {
    let densities = [0.03, 0.08, 0.15, 0.25, 0.4, 0.6];
    let mut graphs = toys();
    for i in 0..204u64 {
        let n = 2 + (i as usize * 7) % 59;
        let p = densities[i as usize % densities.len()];
        graphs.push((format!("gnp(n={n},p={p},seed={i})"), gnp(n, p, 1_000 + i)));
    }
    for i in 0..12u64 {
        let n = 20 + 3 * i as usize;
        let m = 1 + i as usize % 4;
        graphs.push((format!("plc(n={n},m={m},seed={i})"), powerlaw_cluster(n, m, 0.6, i)));
    }
    graphs.push(("k8".into(), complete_graph(8)));
    graphs.push(("k5+k4".into(), disjoint_union(&complete_graph(5), &complete_graph(4))));
    graphs.push(("edgeless".into(), Graph::from_edges(5, Vec::new())));
    graphs
}

/// Asynchronous order/notify combinations exercised everywhere.
pub fn async_variants() -> Vec<(Order, bool)> {
    vec![
        (Order::Natural, true),
        (Order::Natural, false),
        (Order::Random(17), true),
        (Order::Random(17), false),
        (Order::DegreeLevels, true),
    ]
}
