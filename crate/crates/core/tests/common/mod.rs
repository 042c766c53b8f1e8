#![allow(dead_code)]

use misdual::Graph;
use rand::Rng;

/// G(n, p) with `p` itself drawn uniformly, so sparse and dense graphs both show up.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let p: f64 = rng.gen();
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_graph_without_isolated<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let g = random_graph(rng, n);
        if g.isolated_vertices().next().is_none() {
            return g;
        }
    }
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Labeled graphs on `n` vertices with no isolated vertex, by inclusion-exclusion
/// over the set of vertices forced to be isolated.
pub fn count_without_isolated(n: u32) -> i64 {
    let binom = |n: u32, k: u32| (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64);
    (0..=n)
        .map(|k| {
            let rest = (n - k) as i64;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * binom(n, k) * (1i64 << (rest * (rest - 1) / 2))
        })
        .sum()
}
