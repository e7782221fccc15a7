//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use oddhex::augment::TriPod;
use oddhex::generators::{random_cubic_instance, random_instance, random_tripod};
use oddhex::graph::{BipartiteGraph, VertexId};

/// A generated host: cubic when `cubic`, dense random otherwise.
pub fn host(n: usize, seed: u64, cubic: bool) -> BipartiteGraph {
    if cubic {
        random_cubic_instance(n, seed, 10_000).unwrap()
    } else {
        random_instance(n, seed, 10_000).unwrap()
    }
}

/// Generated hosts over the given sizes, alternating dense and cubic.
pub fn hosts(sizes: &[usize], per_size: u64) -> Vec<BipartiteGraph> {
    let mut out = Vec::new();
    for &n in sizes {
        for seed in 0..per_size {
            out.push(host(n, seed, seed % 2 == 1 && n >= 10));
        }
    }
    out
}

/// Up to `per_host` random tripods with targets on each host.
pub fn tripods(gs: &[BipartiteGraph], per_host: u64) -> Vec<(usize, TriPod, Vec<VertexId>)> {
    let mut out = Vec::new();
    for (i, g) in gs.iter().enumerate() {
        for k in 0..per_host {
            if let Some((t, x)) = random_tripod(g, k, 100) {
                out.push((i, t, x));
            }
        }
    }
    out
}

/// Two copies of K3,3 sharing one side: K3,6, 3-connected but with a
/// 3-separation.
pub fn glued_k33s() -> BipartiteGraph {
    let edges = (0..3).flat_map(|i| (3..9).map(move |j| (i, j)));
    BipartiteGraph::from_edges(9, edges).unwrap()
}

/// Two copies of K3,3 sharing two vertices of one color and one of the other.
pub fn glued_k33s_mixed() -> BipartiteGraph {
    let k33 = |a: [usize; 3], b: [usize; 3]| a.into_iter().flat_map(move |i| b.into_iter().map(move |j| (i, j)));
    let edges: std::collections::BTreeSet<(usize, usize)> =
        k33([0, 1, 2], [3, 4, 5]).chain(k33([0, 1, 6], [3, 7, 8])).collect();
    BipartiteGraph::from_edges(9, edges).unwrap()
}

/// Odd counts a trace passes through, starting with the seed.
pub fn counts(seed: usize, steps: &[oddhex::improver::ImprovementStep]) -> Vec<usize> {
    let mut out = vec![seed];
    out.extend(steps.iter().map(|s| s.after_count));
    out
}

/// Strictly rising counts inside {0,3,4,5,6,9}, ending at 9, at most 5 steps.
pub fn monotone(cs: &[usize]) -> bool {
    const OK: [usize; 6] = [0, 3, 4, 5, 6, 9];
    cs.iter().all(|c| OK.contains(c)) && cs.windows(2).all(|w| w[0] < w[1]) && cs.last() == Some(&9) && cs.len() <= 6
}
