//! Finding some hex (not necessarily odd) in a non-planar graph.
//!
//! Candidate feet are enumerated lexicographically, bicolored triples first,
//! and the nine segments are routed by backtracking with reachability and
//! flow-based pruning.

use std::collections::VecDeque;

use thiserror::Error;

use crate::cancel::CancelToken;
use crate::connectivity::fan_exists;
use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::hex::Hex;
use crate::path::Path;
use crate::planarity::{is_planar, Embedding, Planarity};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("input graph is planar")]
    PlanarInput(Embedding),
    #[error("no hex found")]
    SearchExhausted,
    #[error("search cancelled")]
    Cancelled,
}

/// Finds a hex of `g`, or reports that `g` is planar.
pub fn find_hex(g: &BipartiteGraph) -> Result<Hex, SeedError> {
    find_hex_with(g, &CancelToken::new())
}

pub fn find_hex_with(g: &BipartiteGraph, cancel: &CancelToken) -> Result<Hex, SeedError> {
    if let Planarity::Planar(emb) = is_planar(g) {
        return Err(SeedError::PlanarInput(emb));
    }
    let router = Router::new(g.adjacency(), cancel);
    for (a, b) in feet_candidates(g) {
        if cancel.is_cancelled() {
            return Err(SeedError::Cancelled);
        }
        if let Some(h) = router.route(a, b) {
            return Ok(h);
        }
    }
    if cancel.is_cancelled() {
        Err(SeedError::Cancelled)
    } else {
        Err(SeedError::SearchExhausted)
    }
}

fn triples(pool: &[VertexId]) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            for k in j + 1..pool.len() {
                out.push([pool[i], pool[j], pool[k]]);
            }
        }
    }
    out
}

/// Feet pairs `(A, B)`: first `A` from the Left class and `B` from the
/// Right class, then every other split of six vertices with `min A < min B`.
fn feet_candidates(g: &BipartiteGraph) -> impl Iterator<Item = ([VertexId; 3], [VertexId; 3])> + '_ {
    let eligible: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    let left: Vec<VertexId> = eligible.iter().copied().filter(|&v| g.color(v) == Color::Left).collect();
    let right: Vec<VertexId> = eligible.iter().copied().filter(|&v| g.color(v) == Color::Right).collect();
    let lt = triples(&left);
    let rt = triples(&right);
    let bicolored = lt
        .clone()
        .into_iter()
        .flat_map(move |a| rt.clone().into_iter().map(move |b| (a, b)));
    let all = triples(&eligible);
    let mixed = all.clone().into_iter().flat_map(move |a| {
        all.clone()
            .into_iter()
            .filter(move |b| a[0] < b[0] && a.iter().all(|x| !b.contains(x)))
            .map(move |b| (a, b))
    });
    bicolored.chain(mixed.filter(move |(a, b)| {
        let pure = |t: &[VertexId; 3], c: Color| t.iter().all(|&v| g.color(v) == c);
        !(pure(a, Color::Left) && pure(b, Color::Right))
    }))
}

/// Backtracking search for nine internally disjoint paths joining every
/// vertex of `A` to every vertex of `B`, over an arbitrary adjacency list
/// (so it also runs on subgraphs).
pub(crate) struct Router<'a> {
    adj: &'a [Vec<VertexId>],
    cancel: &'a CancelToken,
}

struct State {
    used: Vec<bool>,
    paths: Vec<Path>,
}

const ORDER: [(usize, usize); 9] = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)];

impl<'a> Router<'a> {
    pub(crate) fn new(adj: &'a [Vec<VertexId>], cancel: &'a CancelToken) -> Router<'a> {
        Router { adj, cancel }
    }

    pub(crate) fn route(&self, a: [VertexId; 3], b: [VertexId; 3]) -> Option<Hex> {
        let feet = [a[0], a[1], a[2], b[0], b[1], b[2]];
        if feet.iter().any(|f| self.adj[f.ix()].len() < 3) {
            return None;
        }
        let mut st = State { used: vec![false; self.adj.len()], paths: Vec::new() };
        for f in feet {
            st.used[f.ix()] = true;
        }
        if !self.feasible(&st, &feet, 0) {
            return None;
        }
        if self.extend(&mut st, &feet, 0) {
            let p = &st.paths;
            let segments = std::array::from_fn(|i| std::array::from_fn(|j| p[3 * i + j].clone()));
            Some(Hex { feet, segments })
        } else {
            None
        }
    }

    fn extend(&self, st: &mut State, feet: &[VertexId; 6], k: usize) -> bool {
        if k == 9 {
            return true;
        }
        if self.cancel.is_cancelled() {
            return false;
        }
        let (i, j) = ORDER[k];
        let (s, t) = (feet[i], feet[3 + j]);
        let dist = self.distances_to(st, t);
        let mut seq = vec![s];
        self.dfs(st, feet, k, t, &dist, &mut seq)
    }

    fn dfs(&self, st: &mut State, feet: &[VertexId; 6], k: usize, t: VertexId, dist: &[usize], seq: &mut Vec<VertexId>) -> bool {
        let here = *seq.last().unwrap();
        let mut nbrs: Vec<VertexId> = self.adj[here.ix()]
            .iter()
            .copied()
            .filter(|&w| w == t || (!st.used[w.ix()] && dist[w.ix()] != usize::MAX))
            .collect();
        nbrs.sort_by_key(|&w| (dist[w.ix()], w));
        for w in nbrs {
            if self.cancel.is_cancelled() {
                return false;
            }
            if w == t {
                seq.push(t);
                st.paths.push(Path::new(seq.clone()));
                if self.feasible(st, feet, k + 1) && self.extend(st, feet, k + 1) {
                    return true;
                }
                st.paths.pop();
                seq.pop();
                continue;
            }
            st.used[w.ix()] = true;
            seq.push(w);
            if self.reaches(st, w, t) && self.dfs(st, feet, k, t, dist, seq) {
                return true;
            }
            seq.pop();
            st.used[w.ix()] = false;
        }
        false
    }

    /// BFS distances to `t` through unused vertices.
    fn distances_to(&self, st: &State, t: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[t.ix()] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x.ix()] {
                if !st.used[y.ix()] && dist[y.ix()] == usize::MAX {
                    dist[y.ix()] = dist[x.ix()] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn reaches(&self, st: &State, from: VertexId, t: VertexId) -> bool {
        if self.adj[from.ix()].contains(&t) {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        seen[from.ix()] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x.ix()] {
                if y == t {
                    return true;
                }
                if !st.used[y.ix()] && !seen[y.ix()] {
                    seen[y.ix()] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Every foot must still be able to reach all of its unrouted partners
    /// along paths that are disjoint apart from the foot itself.
    fn feasible(&self, st: &State, feet: &[VertexId; 6], k: usize) -> bool {
        let pending = &ORDER[k..];
        for f in 0..6 {
            let partners: Vec<VertexId> = pending
                .iter()
                .filter_map(|&(i, j)| {
                    if i == f {
                        Some(feet[3 + j])
                    } else if 3 + j == f {
                        Some(feet[i])
                    } else {
                        None
                    }
                })
                .collect();
            if partners.is_empty() {
                continue;
            }
            if !self.fan_exists(st, feet[f], &partners) {
                return false;
            }
        }
        true
    }

    fn fan_exists(&self, st: &State, root: VertexId, targets: &[VertexId]) -> bool {
        fan_exists(self.adj, root, targets, &|v| !st.used[v.ix()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, parse_graph6, vid};
    use crate::hex::validate_hex;

    fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
        BipartiteGraph::from_edges(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)))).unwrap()
    }

    #[test]
    fn k33_gives_trivial_hex() {
        let g = complete_bipartite(3, 3);
        let h = find_hex(&g).unwrap();
        assert_eq!(h.feet, [0, 1, 2, 3, 4, 5].map(vid));
        assert_eq!(h.total_length(), 9);
    }

    #[test]
    fn k44_uses_six_vertices() {
        let g = complete_bipartite(4, 4);
        let h = find_hex(&g).unwrap();
        assert_eq!(validate_hex(&g, &h), Ok(()));
        assert_eq!(h.vertices().len(), 6);
    }

    #[test]
    fn heawood_has_subdivided_segments() {
        let g = parse_graph6("MhEGHC@AI?_PC@_G_").unwrap();
        let h = find_hex(&g).unwrap();
        assert_eq!(validate_hex(&g, &h), Ok(()));
        assert!(h.total_length() > 9);
    }

    #[test]
    fn planar_input_rejected() {
        let q3 = parse_graph6("Gr`HOk").unwrap();
        assert!(matches!(find_hex(&q3), Err(SeedError::PlanarInput(_))));
        let c4 = parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap();
        assert!(matches!(find_hex(&c4), Err(SeedError::PlanarInput(_))));
    }

    #[test]
    fn cancelled_search_reports_it() {
        let g = parse_graph6("MhEGHC@AI?_PC@_G_").unwrap();
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(find_hex_with(&g, &token), Err(SeedError::Cancelled));
    }
}
