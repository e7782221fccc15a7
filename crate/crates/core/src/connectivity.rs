//! Vertex connectivity, Menger fans and H-paths.
//!
//! Everything here runs on a unit-capacity flow network with split vertices
//! (`in(v) -> out(v)` of capacity 1). Augmenting paths are found by BFS over
//! sorted adjacency lists, so every result is deterministic.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{vid, BipartiteGraph, VertexId};
use crate::path::Path;

const BIG: u32 = u32::MAX / 4;

struct Arc {
    to: usize,
    cap: u32,
}

/// Residual network for vertex-disjoint path problems out of one root.
struct SplitNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    n: usize,
    sink: usize,
}

impl SplitNetwork {
    fn node_in(v: VertexId) -> usize {
        2 * v.ix()
    }

    fn node_out(v: VertexId) -> usize {
        2 * v.ix() + 1
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// `groups[i]` is a target set that may absorb up to `caps[i]` paths.
    /// Targets are terminal (paths stop at the first target they reach);
    /// `internal_ok` says which other vertices may be used as interior
    /// vertices.
    fn build(
        adj: &[Vec<VertexId>],
        root: VertexId,
        groups: &[Vec<VertexId>],
        caps: &[u32],
        target_cap: u32,
        internal_ok: &dyn Fn(VertexId) -> bool,
    ) -> SplitNetwork {
        let n = adj.len();
        let sink = 2 * n + groups.len();
        let mut net = SplitNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); sink + 1],
            n,
            sink,
        };
        let mut target_of = vec![None; n];
        for (gi, grp) in groups.iter().enumerate() {
            for &t in grp {
                if t != root {
                    target_of[t.ix()] = Some(gi);
                }
            }
        }
        for v in (0..n).map(vid) {
            let usable = v == root || target_of[v.ix()].is_some() || internal_ok(v);
            if !usable {
                continue;
            }
            if v != root {
                let cap = if target_of[v.ix()].is_some() { target_cap } else { 1 };
                net.add(Self::node_in(v), Self::node_out(v), cap);
            }
            if let Some(gi) = target_of[v.ix()] {
                net.add(Self::node_out(v), 2 * n + gi, BIG);
                continue;
            }
            for &w in &adj[v.ix()] {
                if w == root {
                    continue;
                }
                if target_of[w.ix()].is_some() || internal_ok(w) {
                    net.add(Self::node_out(v), Self::node_in(w), BIG);
                }
            }
        }
        for (gi, &c) in caps.iter().enumerate() {
            net.add(2 * n + gi, sink, c);
        }
        net
    }

    fn augment(&mut self, source: usize) -> bool {
        let mut pred: Vec<Option<usize>> = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == self.sink {
                break;
            }
            for &ai in &self.out[x] {
                let a = &self.arcs[ai];
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    pred[a.to] = Some(ai);
                    queue.push_back(a.to);
                }
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut x = self.sink;
        while let Some(ai) = pred[x] {
            self.arcs[ai].cap -= 1;
            self.arcs[ai ^ 1].cap += 1;
            x = self.arcs[ai ^ 1].to;
        }
        true
    }

    fn max_flow(&mut self, source: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(source) {
            flow += 1;
        }
        flow
    }

    /// Decomposes the flow into root paths; each is returned with the
    /// index of the group it reached.
    fn paths(&self, root: VertexId) -> Vec<(usize, Path)> {
        let mut used = vec![false; self.arcs.len()];
        let mut result = Vec::new();
        let start = Self::node_out(root);
        loop {
            let mut verts = vec![root];
            let mut x = start;
            let mut group = None;
            loop {
                let next = self.out[x].iter().copied().find(|&ai| {
                    ai % 2 == 0 && !used[ai] && self.arcs[ai ^ 1].cap > 0
                });
                let Some(ai) = next else { break };
                used[ai] = true;
                let to = self.arcs[ai].to;
                if to >= 2 * self.n {
                    group = Some(to - 2 * self.n);
                    break;
                }
                if to.is_multiple_of(2) {
                    verts.push(vid(to / 2));
                }
                x = to;
            }
            match group {
                Some(gi) => result.push((gi, Path::new(verts))),
                None => break,
            }
        }
        result
    }

    /// Vertices whose split arc separates the residual-reachable side.
    fn cut(&self, root: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.out.len()];
        let s = Self::node_out(root);
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &ai in &self.out[x] {
                let a = &self.arcs[ai];
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        (0..self.n)
            .map(vid)
            .filter(|&v| v != root && seen[2 * v.ix()] && !seen[2 * v.ix() + 1])
            .collect()
    }
}

/// Paths from a common root, pairwise disjoint except at the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub root: VertexId,
    pub paths: Vec<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("only {found} disjoint paths exist; cut {cut:?}")]
pub struct NoFan {
    pub found: usize,
    pub cut: Vec<VertexId>,
}

/// `k` paths from `root` into `targets`, disjoint except at `root`, whose
/// interiors avoid `forbidden` and `targets`. On failure the returned cut
/// has fewer than `k` vertices and separates `root` from the targets in
/// `g - forbidden`.
pub fn menger_fan(
    g: &BipartiteGraph,
    root: VertexId,
    targets: &[VertexId],
    k: usize,
    forbidden: &[VertexId],
) -> Result<Fan, NoFan> {
    let mut blocked = vec![false; g.n()];
    for &f in forbidden {
        blocked[f.ix()] = true;
    }
    let groups = vec![targets.to_vec()];
    let ok = |v: VertexId| !blocked[v.ix()];
    let mut net = SplitNetwork::build(g.adjacency(), root, &groups, &[k as u32], 1, &ok);
    let found = net.max_flow(SplitNetwork::node_out(root), k);
    if found < k {
        return Err(NoFan { found, cut: net.cut(root) });
    }
    let mut paths: Vec<Path> = net.paths(root).into_iter().map(|(_, p)| p).collect();
    paths.sort();
    Ok(Fan { root, paths })
}

/// One path from `root` into each group, all disjoint except at `root`.
/// Interior vertices must satisfy `internal_ok` and avoid every group.
/// `result[i]` ends in `groups[i]`.
pub fn fan_to_groups(
    g: &BipartiteGraph,
    root: VertexId,
    groups: &[Vec<VertexId>],
    internal_ok: &dyn Fn(VertexId) -> bool,
) -> Option<Vec<Path>> {
    let caps = vec![1; groups.len()];
    let mut net = SplitNetwork::build(g.adjacency(), root, groups, &caps, 1, internal_ok);
    let found = net.max_flow(SplitNetwork::node_out(root), groups.len());
    if found < groups.len() {
        return None;
    }
    let mut out: Vec<Option<Path>> = vec![None; groups.len()];
    for (gi, p) in net.paths(root) {
        out[gi] = Some(p);
    }
    out.into_iter().collect()
}

/// Size of a maximum set of `root`-to-`target` paths, disjoint except at
/// `root` (no interior restrictions beyond `internal_ok`), capped at `limit`.
pub(crate) fn local_connectivity(
    g: &BipartiteGraph,
    root: VertexId,
    target: VertexId,
    limit: usize,
    internal_ok: &dyn Fn(VertexId) -> bool,
) -> (usize, Vec<VertexId>) {
    let groups = vec![vec![target]];
    let mut net = SplitNetwork::build(g.adjacency(), root, &groups, &[limit as u32], BIG, internal_ok);
    let f = net.max_flow(SplitNetwork::node_out(root), limit);
    let cut = if f < limit { net.cut(root) } else { Vec::new() };
    (f, cut)
}

/// Whether `root` has disjoint paths to every vertex of `targets` over an
/// arbitrary adjacency list, interiors restricted to `internal_ok`.
pub(crate) fn fan_exists(
    adj: &[Vec<VertexId>],
    root: VertexId,
    targets: &[VertexId],
    internal_ok: &dyn Fn(VertexId) -> bool,
) -> bool {
    let groups = vec![targets.to_vec()];
    let k = targets.len();
    let mut net = SplitNetwork::build(adj, root, &groups, &[k as u32], 1, internal_ok);
    net.max_flow(SplitNetwork::node_out(root), k) == k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectivityWitness {
    /// `n <= k`.
    TooFewVertices { n: usize },
    /// A vertex cut smaller than `k` (empty when the graph is disconnected).
    Cut(Vec<VertexId>),
}

fn components_without(g: &BipartiteGraph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut gone = vec![false; g.n()];
    for &r in removed {
        gone[r.ix()] = true;
    }
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if gone[s.ix()] || comp[s.ix()] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s.ix()] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !gone[y.ix()] && comp[y.ix()] == usize::MAX {
                    comp[y.ix()] = id;
                    members.push(y);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

/// `Ok` iff `g` has more than `k` vertices and no vertex cut of size
/// below `k`. The witness cut has minimum size; among minimum cuts
/// discovered, the most balanced one (largest smallest component) wins.
pub fn is_k_connected(g: &BipartiteGraph, k: usize) -> Result<(), ConnectivityWitness> {
    let n = g.n();
    if n <= k {
        return Err(ConnectivityWitness::TooFewVertices { n });
    }
    if components_without(g, &[]).len() > 1 {
        return Err(ConnectivityWitness::Cut(Vec::new()));
    }
    let mut best: Option<(usize, usize, Vec<VertexId>)> = None;
    for s in g.vertices() {
        for t in g.vertices().filter(|&t| t > s && !g.has_edge(s, t)) {
            let (f, mut cut) = local_connectivity(g, s, t, k, &|_| true);
            if f >= k {
                continue;
            }
            cut.sort();
            let balance = components_without(g, &cut)
                .iter()
                .map(|c| c.len())
                .min()
                .unwrap_or(0);
            let key = (cut.len(), usize::MAX - balance);
            let better = match &best {
                None => true,
                Some((l, b, c)) => key < (*l, *b) || (key == (*l, *b) && cut < *c),
            };
            if better {
                best = Some((key.0, key.1, cut));
            }
        }
    }
    match best {
        Some((_, _, cut)) => Err(ConnectivityWitness::Cut(cut)),
        None => Ok(()),
    }
}

/// A partition `(A, B, C)` of `V(G)` with `|C| = 3`, `|A|, |B| >= 2` and no
/// edge between `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
}

impl Separation {
    /// Checks the defining conditions directly.
    pub fn is_valid(&self, g: &BipartiteGraph) -> bool {
        let mut side = vec![0u8; g.n()];
        for (tag, part) in [(1, &self.a), (2, &self.b), (3, &self.c)] {
            for &v in part.iter() {
                if !g.contains(v) || side[v.ix()] != 0 {
                    return false;
                }
                side[v.ix()] = tag;
            }
        }
        side.iter().all(|&s| s != 0)
            && self.c.len() == 3
            && self.a.len() >= 2
            && self.b.len() >= 2
            && g.edges().iter().all(|&(u, v)| {
                let (x, y) = (side[u.ix()], side[v.ix()]);
                !((x == 1 && y == 2) || (x == 2 && y == 1))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum I4cViolation {
    #[error("fewer than five vertices ({0})")]
    TooFewVertices(usize),
    #[error("not 3-connected: {0:?}")]
    NotThreeConnected(ConnectivityWitness),
    #[error("3-separation {0:?}")]
    Separation(Separation),
}

/// Splits component sizes into two groups of total size at least 2 each,
/// if possible. Returns the indices forming the first group.
fn split_components(sizes: &[usize]) -> Option<Vec<usize>> {
    let total: usize = sizes.iter().sum();
    if sizes.len() < 2 || total < 4 {
        return None;
    }
    // reach[i][s]: some subset of the first i components sums to s.
    let mut reach = vec![vec![false; total + 1]; sizes.len() + 1];
    reach[0][0] = true;
    for (i, &sz) in sizes.iter().enumerate() {
        for s in 0..=total {
            if reach[i][s] {
                reach[i + 1][s] = true;
                reach[i + 1][s + sz] = true;
            }
        }
    }
    let target = (2..=total - 2).find(|&s| reach[sizes.len()][s])?;
    let mut picked = Vec::new();
    let mut s = target;
    for i in (0..sizes.len()).rev() {
        if !reach[i][s] {
            picked.push(i);
            s -= sizes[i];
        }
    }
    picked.reverse();
    Some(picked)
}

/// `Ok` iff `g` is 3-connected, has at least five vertices, and admits no
/// [`Separation`]. Enumerates every 3-subset, which is also the reference
/// the tests compare against.
pub fn is_internally_4_connected(g: &BipartiteGraph) -> Result<(), I4cViolation> {
    if g.n() < 5 {
        return Err(I4cViolation::TooFewVertices(g.n()));
    }
    is_k_connected(g, 3).map_err(I4cViolation::NotThreeConnected)?;
    let n = g.n();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let c = vec![vid(x), vid(y), vid(z)];
                let comps = components_without(g, &c);
                let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
                if let Some(first) = split_components(&sizes) {
                    let mut a: Vec<VertexId> =
                        first.iter().flat_map(|&i| comps[i].iter().copied()).collect();
                    let mut b: Vec<VertexId> = (0..comps.len())
                        .filter(|i| !first.contains(i))
                        .flat_map(|i| comps[i].iter().copied())
                        .collect();
                    a.sort();
                    b.sort();
                    return Err(I4cViolation::Separation(Separation { a, b, c }));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no H-path starts at the given candidates")]
pub struct NoHPath;

/// Shortest H-path whose first vertex is in `start_candidates`. Interior
/// vertices avoid `h_vertices`; a single-edge path must not be an edge of
/// `H`. Ties go to the smaller start vertex, then to BFS order.
pub fn find_h_path(
    g: &BipartiteGraph,
    h_vertices: &[VertexId],
    h_edges: &[(VertexId, VertexId)],
    start_candidates: &[VertexId],
) -> Result<Path, NoHPath> {
    let mut in_h = vec![false; g.n()];
    for &v in h_vertices {
        in_h[v.ix()] = true;
    }
    let mut edge_set: Vec<(VertexId, VertexId)> =
        h_edges.iter().map(|&(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
    edge_set.sort();
    let is_h_edge = |a: VertexId, b: VertexId| {
        let e = if a < b { (a, b) } else { (b, a) };
        edge_set.binary_search(&e).is_ok()
    };
    let mut starts = start_candidates.to_vec();
    starts.sort();
    starts.dedup();
    let mut best: Option<Path> = None;
    for s in starts {
        if !in_h[s.ix()] {
            continue;
        }
        if let Some(p) = h_path_from(g, &in_h, &is_h_edge, s, &|_| true) {
            if best.as_ref().is_none_or(|b| p.len() < b.len()) {
                best = Some(p);
            }
        }
    }
    best.ok_or(NoHPath)
}

/// BFS for the shortest path from `start` through non-`H` vertices to an
/// `H` vertex accepted by `end_ok` (other than `start`).
pub(crate) fn h_path_from(
    g: &BipartiteGraph,
    in_h: &[bool],
    is_h_edge: &dyn Fn(VertexId, VertexId) -> bool,
    start: VertexId,
    end_ok: &dyn Fn(VertexId) -> bool,
) -> Option<Path> {
    let accept = |w: VertexId| w != start && in_h[w.ix()] && end_ok(w);
    for &w in g.neighbors(start) {
        if accept(w) && !is_h_edge(start, w) {
            return Some(Path::new(vec![start, w]));
        }
    }
    let mut pred: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[start.ix()] = true;
    let mut queue = VecDeque::new();
    for &w in g.neighbors(start) {
        if !in_h[w.ix()] && !seen[w.ix()] {
            seen[w.ix()] = true;
            pred[w.ix()] = Some(start);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &w in g.neighbors(x) {
            if accept(w) {
                let mut verts = vec![w, x];
                let mut cur = x;
                while let Some(p) = pred[cur.ix()] {
                    verts.push(p);
                    cur = p;
                }
                verts.reverse();
                return Some(Path::new(verts));
            }
            if !in_h[w.ix()] && !seen[w.ix()] {
                seen[w.ix()] = true;
                pred[w.ix()] = Some(x);
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn k33() -> BipartiteGraph {
        parse_edge_list("0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5").unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)));
        BipartiteGraph::from_edges(a + b, edges).unwrap()
    }

    fn q3() -> BipartiteGraph {
        crate::graph::parse_graph6("Gr`HOk").unwrap()
    }

    fn vs(v: &[usize]) -> Vec<VertexId> {
        v.iter().map(|&i| vid(i)).collect()
    }

    /// Smallest vertex cut by enumerating vertex subsets.
    fn brute_connectivity(g: &BipartiteGraph) -> usize {
        let n = g.n();
        let mut best = n - 1;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size >= best || size + 2 > n {
                continue;
            }
            let removed: Vec<VertexId> = (0..n).filter(|i| mask >> i & 1 == 1).map(vid).collect();
            if components_without(g, &removed).len() > 1 {
                best = size;
            }
        }
        best
    }

    #[test]
    fn k33_and_q3_are_3_connected() {
        assert!(is_k_connected(&k33(), 3).is_ok());
        assert!(is_k_connected(&q3(), 3).is_ok());
        assert_eq!(brute_connectivity(&q3()), 3);
        assert!(matches!(is_k_connected(&q3(), 4), Err(ConnectivityWitness::Cut(c)) if c.len() == 3));
    }

    #[test]
    fn path_cut_is_middle_vertex() {
        let g = parse_edge_list("0 1\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(is_k_connected(&g, 2), Err(ConnectivityWitness::Cut(vs(&[2]))));
        assert_eq!(
            is_k_connected(&g, 5),
            Err(ConnectivityWitness::TooFewVertices { n: 5 })
        );
    }

    #[test]
    fn internal_4_connectivity_examples() {
        assert!(is_internally_4_connected(&k33()).is_ok());
        assert!(is_internally_4_connected(&complete_bipartite(4, 4)).is_ok());
        // Two copies of K3,3 sharing the side {0,1,2}.
        let glued = complete_bipartite(3, 6);
        match is_internally_4_connected(&glued) {
            Err(I4cViolation::Separation(sep)) => {
                assert_eq!(sep.c, vs(&[0, 1, 2]));
                assert!(sep.is_valid(&glued));
            }
            other => panic!("unexpected {other:?}"),
        }
        // Every 3-cut of the cube isolates a single vertex.
        assert!(is_internally_4_connected(&q3()).is_ok());
        assert!(matches!(
            is_internally_4_connected(&complete_bipartite(2, 2)),
            Err(I4cViolation::TooFewVertices(4))
        ));
    }

    #[test]
    fn fans() {
        let g = k33();
        let fan = menger_fan(&g, vid(0), &vs(&[1, 2]), 2, &[]).unwrap();
        assert_eq!(fan.paths.len(), 2);
        let mut ends: Vec<_> = fan.paths.iter().map(|p| p.last()).collect();
        ends.sort();
        assert_eq!(ends, vs(&[1, 2]));
        assert!(fan.paths[0].interior().iter().all(|v| !fan.paths[1].contains(*v)));
        for p in &fan.paths {
            p.check(&g).unwrap();
        }

        let star = parse_edge_list("0 1\n0 2\n0 3\n0 4").unwrap();
        let err = menger_fan(&star, vid(3), &vs(&[1, 2]), 2, &[]).unwrap_err();
        assert_eq!(err.cut, vs(&[0]));

        let one = menger_fan(&g, vid(0), &vs(&[4]), 1, &[]).unwrap();
        assert_eq!(one.paths, vec![Path::new(vs(&[0, 4]))]);
    }

    #[test]
    fn group_fan_hits_each_group() {
        let g = complete_bipartite(4, 4);
        let groups = vec![vs(&[1]), vs(&[2]), vs(&[5, 6])];
        let paths = fan_to_groups(&g, vid(4), &groups, &|_| true).unwrap();
        assert_eq!(paths[0].last(), vid(1));
        assert_eq!(paths[1].last(), vid(2));
        assert!(groups[2].contains(&paths[2].last()));
    }

    #[test]
    fn h_paths() {
        let g = k33();
        // H = the 6-cycle 0-3-1-4-2-5-0.
        let cyc = vs(&[0, 3, 1, 4, 2, 5]);
        let edges: Vec<_> = (0..6).map(|i| (cyc[i], cyc[(i + 1) % 6])).collect();
        let p = find_h_path(&g, &cyc, &edges, &vs(&[0])).unwrap();
        assert_eq!(p, Path::new(vs(&[0, 4])));

        let all: Vec<_> = g.vertices().collect();
        assert_eq!(find_h_path(&g, &all, g.edges(), &vs(&[0])), Err(NoHPath));

        let c4 = parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap();
        let p = find_h_path(&c4, &vs(&[0, 1]), &[(vid(0), vid(1))], &vs(&[0])).unwrap();
        assert_eq!(p, Path::new(vs(&[0, 3, 2, 1])));
    }
}
