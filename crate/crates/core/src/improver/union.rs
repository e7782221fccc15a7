//! Best hex inside a small edge set.
//!
//! The union of a hex with a few extra paths has a small skeleton: the
//! vertices of degree other than two, joined by threads. A hex inside the
//! union keeps some threads whole and drops the rest, so the search runs
//! over keep/drop choices per thread, pruned by skeleton degrees.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::VertexId;
use crate::hex::{hex_from_edges, norm_edge, Edge, Hex};

struct Thread {
    ends: (usize, usize),
    edges: Vec<Edge>,
}

struct Search<'a> {
    threads: &'a [Thread],
    deg: Vec<u8>,
    rem: Vec<u8>,
    kept: Vec<bool>,
    floor: usize,
    best: Option<Hex>,
    budget: usize,
}

/// A hex inside `edges` with the most odd segments, provided that count
/// exceeds `floor`. Ties go to the first hex in thread order.
pub(crate) fn best_hex_in_union(edges: &BTreeSet<Edge>, floor: usize) -> Option<Hex> {
    let (threads, nodes) = skeleton(edges);
    let mut rem = vec![0u8; nodes];
    for t in &threads {
        rem[t.ends.0] += 1;
        rem[t.ends.1] += 1;
    }
    let mut s = Search {
        threads: &threads,
        deg: vec![0; nodes],
        rem,
        kept: vec![false; threads.len()],
        floor,
        best: None,
        budget: 1 << 22,
    };
    s.run(0);
    s.best
}

/// Threads between vertices of degree other than two, in a fixed order.
/// Cycles made only of degree-two vertices are ignored.
fn skeleton(edges: &BTreeSet<Edge>) -> (Vec<Thread>, usize) {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let nodes: Vec<VertexId> = adj.iter().filter(|(_, nb)| nb.len() != 2).map(|(&v, _)| v).collect();
    let index: BTreeMap<VertexId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    let mut threads = Vec::new();
    for &s in &nodes {
        for &first in &adj[&s] {
            if seen.contains(&norm_edge(s, first)) {
                continue;
            }
            let mut es = vec![norm_edge(s, first)];
            let (mut prev, mut cur) = (s, first);
            while !index.contains_key(&cur) {
                let nb = &adj[&cur];
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
                es.push(norm_edge(prev, cur));
            }
            seen.extend(es.iter().copied());
            if cur != s {
                threads.push(Thread { ends: (index[&s], index[&cur]), edges: es });
            }
        }
    }
    (threads, nodes.len())
}

impl Search<'_> {
    fn feasible(&self, v: usize) -> bool {
        let (d, r) = (self.deg[v], self.rem[v]);
        d <= 3 && (d == 0 || d + r >= 2)
    }

    fn run(&mut self, i: usize) {
        if self.budget == 0 || self.best.as_ref().is_some_and(|h| h.odd_count() == 9) {
            return;
        }
        self.budget -= 1;
        if i == self.threads.len() {
            self.leaf();
            return;
        }
        let (a, b) = self.threads[i].ends;
        self.rem[a] -= 1;
        self.rem[b] -= 1;
        for keep in [true, false] {
            if keep {
                self.deg[a] += 1;
                self.deg[b] += 1;
            }
            let branch = self.deg.iter().filter(|&&d| d == 3).count();
            if branch <= 6 && self.feasible(a) && self.feasible(b) {
                self.kept[i] = keep;
                self.run(i + 1);
            }
            if keep {
                self.deg[a] -= 1;
                self.deg[b] -= 1;
            }
        }
        self.kept[i] = false;
        self.rem[a] += 1;
        self.rem[b] += 1;
    }

    fn leaf(&mut self) {
        if self.deg.contains(&1) || self.deg.iter().filter(|&&d| d == 3).count() != 6 {
            return;
        }
        let edges: Vec<Edge> = self
            .threads
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| k)
            .flat_map(|(t, _)| t.edges.iter().copied())
            .collect();
        let Ok(h) = hex_from_edges(edges) else { return };
        let bar = self.best.as_ref().map_or(self.floor, |b| b.odd_count());
        if h.odd_count() > bar {
            self.best = Some(h);
        }
    }
}
