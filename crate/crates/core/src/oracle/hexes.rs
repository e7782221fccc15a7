//! Exhaustive hex enumeration for small graphs.

use std::collections::HashSet;

use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::hex::{Edge, Hex};
use crate::path::Path;

struct Enum<'a> {
    g: &'a BipartiteGraph,
    feet: [VertexId; 6],
    used: Vec<bool>,
    paths: Vec<Path>,
}

impl Enum<'_> {
    /// Calls `visit` for every system of nine segments; stops early when
    /// `visit` returns false. Returns false if stopped.
    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&Hex) -> bool) -> bool {
        if k == 9 {
            let p = &self.paths;
            let segments = std::array::from_fn(|i| std::array::from_fn(|j| p[3 * i + j].clone()));
            return visit(&Hex { feet: self.feet, segments });
        }
        let (s, t) = (self.feet[k / 3], self.feet[3 + k % 3]);
        let mut seq = vec![s];
        self.walk(k, t, &mut seq, visit)
    }

    fn walk(&mut self, k: usize, t: VertexId, seq: &mut Vec<VertexId>, visit: &mut dyn FnMut(&Hex) -> bool) -> bool {
        let here = *seq.last().unwrap();
        for &w in self.g.neighbors(here) {
            if w == t {
                seq.push(w);
                self.paths.push(Path::new(seq.clone()));
                let go_on = self.run(k + 1, visit);
                self.paths.pop();
                seq.pop();
                if !go_on {
                    return false;
                }
            } else if !self.used[w.ix()] {
                self.used[w.ix()] = true;
                seq.push(w);
                let go_on = self.walk(k, t, seq, visit);
                seq.pop();
                self.used[w.ix()] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
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

fn for_feet(g: &BipartiteGraph, a: [VertexId; 3], b: [VertexId; 3], visit: &mut dyn FnMut(&Hex) -> bool) -> bool {
    let feet = [a[0], a[1], a[2], b[0], b[1], b[2]];
    let mut used = vec![false; g.n()];
    for f in feet {
        used[f.ix()] = true;
    }
    let mut e = Enum { g, feet, used, paths: Vec::new() };
    e.run(0, visit)
}

/// Hexes of `g`, one per edge set, with the side holding the smallest
/// branch vertex first and each side sorted; stops after `limit`.
/// Exponential; meant for small graphs.
pub fn enumerate_hexes(g: &BipartiteGraph, limit: usize) -> Vec<Hex> {
    let pool: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    let mut seen: HashSet<Vec<Edge>> = HashSet::new();
    let mut out = Vec::new();
    for a in triples(&pool) {
        for b in triples(&pool) {
            if b[0] <= a[0] || b.iter().any(|x| a.contains(x)) {
                continue;
            }
            for_feet(g, a, b, &mut |h| {
                let mut es = h.edges();
                es.sort();
                if seen.insert(es) {
                    out.push(h.clone());
                }
                out.len() < limit
            });
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

/// An odd hex of `g` if one exists. All nine segments are odd exactly when
/// the two sides of feet are the two color classes, so only those feet are
/// tried.
pub fn odd_hex_exists_bruteforce(g: &BipartiteGraph) -> Option<Hex> {
    let pool: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    let left: Vec<VertexId> = pool.iter().copied().filter(|&v| g.color(v) == Color::Left).collect();
    let right: Vec<VertexId> = pool.iter().copied().filter(|&v| g.color(v) == Color::Right).collect();
    for a in triples(&left) {
        for b in triples(&right) {
            let mut found = None;
            for_feet(g, a, b, &mut |h| {
                let odd = h.segments.iter().flatten().all(|p| p.len() % 2 == 1);
                if odd {
                    found = Some(h.clone());
                }
                !odd
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}
