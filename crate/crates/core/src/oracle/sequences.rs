//! Literal augmenting-sequence checks and exhaustive enumeration.

use crate::augment::TriPod;
use crate::graph::{BipartiteGraph, VertexId};
use crate::path::Path;

struct Frame<'a> {
    g: &'a BipartiteGraph,
    t: &'a TriPod,
    in_x: Vec<bool>,
}

impl Frame<'_> {
    fn new<'a>(g: &'a BipartiteGraph, t: &'a TriPod, x: &[VertexId]) -> Frame<'a> {
        let mut in_x = vec![false; g.n()];
        for &v in x {
            in_x[v.ix()] = true;
        }
        Frame { g, t, in_x }
    }

    /// `(leg, position)` for tripod vertices other than the center.
    fn place(&self, v: VertexId) -> Option<(usize, usize)> {
        if v == self.t.v() {
            return None;
        }
        self.t.legs().iter().enumerate().find_map(|(i, p)| p.position(v).map(|k| (i + 1, k)))
    }

    fn on_tripod(&self, v: VertexId) -> bool {
        v == self.t.v() || self.place(v).is_some()
    }

    fn is_tripod_edge(&self, x: VertexId, y: VertexId) -> bool {
        self.t.legs().iter().any(|p| p.edges().any(|(a, b)| (a, b) == (x, y) || (a, b) == (y, x)))
    }

    fn check(&self, qs: &[Path]) -> Result<(), String> {
        if qs.is_empty() {
            return Err("empty sequence".into());
        }
        let k = qs.len();
        let ends: Vec<VertexId> = qs.iter().flat_map(|q| [q.first(), q.last()]).collect();
        for (i, q) in qs.iter().enumerate() {
            q.check(self.g).map_err(|e| format!("Q{} is not a path: {e}", i + 1))?;
            if q.is_trivial() {
                return Err(format!("Q{} has no edge", i + 1));
            }
            if q.len() == 1 && self.is_tripod_edge(q.first(), q.last()) {
                return Err(format!("Q{} is an edge of the tripod", i + 1));
            }
            for &w in q.interior() {
                if self.on_tripod(w) || self.in_x[w.ix()] {
                    return Err(format!("Q{} passes through {w} on the tripod or in X", i + 1));
                }
                if ends.contains(&w) {
                    return Err(format!("Q{} passes through an end {w}", i + 1));
                }
                for (j, r) in qs.iter().enumerate() {
                    if j != i && r.interior().contains(&w) {
                        return Err(format!("Q{} and Q{} share {w}", i + 1, j + 1));
                    }
                }
            }
        }
        let v1 = ends[0];
        if !self.t.p1.has_interior_vertex(v1) {
            return Err("v1 is not inside P1".into());
        }
        if !self.in_x[ends[2 * k - 1].ix()] {
            return Err("the last end is not in X".into());
        }
        for (i0, &e) in ends.iter().enumerate().take(2 * k - 1) {
            if self.place(e).is_none() {
                return Err(format!("v{} is not on a leg away from the center", i0 + 1));
            }
        }
        for j in (3..2 * k).step_by(2) {
            let (lj, pj) = self.place(ends[j - 1]).unwrap();
            let (lp, pp) = self.place(ends[j - 2]).unwrap();
            if lj != lp || pj >= pp {
                return Err(format!("v{j} is not strictly between the center and v{}", j - 1));
            }
        }
        for j in 1..=2 * k {
            for i in 1..j.saturating_sub(1) {
                if let (Some((li, pi)), Some((lj, pj))) = (self.place(ends[i - 1]), self.place(ends[j - 1])) {
                    if li == lj && pi > pj {
                        return Err(format!("v{i} lies beyond v{j} on the same leg"));
                    }
                }
            }
        }
        Ok(())
    }

    fn index(&self, ends: &[VertexId]) -> usize {
        let a = self.g.color(self.t.v());
        for (i0, &v) in ends.iter().enumerate() {
            let odd = i0 % 2 == 0;
            if (odd && self.g.color(v) == a) || (!odd && self.g.color(v) != a) {
                return i0 + 1;
            }
        }
        ends.len() + 1
    }

    /// Every path with at least one edge that starts on a leg (not at the
    /// center), ends on a leg or in `X`, and runs through free vertices.
    fn candidates(&self) -> Vec<Path> {
        let n = self.g.n();
        let free: Vec<bool> = (0..n).map(|i| !self.in_x[i] && !self.on_tripod(crate::graph::vid(i))).collect();
        let mut out = Vec::new();
        for s in self.t.vertices() {
            if s == self.t.v() {
                continue;
            }
            let mut seq = vec![s];
            let mut used = vec![false; n];
            used[s.ix()] = true;
            self.walk(&free, &mut used, &mut seq, &mut out);
        }
        out
    }

    fn walk(&self, free: &[bool], used: &mut [bool], seq: &mut Vec<VertexId>, out: &mut Vec<Path>) {
        let here = *seq.last().unwrap();
        for &w in self.g.neighbors(here) {
            if used[w.ix()] {
                continue;
            }
            if free[w.ix()] {
                used[w.ix()] = true;
                seq.push(w);
                self.walk(free, used, seq, out);
                seq.pop();
                used[w.ix()] = false;
            } else if w != self.t.v() {
                let mut p = seq.clone();
                p.push(w);
                out.push(Path::new(p));
            }
        }
    }
}

/// Checks a sequence clause by clause and returns its index.
pub fn check_augmenting_sequence(g: &BipartiteGraph, t: &TriPod, x: &[VertexId], qs: &[Path]) -> Result<usize, String> {
    let f = Frame::new(g, t, x);
    f.check(qs)?;
    let ends: Vec<VertexId> = qs.iter().flat_map(|q| [q.first(), q.last()]).collect();
    Ok(f.index(&ends))
}

/// All augmenting sequences with at most `max_len` paths, each with its
/// index. Exponential; meant for small graphs.
pub fn enumerate_augmenting_sequences(
    g: &BipartiteGraph,
    t: &TriPod,
    x: &[VertexId],
    max_len: usize,
) -> Vec<(Vec<Path>, usize)> {
    let f = Frame::new(g, t, x);
    let cands = f.candidates();
    let mut out = Vec::new();
    let mut cur: Vec<Path> = Vec::new();
    extend(&f, &cands, max_len, &mut cur, &mut out);
    out
}

fn extend(f: &Frame, cands: &[Path], max_len: usize, cur: &mut Vec<Path>, out: &mut Vec<(Vec<Path>, usize)>) {
    if let Some(last) = cur.last() {
        if f.in_x[last.last().ix()] {
            if f.check(cur).is_ok() {
                let ends: Vec<VertexId> = cur.iter().flat_map(|q| [q.first(), q.last()]).collect();
                out.push((cur.clone(), f.index(&ends)));
            }
            return;
        }
    }
    if cur.len() == max_len {
        return;
    }
    for q in cands {
        let ok_start = match cur.last() {
            None => f.t.p1.has_interior_vertex(q.first()),
            Some(prev) => {
                let (lp, pp) = f.place(prev.last()).unwrap();
                matches!(f.place(q.first()), Some((l, p)) if l == lp && p < pp)
            }
        };
        if !ok_start {
            continue;
        }
        let clash = cur.iter().any(|r| {
            q.interior().iter().any(|w| r.interior().contains(w)) || r.interior().iter().any(|w| q.contains(*w))
        });
        if clash {
            continue;
        }
        cur.push(q.clone());
        extend(f, cands, max_len, cur, out);
        cur.pop();
    }
}
