//! Optimal augmenting sequences.
//!
//! A sequence `Q1..Qk` starts on `p1` away from its ends, hops from leg to
//! leg (each new path starting strictly between the center and where the
//! previous one landed) and finally lands in `X`. Its index is the first
//! position `i` where `v_i` has "the wrong color" (class `A` at odd `i`,
//! class `B` at even `i`), or `2k + 1` if there is none.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{check_inputs, AugmentError, TriPod};
use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AugmentingSequence {
    /// `paths[i]` runs from `v_{2i+1}` to `v_{2i+2}` (1-based labels).
    pub paths: Vec<Path>,
    pub index: usize,
}

impl AugmentingSequence {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `v_1, ..., v_2k`.
    pub fn ends(&self) -> Vec<VertexId> {
        self.paths.iter().flat_map(|p| [p.first(), p.last()]).collect()
    }

    /// Vertex `v_i` for 1-based `i`.
    pub fn v(&self, i: usize) -> VertexId {
        let p = &self.paths[(i - 1) / 2];
        if i % 2 == 1 {
            p.first()
        } else {
            p.last()
        }
    }

    /// Smaller is better: shorter first, then larger index.
    pub fn measure(&self) -> (usize, isize) {
        (self.len(), -(self.index as isize))
    }
}

/// Index of a sequence with ends `ends`, where `a` is the center's color.
pub fn sequence_index(g: &BipartiteGraph, a: Color, ends: &[VertexId]) -> usize {
    for (i0, &v) in ends.iter().enumerate() {
        let i = i0 + 1;
        let wrong = if i % 2 == 1 { g.color(v) == a } else { g.color(v) != a };
        if wrong {
            return i;
        }
    }
    ends.len() + 1
}

/// Where each vertex sits relative to the tripod and `X`.
pub(crate) struct Layout {
    /// Leg number 1..=3 for non-center tripod vertices, 0 otherwise.
    pub leg: Vec<u8>,
    /// Distance from the center along its leg.
    pub pos: Vec<usize>,
    pub in_x: Vec<bool>,
    pub free: Vec<bool>,
    pub side_a: Color,
}

impl Layout {
    pub(crate) fn new(g: &BipartiteGraph, t: &TriPod, in_x: Vec<bool>) -> Layout {
        let n = g.n();
        let mut leg = vec![0u8; n];
        let mut pos = vec![0usize; n];
        let mut free: Vec<bool> = in_x.iter().map(|&b| !b).collect();
        free[t.v().ix()] = false;
        for (li, p) in t.legs().into_iter().enumerate() {
            for (k, &x) in p.vertices().iter().enumerate().skip(1) {
                leg[x.ix()] = li as u8 + 1;
                pos[x.ix()] = k;
                free[x.ix()] = false;
            }
        }
        Layout { leg, pos, in_x, free, side_a: g.color(t.v()) }
    }

    fn tripod_edge(&self, x: VertexId, y: VertexId) -> bool {
        let (lx, ly) = (self.leg[x.ix()], self.leg[y.ix()]);
        lx != 0 && lx == ly && self.pos[x.ix()].abs_diff(self.pos[y.ix()]) == 1
    }
}

struct Search<'a> {
    g: &'a BipartiteGraph,
    lay: &'a Layout,
    t: &'a TriPod,
    k: usize,
    target: usize,
    used: Vec<bool>,
    ends: Vec<VertexId>,
    paths: Vec<Path>,
}

impl Search<'_> {
    /// Color requirement on `v_j` imposed by the target index.
    fn color_ok(&self, j: usize, v: VertexId) -> bool {
        if j >= self.target {
            return true;
        }
        let is_a = self.g.color(v) == self.lay.side_a;
        if j % 2 == 1 {
            !is_a
        } else {
            is_a
        }
    }

    /// Earlier non-adjacent ends on the same leg must not lie beyond `v`.
    fn order_ok(&self, j: usize, v: VertexId) -> bool {
        let l = self.lay.leg[v.ix()];
        if l == 0 {
            return true;
        }
        self.ends[..j.saturating_sub(2)]
            .iter()
            .all(|&m| self.lay.leg[m.ix()] != l || self.lay.pos[m.ix()] <= self.lay.pos[v.ix()])
    }

    /// Valid landing vertex `v_{2i}` for path number `i` (1-based).
    fn end_ok(&self, i: usize, w: VertexId) -> bool {
        let j = 2 * i;
        if i == self.k {
            self.lay.in_x[w.ix()] && self.color_ok(j, w)
        } else {
            self.lay.leg[w.ix()] != 0 && self.lay.pos[w.ix()] >= 2 && self.color_ok(j, w) && self.order_ok(j, w)
        }
    }

    fn run(&mut self) -> bool {
        self.next_path(1)
    }

    fn next_path(&mut self, i: usize) -> bool {
        if i > self.k {
            return true;
        }
        let j = 2 * i - 1;
        let starts: Vec<VertexId> = if i == 1 {
            self.t.p1.interior().to_vec()
        } else {
            let prev = self.ends[j - 2];
            let leg = self.t.leg(self.lay.leg[prev.ix()] as usize);
            leg.vertices()[1..self.lay.pos[prev.ix()]].to_vec()
        };
        let mut starts: Vec<VertexId> =
            starts.into_iter().filter(|&s| self.color_ok(j, s) && self.order_ok(j, s)).collect();
        starts.sort();
        for s in starts {
            self.ends.push(s);
            let mut seq = vec![s];
            if self.grow(i, &mut seq) {
                return true;
            }
            self.ends.pop();
        }
        false
    }

    fn grow(&mut self, i: usize, seq: &mut Vec<VertexId>) -> bool {
        let here = *seq.last().unwrap();
        let s = seq[0];
        let nbrs = self.g.neighbors(here).to_vec();
        for w in nbrs {
            if w != s && self.end_ok(i, w) {
                if seq.len() == 1 && self.lay.tripod_edge(s, w) {
                    continue;
                }
                seq.push(w);
                self.ends.push(w);
                self.paths.push(Path::new(seq.clone()));
                if self.next_path(i + 1) {
                    return true;
                }
                self.paths.pop();
                self.ends.pop();
                seq.pop();
            } else if self.lay.free[w.ix()] && !self.used[w.ix()] {
                self.used[w.ix()] = true;
                seq.push(w);
                if self.can_land(i, w) && self.grow(i, seq) {
                    return true;
                }
                seq.pop();
                self.used[w.ix()] = false;
            }
        }
        false
    }

    fn can_land(&self, i: usize, from: VertexId) -> bool {
        let s = self.ends[self.ends.len() - 1];
        let mut seen = vec![false; self.g.n()];
        seen[from.ix()] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &w in self.g.neighbors(x) {
                if w != s && self.end_ok(i, w) {
                    return true;
                }
                if self.lay.free[w.ix()] && !self.used[w.ix()] && !seen[w.ix()] {
                    seen[w.ix()] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

fn search(g: &BipartiteGraph, t: &TriPod, lay: &Layout, k: usize, target: usize) -> Option<AugmentingSequence> {
    let mut s = Search { g, lay, t, k, target, used: vec![false; g.n()], ends: Vec::new(), paths: Vec::new() };
    if s.run() {
        let index = sequence_index(g, lay.side_a, &s.ends);
        Some(AugmentingSequence { paths: s.paths, index })
    } else {
        None
    }
}

pub(crate) fn optimal_sequence(g: &BipartiteGraph, t: &TriPod, lay: &Layout) -> Option<AugmentingSequence> {
    let kmax = t.vertices().len();
    for k in 1..=kmax {
        let Some(any) = search(g, t, lay, k, 1) else { continue };
        for target in (2..=2 * k + 1).rev() {
            if target <= any.index {
                break;
            }
            if let Some(s) = search(g, t, lay, k, target) {
                return Some(s);
            }
        }
        return Some(search(g, t, lay, k, any.index).expect("a sequence with this index exists"));
    }
    None
}

/// An augmenting sequence of minimum length and, among those, maximum
/// index. Remaining ties go to the lexicographically smallest tuple of
/// paths, comparing vertex sequences.
pub fn find_augmenting_sequence(
    g: &BipartiteGraph,
    t: &TriPod,
    x: &[VertexId],
) -> Result<AugmentingSequence, AugmentError> {
    let mask = check_inputs(g, t, x)?;
    let lay = Layout::new(g, t, mask);
    optimal_sequence(g, t, &lay).ok_or(AugmentError::NoSequence)
}
