//! Subdivisions of K3,3 ("hexes"), their parity accounting, relabeling and
//! the `H + P - Q` surgery.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::path::{Parity, Path, PathError};

pub type Edge = (VertexId, VertexId);

pub fn norm_edge(a: VertexId, b: VertexId) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A K3,3 subdivision. `segments[i][j]` runs from `feet[i]` to `feet[3 + j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hex {
    pub feet: [VertexId; 6],
    pub segments: [[Path; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HexViolation {
    /// Segment `(i, j)` does not run from foot `i` to foot `3 + j`.
    WrongEnds { i: usize, j: usize },
    /// Segment `(i, j)` has no edge.
    EmptySegment { i: usize, j: usize },
    /// Segment `(i, j)` is not a path of the host graph.
    NotAPath { i: usize, j: usize, reason: String },
    /// Two feet coincide.
    RepeatedFoot(VertexId),
    /// Two segments meet at `v`, which is not a foot common to both ends.
    Intersect { first: (usize, usize), second: (usize, usize), v: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HexError {
    #[error("invalid hex: {0:?}")]
    Invalid(Vec<HexViolation>),
    #[error("segment ({i},{j}) has parity disagreeing with its foot colors")]
    InconsistentParity { i: usize, j: usize },
    #[error("surgery result is not a K3,3 subdivision: {0}")]
    NotAHex(String),
    #[error("surgery precondition failed: {0}")]
    BadSurgery(String),
    #[error("no relabeling matches the requested foot pattern")]
    PatternUnreachable,
}

impl Hex {
    pub fn foot(&self, k: usize) -> VertexId {
        self.feet[k]
    }

    /// The segment joining foot indices `x` and `y` (any order, one in
    /// `0..3` and one in `3..6`), oriented from `feet[x]`.
    pub fn between(&self, x: usize, y: usize) -> Path {
        if x < 3 {
            assert!(y >= 3, "feet {x} and {y} are on the same side");
            self.segments[x][y - 3].clone()
        } else {
            assert!(y < 3, "feet {x} and {y} are on the same side");
            self.segments[y][x - 3].reversed()
        }
    }

    pub fn segment_list(&self) -> impl Iterator<Item = ((usize, usize), &Path)> {
        self.segments
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, p)| ((i, j), p)))
    }

    /// All vertices, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self
            .segment_list()
            .flat_map(|(_, p)| p.vertices().iter().copied())
            .collect();
        set.into_iter().collect()
    }

    /// All edges in normalized form, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let set: BTreeSet<Edge> = self
            .segment_list()
            .flat_map(|(_, p)| p.edges().map(|(a, b)| norm_edge(a, b)))
            .collect();
        set.into_iter().collect()
    }

    /// The segment containing `v` as an interior vertex, if any.
    pub fn segment_of_interior(&self, v: VertexId) -> Option<(usize, usize)> {
        self.segment_list()
            .find(|(_, p)| p.has_interior_vertex(v))
            .map(|(ij, _)| ij)
    }

    pub fn foot_index(&self, v: VertexId) -> Option<usize> {
        self.feet.iter().position(|&f| f == v)
    }

    pub fn odd_count(&self) -> usize {
        self.segment_list().filter(|(_, p)| p.parity() == Parity::Odd).count()
    }

    pub fn is_odd(&self) -> bool {
        self.odd_count() == 9
    }

    pub fn total_length(&self) -> usize {
        self.segment_list().map(|(_, p)| p.len()).sum()
    }
}

/// Checks every hex invariant against `g`, reporting all violations.
pub fn validate_hex(g: &BipartiteGraph, h: &Hex) -> Result<(), Vec<HexViolation>> {
    let mut out = Vec::new();
    let mut feet_seen = BTreeSet::new();
    for &f in &h.feet {
        if !feet_seen.insert(f) {
            out.push(HexViolation::RepeatedFoot(f));
        }
    }
    for ((i, j), p) in h.segment_list() {
        if p.first() != h.feet[i] || p.last() != h.feet[3 + j] {
            out.push(HexViolation::WrongEnds { i, j });
        }
        if p.is_trivial() {
            out.push(HexViolation::EmptySegment { i, j });
        }
        if let Err(e) = p.check(g) {
            out.push(HexViolation::NotAPath { i, j, reason: e.to_string() });
        }
    }
    // Each vertex may lie on several segments only as a shared end foot.
    let mut owners: BTreeMap<VertexId, Vec<(usize, usize)>> = BTreeMap::new();
    for ((i, j), p) in h.segment_list() {
        let mut uniq: Vec<VertexId> = p.vertices().to_vec();
        uniq.sort();
        uniq.dedup();
        for v in uniq {
            owners.entry(v).or_default().push((i, j));
        }
    }
    for (v, segs) in owners {
        for x in 0..segs.len() {
            for y in x + 1..segs.len() {
                let (s, t) = (segs[x], segs[y]);
                let shared_foot = (s.0 == t.0 && h.feet[s.0] == v) || (s.1 == t.1 && h.feet[3 + s.1] == v);
                let is_end = |seg: (usize, usize)| {
                    let p = &h.segments[seg.0][seg.1];
                    p.first() == v || p.last() == v
                };
                if !(shared_foot && is_end(s) && is_end(t)) {
                    out.push(HexViolation::Intersect { first: s, second: t, v });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityProfile {
    pub matrix: [[Parity; 3]; 3],
    /// Number of `feet[0..3]` colored Left.
    pub p: usize,
    /// Number of `feet[3..6]` colored Left.
    pub r: usize,
    pub odd_count: usize,
}

/// Segment parities from actual edge counts, cross-checked with the colors
/// of the feet.
pub fn parity_profile(g: &BipartiteGraph, h: &Hex) -> Result<ParityProfile, HexError> {
    let mut matrix = [[Parity::Even; 3]; 3];
    let mut odd_count = 0;
    for ((i, j), seg) in h.segment_list() {
        let par = seg.parity();
        let by_color = if g.color(h.feet[i]) != g.color(h.feet[3 + j]) {
            Parity::Odd
        } else {
            Parity::Even
        };
        if par != by_color {
            return Err(HexError::InconsistentParity { i, j });
        }
        matrix[i][j] = par;
        if par == Parity::Odd {
            odd_count += 1;
        }
    }
    let left = |r: std::ops::Range<usize>| r.filter(|&k| g.color(h.feet[k]) == Color::Left).count();
    Ok(ParityProfile { matrix, p: left(0..3), r: left(3..6), odd_count })
}

/// `H + added - removed`: union with the added paths, delete the edges of
/// the removed paths, drop isolated vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surgery {
    pub added: Vec<Path>,
    pub removed: Vec<Path>,
}

impl Surgery {
    pub fn new(added: Vec<Path>, removed: Vec<Path>) -> Surgery {
        Surgery { added, removed }
    }
}

/// Applies `s` to `h`. Added paths are checked one at a time as H-paths of
/// the growing union; removed edges must belong to that union. The
/// resulting hex is recomputed from the degree-3 vertices.
pub fn apply_surgery(g: &BipartiteGraph, h: &Hex, s: &Surgery) -> Result<Hex, HexError> {
    let mut verts: BTreeSet<VertexId> = h.vertices().into_iter().collect();
    let mut edges: BTreeSet<Edge> = h.edges().into_iter().collect();
    for p in &s.added {
        p.check(g).map_err(|e: PathError| HexError::BadSurgery(format!("{p:?}: {e}")))?;
        if p.is_trivial() {
            return Err(HexError::BadSurgery(format!("{p:?} has no edge")));
        }
        let (a, b) = p.ends();
        if !verts.contains(&a) || !verts.contains(&b) {
            return Err(HexError::BadSurgery(format!("{p:?} does not end in H")));
        }
        if p.interior().iter().any(|v| verts.contains(v)) {
            return Err(HexError::BadSurgery(format!("{p:?} meets H internally")));
        }
        if p.len() == 1 && edges.contains(&norm_edge(a, b)) {
            return Err(HexError::BadSurgery(format!("{p:?} is an edge of H")));
        }
        verts.extend(p.vertices().iter().copied());
        edges.extend(p.edges().map(|(x, y)| norm_edge(x, y)));
    }
    for q in &s.removed {
        for (a, b) in q.edges() {
            if !edges.remove(&norm_edge(a, b)) {
                return Err(HexError::BadSurgery(format!("edge {a}-{b} of {q:?} is not present")));
            }
        }
    }
    hex_from_edges(edges.into_iter().collect())
}

/// Recognizes an edge set as a K3,3 subdivision and labels it canonically:
/// the side holding the smallest branch vertex becomes `feet[0..3]`, each
/// side sorted.
pub fn hex_from_edges(edges: Vec<Edge>) -> Result<Hex, HexError> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in &edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if let Some((v, nb)) = adj.iter().find(|(_, nb)| nb.len() != 2 && nb.len() != 3) {
        return Err(HexError::NotAHex(format!("vertex {v} has degree {}", nb.len())));
    }
    let branch: Vec<VertexId> = adj.iter().filter(|(_, nb)| nb.len() == 3).map(|(&v, _)| v).collect();
    if branch.len() != 6 {
        return Err(HexError::NotAHex(format!("{} branch vertices", branch.len())));
    }
    let mut threads: BTreeMap<(VertexId, VertexId), Path> = BTreeMap::new();
    let mut covered = 0;
    for &b in &branch {
        for &first in &adj[&b] {
            let mut seq = vec![b, first];
            let mut prev = b;
            let mut cur = first;
            while adj[&cur].len() == 2 {
                let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                prev = cur;
                cur = next;
                seq.push(cur);
                if seq.len() > edges.len() + 1 {
                    return Err(HexError::NotAHex("unterminated thread".into()));
                }
            }
            if cur == b {
                return Err(HexError::NotAHex(format!("loop thread at {b}")));
            }
            covered += seq.len() - 1;
            if b < cur && threads.insert((b, cur), Path::new(seq)).is_some() {
                return Err(HexError::NotAHex(format!("parallel threads {b}-{cur}")));
            }
        }
    }
    if covered != 2 * edges.len() {
        return Err(HexError::NotAHex("edges outside the branch threads".into()));
    }
    // Two-color the branch graph; it must be complete bipartite 3+3.
    let bnb = |v: VertexId| -> Vec<VertexId> {
        threads
            .keys()
            .filter_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
            .collect()
    };
    let first_side: Vec<VertexId> = {
        let s0 = branch[0];
        let nb = bnb(s0);
        let mut side: Vec<VertexId> = branch.iter().copied().filter(|v| !nb.contains(v)).collect();
        side.sort();
        side
    };
    let mut other: Vec<VertexId> = branch.iter().copied().filter(|v| !first_side.contains(v)).collect();
    other.sort();
    if first_side.len() != 3 || other.len() != 3 {
        return Err(HexError::NotAHex("branch graph is not K3,3".into()));
    }
    let mut rows: Vec<[Path; 3]> = Vec::new();
    for &x in &first_side {
        let mut row = Vec::new();
        for &y in &other {
            let key = norm_edge(x, y);
            let p = threads
                .get(&key)
                .ok_or_else(|| HexError::NotAHex("branch graph is not K3,3".into()))?;
            row.push(p.from_end(x).expect("thread ends at its key"));
        }
        rows.push(row.try_into().unwrap());
    }
    Ok(Hex {
        feet: [first_side[0], first_side[1], first_side[2], other[0], other[1], other[2]],
        segments: rows.try_into().unwrap(),
    })
}

/// Foot-color requirement for [`normalize`]. `A` and `B` are the two color
/// classes in either assignment; `Any` matches both.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FootClass {
    A,
    B,
    Any,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FootPattern(pub [FootClass; 6]);

impl FootPattern {
    /// Feet with index in `a` are class `A`, those in `b` class `B`, the
    /// rest unconstrained. Indices are 1-based to match the usual labels.
    pub fn from_labels(a: &[usize], b: &[usize]) -> FootPattern {
        let mut cls = [FootClass::Any; 6];
        for &k in a {
            cls[k - 1] = FootClass::A;
        }
        for &k in b {
            cls[k - 1] = FootClass::B;
        }
        FootPattern(cls)
    }
}

/// How a normalized hex relates to the original: new foot `k` is old foot
/// `perm[k]`, and class `A` is the color `a_color`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabel {
    pub perm: [usize; 6],
    pub a_color: Color,
}

const S3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Applies a foot permutation that respects the bipartition of the feet.
pub fn relabel(h: &Hex, perm: [usize; 6]) -> Hex {
    let feet = perm.map(|k| h.feet[k]);
    let segments: [[Path; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| h.between(perm[i], perm[3 + j])));
    Hex { feet, segments }
}

/// Every relabeling of `h` (within the 144-element symmetry group) whose
/// foot colors match `pattern`, in a fixed enumeration order.
pub fn matching_relabelings(g: &BipartiteGraph, h: &Hex, pattern: &FootPattern) -> Vec<(Hex, Relabel)> {
    let mut out = Vec::new();
    for swap in [false, true] {
        for s in &S3 {
            for t in &S3 {
                let perm: [usize; 6] = if swap {
                    [3 + t[0], 3 + t[1], 3 + t[2], s[0], s[1], s[2]]
                } else {
                    [s[0], s[1], s[2], 3 + t[0], 3 + t[1], 3 + t[2]]
                };
                for a_color in [Color::Left, Color::Right] {
                    let ok = (0..6).all(|k| {
                        let c = g.color(h.feet[perm[k]]);
                        match pattern.0[k] {
                            FootClass::A => c == a_color,
                            FootClass::B => c != a_color,
                            FootClass::Any => true,
                        }
                    });
                    if ok {
                        out.push((relabel(h, perm), Relabel { perm, a_color }));
                    }
                }
            }
        }
    }
    out
}

/// The first relabeling of `h` matching `pattern`.
pub fn normalize(g: &BipartiteGraph, h: &Hex, pattern: &FootPattern) -> Result<(Hex, Relabel), HexError> {
    matching_relabelings(g, h, pattern)
        .into_iter()
        .next()
        .ok_or(HexError::PatternUnreachable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, vid};

    fn p(v: &[usize]) -> Path {
        Path::new(v.iter().map(|&i| vid(i)).collect())
    }

    fn k33() -> BipartiteGraph {
        parse_edge_list("0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5").unwrap()
    }

    pub(crate) fn unit_hex() -> Hex {
        Hex {
            feet: [0, 1, 2, 3, 4, 5].map(vid),
            segments: std::array::from_fn(|i| std::array::from_fn(|j| p(&[i, 3 + j]))),
        }
    }

    /// K3,3 with edges 0-3 and 1-4 each subdivided twice.
    fn subdivided() -> (BipartiteGraph, Hex) {
        let g = parse_edge_list("0 6\n6 7\n7 3\n0 4\n0 5\n1 3\n1 8\n8 9\n9 4\n1 5\n2 3\n2 4\n2 5").unwrap();
        let mut h = unit_hex();
        h.segments[0][0] = p(&[0, 6, 7, 3]);
        h.segments[1][1] = p(&[1, 8, 9, 4]);
        (g, h)
    }

    #[test]
    fn unit_hex_is_valid_and_odd() {
        let g = k33();
        let h = unit_hex();
        assert_eq!(validate_hex(&g, &h), Ok(()));
        let prof = parity_profile(&g, &h).unwrap();
        assert_eq!((prof.p, prof.r, prof.odd_count), (3, 0, 9));
        assert!(h.is_odd());
        let (g, h) = subdivided();
        assert_eq!(validate_hex(&g, &h), Ok(()));
        assert_eq!(parity_profile(&g, &h).unwrap().odd_count, 9);
    }

    #[test]
    fn violations_reported() {
        let (g, mut h) = subdivided();
        h.segments[0][1] = p(&[0, 6, 4]);
        let errs = validate_hex(&g, &h).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, HexViolation::Intersect { v, .. } if *v == vid(6))));
        assert!(errs.iter().any(|e| matches!(e, HexViolation::NotAPath { i: 0, j: 1, .. })));

        let mut h2 = unit_hex();
        h2.segments[2][2] = p(&[2, 4]);
        let errs = validate_hex(&k33(), &h2).unwrap_err();
        assert!(errs.contains(&HexViolation::WrongEnds { i: 2, j: 2 }));
    }

    #[test]
    fn profile_with_mixed_feet() {
        // K5,5 with sides 0..5 and 5..10; feet 0,1,5 | 2,6,7.
        let g = BipartiteGraph::from_edges(10, (0..5).flat_map(|i| (5..10).map(move |j| (i, j)))).unwrap();
        let h = Hex {
            feet: [0, 1, 5, 2, 6, 7].map(vid),
            segments: [
                [p(&[0, 8, 2]), p(&[0, 6]), p(&[0, 7])],
                [p(&[1, 9, 2]), p(&[1, 6]), p(&[1, 7])],
                [p(&[5, 2]), p(&[5, 3, 6]), p(&[5, 4, 7])],
            ],
        };
        assert_eq!(validate_hex(&g, &h), Ok(()));
        let prof = parity_profile(&g, &h).unwrap();
        assert_eq!((prof.p, prof.r, prof.odd_count), (2, 1, 5));
        assert_eq!(prof.matrix[0][0], Parity::Even);
    }

    #[test]
    fn corrupted_parity_is_an_error() {
        // An even segment between differently colored feet.
        let mut bad = unit_hex();
        bad.segments[1][1] = p(&[1, 8, 4]);
        assert_eq!(parity_profile(&k33(), &bad), Err(HexError::InconsistentParity { i: 1, j: 1 }));
    }

    #[test]
    fn identity_surgery_and_rerouting() {
        let g = k33();
        let h = unit_hex();
        assert_eq!(apply_surgery(&g, &h, &Surgery::default()).unwrap(), h);

        let (g, h) = subdivided();
        let rerouted = apply_surgery(&g, &h, &Surgery::new(vec![], vec![p(&[0, 6])]));
        assert!(matches!(rerouted, Err(HexError::NotAHex(_))));
    }

    #[test]
    fn surgery_moves_a_foot() {
        // The subdivided host plus a vertex 10 adjacent to 6 and 4.
        let g = parse_edge_list(
            "0 6\n6 7\n7 3\n0 4\n0 5\n1 3\n1 8\n8 9\n9 4\n1 5\n2 3\n2 4\n2 5\n6 10\n10 4",
        )
        .unwrap();
        let (_, h) = subdivided();
        // Q from interior 6 of segment (0,0) to foot 4, remove 0-4.
        let s = Surgery::new(vec![p(&[6, 10, 4])], vec![p(&[0, 4])]);
        let out = apply_surgery(&g, &h, &s).unwrap();
        assert_eq!(validate_hex(&g, &out), Ok(()));
        assert!(out.feet.contains(&vid(6)));
        assert!(!out.feet.contains(&vid(0)));
    }

    #[test]
    fn normalize_patterns() {
        let g = k33();
        let h = unit_hex();
        let all_odd = FootPattern::from_labels(&[1, 2, 3], &[4, 5, 6]);
        let (n, rl) = normalize(&g, &h, &all_odd).unwrap();
        assert_eq!(n, h);
        assert_eq!(rl.perm, [0, 1, 2, 3, 4, 5]);
        let impossible = FootPattern::from_labels(&[1, 2, 3, 4, 5], &[]);
        assert_eq!(normalize(&g, &h, &impossible), Err(HexError::PatternUnreachable));
        // Swapping the sides lets foot 3 land in the first triple.
        let (n, rl) = normalize(&g, &h, &FootPattern::from_labels(&[1], &[4])).unwrap();
        assert_eq!(validate_hex(&g, &n), Ok(()));
        assert_eq!(rl.a_color, Color::Left);
        assert_eq!(matching_relabelings(&g, &h, &FootPattern([FootClass::Any; 6])).len(), 144);
    }
}
