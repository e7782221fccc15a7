//! Simple undirected bipartite graphs with a canonical 2-coloring.
//!
//! A [`BipartiteGraph`] is immutable once built. Every constructor runs a
//! BFS 2-coloring; an odd cycle is reported as a [`GraphError::NotBipartite`]
//! witness instead of a graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `[0, n)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand used heavily in tests and generators.
pub fn vid(i: usize) -> VertexId {
    VertexId(i as u32)
}

/// Side of the bipartition.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Left,
    Right,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Left => Color::Right,
            Color::Right => Color::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<VertexId> },
    #[error("malformed input at line {line}: {msg}")]
    MalformedInput { line: usize, msg: String },
    #[error("loop or repeated edge {u}-{v}")]
    LoopOrMultiEdge { u: VertexId, v: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
    color: Vec<Color>,
}

impl BipartiteGraph {
    /// Builds a graph on `n` vertices. Edges may be given in any order and
    /// orientation; loops and repeated edges are rejected.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::MalformedInput {
                    line: 0,
                    msg: format!("edge {u}-{v} out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(GraphError::LoopOrMultiEdge { u: vid(u), v: vid(v) });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((vid(a), vid(b)));
            adj[u].push(vid(v));
            adj[v].push(vid(u));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::LoopOrMultiEdge { u: w[0].0, v: w[0].1 });
            }
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let color = two_color(&adj)?;
        Ok(BipartiteGraph { adj, edges: list, color })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(vid)
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.ix()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.ix()].len()
    }

    pub fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u.ix() < self.n() && self.adj[u.ix()].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.color[v.ix()]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.ix() < self.n()
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        let left = self.color.iter().filter(|&&c| c == Color::Left).count();
        (left, self.n() - left)
    }
}

/// Canonical BFS coloring: components are visited in order of their lowest
/// vertex, which is colored `Left`.
fn two_color(adj: &[Vec<VertexId>]) -> Result<Vec<Color>, GraphError> {
    let n = adj.len();
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Color::Left);
        let mut queue = VecDeque::from([vid(root)]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x.ix()].unwrap();
            for &y in &adj[x.ix()] {
                match color[y.ix()] {
                    None => {
                        color[y.ix()] = Some(cx.other());
                        parent[y.ix()] = Some(x);
                        depth[y.ix()] = depth[x.ix()] + 1;
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => {
                        return Err(GraphError::NotBipartite {
                            cycle: odd_cycle(&parent, &depth, x, y),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(color.into_iter().map(Option::unwrap).collect())
}

/// Closes the BFS-tree paths from `x` and `y` at their lowest common ancestor.
fn odd_cycle(
    parent: &[Option<VertexId>],
    depth: &[usize],
    x: VertexId,
    y: VertexId,
) -> Vec<VertexId> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a.ix()] > depth[b.ix()] {
        a = parent[a.ix()].unwrap();
        left.push(a);
    }
    while depth[b.ix()] > depth[a.ix()] {
        b = parent[b.ix()].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a.ix()].unwrap();
        b = parent[b.ix()].unwrap();
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    canonical_cycle(left)
}

/// Rotates a cycle to start at its smallest vertex, walking toward the
/// smaller of its two neighbors.
pub fn canonical_cycle(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    if cycle.is_empty() {
        return cycle;
    }
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(pos);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Parses whitespace-separated integer pairs, one edge per line. `#` starts
/// a comment. A leading `n m` line is taken as a header when exactly `m`
/// edge lines follow it, `m >= 1`, and every endpoint is below `n`.
pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph, GraphError> {
    let mut pairs: Vec<(usize, (usize, usize))> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut num = || -> Result<Option<usize>, GraphError> {
            match it.next() {
                None => Ok(None),
                Some(tok) => tok.parse::<usize>().map(Some).map_err(|_| {
                    GraphError::MalformedInput {
                        line: lineno + 1,
                        msg: format!("expected a non-negative integer, got {tok:?}"),
                    }
                }),
            }
        };
        let (Some(u), Some(v)) = (num()?, num()?) else {
            return Err(GraphError::MalformedInput {
                line: lineno + 1,
                msg: "expected two integers".into(),
            });
        };
        if num()?.is_some() {
            return Err(GraphError::MalformedInput {
                line: lineno + 1,
                msg: "more than two integers on a line".into(),
            });
        }
        pairs.push((lineno + 1, (u, v)));
    }
    let header = match pairs.first() {
        Some(&(_, (n, m))) if m >= 1 && m == pairs.len() - 1 => {
            let fits = pairs[1..].iter().all(|&(_, (u, v))| u < n && v < n);
            fits.then_some(n)
        }
        _ => None,
    };
    let (n, body) = match header {
        Some(n) => (n, &pairs[1..]),
        None => {
            let n = pairs.iter().map(|&(_, (u, v))| u.max(v) + 1).max().unwrap_or(0);
            (n, &pairs[..])
        }
    };
    for &(line, (u, v)) in body {
        if u == v {
            return Err(GraphError::LoopOrMultiEdge { u: vid(u), v: vid(v) });
        }
        if u >= n || v >= n {
            return Err(GraphError::MalformedInput {
                line,
                msg: format!("vertex out of range for n = {n}"),
            });
        }
    }
    BipartiteGraph::from_edges(n, body.iter().map(|&(_, e)| e))
}

/// Canonical edge-list text: an `n m` header, then sorted `u v` lines.
pub fn to_edge_list(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a single graph6 string (optional `>>graph6<<` header).
pub fn parse_graph6(text: &str) -> Result<BipartiteGraph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bad = |msg: &str| GraphError::MalformedInput { line: 1, msg: msg.to_string() };
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(bad("empty graph6 string"));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("graph6 byte outside 63..=126"));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(bad("graph6 sizes above 258047 are not supported"));
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return Err(bad(&format!(
            "expected {need} data bytes for n = {n}, found {}",
            rest.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    BipartiteGraph::from_edges(n, edges)
}

/// Encodes `g` as graph6 (no header).
pub fn to_graph6(g: &BipartiteGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258_047, "graph6 encoding limited to 258047 vertices");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(vid(i), vid(j)) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    const K33: &str = "0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5";

    #[test]
    fn parses_k33() {
        let g = parse_edge_list(K33).unwrap();
        assert_eq!((g.n(), g.m()), (6, 9));
        for v in 0..3 {
            assert_eq!(g.color(vid(v)), Color::Left);
            assert_eq!(g.color(vid(v + 3)), Color::Right);
        }
    }

    #[test]
    fn triangle_is_not_bipartite() {
        match parse_edge_list("0 1\n1 2\n2 0") {
            Err(GraphError::NotBipartite { cycle }) => {
                assert_eq!(cycle, vec![vid(0), vid(1), vid(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        // C5 with a pendant path.
        let err = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 0\n4 5").unwrap_err();
        let GraphError::NotBipartite { cycle } = err else { panic!() };
        assert_eq!(cycle.len() % 2, 1);
        let g_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)];
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i].ix(), cycle[(i + 1) % cycle.len()].ix());
            assert!(g_edges.contains(&(a, b)) || g_edges.contains(&(b, a)));
        }
    }

    #[test]
    fn loops_and_multi_edges_rejected() {
        assert!(matches!(
            parse_edge_list("0 0"),
            Err(GraphError::LoopOrMultiEdge { .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1\n1 0"),
            Err(GraphError::LoopOrMultiEdge { .. })
        ));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(GraphError::MalformedInput { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("# c\n0 1 2"),
            Err(GraphError::MalformedInput { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("0"),
            Err(GraphError::MalformedInput { .. })
        ));
    }

    #[test]
    fn header_and_comments() {
        let g = parse_edge_list("# k2 plus isolated\n4 1\n0 1  # edge\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 1));
        // Canonical coloring: isolated vertices start their own component.
        assert_eq!(g.color(vid(2)), Color::Left);
        assert_eq!(g.color(vid(3)), Color::Left);
    }

    #[test]
    fn canonical_coloring_per_component() {
        let g = parse_edge_list("5 2\n1 3\n0 4").unwrap();
        assert_eq!(g.color(vid(0)), Color::Left);
        assert_eq!(g.color(vid(4)), Color::Right);
        assert_eq!(g.color(vid(1)), Color::Left);
        assert_eq!(g.color(vid(3)), Color::Right);
    }

    #[test]
    fn graph6_known_strings() {
        // Reference strings from networkx.to_graph6_bytes.
        let g = parse_edge_list(K33).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s, "EFz_");
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.part_sizes(), (3, 3));
        // C5 is an odd cycle.
        assert!(matches!(
            parse_graph6("Dhc"),
            Err(GraphError::NotBipartite { .. })
        ));
        assert!(parse_graph6(">>graph6<<EFz_").is_ok());
        assert!(parse_graph6("Es").is_err());
        let q3 = parse_graph6("Gr`HOk").unwrap();
        assert_eq!((q3.n(), q3.m(), q3.part_sizes()), (8, 12, (4, 4)));
        assert_eq!(to_graph6(&q3), "Gr`HOk");
    }
}
