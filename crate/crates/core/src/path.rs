//! Paths as explicit vertex sequences, plus the splicing notation used by the
//! constructive case analyses (`v P1 u P4 s P2 b` becomes
//! `Walk::from(v).along(&p1, u).along(&p4, s).along(&p2, b).finish()`).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, VertexId};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(len: usize) -> Parity {
        if len % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("non-edge {0}-{1}")]
    NonEdge(VertexId, VertexId),
    #[error("vertex {0} repeated")]
    Repeated(VertexId),
}

/// A splice referenced a vertex that is not where the notation expects it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpliceError {
    #[error("vertex {0} is not on the path being followed")]
    NotOnPath(VertexId),
    #[error("spliced walk repeats vertex {0}")]
    Repeated(VertexId),
}

/// A nonempty sequence of vertices; consecutive vertices are adjacent in the
/// host graph and no vertex repeats (checked by [`Path::check`]).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<VertexId>);

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join("-"))
    }
}

impl Path {
    /// Wraps a vertex sequence. Panics on an empty sequence.
    pub fn new(vertices: Vec<VertexId>) -> Path {
        assert!(!vertices.is_empty(), "paths have at least one vertex");
        Path(vertices)
    }

    pub fn single(v: VertexId) -> Path {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    /// Number of edges; a path always has a vertex, so see `is_trivial`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().unwrap()
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.first(), self.last())
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.len())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    /// Vertices strictly between the ends.
    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn has_interior_vertex(&self, v: VertexId) -> bool {
        self.interior().contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// The stretch of this path from `x` to `y`, oriented from `x`.
    pub fn subpath(&self, x: VertexId, y: VertexId) -> Option<Path> {
        let i = self.position(x)?;
        let j = self.position(y)?;
        if i <= j {
            Some(Path(self.0[i..=j].to_vec()))
        } else {
            let mut v = self.0[j..=i].to_vec();
            v.reverse();
            Some(Path(v))
        }
    }

    /// True when `x`, `y`, `z` lie on the path in that order (equalities allowed).
    pub fn in_order(&self, x: VertexId, y: VertexId, z: VertexId) -> bool {
        match (self.position(x), self.position(y), self.position(z)) {
            (Some(i), Some(j), Some(k)) => i <= j && j <= k,
            _ => false,
        }
    }

    /// Orients the path so that it starts at `v`, which must be an end.
    pub fn from_end(&self, v: VertexId) -> Option<Path> {
        if self.first() == v {
            Some(self.clone())
        } else if self.last() == v {
            Some(self.reversed())
        } else {
            None
        }
    }

    /// Checks adjacency and simplicity against `g`.
    pub fn check(&self, g: &BipartiteGraph) -> Result<(), PathError> {
        let mut seen = HashSet::new();
        for &v in &self.0 {
            if !g.contains(v) {
                return Err(PathError::OutOfRange(v));
            }
            if !seen.insert(v) {
                return Err(PathError::Repeated(v));
            }
        }
        for (a, b) in self.edges() {
            if !g.has_edge(a, b) {
                return Err(PathError::NonEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Parity of the number of edges of `p`.
pub fn path_parity(p: &Path) -> Parity {
    p.parity()
}

/// Builder for spliced walks; the first failing step is remembered and
/// reported by [`Walk::finish`].
#[derive(Clone, Debug)]
pub struct Walk {
    verts: Vec<VertexId>,
    err: Option<SpliceError>,
}

impl Walk {
    pub fn from(v: VertexId) -> Walk {
        Walk { verts: vec![v], err: None }
    }

    /// Follows `p` from the current end to `to`.
    pub fn along(mut self, p: &Path, to: VertexId) -> Walk {
        if self.err.is_some() {
            return self;
        }
        let here = *self.verts.last().unwrap();
        match p.subpath(here, to) {
            Some(sub) => self.verts.extend_from_slice(&sub.0[1..]),
            None => {
                let missing = if p.contains(here) { to } else { here };
                self.err = Some(SpliceError::NotOnPath(missing));
            }
        }
        self
    }

    /// Appends all of `p`, which must start or end at the current end.
    pub fn then(self, p: &Path) -> Walk {
        let here = *self.verts.last().unwrap();
        let to = if p.first() == here { p.last() } else { p.first() };
        self.along(p, to)
    }

    pub fn finish(self) -> Result<Path, SpliceError> {
        if let Some(e) = self.err {
            return Err(e);
        }
        let mut seen = HashSet::new();
        for &v in &self.verts {
            if !seen.insert(v) {
                return Err(SpliceError::Repeated(v));
            }
        }
        Ok(Path(self.verts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, vid};

    fn p(v: &[usize]) -> Path {
        Path::new(v.iter().map(|&i| vid(i)).collect())
    }

    #[test]
    fn parity_basics() {
        assert_eq!(path_parity(&p(&[0, 1])), Parity::Odd);
        assert_eq!(path_parity(&p(&[4])), Parity::Even);
        assert_eq!(path_parity(&p(&[0, 3, 1])), Parity::Even);
    }

    #[test]
    fn subpath_keeps_orientation() {
        let q = p(&[0, 1, 2, 3, 4]);
        assert_eq!(q.subpath(vid(1), vid(3)).unwrap(), p(&[1, 2, 3]));
        assert_eq!(q.subpath(vid(3), vid(1)).unwrap(), p(&[3, 2, 1]));
        assert_eq!(q.subpath(vid(2), vid(2)).unwrap(), p(&[2]));
        assert!(q.subpath(vid(2), vid(9)).is_none());
        assert!(q.in_order(vid(0), vid(2), vid(2)));
        assert!(!q.in_order(vid(3), vid(2), vid(4)));
    }

    #[test]
    fn walk_splices() {
        let p1 = p(&[0, 1, 2, 3]);
        let p4 = p(&[2, 7, 8]);
        let p2 = p(&[0, 5, 8, 9]);
        let w = Walk::from(vid(3)).along(&p1, vid(2)).along(&p4, vid(8)).along(&p2, vid(9));
        assert_eq!(w.finish().unwrap(), p(&[3, 2, 7, 8, 9]));
        let bad = Walk::from(vid(3)).along(&p4, vid(8)).finish();
        assert_eq!(bad, Err(SpliceError::NotOnPath(vid(3))));
        let rep = Walk::from(vid(0)).along(&p1, vid(2)).along(&p4, vid(8)).along(&p2, vid(0));
        assert!(matches!(rep.finish(), Err(SpliceError::Repeated(_))));
    }

    #[test]
    fn check_against_graph() {
        let g = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        assert!(p(&[0, 1, 2, 3]).check(&g).is_ok());
        assert_eq!(p(&[0, 2]).check(&g), Err(PathError::NonEdge(vid(0), vid(2))));
        assert_eq!(p(&[0, 1, 0]).check(&g), Err(PathError::Repeated(vid(0))));
    }
}
