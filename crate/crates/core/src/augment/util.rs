//! Path splicing helpers shared by the case transformations.

use crate::connectivity::fan_to_groups;
use crate::graph::{BipartiteGraph, VertexId};
use crate::path::Path;

/// Something that may contribute a path piece to [`join!`].
pub(crate) trait Piece {
    fn piece(self) -> Option<Path>;
}

impl Piece for Path {
    fn piece(self) -> Option<Path> {
        Some(self)
    }
}

impl Piece for &Path {
    fn piece(self) -> Option<Path> {
        Some(self.clone())
    }
}

impl Piece for Option<Path> {
    fn piece(self) -> Option<Path> {
        self
    }
}

/// Concatenates pieces whose ends meet; `None` if a piece is missing, the
/// ends do not meet, or the result repeats a vertex.
pub(crate) fn join_parts(parts: Vec<Option<Path>>) -> Option<Path> {
    let mut out: Vec<VertexId> = Vec::new();
    for p in parts {
        let p = p?;
        match out.last() {
            None => out.extend_from_slice(p.vertices()),
            Some(&end) => {
                if p.first() != end {
                    return None;
                }
                out.extend_from_slice(&p.vertices()[1..]);
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    if out.iter().all(|v| seen.insert(*v)) {
        Some(Path::new(out))
    } else {
        None
    }
}

macro_rules! join {
    ($($p:expr),+ $(,)?) => {
        $crate::augment::util::join_parts(vec![$($crate::augment::util::Piece::piece($p)),+])
    };
}
pub(crate) use join;

/// The stretch of `p` from `x` to `y`.
pub(crate) fn sub(p: &Path, x: VertexId, y: VertexId) -> Option<Path> {
    p.subpath(x, y)
}

/// Position of `x` on `p`, if any.
pub(crate) fn pos(p: &Path, x: VertexId) -> Option<usize> {
    p.position(x)
}

/// True when `x` lies on `p` strictly after position `lo` and strictly
/// before position `hi`.
pub(crate) fn strictly_between(p: &Path, x: VertexId, lo: usize, hi: usize) -> bool {
    matches!(p.position(x), Some(i) if lo < i && i < hi)
}

/// Membership mask of the union of the given vertex lists.
pub(crate) fn mask_of(n: usize, parts: &[&[VertexId]]) -> Vec<bool> {
    let mut m = vec![false; n];
    for part in parts {
        for v in *part {
            m[v.ix()] = true;
        }
    }
    m
}

/// Three paths from `root`: to `first`, to `second`, and to any vertex
/// of `rest`, disjoint apart from `root`, with interiors avoiding all
/// three target sets. Used for the "replace the stretch if necessary"
/// steps: the stretch between `first` and `second` is not a target, so the
/// first two paths may reroute through it.
pub(crate) fn escape_fan(
    g: &BipartiteGraph,
    root: VertexId,
    first: VertexId,
    second: VertexId,
    rest: &[bool],
) -> Option<[Path; 3]> {
    let third: Vec<VertexId> = g
        .vertices()
        .filter(|&v| rest[v.ix()] && v != root && v != first && v != second)
        .collect();
    if third.is_empty() {
        return None;
    }
    let groups = vec![vec![first], vec![second], third];
    let blocked = |v: VertexId| v == first || v == second || rest[v.ix()];
    let paths = fan_to_groups(g, root, &groups, &|v| !blocked(v))?;
    let mut it = paths.into_iter();
    Some([it.next()?, it.next()?, it.next()?])
}

/// Vertices set in `mask`, ascending.
pub(crate) fn listed(mask: &[bool]) -> Vec<VertexId> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| crate::graph::vid(i)).collect()
}
