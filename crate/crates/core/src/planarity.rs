//! Planarity testing by path addition on each biconnected block, producing a
//! rotation system that is re-verified by face tracing.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{vid, BipartiteGraph, VertexId};

/// A combinatorial embedding: the cyclic order of neighbors around each
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar,
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

impl Embedding {
    fn next_after(&self, v: VertexId, x: VertexId) -> VertexId {
        let rot = &self.rotation[v.ix()];
        let i = rot.iter().position(|&w| w == x).expect("dart in rotation");
        rot[(i + 1) % rot.len()]
    }

    /// Faces traced by the rule: after dart `x -> v`, take `v -> next_v(x)`.
    /// Each face lists its vertices in traversal order.
    pub fn faces(&self) -> Vec<Vec<VertexId>> {
        let n = self.rotation.len();
        let mut used: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for s in 0..n {
            for k in 0..self.rotation[s].len() {
                if used[s][k] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut u, mut v) = (vid(s), self.rotation[s][k]);
                loop {
                    let idx = self.rotation[u.ix()].iter().position(|&w| w == v).unwrap();
                    if used[u.ix()][idx] {
                        break;
                    }
                    used[u.ix()][idx] = true;
                    face.push(u);
                    let w = self.next_after(v, u);
                    u = v;
                    v = w;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// True when the rotation lists exactly the neighbors of each vertex and
    /// every connected component satisfies Euler's formula `V - E + F = 2`.
    pub fn is_planar_embedding_of(&self, g: &BipartiteGraph) -> bool {
        if self.rotation.len() != g.n() {
            return false;
        }
        for v in g.vertices() {
            let mut r = self.rotation[v.ix()].clone();
            r.sort();
            if r.as_slice() != g.neighbors(v) {
                return false;
            }
        }
        let comp = component_ids(g);
        let c = comp.iter().copied().max().map_or(0, |x| x + 1);
        let mut chi = vec![0i64; c];
        for v in g.vertices() {
            chi[comp[v.ix()]] += 1;
            if g.degree(v) == 0 {
                chi[comp[v.ix()]] += 1;
            }
        }
        for &(u, _) in g.edges() {
            chi[comp[u.ix()]] -= 1;
        }
        for f in self.faces() {
            chi[comp[f[0].ix()]] += 1;
        }
        chi.iter().all(|&x| x == 2)
    }
}

fn component_ids(g: &BipartiteGraph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut next = 0;
    for s in g.vertices() {
        if comp[s.ix()] != usize::MAX {
            continue;
        }
        comp[s.ix()] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if comp[y.ix()] == usize::MAX {
                    comp[y.ix()] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Edge sets of the biconnected blocks (bridges are single-edge blocks).
fn blocks(g: &BipartiteGraph) -> Vec<Vec<(VertexId, VertexId)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<(VertexId, VertexId)> = Vec::new();
    for root in g.vertices() {
        if disc[root.ix()] != usize::MAX {
            continue;
        }
        disc[root.ix()] = time;
        low[root.ix()] = time;
        time += 1;
        // Frames: (vertex, parent, next neighbor index).
        let mut frames: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w.ix()] == usize::MAX {
                    estack.push((v, w));
                    disc[w.ix()] = time;
                    low[w.ix()] = time;
                    time += 1;
                    frames.push((w, Some(v), 0));
                } else if disc[w.ix()] < disc[v.ix()] {
                    estack.push((v, w));
                    low[v.ix()] = low[v.ix()].min(disc[w.ix()]);
                }
            } else {
                frames.pop();
                if let Some(p) = parent {
                    low[p.ix()] = low[p.ix()].min(low[v.ix()]);
                    if low[v.ix()] >= disc[p.ix()] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Embeds one biconnected block with at least one cycle. Returns faces as
/// consistently oriented vertex cycles, or `None` if the block is not planar.
fn embed_block(n: usize, edges: &[(VertexId, VertexId)]) -> Option<Vec<Vec<VertexId>>> {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a.ix()].push(b);
        adj[b.ix()].push(a);
    }
    for l in &mut adj {
        l.sort();
    }
    let mut in_h = vec![false; n];
    let mut h_edge = std::collections::BTreeSet::new();
    let key = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };

    let cycle = find_cycle(&adj, edges[0].0)?;
    for i in 0..cycle.len() {
        in_h[cycle[i].ix()] = true;
        h_edge.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while h_edge.len() < edges.len() {
        let frags = fragments(&adj, &in_h, &h_edge);
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| frag.attachments.iter().all(|a| faces[k].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_ix) = chosen.expect("at least one fragment remains");
        let path = frags[fi].path.clone();
        for w in path.windows(2) {
            h_edge.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_h[v.ix()] = true;
        }
        let face = faces.swap_remove(face_ix);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

fn find_cycle(adj: &[Vec<VertexId>], start: VertexId) -> Option<Vec<VertexId>> {
    // DFS until a back edge closes a cycle through the tree path.
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[start.ix()] = 0;
    let mut stack = vec![(start, 0usize)];
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx == adj[v.ix()].len() {
            stack.pop();
            continue;
        }
        let w = adj[v.ix()][*idx];
        *idx += 1;
        if Some(w) == parent[v.ix()] {
            continue;
        }
        if depth[w.ix()] == usize::MAX {
            depth[w.ix()] = depth[v.ix()] + 1;
            parent[w.ix()] = Some(v);
            stack.push((w, 0));
        } else if depth[w.ix()] < depth[v.ix()] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x.ix()].unwrap();
                cyc.push(x);
            }
            return Some(cyc);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<VertexId>,
    /// A path through the fragment between two distinct attachments.
    path: Vec<VertexId>,
}

fn fragments(
    adj: &[Vec<VertexId>],
    in_h: &[bool],
    h_edge: &std::collections::BTreeSet<(VertexId, VertexId)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let key = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
    let mut out = Vec::new();
    // Chords.
    for a in 0..n {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if vid(a) < b && in_h[b.ix()] && !h_edge.contains(&key(vid(a), b)) {
                out.push(Fragment { attachments: vec![vid(a), b], path: vec![vid(a), b] });
            }
        }
    }
    // Components of G - V(H) with their attachments.
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] || adj[s].is_empty() {
            continue;
        }
        let mut comp = vec![vid(s)];
        seen[s] = true;
        let mut i = 0;
        let mut att = std::collections::BTreeSet::new();
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in &adj[x.ix()] {
                if in_h[y.ix()] {
                    att.insert(y);
                } else if !seen[y.ix()] {
                    seen[y.ix()] = true;
                    comp.push(y);
                }
            }
        }
        let attachments: Vec<VertexId> = att.into_iter().collect();
        let path = fragment_path(adj, in_h, &comp, attachments[0]);
        out.push(Fragment { attachments, path });
    }
    out
}

/// BFS from attachment `a` through the component to a different attachment.
fn fragment_path(adj: &[Vec<VertexId>], in_h: &[bool], comp: &[VertexId], a: VertexId) -> Vec<VertexId> {
    let n = adj.len();
    let mut member = vec![false; n];
    for &c in comp {
        member[c.ix()] = true;
    }
    let mut pred: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &y in &adj[a.ix()] {
        if member[y.ix()] && !seen[y.ix()] {
            seen[y.ix()] = true;
            pred[y.ix()] = Some(a);
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x.ix()] {
            if in_h[y.ix()] && y != a {
                let mut path = vec![y, x];
                let mut cur = x;
                while let Some(p) = pred[cur.ix()] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return path;
            }
            if member[y.ix()] && !seen[y.ix()] {
                seen[y.ix()] = true;
                pred[y.ix()] = Some(x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

/// Splits a face cycle by a path whose ends lie on it, keeping both new
/// faces oriented consistently with the old one.
fn split_face(face: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let k = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| -> Vec<VertexId> {
        let mut out = vec![face[from]];
        let mut x = from;
        while x != to {
            x = (x + 1) % k;
            out.push(face[x]);
        }
        out
    };
    let mut f1 = arc(i, j);
    f1.extend(interior.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(interior.iter());
    (f1, f2)
}

/// Tests planarity; on success returns an embedding that has been checked
/// by face tracing.
pub fn is_planar(g: &BipartiteGraph) -> Planarity {
    let n = g.n();
    // Bipartite simple planar graphs with n >= 3 have m <= 2n - 4.
    if n >= 3 && g.m() > 2 * n - 4 {
        return Planarity::NonPlanar;
    }
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (a, b) = block[0];
            rotation[a.ix()].push(b);
            rotation[b.ix()].push(a);
            continue;
        }
        let Some(faces) = embed_block(n, &block) else {
            return Planarity::NonPlanar;
        };
        // Within a face, consecutive x, v, y give next_v(x) = y.
        let mut succ: std::collections::BTreeMap<(VertexId, VertexId), VertexId> = Default::default();
        for f in &faces {
            let k = f.len();
            for t in 0..k {
                let x = f[(t + k - 1) % k];
                let v = f[t];
                let y = f[(t + 1) % k];
                succ.insert((v, x), y);
            }
        }
        let mut verts: Vec<VertexId> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort();
        verts.dedup();
        for v in verts {
            let start = *succ.range((v, vid(0))..).next().filter(|((w, _), _)| *w == v).unwrap().0;
            let mut cyc = vec![start.1];
            let mut x = succ[&start];
            while x != start.1 {
                cyc.push(x);
                x = succ[&(v, x)];
            }
            rotation[v.ix()].extend(cyc);
        }
    }
    let emb = Embedding { rotation };
    assert!(emb.is_planar_embedding_of(g), "path addition produced an invalid embedding");
    Planarity::Planar(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, parse_graph6};

    fn grid(r: usize, c: usize) -> BipartiteGraph {
        let mut e = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let v = i * c + j;
                if j + 1 < c {
                    e.push((v, v + 1));
                }
                if i + 1 < r {
                    e.push((v, v + c));
                }
            }
        }
        BipartiteGraph::from_edges(r * c, e).unwrap()
    }

    /// Exhaustive search over all rotation systems.
    pub(crate) fn brute_planar(g: &BipartiteGraph) -> bool {
        fn perms(rest: &[VertexId]) -> Vec<Vec<VertexId>> {
            if rest.len() <= 1 {
                return vec![rest.to_vec()];
            }
            let mut out = Vec::new();
            for i in 0..rest.len() {
                let mut r = rest.to_vec();
                let x = r.remove(i);
                for mut p in perms(&r) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let choices: Vec<Vec<Vec<VertexId>>> = g
            .vertices()
            .map(|v| {
                let nb = g.neighbors(v);
                if nb.is_empty() {
                    return vec![vec![]];
                }
                perms(&nb[1..]).into_iter().map(|mut p| {
                    p.insert(0, nb[0]);
                    p
                }).collect()
            })
            .collect();
        let mut idx = vec![0usize; g.n()];
        loop {
            let emb = Embedding {
                rotation: (0..g.n()).map(|v| choices[v][idx[v]].clone()).collect(),
            };
            if emb.is_planar_embedding_of(g) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == g.n() {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn known_graphs() {
        let q3 = parse_graph6("Gr`HOk").unwrap();
        let k33 = parse_edge_list("0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5").unwrap();
        match is_planar(&q3) {
            Planarity::Planar(e) => {
                assert!(e.is_planar_embedding_of(&q3));
                assert_eq!(e.faces().len(), 6);
            }
            Planarity::NonPlanar => panic!("cube is planar"),
        }
        assert_eq!(is_planar(&k33), Planarity::NonPlanar);
        assert!(is_planar(&grid(4, 4)).is_planar());
        assert!(brute_planar(&q3));
        assert!(!brute_planar(&k33));
    }

    #[test]
    fn sparse_nonplanar_and_forests() {
        // K3,3 with every edge subdivided twice stays non-planar below the
        // edge bound.
        let mut e = Vec::new();
        let mut next = 6;
        for i in 0..3 {
            for j in 3..6 {
                e.extend([(i, next), (next, next + 1), (next + 1, j)]);
                next += 2;
            }
        }
        let g = BipartiteGraph::from_edges(next, e).unwrap();
        assert_eq!(is_planar(&g), Planarity::NonPlanar);
        let forest = parse_edge_list("0 1\n1 2\n3 4").unwrap();
        assert!(is_planar(&forest).is_planar());
        let two_squares = parse_edge_list("0 1\n1 2\n2 3\n3 0\n2 5\n5 6\n6 7\n7 2").unwrap();
        assert!(is_planar(&two_squares).is_planar());
    }
}
