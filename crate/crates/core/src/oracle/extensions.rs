//! Literal checks of the extension shapes and an exhaustive search for them.

use serde::{Deserialize, Serialize};

use crate::augment::{AnyExtension, Extension1, Extension2, ExtensionB, ExtensionD, TriPod};
use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::path::Path;

/// Which extension shape to look for.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    One,
    Two,
    A,
    B,
    C,
    D,
}

struct Checker<'a> {
    g: &'a BipartiteGraph,
    in_x: Vec<bool>,
    side_a: Color,
    errs: Vec<String>,
}

impl Checker<'_> {
    fn path(&mut self, name: &str, p: &Path, from: VertexId, to: VertexId) {
        if let Err(e) = p.check(self.g) {
            self.errs.push(format!("{name} is not a path: {e}"));
        }
        if p.first() != from || p.last() != to {
            self.errs.push(format!("{name} should run from {from} to {to}"));
        }
        if p.is_trivial() {
            self.errs.push(format!("{name} has no edge"));
        }
    }

    fn class(&mut self, name: &str, v: VertexId, want_a: bool) {
        let is_a = self.g.color(v) == self.side_a;
        if is_a != want_a {
            let cls = if want_a { "A" } else { "B" };
            self.errs.push(format!("{name} = {v} is not in class {cls}"));
        }
    }

    fn meet(&mut self, n1: &str, p1: &Path, n2: &str, p2: &Path, allowed: &[VertexId]) {
        let mut common: Vec<VertexId> = p1.vertices().iter().copied().filter(|&v| p2.contains(v)).collect();
        common.sort();
        let mut want = allowed.to_vec();
        want.sort();
        want.dedup();
        if common != want {
            self.errs.push(format!("{n1} and {n2} meet in {common:?}, expected {want:?}"));
        }
    }

    fn x_meet(&mut self, name: &str, p: &Path, allowed: &[VertexId]) {
        let mut common: Vec<VertexId> = p.vertices().iter().copied().filter(|v| self.in_x[v.ix()]).collect();
        common.sort();
        let mut want = allowed.to_vec();
        want.sort();
        if common != want {
            self.errs.push(format!("{name} meets X in {common:?}, expected {want:?}"));
        }
    }

    fn replacement(&mut self, t: &TriPod, v: VertexId, p1: &Path, p2: &Path, p3: &Path) {
        self.class("v'", v, true);
        self.path("P1'", p1, v, t.a());
        self.path("P2'", p2, v, t.b());
        self.path("P3'", p3, v, t.c());
        self.meet("P1'", p1, "P2'", p2, &[v]);
        self.meet("P1'", p1, "P3'", p3, &[v]);
        self.meet("P2'", p2, "P3'", p3, &[v]);
        self.x_meet("P1'", p1, &[]);
        self.x_meet("P2'", p2, &[]);
        self.x_meet("P3'", p3, &[]);
    }

    fn one(&mut self, t: &TriPod, e: &Extension1, x_class_a: Option<bool>) {
        self.replacement(t, e.v, &e.p1, &e.p2, &e.p3);
        self.class("u", e.u, false);
        if let Some(want) = x_class_a {
            self.class("x", e.x, want);
        }
        self.path("P4'", &e.p4, e.u, e.x);
        self.meet("P1'", &e.p1, "P4'", &e.p4, &[e.u]);
        self.meet("P2'", &e.p2, "P4'", &e.p4, &[]);
        self.meet("P3'", &e.p3, "P4'", &e.p4, &[]);
        self.x_meet("P4'", &e.p4, &[e.x]);
    }

    fn two(&mut self, t: &TriPod, e: &Extension2) {
        self.replacement(t, e.v, &e.p1, &e.p2, &e.p3);
        self.class("s", e.s, true);
        self.class("u", e.u, false);
        self.class("t", e.t, false);
        let (pt, po, nt, no) = if e.on_p3 { (&e.p3, &e.p2, "P3'", "P2'") } else { (&e.p2, &e.p3, "P2'", "P3'") };
        let ordered = match (pt.position(e.t), pt.position(e.s)) {
            (Some(i), Some(j)) => 0 < i && i < j && j + 1 < pt.vertices().len(),
            _ => false,
        };
        if !ordered {
            self.errs.push(format!("{nt} does not pass t = {} and then s = {} strictly inside", e.t, e.s));
        }
        self.path("P4'", &e.p4, e.u, e.s);
        self.path("P5'", &e.p5, e.t, e.x);
        self.meet("P1'", &e.p1, "P4'", &e.p4, &[e.u]);
        self.meet(nt, pt, "P4'", &e.p4, &[e.s]);
        self.meet(no, po, "P4'", &e.p4, &[]);
        self.meet("P1'", &e.p1, "P5'", &e.p5, &[]);
        self.meet(nt, pt, "P5'", &e.p5, &[e.t]);
        self.meet(no, po, "P5'", &e.p5, &[]);
        self.meet("P4'", &e.p4, "P5'", &e.p5, &[]);
        self.x_meet("P4'", &e.p4, &[]);
        self.x_meet("P5'", &e.p5, &[e.x]);
    }

    fn b(&mut self, t: &TriPod, e: &ExtensionB) {
        self.replacement(t, e.v, &e.p1, &e.p2, &e.p3);
        self.class("s", e.s, true);
        self.class("u", e.u, false);
        self.class("t", e.t, false);
        self.class("x", e.x, false);
        self.path("P4'", &e.p4, e.u, e.x);
        if !e.p4.has_interior_vertex(e.s) {
            self.errs.push(format!("s = {} is not inside P4'", e.s));
        }
        self.path("P5'", &e.p5, e.s, e.t);
        let t_in_x = self.in_x[e.t.ix()];
        let on2 = e.t != e.v && e.p2.contains(e.t);
        let on3 = e.t != e.v && e.p3.contains(e.t);
        if !(t_in_x || on2 || on3) {
            self.errs.push(format!("t = {} is neither in X nor on P2' or P3'", e.t));
        }
        self.meet("P1'", &e.p1, "P4'", &e.p4, &[e.u]);
        self.meet("P2'", &e.p2, "P4'", &e.p4, &[]);
        self.meet("P3'", &e.p3, "P4'", &e.p4, &[]);
        self.meet("P1'", &e.p1, "P5'", &e.p5, &[]);
        self.meet("P2'", &e.p2, "P5'", &e.p5, &if on2 { vec![e.t] } else { vec![] });
        self.meet("P3'", &e.p3, "P5'", &e.p5, &if on3 { vec![e.t] } else { vec![] });
        let shared: Vec<VertexId> = if e.t == e.x { vec![e.s, e.x] } else { vec![e.s] };
        self.meet("P4'", &e.p4, "P5'", &e.p5, &shared);
        self.x_meet("P4'", &e.p4, &[e.x]);
        self.x_meet("P5'", &e.p5, &if t_in_x { vec![e.t] } else { vec![] });
    }

    fn d(&mut self, t: &TriPod, e: &ExtensionD) {
        self.replacement(t, e.v, &e.p1, &e.p2, &e.p3);
        for (name, v, a) in [("s", e.s, true), ("w", e.w, true), ("u", e.u, false), ("t", e.t, false)] {
            self.class(name, v, a);
        }
        self.class("x", e.x, false);
        self.class("y", e.y, false);
        let pos = |v: VertexId| e.p1.position(v);
        let ordered = match (pos(e.u), pos(e.w), pos(e.t)) {
            (Some(i), Some(j), Some(k)) => 0 < i && i < j && j < k && k + 1 < e.p1.vertices().len(),
            _ => false,
        };
        if !ordered {
            self.errs.push("P1' does not pass u, w, t in that order strictly inside".to_string());
        }
        self.path("P4'", &e.p4, e.u, e.x);
        if !e.p4.has_interior_vertex(e.s) {
            self.errs.push(format!("s = {} is not inside P4'", e.s));
        }
        self.path("P5'", &e.p5, e.s, e.t);
        self.path("P6'", &e.p6, e.w, e.y);
        self.meet("P1'", &e.p1, "P4'", &e.p4, &[e.u]);
        self.meet("P1'", &e.p1, "P5'", &e.p5, &[e.t]);
        self.meet("P1'", &e.p1, "P6'", &e.p6, &[e.w]);
        self.meet("P4'", &e.p4, "P5'", &e.p5, &[e.s]);
        self.meet("P4'", &e.p4, "P6'", &e.p6, &if e.x == e.y { vec![e.x] } else { vec![] });
        self.meet("P5'", &e.p5, "P6'", &e.p6, &[]);
        for (np, p) in [("P2'", &e.p2), ("P3'", &e.p3)] {
            self.meet(np, p, "P4'", &e.p4, &[]);
            self.meet(np, p, "P5'", &e.p5, &[]);
            self.meet(np, p, "P6'", &e.p6, &[]);
        }
        self.x_meet("P4'", &e.p4, &[e.x]);
        self.x_meet("P5'", &e.p5, &[]);
        self.x_meet("P6'", &e.p6, &[e.y]);
    }
}

/// Checks every clause of the extension's shape against the tripod's ends
/// and `x`. Returns all violated clauses.
pub fn validate_extension(g: &BipartiteGraph, t: &TriPod, x: &[VertexId], ext: &AnyExtension) -> Result<(), Vec<String>> {
    let mut in_x = vec![false; g.n()];
    for &v in x {
        if g.contains(v) {
            in_x[v.ix()] = true;
        }
    }
    let mut ck = Checker { g, in_x, side_a: g.color(t.v()), errs: Vec::new() };
    match ext {
        AnyExtension::One(e) => ck.one(t, e, None),
        AnyExtension::A(e) => ck.one(t, e, Some(true)),
        AnyExtension::Two(e) | AnyExtension::C(e) => ck.two(t, e),
        AnyExtension::B(e) => ck.b(t, e),
        AnyExtension::D(e) => ck.d(t, e),
    }
    if ck.errs.is_empty() {
        Ok(())
    } else {
        Err(ck.errs)
    }
}

// ---------------------------------------------------------------------------
// Exhaustive shape search.

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Pt {
    Node(usize),
    Term(usize),
    /// A vertex of `X`; `class_a` restricts its class, `share` lets it
    /// coincide with another path's end in `X`.
    X { class_a: Option<bool>, share: bool },
    /// A class-`B` vertex of `X` or of the listed segments other than the
    /// center.
    Attach,
}

struct Pattern {
    node_a: Vec<bool>,
    segs: Vec<(Pt, Pt)>,
    attach_segs: Vec<usize>,
}

const V: usize = 0;
const U: usize = 1;

fn pattern(shape: Shape, on_c: bool) -> Pattern {
    use Pt::*;
    let (ta, tb, tc) = (Term(0), Term(1), Term(2));
    let (tb, tc) = if on_c { (tc, tb) } else { (tb, tc) };
    let xany = X { class_a: None, share: false };
    let xb = X { class_a: Some(false), share: false };
    match shape {
        Shape::One | Shape::A => {
            let xe = if shape == Shape::A { X { class_a: Some(true), share: false } } else { xany };
            Pattern {
                node_a: vec![true, false],
                segs: vec![(ta, Node(U)), (Node(U), xe), (Node(U), Node(V)), (Node(V), tb), (Node(V), tc)],
                attach_segs: vec![],
            }
        }
        Shape::Two | Shape::C => {
            // Nodes: V, U, T, S.
            Pattern {
                node_a: vec![true, false, false, true],
                segs: vec![
                    (ta, Node(U)),
                    (Node(U), Node(V)),
                    (Node(V), tc),
                    (tb, Node(3)),
                    (Node(3), Node(U)),
                    (Node(3), Node(2)),
                    (Node(2), Node(V)),
                    (Node(2), xany),
                ],
                attach_segs: vec![],
            }
        }
        Shape::B => {
            // Nodes: V, U, S.
            Pattern {
                node_a: vec![true, false, true],
                segs: vec![
                    (ta, Node(U)),
                    (Node(U), Node(V)),
                    (Node(V), tb),
                    (Node(V), tc),
                    (Node(U), Node(2)),
                    (Node(2), xb),
                    (Node(2), Attach),
                ],
                attach_segs: vec![2, 3],
            }
        }
        Shape::D => {
            // Nodes: V, U, W, T, S.
            Pattern {
                node_a: vec![true, false, true, false, true],
                segs: vec![
                    (ta, Node(3)),
                    (Node(3), Node(2)),
                    (Node(2), Node(U)),
                    (Node(U), Node(V)),
                    (Node(V), tb),
                    (Node(V), tc),
                    (Node(U), Node(4)),
                    (Node(4), xb),
                    (Node(4), Node(3)),
                    (Node(2), X { class_a: Some(false), share: true }),
                ],
                attach_segs: vec![],
            }
        }
    }
}

struct Engine<'a> {
    g: &'a BipartiteGraph,
    side_a: Color,
    terms: [VertexId; 3],
    in_x: Vec<bool>,
    pat: Pattern,
    place: Vec<Option<VertexId>>,
    used: Vec<bool>,
    x_taken: Vec<bool>,
    paths: Vec<Path>,
}

impl Engine<'_> {
    fn is_a(&self, v: VertexId) -> bool {
        self.g.color(v) == self.side_a
    }

    fn start_of(&self, p: Pt) -> VertexId {
        match p {
            Pt::Node(i) => self.place[i].expect("segments start at placed points"),
            Pt::Term(i) => self.terms[i],
            _ => unreachable!("segments never start in X"),
        }
    }

    fn accepts(&self, to: Pt, w: VertexId) -> bool {
        match to {
            Pt::Node(i) => match self.place[i] {
                Some(p) => p == w,
                None => !self.used[w.ix()] && !self.in_x[w.ix()] && self.is_a(w) == self.pat.node_a[i],
            },
            Pt::Term(i) => self.terms[i] == w,
            Pt::X { class_a, share } => {
                self.in_x[w.ix()] && class_a.is_none_or(|c| c == self.is_a(w)) && (share || !self.x_taken[w.ix()])
            }
            Pt::Attach => {
                if self.is_a(w) {
                    return false;
                }
                if self.in_x[w.ix()] {
                    return true;
                }
                let center = self.place[V];
                Some(w) != center && self.pat.attach_segs.iter().any(|&s| self.paths[s].contains(w))
            }
        }
    }

    fn route(&mut self, k: usize) -> bool {
        if k == self.pat.segs.len() {
            return true;
        }
        let (from, _) = self.pat.segs[k];
        let s = self.start_of(from);
        let mut seq = vec![s];
        self.grow(k, &mut seq)
    }

    fn grow(&mut self, k: usize, seq: &mut Vec<VertexId>) -> bool {
        let (_, to) = self.pat.segs[k];
        let here = *seq.last().unwrap();
        let nbrs = self.g.neighbors(here).to_vec();
        for w in nbrs {
            if w != seq[0] && self.accepts(to, w) {
                seq.push(w);
                let placed_here = matches!(to, Pt::Node(i) if self.place[i].is_none());
                if let Pt::Node(i) = to {
                    if placed_here {
                        self.place[i] = Some(w);
                        self.used[w.ix()] = true;
                    }
                }
                let prev_taken = self.in_x[w.ix()].then(|| self.x_taken[w.ix()]);
                if self.in_x[w.ix()] {
                    self.x_taken[w.ix()] = true;
                }
                self.paths.push(Path::new(seq.clone()));
                if self.route(k + 1) {
                    return true;
                }
                self.paths.pop();
                if let Some(t) = prev_taken {
                    self.x_taken[w.ix()] = t;
                }
                if let Pt::Node(i) = to {
                    if placed_here {
                        self.place[i] = None;
                        self.used[w.ix()] = false;
                    }
                }
                seq.pop();
            }
            if !self.used[w.ix()] && !self.in_x[w.ix()] {
                self.used[w.ix()] = true;
                seq.push(w);
                if self.grow(k, seq) {
                    return true;
                }
                seq.pop();
                self.used[w.ix()] = false;
            }
        }
        false
    }

    fn seg(&self, k: usize, start: VertexId) -> Path {
        self.paths[k].from_end(start).expect("segment touches its end")
    }

    fn cat(parts: &[Path]) -> Path {
        let mut v: Vec<VertexId> = parts[0].vertices().to_vec();
        for p in &parts[1..] {
            v.extend_from_slice(&p.vertices()[1..]);
        }
        Path::new(v)
    }

    fn assemble(&self, shape: Shape, on_c: bool) -> AnyExtension {
        let pv = self.place[V].unwrap();
        let pu = self.place[U].unwrap();
        let swap = |p2: Path, p3: Path| if on_c { (p3, p2) } else { (p2, p3) };
        match shape {
            Shape::One | Shape::A => {
                let p1 = Self::cat(&[self.seg(2, pv), self.seg(0, pu)]);
                let e = Extension1 {
                    v: pv,
                    u: pu,
                    x: self.paths[1].last(),
                    p1,
                    p2: self.seg(3, pv),
                    p3: self.seg(4, pv),
                    p4: self.seg(1, pu),
                };
                if shape == Shape::A {
                    AnyExtension::A(e)
                } else {
                    AnyExtension::One(e)
                }
            }
            Shape::Two | Shape::C => {
                let (pt, ps) = (self.place[2].unwrap(), self.place[3].unwrap());
                let p1 = Self::cat(&[self.seg(1, pv), self.seg(0, pu)]);
                let pts = Self::cat(&[self.seg(6, pv), self.seg(5, pt), self.seg(3, ps)]);
                let (p2, p3) = swap(pts, self.seg(2, pv));
                let e = Extension2 {
                    v: pv,
                    s: ps,
                    u: pu,
                    t: pt,
                    x: self.paths[7].last(),
                    p1,
                    p2,
                    p3,
                    p4: self.seg(4, pu),
                    p5: self.seg(7, pt),
                    on_p3: on_c,
                };
                if shape == Shape::C {
                    AnyExtension::C(e)
                } else {
                    AnyExtension::Two(e)
                }
            }
            Shape::B => {
                let ps = self.place[2].unwrap();
                let p1 = Self::cat(&[self.seg(1, pv), self.seg(0, pu)]);
                let p4 = Self::cat(&[self.seg(4, pu), self.seg(5, ps)]);
                AnyExtension::B(ExtensionB {
                    v: pv,
                    s: ps,
                    u: pu,
                    t: self.paths[6].last(),
                    x: self.paths[5].last(),
                    p1,
                    p2: self.seg(2, pv),
                    p3: self.seg(3, pv),
                    p4,
                    p5: self.seg(6, ps),
                })
            }
            Shape::D => {
                let (pw, pt, ps) = (self.place[2].unwrap(), self.place[3].unwrap(), self.place[4].unwrap());
                let p1 = Self::cat(&[self.seg(3, pv), self.seg(2, pu), self.seg(1, pw), self.seg(0, pt)]);
                let p4 = Self::cat(&[self.seg(6, pu), self.seg(7, ps)]);
                AnyExtension::D(ExtensionD {
                    v: pv,
                    s: ps,
                    w: pw,
                    u: pu,
                    t: pt,
                    x: self.paths[7].last(),
                    y: self.paths[9].last(),
                    p1,
                    p2: self.seg(4, pv),
                    p3: self.seg(5, pv),
                    p4,
                    p5: self.seg(8, ps),
                    p6: self.seg(9, pw),
                })
            }
        }
    }
}

/// First extension found among `shapes` (tried in order), ignoring the
/// tripod's paths and keeping only its ends `a`, `b`, `c` and the center's
/// color. Exhaustive, so `None` means no extension of those shapes exists.
pub fn search_extensions_bruteforce(
    g: &BipartiteGraph,
    t: &TriPod,
    x: &[VertexId],
    shapes: &[Shape],
) -> Option<AnyExtension> {
    let mut in_x = vec![false; g.n()];
    for &v in x {
        in_x[v.ix()] = true;
    }
    for &shape in shapes {
        let variants: &[bool] = if matches!(shape, Shape::Two | Shape::C) { &[false, true] } else { &[false] };
        for &on_c in variants {
            let pat = pattern(shape, on_c);
            let mut used = vec![false; g.n()];
            for v in [t.a(), t.b(), t.c()] {
                used[v.ix()] = true;
            }
            let mut eng = Engine {
                g,
                side_a: g.color(t.v()),
                terms: [t.a(), t.b(), t.c()],
                in_x: in_x.clone(),
                place: vec![None; pat.node_a.len()],
                pat,
                used,
                x_taken: vec![false; g.n()],
                paths: Vec::new(),
            };
            if eng.route(0) {
                return Some(eng.assemble(shape, on_c));
            }
        }
    }
    None
}
