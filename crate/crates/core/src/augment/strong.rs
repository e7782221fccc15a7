//! Outcomes (A) to (D) for a tripod and target set.
//!
//! Starts from outcome (1) or (2). Outcome (2) is already (C), and outcome
//! (1) with an endpoint of class `A` is (A). Otherwise the new path and the
//! two halves of `P1` form a tripod centered at `u` with the classes
//! swapped; solving that instance recursively and translating its outcome
//! gives the answer. Translations are validated and the exhaustive shape
//! search covers anything they miss.

use super::extend::three_path_extend_with;
use super::util::{escape_fan, join, listed, mask_of, pos, strictly_between, sub};
use super::{
    check_inputs, AnyExtension, AugmentError, AugmentStats, Extension, Extension1, Extension2, ExtensionB, ExtensionD,
    StrongExtension, TriPod,
};
use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::oracle::{search_extensions_bruteforce, validate_extension, Shape};
use crate::path::Path;

type P = Option<Path>;
type Cands = Vec<(Option<StrongExtension>, &'static str)>;

fn sa(v: VertexId, u: VertexId, x: VertexId, [p1, p2, p3, p4]: [P; 4]) -> Option<StrongExtension> {
    Some(StrongExtension::A(Extension1 { v, u, x, p1: p1?, p2: p2?, p3: p3?, p4: p4? }))
}

fn sb(v: VertexId, s: VertexId, u: VertexId, t: VertexId, x: VertexId, [p1, p2, p3, p4, p5]: [P; 5]) -> Option<StrongExtension> {
    Some(StrongExtension::B(ExtensionB { v, s, u, t, x, p1: p1?, p2: p2?, p3: p3?, p4: p4?, p5: p5? }))
}

#[allow(clippy::too_many_arguments)]
fn sc(
    v: VertexId,
    s: VertexId,
    u: VertexId,
    t: VertexId,
    x: VertexId,
    [p1, p2, p3, p4, p5]: [P; 5],
    on_p3: bool,
) -> Option<StrongExtension> {
    Some(StrongExtension::C(Extension2 { v, s, u, t, x, p1: p1?, p2: p2?, p3: p3?, p4: p4?, p5: p5?, on_p3 }))
}

#[allow(clippy::too_many_arguments)]
fn sd(
    v: VertexId,
    s: VertexId,
    w: VertexId,
    u: VertexId,
    t: VertexId,
    x: VertexId,
    y: VertexId,
    [p1, p2, p3, p4, p5, p6]: [P; 6],
) -> Option<StrongExtension> {
    Some(StrongExtension::D(ExtensionD { v, s, w, u, t, x, y, p1: p1?, p2: p2?, p3: p3?, p4: p4?, p5: p5?, p6: p6? }))
}

/// Outcome (A), (B), (C) or (D) of the strong three-path extension for
/// tripod `t` and target set `x`.
pub fn three_path_extend_strong(g: &BipartiteGraph, t: &TriPod, x: &[VertexId]) -> Result<StrongExtension, AugmentError> {
    three_path_extend_strong_traced(g, t, x).map(|(e, _)| e)
}

/// As [`three_path_extend_strong`], also reporting how the result was
/// obtained.
pub fn three_path_extend_strong_traced(
    g: &BipartiteGraph,
    t: &TriPod,
    x: &[VertexId],
) -> Result<(StrongExtension, AugmentStats), AugmentError> {
    let mask = check_inputs(g, t, x)?;
    let mut stats = AugmentStats::default();
    let e = three_path_extend_strong_with(g, t, &mask, &mut stats)?;
    Ok((e, stats))
}

pub(crate) fn three_path_extend_strong_with(
    g: &BipartiteGraph,
    t: &TriPod,
    in_x: &[bool],
    stats: &mut AugmentStats,
) -> Result<StrongExtension, AugmentError> {
    let xs = listed(in_x);
    let mut cands = Cands::new();
    candidates(g, t, in_x, stats, &mut cands);
    for (c, tag) in cands {
        match c {
            Some(e) if validate_extension(g, t, &xs, &e.clone().into()).is_ok() => return Ok(noted(e, stats)),
            _ => stats.fail(tag),
        }
    }
    stats.fallbacks += 1;
    match search_extensions_bruteforce(g, t, &xs, &[Shape::A, Shape::C, Shape::B, Shape::D]) {
        Some(AnyExtension::A(e)) => Ok(StrongExtension::A(e)),
        Some(AnyExtension::B(e)) => Ok(noted(StrongExtension::B(e), stats)),
        Some(AnyExtension::C(e)) => Ok(StrongExtension::C(e)),
        Some(AnyExtension::D(e)) => Ok(StrongExtension::D(e)),
        _ => Err(AugmentError::Unsatisfiable),
    }
}

fn noted(e: StrongExtension, stats: &mut AugmentStats) -> StrongExtension {
    if let StrongExtension::B(b) = &e {
        if b.t == b.x {
            stats.b_with_t_eq_x += 1;
        }
    }
    e
}

fn candidates(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], stats: &mut AugmentStats, out: &mut Cands) {
    let Ok(ext) = three_path_extend_with(g, t, in_x, stats) else {
        out.push((None, "strong.first_stage"));
        return;
    };
    match ext {
        Extension::Two(e) => out.push((Some(StrongExtension::C(e)), "strong.two")),
        Extension::One(e) if g.color(e.x) == g.color(t.v()) => out.push((Some(StrongExtension::A(e)), "strong.one.end_in_A")),
        Extension::One(e) => nested(g, t, in_x, e, stats, out),
    }
}

/// Outcome (1) ended in class `B`: recurse on the tripod centered at `u`.
fn nested(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], e: Extension1, stats: &mut AugmentStats, out: &mut Cands) {
    let (v, a) = (e.v, t.a());
    let (Some(l2), Some(l3)) = (sub(&e.p1, e.u, a), sub(&e.p1, e.u, v)) else { return };
    let subt = TriPod::new(e.p4.clone(), l2, l3);
    let mut xs = mask_of(g.n(), &[&listed(in_x), e.p2.vertices(), e.p3.vertices()]);
    xs[e.x.ix()] = false;
    xs[v.ix()] = false;
    for w in subt.vertices() {
        xs[w.ix()] = false;
    }
    let Ok(rec) = three_path_extend_strong_with(g, &subt, &xs, stats) else {
        out.push((None, "nested.recursion"));
        return;
    };
    let r = rec.replacement();
    let Some(p1) = join!(r.p3.reversed(), &r.p2) else {
        out.push((None, "nested.rebuild"));
        return;
    };
    let ctx = Ctx {
        g,
        in_x,
        side_a: g.color(v),
        v,
        a,
        p1,
        p2: e.p2,
        p3: e.p3,
        u: r.v(),
        x: e.x,
        p4: r.p1.clone(),
    };
    match rec {
        StrongExtension::A(e2) => {
            let c = &ctx;
            let paths = [Some(c.p1.clone()), Some(c.p2.clone()), Some(c.p3.clone()), Some(c.p4.clone()), Some(e2.p4)];
            out.push((sb(c.v, e2.u, c.u, e2.x, c.x, paths), "nested.a"));
        }
        StrongExtension::B(e2) => ctx.after_b(&e2, out),
        StrongExtension::C(e2) => ctx.after_c(&e2, out),
        StrongExtension::D(e2) => ctx.after_d(&e2, out),
    }
}

/// The leg holding a given vertex (`py`) and the other one (`po`).
struct Legs {
    py: Path,
    po: Path,
    flip: bool,
}

impl Legs {
    /// Puts replacement legs back in `(p2, p3)` order.
    fn out(&self, py: P, po: P) -> (P, P) {
        if self.flip {
            (po, py)
        } else {
            (py, po)
        }
    }

    /// `on_p3` for outcome (C) with `t, s` on the `py` leg when `on_y`.
    fn on_p3(&self, on_y: bool) -> bool {
        self.flip == on_y
    }

    fn end_y(&self) -> VertexId {
        self.py.last()
    }

    fn end_o(&self) -> VertexId {
        self.po.last()
    }
}

/// Outcome (1) after the recursive call, rebuilt so that `p4` runs from
/// `u` on `p1` to `x`.
struct Ctx<'a> {
    g: &'a BipartiteGraph,
    in_x: &'a [bool],
    side_a: Color,
    v: VertexId,
    a: VertexId,
    p1: Path,
    p2: Path,
    p3: Path,
    u: VertexId,
    x: VertexId,
    p4: Path,
}

impl Ctx<'_> {
    fn legs_for(&self, y: VertexId) -> Option<Legs> {
        if y == self.v {
            None
        } else if self.p2.contains(y) {
            Some(Legs { py: self.p2.clone(), po: self.p3.clone(), flip: false })
        } else if self.p3.contains(y) {
            Some(Legs { py: self.p3.clone(), po: self.p2.clone(), flip: true })
        } else {
            None
        }
    }

    fn legs(&self) -> [P; 3] {
        [Some(self.p1.clone()), Some(self.p2.clone()), Some(self.p3.clone())]
    }

    fn with_p4(&self, p4: P) -> [P; 4] {
        let [p1, p2, p3] = self.legs();
        [p1, p2, p3, p4]
    }

    /// Recursive outcome (B): `q5 = u2..s2..x2` and `q6 = s2..t2`.
    fn after_b(&self, e2: &ExtensionB, out: &mut Cands) {
        let (u2, s2, x2, t2) = (e2.u, e2.s, e2.x, e2.t);
        let (q5, q6) = (&e2.p4, &e2.p5);
        let (v, u, x, a) = (self.v, self.u, self.x, self.a);
        let (p1, p4) = (&self.p1, &self.p4);
        if self.in_x[x2.ix()] {
            out.push((sa(v, u, x2, self.with_p4(join!(sub(p4, u, u2), q5))), "nested.b.end_in_X"));
        }
        if self.in_x[t2.ix()] {
            let p = join!(sub(p4, u, u2), sub(q5, u2, s2), q6);
            out.push((sa(v, u, t2, self.with_p4(p)), "nested.b.branch_in_X"));
        }
        let Some(l) = self.legs_for(x2) else { return };
        let (py, po) = (&l.py, &l.po);
        let (y, w) = (x2, t2);
        let p5 = sub(q5, u2, s2);
        let detour = join!(q6.reversed(), sub(q5, s2, y), sub(py, y, l.end_y()));
        let iu = pos(p1, u).unwrap();
        if py.contains(w) {
            let npy = if pos(py, w) > pos(py, y) {
                join!(sub(py, v, y), sub(q5, y, s2), q6, sub(py, w, l.end_y()))
            } else {
                join!(sub(py, v, w), q6.reversed(), sub(q5, s2, y), sub(py, y, l.end_y()))
            };
            let (n2, n3) = l.out(npy, Some(po.clone()));
            let paths = [Some(p1.clone()), n2, n3, Some(p4.clone()), p5];
            out.push((sb(v, u2, u, s2, x, paths), "nested.b.branch_on_same_leg"));
        } else if strictly_between(p1, w, 0, iu) {
            let (n2, n3) = l.out(detour, join!(sub(p1, w, v), po));
            let paths = [sub(p1, w, a), n2, n3, Some(p4.clone()), p5];
            out.push((sb(w, u2, u, s2, x, paths), "nested.b.branch_near_center"));
        } else if po.contains(w) && w != v {
            let (n2, n3) = l.out(detour, sub(po, w, l.end_o()));
            let paths = [join!(sub(po, w, v), p1), n2, n3, Some(p4.clone()), p5];
            out.push((sb(w, u2, u, s2, x, paths), "nested.b.branch_on_other_leg"));
        } else if matches!(pos(p1, w), Some(i) if i > iu) {
            self.b_fan(e2, &l, out);
        }
    }

    /// Recursive outcome (B) whose branch returns to `P1` beyond `u`: a
    /// vertex `r` between `v` and `y` escapes, and its landing spot decides
    /// the outcome.
    fn b_fan(&self, e2: &ExtensionB, l: &Legs, out: &mut Cands) {
        let g = self.g;
        let (u2, s2, y, w) = (e2.u, e2.s, e2.x, e2.t);
        let (q5, q6) = (&e2.p4, &e2.p5);
        let (v, u, x, a) = (self.v, self.u, self.x, self.a);
        let (p1, p4, py, po) = (&self.p1, &self.p4, &l.py, &l.po);
        let (iy, iu, iw) = (pos(py, y).unwrap(), pos(p1, u).unwrap(), pos(p1, w).unwrap());
        let Some(beyond) = sub(py, y, l.end_y()) else { return };
        let rest = mask_of(
            g.n(),
            &[&listed(self.in_x), p1.vertices(), po.vertices(), beyond.vertices(), p4.vertices(), q5.vertices(), q6.vertices()],
        );
        for &r in &py.vertices()[1..iy] {
            if g.color(r) == self.side_a {
                continue;
            }
            let Some([f1, f2, p7]) = escape_fan(g, r, v, y, &rest) else { continue };
            let Some(npy) = join!(f1.reversed(), &f2, &beyond) else { continue };
            let z = p7.last();
            let rot_p1 = join!(sub(q5, y, s2), q6, sub(p1, w, a));
            let rot_py = sub(&npy, y, l.end_y());
            let rot_p4 = join!(sub(q5, s2, u2), sub(p4, u2, x));
            let keep = l.out(Some(npy.clone()), Some(po.clone()));
            if self.in_x[z.ix()] {
                let paths = [Some(p1.clone()), keep.0, keep.1, join!(sub(p4, u, u2), q5), Some(p7.clone())];
                out.push((sc(v, y, u, r, z, paths, l.on_p3(true)), "fan.lands_in_X"));
            } else if matches!(pos(p1, z), Some(i) if i > 0 && i <= iu) {
                let (n2, n3) = l.out(rot_py, join!(sub(&npy, y, v), po));
                let p5 = join!(sub(p4, u2, u), sub(p1, u, z), p7.reversed());
                out.push((sb(y, u2, s2, r, x, [rot_p1, n2, n3, rot_p4, p5]), "fan.lands_near_center"));
            } else if po.contains(z) && z != v {
                let (n2, n3) = l.out(rot_py, join!(sub(&npy, y, r), &p7, sub(po, z, l.end_o())));
                let p5 = join!(sub(p4, u2, u), sub(p1, u, v), sub(&npy, v, r));
                out.push((sb(y, u2, s2, r, x, [rot_p1, n2, n3, rot_p4, p5]), "fan.lands_on_other_leg"));
            } else if strictly_between(p1, z, iu, iw) {
                let (n2, n3) = l.out(rot_py, join!(sub(&npy, y, r), &p7, sub(p1, z, v), po));
                out.push((sb(y, u2, s2, u, x, [rot_p1, n2, n3, rot_p4, sub(p4, u2, u)]), "fan.lands_between_u_and_branch"));
            } else if matches!(pos(p1, z), Some(i) if i > iw) {
                let np1 = join!(sub(&npy, y, r), &p7, sub(p1, z, a));
                let (n2, n3) = l.out(rot_py, join!(sub(q5, y, s2), q6, sub(p1, w, v), po));
                let paths = [np1, n2, n3, sub(&npy, r, v), Some(p4.clone())];
                out.push((sc(y, v, r, u, x, paths, l.on_p3(false)), "fan.lands_beyond_branch"));
            } else if matches!(pos(&npy, z), Some(i) if i > pos(&npy, y).unwrap()) {
                let (n2, n3) = l.out(join!(sub(&npy, v, r), &p7, sub(&npy, z, l.end_y())), Some(po.clone()));
                let p5 = join!(sub(q5, u2, y), sub(&npy, y, r));
                out.push((sb(v, u2, u, r, x, [Some(p1.clone()), n2, n3, Some(p4.clone()), p5]), "fan.lands_beyond_y"));
            } else if strictly_between(p4, z, 0, pos(p4, u2).unwrap()) {
                let (n2, n3) = l.out(rot_py, join!(sub(&npy, y, v), po));
                let p5 = join!(sub(p4, u2, z), p7.reversed());
                out.push((sb(y, u2, s2, r, x, [rot_p1, n2, n3, rot_p4, p5]), "fan.lands_on_P4_near"));
            } else if strictly_between(p4, z, pos(p4, u2).unwrap(), p4.len()) {
                let paths = [Some(p1.clone()), keep.0, keep.1, join!(sub(p4, u, u2), q5), join!(&p7, sub(p4, z, x))];
                out.push((sc(v, y, u, r, x, paths, l.on_p3(true)), "fan.lands_on_P4_far"));
            } else if q5.contains(z) {
                let p5 = join!(sub(q5, u2, z), p7.reversed());
                out.push((sb(v, u2, u, r, x, [Some(p1.clone()), keep.0, keep.1, Some(p4.clone()), p5]), "fan.lands_on_branch"));
            } else if q6.contains(z) {
                let p5 = join!(sub(q5, u2, s2), sub(q6, s2, z), p7.reversed());
                out.push((sb(v, u2, u, r, x, [Some(p1.clone()), keep.0, keep.1, Some(p4.clone()), p5]), "fan.lands_on_spur"));
            }
        }
    }

    /// Recursive outcome (C): `q4 = u2..s2`, `q5 = t2..x2`, with `t2, s2`
    /// on `P1` beyond `u` (far) or between `v` and `u` (near).
    fn after_c(&self, e2: &Extension2, out: &mut Cands) {
        let (u2, s2, t2, x2) = (e2.u, e2.s, e2.t, e2.x);
        let (q4, q5) = (&e2.p4, &e2.p5);
        let (v, u, x, a) = (self.v, self.u, self.x, self.a);
        let (p1, p4) = (&self.p1, &self.p4);
        let in_x = self.in_x[x2.ix()];
        let class_b = self.g.color(x2) != self.side_a;
        let [_, p2, p3] = self.legs();
        if !e2.on_p3 {
            if in_x && class_b {
                let paths = [Some(p1.clone()), p2, p3, Some(p4.clone()), Some(q4.clone()), Some(q5.clone())];
                out.push((sd(v, u2, t2, u, s2, x, x2, paths), "nested.c.far.end_in_X_B"));
            } else if in_x {
                let np1 = join!(sub(p1, v, u), sub(p4, u, u2), q4, sub(p1, s2, a));
                out.push((sa(v, u, x2, [np1, p2, p3, join!(sub(p1, u, t2), q5)]), "nested.c.far.end_in_X_A"));
            } else if let Some(l) = self.legs_for(x2) {
                let (n2, n3) = l.out(join!(q5, sub(&l.py, x2, l.end_y())), join!(sub(p1, t2, v), &l.po));
                let paths = [sub(p1, t2, a), n2, n3, join!(q4.reversed(), sub(p4, u2, x)), sub(p4, u2, u)];
                out.push((sb(t2, u2, s2, u, x, paths), "nested.c.far.end_on_leg"));
            }
        } else if in_x && class_b {
            let paths = [Some(p1.clone()), p2, p3, join!(q4.reversed(), sub(p4, u2, x)), sub(p4, u2, u), Some(q5.clone())];
            out.push((sd(v, u2, t2, s2, u, x, x2, paths), "nested.c.near.end_in_X_B"));
        } else if in_x {
            let np1 = join!(sub(p1, v, s2), q4.reversed(), sub(p4, u2, u), sub(p1, u, a));
            out.push((sa(v, s2, x2, [np1, p2, p3, join!(sub(p1, s2, t2), q5)]), "nested.c.near.end_in_X_A"));
        } else if let Some(l) = self.legs_for(x2) {
            let (n2, n3) = l.out(join!(q5, sub(&l.py, x2, l.end_y())), join!(sub(p1, t2, v), &l.po));
            let paths = [sub(p1, t2, a), n2, n3, Some(p4.clone()), Some(q4.clone())];
            out.push((sb(t2, u2, u, s2, x, paths), "nested.c.near.end_on_leg"));
        }
    }

    /// Recursive outcome (D): `p4 = u..u2..w2..t2..x`, `q4 = u2..s2..x2`,
    /// `q5 = s2..t2`, `q6 = w2..y2`.
    fn after_d(&self, e2: &ExtensionD, out: &mut Cands) {
        let (u2, w2, t2, s2, x2, y2) = (e2.u, e2.w, e2.t, e2.s, e2.x, e2.y);
        let (q4, q5, q6) = (&e2.p4, &e2.p5, &e2.p6);
        let (v, u, x) = (self.v, self.u, self.x);
        let (p1, p4) = (&self.p1, &self.p4);
        if self.in_x[x2.ix()] {
            out.push((sa(v, u, x2, self.with_p4(join!(sub(p4, u, u2), q4))), "nested.d.first_in_X"));
        }
        if self.in_x[y2.ix()] {
            out.push((sa(v, u, y2, self.with_p4(join!(sub(p4, u, w2), q6))), "nested.d.second_in_X"));
        }
        if x2 == y2 {
            return;
        }
        let Some(l) = self.legs_for(x2) else { return };
        let (py, po) = (&l.py, &l.po);
        let near = sub(p4, u, u2);
        if let (Some(iy), Some(ix)) = (pos(py, y2), pos(py, x2)) {
            if iy < ix {
                let npy = join!(sub(py, v, y2), q6.reversed(), sub(p4, w2, u2), q4, sub(py, x2, l.end_y()));
                let (n2, n3) = l.out(npy, Some(po.clone()));
                let paths = [Some(p1.clone()), n2, n3, near, sub(p4, w2, x)];
                out.push((sc(v, u2, u, w2, x, paths, l.on_p3(true)), "nested.d.both_on_leg"));
            } else {
                let npy = join!(sub(py, v, x2), q4.reversed(), sub(p4, u2, w2), q6, sub(py, y2, l.end_y()));
                let (n2, n3) = l.out(npy, Some(po.clone()));
                let paths = [Some(p1.clone()), n2, n3, near, join!(q5, sub(p4, t2, x))];
                out.push((sc(v, u2, u, s2, x, paths, l.on_p3(true)), "nested.d.both_on_leg_reversed"));
            }
        } else if po.contains(y2) && y2 != v {
            let npo = join!(sub(q4, x2, u2), sub(p4, u2, w2), q6, sub(po, y2, l.end_o()));
            let (n2, n3) = l.out(sub(py, x2, l.end_y()), npo);
            let paths = [join!(sub(py, x2, v), p1), n2, n3, near, join!(q5, sub(p4, t2, x))];
            out.push((sc(x2, u2, u, s2, x, paths, l.on_p3(false)), "nested.d.split_legs"));
        }
    }
}
