//! Outcome (1) or (2) for a tripod and target set.
//!
//! The engine keeps the current tripod and its optimal augmenting
//! sequence. Short sequences with a high index are read off directly.
//! Otherwise a case transformation yields either a finished extension or a
//! new tripod (same ends) whose optimal sequence is strictly better; some
//! cases first solve a smaller instance with an enlarged target set.
//! Every produced object is validated. When no transformation applies, the
//! exhaustive shape search takes over and the fallback is counted.

use super::sequence::{optimal_sequence, AugmentingSequence, Layout};
use super::util::{escape_fan, join, listed, mask_of, pos, strictly_between, sub};
use super::{check_inputs, AugmentError, AugmentStats, Extension, Extension1, Extension2, TriPod};
use crate::connectivity::fan_to_groups;
use crate::graph::{BipartiteGraph, VertexId};
use crate::oracle::{search_extensions_bruteforce, validate_extension, Shape};
use crate::path::Path;

pub(crate) enum Cand {
    Done(Extension),
    Next(TriPod),
}

#[derive(Default)]
pub(crate) struct Cands {
    list: Vec<(Cand, &'static str)>,
    failed: Vec<&'static str>,
}

impl Cands {
    fn done(&mut self, tag: &'static str, e: Option<Extension>) {
        match e {
            Some(e) => self.list.push((Cand::Done(e), tag)),
            None => self.failed.push(tag),
        }
    }

    fn next(&mut self, tag: &'static str, p1: Option<Path>, p2: Option<Path>, p3: Option<Path>) {
        match (p1, p2, p3) {
            (Some(p1), Some(p2), Some(p3)) => self.list.push((Cand::Next(TriPod::new(p1, p2, p3)), tag)),
            _ => self.failed.push(tag),
        }
    }

    /// Takes candidates produced on the tripod with `b` and `c` exchanged.
    fn absorb_swapped(&mut self, other: Cands) {
        self.failed.extend(other.failed);
        for (c, tag) in other.list {
            let c = match c {
                Cand::Next(t) => Cand::Next(t.swapped()),
                Cand::Done(Extension::One(mut e)) => {
                    std::mem::swap(&mut e.p2, &mut e.p3);
                    Cand::Done(Extension::One(e))
                }
                Cand::Done(Extension::Two(mut e)) => {
                    std::mem::swap(&mut e.p2, &mut e.p3);
                    e.on_p3 = !e.on_p3;
                    Cand::Done(Extension::Two(e))
                }
            };
            self.list.push((c, tag));
        }
    }
}

fn ext1(
    v: VertexId,
    u: VertexId,
    x: VertexId,
    p1: Option<Path>,
    p2: Option<Path>,
    p3: Option<Path>,
    p4: Option<Path>,
) -> Option<Extension> {
    Some(Extension::One(Extension1 { v, u, x, p1: p1?, p2: p2?, p3: p3?, p4: p4? }))
}

#[allow(clippy::too_many_arguments)]
fn ext2(
    v: VertexId,
    s: VertexId,
    u: VertexId,
    t: VertexId,
    x: VertexId,
    paths: [Option<Path>; 5],
    on_p3: bool,
) -> Option<Extension> {
    let [p1, p2, p3, p4, p5] = paths;
    Some(Extension::Two(Extension2 { v, s, u, t, x, p1: p1?, p2: p2?, p3: p3?, p4: p4?, p5: p5?, on_p3 }))
}

/// Outcome (1) or (2) of the three-path extension for tripod `t` and
/// target set `x`. The replacement paths may differ from the input.
pub fn three_path_extend(g: &BipartiteGraph, t: &TriPod, x: &[VertexId]) -> Result<Extension, AugmentError> {
    three_path_extend_traced(g, t, x).map(|(e, _)| e)
}

/// As [`three_path_extend`], also reporting how the result was obtained.
pub fn three_path_extend_traced(
    g: &BipartiteGraph,
    t: &TriPod,
    x: &[VertexId],
) -> Result<(Extension, AugmentStats), AugmentError> {
    let mask = check_inputs(g, t, x)?;
    let mut stats = AugmentStats::default();
    let e = three_path_extend_with(g, t, &mask, &mut stats)?;
    Ok((e, stats))
}

pub(crate) fn three_path_extend_with(
    g: &BipartiteGraph,
    t: &TriPod,
    in_x: &[bool],
    stats: &mut AugmentStats,
) -> Result<Extension, AugmentError> {
    stats.calls += 1;
    let xs = listed(in_x);
    let limit = 4 * g.n() * g.n() + 8;
    let mut cur = reroot(g, t, in_x, stats);
    'outer: for _ in 0..limit {
        let lay = Layout::new(g, &cur, in_x.to_vec());
        let Some(seq) = optimal_sequence(g, &cur, &lay) else { break };
        let mut cands = Cands::default();
        cases(g, &cur, in_x, &seq, stats, &mut cands);
        for tag in cands.failed.drain(..) {
            stats.fail(tag);
        }
        for (c, tag) in cands.list {
            match c {
                Cand::Done(e) => {
                    if validate_extension(g, t, &xs, &e.clone().into()).is_ok() {
                        return Ok(e);
                    }
                    stats.fail(tag);
                }
                Cand::Next(nt) => {
                    if improves(g, &cur, &nt, in_x, &seq) {
                        cur = nt;
                        stats.case_steps += 1;
                        continue 'outer;
                    }
                    stats.fail(tag);
                }
            }
        }
        break;
    }
    stats.fallbacks += 1;
    direct(g, t, &xs)
}

/// The optimal choice ranges over all tripods with the given ends, and a
/// particular tripod may admit no augmenting sequence at all. In that case
/// look for another center with a fan to `a`, `b`, `c` avoiding `X` that
/// does admit one.
fn reroot(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], stats: &mut AugmentStats) -> TriPod {
    if optimal_sequence(g, t, &Layout::new(g, t, in_x.to_vec())).is_some() {
        return t.clone();
    }
    let (a, b, c) = (t.a(), t.b(), t.c());
    let groups = [vec![a], vec![b], vec![c]];
    for w in g.vertices() {
        if w == a || in_x[w.ix()] || g.color(w) != g.color(t.v()) {
            continue;
        }
        let Some(legs) = fan_to_groups(g, w, &groups, &|z| !in_x[z.ix()]) else { continue };
        let [p1, p2, p3]: [Path; 3] = legs.try_into().expect("one path per group");
        let nt = TriPod::new(p1, p2, p3);
        if nt.check(g).is_ok() && optimal_sequence(g, &nt, &Layout::new(g, &nt, in_x.to_vec())).is_some() {
            stats.case_steps += 1;
            return nt;
        }
    }
    stats.fail("reroot");
    t.clone()
}

fn direct(g: &BipartiteGraph, t: &TriPod, xs: &[VertexId]) -> Result<Extension, AugmentError> {
    use crate::augment::AnyExtension;
    match search_extensions_bruteforce(g, t, xs, &[Shape::One, Shape::Two]) {
        Some(AnyExtension::One(e)) => Ok(Extension::One(e)),
        Some(AnyExtension::Two(e)) => Ok(Extension::Two(e)),
        _ => Err(AugmentError::Unsatisfiable),
    }
}

/// A replacement tripod is accepted when it is valid, keeps the ends, avoids
/// `X` and admits a strictly better augmenting sequence.
fn improves(g: &BipartiteGraph, cur: &TriPod, nt: &TriPod, in_x: &[bool], seq: &AugmentingSequence) -> bool {
    if nt.check(g).is_err() || (nt.a(), nt.b(), nt.c()) != (cur.a(), cur.b(), cur.c()) {
        return false;
    }
    if nt.vertices().iter().any(|v| in_x[v.ix()]) {
        return false;
    }
    let lay = Layout::new(g, nt, in_x.to_vec());
    matches!(optimal_sequence(g, nt, &lay), Some(s) if s.measure() < seq.measure())
}

fn cases(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, stats: &mut AugmentStats, out: &mut Cands) {
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    if seq.len() == 1 {
        if seq.index >= 2 {
            out.done("len1.direct", ext1(t.v(), v1, v2, Some(t.p1.clone()), Some(t.p2.clone()), Some(t.p3.clone()), Some(q1.clone())));
        } else {
            len1_index1(g, t, in_x, seq, stats, out);
        }
        return;
    }
    if t.p1.contains(v2) {
        shortcut(t, seq, out);
    } else if t.p2.contains(v2) {
        on_second_leg(g, t, in_x, seq, stats, out);
    } else {
        let mut sw = Cands::default();
        on_second_leg(g, &t.swapped(), in_x, seq, stats, &mut sw);
        out.absorb_swapped(sw);
    }
}

/// `Q1` returns to `P1`: route `P1` through `Q1` and free the skipped stretch.
fn shortcut(t: &TriPod, seq: &AugmentingSequence, out: &mut Cands) {
    let (v, a) = (t.v(), t.a());
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    let p1 = &t.p1;
    let np1 = if pos(p1, v1) < pos(p1, v2) {
        join!(sub(p1, v, v1), q1, sub(p1, v2, a))
    } else {
        join!(sub(p1, v, v2), q1.reversed(), sub(p1, v1, a))
    };
    out.next("shortcut.back_to_P1", np1, Some(t.p2.clone()), Some(t.p3.clone()));
}

fn len1_index1(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, stats: &mut AugmentStats, out: &mut Cands) {
    let (v, a) = (t.v(), t.a());
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    let (Some(head), Some(tail)) = (sub(&t.p1, v, v1), sub(&t.p1, v1, a)) else { return };
    let subt = TriPod::new(head, t.p2.clone(), t.p3.clone());
    let mut xs = mask_of(g.n(), &[&listed(in_x), tail.vertices(), q1.vertices()]);
    xs[v1.ix()] = false;
    let Ok(rec) = three_path_extend_with(g, &subt, &xs, stats) else {
        out.failed.push("len1.index1.recursion");
        return;
    };
    let r = rec.replacement();
    let vv = r.v();
    let (r1, r2, r3) = (&r.p1, &r.p2, &r.p3);
    let p1full = join!(r1, &tail);
    match rec {
        Extension::One(e) => {
            let (u, x) = (e.u, e.x);
            if in_x[x.ix()] {
                out.done("len1.index1.one.x_in_X", ext1(vv, u, x, p1full, Some(r2.clone()), Some(r3.clone()), Some(e.p4)));
            } else if q1.contains(x) {
                let p4 = join!(&e.p4, sub(q1, x, v2));
                out.done("len1.index1.one.x_on_Q1", ext1(vv, u, v2, p1full, Some(r2.clone()), Some(r3.clone()), p4));
            } else if tail.contains(x) {
                let np1 = join!(sub(r1, vv, u), &e.p4, sub(&tail, x, a));
                let p4 = join!(sub(r1, u, v1), q1);
                out.done("len1.index1.one.x_beyond_v1", ext1(vv, u, v2, np1, Some(r2.clone()), Some(r3.clone()), p4));
            }
        }
        Extension::Two(e) => {
            let (u, s, tt, x, on) = (e.u, e.s, e.t, e.x, e.on_p3);
            let (rt, ro) = if on { (r3, r2) } else { (r2, r3) };
            if in_x[x.ix()] {
                let paths = [p1full, Some(r2.clone()), Some(r3.clone()), Some(e.p4), Some(e.p5)];
                out.done("len1.index1.two.x_in_X", ext2(vv, s, u, tt, x, paths, on));
            } else if q1.contains(x) {
                let p5 = join!(&e.p5, sub(q1, x, v2));
                let paths = [p1full, Some(r2.clone()), Some(r3.clone()), Some(e.p4), p5];
                out.done("len1.index1.two.x_on_Q1", ext2(vv, s, u, tt, v2, paths, on));
            } else if tail.contains(x) {
                let np1 = join!(sub(rt, vv, tt), &e.p5, sub(&tail, x, a));
                let npt = join!(sub(r1, vv, u), &e.p4, sub(rt, s, rt.last()));
                let np4 = sub(rt, tt, s);
                let np5 = join!(sub(r1, u, v1), q1);
                let (np2, np3) = if on { (Some(ro.clone()), npt) } else { (npt, Some(ro.clone())) };
                out.done("len1.index1.two.x_beyond_v1", ext2(vv, s, tt, u, v2, [np1, np2, np3, np4, np5], on));
            }
        }
    }
}

/// Cases with length at least two where `v2` lies on `P2`.
fn on_second_leg(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, stats: &mut AugmentStats, out: &mut Cands) {
    match seq.index {
        1 => index1(g, t, in_x, seq, out),
        2 => index2(g, t, in_x, seq, stats, out),
        3 => index3(g, t, in_x, seq, stats, out),
        _ if seq.len() == 2 => {
            let (q1, q2) = (&seq.paths[0], &seq.paths[1]);
            let paths = [Some(t.p1.clone()), Some(t.p2.clone()), Some(t.p3.clone()), Some(q1.clone()), Some(q2.clone())];
            out.done("len2.direct", ext2(t.v(), q1.last(), q1.first(), q2.first(), q2.last(), paths, false));
        }
        _ => long(t, seq, out),
    }
}

fn later_paths(seq: &AugmentingSequence) -> Vec<VertexId> {
    seq.paths[1..].iter().flat_map(|q| q.vertices().iter().copied()).collect()
}

/// `v1` has the wrong color: reroute `P1` around a vertex `u` beyond `v1`
/// that escapes to the rest of the structure.
fn index1(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, out: &mut Cands) {
    let (v, a, b) = (t.v(), t.a(), t.b());
    let (p1, p2, p3) = (&t.p1, &t.p2, &t.p3);
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    let v3 = seq.v(3);
    let side_a = g.color(v);
    let all_q: Vec<VertexId> = seq.paths.iter().flat_map(|q| q.vertices().iter().copied()).collect();
    let Some(head) = sub(p1, v, v1) else { return };
    let rest = mask_of(g.n(), &[&listed(in_x), &all_q, head.vertices(), p2.vertices(), p3.vertices()]);
    let (i1, ia) = (pos(p1, v1).unwrap(), p1.len());
    for &u in &p1.vertices()[i1 + 1..ia] {
        if g.color(u) == side_a {
            continue;
        }
        let Some([r1, r2, r3]) = escape_fan(g, u, a, v1, &rest) else { continue };
        let r = r3.last();
        let p1n = join!(&head, r2.reversed(), &r1);
        if head.contains(r) {
            let np1 = join!(sub(p1, v, r), r3.reversed(), &r1);
            out.next("index1.escape_to_P1", np1, Some(p2.clone()), Some(p3.clone()));
        } else if matches!(pos(p2, r), Some(i) if i > 0 && i <= pos(p2, v3).unwrap_or(0)) || (p3.contains(r) && r != v) {
            let np1 = join!(r2.reversed(), &r1);
            let np2 = join!(q1, sub(p2, v2, b));
            let np3 = join!(sub(p1, v1, v), p3);
            out.next("index1.escape_near_center", np1, np2, np3);
        }
        out.next("index1.rerouted", p1n, Some(p2.clone()), Some(p3.clone()));
    }
}

/// `v1` and `v2` both have class `B`: solve the tripod centered at `v1`
/// with legs `Q1` and the two halves of `P1`.
fn index2(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, stats: &mut AugmentStats, out: &mut Cands) {
    let (v, a, b, c) = (t.v(), t.a(), t.b(), t.c());
    let (p1, p2, p3) = (&t.p1, &t.p2, &t.p3);
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    let (Some(l2), Some(l3)) = (sub(p1, v1, a), sub(p1, v1, v)) else { return };
    let subt = TriPod::new(q1.clone(), l2, l3);
    let mut xs = mask_of(g.n(), &[&listed(in_x), p2.vertices(), p3.vertices(), &later_paths(seq)]);
    xs[v.ix()] = false;
    for w in subt.vertices() {
        xs[w.ix()] = false;
    }
    let Ok(rec) = three_path_extend_with(g, &subt, &xs, stats) else {
        out.failed.push("index2.recursion");
        return;
    };
    let r = rec.replacement();
    let vv = r.v();
    let (r1, r2, r3) = (&r.p1, &r.p2, &r.p3);
    let p1r = join!(r3.reversed(), r2);
    let ip2 = pos(p2, v2).unwrap();
    let on_p2 = |x: VertexId| pos(p2, x);
    match rec {
        Extension::One(e) => {
            let (u, x) = (e.u, e.x);
            if in_x[x.ix()] {
                let p4 = join!(sub(r1, vv, u), &e.p4);
                out.done("index2.one.x_in_X", ext1(v, vv, x, p1r.clone(), Some(p2.clone()), Some(p3.clone()), p4));
            } else if matches!(on_p2(x), Some(i) if i > ip2) {
                let np2 = join!(sub(p2, v, v2), sub(r1, v2, u), &e.p4, sub(p2, x, b));
                out.next("index2.one.x_beyond_v2", p1r.clone(), np2, Some(p3.clone()));
            } else if matches!(on_p2(x), Some(i) if i > 0 && i < ip2) {
                let np2 = join!(sub(p2, v, x), e.p4.reversed(), sub(r1, u, v2), sub(p2, v2, b));
                out.next("index2.one.x_before_v2", p1r.clone(), np2, Some(p3.clone()));
            } else if p3.contains(x) && x != v {
                let np1 = join!(sub(r1, u, vv), r2);
                let np2 = join!(sub(r1, u, v2), sub(p2, v2, b));
                let np3 = join!(&e.p4, sub(p3, x, c));
                out.next("index2.one.x_on_P3", np1, np2, np3);
            }
        }
        Extension::Two(e) => {
            let (u, s, tt, x) = (e.u, e.s, e.t, e.x);
            if e.on_p3 {
                // t and s lie between the new center and v.
                if in_x[x.ix()] {
                    let np1 = join!(p1r.as_ref().and_then(|p| sub(p, v, s)), e.p4.reversed(), sub(r1, u, vv), r2);
                    let p4 = join!(sub(r3, s, tt), &e.p5);
                    out.done("index2.two.near.x_in_X", ext1(v, s, x, np1, Some(p2.clone()), Some(p3.clone()), p4));
                } else if matches!(on_p2(x), Some(i) if i > ip2) {
                    let np1 = join!(sub(r3, tt, vv), r2);
                    let np2 = join!(&e.p5, sub(p2, x, b));
                    let np3 = join!(sub(r3, tt, v), p3);
                    out.next("index2.two.near.x_beyond_v2", np1, np2, np3);
                } else if matches!(on_p2(x), Some(i) if i > 0 && i < ip2) {
                    let np1 = join!(sub(r1, u, vv), r2);
                    let np2 = join!(sub(r1, u, v2), sub(p2, v2, b));
                    let np3 = join!(&e.p4, sub(r3, s, v), p3);
                    out.next("index2.two.near.x_before_v2", np1, np2, np3);
                } else if p3.contains(x) && x != v {
                    let np1 = join!(sub(r3, tt, vv), r2);
                    let np2 = join!(sub(r3, tt, s), e.p4.reversed(), sub(r1, u, v2), sub(p2, v2, b));
                    let np3 = join!(&e.p5, sub(p3, x, c));
                    out.next("index2.two.near.x_on_P3", np1, np2, np3);
                }
            } else if in_x[x.ix()] {
                let np1 = join!(r3.reversed(), sub(r1, vv, u), &e.p4, sub(r2, s, a));
                let p4 = join!(sub(r2, s, tt), &e.p5);
                out.done("index2.two.far.x_in_X", ext1(v, s, x, np1, Some(p2.clone()), Some(p3.clone()), p4));
            } else if matches!(on_p2(x), Some(i) if i > ip2) {
                // t and s lie between the new center and a.
                let np2 = join!(&e.p5, sub(p2, x, b));
                let np3 = join!(sub(r2, tt, vv), r3, p3);
                out.next("index2.two.far.x_beyond_v2", sub(r2, tt, a), np2, np3);
            } else if matches!(on_p2(x), Some(i) if i > 0 && i < ip2) {
                let np1 = join!(&e.p4, sub(r2, s, a));
                let np2 = join!(sub(r1, u, v2), sub(p2, v2, b));
                let np3 = join!(sub(r1, u, vv), r3, p3);
                out.next("index2.two.far.x_before_v2", np1, np2, np3);
            } else if p3.contains(x) && x != v {
                let np2 = join!(sub(r2, tt, vv), r1, sub(p2, v2, b));
                let np3 = join!(&e.p5, sub(p3, x, c));
                out.next("index2.two.far.x_on_P3", sub(r2, tt, a), np2, np3);
            }
        }
    }
    out.next("index2.rebuilt", p1r, Some(p2.clone()), Some(p3.clone()));
}

/// `v1` in `B`, `v2` and `v3` in `A`: solve the tripod centered at `v2`
/// with legs `v2P2v3`, `Q1` reversed and `v2P2b`.
fn index3(g: &BipartiteGraph, t: &TriPod, in_x: &[bool], seq: &AugmentingSequence, stats: &mut AugmentStats, out: &mut Cands) {
    let (v, a, b, c) = (t.v(), t.a(), t.b(), t.c());
    let (p1, p2, p3) = (&t.p1, &t.p2, &t.p3);
    let q1 = &seq.paths[0];
    let (v1, v2) = q1.ends();
    let v3 = seq.v(3);
    let (Some(l1), Some(l3), Some(near)) = (sub(p2, v2, v3), sub(p2, v2, b), sub(p2, v, v3)) else { return };
    let subt = TriPod::new(l1, q1.reversed(), l3);
    let mut xs = mask_of(g.n(), &[&listed(in_x), p1.vertices(), near.vertices(), p3.vertices(), &later_paths(seq)]);
    for w in subt.vertices() {
        xs[w.ix()] = false;
    }
    let Ok(rec) = three_path_extend_with(g, &subt, &xs, stats) else {
        out.failed.push("index3.recursion");
        return;
    };
    let r = rec.replacement();
    let vv = r.v();
    let (r1, r2, r3) = (&r.p1, &r.p2, &r.p3);
    let p2r = join!(&near, r1.reversed(), r3);
    let q1r = r2.reversed();
    let iv1 = pos(p1, v1).unwrap();
    let iv3 = pos(p2, v3).unwrap();
    match rec {
        Extension::One(e) => {
            let (u, x) = (e.u, e.x);
            if in_x[x.ix()] {
                let paths = [Some(p1.clone()), p2r.clone(), Some(p3.clone()), Some(q1r), Some(e.p4)];
                out.done("index3.one.x_in_X", ext2(v, vv, v1, u, x, paths, false));
            } else if strictly_between(p2, x, 0, iv3) {
                let np2 = join!(sub(p2, v, x), e.p4.reversed(), sub(r1, u, vv), r3);
                out.next("index3.one.x_near_P2", Some(p1.clone()), np2, Some(p3.clone()));
            } else if x == v || p3.contains(x) {
                let np1 = join!(r2, sub(p1, v1, a));
                let np3 = join!(sub(r1, vv, u), &e.p4, sub(p3, x, c));
                out.next("index3.one.x_on_P3", np1, Some(r3.clone()), np3);
            } else if matches!(pos(p1, x), Some(i) if i > iv1) {
                let np1 = join!(sub(r1, vv, u), &e.p4, sub(p1, x, a));
                let np3 = join!(r2, sub(p1, v1, v), p3);
                out.next("index3.one.x_beyond_v1", np1, Some(r3.clone()), np3);
            } else if strictly_between(p1, x, 0, iv1) {
                let np1 = join!(r2, sub(p1, v1, a));
                let np3 = join!(sub(r1, vv, u), &e.p4, sub(p1, x, v), p3);
                out.next("index3.one.x_before_v1", np1, Some(r3.clone()), np3);
            }
        }
        Extension::Two(e) if !e.on_p3 => {
            let (u, s, tt, x) = (e.u, e.s, e.t, e.x);
            let tail = if x == v {
                Some(p3.clone())
            } else if p3.contains(x) {
                sub(p3, x, c)
            } else if strictly_between(p2, x, 0, iv3) {
                join!(sub(p2, x, v), p3)
            } else if strictly_between(p1, x, 0, iv1) {
                join!(sub(p1, x, v), p3)
            } else {
                None
            };
            if in_x[x.ix()] {
                let p4 = join!(sub(r2, v1, tt), &e.p5);
                out.done("index3.two.x_in_X", ext1(v, v1, x, Some(p1.clone()), p2r.clone(), Some(p3.clone()), p4));
            } else if tail.is_some() {
                let np1 = join!(sub(r1, vv, u), &e.p4, sub(r2, s, v1), sub(p1, v1, a));
                let np3 = join!(sub(r2, vv, tt), &e.p5, tail);
                out.next("index3.two.x_toward_center", np1, Some(r3.clone()), np3);
            } else if matches!(pos(p1, x), Some(i) if i > iv1) {
                let np1 = join!(sub(r2, vv, tt), &e.p5, sub(p1, x, a));
                let np3 = join!(sub(r1, vv, u), &e.p4, sub(r2, s, v1), sub(p1, v1, v), p3);
                out.next("index3.two.x_beyond_v1", np1, Some(r3.clone()), np3);
            }
        }
        Extension::Two(e) => {
            // The shortcut lands beyond the new center: route P2 through it
            // and continue Q1 along the freed stretch.
            let (u, s, tt, x) = (e.u, e.s, e.t, e.x);
            let np2 = join!(&near, sub(r1, v3, u), &e.p4, sub(r3, s, b));
            let q = join!(&q1r, sub(r3, vv, tt), &e.p5);
            if in_x[x.ix()] {
                out.done("index3.two.far.x_in_X", ext1(v, v1, x, Some(p1.clone()), np2, Some(p3.clone()), q));
                return;
            }
            let mid = join!(sub(r1, vv, u), &e.p4, sub(r3, s, b));
            let reach = join!(sub(r3, vv, tt), &e.p5);
            if strictly_between(p2, x, 0, iv3) {
                let np2 = join!(sub(p2, v, x), e.p5.reversed(), sub(r3, tt, b));
                out.next("index3.two.far.x_near_P2", Some(p1.clone()), np2, Some(p3.clone()));
            } else if x == v || p3.contains(x) {
                let np1 = join!(r2, sub(p1, v1, a));
                out.next("index3.two.far.x_on_P3", np1, mid, join!(reach, sub(p3, x, c)));
            } else if matches!(pos(p1, x), Some(i) if i > iv1) {
                let np3 = join!(r2, sub(p1, v1, v), p3);
                out.next("index3.two.far.x_beyond_v1", join!(reach, sub(p1, x, a)), mid, np3);
            } else if strictly_between(p1, x, 0, iv1) {
                let np1 = join!(r2, sub(p1, v1, a));
                out.next("index3.two.far.x_before_v1", np1, mid, join!(reach, sub(p1, x, v), p3));
            }
            out.next("index3.two.far.rerouted", Some(p1.clone()), np2, Some(p3.clone()));
        }
    }
    out.next("index3.rebuilt", Some(p1.clone()), p2r, Some(p3.clone()));
}

/// Length at least three with index at least four.
fn long(t: &TriPod, seq: &AugmentingSequence, out: &mut Cands) {
    let (v, a, b, c) = (t.v(), t.a(), t.b(), t.c());
    let (p1, p2, p3) = (&t.p1, &t.p2, &t.p3);
    let (q1, q2) = (&seq.paths[0], &seq.paths[1]);
    let (v1, v2) = q1.ends();
    let (v3, v4) = q2.ends();
    if p3.contains(v4) {
        let np1 = join!(q1.reversed(), sub(p1, v1, a));
        let np3 = join!(sub(p2, v2, v3), q2, sub(p3, v4, c));
        out.next("long.v4_on_P3", np1, sub(p2, v2, b), np3);
    } else if matches!((pos(p2, v4), pos(p2, v3)), (Some(i), Some(j)) if i > j) {
        let np2 = join!(sub(p2, v, v3), q2, sub(p2, v4, b));
        out.next("long.v4_on_P2", Some(p1.clone()), np2, Some(p3.clone()));
    }
}
