//! Raising the odd-segment count of a hex until all nine segments are odd.
//!
//! Each step normalizes the hex for its count, grows it by a few paths
//! obtained from a fan or a three-path extension, and then picks the best
//! hex inside the grown edge set. Counts move within {0, 3, 4, 5, 6, 9}.

mod union;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::augment::util::{escape_fan, join, mask_of};
use crate::augment::{
    three_path_extend_strong_with, three_path_extend_with, AugmentStats, Extension, StrongExtension, TriPod,
};
use crate::cancel::CancelToken;
use crate::connectivity::{is_internally_4_connected, I4cViolation};
use crate::graph::{BipartiteGraph, GraphError, VertexId};
use crate::hex::{
    apply_surgery, matching_relabelings, validate_hex, Edge, FootPattern, Hex, HexViolation, Surgery,
};
use crate::path::Path;
use crate::planarity::{is_planar, Embedding, Planarity};
use crate::seed::{find_hex_with, SeedError};

pub(crate) use union::best_hex_in_union;

/// Which count-specific routine produced a step.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// Counts 0 and 3: at least five feet share a color.
    Le3,
    Four,
    Five,
    Six,
}

impl Stage {
    pub fn tag(self) -> &'static str {
        match self {
            Stage::Le3 => "le3",
            Stage::Four => "four",
            Stage::Five => "five",
            Stage::Six => "six",
        }
    }
}

/// One audited improvement: `surgery` turns the previous hex into the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovementStep {
    pub stage: Stage,
    pub case_tag: String,
    pub surgery: Surgery,
    pub before_count: usize,
    pub after_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ImproveError {
    #[error("hex is already odd")]
    AlreadyOdd,
    #[error("input is not a valid hex: {0:?}")]
    InvalidHex(Vec<HexViolation>),
    #[error("no case improved the hex at stage {stage:?}; tried {tried:?}")]
    CaseExhausted { stage: Stage, tried: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FindError {
    #[error("graph is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<VertexId> },
    #[error("graph is not internally 4-connected: {0}")]
    NotInternally4Connected(I4cViolation),
    #[error("graph is planar")]
    PlanarInput(Embedding),
    #[error("malformed graph: {0}")]
    Malformed(GraphError),
    #[error("no hex found in a non-planar graph")]
    SeedExhausted,
    #[error("search cancelled")]
    Cancelled,
    #[error(transparent)]
    Improve(#[from] ImproveError),
}

/// Full record of a [`find_odd_hex`] run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub seed: Hex,
    pub hex: Hex,
    pub steps: Vec<ImprovementStep>,
    pub stats: AugmentStats,
}

/// Counts can only rise within {0, 3, 4, 5, 6, 9}, so five steps suffice.
pub const MAX_STEPS: usize = 5;

/// An odd hex of `g` with the improvement steps that led to it.
pub fn find_odd_hex(g: &BipartiteGraph) -> Result<(Hex, Vec<ImprovementStep>), FindError> {
    find_odd_hex_traced(g, &CancelToken::new()).map(|t| (t.hex, t.steps))
}

/// Builds the graph from an edge list first, reporting odd cycles.
pub fn find_odd_hex_in(n: usize, edges: &[(usize, usize)]) -> Result<(Hex, Vec<ImprovementStep>), FindError> {
    let g = BipartiteGraph::from_edges(n, edges.iter().copied()).map_err(|e| match e {
        GraphError::NotBipartite { cycle } => FindError::NotBipartite { cycle },
        other => FindError::Malformed(other),
    })?;
    find_odd_hex(&g)
}

/// Checks planarity, then internal 4-connectivity, then seeds and improves.
pub fn find_odd_hex_traced(g: &BipartiteGraph, cancel: &CancelToken) -> Result<Trace, FindError> {
    if let Planarity::Planar(emb) = is_planar(g) {
        return Err(FindError::PlanarInput(emb));
    }
    is_internally_4_connected(g).map_err(FindError::NotInternally4Connected)?;
    let seed = match find_hex_with(g, cancel) {
        Ok(h) => h,
        Err(SeedError::PlanarInput(emb)) => return Err(FindError::PlanarInput(emb)),
        Err(SeedError::SearchExhausted) => return Err(FindError::SeedExhausted),
        Err(SeedError::Cancelled) => return Err(FindError::Cancelled),
    };
    let mut stats = AugmentStats::default();
    let (hex, steps) = improve_from(g, &seed, cancel, &mut stats)?;
    Ok(Trace { seed, hex, steps, stats })
}

/// Improves `h` until it is odd. Does not check the host preconditions.
pub fn improve_from(
    g: &BipartiteGraph,
    h: &Hex,
    cancel: &CancelToken,
    stats: &mut AugmentStats,
) -> Result<(Hex, Vec<ImprovementStep>), FindError> {
    let mut cur = h.clone();
    let mut steps = Vec::new();
    while !cur.is_odd() {
        if cancel.is_cancelled() {
            return Err(FindError::Cancelled);
        }
        let (next, step) = improve_once_traced(g, &cur, stats)?;
        steps.push(step);
        cur = next;
    }
    debug_assert!(steps.len() <= MAX_STEPS);
    Ok((cur, steps))
}

/// One strict improvement of `h`.
pub fn improve_once(g: &BipartiteGraph, h: &Hex) -> Result<(Hex, ImprovementStep), ImproveError> {
    improve_once_traced(g, h, &mut AugmentStats::default())
}

pub fn improve_once_traced(
    g: &BipartiteGraph,
    h: &Hex,
    stats: &mut AugmentStats,
) -> Result<(Hex, ImprovementStep), ImproveError> {
    validate_hex(g, h).map_err(ImproveError::InvalidHex)?;
    let stage = match h.odd_count() {
        9 => return Err(ImproveError::AlreadyOdd),
        0 | 3 => Stage::Le3,
        4 => Stage::Four,
        5 => Stage::Five,
        6 => Stage::Six,
        c => unreachable!("a valid hex cannot have {c} odd segments"),
    };
    let mut cx = Cx { g, stats, tried: Vec::new(), floor: h.odd_count(), base: h };
    let found = match stage {
        Stage::Le3 => cx.le3(),
        Stage::Four => cx.four(),
        Stage::Five => cx.five(),
        Stage::Six => cx.six(),
    };
    match found {
        Some((next, case_tag, surgery)) => {
            let step = ImprovementStep {
                stage,
                case_tag,
                surgery,
                before_count: h.odd_count(),
                after_count: next.odd_count(),
            };
            Ok((next, step))
        }
        None => Err(ImproveError::CaseExhausted { stage, tried: cx.tried }),
    }
}

/// Improvement for counts 0 and 3. Panics on a hex of another count.
pub fn improve_le3(g: &BipartiteGraph, h: &Hex) -> Result<(Hex, ImprovementStep), ImproveError> {
    expect_stage(g, h, Stage::Le3)
}

/// Improvement for count 4. Panics on a hex of another count.
pub fn improve_4(g: &BipartiteGraph, h: &Hex) -> Result<(Hex, ImprovementStep), ImproveError> {
    expect_stage(g, h, Stage::Four)
}

/// Improvement for count 5. Panics on a hex of another count.
pub fn improve_5(g: &BipartiteGraph, h: &Hex) -> Result<(Hex, ImprovementStep), ImproveError> {
    expect_stage(g, h, Stage::Five)
}

/// Improvement for count 6. Panics on a hex of another count.
pub fn improve_6(g: &BipartiteGraph, h: &Hex) -> Result<(Hex, ImprovementStep), ImproveError> {
    expect_stage(g, h, Stage::Six)
}

fn expect_stage(g: &BipartiteGraph, h: &Hex, stage: Stage) -> Result<(Hex, ImprovementStep), ImproveError> {
    let (next, step) = improve_once(g, h)?;
    assert_eq!(step.stage, stage, "hex count {} does not belong to stage {stage:?}", h.odd_count());
    Ok((next, step))
}

struct Cx<'a> {
    g: &'a BipartiteGraph,
    stats: &'a mut AugmentStats,
    tried: Vec<String>,
    floor: usize,
    base: &'a Hex,
}

type Found = (Hex, String, Surgery);

/// `h` with foot `0` moved to `center` and row `0` replaced.
fn with_row0(h: &Hex, center: VertexId, row: [Path; 3]) -> Hex {
    let mut out = h.clone();
    out.feet[0] = center;
    out.segments[0] = row;
    out
}

fn with_seg(h: &Hex, i: usize, j: usize, p: Path) -> Hex {
    let mut out = h.clone();
    out.segments[i][j] = p;
    out
}

/// Where `w` sits on `h`, as a tag fragment.
fn locate(h: &Hex, w: VertexId) -> String {
    if let Some(k) = h.foot_index(w) {
        format!("v{}", k + 1)
    } else if let Some((i, j)) = h.segment_of_interior(w) {
        format!("P{}{}", i + 1, j + 4)
    } else {
        "off".into()
    }
}

fn new_paths(e: &Extension) -> Vec<Path> {
    match e {
        Extension::One(x) => vec![x.p4.clone()],
        Extension::Two(x) => vec![x.p4.clone(), x.p5.clone()],
    }
}

fn strong_new_paths(e: &StrongExtension) -> Vec<Path> {
    match e {
        StrongExtension::A(x) => vec![x.p4.clone()],
        StrongExtension::B(x) => vec![x.p4.clone(), x.p5.clone()],
        StrongExtension::C(x) => vec![x.p4.clone(), x.p5.clone()],
        StrongExtension::D(x) => vec![x.p4.clone(), x.p5.clone(), x.p6.clone()],
    }
}

fn kind(e: &Extension) -> &'static str {
    match e {
        Extension::One(_) => "one",
        Extension::Two(_) => "two",
    }
}

/// Tripod on row `0` of a normalized hex, with everything else as targets.
fn row0_tripod(g: &BipartiteGraph, h: &Hex) -> (TriPod, Vec<bool>) {
    let t = TriPod::new(h.between(0, 3), h.between(0, 4), h.between(0, 5));
    let on_t = mask_of(g.n(), &[&t.vertices()]);
    let mut x = mask_of(g.n(), &[&h.vertices()]);
    for (i, b) in on_t.iter().enumerate() {
        if *b {
            x[i] = false;
        }
    }
    (t, x)
}

/// Replacement row from the legs of an extension of [`row0_tripod`].
fn row_from(t: &TriPod) -> (VertexId, [Path; 3]) {
    (t.v(), [t.p1.clone(), t.p2.clone(), t.p3.clone()])
}

impl Cx<'_> {
    /// Best hex in `h` plus `extra`, with the surgery from the base hex.
    fn settle(&mut self, h: &Hex, extra: &[Path], tag: String) -> Option<Found> {
        let mut es: BTreeSet<Edge> = h.edges().into_iter().collect();
        for p in extra {
            es.extend(p.edges().map(|(a, b)| crate::hex::norm_edge(a, b)));
        }
        let best = best_hex_in_union(&es, self.floor).and_then(|next| {
            let s = surgery_between(self.g, self.base, &next)?;
            Some((next, s))
        });
        match best {
            Some((next, s)) if validate_hex(self.g, &next).is_ok() => Some((next, tag, s)),
            _ => {
                self.tried.push(tag);
                None
            }
        }
    }

    /// Relabelings of the base hex matching `a`/`b`, one per distinct key.
    fn normalized(&self, a: &[usize], b: &[usize], key: fn(&Hex) -> Vec<VertexId>) -> Vec<Hex> {
        let mut seen = BTreeSet::new();
        matching_relabelings(self.g, self.base, &FootPattern::from_labels(a, b))
            .into_iter()
            .map(|(h, _)| h)
            .filter(|h| seen.insert(key(h)))
            .collect()
    }

    fn le3(&mut self) -> Option<Found> {
        let key: fn(&Hex) -> Vec<VertexId> = |h| vec![h.feet[0], h.feet[3]];
        for h in self.normalized(&[1, 2, 3, 4, 5], &[], key) {
            if let Some(f) = self.escape_step(&h, Stage::Le3) {
                return Some(f);
            }
        }
        None
    }

    fn four(&mut self) -> Option<Found> {
        let key: fn(&Hex) -> Vec<VertexId> = |h| vec![h.feet[0], h.feet[3]];
        for h in self.normalized(&[1, 2, 4, 5], &[], key) {
            if let Some(f) = self.escape_step(&h, Stage::Four) {
                return Some(f);
            }
        }
        None
    }

    /// Shared start of the le3 and four stages: an H-path `Q` from a
    /// vertex `u` of the other color inside `P14`, after rerouting `P14`
    /// through `u` if needed. For count four, a landing that does not help
    /// at once continues with an extension of the tripod at `u`.
    fn escape_step(&mut self, h: &Hex, stage: Stage) -> Option<Found> {
        let g = self.g;
        let p14 = h.between(0, 3);
        let (v1, v4) = (h.feet[0], h.feet[3]);
        let mut rest = mask_of(g.n(), &[&h.vertices()]);
        for &v in p14.vertices() {
            rest[v.ix()] = false;
        }
        let ca = g.color(v1);
        for &u in p14.interior().iter().filter(|&&u| g.color(u) != ca) {
            let Some([r1, r2, q]) = escape_fan(g, u, v1, v4, &rest) else {
                self.tried.push(format!("{}.no_fan", stage.tag()));
                continue;
            };
            let p14n = join!(r1.reversed(), &r2)?;
            let h1 = with_seg(h, 0, 0, p14n.clone());
            let w = q.last();
            let side = if g.color(w) == ca { "A" } else { "B" };
            let tag = format!("{}.w_in_{}.{side}", stage.tag(), locate(&h1, w));
            if let Some(f) = self.settle(&h1, std::slice::from_ref(&q), tag) {
                return Some(f);
            }
            if stage == Stage::Four {
                if let Some(f) = self.four_extend(&h1, &q, &r1, &r2) {
                    return Some(f);
                }
            }
        }
        None
    }

    /// Extension of the tripod `(Q, u..v1, u..v4)` centered at `u`, with
    /// the colors swapped relative to the hex.
    fn four_extend(&mut self, h1: &Hex, q: &Path, r1: &Path, r2: &Path) -> Option<Found> {
        let g = self.g;
        let t = TriPod::new(q.clone(), r1.clone(), r2.clone());
        t.check(g).ok()?;
        let p14 = h1.between(0, 3);
        let mut x = mask_of(g.n(), &[&h1.vertices()]);
        for &v in p14.vertices() {
            x[v.ix()] = false;
        }
        x[q.last().ix()] = false;
        let e = three_path_extend_with(g, &t, &x, self.stats).ok()?;
        let rep = e.replacement();
        let p14n = join!(rep.p2.reversed(), &rep.p3)?;
        let h2 = with_seg(h1, 0, 0, p14n);
        let mut extra = vec![rep.p1.clone()];
        extra.extend(new_paths(&e));
        self.settle(&h2, &extra, format!("four.extend.{}", kind(&e)))
    }

    fn five(&mut self) -> Option<Found> {
        let key: fn(&Hex) -> Vec<VertexId> = |h| vec![h.feet[0], h.feet[3]];
        for h in self.normalized(&[1, 2, 4], &[3, 5, 6], key) {
            let (t, x) = row0_tripod(self.g, &h);
            let Ok(e) = three_path_extend_with(self.g, &t, &x, self.stats) else {
                self.tried.push("five.extend.failed".into());
                continue;
            };
            let (center, row) = row_from(&e.replacement());
            let h2 = with_row0(&h, center, row);
            if let Some(f) = self.settle(&h2, &new_paths(&e), format!("five.extend.{}", kind(&e))) {
                return Some(f);
            }
            if let Extension::One(one) = &e {
                if let Some(f) = self.five_nested(&h2, &one.p4) {
                    return Some(f);
                }
            }
        }
        None
    }

    /// Second extension for count five: the new path `Q` from `u` on the
    /// rebuilt `P14` lands on the other color inside `P25` or `P26`.
    fn five_nested(&mut self, h2: &Hex, q: &Path) -> Option<Found> {
        let g = self.g;
        let p14 = h2.between(0, 3);
        let u = q.first();
        let t = TriPod::new(q.clone(), p14.subpath(u, h2.feet[0])?, p14.subpath(u, h2.feet[3])?);
        if t.check(g).is_err() {
            self.tried.push(format!("five.nested.w_in_{}.A", locate(h2, q.last())));
            return None;
        }
        let mut x = mask_of(g.n(), &[&h2.vertices()]);
        for &v in p14.vertices() {
            x[v.ix()] = false;
        }
        x[q.last().ix()] = false;
        let e = three_path_extend_with(g, &t, &x, self.stats).ok()?;
        let rep = e.replacement();
        let h3 = with_seg(h2, 0, 0, join!(rep.p2.reversed(), &rep.p3)?);
        let mut extra = vec![rep.p1.clone()];
        extra.extend(new_paths(&e));
        self.settle(&h3, &extra, format!("five.nested.{}", kind(&e)))
    }

    fn six(&mut self) -> Option<Found> {
        let key: fn(&Hex) -> Vec<VertexId> = |h| vec![h.feet[0], h.feet[3]];
        for h in self.normalized(&[1, 2, 3, 4], &[5, 6], key) {
            let (t, x) = row0_tripod(self.g, &h);
            if let Ok(e) = three_path_extend_with(self.g, &t, &x, self.stats) {
                let (center, row) = row_from(&e.replacement());
                let h2 = with_row0(&h, center, row);
                if let Some(f) = self.settle(&h2, &new_paths(&e), format!("six.extend.{}", kind(&e))) {
                    return Some(f);
                }
            }
            let Ok(e) = three_path_extend_strong_with(self.g, &t, &x, self.stats) else {
                self.tried.push("six.strong.failed".into());
                continue;
            };
            let (center, row) = row_from(&e.replacement());
            let h2 = with_row0(&h, center, row);
            if let Some(f) = self.settle(&h2, &strong_new_paths(&e), format!("six.strong.{}", e.letter())) {
                return Some(f);
            }
        }
        None
    }
}

/// A surgery turning `old` into `new`: the edges only in `new` as H-paths
/// added one at a time, the edges only in `old` as maximal runs along its
/// segments. Checked by replaying it.
fn surgery_between(g: &BipartiteGraph, old: &Hex, new: &Hex) -> Option<Surgery> {
    let old_e: BTreeSet<Edge> = old.edges().into_iter().collect();
    let new_e: BTreeSet<Edge> = new.edges().into_iter().collect();
    let mut removed = Vec::new();
    for (_, p) in old.segment_list() {
        let mut run: Vec<VertexId> = Vec::new();
        for (a, b) in p.edges() {
            if new_e.contains(&crate::hex::norm_edge(a, b)) {
                if run.len() > 1 {
                    removed.push(Path::new(std::mem::take(&mut run)));
                }
                run.clear();
            } else {
                if run.is_empty() {
                    run.push(a);
                }
                run.push(b);
            }
        }
        if run.len() > 1 {
            removed.push(Path::new(run));
        }
    }
    let mut fresh: BTreeSet<Edge> = new_e.difference(&old_e).copied().collect();
    let mut inside: BTreeSet<VertexId> = old.vertices().into_iter().collect();
    let mut added = Vec::new();
    let touches = |v: VertexId, fresh: &BTreeSet<Edge>| -> Option<VertexId> {
        fresh.iter().find_map(|&(a, b)| match (a == v, b == v) {
            (true, _) => Some(b),
            (_, true) => Some(a),
            _ => None,
        })
    };
    while !fresh.is_empty() {
        let start = inside.iter().copied().find(|&v| touches(v, &fresh).is_some())?;
        let mut seq = vec![start];
        let mut cur = start;
        loop {
            let next = touches(cur, &fresh)?;
            fresh.remove(&crate::hex::norm_edge(cur, next));
            if seq.contains(&next) {
                return None;
            }
            seq.push(next);
            cur = next;
            if inside.contains(&cur) {
                break;
            }
        }
        inside.extend(seq.iter().copied());
        added.push(Path::new(seq));
    }
    let s = Surgery::new(added, removed);
    let replayed = apply_surgery(g, old, &s).ok()?;
    (replayed.edges() == new.edges()).then_some(s)
}

#[cfg(test)]
mod tests;
