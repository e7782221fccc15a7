//! Three-path extensions: given three paths from a common center to `a`,
//! `b`, `c` and a target set `X`, find replacement paths plus one or two
//! new paths reaching `X` in one of the prescribed shapes.
//!
//! Colors are relative: class `A` is the color of the center (and of `a`),
//! class `B` the color of `b` and `c`. This lets callers run the same
//! machinery with the two color classes swapped.

mod extend;
mod strong;
mod sequence;
pub(crate) mod util;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BipartiteGraph, Color, VertexId};
use crate::path::Path;

pub use extend::{three_path_extend, three_path_extend_traced};
pub use strong::{three_path_extend_strong, three_path_extend_strong_traced};
pub use sequence::{find_augmenting_sequence, AugmentingSequence};

pub(crate) use extend::three_path_extend_with;
pub(crate) use strong::three_path_extend_strong_with;

/// Three paths from a common center `v` to `a`, `b`, `c`, disjoint apart
/// from `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriPod {
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TriPodError {
    #[error("legs do not share a common first vertex")]
    NoCommonCenter,
    #[error("leg {0} has no edge")]
    TrivialLeg(usize),
    #[error("leg {0} is not a path of the graph: {1}")]
    BadLeg(usize, String),
    #[error("legs meet at {0} away from the center")]
    LegsMeet(VertexId),
    #[error("end colors are wrong: a must match the center, b and c must not")]
    Colors,
}

impl TriPod {
    pub fn new(p1: Path, p2: Path, p3: Path) -> TriPod {
        TriPod { p1, p2, p3 }
    }

    pub fn v(&self) -> VertexId {
        self.p1.first()
    }

    pub fn a(&self) -> VertexId {
        self.p1.last()
    }

    pub fn b(&self) -> VertexId {
        self.p2.last()
    }

    pub fn c(&self) -> VertexId {
        self.p3.last()
    }

    /// Leg `i` in `1..=3`.
    pub fn leg(&self, i: usize) -> &Path {
        match i {
            1 => &self.p1,
            2 => &self.p2,
            3 => &self.p3,
            _ => panic!("legs are numbered 1 to 3"),
        }
    }

    pub fn legs(&self) -> [&Path; 3] {
        [&self.p1, &self.p2, &self.p3]
    }

    /// Color of the center, called `A` throughout this module.
    pub fn side_a(&self, g: &BipartiteGraph) -> Color {
        g.color(self.v())
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.legs().iter().flat_map(|p| p.vertices().iter().copied()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Exchanges the roles of `b` and `c`.
    pub fn swapped(&self) -> TriPod {
        TriPod { p1: self.p1.clone(), p2: self.p3.clone(), p3: self.p2.clone() }
    }

    pub fn check(&self, g: &BipartiteGraph) -> Result<(), TriPodError> {
        let v = self.v();
        if self.p2.first() != v || self.p3.first() != v {
            return Err(TriPodError::NoCommonCenter);
        }
        for (i, p) in self.legs().into_iter().enumerate() {
            if p.is_trivial() {
                return Err(TriPodError::TrivialLeg(i + 1));
            }
            p.check(g).map_err(|e| TriPodError::BadLeg(i + 1, e.to_string()))?;
        }
        let mut seen = vec![false; g.n()];
        for p in self.legs() {
            for &x in &p.vertices()[1..] {
                if seen[x.ix()] || x == v {
                    return Err(TriPodError::LegsMeet(x));
                }
                seen[x.ix()] = true;
            }
        }
        let ca = g.color(v);
        if g.color(self.a()) != ca || g.color(self.b()) == ca || g.color(self.c()) == ca {
            return Err(TriPodError::Colors);
        }
        Ok(())
    }
}

/// Replacement paths `p1: v' -> a`, `p2: v' -> b`, `p3: v' -> c` plus a new
/// path `p4: u -> x` with `u` on `p1` and `x` in `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Extension1 {
    pub v: VertexId,
    pub u: VertexId,
    pub x: VertexId,
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
    pub p4: Path,
}

/// Replacement paths with `p2 = v'..t..s..b` (or `p3 = v'..t..s..c` when
/// `on_p3` is set), plus `p4: u -> s` with `u` on `p1` and `p5: t -> x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Extension2 {
    pub v: VertexId,
    pub s: VertexId,
    pub u: VertexId,
    pub t: VertexId,
    pub x: VertexId,
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
    pub p4: Path,
    pub p5: Path,
    pub on_p3: bool,
}

/// `p4 = u..s..x` with `x` in `X` of class `B`, `p5 = s..t` with `t` in
/// `X` or on `p2`/`p3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionB {
    pub v: VertexId,
    pub s: VertexId,
    pub u: VertexId,
    pub t: VertexId,
    pub x: VertexId,
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
    pub p4: Path,
    pub p5: Path,
}

/// `p1 = v'..u..w..t..a`, `p4 = u..s..x`, `p5 = s..t`, `p6 = w..y` with
/// `x, y` in `X` of class `B` (possibly equal).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionD {
    pub v: VertexId,
    pub s: VertexId,
    pub w: VertexId,
    pub u: VertexId,
    pub t: VertexId,
    pub x: VertexId,
    pub y: VertexId,
    pub p1: Path,
    pub p2: Path,
    pub p3: Path,
    pub p4: Path,
    pub p5: Path,
    pub p6: Path,
}

/// Outcome of [`three_path_extend`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extension {
    One(Extension1),
    Two(Extension2),
}

/// Outcome of [`three_path_extend_strong`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrongExtension {
    A(Extension1),
    B(ExtensionB),
    C(Extension2),
    D(ExtensionD),
}

impl Extension {
    pub fn replacement(&self) -> TriPod {
        match self {
            Extension::One(e) => TriPod::new(e.p1.clone(), e.p2.clone(), e.p3.clone()),
            Extension::Two(e) => TriPod::new(e.p1.clone(), e.p2.clone(), e.p3.clone()),
        }
    }
}

impl StrongExtension {
    pub fn replacement(&self) -> TriPod {
        let (p1, p2, p3) = match self {
            StrongExtension::A(e) => (&e.p1, &e.p2, &e.p3),
            StrongExtension::B(e) => (&e.p1, &e.p2, &e.p3),
            StrongExtension::C(e) => (&e.p1, &e.p2, &e.p3),
            StrongExtension::D(e) => (&e.p1, &e.p2, &e.p3),
        };
        TriPod::new(p1.clone(), p2.clone(), p3.clone())
    }

    pub fn letter(&self) -> char {
        match self {
            StrongExtension::A(_) => 'A',
            StrongExtension::B(_) => 'B',
            StrongExtension::C(_) => 'C',
            StrongExtension::D(_) => 'D',
        }
    }
}

/// Any extension shape, for validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnyExtension {
    One(Extension1),
    Two(Extension2),
    A(Extension1),
    B(ExtensionB),
    C(Extension2),
    D(ExtensionD),
}

impl From<Extension> for AnyExtension {
    fn from(e: Extension) -> Self {
        match e {
            Extension::One(x) => AnyExtension::One(x),
            Extension::Two(x) => AnyExtension::Two(x),
        }
    }
}

impl From<StrongExtension> for AnyExtension {
    fn from(e: StrongExtension) -> Self {
        match e {
            StrongExtension::A(x) => AnyExtension::A(x),
            StrongExtension::B(x) => AnyExtension::B(x),
            StrongExtension::C(x) => AnyExtension::C(x),
            StrongExtension::D(x) => AnyExtension::D(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("invalid tripod: {0}")]
    BadTriPod(#[from] TriPodError),
    #[error("target set must have at least two vertices, all off the tripod")]
    BadTargets,
    #[error("no augmenting sequence exists")]
    NoSequence,
    #[error("no extension of the requested shapes exists")]
    Unsatisfiable,
}

/// How an extension was obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    /// Every step was a case transformation of the optimal sequence.
    ProofFollowing,
    /// Some step needed the exhaustive shape search.
    DirectSearch,
}

/// Counters describing one call, including nested calls.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentStats {
    pub calls: usize,
    pub case_steps: usize,
    pub fallbacks: usize,
    /// Case tags whose construction failed validation, with counts.
    pub failed_cases: std::collections::BTreeMap<String, usize>,
    /// Outcome (B) instances where `t` coincides with `x`.
    pub b_with_t_eq_x: usize,
}

impl AugmentStats {
    pub fn source(&self) -> Source {
        if self.fallbacks == 0 {
            Source::ProofFollowing
        } else {
            Source::DirectSearch
        }
    }

    pub(crate) fn fail(&mut self, tag: &str) {
        *self.failed_cases.entry(tag.to_string()).or_default() += 1;
    }

    pub fn merge(&mut self, other: &AugmentStats) {
        self.calls += other.calls;
        self.case_steps += other.case_steps;
        self.fallbacks += other.fallbacks;
        self.b_with_t_eq_x += other.b_with_t_eq_x;
        for (k, v) in &other.failed_cases {
            *self.failed_cases.entry(k.clone()).or_default() += v;
        }
    }
}

/// Checks the common preconditions and returns the target mask.
pub(crate) fn check_inputs(g: &BipartiteGraph, t: &TriPod, x: &[VertexId]) -> Result<Vec<bool>, AugmentError> {
    t.check(g)?;
    let mut mask = vec![false; g.n()];
    for &v in x {
        if !g.contains(v) {
            return Err(AugmentError::BadTargets);
        }
        mask[v.ix()] = true;
    }
    if mask.iter().filter(|&&b| b).count() < 2 || t.vertices().iter().any(|v| mask[v.ix()]) {
        return Err(AugmentError::BadTargets);
    }
    Ok(mask)
}
