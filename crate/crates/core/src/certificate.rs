//! Certificate JSON for an odd hex, and a verifier that checks it against
//! the host graph from first principles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{to_edge_list, vid, BipartiteGraph};
use crate::hex::{apply_surgery, validate_hex, Hex, Surgery};
use crate::improver::{ImprovementStep, Stage};
use crate::path::Path;

pub const FORMAT: &str = "oddhex-certificate/1";

/// A hex written as plain vertex numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexRecord {
    pub feet: [u32; 6],
    pub segments: [[Vec<u32>; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub stage: Stage,
    pub case_tag: String,
    pub added: Vec<Vec<u32>>,
    pub removed: Vec<Vec<u32>>,
    pub before_count: usize,
    pub after_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    /// SHA-256 of the canonical edge list, lowercase hex.
    pub graph_hash: String,
    pub n: usize,
    pub m: usize,
    pub feet: [u32; 6],
    pub segments: [[Vec<u32>; 3]; 3],
    pub odd_count: usize,
    /// Starting hex of the audit trail.
    pub seed: HexRecord,
    pub steps: Vec<StepRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct VerifyError(pub String);

pub fn graph_hash(g: &BipartiteGraph) -> String {
    hex::encode(Sha256::digest(to_edge_list(g).as_bytes()))
}

fn raw(p: &Path) -> Vec<u32> {
    p.vertices().iter().map(|v| v.0).collect()
}

fn cooked(p: &[u32]) -> Path {
    Path::new(p.iter().map(|&v| vid(v as usize)).collect())
}

impl HexRecord {
    pub fn of(h: &Hex) -> HexRecord {
        HexRecord {
            feet: h.feet.map(|v| v.0),
            segments: std::array::from_fn(|i| std::array::from_fn(|j| raw(&h.segments[i][j]))),
        }
    }

    pub fn to_hex(&self) -> Hex {
        Hex {
            feet: self.feet.map(|v| vid(v as usize)),
            segments: std::array::from_fn(|i| std::array::from_fn(|j| cooked(&self.segments[i][j]))),
        }
    }
}

impl StepRecord {
    pub fn of(s: &ImprovementStep) -> StepRecord {
        StepRecord {
            stage: s.stage,
            case_tag: s.case_tag.clone(),
            added: s.surgery.added.iter().map(raw).collect(),
            removed: s.surgery.removed.iter().map(raw).collect(),
            before_count: s.before_count,
            after_count: s.after_count,
        }
    }

    pub fn surgery(&self) -> Surgery {
        Surgery::new(
            self.added.iter().map(|p| cooked(p)).collect(),
            self.removed.iter().map(|p| cooked(p)).collect(),
        )
    }
}

impl Certificate {
    pub fn new(g: &BipartiteGraph, seed: &Hex, hex: &Hex, steps: &[ImprovementStep]) -> Certificate {
        let rec = HexRecord::of(hex);
        Certificate {
            format: FORMAT.to_string(),
            graph_hash: graph_hash(g),
            n: g.n(),
            m: g.m(),
            feet: rec.feet,
            segments: rec.segments,
            odd_count: hex.odd_count(),
            seed: HexRecord::of(seed),
            steps: steps.iter().map(StepRecord::of).collect(),
        }
    }

    /// Compact JSON with a trailing newline; field order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn hex_record(&self) -> HexRecord {
        HexRecord { feet: self.feet, segments: self.segments.clone() }
    }
}

/// Checks that `feet`/`segments` form an odd hex of `g`, using only the
/// edge list: ends, adjacency, simplicity, disjointness, odd lengths.
/// Reports the first violated clause.
pub fn verify_hex_record(g: &BipartiteGraph, h: &HexRecord, require_odd: bool) -> Result<(), VerifyError> {
    let fail = |msg: String| Err(VerifyError(msg));
    let n = g.n() as u32;
    let feet: BTreeSet<u32> = h.feet.iter().copied().collect();
    if feet.len() != 6 {
        return fail("feet are not six distinct vertices".into());
    }
    if let Some(f) = h.feet.iter().find(|&&f| f >= n) {
        return fail(format!("foot {f} is not a vertex"));
    }
    let mut interior: BTreeSet<u32> = BTreeSet::new();
    for i in 0..3 {
        for j in 0..3 {
            let label = format!("({},{})", i + 1, j + 4);
            let p = &h.segments[i][j];
            if p.first() != Some(&h.feet[i]) || p.last() != Some(&h.feet[3 + j]) {
                return fail(format!("segment {label} does not join its feet"));
            }
            if let Some(v) = p.iter().find(|&&v| v >= n) {
                return fail(format!("segment {label} names unknown vertex {v}"));
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(vid(w[0] as usize), vid(w[1] as usize))) {
                return fail(format!("non-edge in segment {label}: {}-{}", w[0], w[1]));
            }
            for &v in &p[1..p.len() - 1] {
                if feet.contains(&v) || !interior.insert(v) {
                    return fail(format!("segment {label} reuses vertex {v}"));
                }
            }
        }
    }
    if require_odd {
        for i in 0..3 {
            for j in 0..3 {
                if (h.segments[i][j].len() - 1).is_multiple_of(2) {
                    return fail(format!("segment ({},{}) even", i + 1, j + 4));
                }
            }
        }
    }
    Ok(())
}

/// Full check of a certificate against `g`: graph hash, the odd hex, and
/// the audit trail replayed from the seed.
pub fn verify_certificate(g: &BipartiteGraph, c: &Certificate) -> Result<(), VerifyError> {
    let fail = |msg: String| Err(VerifyError(msg));
    if c.format != FORMAT {
        return fail(format!("unknown certificate format {:?}", c.format));
    }
    if c.graph_hash != graph_hash(g) {
        return fail("graph hash mismatch".into());
    }
    verify_hex_record(g, &c.hex_record(), true)?;
    if c.odd_count != 9 {
        return fail(format!("odd_count field is {}, not 9", c.odd_count));
    }
    verify_hex_record(g, &c.seed, false).map_err(|e| VerifyError(format!("seed: {}", e.0)))?;
    let mut cur = c.seed.to_hex();
    for (k, s) in c.steps.iter().enumerate() {
        let before = cur.odd_count();
        if s.before_count != before || s.after_count <= before {
            return fail(format!("step {} counts {} -> {} do not rise from {before}", k + 1, s.before_count, s.after_count));
        }
        cur = apply_surgery(g, &cur, &s.surgery()).map_err(|e| VerifyError(format!("step {}: {e}", k + 1)))?;
        if validate_hex(g, &cur).is_err() || cur.odd_count() != s.after_count {
            return fail(format!("step {} does not yield a hex with {} odd segments", k + 1, s.after_count));
        }
    }
    if cur.edges() != c.hex_record().to_hex().edges() {
        return fail("audit trail does not end at the certified hex".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Family};
    use crate::improver::find_odd_hex_traced;

    fn k44_cert() -> (BipartiteGraph, Certificate) {
        let g = named(&Family::K44).unwrap();
        let t = find_odd_hex_traced(&g, &Default::default()).unwrap();
        (g.clone(), Certificate::new(&g, &t.seed, &t.hex, &t.steps))
    }

    #[test]
    fn roundtrip_and_verify() {
        let (g, c) = k44_cert();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        verify_certificate(&g, &back).unwrap();
    }

    #[test]
    fn hash_mismatch_is_reported() {
        let (_, c) = k44_cert();
        let other = named(&Family::K33).unwrap();
        assert_eq!(verify_certificate(&other, &c).unwrap_err().0, "graph hash mismatch");
    }
}
