//! Graphviz DOT output.

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::{BipartiteGraph, Color};
use crate::hex::{norm_edge, validate_hex, Hex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("highlighted hex is not a hex of the graph")]
pub struct InvalidHighlight;

/// The graph in DOT. Left vertices are filled grey; a highlighted hex has
/// its segments drawn red and its feet double-circled.
pub fn emit_dot(g: &BipartiteGraph, h: Option<&Hex>) -> Result<String, InvalidHighlight> {
    if let Some(h) = h {
        validate_hex(g, h).map_err(|_| InvalidHighlight)?;
    }
    let hex_edges: BTreeSet<_> = h.map(|h| h.edges().into_iter().collect()).unwrap_or_default();
    let feet: BTreeSet<_> = h.map(|h| h.feet.iter().copied().collect()).unwrap_or_default();
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let mut attrs = Vec::new();
        if g.color(v) == Color::Left {
            attrs.push("style=filled fillcolor=lightgrey");
        }
        if feet.contains(&v) {
            attrs.push("shape=doublecircle");
        }
        writeln!(out, "  {v} [{}];", attrs.join(" ")).unwrap();
    }
    for &(a, b) in g.edges() {
        let style = if hex_edges.contains(&norm_edge(a, b)) { "color=red penwidth=2" } else { "color=grey" };
        writeln!(out, "  {a} -- {b} [{style}];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
