//! Graphviz rendering of `W` and of its chain decomposition.
//!
//! Side one is drawn as the top row and side two as the bottom row. Edges
//! point from the lighter to the heavier endpoint; equal weights get arrows
//! on both ends. Type 1 is solid, type 2 bold, type 3 dashed, and edges of
//! `W` outside the three types are dotted grey.

use std::fmt::Write;

use crate::combinatorics::Params;
use crate::error::Result;
use crate::matching::Side;
use crate::orbit::{build_chain_decomposition, build_w, classify_edges, OrbitVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotView {
    /// Every edge of `W`.
    W,
    /// Only the typed edges that make up the chains.
    Chains,
}

fn node_id(side: Side, i: u32) -> String {
    match side {
        Side::One => format!("c{i}_1"),
        Side::Two => format!("c{i}_2"),
    }
}

fn edge_attrs(edge_type: Option<u8>) -> &'static str {
    match edge_type {
        Some(1) => "style=solid",
        Some(2) => "style=bold",
        Some(3) => "style=dashed",
        _ => "style=dotted, color=gray50",
    }
}

fn write_edge(out: &mut String, a: OrbitVertex, b: OrbitVertex, edge_type: Option<u8>) {
    let (from, to) = if a.weight <= b.weight { (a, b) } else { (b, a) };
    let dir = if from.weight == to.weight { ", dir=both" } else { "" };
    let label = edge_type.map(|t| format!(", label=\"{t}\"")).unwrap_or_default();
    let _ = writeln!(
        out,
        "  {} -> {} [{}{}{}];",
        node_id(from.side, from.i),
        node_id(to.side, to.i),
        edge_attrs(edge_type),
        dir,
        label
    );
}

pub fn emit_dot(params: &Params, view: DotView) -> Result<String> {
    let w = build_w(params)?;
    let classes = classify_edges(&w)?;
    let mut out = String::new();
    let name = match view {
        DotView::W => "W",
        DotView::Chains => "chains",
    };
    let _ = writeln!(out, "digraph {name}_n{}_k{}_s{} {{", params.n(), params.k(), params.s());
    let _ = writeln!(out, "  label=\"n={}, k={}, s={}, l={}\";", params.n(), params.k(), params.s(), params.l());
    out.push_str("  rankdir=TB;\n  node [shape=circle];\n");
    for side in [Side::One, Side::Two] {
        out.push_str("  { rank=same;");
        for i in w.indices() {
            let _ = write!(out, " {};", node_id(side, i));
        }
        out.push_str(" }\n");
    }
    for v in w.vertices() {
        let _ = writeln!(out, "  {} [label=\"{v} (w={})\"];", node_id(v.side, v.i), v.weight);
    }
    match view {
        DotView::W => {
            for (i, t) in w.edges() {
                let ty = classes.edge_type(i, t);
                write_edge(&mut out, w.vertex(Side::One, i), w.vertex(Side::Two, t), ty);
            }
        }
        DotView::Chains => {
            let dec = build_chain_decomposition(params)?;
            for path in &dec.paths {
                for (m, pair) in path.vertices.windows(2).enumerate() {
                    write_edge(&mut out, pair[0], pair[1], Some(path.edge_types[m]));
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, k: u32, s: u32) -> Params {
        Params::new(n, k, s).unwrap()
    }

    fn count(doc: &str, pat: &str) -> usize {
        doc.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn chains_9_4_2() {
        let doc = emit_dot(&p(9, 4, 2), DotView::Chains).unwrap();
        assert_eq!(count(&doc, "[label=\"C_"), 4);
        assert_eq!(count(&doc, " -> "), 3);
        assert_eq!(count(&doc, "style=bold"), 1);
        assert!(doc.contains("c2_1 -> c2_2 [style=bold, dir=both, label=\"2\"];"));
        assert!(doc.contains("[label=\"C_2^1 (w=60)\"]"));
    }

    #[test]
    fn w_7_3_2() {
        let doc = emit_dot(&p(7, 3, 2), DotView::W).unwrap();
        assert_eq!(count(&doc, "[label=\"C_"), 2);
        assert_eq!(count(&doc, " -> "), 1);
    }

    #[test]
    fn untyped_edges_are_dotted() {
        let doc = emit_dot(&p(9, 5, 2), DotView::W).unwrap();
        assert!(!doc.contains("style=dotted"));
        let doc = emit_dot(&Params::from_slack(6, 2, 1).unwrap(), DotView::W).unwrap();
        assert!(doc.contains("style=dotted"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = emit_dot(&p(15, 7, 2), DotView::Chains).unwrap();
        let b = emit_dot(&p(15, 7, 2), DotView::Chains).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(emit_dot(&p(6, 3, 1), DotView::W).is_err());
    }
}
