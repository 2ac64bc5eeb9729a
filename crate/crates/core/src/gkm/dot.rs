use std::fmt::Write;

use super::{CanonicalGraph, OrientedGraphData};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering with `lambda`/`phi` on nodes. With `canonical`, only
/// canonical edges are drawn (labelled by `Theta / eta`); otherwise every
/// oriented GKM edge is drawn with its weight and magnitude.
pub fn to_dot(od: &OrientedGraphData, canonical: Option<&CanonicalGraph>) -> String {
    let g = od.graph();
    let mut s = String::from("digraph gkm {\n");
    for v in 0..g.num_vertices() {
        let label = format!("{}\\nlambda={} phi={}", quote(g.id(v)).trim_matches('"'), od.morse_index(v), od.phi(v));
        writeln!(s, "  {} [label=\"{label}\"];", quote(g.id(v))).unwrap();
    }
    match canonical {
        Some(cg) => {
            for e in cg.edges() {
                writeln!(s, "  {} -> {} [label={}];", quote(g.id(e.src)), quote(g.id(e.dst)), quote(&e.label.to_string()))
                    .unwrap();
            }
        }
        None => {
            for (k, e) in g.edges().iter().enumerate() {
                let m = od.magnitude(k).map(|m| m.to_string()).unwrap_or_else(|_| "?".into());
                let label = format!("{} m={}", e.weight, m);
                writeln!(s, "  {} -> {} [label={}];", quote(g.id(e.src)), quote(g.id(e.dst)), quote(&label)).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}
