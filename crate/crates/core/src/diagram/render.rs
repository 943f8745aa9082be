//! DOT and SVG output. Layout is cosmetic.

use std::collections::VecDeque;
use std::fmt::Write;

use crate::error::Error;

use super::Diagram;

fn edges(d: &Diagram) -> impl Iterator<Item = (usize, usize, char)> + '_ {
    // one half-edge per edge, oriented so the label has positive sign
    d.half_edges
        .iter()
        .filter(|h| !h.label.is_inverted())
        .map(|h| (h.origin, d.half_edges[h.twin].origin, h.label.ascii()))
}

/// The 1-skeleton as a labelled directed multigraph.
pub fn to_dot(d: &Diagram) -> Result<String, Error> {
    d.frame()?;
    let mut out = String::from("digraph diagram {\n  node [shape=point];\n");
    for &v in &d.vertices {
        if v == d.basepoint {
            writeln!(out, "  v{v} [shape=circle, label=\"\", width=0.12];").unwrap();
        } else {
            writeln!(out, "  v{v};").unwrap();
        }
    }
    for (u, v, l) in edges(d) {
        writeln!(out, "  v{u} -> v{v} [label=\"{l}\"];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

fn colour(l: char) -> &'static str {
    match l {
        't' => "#1f77b4",
        'u' => "#2ca02c",
        'k' => "#d62728",
        _ => "#7f7f7f",
    }
}

/// SVG drawing with vertices layered by distance from the basepoint.
pub fn to_svg(d: &Diagram) -> Result<String, Error> {
    let frame = d.frame()?;
    let adj = frame.skeleton();
    let n = d.vertices.len();
    let mut layer = vec![usize::MAX; n];
    let start = frame.vertex_index[&d.basepoint];
    layer[start] = 0;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if layer[v] == usize::MAX {
                layer[v] = layer[u] + 1;
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    let depth = layer.iter().copied().max().unwrap_or(0) + 1;
    let mut width = vec![0usize; depth];
    let mut slot = vec![0usize; n];
    for &v in &order {
        slot[v] = width[layer[v]];
        width[layer[v]] += 1;
    }
    let widest = width.iter().copied().max().unwrap_or(1).max(1);
    let (sx, sy, pad) = (24.0, 36.0, 20.0);
    let pos = |v: usize| {
        let offset = (widest - width[layer[v]]) as f64 * sx / 2.0;
        (
            pad + offset + slot[v] as f64 * sx,
            pad + layer[v] as f64 * sy,
        )
    };
    let w = 2.0 * pad + widest as f64 * sx;
    let h = 2.0 * pad + depth as f64 * sy;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
    )
    .unwrap();
    for (u, v, l) in edges(d) {
        let (x1, y1) = pos(frame.vertex_index[&u]);
        let (x2, y2) = pos(frame.vertex_index[&v]);
        writeln!(
            out,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"{}\" stroke-width=\"1.5\"><title>{l}</title></line>",
            colour(l)
        )
        .unwrap();
    }
    for v in 0..n {
        let (x, y) = pos(v);
        let r = if v == start { 4.0 } else { 2.0 };
        writeln!(out, "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{r}\"/>").unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::RelatorId;

    #[test]
    fn dot_lists_every_edge() {
        let d = Diagram::single_cell(RelatorId::K1, false);
        let dot = to_dot(&d).unwrap();
        assert_eq!(dot.matches("->").count(), 5);
        assert!(dot.contains("label=\"t\""));
        let svg = to_svg(&d).unwrap();
        assert_eq!(svg.matches("<line").count(), 5);
        assert_eq!(svg.matches("<circle").count(), 5);
    }
}
