//! Graphviz renderings of hypergraphs and pictures. Layout is left to Graphviz.

use itertools::Itertools;

use crate::hypergraph::{Hypergraph, VertexLabelling};
use crate::picture::Picture;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Two-vertex edges are drawn as lines; other edges as boxes joined to their
/// vertices. Vertices with `b = 1` are filled.
pub fn hypergraph_dot(h: &Hypergraph, b: &VertexLabelling) -> String {
    let mut out = String::from("graph H {\n  node [shape=circle];\n");
    for v in 0..h.num_vertices() {
        let style = if b.get(v) { " style=filled fillcolor=gray" } else { "" };
        out.push_str(&format!(
            "  {} [label={}{style}];\n",
            quote(&format!("v:{}", h.vertex_name(v))),
            quote(h.vertex_name(v))
        ));
    }
    for e in 0..h.num_edges() {
        let name = h.edge_name(e);
        let inc = h.edge_incidence(e);
        let ends: Vec<usize> = inc.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m as usize)).collect();
        if ends.len() == 2 {
            out.push_str(&format!(
                "  {} -- {} [label={}];\n",
                quote(&format!("v:{}", h.vertex_name(ends[0]))),
                quote(&format!("v:{}", h.vertex_name(ends[1]))),
                quote(name)
            ));
            continue;
        }
        let node = quote(&format!("e:{name}"));
        out.push_str(&format!("  {node} [shape=box label={}];\n", quote(name)));
        for &(v, m) in inc {
            let label = if m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            out.push_str(&format!("  {node} -- {}{label};\n", quote(&format!("v:{}", h.vertex_name(v)))));
        }
    }
    out.push_str("}\n");
    out
}

/// Vertices are labelled `id:label` with their rotation in the tooltip;
/// boundary darts become points on a cluster.
pub fn picture_dot(p: &Picture) -> String {
    let mut out = String::from("graph P {\n  node [shape=circle];\n");
    let mut owner = std::collections::HashMap::new();
    for v in &p.vertices {
        let id = quote(&format!("v:{}", v.id));
        let rot = v.rot.iter().join(" ");
        out.push_str(&format!("  {id} [label={} tooltip={}];\n", quote(&format!("{}:{}", v.id, v.label)), quote(&rot)));
        for &d in &v.rot {
            owner.insert(d, id.clone());
        }
    }
    if !p.boundary.is_empty() {
        out.push_str("  subgraph cluster_boundary {\n    label=\"boundary\";\n");
        for &d in &p.boundary {
            let id = quote(&format!("b:{d}"));
            out.push_str(&format!("    {id} [shape=point];\n"));
            owner.insert(d, id);
        }
        out.push_str("  }\n");
    }
    for e in &p.edges {
        let [a, b] = e.darts.map(|d| owner.get(&d).cloned().unwrap_or_else(|| quote(&format!("?{d}"))));
        out.push_str(&format!("  {a} -- {b} [label={}];\n", quote(&format!("{}:{}", e.id, e.label))));
    }
    for l in &p.free_loops {
        out.push_str(&format!(
            "  {} [shape=doublecircle label={}];\n",
            quote(&format!("l:{}", l.id)),
            quote(&format!("{}:{}", l.id, l.label))
        ));
    }
    out.push_str("}\n");
    out
}
