use std::collections::BTreeMap;
use std::fmt::Write;

use super::IsogenyGraph;

/// Fixed drawing color for degree `l`.
pub fn color_of(ell: u64) -> &'static str {
    match ell {
        2 => "black",
        3 => "green",
        5 => "blue",
        7 => "red",
        11 => "darkgreen",
        13 => "purple",
        17 => "teal",
        19 => "olive",
        _ => "gray",
    }
}

/// Graphviz rendering. One edge record per unit of multiplicity; a pair of
/// opposite edges of the same color is drawn as one undirected edge.
pub fn to_dot(graph: &IsogenyGraph) -> String {
    let mut s = String::from("digraph G {\n");
    for (i, label) in graph.labels.iter().enumerate() {
        writeln!(s, "  v{i} [label=\"{label}\"];").unwrap();
    }
    let mut remaining: BTreeMap<(usize, usize, u64), u32> = graph.edges.clone();
    for (&(u, v, ell), &m) in &graph.edges {
        let color = color_of(ell);
        let here = remaining[&(u, v, ell)];
        if u == v {
            for _ in 0..m {
                writeln!(s, "  v{u} -> v{v} [color={color}, label=\"{ell}\"];").unwrap();
            }
            continue;
        }
        let back = remaining.get(&(v, u, ell)).copied().unwrap_or(0);
        let paired = here.min(back);
        for _ in 0..paired {
            writeln!(s, "  v{u} -> v{v} [color={color}, label=\"{ell}\", dir=none];").unwrap();
        }
        for _ in paired..here {
            writeln!(s, "  v{u} -> v{v} [color={color}, label=\"{ell}\"];").unwrap();
        }
        remaining.insert((u, v, ell), 0);
        if paired > 0 {
            *remaining.get_mut(&(v, u, ell)).unwrap() -= paired;
        }
    }
    s.push_str("}\n");
    s
}
