use super::ShallowCirquent;

/// Graphviz rendering: ogroups on top, the pool below, one edge per arc.
pub fn to_dot(c: &ShallowCirquent) -> String {
    let mut s = String::from("digraph cirquent {\n  rankdir=TB;\n");
    s.push_str("  { rank=same;");
    for g in 0..c.groups.len() {
        s.push_str(&format!(" g{g};"));
    }
    s.push_str(" }\n  { rank=same;");
    for i in 0..c.pool.len() {
        s.push_str(&format!(" f{i};"));
    }
    s.push_str(" }\n");
    for g in 0..c.groups.len() {
        s.push_str(&format!("  g{g} [shape=circle, label=\"\"];\n"));
    }
    for (i, f) in c.pool.iter().enumerate() {
        s.push_str(&format!(
            "  f{i} [shape=box, label=\"{}\"];\n",
            escape(&f.unicode())
        ));
    }
    for (g, members) in c.groups.iter().enumerate() {
        for i in members {
            s.push_str(&format!("  g{g} -> f{i} [arrowhead=none];\n"));
        }
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
