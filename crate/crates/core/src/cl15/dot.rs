use super::Cirquent15;

/// Graphviz rendering of the three-level diagram: overgroups on top,
/// oformulas in the middle, undergroups below.
pub fn to_dot(c: &Cirquent15) -> String {
    let mut s = String::from("digraph cirquent {\n  rankdir=TB;\n");
    let rank = |prefix: &str, k: usize| -> String {
        let names: Vec<String> = (0..k).map(|i| format!("{prefix}{i};")).collect();
        format!("  {{ rank=same; {} }}\n", names.join(" "))
    };
    s.push_str(&rank("o", c.overgroups.len()));
    s.push_str(&rank("f", c.oformulas.len()));
    s.push_str(&rank("u", c.undergroups.len()));
    for i in 0..c.overgroups.len() {
        s.push_str(&format!("  o{i} [shape=point, width=0.15];\n"));
    }
    for (i, f) in c.oformulas.iter().enumerate() {
        let label = f.unicode().replace('\\', "\\\\").replace('"', "\\\"");
        s.push_str(&format!("  f{i} [shape=plaintext, label=\"{label}\"];\n"));
    }
    for i in 0..c.undergroups.len() {
        s.push_str(&format!("  u{i} [shape=point, width=0.15];\n"));
    }
    for (o, g) in c.overgroups.iter().enumerate() {
        for j in g {
            s.push_str(&format!("  o{o} -> f{j} [arrowhead=none];\n"));
        }
    }
    for (u, g) in c.undergroups.iter().enumerate() {
        for j in g {
            s.push_str(&format!("  f{j} -> u{u} [arrowhead=none];\n"));
        }
    }
    s.push_str("}\n");
    s
}
