use crate::args::{Common, Format};
use crate::{emit, parse_formula, read_proof, AnyProof, Output, EXIT_OK};
use colkit::cl15::{self, Cirquent15};
use colkit::cl5::{self, ShallowCirquent};
use colkit::formula::Conn;
use colkit::system::gate;
use colkit::{Formula, SystemId};
use serde_json::{json, Value};
use std::fmt::Write;

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn symbol(c: Conn) -> &'static str {
    match c {
        Conn::Not => "¬",
        Conn::Pand => "∧",
        Conn::Por => "∨",
        Conn::Chand => "⊓",
        Conn::Chor => "⊔",
        Conn::Brec => "○",
        Conn::Cobrec => "⫰",
        Conn::Impl => "→",
        Conn::Brimpl => "◦–",
        Conn::True => "⊤",
        Conn::False => "⊥",
        Conn::Lit => "lit",
    }
}

/// The syntax tree of `f` as a DOT graph.
pub fn formula_dot(f: &Formula) -> String {
    fn walk(f: &Formula, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        let label = match f {
            Formula::Lit { .. } | Formula::True | Formula::False => f.unicode(),
            other => symbol(other.conn()).to_string(),
        };
        let _ = writeln!(out, "  n{id} [label=\"{}\"];", quote(&label));
        for c in f.children() {
            let k = walk(c, next, out);
            let _ = writeln!(out, "  n{id} -> n{k};");
        }
        id
    }
    let mut s = String::from("digraph formula {\n");
    walk(f, &mut 0, &mut s);
    s.push_str("}\n");
    s
}

fn cl5_text(c: &ShallowCirquent) -> String {
    let pool: Vec<String> = c.pool.iter().map(|f| f.unicode()).collect();
    format!("⟨{}⟩ groups {:?}", pool.join(", "), c.groups)
}

fn cl15_text(c: &Cirquent15) -> String {
    let fs: Vec<String> = c.oformulas.iter().map(|f| f.unicode()).collect();
    format!(
        "⟨{}⟩ under {:?} over {:?}",
        fs.join(", "),
        c.undergroups,
        c.overgroups
    )
}

/// `name {params}` for a rule serialized with a name tag.
fn rule_text(rule: &impl serde::Serialize) -> String {
    let v = serde_json::to_value(rule).expect("serializable");
    let name = v["name"].as_str().unwrap_or("?");
    match v.get("params") {
        Some(p) => format!("{name} {p}"),
        None => name.to_string(),
    }
}

pub fn proof_text(p: &AnyProof) -> String {
    let mut s = String::new();
    match p {
        AnyProof::Bf(p) => {
            for (n, st) in p.steps.iter().enumerate() {
                let from = if st.premises.is_empty() {
                    "∅".to_string()
                } else {
                    st.premises
                        .iter()
                        .map(|k| (k + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let _ = writeln!(
                    s,
                    "{:>3}. {}    {:?} from {from}",
                    n + 1,
                    st.formula.unicode(),
                    st.rule
                );
            }
        }
        AnyProof::Cl5(p) => {
            for (n, st) in p.steps.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>3}. {}    {} {:?}",
                    n + 1,
                    cl5_text(&st.cirquent),
                    rule_text(&st.rule),
                    st.premises
                );
            }
        }
        AnyProof::Cl15(p) => {
            for (n, st) in p.steps.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>3}. {}    {}",
                    n + 1,
                    cl15_text(&st.cirquent),
                    rule_text(&st.rule)
                );
            }
        }
    }
    s
}

/// Renames the graph of one DOT rendering so several can share a file.
fn retitle(dot: &str, name: &str) -> String {
    dot.replacen("digraph cirquent", &format!("digraph {name}"), 1)
}

pub fn proof_dot(p: &AnyProof) -> String {
    match p {
        AnyProof::Bf(p) => {
            let mut s = String::from("digraph proof {\n  rankdir=BT;\n");
            for (n, st) in p.steps.iter().enumerate() {
                let label = format!("{}. {}  [{:?}]", n + 1, st.formula.unicode(), st.rule);
                let _ = writeln!(s, "  s{n} [shape=box, label=\"{}\"];", quote(&label));
                for k in &st.premises {
                    let _ = writeln!(s, "  s{k} -> s{n};");
                }
            }
            s.push_str("}\n");
            s
        }
        AnyProof::Cl5(p) => p
            .steps
            .iter()
            .enumerate()
            .map(|(n, st)| retitle(&cl5::to_dot(&st.cirquent), &format!("step{}", n + 1)))
            .collect(),
        AnyProof::Cl15(p) => p
            .steps
            .iter()
            .enumerate()
            .map(|(n, st)| retitle(&cl15::to_dot(&st.cirquent), &format!("step{}", n + 1)))
            .collect(),
    }
}

pub fn run_render(input: &str, c: &Common) -> Output {
    let path = std::path::Path::new(input);
    if path.is_file() {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return Output::error(format!("cannot read {input}: {e}")),
        };
        return render_file(&text, c);
    }
    let f = match parse_formula(input) {
        Ok(f) => f,
        Err(o) => return o,
    };
    match c.format {
        Format::Dot => {
            let dot = match c.system {
                SystemId::Cl5 | SystemId::Ccc => match gate(&f, c.system) {
                    Ok(g) => cl5::to_dot(&ShallowCirquent::singleton(g)),
                    Err(e) => return Output::error(e.to_string()),
                },
                SystemId::Cl15 => match Cirquent15::target(&f) {
                    Ok(t) => cl15::to_dot(&t),
                    Err(e) => return Output::error(e.to_string()),
                },
                _ => formula_dot(&f),
            };
            Output {
                stdout: dot,
                stderr: String::new(),
                code: EXIT_OK,
            }
        }
        _ => {
            let report = json!({ "ascii": f.ascii(), "unicode": f.unicode() });
            emit(c, &report, f.unicode() + "\n", EXIT_OK)
        }
    }
}

fn render_file(text: &str, c: &Common) -> Output {
    let v: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return Output::error(format!("not JSON: {e}")),
    };
    if v.get("steps").is_some() {
        let p = match read_proof(text) {
            Ok(p) => p,
            Err(e) => return Output::error(e),
        };
        return match c.format {
            Format::Dot => Output {
                stdout: proof_dot(&p),
                stderr: String::new(),
                code: EXIT_OK,
            },
            _ => emit(c, &p.to_value(), proof_text(&p), EXIT_OK),
        };
    }
    let (dot, line) = if v.get("pool").is_some() {
        match ShallowCirquent::from_json(&v) {
            Ok(q) => (cl5::to_dot(&q), cl5_text(&q)),
            Err(e) => return Output::error(e.to_string()),
        }
    } else if v.get("oformulas").is_some() {
        match Cirquent15::from_json(&v) {
            Ok(q) => (cl15::to_dot(&q), cl15_text(&q)),
            Err(e) => return Output::error(e.to_string()),
        }
    } else {
        return Output::error("expected a proof or a cirquent object");
    };
    match c.format {
        Format::Dot => Output {
            stdout: dot,
            stderr: String::new(),
            code: EXIT_OK,
        },
        _ => emit(c, &v, line + "\n", EXIT_OK),
    }
}
