use super::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

struct Glyphs {
    t: &'static str,
    f: &'static str,
    neg: &'static str,
    brec: &'static str,
    cobrec: &'static str,
    pand: &'static str,
    por: &'static str,
    chand: &'static str,
    chor: &'static str,
    imp: &'static str,
    brimp: &'static str,
}

const ASCII: Glyphs = Glyphs {
    t: "1",
    f: "0",
    neg: "~",
    brec: "!",
    cobrec: "?",
    pand: " & ",
    por: " | ",
    chand: " * ",
    chor: " + ",
    imp: " -> ",
    brimp: " o-> ",
};

const UNICODE: Glyphs = Glyphs {
    t: "\u{22a4}",
    f: "\u{22a5}",
    neg: "\u{ac}",
    brec: "\u{25cb}",
    cobrec: "\u{2af0}",
    pand: " \u{2227} ",
    por: " \u{2228} ",
    chand: " \u{2293} ",
    chor: " \u{2294} ",
    imp: " \u{2192} ",
    brimp: " \u{25e6}\u{2013} ",
};

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Impl(..) | Formula::Brimpl(..) => 1,
        Formula::Chor(_) => 2,
        Formula::Por(_) => 3,
        Formula::Chand(_) => 4,
        Formula::Pand(_) => 5,
        _ => 6,
    }
}

pub(super) fn render(f: &Formula, style: Style) -> String {
    let g = match style {
        Style::Ascii => &ASCII,
        Style::Unicode => &UNICODE,
    };
    let mut out = String::new();
    go(f, g, &mut out);
    out
}

fn wrapped(f: &Formula, parens: bool, g: &Glyphs, out: &mut String) {
    if parens {
        out.push('(');
        go(f, g, out);
        out.push(')');
    } else {
        go(f, g, out);
    }
}

fn go(f: &Formula, g: &Glyphs, out: &mut String) {
    match f {
        Formula::True => out.push_str(g.t),
        Formula::False => out.push_str(g.f),
        Formula::Lit { atom, negated } => {
            if *negated {
                out.push_str(g.neg);
            }
            out.push_str(atom.name());
        }
        Formula::Not(a) => {
            out.push_str(g.neg);
            // `~p` would read back as a negative literal
            let parens = level(a) < 6 || matches!(**a, Formula::Lit { negated: false, .. });
            wrapped(a, parens, g, out);
        }
        Formula::Brec(a) | Formula::Cobrec(a) => {
            out.push_str(if matches!(f, Formula::Brec(_)) {
                g.brec
            } else {
                g.cobrec
            });
            wrapped(a, level(a) < 6, g, out);
        }
        Formula::Pand(v) | Formula::Por(v) | Formula::Chand(v) | Formula::Chor(v) => {
            let sep = match f {
                Formula::Pand(_) => g.pand,
                Formula::Por(_) => g.por,
                Formula::Chand(_) => g.chand,
                _ => g.chor,
            };
            let lv = level(f);
            for (i, a) in v.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                wrapped(a, level(a) <= lv, g, out);
            }
        }
        Formula::Impl(a, b) | Formula::Brimpl(a, b) => {
            wrapped(a, level(a) <= 1, g, out);
            out.push_str(if matches!(f, Formula::Impl(..)) {
                g.imp
            } else {
                g.brimp
            });
            go(b, g, out);
        }
    }
}
