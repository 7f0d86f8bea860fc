use super::{Atom, Formula};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Neg,
    Brec,
    Cobrec,
    Pand,
    Chand,
    Por,
    Chor,
    Impl,
    Brimpl,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::End => "end of input".into(),
            other => format!("{other:?}"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self, bytes: usize) {
        for c in self.src[self.pos..self.pos + bytes].chars() {
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.pos += bytes;
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    /// `after_operand` decides whether `o->` is the operator or an atom named `o`.
    fn next(&mut self, after_operand: bool) -> Result<(Tok, usize, usize), ParseError> {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.bump(c.len_utf8());
            } else {
                break;
            }
        }
        let (line, col) = (self.line, self.col);
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, line, col));
        };
        const FIXED: &[(&str, Tok)] = &[
            ("->", Tok::Impl),
            ("\u{2192}", Tok::Impl),
            ("\u{25e6}\u{2013}", Tok::Brimpl),
            ("\u{25e6}-", Tok::Brimpl),
            ("~", Tok::Neg),
            ("\u{ac}", Tok::Neg),
            ("!", Tok::Brec),
            ("\u{25cb}", Tok::Brec),
            ("?", Tok::Cobrec),
            ("\u{2af0}", Tok::Cobrec),
            ("&", Tok::Pand),
            ("\u{2227}", Tok::Pand),
            ("*", Tok::Chand),
            ("\u{2293}", Tok::Chand),
            ("|", Tok::Por),
            ("\u{2228}", Tok::Por),
            ("+", Tok::Chor),
            ("\u{2294}", Tok::Chor),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("\u{22a4}", Tok::True),
            ("\u{22a5}", Tok::False),
        ];
        if after_operand && rest.starts_with("o->") {
            self.bump(3);
            return Ok((Tok::Brimpl, line, col));
        }
        for (text, tok) in FIXED {
            if rest.starts_with(text) {
                self.bump(text.len());
                return Ok((tok.clone(), line, col));
            }
        }
        if c.is_ascii_alphabetic() {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let name = &rest[..len];
            if Atom::try_new(name).is_none() {
                return Err(self.error(format!(
                    "invalid atom `{name}` (elementary atoms are lowercase, general atoms start uppercase)"
                )));
            }
            self.bump(len);
            return Ok((Tok::Ident(name.to_string()), line, col));
        }
        if c == '1' || c == '0' {
            let len = rest
                .find(|ch: char| !ch.is_ascii_alphanumeric())
                .unwrap_or(rest.len());
            if len > 1 {
                return Err(self.error(format!("unexpected `{}`", &rest[..len])));
            }
            self.bump(1);
            return Ok((if c == '1' { Tok::True } else { Tok::False }, line, col));
        }
        Err(self.error(format!("unexpected character `{c}`")))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn advance(&mut self, after_operand: bool) -> Result<(), ParseError> {
        let (tok, line, col) = self.lex.next(after_operand)?;
        self.tok = tok;
        self.line = line;
        self.col = col;
        Ok(())
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    // level 1: `->`, `o->`, right associative
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.chain(2)?;
        match self.tok {
            Tok::Impl => {
                self.advance(false)?;
                Ok(Formula::implies(lhs, self.implication()?))
            }
            Tok::Brimpl => {
                self.advance(false)?;
                Ok(Formula::brimpl(lhs, self.implication()?))
            }
            _ => Ok(lhs),
        }
    }

    fn chain(&mut self, level: u8) -> Result<Formula, ParseError> {
        if level > 5 {
            return self.unary();
        }
        let op = match level {
            2 => Tok::Chor,
            3 => Tok::Por,
            4 => Tok::Chand,
            _ => Tok::Pand,
        };
        let mut args = vec![self.chain(level + 1)?];
        while self.tok == op {
            self.advance(false)?;
            args.push(self.chain(level + 1)?);
        }
        if args.len() == 1 {
            return Ok(args.pop().unwrap());
        }
        Ok(match level {
            2 => Formula::Chor(args),
            3 => Formula::Por(args),
            4 => Formula::Chand(args),
            _ => Formula::Pand(args),
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.tok.clone() {
            Tok::Neg => {
                self.advance(false)?;
                if let Tok::Ident(name) = &self.tok {
                    let atom = Atom::new(name);
                    self.advance(true)?;
                    return Ok(Formula::Lit {
                        atom,
                        negated: true,
                    });
                }
                Ok(Formula::not(self.unary()?))
            }
            Tok::Brec => {
                self.advance(false)?;
                Ok(Formula::brec(self.unary()?))
            }
            Tok::Cobrec => {
                self.advance(false)?;
                Ok(Formula::cobrec(self.unary()?))
            }
            Tok::Ident(name) => {
                let atom = Atom::new(&name);
                self.advance(true)?;
                Ok(Formula::Lit {
                    atom,
                    negated: false,
                })
            }
            Tok::True => {
                self.advance(true)?;
                Ok(Formula::True)
            }
            Tok::False => {
                self.advance(true)?;
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.advance(false)?;
                let inner = self.implication()?;
                if self.tok != Tok::RParen {
                    return Err(self.error(format!("expected `)`, found {}", self.tok.describe())));
                }
                self.advance(true)?;
                Ok(inner)
            }
            other => Err(self.error(format!("expected a formula, found {}", other.describe()))),
        }
    }
}

/// Parses the ASCII or Unicode surface syntax.
///
/// Chains of one binary connective become a single n-ary node, while
/// parentheses keep explicit grouping, so `parse(render(f)) == f`.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        lex: Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        },
        tok: Tok::End,
        line: 1,
        col: 1,
    };
    p.advance(false)?;
    let f = p.implication()?;
    if p.tok != Tok::End {
        return Err(p.error(format!("unexpected {}", p.tok.describe())));
    }
    Ok(f)
}
