//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `>`, `->`, `<->`.
//! `&` and `|` associate to the left; `>`, `->` and `<->` do not associate,
//! so `p>q>r` is rejected.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Meta(char),
    Not,
    And,
    Or,
    Cond,
    Imp,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Meta(c) => format!("metavariable `{c}`"),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Cond => "`>`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'>' => Tok::Cond,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_lowercase() || bytes[j].is_ascii_digit() || bytes[j] == b'_')
                {
                    j += 1;
                }
                out.push((start, Tok::Ident(text[i..j].to_string())));
                i = j;
                continue;
            }
            b'A'..=b'Z' => {
                if bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "metavariables are single uppercase letters".into(),
                    });
                }
                Tok::Meta(c as char)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn formula(&mut self) -> Result<Formula> {
        self.non_assoc(&Tok::Iff, "<->", Self::imp, Formula::iff)
    }

    fn imp(&mut self) -> Result<Formula> {
        self.non_assoc(&Tok::Imp, "->", Self::cond, Formula::imp)
    }

    fn cond(&mut self) -> Result<Formula> {
        self.non_assoc(&Tok::Cond, ">", Self::disj, Formula::cond)
    }

    fn non_assoc(
        &mut self,
        op: &Tok,
        sym: &str,
        next: fn(&mut Self) -> Result<Formula>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula> {
        let lhs = next(self)?;
        if !self.eat(op) {
            return Ok(lhs);
        }
        let rhs = next(self)?;
        if self.peek() == Some(op) {
            return self.err(format!("`{sym}` is non-associative; add parentheses"));
        }
        Ok(build(lhs, rhs))
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut lhs = self.neg()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.neg()?);
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.neg()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                Ok(Formula::Var(name))
            }
            Some(Tok::Meta(c)) => {
                self.idx += 1;
                Ok(Formula::Meta(c))
            }
            Some(Tok::LParen) => {
                self.idx += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {}", t.describe())),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a formula or schema.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser { toks, idx: 0, end: text.len() };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        let msg = format!("unexpected {} after complete formula", t.describe());
        return p.err(msg);
    }
    Ok(f)
}
