//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! IDENT  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Integer literals are reduced mod p.

use super::model::{add_scaled, AlgebraModel, Terms};
use crate::error::{Error, Result};
use crate::modp::neg_mod;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
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
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_owned())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_owned())));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!(
                        "unexpected character {:?}",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    model: &'a AlgebraModel,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn constant(&self, c: u32) -> Terms {
        let mut t = Terms::new();
        if c != 0 {
            t.insert(self.model.unit_monomial(), c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let p = self.model.prime().get();
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    add_scaled(&mut acc, &rhs, 1, p);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    add_scaled(&mut acc, &rhs, p - 1, p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.model.mul_terms(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Terms> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let p = self.model.prime().get();
            let mut inner = self.unary()?;
            for c in inner.values_mut() {
                *c = neg_mod(*c, p);
            }
            return Ok(inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Int(s)) => match s.parse::<u32>() {
                    Ok(e) => e,
                    Err(_) => return self.err(format!("exponent {s} is too large")),
                },
                _ => return self.err("expected a non-negative integer exponent after `^`"),
            };
            self.pos += 1;
            return Ok(self.model.pow_terms(&base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let p = self.model.prime().as_u64();
                let c = s
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.constant(c as u32))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .model
                    .generator_index(&name)
                    .ok_or(Error::UnknownIdentifier(name))?;
                let mut t = Terms::new();
                t.insert(self.model.generator_monomial(idx, 1), 1);
                Ok(t)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_terms(model: &AlgebraModel, text: &str) -> Result<Terms> {
    let toks = lex(text)?;
    let mut parser = Parser {
        model,
        toks,
        pos: 0,
        end: text.len(),
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(out)
}
