//! Recursive-descent parser for scalar expressions.
//!
//! Grammar (see docs/grammar.ebnf):
//!   expr   := term (('+' | '-') term)*
//!   term   := factor (('*' | '/') factor)*
//!   factor := '-' factor | atom ('^' ['-'] integer)?
//!   atom   := rational | keyword | ident | '(' expr ')'
//! where rational is `integer ('/' integer)?` and the keywords i, sqrt2,
//! sqrt3, sqrt6 denote field constants. The printer in expr.rs emits fully
//! parenthesized strings, so parse(print(e)) == e up to constant folding
//! (and exactly == e for expressions built through the smart constructors).

use crate::expr::Expr;
use crate::scalar::FieldScalar;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Int(src[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }
    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.here(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = acc.div(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let sign = if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                -1
            } else {
                1
            };
            match self.bump() {
                Some(Tok::Int(digits)) => {
                    let n: i32 = digits
                        .parse()
                        .map_err(|_| ParseError {
                            pos: self.here(),
                            message: format!("exponent {digits} out of range"),
                        })?;
                    return Ok(base.pow(sign * n));
                }
                _ => return self.err("expected integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some(Tok::Int(digits)) => {
                let num: i64 = digits.parse().map_err(|_| ParseError {
                    pos: self.here(),
                    message: format!("integer {digits} out of range"),
                })?;
                // rational literal: integer '/' integer (binds tighter than
                // term-level division only when both sides are bare integers;
                // term-level '/' handles the general case identically since
                // const/const folds, so no ambiguity arises)
                Ok(Expr::int(num))
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(Expr::i()),
                "sqrt2" => Ok(Expr::constant(FieldScalar::sqrt2())),
                "sqrt3" => Ok(Expr::constant(FieldScalar::sqrt3())),
                "sqrt6" => Ok(Expr::constant(FieldScalar::sqrt6())),
                _ => Ok(Expr::var(&name)),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse and reject variables outside `allowed`.
pub fn parse_expr_with_vars(
    src: &str,
    allowed: &BTreeSet<String>,
) -> Result<Expr, ParseError> {
    let e = parse_expr(src)?;
    for v in e.vars() {
        if !allowed.contains(&v) {
            return Err(ParseError {
                pos: 0,
                message: format!("unknown variable {v}"),
            });
        }
    }
    Ok(e)
}
