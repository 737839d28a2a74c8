//! Text syntax for elements.
//!
//! ```text
//! expr   := term { "+" term }
//! term   := [ scalar "." ] atom { atom }
//! atom   := ID [ "^*" ]
//! ```
//!
//! A lone `0` is the zero element. Products that do not compose are valid
//! and evaluate to zero.

use std::fmt;

use crate::element::{Element, Lpa};
use crate::semiring::Semiring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownName(String),
    Scalar(String),
}

/// A parse failure at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "column {}: {m}", self.column),
            ParseErrorKind::UnknownName(n) => write!(f, "column {}: unknown vertex or edge {n:?}", self.column),
            ParseErrorKind::Scalar(m) => write!(f, "column {}: bad scalar: {m}", self.column),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Scalar(String),
    Dot,
    Plus,
    Star,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, m: &str| ParseError {
        column: i + 1,
        kind: ParseErrorKind::Syntax(m.to_string()),
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((start, Tok::Plus));
            i += 1;
        } else if c == '.' {
            out.push((start, Tok::Dot));
            i += 1;
        } else if c == '^' {
            if chars.get(i + 1) != Some(&'*') {
                return Err(err(i, "expected '*' after '^'"));
            }
            out.push((start, Tok::Star));
            i += 2;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((start, Tok::Id(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() || c == '-' {
            if c == '-' {
                i += 1;
                if chars[i..].starts_with(&['i', 'n', 'f']) {
                    i += 3;
                    out.push((start, Tok::Scalar("-inf".into())));
                    continue;
                }
                if !chars.get(i).is_some_and(char::is_ascii_digit) {
                    return Err(err(start, "expected digits or 'inf' after '-'"));
                }
            }
            let digits = |i: &mut usize| {
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                }
            };
            digits(&mut i);
            if chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                i += 1;
                digits(&mut i);
            }
            if chars.get(i) == Some(&'/') {
                i += 1;
                if !chars.get(i).is_some_and(char::is_ascii_digit) {
                    return Err(err(i, "expected a denominator"));
                }
                digits(&mut i);
            }
            out.push((start, Tok::Scalar(chars[start..i].iter().collect())));
        } else {
            return Err(err(i, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// The element together with the terms whose factors failed to compose.
#[derive(Clone, Debug)]
pub struct Parsed<E> {
    pub element: Element<E>,
    /// `(column, term text)` for each product that evaluated to zero.
    pub zero_terms: Vec<(usize, String)>,
}

pub fn parse_expression<S: Semiring>(src: &str, lpa: &Lpa<S>) -> Result<Element<S::Elem>, ParseError> {
    parse_expression_detailed(src, lpa).map(|p| p.element)
}

pub fn parse_expression_detailed<S: Semiring>(src: &str, lpa: &Lpa<S>) -> Result<Parsed<S::Elem>, ParseError> {
    let toks = lex(src)?;
    let end = src.chars().count() + 1;
    let g = lpa.graph();
    let ring = lpa.ring();
    let mut pos = 0;
    let mut total = lpa.zero();
    let mut zero_terms = Vec::new();
    let col = |pos: usize| toks.get(pos).map_or(end, |(c, _)| c + 1);
    let syntax = |column: usize, m: &str| ParseError {
        column,
        kind: ParseErrorKind::Syntax(m.to_string()),
    };
    loop {
        let term_start = col(pos);
        let mut coeff = ring.one();
        let mut explicit_zero = false;
        if let Some((_, Tok::Scalar(s))) = toks.get(pos) {
            let scalar_col = col(pos);
            if s == "0" && !matches!(toks.get(pos + 1), Some((_, Tok::Dot))) {
                explicit_zero = true;
                pos += 1;
            } else {
                coeff = ring.parse_scalar(s).map_err(|e| ParseError {
                    column: scalar_col,
                    kind: ParseErrorKind::Scalar(e.to_string()),
                })?;
                pos += 1;
                if !matches!(toks.get(pos), Some((_, Tok::Dot))) {
                    return Err(syntax(col(pos), "expected '.' after the scalar"));
                }
                pos += 1;
            }
        }
        let mut value: Option<Element<S::Elem>> = None;
        if !explicit_zero {
            while let Some((c, Tok::Id(name))) = toks.get(pos) {
                let starred = matches!(toks.get(pos + 1), Some((_, Tok::Star)));
                let atom = if let Some(v) = g.vertex(name) {
                    lpa.vertex(v)
                } else if let Some(e) = g.edge(name) {
                    if starred {
                        lpa.ghost(e)
                    } else {
                        lpa.edge(e)
                    }
                } else {
                    return Err(ParseError {
                        column: c + 1,
                        kind: ParseErrorKind::UnknownName(name.clone()),
                    });
                };
                pos += if starred { 2 } else { 1 };
                value = Some(match value {
                    None => atom,
                    Some(acc) => lpa.mul(&acc, &atom).expect("same graph"),
                });
            }
            let Some(v) = value else {
                return Err(syntax(col(pos), "expected a vertex or edge name"));
            };
            if v.is_zero() {
                let stop = toks.get(pos).map_or(src.chars().count(), |(c, _)| *c);
                let text: String = src.chars().skip(term_start - 1).take(stop + 1 - term_start).collect();
                zero_terms.push((term_start, text.trim().to_string()));
            }
            total = lpa.add(&total, &lpa.scale(&coeff, &v)).expect("same graph");
        }
        match toks.get(pos) {
            None => break,
            Some((_, Tok::Plus)) => pos += 1,
            Some((c, _)) => return Err(syntax(c + 1, "expected '+' or the end of input")),
        }
    }
    Ok(Parsed {
        element: total,
        zero_terms,
    })
}

/// Prints an element in the grammar above; terms are joined by ` + `.
pub fn format_element<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let g = lpa.graph();
    let ring = lpa.ring();
    let terms: Vec<String> = x
        .terms()
        .map(|(k, c)| {
            let mut atoms: Vec<String> = k.real.edges().iter().map(|&e| g.edge_name(e).to_string()).collect();
            atoms.extend(k.ghost.edges().iter().rev().map(|&e| format!("{}^*", g.edge_name(e))));
            if atoms.is_empty() {
                atoms.push(g.vertex_name(k.range()).to_string());
            }
            let body = atoms.join(" ");
            if ring.is_one(c) {
                body
            } else {
                format!("{} . {}", ring.format_scalar(c), body)
            }
        })
        .collect();
    terms.join(" + ")
}
