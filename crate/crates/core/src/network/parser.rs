//! Line-oriented DSL for generalized networks.
//!
//! ```text
//! species X Y
//! param alpha = 1/2
//! vertex v1: 0 | alpha X        # stoichiometric | kinetic-order
//! vertex v2: X | X + 1/2 Y
//! edge v1 -> v2 [k12]
//! ```
//!
//! `species` and `param` lines are read first, so later lines may refer to
//! them regardless of order. A vertex without `| ...` uses its stoichiometric
//! complex as kinetic-order complex.

use std::collections::BTreeMap;

use super::model::{Complex, Edge, GeneralizedNetwork, Vertex};
use super::NetworkError;
use crate::linalg::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Colon,
    Bar,
    Plus,
    Arrow,
    LBracket,
    RBracket,
    Equals,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '*' || c == '\''
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, NetworkError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            ':' => {
                out.push(Token { tok: Tok::Colon, column });
                i += 1;
            }
            '|' => {
                out.push(Token { tok: Tok::Bar, column });
                i += 1;
            }
            '+' => {
                out.push(Token { tok: Tok::Plus, column });
                i += 1;
            }
            '[' => {
                out.push(Token { tok: Tok::LBracket, column });
                i += 1;
            }
            ']' => {
                out.push(Token { tok: Tok::RBracket, column });
                i += 1;
            }
            '=' => {
                out.push(Token { tok: Tok::Equals, column });
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, column });
                i += 2;
            }
            c if c.is_ascii_digit() || c == '-' => {
                // A number, possibly followed directly by a species name ("2X").
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), column });
                if i < chars.len() && is_name_start(chars[i]) {
                    let s = i;
                    while i < chars.len() && is_name_char(chars[i]) {
                        i += 1;
                    }
                    out.push(Token { tok: Tok::Word(chars[s..i].iter().collect()), column: s + 1 });
                }
            }
            c if is_name_start(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), column });
            }
            other => {
                return Err(NetworkError::Syntax {
                    line: lineno,
                    column,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

fn is_name(s: &str) -> bool {
    s.chars().next().is_some_and(is_name_start) && s.chars().all(is_name_char)
}

struct Line<'a> {
    no: usize,
    toks: &'a [Token],
    pos: usize,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> NetworkError {
        NetworkError::Syntax { line: self.no, column, message: message.into() }
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), NetworkError> {
        let column = self.column();
        match self.next() {
            Some(t) if t.tok == want => Ok(()),
            _ => Err(self.syntax(column, format!("expected {what}"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, usize), NetworkError> {
        let column = self.column();
        match self.next() {
            Some(Token { tok: Tok::Word(w), .. }) if is_name(w) => Ok((w.clone(), column)),
            _ => Err(self.syntax(column, format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<(), NetworkError> {
        if self.pos < self.toks.len() {
            Err(self.syntax(self.column(), "unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Parses DSL text into a validated network.
pub fn parse_network(text: &str) -> Result<GeneralizedNetwork, NetworkError> {
    parse_network_with(text, &BTreeMap::new())
}

/// Like [`parse_network`], replacing the values of declared parameters by `overrides`.
pub fn parse_network_with(
    text: &str,
    overrides: &BTreeMap<String, Rational>,
) -> Result<GeneralizedNetwork, NetworkError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = tokenize(raw, i + 1)?;
        if !toks.is_empty() {
            lines.push((i + 1, toks, raw.chars().count() + 1));
        }
    }

    let mut species: Vec<String> = Vec::new();
    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    for (no, toks, end_column) in &lines {
        let mut l = Line { no: *no, toks, pos: 0, end_column: *end_column };
        let Some(Tok::Word(kw)) = l.peek() else {
            return Err(l.syntax(l.column(), "expected a keyword"));
        };
        match kw.as_str() {
            "species" => {
                l.next();
                if l.peek().is_none() {
                    return Err(l.syntax(l.column(), "expected species name"));
                }
                while l.peek().is_some() {
                    let (name, _) = l.name("species name")?;
                    if species.contains(&name) {
                        return Err(NetworkError::DuplicateSpecies { line: *no, name });
                    }
                    species.push(name);
                }
            }
            "param" => {
                l.next();
                let (name, _) = l.name("parameter name")?;
                l.expect(Tok::Equals, "'='")?;
                let column = l.column();
                let value = match l.next() {
                    Some(Token { tok: Tok::Word(w), .. }) => parse_rational(w),
                    _ => None,
                }
                .ok_or_else(|| l.syntax(column, "expected rational literal"))?;
                l.finish()?;
                if params.contains_key(&name) {
                    return Err(NetworkError::DuplicateParameter { line: *no, name });
                }
                params.insert(name, value);
            }
            "vertex" | "edge" => {}
            other => {
                return Err(l.syntax(toks[0].column, format!("unknown keyword {other:?}")));
            }
        }
    }
    for (name, value) in overrides {
        match params.get_mut(name) {
            Some(v) => *v = value.clone(),
            None => return Err(NetworkError::UnknownParameterOverride { name: name.clone() }),
        }
    }

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut pending_edges = Vec::new();
    for (no, toks, end_column) in &lines {
        let mut l = Line { no: *no, toks, pos: 0, end_column: *end_column };
        let Some(Tok::Word(kw)) = l.peek() else { unreachable!() };
        match kw.as_str() {
            "vertex" => {
                l.next();
                let (name, _) = l.name("vertex name")?;
                l.expect(Tok::Colon, "':'")?;
                let stoichiometric = parse_complex(&mut l, &species, &params)?;
                let kinetic = if l.peek() == Some(&Tok::Bar) {
                    l.next();
                    Some(parse_complex(&mut l, &species, &params)?)
                } else {
                    None
                };
                l.finish()?;
                if vertices.iter().any(|v| v.name == name) {
                    return Err(NetworkError::DuplicateVertex { line: *no, name });
                }
                vertices.push(Vertex { name, stoichiometric, kinetic });
            }
            "edge" => {
                l.next();
                let (src, src_col) = l.name("source vertex")?;
                l.expect(Tok::Arrow, "'->'")?;
                let (dst, dst_col) = l.name("target vertex")?;
                let rate = if l.peek() == Some(&Tok::LBracket) {
                    l.next();
                    let (r, _) = l.name("rate symbol")?;
                    l.expect(Tok::RBracket, "']'")?;
                    Some(r)
                } else {
                    None
                };
                l.finish()?;
                pending_edges.push((*no, src, src_col, dst, dst_col, rate));
            }
            _ => {}
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    for (no, src, src_col, dst, dst_col, rate) in pending_edges {
        let lookup = |name: &str, column: usize| {
            vertices.iter().position(|v| v.name == name).ok_or_else(|| NetworkError::UnknownVertex {
                line: no,
                column,
                name: name.to_string(),
            })
        };
        let source = lookup(&src, src_col)?;
        let target = lookup(&dst, dst_col)?;
        if source == target {
            return Err(NetworkError::SelfLoop { line: no, vertex: src });
        }
        if edges.iter().any(|e| e.source == source && e.target == target) {
            return Err(NetworkError::ParallelEdge { line: no, from: src, to: dst });
        }
        edges.push(Edge { source, target, rate });
    }

    GeneralizedNetwork::new(species, vertices, edges, params)
}

fn parse_complex(
    l: &mut Line<'_>,
    species: &[String],
    params: &BTreeMap<String, Rational>,
) -> Result<Complex, NetworkError> {
    let mut c = Complex::zero();
    if let Some(Tok::Word(w)) = l.peek() {
        if w == "0" && !matches!(l.toks.get(l.pos + 1).map(|t| &t.tok), Some(Tok::Word(_))) {
            l.next();
            return Ok(c);
        }
    }
    loop {
        let column = l.column();
        let mut words: Vec<(&String, usize)> = Vec::new();
        while let Some(Token { tok: Tok::Word(w), column }) = l.toks.get(l.pos) {
            words.push((w, *column));
            l.pos += 1;
        }
        let (coeff, (name, name_col)) = match words.as_slice() {
            [name] => (Rational::from_integer(1.into()), *name),
            [(coeff, ccol), name] => {
                let v = if let Some(v) = parse_rational(coeff) {
                    v
                } else if is_name(coeff) {
                    params.get(*coeff).cloned().ok_or_else(|| NetworkError::UnresolvedParameter {
                        line: l.no,
                        column: *ccol,
                        name: (*coeff).clone(),
                    })?
                } else {
                    return Err(l.syntax(*ccol, format!("invalid coefficient {coeff:?}")));
                };
                (v, *name)
            }
            [] => return Err(l.syntax(column, "expected a term")),
            _ => return Err(l.syntax(words[2].1, "a term is an optional coefficient followed by a species")),
        };
        let s = species.iter().position(|s| s == name).ok_or_else(|| {
            if parse_rational(name).is_some() {
                l.syntax(name_col, "expected species name after coefficient")
            } else {
                NetworkError::UnknownSpecies { line: l.no, column: name_col, name: name.clone() }
            }
        })?;
        c.add_term(s, coeff);
        if l.peek() == Some(&Tok::Plus) {
            l.next();
        } else {
            break;
        }
    }
    Ok(c)
}
