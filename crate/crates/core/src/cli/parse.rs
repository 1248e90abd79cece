//! The ideal file format.
//!
//! ```text
//! # comments start with '#'
//! ring p=2 vars=x,y,z,u,v,w order=grevlex
//! ideal I = y*u - x*v, z*u - x*w,
//!           z*v - y*w
//! ```
//!
//! A line ending in a comma continues onto the next line. Expressions use
//! `+`, `-`, `*`, `^`, parentheses and integer coefficients; products need
//! an explicit `*`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{MonomialOrder, Polynomial, Ring};

/// A parsed file: one ring and its named ideals, in file order.
#[derive(Clone, Debug)]
pub struct IdealFile {
    pub ring: Arc<Ring>,
    pub ideals: Vec<(String, Ideal)>,
}

impl IdealFile {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| {
                let known: Vec<&str> = self.ideals.iter().map(|(n, _)| n.as_str()).collect();
                Error::Usage(format!("no ideal named {name} (file defines: {})", known.join(", ")))
            })
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a whole ideal file.
pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    let mut ring: Option<Arc<Ring>> = None;
    let mut ideals: Vec<(String, Ideal)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    let mut n = 0;
    while n < lines.len() {
        let lineno = n + 1;
        let raw = strip_comment(lines[n]);
        n += 1;
        let trimmed = raw.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let keyword = trimmed.split_whitespace().next().unwrap_or("");
        let rest_col = indent + keyword.len() + 1;
        match keyword {
            "ring" => {
                if ring.is_some() {
                    return Err(perr(lineno, indent + 1, "only one ring per file"));
                }
                ring = Some(parse_ring_header(&trimmed[keyword.len()..], lineno, rest_col)?);
            }
            "ideal" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| perr(lineno, indent + 1, "ideal before the ring header"))?;
                // gather continuation lines
                let mut pieces = vec![(lineno, rest_col, trimmed[keyword.len()..].to_string())];
                while pieces.last().unwrap().2.trim_end().ends_with(',') && n < lines.len() {
                    pieces.push((n + 1, 1, strip_comment(lines[n]).to_string()));
                    n += 1;
                }
                let (name, ideal) = parse_ideal_block(r, &pieces)?;
                if ideals.iter().any(|(m, _)| *m == name) {
                    return Err(perr(lineno, rest_col, format!("ideal {name} defined twice")));
                }
                ideals.push((name, ideal));
            }
            other => {
                return Err(perr(lineno, indent + 1, format!("expected 'ring' or 'ideal', found '{other}'")));
            }
        }
    }
    let ring = ring.ok_or_else(|| perr(1, 1, "missing ring header"))?;
    Ok(IdealFile { ring, ideals })
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_ring_header(rest: &str, line: usize, col0: usize) -> Result<Arc<Ring>> {
    let mut p: Option<(u64, usize)> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::Grevlex;
    let mut offset = 0;
    for word in rest.split_whitespace() {
        let at = rest[offset..].find(word).unwrap() + offset;
        offset = at + word.len();
        let col = col0 + at;
        let (key, value) = word
            .split_once('=')
            .ok_or_else(|| perr(line, col, format!("expected key=value, found '{word}'")))?;
        let vcol = col + key.len() + 1;
        match key {
            "p" => {
                let v: u64 = value
                    .parse()
                    .map_err(|_| perr(line, vcol, format!("'{value}' is not a number")))?;
                p = Some((v, vcol));
            }
            "vars" => {
                let names: Vec<String> = value.split(',').map(str::to_string).collect();
                for name in &names {
                    if !is_identifier(name) {
                        return Err(perr(line, vcol, format!("'{name}' is not a valid variable name")));
                    }
                }
                vars = Some(names);
            }
            "order" => {
                order = MonomialOrder::parse(value)
                    .ok_or_else(|| perr(line, vcol, format!("unknown monomial order '{value}'")))?;
            }
            _ => return Err(perr(line, col, format!("unknown ring option '{key}'"))),
        }
    }
    let (p, pcol) = p.ok_or_else(|| perr(line, col0, "ring header needs p=<prime>"))?;
    let vars = vars.ok_or_else(|| perr(line, col0, "ring header needs vars=<names>"))?;
    Ring::new(p, &vars, order).map_err(|e| {
        let message = match e {
            Error::Usage(m) | Error::RingMismatch(m) | Error::Invariant(m) => m,
            other => other.to_string(),
        };
        perr(line, pcol, message)
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_ideal_block(ring: &Arc<Ring>, pieces: &[(usize, usize, String)]) -> Result<(String, Ideal)> {
    let (line, col0, first) = &pieces[0];
    let eq = first
        .find('=')
        .ok_or_else(|| perr(*line, *col0, "expected 'ideal NAME = ...'"))?;
    let name = first[..eq].trim();
    if !is_identifier(name) {
        return Err(perr(*line, *col0, format!("'{name}' is not a valid ideal name")));
    }
    let mut gens = Vec::new();
    let mut segments: Vec<(usize, usize, &str)> = vec![(*line, col0 + eq, &first[eq + 1..])];
    segments.extend(pieces[1..].iter().map(|(l, c, s)| (*l, *c - 1, s.as_str())));
    for (l, base, text) in segments {
        let mut start = 0;
        for part in text.split(',') {
            let col = base + start + 1;
            start += part.len() + 1;
            if part.trim().is_empty() {
                continue;
            }
            gens.push(parse_polynomial_at(ring, part, l, col)?);
        }
    }
    if gens.is_empty() {
        return Err(Error::Usage(format!("ideal {name} (line {line}) has no generators")));
    }
    Ok((name.to_string(), Ideal::new(ring, gens)?))
}

/// Parses one polynomial expression.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, text, 1, 1)
}

fn parse_polynomial_at(ring: &Arc<Ring>, text: &str, line: usize, col: usize) -> Result<Polynomial> {
    let tokens = tokenize(text, line, col)?;
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
        line,
        end_col: col + text.len(),
    };
    let value = p.expr()?;
    if let Some(t) = p.tokens.get(p.pos) {
        return Err(perr(line, t.col, format!("unexpected '{}'", t.kind.text())));
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
        }
    }
}

struct Token {
    kind: Tok,
    col: usize,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| perr(line, col, format!("number '{s}' is too large")))?;
            out.push(Token { kind: Tok::Num(n), col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                kind: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*^()".contains(c) {
            out.push(Token { kind: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(perr(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power ('*' power)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        if let Some(Tok::Ident(_) | Tok::Num(_)) | Some(Tok::Op('(')) = self.peek() {
            return Err(perr(self.line, self.col(), "missing '*' between factors"));
        }
        Ok(acc)
    }

    // power := atom ('^' number)?
    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let n = u32::try_from(n)
                        .ok()
                        .filter(|&n| n <= u16::MAX as u32)
                        .ok_or_else(|| perr(self.line, col, format!("exponent {n} is too large")))?;
                    return Ok(base.pow(n));
                }
                _ => return Err(perr(self.line, col, "expected an exponent after '^'")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = (n % self.ring.characteristic() as u64) as i64;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let k = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| perr(self.line, col, format!("unknown variable '{name}'")))?;
                Ok(Polynomial::var(self.ring, k))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.line, self.col(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some(t) => Err(perr(self.line, col, format!("unexpected '{}'", t.text()))),
            None => Err(perr(self.line, col, "unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DET: &str = "# the 2x2 minors\nring p=2 vars=x,y,z,u,v,w order=grevlex\nideal I = y*u - x*v, z*u - x*w,\n  z*v - y*w\n";

    #[test]
    fn parses_the_determinantal_file() {
        let f = parse_ideal_file(DET).unwrap();
        assert_eq!(f.ring.arity(), 6);
        let i = f.ideal("I").unwrap();
        assert_eq!(i.generators().len(), 3);
        assert!(f.ideal("J").is_err());
    }

    #[test]
    fn expressions() {
        let r = Ring::new(7, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let p = parse_polynomial(&r, "-(x + 2*y)^2 + 3").unwrap();
        assert_eq!(p.to_string(), "-x^2 + 3*x*y + 3*y^2 + 3");
        assert_eq!(parse_polynomial(&r, "10*x").unwrap().to_string(), "3*x");
        assert_eq!(parse_polynomial(&r, "x - x").unwrap().to_string(), "0");
    }

    #[test]
    fn error_locations() {
        let r = Ring::new(7, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let at = |s: &str| match parse_polynomial(&r, s) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(at("x + q"), (1, 5));
        assert_eq!(at("x y"), (1, 3));
        assert_eq!(at("x^"), (1, 3));
        assert_eq!(at("(x"), (1, 3));
        assert_eq!(at("x $"), (1, 3));
        match parse_ideal_file("ring p=2 vars=x\nideal I = x, k") {
            Err(Error::Parse { line: 2, column: 14, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_headers_and_empty_blocks() {
        match parse_ideal_file("ring p=4 vars=x,y") {
            Err(Error::Parse { line: 1, column: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ideal_file("ideal I = x"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_ideal_file("ring p=3 vars=x\nideal I ="),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            parse_ideal_file("ring p=3 vars=x order=weird"),
            Err(Error::Parse { .. })
        ));
    }
}
