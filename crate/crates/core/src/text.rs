//! Text format for polynomials and maps.
//!
//! ```text
//! P2 [x1*x2 : x0*x2 : x0*x1]
//! A3 (x + z*(y + x*z), y + x*z, z)
//! ```
//!
//! Projective maps use `x0..xd`, affine maps `x1..xd` (plus `x, y, z` when `d <= 3`).
//! Coefficients are integer or rational literals; `*` is never implicit. Printing
//! always uses the indexed names, and printed text parses back to the same map.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::maps::{AffineMap, ProjectiveMap};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Projective,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedMap {
    Projective(ProjectiveMap),
    Affine(AffineMap),
}

impl ParsedMap {
    /// The projective map, homogenizing affine input.
    pub fn projective(&self) -> Result<ProjectiveMap> {
        match self {
            ParsedMap::Projective(m) => Ok(m.clone()),
            ParsedMap::Affine(a) => a.homogenize(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ParsedMap::Projective(m) => m.dim(),
            ParsedMap::Affine(a) => a.dim(),
        }
    }
}

impl fmt::Display for ParsedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedMap::Projective(m) => m.fmt(f),
            ParsedMap::Affine(a) => a.fmt(f),
        }
    }
}

/// A parsed map literal. `components` are exactly as written (before reduction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapExpression {
    pub source: String,
    pub kind: MapKind,
    pub dim: usize,
    pub field: Field,
    pub components: Vec<Polynomial>,
    pub map: ParsedMap,
}

/// Canonical variable names: `x0..xd` for `P^d`, `x1..xd` for `A^d`.
pub fn variable_names(kind: MapKind, dim: usize) -> Vec<String> {
    match kind {
        MapKind::Projective => (0..=dim).map(|i| format!("x{}", i)).collect(),
        MapKind::Affine => (1..=dim).map(|i| format!("x{}", i)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_owned())));
        } else if b"+-*/^()[]:,".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return parse_err(i, format!("unexpected character {:?}", ch));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: Field,
    names: &'a [(String, usize)],
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe();
            parse_err(self.offset(), format!("expected '{}', found {}", c, found))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Num(n)) => format!("number {}", n),
            Some(Tok::Ident(s)) => format!("'{}'", s),
            Some(Tok::Sym(c)) => format!("'{}'", c),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                let divisor = self.unary()?;
                if !divisor.is_constant() || divisor.is_zero() {
                    return parse_err(at, "can only divide by a nonzero constant");
                }
                let inv = self.field.inv(&divisor.terms()[0].1)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => {
                    let found = self.describe();
                    return parse_err(at, format!("expected an exponent, found {}", found));
                }
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| Error::Parse { offset: at, message: "exponent overflow".into() })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.field, self.nvars, self.field.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().find(|(n, _)| *n == name) {
                    Some(&(_, index)) => Ok(Polynomial::var(self.field, self.nvars, index)),
                    None => parse_err(at, format!("unknown variable '{}'", name)),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            _ => {
                let found = self.describe();
                parse_err(at, format!("expected a number, variable or '(', found {}", found))
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            let found = self.describe();
            return parse_err(self.offset(), format!("unexpected {}", found));
        }
        Ok(())
    }
}

fn name_table(variables: &[&str]) -> Vec<(String, usize)> {
    variables.iter().enumerate().map(|(i, v)| ((*v).to_owned(), i)).collect()
}

/// Parses `text` as a polynomial in `variables` (variable `i` is `variables[i]`).
pub fn parse_polynomial(text: &str, variables: &[&str], field: Field) -> Result<Polynomial> {
    if variables.is_empty() {
        return Err(Error::InvalidArgument("no variables".into()));
    }
    let names = name_table(variables);
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len(), field, names: &names, nvars: variables.len() };
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses `P<d> [c0 : ... : cd]` or `A<d> (c1, ..., cd)`.
pub fn parse_map(text: &str, field: Field) -> Result<MapExpression> {
    let toks = tokenize(text)?;
    let (kind, dim) = match toks.first() {
        Some((at, Tok::Ident(head))) => {
            let (letter, digits) = head.split_at(1);
            let kind = match letter {
                "P" => MapKind::Projective,
                "A" => MapKind::Affine,
                _ => return parse_err(*at, "expected 'P<d>' or 'A<d>'"),
            };
            let dim: usize = match digits.parse() {
                Ok(d) if d >= 1 => d,
                _ => return parse_err(*at, format!("bad dimension in '{}'", head)),
            };
            (kind, dim)
        }
        Some((at, _)) => return parse_err(*at, "expected 'P<d>' or 'A<d>'"),
        None => return parse_err(0, "empty map"),
    };
    let canonical = variable_names(kind, dim);
    let mut names: Vec<(String, usize)> = canonical.iter().cloned().zip(0..).collect();
    let nvars = canonical.len();
    if kind == MapKind::Affine && dim <= 3 {
        names.extend(["x", "y", "z"].iter().take(dim).enumerate().map(|(i, n)| ((*n).to_owned(), i)));
    }
    let (open, sep, close) = match kind {
        MapKind::Projective => ('[', ':', ']'),
        MapKind::Affine => ('(', ',', ')'),
    };
    let mut p = Parser { toks, pos: 1, end: text.len(), field, names: &names, nvars };
    p.expect(open)?;
    let mut components = Vec::new();
    loop {
        components.push(p.expr()?);
        if !p.eat(sep) {
            break;
        }
    }
    p.expect(close)?;
    p.finish()?;
    let expected = match kind {
        MapKind::Projective => dim + 1,
        MapKind::Affine => dim,
    };
    if components.len() != expected {
        return Err(Error::ComponentCount { expected, found: components.len() });
    }
    let map = match kind {
        MapKind::Projective => ParsedMap::Projective(ProjectiveMap::new(components.clone())?),
        MapKind::Affine => ParsedMap::Affine(AffineMap::new(components.clone())?),
    };
    Ok(MapExpression { source: text.to_owned(), kind, dim, field, components, map })
}

/// Writes `p` with the given variable names, in canonical term order.
pub fn format_polynomial(p: &Polynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = if negative { field.neg(c) } else { c.clone() };
        let mut factors: Vec<String> = Vec::new();
        if !field.is_one(&magnitude) || m.is_one() {
            factors.push(magnitude.to_string());
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[v].clone()),
                _ => factors.push(format!("{}^{}", names[v], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(MapKind::Projective, self.dim());
        let parts: Vec<String> = self.components().iter().map(|p| format_polynomial(p, &names)).collect();
        write!(f, "P{} [{}]", self.dim(), parts.join(" : "))
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(MapKind::Affine, self.dim());
        let parts: Vec<String> = self.components().iter().map(|p| format_polynomial(p, &names)).collect();
        write!(f, "A{} ({})", self.dim(), parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::maps_equal;

    #[test]
    fn polynomial_literals() {
        let q = Field::Rational;
        let p = parse_polynomial("x0^2*x1 + 3*x2^3", &["x0", "x1", "x2"], q).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.terms().iter().all(|(m, _)| m.degree() == 3));
        let p = parse_polynomial("x + y", &["x", "y", "z"], q).unwrap();
        assert_eq!(p.degree_in(2), 0);
        let half = parse_polynomial("3/4*x - x/4", &["x"], q).unwrap();
        assert_eq!(format_polynomial(&half, &["x".into()]), "1/2*x");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let e = parse_polynomial("x0^2 +", &["x0"], Field::Rational).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 6, .. }), "{:?}", e);
        let e = parse_polynomial("2 x0", &["x0"], Field::Rational).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 2, .. }));
        let e = parse_polynomial("w + 1", &["x0"], Field::Rational).unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, ref message } if message.contains("unknown")));
        let e = parse_polynomial("x0^99999999999", &["x0"], Field::Rational).unwrap_err();
        assert!(matches!(e, Error::Parse { ref message, .. } if message.contains("overflow")));
        assert!(parse_polynomial("x/0", &["x"], Field::Rational).is_err());
    }

    #[test]
    fn finite_field_literals_reduce() {
        let f = Field::prime(7).unwrap();
        let p = parse_polynomial("9*x - 1/2", &["x"], f).unwrap();
        assert_eq!(format_polynomial(&p, &["x".into()]), "2*x + 3");
    }

    #[test]
    fn map_literals() {
        let q = Field::Rational;
        let sigma = parse_map("P2 [x1*x2 : x0*x2 : x0*x1]", q).unwrap();
        let m = sigma.map.projective().unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.to_string(), "P2 [x1*x2 : x0*x2 : x0*x1]");
        let f = parse_map("A3 (x + z*(y + x*z), y + x*z, z)", q).unwrap();
        assert_eq!(f.kind, MapKind::Affine);
        assert_eq!(f.map.projective().unwrap().degree(), 3);
        assert!(matches!(
            parse_map("P2 [x0 : x1^2 : x2]", q).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
        assert!(matches!(parse_map("P2 [x0 : x1]", q).unwrap_err(), Error::ComponentCount { .. }));
        assert!(matches!(
            parse_map("P1 [x0^2 + x1 : x1^2]", q).unwrap_err(),
            Error::NotHomogeneous { index: 0 }
        ));
    }

    #[test]
    fn printed_maps_reparse() {
        let q = Field::Rational;
        let f = parse_map("A3 (x - 1/3*z*(y + x*z)^2, -y + x*z, z + 2)", q).unwrap();
        let again = parse_map(&f.map.to_string(), q).unwrap();
        assert_eq!(again.map, f.map);
        let h = f.map.projective().unwrap();
        let back = parse_map(&h.to_string(), q).unwrap().map.projective().unwrap();
        assert!(maps_equal(&h, &back));
    }
}
