//! Lexer and parsers for the textual forms of polynomials and module elements.
//!
//! Element syntax: `2*x(1,2)*x(1,1)*e(2,{2},1) - 1/3*e(2,{1,2},3)`. The basis
//! token `e(n,{a1,...,am},i)` is `e_{π,i}` with `π: [m] -> [n]` of image
//! `{a1,...,am}`. Subscript forms `x_(1,1)` and `e_(2,{2},1)` are accepted.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::module::{BasisIndex, FreeModule, ModuleElement};
use crate::oi::OIMorphism;
use crate::poly::{Algebra, Coeff, PolyMonomial, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    Punct(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const PUNCT: [&str; 17] = ["=>", "(", ")", "{", "}", ",", "*", "+", "-", "/", "^", "=", ";", ":", "_", "[", "]"];

/// Tokenizes `src`; `--` and `#` start comments running to end of line.
pub fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Token { tok, line: ln + 1, column };
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' || (c == '-' && chars.get(i + 1) == Some(&'-')) {
                break;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(at(Tok::Int(s.parse().expect("digits"))));
            } else if c.is_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let mut s: String = chars[start..i].iter().collect();
                // `x_(1,1)` is the subscript spelling of `x(1,1)`
                if s.ends_with('_') && chars.get(i) == Some(&'(') {
                    s.pop();
                }
                out.push(at(Tok::Ident(s)));
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(Error::Parse {
                        line: ln + 1,
                        column,
                        message: "unterminated string".into(),
                    });
                }
                out.push(at(Tok::Str(chars[start..i].iter().collect())));
                i += 1;
            } else {
                let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
                match PUNCT.iter().find(|p| rest.starts_with(**p)) {
                    Some(p) => {
                        out.push(at(Tok::Punct(p)));
                        i += p.len();
                    }
                    None => {
                        return Err(Error::Parse {
                            line: ln + 1,
                            column,
                            message: format!("unexpected character '{c}'"),
                        })
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A position in a token stream.
pub struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        let end = toks.last().map_or((1, 1), |t| (t.line, t.column + 1));
        Cursor { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn peek_at(&self, k: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + k)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.peek().map_or(self.end, |t| (t.line, t.column));
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn error_at(tok: &Token, message: impl Into<String>) -> Error {
        Error::Parse {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Punct(q), .. }) if *q == p)
    }

    pub fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, p: &str) -> Result<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{p}'")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<&'a str> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn expect_usize(&mut self) -> Result<usize> {
        let tok = self.peek();
        let n = self.expect_int()?;
        usize::try_from(&n).map_err(|_| match tok {
            Some(t) => Cursor::error_at(t, "integer too large"),
            None => self.error("integer too large"),
        })
    }

    /// `{a, b, ...}`, possibly empty.
    pub fn int_list(&mut self) -> Result<Vec<usize>> {
        self.expect_punct("{")?;
        let mut out = Vec::new();
        if self.eat_punct("}") {
            return Ok(out);
        }
        loop {
            out.push(self.expect_usize()?);
            if self.eat_punct("}") {
                return Ok(out);
            }
            self.expect_punct(",")?;
        }
    }

    /// `[-]{a, b, ...}` with signed entries.
    pub fn signed_int_list(&mut self) -> Result<Vec<i64>> {
        self.expect_punct("{")?;
        let mut out = Vec::new();
        if self.eat_punct("}") {
            return Ok(out);
        }
        loop {
            let neg = self.eat_punct("-");
            let n = self.expect_int()?;
            let v = i64::try_from(&n).map_err(|_| self.error("integer too large"))?;
            out.push(if neg { -v } else { v });
            if self.eat_punct("}") {
                return Ok(out);
            }
            self.expect_punct(",")?;
        }
    }
}

enum Factor {
    Coeff(Coeff),
    Var { row: usize, col: usize, exp: u32, at: Token },
    Basis { width: usize, image: Vec<usize>, summand: usize, at: Token },
}

struct RawTerm {
    coeff: Coeff,
    vars: Vec<(usize, usize, u32, Token)>,
    basis: Option<(usize, Vec<usize>, usize, Token)>,
    at: Token,
}

fn parse_factor(cur: &mut Cursor<'_>, var_symbol: &str, basis_symbol: Option<&str>) -> Result<Factor> {
    let tok = cur.peek().ok_or_else(|| cur.error("expected a factor"))?.clone();
    match &tok.tok {
        Tok::Int(_) => {
            let num = cur.expect_int()?;
            let den = if cur.eat_punct("/") { cur.expect_int()? } else { BigInt::one() };
            if den.is_zero() {
                return Err(Cursor::error_at(&tok, "zero denominator"));
            }
            Ok(Factor::Coeff(Coeff::new(num, den)))
        }
        Tok::Ident(name) if name == var_symbol => {
            cur.next();
            cur.expect_punct("(")?;
            let row = cur.expect_usize()?;
            cur.expect_punct(",")?;
            let col = cur.expect_usize()?;
            cur.expect_punct(")")?;
            let exp = if cur.eat_punct("^") {
                let e = cur.expect_usize()?;
                u32::try_from(e).map_err(|_| Cursor::error_at(&tok, "exponent too large"))?
            } else {
                1
            };
            Ok(Factor::Var { row, col, exp, at: tok })
        }
        Tok::Ident(name) if Some(name.as_str()) == basis_symbol => {
            cur.next();
            cur.expect_punct("(")?;
            let width = cur.expect_usize()?;
            cur.expect_punct(",")?;
            let image = cur.int_list()?;
            cur.expect_punct(",")?;
            let summand = cur.expect_usize()?;
            cur.expect_punct(")")?;
            Ok(Factor::Basis { width, image, summand, at: tok })
        }
        Tok::Ident(name) => Err(Cursor::error_at(&tok, format!("unknown symbol '{name}'"))),
        _ => Err(Cursor::error_at(&tok, "expected a coefficient, variable or basis element")),
    }
}

fn parse_terms(cur: &mut Cursor<'_>, var_symbol: &str, basis_symbol: Option<&str>) -> Result<Vec<RawTerm>> {
    let mut terms = Vec::new();
    let mut sign = Coeff::one();
    if cur.eat_punct("-") {
        sign = -sign;
    } else {
        cur.eat_punct("+");
    }
    loop {
        let at = cur.peek().ok_or_else(|| cur.error("expected a term"))?.clone();
        let mut term = RawTerm {
            coeff: sign.clone(),
            vars: Vec::new(),
            basis: None,
            at,
        };
        loop {
            match parse_factor(cur, var_symbol, basis_symbol)? {
                Factor::Coeff(c) => term.coeff *= c,
                Factor::Var { row, col, exp, at } => term.vars.push((row, col, exp, at)),
                Factor::Basis { width, image, summand, at } => {
                    if term.basis.is_some() {
                        return Err(Cursor::error_at(&at, "a term holds at most one basis element"));
                    }
                    term.basis = Some((width, image, summand, at));
                }
            }
            if !cur.eat_punct("*") {
                break;
            }
        }
        terms.push(term);
        if cur.eat_punct("+") {
            sign = Coeff::one();
        } else if cur.eat_punct("-") {
            sign = -Coeff::one();
        } else {
            return Ok(terms);
        }
    }
}

fn build_monomial(rows: usize, width: usize, vars: &[(usize, usize, u32, Token)]) -> Result<PolyMonomial> {
    let mut m = PolyMonomial::one(rows, width);
    for (row, col, exp, at) in vars {
        let v = PolyMonomial::from_exponents(rows, width, &[((*row, *col), *exp)])
            .map_err(|_| Cursor::error_at(at, format!("variable ({row},{col}) is outside {rows} rows and width {width}")))?;
        m = m.mul(&v)?;
    }
    Ok(m)
}

/// Parses an element expression from the cursor; `width` pins the width when given.
pub fn parse_element_at(cur: &mut Cursor<'_>, module: &Arc<FreeModule>, width: Option<usize>) -> Result<ModuleElement> {
    if let (Some(w), Some(Token { tok: Tok::Int(n), .. })) = (width, cur.peek()) {
        if n.is_zero() && !matches!(cur.peek_at(1), Some(Token { tok: Tok::Punct("*" | "/"), .. })) {
            cur.next();
            return Ok(ModuleElement::zero(module, w));
        }
    }
    let raw = parse_terms(cur, &module.algebra().symbol, Some(module.symbol()))?;
    let mut width = width;
    let mut built = Vec::with_capacity(raw.len());
    for term in raw {
        let Some((w, image, summand, at)) = term.basis else {
            return Err(Cursor::error_at(&term.at, "every term needs a basis element"));
        };
        match width {
            Some(expected) if expected != w => {
                return Err(Cursor::error_at(
                    &at,
                    format!("basis element of width {w} in an element of width {expected}"),
                ))
            }
            _ => width = Some(w),
        }
        if !image.windows(2).all(|p| p[0] < p[1]) {
            return Err(Cursor::error_at(&at, "index list is not strictly increasing"));
        }
        let morphism = OIMorphism::new(w, image).map_err(|e| Cursor::error_at(&at, e.to_string()))?;
        if summand == 0 {
            return Err(Cursor::error_at(&at, "summand indices start at 1"));
        }
        let basis = BasisIndex::new(summand - 1, morphism);
        module.check_basis(&basis).map_err(|e| Cursor::error_at(&at, e.to_string()))?;
        let mono = build_monomial(module.rows(), w, &term.vars)?;
        built.push((term.coeff, mono, basis));
    }
    ModuleElement::from_terms(module, width.expect("at least one term"), built)
}

/// Parses a complete element string.
pub fn parse_element(module: &Arc<FreeModule>, src: &str) -> Result<ModuleElement> {
    parse_element_in(module, None, src)
}

pub fn parse_element_in(module: &Arc<FreeModule>, width: Option<usize>, src: &str) -> Result<ModuleElement> {
    let toks = lex(src)?;
    let mut cur = Cursor::new(&toks);
    let e = parse_element_at(&mut cur, module, width)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected input after element"));
    }
    Ok(e)
}

/// Parses a polynomial of the given width.
pub fn parse_polynomial(algebra: &Algebra, width: usize, src: &str) -> Result<Polynomial> {
    let toks = lex(src)?;
    let mut cur = Cursor::new(&toks);
    let raw = parse_terms(&mut cur, &algebra.symbol, None)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected input after polynomial"));
    }
    let mut terms = Vec::new();
    for t in raw {
        terms.push((t.coeff, build_monomial(algebra.rows, width, &t.vars)?));
    }
    Polynomial::from_terms(algebra.rows, width, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module() -> Arc<FreeModule> {
        Arc::new(FreeModule::new(Algebra::new(2, "x").unwrap(), "e", vec![1, 1, 2]).unwrap())
    }

    #[test]
    fn parses_subscript_syntax() {
        let f = module();
        let b1 = parse_element(&f, "x_(1,1)*e_(1,{1},1)+x_(2,1)*e_(1,{1},2)").unwrap();
        assert_eq!(b1.to_string(), "x(1,1)*e(1,{1},1) + x(2,1)*e(1,{1},2)");
        let b2 = parse_element(&f, "x(1,2)*x(1,1)*e(2,{2},2) + x(2,2)*x(2,1)*e(2,{1,2},3)").unwrap();
        assert_eq!(b2.width(), 2);
        let c = parse_element(&f, "-1/2*x(1,1)^2*e(1,{1},1) + 3*e(1,{1},2)").unwrap();
        assert_eq!(c.to_string(), "-1/2*x(1,1)^2*e(1,{1},1) + 3*e(1,{1},2)");
    }

    #[test]
    fn diagnostics() {
        let f = module();
        let err = parse_element(&f, "e(2,{2,1},3)").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, ref message } if message.contains("strictly increasing")));
        assert!(parse_element(&f, "x(1,1)*e(1,{1},1) + e(2,{1},1)").is_err());
        assert!(parse_element(&f, "x(1,3)*e(2,{1},1)").is_err());
        assert!(parse_element(&f, "y(1,1)*e(1,{1},1)").is_err());
        assert!(parse_element(&f, "x(1,1)").is_err());
        assert!(parse_element(&f, "e(1,{1},4)").is_err());
        assert!(parse_element(&f, "e(1,{1,2},1)").is_err());
        assert!(parse_element_in(&f, Some(2), "e(1,{1},1)").is_err());
        assert!(parse_element_in(&f, Some(2), "0").unwrap().is_zero());
        assert!(parse_element(&f, "e(1,{1},1) +").is_err());
        assert!(lex("x $ y").is_err());
    }

    #[test]
    fn polynomials() {
        let a = Algebra::new(2, "x").unwrap();
        let p = parse_polynomial(&a, 2, "x(1,1)*x(2,2) - 3/4 + x(1,2)").unwrap();
        assert_eq!(p.to_string(), "x(2,2)*x(1,1) + x(1,2) - 3/4");
        assert!(parse_polynomial(&a, 1, "x(1,2)").is_err());
    }
}
