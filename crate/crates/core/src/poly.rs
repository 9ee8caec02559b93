//! Sparse polynomials with exact rational coefficients in the variables
//! `x(i,j)` of the width-`n` component of a polynomial OI-algebra.
//!
//! Variables are ordered row-major: `x(i,j) > x(k,l)` iff `i > k`, or `i = k`
//! and `j > l`. Strictly increasing maps preserve this order, which is what
//! makes the lex order on monomials compatible with the OI action.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oi::OIMorphism;

pub type Coeff = BigRational;

pub fn rational(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// The polynomial OI-algebra `P^c` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Algebra {
    pub rows: usize,
    pub symbol: String,
}

impl Algebra {
    pub fn new(rows: usize, symbol: impl Into<String>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidElement("an algebra needs at least one row".into()));
        }
        Ok(Algebra {
            rows,
            symbol: symbol.into(),
        })
    }
}

/// A monomial in `P_n`, stored densely; `x(i,j)` sits at `(i-1)*n + (j-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMonomial {
    rows: usize,
    width: usize,
    exps: Vec<u32>,
}

impl PolyMonomial {
    pub fn one(rows: usize, width: usize) -> Self {
        PolyMonomial {
            rows,
            width,
            exps: vec![0; rows * width],
        }
    }

    pub fn var(rows: usize, width: usize, row: usize, col: usize) -> Result<Self> {
        Self::from_exponents(rows, width, &[((row, col), 1)])
    }

    /// Builds a monomial from `((row, col), exponent)` entries; repeats multiply.
    pub fn from_exponents(rows: usize, width: usize, entries: &[((usize, usize), u32)]) -> Result<Self> {
        let mut m = Self::one(rows, width);
        for &((row, col), e) in entries {
            if row == 0 || row > rows || col == 0 || col > width {
                return Err(Error::InvalidElement(format!(
                    "variable ({row},{col}) outside {rows} rows and width {width}"
                )));
            }
            m.exps[(row - 1) * width + col - 1] += e;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn exponent(&self, row: usize, col: usize) -> u32 {
        self.exps[(row - 1) * self.width + col - 1]
    }

    /// `((row, col), exponent)` for every variable present, largest variable first.
    pub fn support(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        let w = self.width;
        self.exps
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &e)| e > 0)
            .map(move |(k, &e)| ((k / w + 1, k % w + 1), e))
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        if self.rows != other.rows {
            return Err(Error::InvalidElement("monomials over different algebras".into()));
        }
        Ok(())
    }

    /// Whether `self` divides `other`. Monomials of different shapes never divide.
    pub fn divides(&self, other: &Self) -> bool {
        self.width == other.width
            && self.rows == other.rows
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor`.
    pub fn quotient(&self, divisor: &Self) -> Result<Self> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible {
                divisor: divisor.to_string(),
                dividend: self.to_string(),
            });
        }
        Ok(PolyMonomial {
            rows: self.rows,
            width: self.width,
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(PolyMonomial {
            rows: self.rows,
            width: self.width,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        PolyMonomial {
            rows: self.rows,
            width: self.width,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `x(i,j) ↦ x(i,ε(j))`.
    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<Self> {
        if eps.source_width() != self.width {
            return Err(Error::WidthMismatch {
                expected: eps.source_width(),
                found: self.width,
            });
        }
        Ok(self.apply_unchecked(eps))
    }

    pub(crate) fn apply_unchecked(&self, eps: &OIMorphism) -> Self {
        let n = eps.target_width();
        let mut exps = vec![0; self.rows * n];
        for row in 0..self.rows {
            for col in 0..self.width {
                let e = self.exps[row * self.width + col];
                if e > 0 {
                    exps[row * n + eps.image()[col] - 1] = e;
                }
            }
        }
        PolyMonomial {
            rows: self.rows,
            width: n,
            exps,
        }
    }

    /// Lex comparison with the row-major variable order.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.exps.iter().rev().cmp(other.exps.iter().rev())
    }

    /// Pushes a key whose lexicographic order is `cmp_lex`.
    pub(crate) fn push_key(&self, key: &mut Vec<i64>) {
        key.extend(self.exps.iter().rev().map(|&e| e as i64));
    }

    pub fn fmt_with(&self, symbol: &str) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|((r, c), e)| {
                if e == 1 {
                    format!("{symbol}({r},{c})")
                } else {
                    format!("{symbol}({r},{c})^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PolyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

/// A polynomial in `P_n`: terms sorted strictly descending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    rows: usize,
    width: usize,
    terms: Vec<(Coeff, PolyMonomial)>,
}

impl Polynomial {
    pub fn zero(rows: usize, width: usize) -> Self {
        Polynomial {
            rows,
            width,
            terms: Vec::new(),
        }
    }

    pub fn constant(rows: usize, width: usize, c: Coeff) -> Self {
        Self::monomial(c, PolyMonomial::one(rows, width))
    }

    pub fn monomial(c: Coeff, m: PolyMonomial) -> Self {
        let (rows, width) = (m.rows, m.width);
        let terms = if c.is_zero() { Vec::new() } else { vec![(c, m)] };
        Polynomial { rows, width, terms }
    }

    pub fn var(rows: usize, width: usize, row: usize, col: usize) -> Result<Self> {
        Ok(Self::monomial(Coeff::one(), PolyMonomial::var(rows, width, row, col)?))
    }

    /// Sorts, merges equal monomials and drops zeros.
    pub fn from_terms(rows: usize, width: usize, mut terms: Vec<(Coeff, PolyMonomial)>) -> Result<Self> {
        for (_, m) in &terms {
            if m.width != width || m.rows != rows {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: m.width,
                });
            }
        }
        terms.sort_by(|a, b| b.1.cmp_lex(&a.1));
        let mut out: Vec<(Coeff, PolyMonomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 += c,
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Ok(Polynomial { rows, width, terms: out })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[(Coeff, PolyMonomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<&(Coeff, PolyMonomial)> {
        self.terms.first()
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((c, m)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        if self.rows != other.rows {
            return Err(Error::InvalidElement("polynomials over different algebras".into()));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, sign: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                self.terms[i].1.cmp_lex(&other.terms[j].1)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (c, m) = &other.terms[j];
                    out.push((if sign { c.clone() } else { -c }, m.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign {
                        &self.terms[i].0 + &other.terms[j].0
                    } else {
                        &self.terms[i].0 - &other.terms[j].0
                    };
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            rows: self.rows,
            width: self.width,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            rows: self.rows,
            width: self.width,
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.rows, self.width);
        }
        Polynomial {
            rows: self.rows,
            width: self.width,
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &PolyMonomial) -> Result<Self> {
        if m.width != self.width || m.rows != self.rows {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: m.width,
            });
        }
        if c.is_zero() {
            return Ok(Self::zero(self.rows, self.width));
        }
        Ok(Polynomial {
            rows: self.rows,
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|(a, t)| (a * c, t.mul_unchecked(m)))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc = Self::zero(self.rows, self.width);
        for (c, m) in &other.terms {
            acc = acc.merge(&self.mul_term(c, m)?, true);
        }
        Ok(acc)
    }

    /// `x(i,j) ↦ x(i,ε(j))`; the term order is preserved.
    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<Self> {
        if eps.source_width() != self.width {
            return Err(Error::WidthMismatch {
                expected: eps.source_width(),
                found: self.width,
            });
        }
        Ok(Polynomial {
            rows: self.rows,
            width: eps.target_width(),
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (c.clone(), m.apply_unchecked(eps)))
                .collect(),
        })
    }

    /// Common total degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let d = self.terms.first()?.1.degree();
        self.terms.iter().all(|(_, m)| m.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn fmt_with(&self, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (c, m)) in self.terms.iter().enumerate() {
            write_signed_term(&mut s, k == 0, c, if m.is_one() { None } else { Some(m.fmt_with(symbol)) });
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

/// Appends `± c*body` with the canonical sign and unit-coefficient conventions.
pub(crate) fn write_signed_term(s: &mut String, first: bool, c: &Coeff, body: Option<String>) {
    let negative = c.is_negative();
    if first {
        if negative {
            s.push('-');
        }
    } else {
        s.push_str(if negative { " - " } else { " + " });
    }
    let a = c.abs();
    match body {
        Some(body) if a.is_one() => s.push_str(&body),
        Some(body) => {
            s.push_str(&a.to_string());
            s.push('*');
            s.push_str(&body);
        }
        None => s.push_str(&a.to_string()),
    }
}
