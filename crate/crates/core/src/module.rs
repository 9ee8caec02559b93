//! Finitely generated free OI-modules, their elements, and monomial orders.
//!
//! A free module `F = ⊕ F^{OI,d_i}` has, in width `n`, the basis
//! `e_{π,i}` for `π ∈ hom(d_i, n)`. Elements are width-tagged sums of terms
//! `c · a · e_{π,i}` kept sorted descending under the module's order.
//!
//! Summand indices are 0-based in the API and printed 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oi::{binomial, compose, OIMorphism};
use crate::poly::{write_signed_term, Algebra, Coeff, PolyMonomial, Polynomial};

/// Basis index `e_{π,i}`; its width is the target of `π`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisIndex {
    pub summand: usize,
    pub morphism: OIMorphism,
}

impl BasisIndex {
    pub fn new(summand: usize, morphism: OIMorphism) -> Self {
        BasisIndex { summand, morphism }
    }

    pub fn width(&self) -> usize {
        self.morphism.target_width()
    }

    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<BasisIndex> {
        Ok(BasisIndex {
            summand: self.summand,
            morphism: compose(&self.morphism, eps)?,
        })
    }

    pub fn fmt_with(&self, symbol: &str) -> String {
        let img: Vec<String> = self.morphism.image().iter().map(|a| a.to_string()).collect();
        format!("{}({},{{{}}},{})", symbol, self.width(), img.join(","), self.summand + 1)
    }
}

/// A module monomial `a · e_{π,i}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleMonomial {
    pub mono: PolyMonomial,
    pub basis: BasisIndex,
}

impl ModuleMonomial {
    pub fn new(mono: PolyMonomial, basis: BasisIndex) -> Result<Self> {
        if mono.width() != basis.width() {
            return Err(Error::WidthMismatch {
                expected: basis.width(),
                found: mono.width(),
            });
        }
        Ok(ModuleMonomial { mono, basis })
    }

    pub fn width(&self) -> usize {
        self.mono.width()
    }

    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<ModuleMonomial> {
        Ok(ModuleMonomial {
            mono: self.mono.apply_morphism(eps)?,
            basis: self.basis.apply_morphism(eps)?,
        })
    }

    pub fn mul(&self, a: &PolyMonomial) -> Result<ModuleMonomial> {
        Ok(ModuleMonomial {
            mono: self.mono.mul(a)?,
            basis: self.basis.clone(),
        })
    }

    pub fn fmt_with(&self, var: &str, basis: &str) -> String {
        if self.mono.is_one() {
            self.basis.fmt_with(basis)
        } else {
            format!("{}*{}", self.mono.fmt_with(var), self.basis.fmt_with(basis))
        }
    }
}

/// Monomial orders on a free OI-module.
#[derive(Clone, PartialEq, Debug)]
pub enum MonomialOrder {
    /// Position over term: smaller summand index is larger, then the
    /// lexicographically larger `π` image is larger, then lex on `P_n`.
    Lex,
    /// Induced by a map to a parent module sending the basis generators to
    /// elements with the given lead monomials.
    Schreyer(SchreyerOrder),
}

#[derive(Clone, PartialEq, Debug)]
pub struct SchreyerOrder {
    pub parent: Arc<FreeModule>,
    pub leads: Vec<ModuleMonomial>,
}

/// Descriptor of `⊕_i F^{OI,d_i}(t_i)`.
///
/// Twists follow `M(t)_j = M_{t+j}`, so a generator with twist `-3` sits in
/// degree 3.
#[derive(Clone, PartialEq, Debug)]
pub struct FreeModule {
    algebra: Algebra,
    symbol: String,
    gen_widths: Vec<usize>,
    twists: Vec<i64>,
    order: MonomialOrder,
}

impl FreeModule {
    pub fn new(algebra: Algebra, symbol: impl Into<String>, gen_widths: Vec<usize>) -> Result<Self> {
        let twists = vec![0; gen_widths.len()];
        Self::with_twists(algebra, symbol, gen_widths, twists)
    }

    pub fn with_twists(
        algebra: Algebra,
        symbol: impl Into<String>,
        gen_widths: Vec<usize>,
        twists: Vec<i64>,
    ) -> Result<Self> {
        if gen_widths.is_empty() {
            return Err(Error::InvalidElement("a free module needs at least one generator".into()));
        }
        if twists.len() != gen_widths.len() {
            return Err(Error::InvalidElement(format!(
                "{} twists given for {} generators",
                twists.len(),
                gen_widths.len()
            )));
        }
        Ok(FreeModule {
            algebra,
            symbol: symbol.into(),
            gen_widths,
            twists,
            order: MonomialOrder::Lex,
        })
    }

    /// A module without generators, used for the zero terms of a complex.
    pub fn zero_module(algebra: Algebra, symbol: impl Into<String>) -> Self {
        FreeModule {
            algebra,
            symbol: symbol.into(),
            gen_widths: Vec::new(),
            twists: Vec::new(),
            order: MonomialOrder::Lex,
        }
    }

    /// Like `with_twists`, but also allows zero generators.
    pub(crate) fn lex_possibly_empty(
        algebra: Algebra,
        symbol: impl Into<String>,
        gen_widths: Vec<usize>,
        twists: Vec<i64>,
    ) -> Self {
        FreeModule {
            algebra,
            symbol: symbol.into(),
            gen_widths,
            twists,
            order: MonomialOrder::Lex,
        }
    }

    /// A module ordered by the Schreyer order induced from `parent`.
    pub fn schreyer(
        algebra: Algebra,
        symbol: impl Into<String>,
        twists: Vec<i64>,
        parent: Arc<FreeModule>,
        leads: Vec<ModuleMonomial>,
    ) -> Result<Self> {
        if twists.len() != leads.len() {
            return Err(Error::InvalidElement(format!(
                "{} twists given for {} generators",
                twists.len(),
                leads.len()
            )));
        }
        for l in &leads {
            parent.check_basis(&l.basis)?;
        }
        Ok(FreeModule {
            algebra,
            symbol: symbol.into(),
            gen_widths: leads.iter().map(|l| l.width()).collect(),
            twists,
            order: MonomialOrder::Schreyer(SchreyerOrder { parent, leads }),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.algebra.rows
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn gen_widths(&self) -> &[usize] {
        &self.gen_widths
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.gen_widths.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Rank of the width-`n` component as a free `P_n`-module.
    pub fn rank_in_width(&self, n: usize) -> usize {
        self.gen_widths.iter().map(|&d| binomial(n, d)).sum()
    }

    pub fn check_basis(&self, basis: &BasisIndex) -> Result<()> {
        match self.gen_widths.get(basis.summand) {
            None => Err(Error::InvalidElement(format!(
                "summand {} out of range 1..={}",
                basis.summand + 1,
                self.rank()
            ))),
            Some(&d) if d != basis.morphism.source_width() => Err(Error::InvalidElement(format!(
                "basis index {} needs a map out of [{}]",
                basis.fmt_with(&self.symbol),
                d
            ))),
            Some(_) => Ok(()),
        }
    }

    /// Appends the sort key of `a · e_{π,i}`: keys compare lexicographically
    /// exactly as the monomials compare under this module's order.
    pub(crate) fn push_key(&self, mono: &PolyMonomial, basis: &BasisIndex, key: &mut Vec<i64>) {
        match &self.order {
            MonomialOrder::Lex => {
                key.push(-(basis.summand as i64));
                key.extend(basis.morphism.image().iter().map(|&a| a as i64));
                mono.push_key(key);
            }
            MonomialOrder::Schreyer(s) => {
                let lead = &s.leads[basis.summand];
                let pi = &basis.morphism;
                let image_mono = lead.mono.apply_unchecked(pi).mul_unchecked(mono);
                let image_basis = BasisIndex {
                    summand: lead.basis.summand,
                    morphism: compose(&lead.basis.morphism, pi).expect("schreyer lead width"),
                };
                s.parent.push_key(&image_mono, &image_basis, key);
                key.push(-(basis.summand as i64));
                key.extend(pi.image().iter().map(|&a| -(a as i64)));
            }
        }
    }

    pub(crate) fn key(&self, mono: &PolyMonomial, basis: &BasisIndex) -> Vec<i64> {
        let mut key = Vec::with_capacity(24);
        self.push_key(mono, basis, &mut key);
        key
    }

    /// Compares two monomials of the same width under this module's order.
    pub fn compare(&self, a: &ModuleMonomial, b: &ModuleMonomial) -> Result<Ordering> {
        if a.width() != b.width() {
            return Err(Error::WidthMismatch {
                expected: a.width(),
                found: b.width(),
            });
        }
        self.check_basis(&a.basis)?;
        self.check_basis(&b.basis)?;
        Ok(self.key(&a.mono, &a.basis).cmp(&self.key(&b.mono, &b.basis)))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<FreeModule>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

/// One term `c · a · e_{π,i}` with its cached sort key.
#[derive(Clone, Debug)]
pub struct Term {
    coeff: Coeff,
    mono: PolyMonomial,
    basis: BasisIndex,
    key: Vec<i64>,
}

impl Term {
    pub fn coeff(&self) -> &Coeff {
        &self.coeff
    }

    pub fn mono(&self) -> &PolyMonomial {
        &self.mono
    }

    pub fn basis(&self) -> &BasisIndex {
        &self.basis
    }

    pub fn monomial(&self) -> ModuleMonomial {
        ModuleMonomial {
            mono: self.mono.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.mono == other.mono && self.basis == other.basis
    }
}

/// An element of the width-`n` component of a free OI-module.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    module: Arc<FreeModule>,
    width: usize,
    terms: Vec<Term>,
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.terms == other.terms && self.module.same_as(&other.module)
    }
}

impl ModuleElement {
    pub fn zero(module: &Arc<FreeModule>, width: usize) -> Self {
        ModuleElement {
            module: module.clone(),
            width,
            terms: Vec::new(),
        }
    }

    /// The basis element `e_{π,i}`.
    pub fn basis_element(module: &Arc<FreeModule>, basis: BasisIndex) -> Result<Self> {
        let width = basis.width();
        let one = PolyMonomial::one(module.rows(), width);
        Self::from_terms(module, width, vec![(Coeff::one(), one, basis)])
    }

    /// The generator `e_{id,i}`.
    pub fn generator(module: &Arc<FreeModule>, summand: usize) -> Result<Self> {
        let d = *module.gen_widths().get(summand).ok_or_else(|| {
            Error::InvalidElement(format!("no generator {}", summand + 1))
        })?;
        Self::basis_element(module, BasisIndex::new(summand, OIMorphism::identity(d)))
    }

    /// Validates, sorts and combines the given terms.
    pub fn from_terms(
        module: &Arc<FreeModule>,
        width: usize,
        raw: Vec<(Coeff, PolyMonomial, BasisIndex)>,
    ) -> Result<Self> {
        let mut terms = Vec::with_capacity(raw.len());
        for (coeff, mono, basis) in raw {
            if mono.width() != width || basis.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: if mono.width() != width { mono.width() } else { basis.width() },
                });
            }
            if mono.rows() != module.rows() {
                return Err(Error::InvalidElement("monomial over a different algebra".into()));
            }
            module.check_basis(&basis)?;
            let key = module.key(&mono, &basis);
            terms.push(Term { coeff, mono, basis, key });
        }
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.key == t.key => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Ok(ModuleElement {
            module: module.clone(),
            width,
            terms: out,
        })
    }

    /// `Σ_i p_i · e_{basis_i}` for polynomial coefficients.
    pub fn from_coordinates(
        module: &Arc<FreeModule>,
        width: usize,
        coords: &[(BasisIndex, Polynomial)],
    ) -> Result<Self> {
        let raw = coords
            .iter()
            .flat_map(|(b, p)| p.terms().iter().map(move |(c, m)| (c.clone(), m.clone(), b.clone())))
            .collect();
        Self::from_terms(module, width, raw)
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroElement)
    }

    pub fn lead_monomial(&self) -> Result<ModuleMonomial> {
        Ok(self.lead_term()?.monomial())
    }

    pub fn lead_coeff(&self) -> Result<&Coeff> {
        Ok(&self.lead_term()?.coeff)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.module.same_as(&other.module) {
            return Err(Error::ModuleMismatch);
        }
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }

    /// `self + factor · other`, both sorted; linear merge.
    fn merge_scaled(&self, other: &[Term], factor: &Coeff) -> ModuleElement {
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.len() {
                Ordering::Greater
            } else {
                self.terms[i].key.cmp(&other[j].key)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mut t = other[j].clone();
                    t.coeff *= factor;
                    out.push(t);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + &other[j].coeff * factor;
                    if !c.is_zero() {
                        let mut t = self.terms[i].clone();
                        t.coeff = c;
                        out.push(t);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModuleElement {
            module: self.module.clone(),
            width: self.width,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge_scaled(&other.terms, &Coeff::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge_scaled(&other.terms, &-Coeff::one()))
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, c: &Coeff, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if c.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.merge_scaled(&other.terms, c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.module, self.width);
        }
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= c;
        }
        out
    }

    /// Divides by the lead coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.recip()),
            _ => self.clone(),
        }
    }

    /// `c · a · self`.
    pub fn mul_term(&self, c: &Coeff, a: &PolyMonomial) -> Result<Self> {
        if a.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: a.width(),
            });
        }
        Ok(self.map_terms(c, a, None))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<Self> {
        if p.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: p.width(),
            });
        }
        let mut acc = Self::zero(&self.module, self.width);
        for (c, a) in p.terms() {
            let part = self.map_terms(c, a, None);
            acc = acc.merge_scaled(&part.terms, &Coeff::one());
        }
        Ok(acc)
    }

    /// `c · a · ε_*(self)` where `a` lives in the target width of `ε`.
    /// Both operations preserve the term order, so no re-sort is needed.
    pub(crate) fn map_terms(&self, c: &Coeff, a: &PolyMonomial, eps: Option<&OIMorphism>) -> Self {
        let width = eps.map_or(self.width, |e| e.target_width());
        if c.is_zero() {
            return Self::zero(&self.module, width);
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| {
                let (mono, basis) = match eps {
                    Some(e) => (
                        t.mono.apply_unchecked(e).mul_unchecked(a),
                        BasisIndex {
                            summand: t.basis.summand,
                            morphism: compose(&t.basis.morphism, e).expect("widths checked"),
                        },
                    ),
                    None => (t.mono.mul_unchecked(a), t.basis.clone()),
                };
                let key = self.module.key(&mono, &basis);
                Term {
                    coeff: &t.coeff * c,
                    mono,
                    basis,
                    key,
                }
            })
            .collect();
        debug_assert!(terms.windows(2).all(|w| w[0].key > w[1].key));
        ModuleElement {
            module: self.module.clone(),
            width,
            terms,
        }
    }

    /// `c e_{π,i} ↦ c ε_*(a) e_{ε∘π,i}`.
    pub fn apply_morphism(&self, eps: &OIMorphism) -> Result<Self> {
        if eps.source_width() != self.width {
            return Err(Error::WidthMismatch {
                expected: eps.source_width(),
                found: self.width,
            });
        }
        let one = PolyMonomial::one(self.module.rows(), eps.target_width());
        Ok(self.map_terms(&Coeff::one(), &one, Some(eps)))
    }

    /// `self - c · a · ε_*(g)`.
    pub(crate) fn sub_mapped(&self, c: &Coeff, a: &PolyMonomial, eps: &OIMorphism, g: &ModuleElement) -> Self {
        let mapped = g.map_terms(c, a, Some(eps));
        self.merge_scaled(&mapped.terms, &-Coeff::one())
    }

    /// The element made of the terms satisfying `keep`.
    pub(crate) fn retain_terms(&self, keep: impl Fn(&Term) -> bool) -> Self {
        ModuleElement {
            module: self.module.clone(),
            width: self.width,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    /// Degree of `c · a · e_{π,i}` is `deg a - twist_i`.
    pub fn term_degree(&self, t: &Term) -> i64 {
        t.mono.degree() as i64 - self.module.twists[t.basis.summand]
    }

    /// Common degree of all terms; `None` for zero or nonhomogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        let d = self.term_degree(self.terms.first()?);
        self.terms.iter().all(|t| self.term_degree(t) == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Polynomial coefficient of each basis index present, in term order of first appearance.
    pub fn coordinates(&self) -> Vec<(BasisIndex, Polynomial)> {
        let mut out: Vec<(BasisIndex, Vec<(Coeff, PolyMonomial)>)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(b, _)| *b == t.basis) {
                Some((_, v)) => v.push((t.coeff.clone(), t.mono.clone())),
                None => out.push((t.basis.clone(), vec![(t.coeff.clone(), t.mono.clone())])),
            }
        }
        out.into_iter()
            .map(|(b, v)| {
                let p = Polynomial::from_terms(self.module.rows(), self.width, v).expect("same width");
                (b, p)
            })
            .collect()
    }

    /// Rebuilds the element in another module with identical generators.
    pub fn transport(&self, module: &Arc<FreeModule>) -> Result<Self> {
        let raw = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.mono.clone(), t.basis.clone()))
            .collect();
        Self::from_terms(module, self.width, raw)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let var = &self.module.algebra.symbol;
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let body = if t.mono.is_one() {
                t.basis.fmt_with(&self.module.symbol)
            } else {
                format!("{}*{}", t.mono.fmt_with(var), t.basis.fmt_with(&self.module.symbol))
            };
            write_signed_term(&mut s, k == 0, &t.coeff, Some(body));
        }
        f.write_str(&s)
    }
}

/// All witnesses `ε ∈ hom(m, n)` of the OI-divisibility `small | big`:
/// same summand, `ε ∘ π = σ` and `ε_*(a) | b`, in lexicographic order.
pub fn oi_divides(small: &ModuleMonomial, big: &ModuleMonomial) -> Vec<OIMorphism> {
    let mut out = Vec::new();
    search_divisors(small, big, &mut |img| {
        out.push(OIMorphism::from_raw(big.width(), img.to_vec()));
        true
    });
    out
}

/// The lexicographically first witness of `small | big`, if any.
pub fn first_oi_divisor(small: &ModuleMonomial, big: &ModuleMonomial) -> Option<OIMorphism> {
    let mut found = None;
    search_divisors(small, big, &mut |img| {
        found = Some(OIMorphism::from_raw(big.width(), img.to_vec()));
        false
    });
    found
}

/// Depth-first search over increasing maps; `visit` returns whether to continue.
fn search_divisors(small: &ModuleMonomial, big: &ModuleMonomial, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let (m, n) = (small.width(), big.width());
    if small.basis.summand != big.basis.summand
        || m > n
        || small.mono.rows() != big.mono.rows()
        || small.basis.morphism.source_width() != big.basis.morphism.source_width()
    {
        return;
    }
    let mut fixed = vec![0usize; m];
    for (k, &p) in small.basis.morphism.image().iter().enumerate() {
        fixed[p - 1] = big.basis.morphism.image()[k];
    }
    let rows = small.mono.rows();
    // columns of `a` with their per-row exponents
    let cols: Vec<Vec<u32>> = (1..=m)
        .map(|c| (1..=rows).map(|r| small.mono.exponent(r, c)).collect())
        .collect();
    let mut img = Vec::with_capacity(m);
    dfs_divisor(&cols, &fixed, &big.mono, n, &mut img, visit);
}

fn dfs_divisor(
    cols: &[Vec<u32>],
    fixed: &[usize],
    b: &PolyMonomial,
    n: usize,
    img: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let m = cols.len();
    let pos = img.len();
    if pos == m {
        return visit(img);
    }
    let lo = img.last().map_or(1, |&a| a + 1);
    let hi = n - (m - pos - 1);
    let (from, to) = if fixed[pos] > 0 {
        if fixed[pos] < lo || fixed[pos] > hi {
            return true;
        }
        (fixed[pos], fixed[pos])
    } else {
        (lo, hi)
    };
    for v in from..=to {
        let fits = cols[pos]
            .iter()
            .enumerate()
            .all(|(r, &e)| e == 0 || b.exponent(r + 1, v) >= e);
        if !fits {
            continue;
        }
        img.push(v);
        let go_on = dfs_divisor(cols, fixed, b, n, img, visit);
        img.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oi::enumerate_hom;

    fn map(t: usize, img: &[usize]) -> OIMorphism {
        OIMorphism::new(t, img.to_vec()).unwrap()
    }

    fn mono(w: usize, vars: &[(usize, usize)]) -> PolyMonomial {
        let e: Vec<_> = vars.iter().map(|&v| (v, 1)).collect();
        PolyMonomial::from_exponents(2, w, &e).unwrap()
    }

    fn mm(w: usize, vars: &[(usize, usize)], img: &[usize], i: usize) -> ModuleMonomial {
        ModuleMonomial::new(mono(w, vars), BasisIndex::new(i - 1, map(w, img))).unwrap()
    }

    fn module_112() -> Arc<FreeModule> {
        Arc::new(FreeModule::new(Algebra::new(2, "x").unwrap(), "e", vec![1, 1, 2]).unwrap())
    }

    #[test]
    fn rank_in_width_examples() {
        let a = Algebra::new(1, "x").unwrap();
        let f = FreeModule::new(a.clone(), "e", vec![1, 2]).unwrap();
        assert_eq!(f.rank_in_width(3), 6);
        assert_eq!(module_112().rank_in_width(1), 2);
        assert_eq!(FreeModule::new(a, "e", vec![2]).unwrap().rank_in_width(1), 0);
    }

    #[test]
    fn lex_compare_examples() {
        let f = module_112();
        let a = mm(1, &[(1, 1)], &[1], 1);
        let b = mm(1, &[(2, 1)], &[1], 2);
        assert_eq!(f.compare(&a, &b).unwrap(), Ordering::Greater);
        let c = mm(3, &[(2, 3), (2, 2), (1, 1)], &[2, 3], 3);
        let d = mm(3, &[(2, 3), (2, 1), (1, 2)], &[1, 3], 3);
        assert_eq!(f.compare(&c, &d).unwrap(), Ordering::Greater);
        assert_eq!(f.compare(&c, &c).unwrap(), Ordering::Equal);
        assert!(f.compare(&a, &c).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let small = mm(1, &[(1, 1)], &[1], 1);
        let big = mm(2, &[(1, 2)], &[2], 1);
        assert_eq!(oi_divides(&small, &big), vec![map(2, &[2])]);
        assert_eq!(oi_divides(&small, &small), vec![OIMorphism::identity(1)]);
        let other = mm(2, &[(2, 2)], &[2], 1);
        assert!(oi_divides(&small, &other).is_empty());
        assert!(first_oi_divisor(&small, &other).is_none());
    }

    #[test]
    fn divisibility_agrees_with_enumeration() {
        let small = mm(2, &[(1, 1)], &[2], 1);
        let big = mm(4, &[(1, 1), (1, 2), (2, 3)], &[3], 1);
        let brute: Vec<_> = enumerate_hom(2, 4)
            .into_iter()
            .filter(|e| {
                let img = small.apply_morphism(e).unwrap();
                img.basis == big.basis && img.mono.divides(&big.mono)
            })
            .collect();
        assert_eq!(oi_divides(&small, &big), brute);
        assert_eq!(brute.len(), 2);
    }

    #[test]
    fn element_morphism_and_printing() {
        let f = module_112();
        let b1 = ModuleElement::from_terms(
            &f,
            1,
            vec![
                (Coeff::one(), mono(1, &[(1, 1)]), BasisIndex::new(0, map(1, &[1]))),
                (Coeff::one(), mono(1, &[(2, 1)]), BasisIndex::new(1, map(1, &[1]))),
            ],
        )
        .unwrap();
        assert_eq!(b1.to_string(), "x(1,1)*e(1,{1},1) + x(2,1)*e(1,{1},2)");
        let img = b1.apply_morphism(&map(2, &[2])).unwrap();
        assert_eq!(img.to_string(), "x(1,2)*e(2,{2},1) + x(2,2)*e(2,{2},2)");
        assert_eq!(b1.apply_morphism(&OIMorphism::identity(1)).unwrap(), b1);
        assert_eq!(b1.lead_monomial().unwrap(), mm(1, &[(1, 1)], &[1], 1));
        assert!(b1.sub(&b1).unwrap().is_zero());
        assert!(ModuleElement::zero(&f, 1).lead_term().is_err());
        assert!(b1.add(&img).is_err());
    }

    #[test]
    fn twisted_degrees() {
        let a = Algebra::new(1, "x").unwrap();
        let f = Arc::new(FreeModule::with_twists(a.clone(), "e", vec![1, 2], vec![-3, -4]).unwrap());
        let e1 = ModuleElement::generator(&f, 0).unwrap();
        assert_eq!(e1.degree(), Some(3));
        assert_eq!(ModuleElement::generator(&f, 1).unwrap().degree(), Some(4));
        let g = Arc::new(FreeModule::new(a, "e", vec![1, 1]).unwrap());
        let x = PolyMonomial::var(1, 1, 1, 1).unwrap();
        let mixed = ModuleElement::generator(&g, 0)
            .unwrap()
            .mul_term(&Coeff::one(), &x)
            .unwrap()
            .add(&ModuleElement::generator(&g, 1).unwrap())
            .unwrap();
        assert_eq!(mixed.degree(), None);
        assert!(!mixed.is_homogeneous());
    }

    #[test]
    fn invalid_terms_rejected() {
        let f = module_112();
        let bad = BasisIndex::new(2, map(2, &[2]));
        assert!(ModuleElement::basis_element(&f, bad).is_err());
        let out_of_range = BasisIndex::new(5, map(1, &[1]));
        assert!(ModuleElement::basis_element(&f, out_of_range).is_err());
    }
}
