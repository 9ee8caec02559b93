//! OI division, S-polynomials over covering pairs, and OI-Buchberger completion.

use std::collections::BTreeMap;
use std::sync::Arc;

use log::info;

use crate::error::{Error, Result};
use crate::module::{first_oi_divisor, FreeModule, ModuleElement, ModuleMonomial};
use crate::oi::{matching_covering_pairs, CoveringPair, OIMorphism};
use crate::par::{self, Execution};
use crate::poly::{Coeff, PolyMonomial};

/// One division step: `coeff · multiplier · ε_*(divisors[generator])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub generator: usize,
    pub morphism: OIMorphism,
    pub coeff: Coeff,
    pub multiplier: PolyMonomial,
}

/// `input = Σ quotients + remainder`, exactly.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub quotients: Vec<Quotient>,
    pub remainder: ModuleElement,
}

impl ReductionTrace {
    /// Recomputes `Σ quotients + remainder`.
    pub fn replay(&self, divisors: &[ModuleElement]) -> Result<ModuleElement> {
        let mut acc = self.remainder.clone();
        for q in &self.quotients {
            let g = divisors.get(q.generator).ok_or_else(|| {
                Error::InvalidElement(format!("quotient refers to divisor {}", q.generator))
            })?;
            let part = g.apply_morphism(&q.morphism)?.mul_term(&q.coeff, &q.multiplier)?;
            acc = acc.add(&part)?;
        }
        Ok(acc)
    }
}

struct Divisor<'a> {
    element: &'a ModuleElement,
    lead: ModuleMonomial,
    lead_coeff: Coeff,
    lead_degree: u32,
}

fn divisors_of(g: &[ModuleElement]) -> Result<Vec<Divisor<'_>>> {
    g.iter()
        .map(|e| {
            let t = e.lead_term()?;
            Ok(Divisor {
                element: e,
                lead: t.monomial(),
                lead_coeff: t.coeff().clone(),
                lead_degree: t.mono().degree(),
            })
        })
        .collect()
}

fn find_divisor(divisors: &[Divisor<'_>], target: &ModuleMonomial) -> Option<(usize, OIMorphism)> {
    let degree = target.mono.degree();
    divisors.iter().enumerate().find_map(|(k, d)| {
        if d.lead.basis.summand != target.basis.summand
            || d.lead.width() > target.width()
            || d.lead_degree > degree
        {
            return None;
        }
        first_oi_divisor(&d.lead, target).map(|eps| (k, eps))
    })
}

/// Full normal form of `f` modulo `g`.
///
/// Terms are scanned from the lead downward; each reducible term is cancelled
/// with the first divisor in list order and the first witness in
/// lexicographic order.
pub fn reduce(f: &ModuleElement, g: &[ModuleElement]) -> Result<ReductionTrace> {
    for d in g {
        if !d.module().same_as(f.module()) {
            return Err(Error::ModuleMismatch);
        }
    }
    let divisors = divisors_of(g)?;
    let mut h = f.clone();
    let mut quotients = Vec::new();
    let mut pos = 0;
    while pos < h.terms().len() {
        let t = &h.terms()[pos];
        let target = t.monomial();
        match find_divisor(&divisors, &target) {
            Some((k, eps)) => {
                let d = &divisors[k];
                let mapped_lead = d.lead.mono.apply_morphism(&eps)?;
                let multiplier = target.mono.quotient(&mapped_lead)?;
                let coeff = t.coeff() / &d.lead_coeff;
                h = h.sub_mapped(&coeff, &multiplier, &eps, d.element);
                quotients.push(Quotient {
                    generator: k,
                    morphism: eps,
                    coeff,
                    multiplier,
                });
            }
            None => pos += 1,
        }
    }
    Ok(ReductionTrace {
        quotients,
        remainder: h,
    })
}

/// S-polynomial of `gp`, `gq` along a covering pair, or `None` when the
/// mapped lead monomials sit on different basis indices.
pub fn s_polynomial(gp: &ModuleElement, gq: &ModuleElement, pair: &CoveringPair) -> Result<Option<ModuleElement>> {
    let (e1, e2) = (&pair.first, &pair.second);
    if e1.source_width() != gp.width()
        || e2.source_width() != gq.width()
        || e1.target_width() != pair.target
        || e2.target_width() != pair.target
    {
        return Err(Error::InvalidMorphism("covering pair does not fit the elements".into()));
    }
    let mut hit = vec![false; pair.target + 1];
    e1.image().iter().chain(e2.image()).for_each(|&a| hit[a] = true);
    if !hit[1..].iter().all(|&h| h) {
        return Err(Error::InvalidMorphism("pair is not covering".into()));
    }
    if !gp.module().same_as(gq.module()) {
        return Err(Error::ModuleMismatch);
    }
    let Some(parts) = s_pair_parts(gp, gq, pair)? else {
        return Ok(None);
    };
    let left = gp.map_terms(&parts.left_coeff, &parts.left_multiplier, Some(e1));
    let right = gq.map_terms(&parts.right_coeff, &parts.right_multiplier, Some(e2));
    Ok(Some(left.sub(&right)?))
}

/// The S-polynomial is `lc·lm · ε1_*(gp) - rc·rm · ε2_*(gq)`.
pub(crate) struct SPairParts {
    pub left_coeff: Coeff,
    pub left_multiplier: PolyMonomial,
    pub right_coeff: Coeff,
    pub right_multiplier: PolyMonomial,
}

pub(crate) fn s_pair_parts(gp: &ModuleElement, gq: &ModuleElement, pair: &CoveringPair) -> Result<Option<SPairParts>> {
    let (tp, tq) = (gp.lead_term()?, gq.lead_term()?);
    let l1 = tp.monomial().apply_morphism(&pair.first)?;
    let l2 = tq.monomial().apply_morphism(&pair.second)?;
    if l1.basis != l2.basis {
        return Ok(None);
    }
    let lcm = l1.mono.lcm(&l2.mono)?;
    Ok(Some(SPairParts {
        left_coeff: tp.coeff().recip(),
        left_multiplier: lcm.quotient(&l1.mono)?,
        right_coeff: tq.coeff().recip(),
        right_multiplier: lcm.quotient(&l2.mono)?,
    }))
}

/// A covering pair between two basis elements, with its queue position.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPair {
    pub first: usize,
    pub second: usize,
    pub pair: CoveringPair,
}

impl CriticalPair {
    /// Queue key: target width, then generator indices, then enumeration order.
    fn key(&self, seq: usize) -> (usize, usize, usize, usize) {
        (self.pair.target, self.first, self.second, seq)
    }
}

/// Covering pairs of `(g[p], g[q])` whose mapped leads share a basis index.
/// The trivial identity self-pair is left out.
pub(crate) fn critical_pairs(g: &[ModuleElement], p: usize, q: usize) -> Result<Vec<CriticalPair>> {
    let (lp, lq) = (g[p].lead_monomial()?, g[q].lead_monomial()?);
    if lp.basis.summand != lq.basis.summand {
        return Ok(Vec::new());
    }
    Ok(matching_covering_pairs(&lp.basis.morphism, &lq.basis.morphism)
        .into_iter()
        .filter(|c| !(p == q && c.first == c.second))
        .map(|pair| CriticalPair {
            first: p,
            second: q,
            pair,
        })
        .collect())
}

/// All critical pairs among `g`, in queue order.
pub fn all_critical_pairs(g: &[ModuleElement]) -> Result<Vec<CriticalPair>> {
    let mut queue = BTreeMap::new();
    for q in 0..g.len() {
        for p in 0..=q {
            for (seq, cp) in critical_pairs(g, p, q)?.into_iter().enumerate() {
                queue.insert(cp.key(seq), cp);
            }
        }
    }
    Ok(queue.into_values().collect())
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub verbose: bool,
    /// Upper bound on the number of S-pairs processed.
    pub pair_cap: usize,
    /// Drop elements whose lead monomial is OI-divisible by another lead.
    pub minimize: bool,
    pub execution: Execution,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            verbose: false,
            pair_cap: 1_000_000,
            minimize: false,
            execution: Execution::default(),
        }
    }
}

/// A Groebner basis: monic elements, inputs first in their given order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    pub module: Arc<FreeModule>,
    pub elements: Vec<ModuleElement>,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub(crate) fn check_same_module(elements: &[ModuleElement]) -> Result<Arc<FreeModule>> {
    let first = elements.first().ok_or(Error::EmptyInput)?;
    for e in elements {
        if !e.module().same_as(first.module()) {
            return Err(Error::ModuleMismatch);
        }
    }
    Ok(first.module().clone())
}

/// OI-Buchberger completion of `input`.
///
/// Pairs are processed in rounds: every queued pair of the smallest target
/// width is reduced against the basis as it stood when the round began (these
/// reductions are independent and may run in parallel). The remainders are
/// then merged in queue order, each reduced once more against the grown
/// basis and appended monic if still nonzero.
pub fn oi_gb(input: &[ModuleElement], opts: &GbOptions) -> Result<GroebnerBasis> {
    let module = check_same_module(input)?;
    let mut basis: Vec<ModuleElement> = Vec::with_capacity(input.len());
    for b in input {
        if b.is_zero() {
            return Err(Error::ZeroElement);
        }
        basis.push(b.monic());
    }
    let mut queue: BTreeMap<(usize, usize, usize, usize), CriticalPair> = BTreeMap::new();
    for q in 0..basis.len() {
        for p in 0..=q {
            for (seq, cp) in critical_pairs(&basis, p, q)?.into_iter().enumerate() {
                queue.insert(cp.key(seq), cp);
            }
        }
    }
    let mut processed = 0usize;
    while let Some((&(t, ..), _)) = queue.first_key_value() {
        let rest = queue.split_off(&(t + 1, 0, 0, 0));
        let round: Vec<CriticalPair> = std::mem::replace(&mut queue, rest).into_values().collect();
        processed += round.len();
        if processed > opts.pair_cap {
            return Err(Error::PairCapExceeded {
                cap: opts.pair_cap,
                basis_len: basis.len(),
            });
        }
        if opts.verbose {
            info!("oiGB: width {t}: {} pairs, basis size {}", round.len(), basis.len());
        }
        let snapshot = &basis;
        let remainders: Vec<Result<Option<ModuleElement>>> = par::map(opts.execution, &round, |cp| {
            let s = s_polynomial(&snapshot[cp.first], &snapshot[cp.second], &cp.pair)?;
            match s {
                Some(s) if !s.is_zero() => Ok(Some(reduce(&s, snapshot)?.remainder)),
                _ => Ok(None),
            }
        });
        let snapshot_len = basis.len();
        for (cp, r) in round.iter().zip(remainders) {
            let Some(r) = r? else { continue };
            if r.is_zero() {
                continue;
            }
            let r = if basis.len() > snapshot_len {
                reduce(&r, &basis)?.remainder
            } else {
                r
            };
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            if opts.verbose {
                info!(
                    "oiGB: pair ({}, {}) via {} / {} gives new element {}",
                    cp.first + 1,
                    cp.second + 1,
                    cp.pair.first,
                    cp.pair.second,
                    r
                );
            }
            basis.push(r);
            let q = basis.len() - 1;
            for p in 0..=q {
                for (seq, cp) in critical_pairs(&basis, p, q)?.into_iter().enumerate() {
                    queue.insert(cp.key(seq), cp);
                }
            }
        }
    }
    if opts.minimize {
        basis = minimize(basis);
    }
    Ok(GroebnerBasis {
        module,
        elements: basis,
    })
}

/// Removes every element whose lead monomial is OI-divisible by the lead of
/// another surviving element; among equal leads the first one stays.
pub fn minimize(elements: Vec<ModuleElement>) -> Vec<ModuleElement> {
    let leads: Vec<Option<ModuleMonomial>> = elements.iter().map(|e| e.lead_monomial().ok()).collect();
    let mut keep = vec![true; elements.len()];
    for i in 0..elements.len() {
        let Some(li) = &leads[i] else {
            keep[i] = false;
            continue;
        };
        let redundant = (0..elements.len()).any(|j| {
            if j == i || !keep[j] {
                return false;
            }
            let Some(lj) = &leads[j] else { return false };
            if lj == li {
                return j < i;
            }
            first_oi_divisor(lj, li).is_some()
        });
        if redundant {
            keep[i] = false;
        }
    }
    elements
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

/// Whether every S-polynomial of every covering pair reduces to zero.
pub fn is_groebner(g: &[ModuleElement]) -> Result<bool> {
    if g.is_empty() {
        return Ok(true);
    }
    check_same_module(g)?;
    for cp in all_critical_pairs(g)? {
        if let Some(s) = s_polynomial(&g[cp.first], &g[cp.second], &cp.pair)? {
            if !s.is_zero() && !reduce(&s, g)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether no term of `r` is OI-divisible by a lead monomial of `g`.
pub fn is_irreducible(r: &ModuleElement, g: &[ModuleElement]) -> bool {
    let leads: Vec<ModuleMonomial> = g.iter().filter_map(|e| e.lead_monomial().ok()).collect();
    r.terms()
        .iter()
        .all(|t| leads.iter().all(|l| first_oi_divisor(l, &t.monomial()).is_none()))
}
