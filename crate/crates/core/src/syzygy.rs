//! Syzygies of a Groebner basis via the Schreyer construction.
//!
//! For `G = {g_1, ..., g_s}` the canonical map `φ` sends the generator
//! `d_{id,i}` of `⊕ F^{OI,w_i}` to `g_i`. Every S-pair of `G` reduces to zero,
//! and the reduction trace turns it into an element of `ker φ`; together
//! these form a Groebner basis of `ker φ` under the Schreyer order.

use std::sync::Arc;

use log::info;

use crate::error::{Error, Result};
use crate::groebner::{all_critical_pairs, check_same_module, minimize, reduce, s_pair_parts, CriticalPair};
use crate::module::{BasisIndex, FreeModule, ModuleElement};
use crate::par::{self, Execution};
use crate::poly::PolyMonomial;

/// `φ: d_{id,i} ↦ targets[i]`, extended OI-equivariantly and linearly.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub source: Arc<FreeModule>,
    pub targets: Vec<ModuleElement>,
    pub target_module: Arc<FreeModule>,
}

/// Source module for `targets` with basis symbol `symbol`.
///
/// Twists are the negated degrees of the targets when all of them are
/// homogeneous (so `d_{id,i}` and `g_i` share a degree), otherwise zero.
pub fn make_canonical_map(targets: &[ModuleElement], symbol: &str) -> Result<CanonicalMap> {
    let target_module = check_same_module(targets)?;
    make_canonical_map_in(&target_module, targets, symbol)
}

/// As `make_canonical_map`, with the target module given explicitly so that
/// an empty list yields the map from the zero module.
pub fn make_canonical_map_in(
    target_module: &Arc<FreeModule>,
    targets: &[ModuleElement],
    symbol: &str,
) -> Result<CanonicalMap> {
    let target_module = target_module.clone();
    for g in targets {
        if !g.module().same_as(&target_module) {
            return Err(Error::ModuleMismatch);
        }
    }
    let leads = targets
        .iter()
        .map(|g| g.lead_monomial())
        .collect::<Result<Vec<_>>>()?;
    let degrees: Option<Vec<i64>> = targets.iter().map(|g| g.degree()).collect();
    let twists = match degrees {
        Some(d) => d.into_iter().map(|x| -x).collect(),
        None => vec![0; targets.len()],
    };
    let source = FreeModule::schreyer(
        target_module.algebra().clone(),
        symbol,
        twists,
        target_module.clone(),
        leads,
    )?;
    Ok(CanonicalMap {
        source: Arc::new(source),
        targets: targets.to_vec(),
        target_module,
    })
}

impl CanonicalMap {
    /// `c · a · d_{π,i} ↦ c · a · π_*(targets[i])`.
    pub fn apply(&self, s: &ModuleElement) -> Result<ModuleElement> {
        if !s.module().same_as(&self.source) {
            return Err(Error::ModuleMismatch);
        }
        apply_images(&self.target_module, &self.targets, s)
    }
}

/// Applies the map sending generator `i` of `s`'s module to `images[i]`.
pub fn apply_images(
    target_module: &Arc<FreeModule>,
    images: &[ModuleElement],
    s: &ModuleElement,
) -> Result<ModuleElement> {
    let mut acc = ModuleElement::zero(target_module, s.width());
    for t in s.terms() {
        let g = images
            .get(t.basis().summand)
            .ok_or_else(|| Error::InvalidElement(format!("no image for generator {}", t.basis().summand + 1)))?;
        let part = g.map_terms(t.coeff(), t.mono(), Some(&t.basis().morphism));
        acc = acc.add(&part)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SyzOptions {
    pub verbose: bool,
    pub execution: Execution,
}


/// Groebner basis of `ker φ`, elements in the source module of `map`.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    pub map: CanonicalMap,
    pub elements: Vec<ModuleElement>,
}

/// The syzygy attached to one critical pair; zero for trivial pairs.
fn pair_syzygy(map: &CanonicalMap, cp: &CriticalPair) -> Result<Option<ModuleElement>> {
    let g = &map.targets;
    let (gp, gq) = (&g[cp.first], &g[cp.second]);
    let Some(parts) = s_pair_parts(gp, gq, &cp.pair)? else {
        return Ok(None);
    };
    let left = gp.map_terms(&parts.left_coeff, &parts.left_multiplier, Some(&cp.pair.first));
    let right = gq.map_terms(&parts.right_coeff, &parts.right_multiplier, Some(&cp.pair.second));
    let s = left.sub(&right)?;
    let trace = reduce(&s, g)?;
    if !trace.remainder.is_zero() {
        return Err(Error::NotGroebner);
    }
    let mut raw = vec![
        (parts.left_coeff, parts.left_multiplier, BasisIndex::new(cp.first, cp.pair.first.clone())),
        (-parts.right_coeff, parts.right_multiplier, BasisIndex::new(cp.second, cp.pair.second.clone())),
    ];
    for q in trace.quotients {
        raw.push((-q.coeff, q.multiplier, BasisIndex::new(q.generator, q.morphism)));
    }
    let syz = ModuleElement::from_terms(&map.source, cp.pair.target, raw)?;
    Ok((!syz.is_zero()).then(|| syz.monic()))
}

/// Computes a Groebner basis of the syzygies of `g`, which must itself be a
/// Groebner basis. Syzygies come out monic, in critical-pair order, with
/// duplicates and elements whose lead is OI-divisible by an earlier
/// survivor's lead removed.
pub fn oi_syz(g: &[ModuleElement], symbol: &str, opts: &SyzOptions) -> Result<SyzygyBasis> {
    let map = make_canonical_map(g, symbol)?;
    syzygies_of(map, opts)
}

/// `oi_syz` for an already constructed canonical map.
pub fn syzygies_of(map: CanonicalMap, opts: &SyzOptions) -> Result<SyzygyBasis> {
    let g = &map.targets;
    let pairs = all_critical_pairs(g)?;
    if opts.verbose {
        info!("oiSyz: {} generators, {} critical pairs", g.len(), pairs.len());
    }
    let found = par::map(opts.execution, &pairs, |cp| pair_syzygy(&map, cp));
    let mut elements = Vec::new();
    for s in found {
        if let Some(s) = s? {
            elements.push(s);
        }
    }
    let raw_len = elements.len();
    let elements = minimize(elements);
    if opts.verbose {
        info!("oiSyz: {} syzygies, {} after minimization", raw_len, elements.len());
    }
    Ok(SyzygyBasis { map, elements })
}

/// The multiplier `a` and basis index of the lead term of a syzygy, mapped by `φ`.
pub fn mapped_lead(map: &CanonicalMap, s: &ModuleElement) -> Result<(PolyMonomial, BasisIndex)> {
    let t = s.lead_term()?;
    let img = map.targets[t.basis().summand]
        .lead_monomial()?
        .apply_morphism(&t.basis().morphism)?
        .mul(t.mono())?;
    Ok((img.mono, img.basis))
}
