//! Random inputs and the invariant checks run on them.

use std::sync::Arc;

use num_traits::Zero;
use oigb_core::groebner::{is_irreducible, oi_gb, reduce, GbOptions};
use oigb_core::module::{BasisIndex, FreeModule, ModuleElement, ModuleMonomial};
use oigb_core::oi::{enumerate_hom, OIMorphism};
use oigb_core::poly::{integer, Algebra, PolyMonomial};
use oigb_core::syzygy::{make_canonical_map, mapped_lead, oi_syz, SyzOptions};
use oigb_core::Error;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Raw data of one term: coefficient, exponents, summand and morphism choices.
pub type RawTerm = (i64, Vec<u32>, usize, usize);

pub fn lex_module() -> Arc<FreeModule> {
    let alg = Algebra::new(2, "x").unwrap();
    Arc::new(FreeModule::new(alg, "e", vec![1, 1, 2]).unwrap())
}

/// The Schreyer-ordered source module of the golden syzygy computation.
pub fn schreyer_module() -> Arc<FreeModule> {
    let (_, f) = super::syz_example();
    let g = oi_gb(&[f], &GbOptions::default()).unwrap();
    make_canonical_map(&g.elements, "d").unwrap().source
}

pub fn morphism(max_target: usize) -> impl Strategy<Value = OIMorphism> {
    (0..=max_target).prop_flat_map(|n| {
        (0..=n).prop_flat_map(move |m| {
            proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), m)
                .prop_map(move |img| OIMorphism::new(n, img).unwrap())
        })
    })
}

/// A morphism out of `[m]` into some `[n]` with `n ≤ m + extra`.
pub fn morphism_from(m: usize, extra: usize) -> impl Strategy<Value = OIMorphism> {
    (m..=m + extra).prop_flat_map(move |n| {
        proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), m)
            .prop_map(move |img| OIMorphism::new(n, img).unwrap())
    })
}

pub fn raw_terms(rows: usize, width: usize, max_exp: u32, terms: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    proptest::collection::vec(
        (
            prop_oneof![-3i64..=-1, 1i64..=3],
            proptest::collection::vec(0..=max_exp, rows * width),
            any::<usize>(),
            any::<usize>(),
        ),
        1..=terms,
    )
}

fn monomial_from(rows: usize, width: usize, exps: &[u32]) -> PolyMonomial {
    let entries: Vec<((usize, usize), u32)> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| ((k / width + 1, k % width + 1), e))
        .collect();
    PolyMonomial::from_exponents(rows, width, &entries).unwrap()
}

fn basis_from(module: &FreeModule, width: usize, summand: usize, choice: usize) -> Option<BasisIndex> {
    let s = summand % module.rank();
    let homs = enumerate_hom(module.gen_widths()[s], width);
    (!homs.is_empty()).then(|| BasisIndex::new(s, homs[choice % homs.len()].clone()))
}

/// Builds an element; terms whose summand does not fit the width are dropped.
pub fn build(module: &Arc<FreeModule>, width: usize, raw: &[RawTerm]) -> ModuleElement {
    let rows = module.rows();
    let terms = raw
        .iter()
        .filter_map(|(c, exps, s, p)| {
            let b = basis_from(module, width, *s, *p)?;
            Some((integer(*c), monomial_from(rows, width, exps), b))
        })
        .collect();
    ModuleElement::from_terms(module, width, terms).unwrap()
}

/// Like `build`, keeping only terms of the degree of the first kept term.
pub fn build_homogeneous(module: &Arc<FreeModule>, width: usize, raw: &[RawTerm]) -> ModuleElement {
    let e = build(module, width, raw);
    let Some(first) = e.terms().first() else { return e };
    let d = e.term_degree(first);
    let keep: Vec<_> = e
        .terms()
        .iter()
        .filter(|t| e.term_degree(t) == d)
        .map(|t| (t.coeff().clone(), t.mono().clone(), t.basis().clone()))
        .collect();
    ModuleElement::from_terms(module, width, keep).unwrap()
}

pub fn monomial(module: &Arc<FreeModule>, width: usize, raw: &RawTerm) -> Option<ModuleMonomial> {
    let b = basis_from(module, width, raw.2, raw.3)?;
    Some(ModuleMonomial::new(monomial_from(module.rows(), width, &raw.1), b).unwrap())
}

pub fn element(module: Arc<FreeModule>, max_width: usize, max_exp: u32, terms: usize) -> impl Strategy<Value = ModuleElement> {
    let rows = module.rows();
    (1..=max_width).prop_flat_map(move |w| {
        let m = module.clone();
        raw_terms(rows, w, max_exp, terms).prop_map(move |raw| build(&m, w, &raw))
    })
}

type Check = std::result::Result<(), TestCaseError>;

/// `(π then ε)_* = ε_* π_*` and `id_* = id` on module elements.
pub fn check_functoriality(x: &ModuleElement, pi: &OIMorphism, eps: &OIMorphism) -> Check {
    let id = OIMorphism::identity(x.width());
    prop_assert_eq!(&x.apply_morphism(&id).unwrap(), x);
    let px = x.apply_morphism(pi).unwrap();
    let composite = pi.then(eps).unwrap();
    prop_assert_eq!(px.apply_morphism(eps).unwrap(), x.apply_morphism(&composite).unwrap());
    Ok(())
}

/// The module order is preserved by `ε_*` and by multiplying with `m`,
/// a monomial in the target width of `ε`.
pub fn check_order(module: &FreeModule, a: &ModuleMonomial, b: &ModuleMonomial, eps: &OIMorphism, m: &PolyMonomial) -> Check {
    let base = module.compare(a, b).unwrap();
    let (ea, eb) = (a.apply_morphism(eps).unwrap(), b.apply_morphism(eps).unwrap());
    prop_assert_eq!(module.compare(&ea, &eb).unwrap(), base);
    let (ma, mb) = (ea.mul(m).unwrap(), eb.mul(m).unwrap());
    prop_assert_eq!(module.compare(&ma, &mb).unwrap(), base);
    Ok(())
}

/// `f = Σ c · a · ε_*(g) + r` and `r` is irreducible.
pub fn check_division(f: &ModuleElement, g: &[ModuleElement]) -> Check {
    let g: Vec<ModuleElement> = g.iter().filter(|e| !e.is_zero()).cloned().collect();
    let trace = reduce(f, &g).unwrap();
    prop_assert_eq!(&trace.replay(&g).unwrap(), f);
    prop_assert!(is_irreducible(&trace.remainder, &g));
    Ok(())
}

/// Every syzygy maps to zero and its lead maps to a lead of the image side.
/// Inputs whose Groebner basis exceeds the pair cap are skipped.
pub fn check_schreyer(b: &[ModuleElement]) -> std::result::Result<bool, TestCaseError> {
    let b: Vec<ModuleElement> = b.iter().filter(|e| !e.is_zero()).cloned().collect();
    if b.is_empty() {
        return Ok(false);
    }
    let opts = GbOptions {
        pair_cap: 400,
        ..GbOptions::default()
    };
    let gb = match oi_gb(&b, &opts) {
        Ok(gb) => gb,
        Err(Error::PairCapExceeded { .. }) => return Ok(false),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let syz = oi_syz(&gb.elements, "d", &SyzOptions::default()).unwrap();
    for s in &syz.elements {
        prop_assert!(syz.map.apply(s).unwrap().is_zero());
        prop_assert!(!s.lead_coeff().unwrap().is_zero());
        mapped_lead(&syz.map, s).unwrap();
    }
    Ok(true)
}

/// A homogeneous element of width `≤ max_width` and degree `≤ max_degree`:
/// every term gets a monomial of the same degree.
pub fn homogeneous_element(module: Arc<FreeModule>, max_width: usize, max_degree: usize, terms: usize) -> impl Strategy<Value = ModuleElement> {
    let rows = module.rows();
    (1..=max_width, 0..=max_degree).prop_flat_map(move |(w, d)| {
        let m = module.clone();
        proptest::collection::vec(
            (
                prop_oneof![-3i64..=-1, 1i64..=3],
                proptest::collection::vec(0..rows * w, d),
                any::<usize>(),
                any::<usize>(),
            ),
            1..=terms,
        )
        .prop_map(move |raw| {
            let raw: Vec<RawTerm> = raw
                .into_iter()
                .map(|(c, vars, s, p)| {
                    let mut exps = vec![0u32; rows * w];
                    for v in vars {
                        exps[v] += 1;
                    }
                    (c, exps, s, p)
                })
                .collect();
            build(&m, w, &raw)
        })
    })
}

/// Resolves `b` to degree `k` and checks `d ∘ d = 0` at the OI level and in
/// every width up to `max_width`. Returns `false` when the input is skipped
/// (zero, or its Groebner basis exceeds the pair cap).
pub fn check_complex(b: &[ModuleElement], k: usize, minimize: bool, max_width: usize) -> std::result::Result<bool, TestCaseError> {
    use oigb_core::resolution::{oi_res, restrict_to_width, ResOptions};
    let b: Vec<ModuleElement> = b.iter().filter(|e| !e.is_zero()).cloned().collect();
    if b.is_empty() {
        return Ok(false);
    }
    let opts = ResOptions {
        minimize,
        pair_cap: 400,
        ..ResOptions::default()
    };
    let r = match oi_res(&b, k, &opts) {
        Ok(r) => r,
        Err(Error::PairCapExceeded { .. }) => return Ok(false),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    prop_assert!(r.is_complex().unwrap());
    for w in 0..=max_width {
        prop_assert!(restrict_to_width(&r, w).unwrap().is_complex().unwrap(), "width {}", w);
    }
    Ok(true)
}
