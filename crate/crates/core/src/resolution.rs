//! Free resolutions by iterated syzygies, graded-minimal pruning, reports
//! and restriction to a single width.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use log::info;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{check_same_module, oi_gb, GbOptions};
use crate::module::{BasisIndex, FreeModule, ModuleElement, MonomialOrder};
use crate::oi::enumerate_hom;
use crate::par::Execution;
use crate::poly::{Algebra, Coeff, Polynomial};
use crate::syzygy::{apply_images, make_canonical_map_in, syzygies_of, SyzOptions};
use crate::text::parse_element_in;

#[derive(Clone, Debug)]
pub struct ResOptions {
    /// Prune unit entries to make the complex graded-minimal.
    pub minimize: bool,
    pub verbose: bool,
    pub pair_cap: usize,
    pub execution: Execution,
    /// Basis symbol of the modules `F^j`.
    pub symbol: String,
}

impl Default for ResOptions {
    fn default() -> Self {
        ResOptions {
            minimize: true,
            verbose: false,
            pair_cap: GbOptions::default().pair_cap,
            execution: Execution::default(),
            symbol: "d".into(),
        }
    }
}

/// `F^k → ... → F^1 → F^0 → M → 0` for `M` a submodule of `ambient`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    pub ambient: Arc<FreeModule>,
    /// `F^0, ..., F^k`.
    pub modules: Vec<Arc<FreeModule>>,
    /// Images of the generators of `F^0` in the ambient module.
    pub augmentation: Vec<ModuleElement>,
    /// `differentials[j]` holds the images of the generators of `F^{j+1}` in `F^j`.
    pub differentials: Vec<Vec<ModuleElement>>,
}

impl FreeComplex {
    /// The homological degree `k` of the last module.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Images of the generators of `F^j`; the augmentation for `j = 0`.
    pub fn images(&self, j: usize) -> &[ModuleElement] {
        if j == 0 {
            &self.augmentation
        } else {
            &self.differentials[j - 1]
        }
    }

    /// The module receiving the images of `F^j`.
    pub fn target(&self, j: usize) -> &Arc<FreeModule> {
        if j == 0 {
            &self.ambient
        } else {
            &self.modules[j - 1]
        }
    }

    /// Applies the map out of `F^j` to an element of `F^j`.
    pub fn apply(&self, j: usize, s: &ModuleElement) -> Result<ModuleElement> {
        let source = self.modules.get(j).ok_or_else(|| Error::InvalidElement(format!("no step {j}")))?;
        if !s.module().same_as(source) {
            return Err(Error::ModuleMismatch);
        }
        apply_images(self.target(j), self.images(j), s)
    }

    /// Whether every composite of consecutive maps, the augmentation
    /// included, vanishes on the generators.
    pub fn is_complex(&self) -> Result<bool> {
        for j in 1..=self.length() {
            for h in self.images(j) {
                if !self.apply(j - 1, h)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn ranks(r: &FreeComplex) -> Vec<usize> {
    r.ranks()
}

/// Resolves the submodule generated by `b` out to homological degree `k`.
///
/// `F^0` maps onto a minimal Groebner basis of `⟨b⟩`; each later step is
/// the Schreyer syzygy basis of the step before. With `minimize` the
/// complex is then pruned so that no map between consecutive `F^j` has a
/// constant entry on an identity basis term; the last module is only pruned
/// against its target.
pub fn oi_res(b: &[ModuleElement], k: usize, opts: &ResOptions) -> Result<FreeComplex> {
    let ambient = check_same_module(b)?;
    if opts.minimize && !b.iter().all(|e| e.is_homogeneous()) {
        return Err(Error::NonHomogeneous);
    }
    let gb_opts = GbOptions {
        verbose: opts.verbose,
        pair_cap: opts.pair_cap,
        minimize: true,
        execution: opts.execution,
    };
    let syz_opts = SyzOptions {
        verbose: opts.verbose,
        execution: opts.execution,
    };
    let mut images = vec![oi_gb(b, &gb_opts)?.elements];
    let mut modules: Vec<Arc<FreeModule>> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let target = if j == 0 { &ambient } else { &modules[j - 1] };
        let map = make_canonical_map_in(target, &images[j], &opts.symbol)?;
        modules.push(map.source.clone());
        if opts.verbose {
            info!("oiRes: step {} has rank {}", j, map.targets.len());
        }
        if j == k {
            break;
        }
        let next = if map.targets.is_empty() {
            Vec::new()
        } else {
            syzygies_of(map, &syz_opts)?.elements
        };
        images.push(next);
    }
    let augmentation = images.remove(0);
    let complex = FreeComplex {
        ambient,
        modules,
        augmentation,
        differentials: images,
    };
    if opts.minimize {
        let pruned = prune(complex)?;
        if opts.verbose {
            info!("oiRes: ranks after pruning {:?}", pruned.ranks());
        }
        Ok(pruned)
    } else {
        Ok(complex)
    }
}

/// First `(generator, target summand, coefficient)` with a constant
/// coefficient on an identity basis term.
fn find_unit(images: &[ModuleElement], alive: &[bool]) -> Option<(usize, usize, Coeff)> {
    images.iter().enumerate().filter(|(s, _)| alive[*s]).find_map(|(s, h)| {
        h.terms()
            .iter()
            .find(|t| t.mono().is_one() && t.basis().morphism.is_identity())
            .map(|t| (s, t.basis().summand, t.coeff().clone()))
    })
}

fn prune(c: FreeComplex) -> Result<FreeComplex> {
    let k = c.length();
    let mut images: Vec<Vec<ModuleElement>> = std::iter::once(c.augmentation).chain(c.differentials).collect();
    let mut alive: Vec<Vec<bool>> = c.modules.iter().map(|m| vec![true; m.rank()]).collect();
    for j in 1..=k {
        while let Some((s, i, unit)) = find_unit(&images[j], &alive[j]) {
            let pivot = images[j][s].clone();
            for s2 in 0..images[j].len() {
                if s2 == s || !alive[j][s2] {
                    continue;
                }
                // Homogeneity leaves the pivot a single term on summand i,
                // so each substitution removes one term and adds none there.
                while let Some((coeff, mono, pi)) = images[j][s2]
                    .terms()
                    .iter()
                    .find(|t| t.basis().summand == i)
                    .map(|t| (t.coeff() / &unit, t.mono().clone(), t.basis().morphism.clone()))
                {
                    images[j][s2] = images[j][s2].sub_mapped(&coeff, &mono, &pi, &pivot);
                }
            }
            alive[j][s] = false;
            alive[j - 1][i] = false;
            if j < k {
                for h in images[j + 1].iter_mut() {
                    *h = h.retain_terms(|t| t.basis().summand != s);
                }
            }
        }
    }

    let mut modules = Vec::with_capacity(k + 1);
    let mut new_images = Vec::with_capacity(k + 1);
    let mut target = c.ambient.clone();
    let mut target_index: Option<Vec<Option<usize>>> = None;
    for j in 0..=k {
        let old = &c.modules[j];
        let kept: Vec<usize> = (0..old.rank()).filter(|&s| alive[j][s]).collect();
        let module = Arc::new(FreeModule::lex_possibly_empty(
            old.algebra().clone(),
            old.symbol(),
            kept.iter().map(|&s| old.gen_widths()[s]).collect(),
            kept.iter().map(|&s| old.twists()[s]).collect(),
        ));
        let mut step = Vec::with_capacity(kept.len());
        for &s in &kept {
            let h = &images[j][s];
            let raw = h
                .terms()
                .iter()
                .map(|t| {
                    let summand = match &target_index {
                        None => Some(t.basis().summand),
                        Some(ix) => ix[t.basis().summand],
                    };
                    let summand = summand.ok_or_else(|| {
                        Error::InvalidElement("pruned image refers to a removed generator".into())
                    })?;
                    Ok((t.coeff().clone(), t.mono().clone(), BasisIndex::new(summand, t.basis().morphism.clone())))
                })
                .collect::<Result<Vec<_>>>()?;
            step.push(ModuleElement::from_terms(&target, h.width(), raw)?);
        }
        let mut index = vec![None; old.rank()];
        for (new, &s) in kept.iter().enumerate() {
            index[s] = Some(new);
        }
        target_index = Some(index);
        target = module.clone();
        modules.push(module);
        new_images.push(step);
    }
    let augmentation = new_images.remove(0);
    Ok(FreeComplex {
        ambient: c.ambient,
        modules,
        augmentation,
        differentials: new_images,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescription {
    pub symbol: String,
    pub widths: Vec<usize>,
    pub twists: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Schreyer,
}

/// One module `F^j` with the images of its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDescription {
    pub symbol: String,
    pub widths: Vec<usize>,
    pub twists: Vec<i64>,
    pub order: OrderKind,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDescription {
    pub algebra: Algebra,
    pub ambient: ModuleDescription,
    pub steps: Vec<StepDescription>,
}

pub fn describe(r: &FreeComplex) -> ComplexDescription {
    let steps = r
        .modules
        .iter()
        .enumerate()
        .map(|(j, m)| StepDescription {
            symbol: m.symbol().to_string(),
            widths: m.gen_widths().to_vec(),
            twists: m.twists().to_vec(),
            order: match m.order() {
                MonomialOrder::Lex => OrderKind::Lex,
                MonomialOrder::Schreyer(_) => OrderKind::Schreyer,
            },
            images: r.images(j).iter().map(|h| h.to_string()).collect(),
        })
        .collect();
    ComplexDescription {
        algebra: r.ambient.algebra().clone(),
        ambient: ModuleDescription {
            symbol: r.ambient.symbol().to_string(),
            widths: r.ambient.gen_widths().to_vec(),
            twists: r.ambient.twists().to_vec(),
        },
        steps,
    }
}

impl ComplexDescription {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (j, step) in self.steps.iter().enumerate() {
            let _ = writeln!(
                s,
                "F^{}: rank {}, widths {:?}, twists {:?}",
                j,
                step.widths.len(),
                step.widths,
                step.twists
            );
            for h in &step.images {
                let _ = writeln!(s, "  {h}");
            }
        }
        s
    }
}

/// Rebuilds a complex from its description.
pub fn from_description(desc: &ComplexDescription) -> Result<FreeComplex> {
    let algebra = Algebra::new(desc.algebra.rows, desc.algebra.symbol.clone())?;
    let ambient = Arc::new(FreeModule::with_twists(
        algebra.clone(),
        desc.ambient.symbol.clone(),
        desc.ambient.widths.clone(),
        desc.ambient.twists.clone(),
    )?);
    if desc.steps.is_empty() {
        return Err(Error::InvalidDescription("a complex has at least one step".into()));
    }
    let mut parent = ambient.clone();
    let mut modules = Vec::with_capacity(desc.steps.len());
    let mut images = Vec::with_capacity(desc.steps.len());
    for (j, step) in desc.steps.iter().enumerate() {
        if step.images.len() != step.widths.len() || step.twists.len() != step.widths.len() {
            return Err(Error::InvalidDescription(format!(
                "step {j}: {} widths, {} twists and {} images",
                step.widths.len(),
                step.twists.len(),
                step.images.len()
            )));
        }
        let parsed = step
            .images
            .iter()
            .zip(&step.widths)
            .map(|(src, &w)| parse_element_in(&parent, Some(w), src))
            .collect::<Result<Vec<_>>>()?;
        let module = match step.order {
            OrderKind::Lex => FreeModule::lex_possibly_empty(
                algebra.clone(),
                step.symbol.clone(),
                step.widths.clone(),
                step.twists.clone(),
            ),
            OrderKind::Schreyer => {
                let leads = parsed.iter().map(|h| h.lead_monomial()).collect::<Result<Vec<_>>>()?;
                FreeModule::schreyer(algebra.clone(), step.symbol.clone(), step.twists.clone(), parent.clone(), leads)?
            }
        };
        parent = Arc::new(module);
        modules.push(parent.clone());
        images.push(parsed);
    }
    let augmentation = images.remove(0);
    Ok(FreeComplex {
        ambient,
        modules,
        augmentation,
        differentials: images,
    })
}

/// A dense matrix of polynomials over `P_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub ncols: usize,
    /// Row-major.
    pub entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, width: usize, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nrows,
            ncols,
            entries: vec![Polynomial::zero(rows, width); nrows * ncols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.ncols + c]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::InvalidElement(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let (rows, width) = match self.entries.first().or(other.entries.first()) {
            Some(p) => (p.rows(), p.width()),
            None => return Ok(PolyMatrix { nrows: self.nrows, ncols: other.ncols, entries: Vec::new() }),
        };
        let mut out = PolyMatrix::zero(rows, width, self.nrows, other.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.ncols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.entries[r * other.ncols + c];
                    *e = e.add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols)
            .map(|c| (0..self.nrows).map(|r| self.get(r, c).clone()).collect())
            .collect()
    }

    /// Row-major entries printed with the variable symbol `symbol`.
    pub fn to_strings(&self, symbol: &str) -> Vec<Vec<String>> {
        (0..self.nrows)
            .map(|r| (0..self.ncols).map(|c| self.get(r, c).fmt_with(symbol)).collect())
            .collect()
    }
}

/// The basis `e_{π,i}` of the width-`w` component, by summand then `π`.
pub fn width_basis(module: &FreeModule, w: usize) -> Vec<BasisIndex> {
    module
        .gen_widths()
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| enumerate_hom(d, w).into_iter().map(move |pi| BasisIndex::new(i, pi)))
        .collect()
}

/// The chain complex of free `P_w`-modules obtained at width `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedComplex {
    pub width: usize,
    pub ambient_basis: Vec<BasisIndex>,
    /// Bases of `F^0_w, ..., F^k_w`.
    pub bases: Vec<Vec<BasisIndex>>,
    /// `F^0_w → F_w`.
    pub augmentation: PolyMatrix,
    /// `differentials[j]` is `F^{j+1}_w → F^j_w`.
    pub differentials: Vec<PolyMatrix>,
}

impl RestrictedComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// Whether consecutive matrices multiply to zero.
    pub fn is_complex(&self) -> Result<bool> {
        let mut prev = &self.augmentation;
        for d in &self.differentials {
            if !prev.mul(d)?.is_zero() {
                return Ok(false);
            }
            prev = d;
        }
        Ok(true)
    }
}

fn restrict_map(
    images: &[ModuleElement],
    source: &[BasisIndex],
    target: &[BasisIndex],
    rows: usize,
    w: usize,
) -> Result<PolyMatrix> {
    let row_of: HashMap<&BasisIndex, usize> = target.iter().enumerate().map(|(r, b)| (b, r)).collect();
    let mut m = PolyMatrix::zero(rows, w, target.len(), source.len());
    for (c, b) in source.iter().enumerate() {
        let col = images[b.summand].apply_morphism(&b.morphism)?;
        for (basis, p) in col.coordinates() {
            let r = row_of[&basis];
            m.entries[r * source.len() + c] = p;
        }
    }
    Ok(m)
}

pub fn restrict_to_width(r: &FreeComplex, w: usize) -> Result<RestrictedComplex> {
    let rows = r.ambient.rows();
    let ambient_basis = width_basis(&r.ambient, w);
    let bases: Vec<Vec<BasisIndex>> = r.modules.iter().map(|m| width_basis(m, w)).collect();
    let augmentation = restrict_map(&r.augmentation, &bases[0], &ambient_basis, rows, w)?;
    let differentials = (1..bases.len())
        .map(|j| restrict_map(r.images(j), &bases[j], &bases[j - 1], rows, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictedComplex {
        width: w,
        ambient_basis,
        bases,
        augmentation,
        differentials,
    })
}
