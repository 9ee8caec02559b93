//! Classical Buchberger over a single polynomial ring `P_n`, used to check
//! OI-level results width by width.
//!
//! The reduction code here is separate from the `groebner` module: vectors
//! are sparse lists of `(position, exponents, coefficient)` and orders are
//! position-over-term with explicit position weights.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::module::{BasisIndex, FreeModule, ModuleElement};
use crate::oi::enumerate_hom;
use crate::par::{self, Execution};
use crate::poly::{Coeff, PolyMonomial, Polynomial};
use crate::resolution::{restrict_to_width, width_basis, FreeComplex};

/// A submodule of `P_n^r` given by generating coordinate vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct WidthModulePresentation {
    pub width: usize,
    pub rows: usize,
    /// Labels of the coordinates, by summand then `π`.
    pub basis: Vec<BasisIndex>,
    pub generators: Vec<Vec<Polynomial>>,
}

impl WidthModulePresentation {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The position order induced by the OI lex order on this width.
    pub fn order(&self) -> VectorOrder {
        VectorOrder::lex(&self.basis)
    }
}

/// All images `ε_*(b)` for `b ∈ B` and `ε ∈ hom(width(b), n)`.
pub fn expand_in_width(module: &FreeModule, b: &[ModuleElement], n: usize) -> Result<WidthModulePresentation> {
    let basis = width_basis(module, n);
    let index: HashMap<&BasisIndex, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut generators = Vec::new();
    for g in b {
        if g.is_zero() {
            continue;
        }
        for eps in enumerate_hom(g.width(), n) {
            let mut v = vec![Polynomial::zero(module.rows(), n); basis.len()];
            for (bi, p) in g.apply_morphism(&eps)?.coordinates() {
                let k = *index.get(&bi).ok_or(Error::ModuleMismatch)?;
                v[k] = p;
            }
            generators.push(v);
        }
    }
    Ok(WidthModulePresentation {
        width: n,
        rows: module.rows(),
        basis,
        generators,
    })
}

/// Position-over-term order: a larger weight wins, then lex on the
/// exponents with `x(c,n)` the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOrder {
    weights: Vec<usize>,
}

impl VectorOrder {
    pub fn from_weights(weights: Vec<usize>) -> Self {
        VectorOrder { weights }
    }

    /// Earlier summand is larger, then the lexicographically larger `π`.
    pub fn lex(basis: &[BasisIndex]) -> Self {
        let mut idx: Vec<usize> = (0..basis.len()).collect();
        idx.sort_by(|&a, &b| {
            let (x, y) = (&basis[a], &basis[b]);
            y.summand
                .cmp(&x.summand)
                .then_with(|| x.morphism.image().cmp(y.morphism.image()))
        });
        let mut weights = vec![0; basis.len()];
        for (rank, k) in idx.into_iter().enumerate() {
            weights[k] = rank;
        }
        VectorOrder { weights }
    }

    fn cmp(&self, a: &CTerm, b: &CTerm) -> Ordering {
        self.weights[a.pos]
            .cmp(&self.weights[b.pos])
            .then_with(|| a.exps.iter().rev().cmp(b.exps.iter().rev()))
    }
}

#[derive(Clone, Debug)]
struct CTerm {
    pos: usize,
    exps: Vec<u32>,
    coeff: Coeff,
}

/// Terms sorted strictly descending.
type Sparse = Vec<CTerm>;

struct Ring<'a> {
    rows: usize,
    width: usize,
    len: usize,
    order: &'a VectorOrder,
}

impl Ring<'_> {
    fn sparse(&self, v: &[Polynomial]) -> Sparse {
        let mut out: Sparse = Vec::new();
        for (pos, p) in v.iter().enumerate() {
            for (c, m) in p.terms() {
                let mut exps = Vec::with_capacity(self.rows * self.width);
                for r in 1..=self.rows {
                    for col in 1..=self.width {
                        exps.push(m.exponent(r, col));
                    }
                }
                out.push(CTerm {
                    pos,
                    exps,
                    coeff: c.clone(),
                });
            }
        }
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    fn dense(&self, s: &Sparse) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Coeff, PolyMonomial)>> = vec![Vec::new(); self.len];
        for t in s {
            let entries: Vec<((usize, usize), u32)> = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| ((k / self.width + 1, k % self.width + 1), e))
                .collect();
            let m = PolyMonomial::from_exponents(self.rows, self.width, &entries).expect("exponents in range");
            parts[t.pos].push((t.coeff.clone(), m));
        }
        parts
            .into_iter()
            .map(|terms| Polynomial::from_terms(self.rows, self.width, terms).expect("same width"))
            .collect()
    }

    /// `f - c · m · g` where `m` is an exponent vector.
    fn sub_mul(&self, f: &Sparse, c: &Coeff, m: &[u32], g: &Sparse) -> Sparse {
        let scaled: Vec<CTerm> = g
            .iter()
            .map(|t| CTerm {
                pos: t.pos,
                exps: t.exps.iter().zip(m).map(|(a, b)| a + b).collect(),
                coeff: -(&t.coeff * c),
            })
            .collect();
        let mut out = Vec::with_capacity(f.len() + scaled.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() || j < scaled.len() {
            let ord = if i == f.len() {
                Ordering::Less
            } else if j == scaled.len() {
                Ordering::Greater
            } else {
                self.order.cmp(&f[i], &scaled[j])
            };
            match ord {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scaled[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &f[i].coeff + &scaled[j].coeff;
                    if !c.is_zero() {
                        out.push(CTerm {
                            pos: f[i].pos,
                            exps: f[i].exps.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full normal form of `f` modulo `g`.
    fn normal_form(&self, f: &Sparse, g: &[Sparse]) -> Sparse {
        let mut p = f.clone();
        let mut rem: Sparse = Vec::new();
        while let Some(lt) = p.first().cloned() {
            let divisor = g.iter().find(|h| divides(&h[0], &lt));
            match divisor {
                Some(h) => {
                    let m: Vec<u32> = lt.exps.iter().zip(&h[0].exps).map(|(a, b)| a - b).collect();
                    let c = &lt.coeff / &h[0].coeff;
                    p = self.sub_mul(&p, &c, &m, h);
                }
                None => {
                    rem.push(lt);
                    p.remove(0);
                }
            }
        }
        rem
    }

    fn s_vector(&self, f: &Sparse, g: &Sparse) -> Sparse {
        let lcm: Vec<u32> = f[0].exps.iter().zip(&g[0].exps).map(|(a, b)| *a.max(b)).collect();
        let mf: Vec<u32> = lcm.iter().zip(&f[0].exps).map(|(a, b)| a - b).collect();
        let mg: Vec<u32> = lcm.iter().zip(&g[0].exps).map(|(a, b)| a - b).collect();
        let zero: Sparse = Vec::new();
        let left = self.sub_mul(&zero, &-(Coeff::one() / &f[0].coeff), &mf, f);
        self.sub_mul(&left, &(Coeff::one() / &g[0].coeff), &mg, g)
    }

    fn buchberger(&self, gens: &[Sparse]) -> Vec<Sparse> {
        let mut basis: Vec<Sparse> = gens.iter().filter(|g| !g.is_empty()).map(monic).collect();
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        for j in 0..basis.len() {
            for i in 0..j {
                if basis[i][0].pos == basis[j][0].pos {
                    pairs.push_back((i, j));
                }
            }
        }
        while let Some((i, j)) = pairs.pop_front() {
            let s = self.s_vector(&basis[i], &basis[j]);
            let r = self.normal_form(&s, &basis);
            if r.is_empty() {
                continue;
            }
            let r = monic(&r);
            let new = basis.len();
            for (k, g) in basis.iter().enumerate() {
                if g[0].pos == r[0].pos {
                    pairs.push_back((k, new));
                }
            }
            basis.push(r);
        }
        // Drop elements whose lead is divisible by another surviving lead.
        let mut keep = vec![true; basis.len()];
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                if a != b && keep[b] && divides(&basis[b][0], &basis[a][0]) {
                    let equal = self.order.cmp(&basis[a][0], &basis[b][0]) == Ordering::Equal;
                    if !equal || b < a {
                        keep[a] = false;
                        break;
                    }
                }
            }
        }
        basis
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect()
    }
}

fn divides(a: &CTerm, b: &CTerm) -> bool {
    a.pos == b.pos && a.exps.iter().zip(&b.exps).all(|(x, y)| x <= y)
}

fn monic(g: &Sparse) -> Sparse {
    let inv = Coeff::one() / &g[0].coeff;
    g.iter()
        .map(|t| CTerm {
            pos: t.pos,
            exps: t.exps.clone(),
            coeff: &t.coeff * &inv,
        })
        .collect()
}

/// Shape of the vectors an oracle computation works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub rows: usize,
    pub width: usize,
    pub len: usize,
}

impl Shape {
    fn ring<'a>(&self, order: &'a VectorOrder) -> Ring<'a> {
        Ring {
            rows: self.rows,
            width: self.width,
            len: self.len,
            order,
        }
    }
}

/// A Groebner basis of the presented module under the induced lex order.
pub fn classical_gb(p: &WidthModulePresentation) -> Vec<Vec<Polynomial>> {
    let shape = Shape {
        rows: p.rows,
        width: p.width,
        len: p.rank(),
    };
    classical_gb_with(shape, &p.order(), &p.generators)
}

pub fn classical_gb_with(shape: Shape, order: &VectorOrder, gens: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let ring = shape.ring(order);
    let sparse: Vec<Sparse> = gens.iter().map(|g| ring.sparse(g)).collect();
    ring.buchberger(&sparse).iter().map(|g| ring.dense(g)).collect()
}

/// Whether every S-vector of `gb` reduces to zero.
pub fn is_classical_gb(shape: Shape, order: &VectorOrder, gb: &[Vec<Polynomial>]) -> bool {
    let ring = shape.ring(order);
    let sparse: Vec<Sparse> = gb.iter().map(|g| ring.sparse(g)).filter(|g| !g.is_empty()).collect();
    for j in 0..sparse.len() {
        for i in 0..j {
            if sparse[i][0].pos == sparse[j][0].pos {
                let s = ring.s_vector(&sparse[i], &sparse[j]);
                if !ring.normal_form(&s, &sparse).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `v` reduces to zero modulo the Groebner basis `gb`.
pub fn reduces_to_zero(shape: Shape, order: &VectorOrder, v: &[Polynomial], gb: &[Vec<Polynomial>]) -> bool {
    let ring = shape.ring(order);
    let sparse: Vec<Sparse> = gb.iter().map(|g| ring.sparse(g)).filter(|g| !g.is_empty()).collect();
    ring.normal_form(&ring.sparse(v), &sparse).is_empty()
}

/// Whether the lead terms of `a` and `b` generate the same monomial module.
pub fn lead_module_equal(shape: Shape, order: &VectorOrder, a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> bool {
    let ring = shape.ring(order);
    let leads = |s: &[Vec<Polynomial>]| -> Vec<CTerm> {
        s.iter().filter_map(|v| ring.sparse(v).into_iter().next()).collect()
    };
    let (la, lb) = (leads(a), leads(b));
    let covered = |x: &[CTerm], y: &[CTerm]| x.iter().all(|t| y.iter().any(|u| divides(u, t)));
    covered(&la, &lb) && covered(&lb, &la)
}

/// Generators of the kernel of the matrix with the given columns, each of
/// length `shape.len`; the kernel vectors have one entry per column.
pub fn kernel(shape: Shape, columns: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let total = shape.len + columns.len();
    // Image coordinates outweigh the tag coordinates, so basis elements
    // with a zero image part are exactly the kernel elements.
    let weights = (0..total)
        .map(|k| if k < shape.len { columns.len() + k } else { k - shape.len })
        .collect();
    let order = VectorOrder::from_weights(weights);
    let ext = Shape { len: total, ..shape };
    let gens: Vec<Vec<Polynomial>> = columns
        .iter()
        .enumerate()
        .map(|(c, col)| {
            let mut v = col.clone();
            for k in 0..columns.len() {
                v.push(if k == c {
                    Polynomial::constant(shape.rows, shape.width, Coeff::one())
                } else {
                    Polynomial::zero(shape.rows, shape.width)
                });
            }
            v
        })
        .collect();
    classical_gb_with(ext, &order, &gens)
        .into_iter()
        .filter(|v| v[..shape.len].iter().all(|p| p.is_zero()))
        .map(|v| v[shape.len..].to_vec())
        .collect()
}

/// For each width `n ≤ max_width`: whether the expansion of `gb` has the
/// same lead-term module as the classical Groebner basis of the expansion
/// of `input`. Widths are checked independently.
pub fn check_widths(
    module: &FreeModule,
    input: &[ModuleElement],
    gb: &[ModuleElement],
    max_width: usize,
    exec: Execution,
) -> Result<Vec<(usize, bool)>> {
    let widths: Vec<usize> = (0..=max_width).collect();
    par::map(exec, &widths, |&n| {
        let m = expand_in_width(module, input, n)?;
        let g = expand_in_width(module, gb, n)?;
        let shape = Shape {
            rows: m.rows,
            width: n,
            len: m.rank(),
        };
        let order = m.order();
        let classical = classical_gb_with(shape, &order, &m.generators);
        Ok((n, lead_module_equal(shape, &order, &classical, &g.generators)))
    })
    .into_iter()
    .collect()
}

/// Whether every vector of `vectors` lies in the span of `generators`.
pub fn spans(shape: Shape, order: &VectorOrder, generators: &[Vec<Polynomial>], vectors: &[Vec<Polynomial>]) -> bool {
    let gb = classical_gb_with(shape, order, generators);
    vectors.iter().all(|v| reduces_to_zero(shape, order, v, &gb))
}

/// Homology checks of a resolution after restriction to width `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedReport {
    pub width: usize,
    /// Consecutive matrices multiply to zero.
    pub complex: bool,
    /// `F^0_w` maps onto `M_w`, the span of the expanded `b`.
    pub surjective: bool,
    /// Entry `j`: the kernel of the map out of `F^j_w` lies in the image
    /// of `F^{j+1}_w`, for `j < k`.
    pub kernel_covered: Vec<bool>,
}

impl RestrictedReport {
    pub fn all_ok(&self) -> bool {
        self.complex && self.surjective && self.kernel_covered.iter().all(|&b| b)
    }
}

pub fn check_restricted(r: &FreeComplex, b: &[ModuleElement], w: usize) -> Result<RestrictedReport> {
    let rw = restrict_to_width(r, w)?;
    let rows = r.ambient.rows();
    let shape = |len| Shape { rows, width: w, len };
    let lex = |basis: &[BasisIndex]| VectorOrder::lex(basis);

    let m = expand_in_width(&r.ambient, b, w)?;
    let surjective = spans(
        shape(rw.ambient_basis.len()),
        &lex(&rw.ambient_basis),
        &rw.augmentation.columns(),
        &m.generators,
    );
    let mut kernel_covered = Vec::new();
    for j in 0..r.length() {
        let out = if j == 0 { &rw.augmentation } else { &rw.differentials[j - 1] };
        let ker = kernel(shape(out.nrows), &out.columns());
        let next = &rw.differentials[j];
        kernel_covered.push(spans(shape(rw.bases[j].len()), &lex(&rw.bases[j]), &next.columns(), &ker));
    }
    Ok(RestrictedReport {
        width: w,
        complex: rw.is_complex()?,
        surjective,
        kernel_covered,
    })
}
