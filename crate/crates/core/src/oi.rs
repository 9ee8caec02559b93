//! The category OI: objects `[n] = {1, ..., n}` and strictly increasing maps.
//!
//! Morphisms are stored by their image lists, 1-based, exactly as they are
//! printed (`{a1,...,am}`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing map `[m] -> [n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct OIMorphism {
    target: usize,
    image: Vec<usize>,
}

impl OIMorphism {
    pub fn new(target: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() > target {
            return Err(Error::InvalidMorphism(format!(
                "source width {} exceeds target width {}",
                image.len(),
                target
            )));
        }
        let mut prev = 0;
        for &a in &image {
            if a <= prev || a > target {
                return Err(Error::InvalidMorphism(format!(
                    "image {:?} is not a strictly increasing list in [{}]",
                    image, target
                )));
            }
            prev = a;
        }
        Ok(OIMorphism { target, image })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_raw(target: usize, image: Vec<usize>) -> Self {
        debug_assert!(image.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(image.last().is_none_or(|&a| a <= target));
        OIMorphism { target, image }
    }

    pub fn identity(n: usize) -> Self {
        OIMorphism {
            target: n,
            image: (1..=n).collect(),
        }
    }

    /// The empty map `[0] -> [n]`.
    pub fn empty(n: usize) -> Self {
        OIMorphism {
            target: n,
            image: Vec::new(),
        }
    }

    pub fn source_width(&self) -> usize {
        self.image.len()
    }

    pub fn target_width(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Value at `j` (1-based).
    pub fn apply(&self, j: usize) -> usize {
        self.image[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.len() == self.target
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &OIMorphism) -> Result<OIMorphism> {
        compose(self, outer)
    }
}

impl fmt::Display for OIMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:{{", self.source_width(), self.target)?;
        for (k, a) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, "}}")
    }
}

/// `outer ∘ inner`, i.e. `j ↦ outer(inner(j))`.
pub fn compose(inner: &OIMorphism, outer: &OIMorphism) -> Result<OIMorphism> {
    if inner.target != outer.source_width() {
        return Err(Error::Composition {
            inner_target: inner.target,
            outer_source: outer.source_width(),
        });
    }
    Ok(OIMorphism {
        target: outer.target,
        image: inner.image.iter().map(|&j| outer.image[j - 1]).collect(),
    })
}

/// All of `hom(m, n)` in lexicographic order of image lists.
pub fn enumerate_hom(m: usize, n: usize) -> Vec<OIMorphism> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut image: Vec<usize> = (1..=m).collect();
    loop {
        out.push(OIMorphism::from_raw(n, image.clone()));
        // advance to the next m-subset of [n] in lex order
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if image[k] < n - (m - 1 - k) {
                break;
            }
        }
        image[k] += 1;
        for l in k + 1..m {
            image[l] = image[l - 1] + 1;
        }
    }
}

/// A pair of maps into a common width whose images jointly cover it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoveringPair {
    pub target: usize,
    pub first: OIMorphism,
    pub second: OIMorphism,
}

/// Every `(t, ε1 ∈ hom(m,t), ε2 ∈ hom(n,t))` with `im ε1 ∪ im ε2 = [t]`,
/// ordered by `t`, then lexicographically by `(ε1, ε2)`.
pub fn enumerate_covering_pairs(m: usize, n: usize) -> Vec<CoveringPair> {
    let mut out = Vec::new();
    for t in m.max(n)..=m + n {
        for first in enumerate_hom(m, t) {
            let fixed = vec![None; n];
            for_each_completion(n, t, &fixed, &uncovered(&first, t), &mut |img| {
                out.push(CoveringPair {
                    target: t,
                    first: first.clone(),
                    second: OIMorphism::from_raw(t, img.to_vec()),
                });
            });
        }
    }
    out
}

/// The covering pairs `(ε1, ε2)` of `enumerate_covering_pairs(m, n)` that
/// also satisfy `ε1 ∘ pi1 = ε2 ∘ pi2`, in the same order.
///
/// `pi1 ∈ hom(d, m)` and `pi2 ∈ hom(d, n)` share their source.
pub fn matching_covering_pairs(pi1: &OIMorphism, pi2: &OIMorphism) -> Vec<CoveringPair> {
    let (m, n, d) = (pi1.target, pi2.target, pi1.source_width());
    assert_eq!(d, pi2.source_width(), "matching pairs need a common source");
    let mut out = Vec::new();
    // both images contain the d shared values
    for t in m.max(n)..=m + n - d {
        for first in enumerate_hom(m, t) {
            let mut fixed = vec![None; n];
            for k in 1..=d {
                fixed[pi2.apply(k) - 1] = Some(first.apply(pi1.apply(k)));
            }
            for_each_completion(n, t, &fixed, &uncovered(&first, t), &mut |img| {
                out.push(CoveringPair {
                    target: t,
                    first: first.clone(),
                    second: OIMorphism::from_raw(t, img.to_vec()),
                });
            });
        }
    }
    out
}

fn uncovered(first: &OIMorphism, t: usize) -> Vec<usize> {
    let mut hit = vec![false; t + 1];
    for &a in first.image() {
        hit[a] = true;
    }
    (1..=t).filter(|&a| !hit[a]).collect()
}

/// Enumerates, in lex order, increasing maps `[n] -> [t]` that take the
/// prescribed values and whose image contains every element of `must`.
fn for_each_completion(
    n: usize,
    t: usize,
    fixed: &[Option<usize>],
    must: &[usize],
    visit: &mut dyn FnMut(&[usize]),
) {
    if must.len() > n {
        return;
    }
    let mut img = Vec::with_capacity(n);
    extend(n, t, fixed, must, 0, &mut img, visit);
}

fn extend(
    n: usize,
    t: usize,
    fixed: &[Option<usize>],
    must: &[usize],
    covered: usize,
    img: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let pos = img.len();
    if pos == n {
        if covered == must.len() {
            visit(img);
        }
        return;
    }
    // not enough positions left to hit the outstanding values
    if must.len() - covered > n - pos {
        return;
    }
    let lo = img.last().map_or(1, |&a| a + 1);
    let hi = t - (n - pos - 1);
    let candidates = match fixed[pos] {
        Some(v) if v >= lo && v <= hi => v..=v,
        Some(_) => return,
        None => lo..=hi,
    };
    for v in candidates {
        // skipping past an outstanding value can never be repaired
        if covered < must.len() && v > must[covered] {
            break;
        }
        let next = if covered < must.len() && v == must[covered] {
            covered + 1
        } else {
            covered
        };
        img.push(v);
        extend(n, t, fixed, must, next, img, visit);
        img.pop();
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
