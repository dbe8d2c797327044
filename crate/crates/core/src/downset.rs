//! The strict down-set embedding `x ↦ {y : y < x}` and checks comparing a
//! poset's joins with unions of down-sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::element::{ElementId, Label};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest carrier accepted by [`exists_join_isomorphism`].
pub const MAX_ISO_SEARCH: usize = 5;

/// Largest carrier accepted by [`enumerate_posets`].
pub const MAX_ENUMERATION: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaResult {
    pub source: Poset,
    /// Distinct strict down-sets, ordered by inclusion.
    pub image: Poset,
    pub map: BTreeMap<ElementId, ElementId>,
}

impl IotaResult {
    pub fn is_injective(&self) -> bool {
        self.image.len() == self.source.len()
    }
}

fn down_mask(p: &Poset, i: usize) -> Vec<bool> {
    (0..p.len()).map(|y| y != i && p.leq_idx(y, i)).collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

pub fn iota(p: &Poset) -> IotaResult {
    let masks: Vec<Vec<bool>> = (0..p.len()).map(|i| down_mask(p, i)).collect();
    let distinct: Vec<Vec<bool>> = masks.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let as_element = |m: &[bool]| {
        ElementId::new(
            Label::Set(m.iter().enumerate().filter(|(_, &b)| b).map(|(y, _)| p.element(y).clone()).collect()),
            Vec::new(),
        )
    };
    let image_elements: Vec<ElementId> = distinct.iter().map(|m| as_element(m)).collect();
    let image = Poset::from_closed(image_elements, |a, b| subset(&distinct[a], &distinct[b]));
    let map = masks.iter().enumerate().map(|(i, m)| (p.element(i).clone(), as_element(m))).collect();
    IotaResult { source: p.clone(), image, map }
}

/// `a < b` implies `ι(a) ⊊ ι(b)` for every strict pair.
pub fn iota_preserves_strict(p: &Poset) -> bool {
    let masks: Vec<Vec<bool>> = (0..p.len()).map(|i| down_mask(p, i)).collect();
    (0..p.len()).all(|a| {
        (0..p.len()).all(|b| a == b || !p.leq_idx(a, b) || (subset(&masks[a], &masks[b]) && masks[a] != masks[b]))
    })
}

/// Whether `ι(a ∨ b) = ι(a) ∪ ι(b)` for all pairs.
pub fn iota_is_join_hom(p: &Poset) -> Result<bool> {
    if !p.is_join_semilattice() {
        return Err(Error::NotAJoinSemilattice);
    }
    let masks: Vec<Vec<bool>> = (0..p.len()).map(|i| down_mask(p, i)).collect();
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let j = p.join_idx(a, b).expect("join-semilattice");
            let union: Vec<bool> = masks[a].iter().zip(&masks[b]).map(|(x, y)| x | y).collect();
            if masks[j] != union {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive search for a bijection `h` from the carrier onto the image of
/// ι with `h(a ∨ b) = h(a) ∪ h(b)`. Any map will do, not only ι itself.
pub fn exists_join_isomorphism(p: &Poset) -> Result<bool> {
    if p.len() > MAX_ISO_SEARCH {
        return Err(Error::SizeExceeded { size: p.len() as u128, cap: MAX_ISO_SEARCH as u128 });
    }
    if !p.is_join_semilattice() {
        return Err(Error::NotAJoinSemilattice);
    }
    let n = p.len();
    let image: Vec<u32> = (0..n)
        .map(|i| down_mask(p, i).iter().enumerate().fold(0u32, |acc, (y, &b)| acc | (b as u32) << y))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if image.len() != n {
        return Ok(false);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = false;
    permute(&mut perm, 0, &mut |h| {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let j = p.join_idx(a, b).expect("join-semilattice");
                image[h[j]] == image[h[a]] | image[h[b]]
            })
        });
        found |= ok;
        found
    });
    Ok(found)
}

/// Recursive permutation walk; stops once `visit` returns true.
fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return visit(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute(perm, k + 1, visit) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Element names used by [`enumerate_posets`].
pub fn enumeration_labels(n: usize) -> Vec<ElementId> {
    (0..n).map(|i| ElementId::sym(((b'a' + i as u8) as char).to_string())).collect()
}

/// Every labelled poset on `n` elements, each exactly once.
///
/// Each unordered pair of elements is unrelated or ordered one way or the
/// other; the walk covers all `3^(n(n-1)/2)` codes and keeps the transitive
/// ones.
pub fn enumerate_posets(n: usize, joins_only: bool) -> Result<PosetEnumeration> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::SizeExceeded { size: n as u128, cap: MAX_ENUMERATION as u128 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3u64.pow(pairs.len() as u32);
    Ok(PosetEnumeration { n, pairs, code: 0, total, joins_only, labels: enumeration_labels(n) })
}

pub struct PosetEnumeration {
    n: usize,
    pairs: Vec<(usize, usize)>,
    code: u64,
    total: u64,
    joins_only: bool,
    labels: Vec<ElementId>,
}

impl PosetEnumeration {
    fn decode(&self, mut code: u64) -> Option<Vec<bool>> {
        let n = self.n;
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(i, j) in &self.pairs {
            match code % 3 {
                1 => rel[i * n + j] = true,
                2 => rel[j * n + i] = true,
                _ => {}
            }
            code /= 3;
        }
        for a in 0..n {
            for b in 0..n {
                if !rel[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if rel[b * n + c] && !rel[a * n + c] {
                        return None;
                    }
                }
            }
        }
        Some(rel)
    }
}

impl Iterator for PosetEnumeration {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        while self.code < self.total {
            let code = self.code;
            self.code += 1;
            let Some(rel) = self.decode(code) else { continue };
            let n = self.n;
            let p = Poset::from_closed(self.labels.clone(), |a, b| rel[a * n + b]);
            if !self.joins_only || p.is_join_semilattice() {
                return Some(p);
            }
        }
        None
    }
}
