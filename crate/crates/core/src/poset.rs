//! Finite partially ordered sets.
//!
//! A [`Poset`] keeps its carrier sorted and its order relation stored fully
//! closed as a bit matrix, so `leq` is a constant-time lookup. The covering
//! relation is derived on demand by [`Poset::hasse`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::element::ElementId;
use crate::error::{Error, Result};

/// Default hard cap on carrier sizes.
pub const DEFAULT_MAX_CARRIER: usize = 4096;

/// Square bit matrix; row `i` holds the up-set of element `i`.
#[derive(Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// row[dst] |= row[src]
    fn or_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..dst * w + w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..src * w + w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x |= *y;
        }
    }

    /// Warshall's algorithm over rows.
    fn close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.or_row(i, k);
                }
            }
        }
    }
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

/// A finite poset over [`ElementId`]s.
#[derive(Clone)]
pub struct Poset {
    elements: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
    up: BitMatrix,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self.hasse().into_iter().map(|(a, b)| format!("{a} < {b}")).collect();
        f.debug_struct("Poset")
            .field("elements", &self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `relation`, using the default carrier cap.
    pub fn build(
        elements: impl IntoIterator<Item = ElementId>,
        relation: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Poset> {
        Poset::build_capped(elements, relation, DEFAULT_MAX_CARRIER)
    }

    pub fn build_capped(
        elements: impl IntoIterator<Item = ElementId>,
        relation: impl IntoIterator<Item = (ElementId, ElementId)>,
        max_carrier: usize,
    ) -> Result<Poset> {
        let carrier: BTreeSet<ElementId> = elements.into_iter().collect();
        if carrier.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if carrier.len() > max_carrier {
            return Err(Error::SizeExceeded { size: carrier.len() as u128, cap: max_carrier as u128 });
        }
        let elements: Vec<ElementId> = carrier.into_iter().collect();
        let index = index_of(&elements);
        let n = elements.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            up.set(i, i);
        }
        for (a, b) in relation {
            let i = *index.get(&a).ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            let j = *index.get(&b).ok_or_else(|| Error::UnknownElement(b.to_string()))?;
            up.set(i, j);
        }
        up.close();
        for i in 0..n {
            for j in (i + 1)..n {
                if up.get(i, j) && up.get(j, i) {
                    return Err(Error::Cycle(elements[i].to_string(), elements[j].to_string()));
                }
            }
        }
        Ok(Poset { elements, index, up })
    }

    /// Builds a poset from an order the caller guarantees is already a
    /// partial order. `elements` must be distinct; they are re-sorted here.
    pub(crate) fn from_closed(elements: Vec<ElementId>, leq: impl Fn(usize, usize) -> bool) -> Poset {
        let n = elements.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
        let mut up = BitMatrix::new(n);
        for (ni, &oi) in perm.iter().enumerate() {
            for (nj, &oj) in perm.iter().enumerate() {
                if leq(oi, oj) {
                    up.set(ni, nj);
                }
            }
        }
        let mut slots: Vec<Option<ElementId>> = elements.into_iter().map(Some).collect();
        let sorted: Vec<ElementId> = perm.iter().map(|&o| slots[o].take().unwrap()).collect();
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "duplicate elements");
        let index = index_of(&sorted);
        Poset { elements: sorted, index, up }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Carrier in ascending [`ElementId`] order.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.index.contains_key(e)
    }

    pub fn index_of(&self, e: &ElementId) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn element(&self, i: usize) -> &ElementId {
        &self.elements[i]
    }

    fn idx(&self, e: &ElementId) -> Result<usize> {
        self.index_of(e).ok_or_else(|| Error::UnknownElement(e.to_string()))
    }

    pub fn leq(&self, a: &ElementId, b: &ElementId) -> Result<bool> {
        Ok(self.leq_idx(self.idx(a)?, self.idx(b)?))
    }

    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    /// Least upper bound of `a` and `b`, or `None` when the upper bounds are
    /// empty or have no least element.
    pub fn join(&self, a: &ElementId, b: &ElementId) -> Result<Option<&ElementId>> {
        let (i, j) = (self.idx(a)?, self.idx(b)?);
        Ok(self.join_idx(i, j).map(|k| &self.elements[k]))
    }

    pub fn join_idx(&self, i: usize, j: usize) -> Option<usize> {
        let bounds: Vec<u64> = self.up.row(i).iter().zip(self.up.row(j)).map(|(x, y)| x & y).collect();
        // the least upper bound is the bound whose up-set covers all bounds
        let lub = iter_bits(&bounds).find(|&u| self.up.row(u).iter().zip(&bounds).all(|(row, b)| b & !row == 0));
        lub
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.up.get(i, j) || self.up.get(j, i)))
    }

    /// Elements strictly below `x`.
    pub fn strict_down_set(&self, x: &ElementId) -> Result<BTreeSet<ElementId>> {
        let i = self.idx(x)?;
        Ok(self.strict_down_idx(i).into_iter().map(|k| self.elements[k].clone()).collect())
    }

    pub fn strict_down_idx(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| y != i && self.up.get(y, i)).collect()
    }

    pub fn is_join_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.join_idx(i, j).is_some()))
    }

    /// Covering pairs as index pairs, sorted.
    pub fn hasse_idx(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut strict_up: Vec<u64> = self.up.row(a).to_vec();
            strict_up[a / 64] &= !(1 << (a % 64));
            let mut covers = strict_up.clone();
            for c in iter_bits(&strict_up) {
                for (w, (cv, rc)) in covers.iter_mut().zip(self.up.row(c)).enumerate() {
                    let mut reach = *rc;
                    if w == c / 64 {
                        reach &= !(1 << (c % 64));
                    }
                    *cv &= !reach;
                }
            }
            out.extend(iter_bits(&covers).map(|b| (a, b)));
        }
        out
    }

    /// The covering relation (transitive reduction of the strict order).
    pub fn hasse(&self) -> Vec<(ElementId, ElementId)> {
        self.hasse_idx().into_iter().map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone())).collect()
    }

    /// Every pair in the closed relation, reflexive pairs included.
    pub fn relation(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in iter_bits(self.up.row(i)) {
                out.push((self.elements[i].clone(), self.elements[j].clone()));
            }
        }
        out
    }

    pub fn minimal(&self) -> Vec<&ElementId> {
        (0..self.len()).filter(|&i| self.strict_down_idx(i).is_empty()).map(|i| &self.elements[i]).collect()
    }
}

fn index_of(elements: &[ElementId]) -> HashMap<ElementId, usize> {
    elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(s: &str) -> ElementId {
        ElementId::sym(s)
    }

    fn poset(elems: &[&str], rel: &[(&str, &str)]) -> Result<Poset> {
        Poset::build(elems.iter().map(|s| e(s)), rel.iter().map(|(a, b)| (e(a), e(b))))
    }

    fn chain() -> Poset {
        poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn antichain() -> Poset {
        poset(&["a", "b"], &[]).unwrap()
    }

    // bot < l, r < top
    fn diamond() -> Poset {
        poset(&["bot", "l", "r", "top"], &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]).unwrap()
    }

    fn butterfly() -> Poset {
        poset(&["a", "b", "x", "y"], &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]).unwrap()
    }

    #[test]
    fn build_closes_chain() {
        assert!(chain().leq(&e("a"), &e("c")).unwrap());
        assert!(!chain().leq(&e("c"), &e("a")).unwrap());
    }

    #[test]
    fn build_rejects_cycle() {
        assert!(matches!(poset(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::Cycle(..))));
        assert!(matches!(poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]), Err(Error::Cycle(..))));
    }

    #[test]
    fn build_rejects_unknown_and_empty() {
        assert_eq!(poset(&["a"], &[("a", "z")]), Err(Error::UnknownElement("z".into())));
        assert_eq!(poset(&[], &[]), Err(Error::EmptyCarrier));
        let big = Poset::build_capped((0..5).map(|i| e(&i.to_string())), [], 4);
        assert!(matches!(big, Err(Error::SizeExceeded { size: 5, cap: 4 })));
    }

    #[test]
    fn diamond_has_nine_pairs() {
        let d = diamond();
        let rel = d.relation();
        assert_eq!(rel.len(), 9);
        assert_eq!(rel.iter().filter(|(a, b)| a != b).count(), 5);
    }

    #[test]
    fn leq_examples() {
        assert!(!antichain().leq(&e("a"), &e("b")).unwrap());
        assert!(!diamond().leq(&e("l"), &e("r")).unwrap());
        assert!(matches!(chain().leq(&e("q"), &e("a")), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn join_examples() {
        assert_eq!(chain().join(&e("a"), &e("b")).unwrap(), Some(&e("b")));
        assert_eq!(antichain().join(&e("a"), &e("b")).unwrap(), None);
        assert_eq!(butterfly().join(&e("a"), &e("b")).unwrap(), None);
        assert_eq!(diamond().join(&e("l"), &e("r")).unwrap(), Some(&e("top")));
        assert_eq!(butterfly().join(&e("a"), &e("x")).unwrap(), Some(&e("x")));
    }

    #[test]
    fn totality_and_semilattice() {
        assert!(chain().is_total());
        assert!(!antichain().is_total());
        assert!(!diamond().is_total());
        assert!(chain().is_join_semilattice());
        assert!(!antichain().is_join_semilattice());
        assert!(diamond().is_join_semilattice());
        assert!(!butterfly().is_join_semilattice());
    }

    #[test]
    fn strict_down_sets() {
        let down = chain().strict_down_set(&e("c")).unwrap();
        assert_eq!(down, [e("a"), e("b")].into_iter().collect());
        assert!(chain().strict_down_set(&e("a")).unwrap().is_empty());
        let top = diamond().strict_down_set(&e("top")).unwrap();
        assert_eq!(top, [e("bot"), e("l"), e("r")].into_iter().collect());
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(chain().hasse(), vec![(e("a"), e("b")), (e("b"), e("c"))]);
        assert!(antichain().hasse().is_empty());
        let h = diamond().hasse();
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&(e("bot"), e("top"))));
    }

    #[test]
    fn wide_carrier_crosses_word_boundaries() {
        let names: Vec<String> = (0..150).map(|i| format!("n{i:03}")).collect();
        let rel: Vec<_> = names.windows(2).map(|w| (e(&w[0]), e(&w[1]))).collect();
        let p = Poset::build(names.iter().map(|s| e(s)), rel).unwrap();
        assert!(p.is_total());
        assert_eq!(p.hasse().len(), 149);
        assert!(p.leq(&e("n000"), &e("n149")).unwrap());
        assert_eq!(p.join(&e("n010"), &e("n140")).unwrap(), Some(&e("n140")));
    }

    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..9).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n), Just(()))).prop_map(
            |(n, edges, _)| {
                let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
                // only i<j edges, so acyclic
                let mut rel = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        if edges[i * n + j] {
                            rel.push((e(&names[i]), e(&names[j])));
                        }
                    }
                }
                Poset::build(names.iter().map(|s| e(s)), rel).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn order_laws_hold(p in arb_poset()) {
            let n = p.len();
            for i in 0..n {
                prop_assert!(p.leq_idx(i, i));
                for j in 0..n {
                    if i != j {
                        prop_assert!(!(p.leq_idx(i, j) && p.leq_idx(j, i)));
                    }
                    for k in 0..n {
                        if p.leq_idx(i, j) && p.leq_idx(j, k) {
                            prop_assert!(p.leq_idx(i, k));
                        }
                    }
                }
            }
        }

        #[test]
        fn join_laws_hold(p in arb_poset()) {
            let n = p.len();
            for i in 0..n {
                prop_assert_eq!(p.join_idx(i, i), Some(i));
                for j in 0..n {
                    prop_assert_eq!(p.join_idx(i, j), p.join_idx(j, i));
                    if p.leq_idx(i, j) {
                        prop_assert_eq!(p.join_idx(i, j), Some(j));
                    }
                }
            }
            if p.is_total() {
                prop_assert!(p.is_join_semilattice());
            }
        }

        #[test]
        fn hasse_round_trips(p in arb_poset()) {
            let rebuilt = Poset::build(p.elements().to_vec(), p.hasse()).unwrap();
            prop_assert_eq!(rebuilt, p);
        }
    }
}
