//! Inner states: partial assignments of one element per dimension.
//!
//! States are ordered by domain extension: `k1 ≤ k2` when the domain of
//! `k1` is contained in that of `k2` and every component of `k1` is below
//! the matching component of `k2`. Composition takes dimensionwise joins.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::value_model::Lrv;

/// Default cap on `|domain|` for [`InnerState::potential_value`].
pub const DEFAULT_MAX_POTENTIAL: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerState {
    lrv: Arc<Lrv>,
    assign: BTreeMap<String, ElementId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompareResult {
    Equal,
    LessEq,
    GreaterEq,
    Incomparable,
}

impl CompareResult {
    /// `Equal` or `LessEq`.
    pub fn is_le(self) -> bool {
        matches!(self, CompareResult::Equal | CompareResult::LessEq)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, CompareResult::Equal | CompareResult::GreaterEq)
    }
}

impl fmt::Display for CompareResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareResult::Equal => "equal",
            CompareResult::LessEq => "less-eq",
            CompareResult::GreaterEq => "greater-eq",
            CompareResult::Incomparable => "incomparable",
        })
    }
}

/// Outcome of [`InnerState::compose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composition {
    Feasible(InnerState),
    /// No join exists along `witness`, the lowest such dimension.
    Infeasible {
        witness: String,
    },
}

impl Composition {
    pub fn feasible(self) -> Option<InnerState> {
        match self {
            Composition::Feasible(k) => Some(k),
            Composition::Infeasible { .. } => None,
        }
    }
}

/// A labelled transition between two named process states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub label: BTreeSet<String>,
}

impl Transition {
    pub fn new(
        lrv: &Lrv,
        from: impl Into<String>,
        to: impl Into<String>,
        label: impl IntoIterator<Item = String>,
    ) -> Result<Transition> {
        let label: BTreeSet<String> = label.into_iter().collect();
        if label.is_empty() {
            return Err(Error::InvalidTransition);
        }
        if let Some(bad) = label.iter().find(|i| !lrv.contains(i)) {
            return Err(Error::UnknownIndex(bad.clone()));
        }
        Ok(Transition { from: from.into(), to: to.into(), label })
    }
}

impl InnerState {
    /// Validates an assignment against `lrv`.
    pub fn new(lrv: Arc<Lrv>, assign: impl IntoIterator<Item = (String, ElementId)>) -> Result<InnerState> {
        let mut map = BTreeMap::new();
        for (i, x) in assign {
            let poset = lrv.poset(&i)?;
            if !poset.contains(&x) {
                return Err(Error::ValueNotInDimension { dim: i, value: x.to_string() });
            }
            map.insert(i, x);
        }
        Ok(InnerState { lrv, assign: map })
    }

    pub fn empty(lrv: Arc<Lrv>) -> InnerState {
        InnerState { lrv, assign: BTreeMap::new() }
    }

    /// Convenience constructor resolving rendered values (`m1`, `{f1, f2}`).
    pub fn from_rendered(lrv: Arc<Lrv>, assign: &[(&str, &str)]) -> Result<InnerState> {
        let resolved =
            assign.iter().map(|&(i, v)| Ok((i.to_string(), lrv.resolve(i, v)?))).collect::<Result<Vec<_>>>()?;
        InnerState::new(lrv, resolved)
    }

    pub fn lrv(&self) -> &Arc<Lrv> {
        &self.lrv
    }

    pub fn assignment(&self) -> &BTreeMap<String, ElementId> {
        &self.assign
    }

    /// The domain: indices with an assigned value.
    pub fn domain(&self) -> BTreeSet<&str> {
        self.assign.keys().map(String::as_str).collect()
    }

    /// The codomain: the assigned values.
    pub fn codomain(&self) -> BTreeSet<&ElementId> {
        self.assign.values().collect()
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn get(&self, i: &str) -> Option<&ElementId> {
        self.assign.get(i)
    }

    /// The component along `i`, returned whole even when it is a tuple or
    /// a set.
    pub fn project(&self, i: &str) -> Result<&ElementId> {
        self.assign.get(i).ok_or_else(|| Error::NotInDomain(i.to_string()))
    }

    /// Returns a copy with `i ↦ x` added or replaced.
    pub fn with(&self, i: &str, x: ElementId) -> Result<InnerState> {
        let poset = self.lrv.poset(i)?;
        if !poset.contains(&x) {
            return Err(Error::ValueNotInDimension { dim: i.into(), value: x.to_string() });
        }
        let mut assign = self.assign.clone();
        assign.insert(i.to_string(), x);
        Ok(InnerState { lrv: self.lrv.clone(), assign })
    }

    /// Restriction to `j ∩ domain`.
    pub fn restrict<'a>(&self, j: impl IntoIterator<Item = &'a str>) -> InnerState {
        let keep: BTreeSet<&str> = j.into_iter().collect();
        let assign = self
            .assign
            .iter()
            .filter(|(i, _)| keep.contains(i.as_str()))
            .map(|(i, x)| (i.clone(), x.clone()))
            .collect();
        InnerState { lrv: self.lrv.clone(), assign }
    }

    fn same_lrv(&self, other: &InnerState) -> Result<()> {
        if Arc::ptr_eq(&self.lrv, &other.lrv) || self.lrv == other.lrv {
            Ok(())
        } else {
            Err(Error::LrvMismatch)
        }
    }

    /// `self ≤ other` under domain extension.
    fn le(&self, other: &InnerState) -> bool {
        self.assign.iter().all(|(i, x)| match other.assign.get(i) {
            Some(y) => {
                let p = &self.lrv.dimension(i).expect("validated index").poset;
                p.leq(x, y).expect("validated element")
            }
            None => false,
        })
    }

    pub fn compare(&self, other: &InnerState) -> Result<CompareResult> {
        self.same_lrv(other)?;
        Ok(if self.assign == other.assign {
            CompareResult::Equal
        } else if self.le(other) {
            CompareResult::LessEq
        } else if other.le(self) {
            CompareResult::GreaterEq
        } else {
            CompareResult::Incomparable
        })
    }

    /// Dimensionwise join over the union of the domains.
    pub fn compose(&self, other: &InnerState) -> Result<Composition> {
        self.same_lrv(other)?;
        let mut assign = self.assign.clone();
        for (i, y) in &other.assign {
            let Some(x) = self.assign.get(i) else {
                assign.insert(i.clone(), y.clone());
                continue;
            };
            let p = self.lrv.poset(i)?;
            match p.join(x, y)? {
                Some(j) => {
                    assign.insert(i.clone(), j.clone());
                }
                None => return Ok(Composition::Infeasible { witness: i.clone() }),
            }
        }
        Ok(Composition::Feasible(InnerState { lrv: self.lrv.clone(), assign }))
    }

    /// All non-empty subsets of the domain, with the default cap.
    pub fn potential_value(&self) -> Result<Vec<BTreeSet<String>>> {
        self.potential_value_capped(DEFAULT_MAX_POTENTIAL)
    }

    pub fn potential_value_capped(&self, max_domain: usize) -> Result<Vec<BTreeSet<String>>> {
        let dom: Vec<&String> = self.assign.keys().collect();
        if dom.len() > max_domain || dom.len() >= 64 {
            return Err(Error::SizeExceeded {
                size: 1u128.checked_shl(dom.len() as u32).unwrap_or(u128::MAX),
                cap: 1u128 << max_domain.min(127),
            });
        }
        Ok((1u64..1 << dom.len())
            .map(|mask| dom.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, i)| (*i).clone()).collect())
            .collect())
    }
}

impl fmt::Display for InnerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.assign.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.assign.iter().map(|(i, x)| format!("{i}: {}", x.erased())).collect();
        write!(f, "{{ {} }}", parts.join(", "))
    }
}

/// The three-part incompatibility test: `a` is acknowledged by `ka` along
/// `i`, `ka` restricted to the shared domain sits below `kh`, and yet `a` is
/// not acknowledged by `kh` along `i`.
pub fn detect_incompatibility(i: &str, a: &ElementId, ka: &InnerState, kh: &InnerState) -> Result<bool> {
    ka.same_lrv(kh)?;
    let poset = ka.lrv.poset(i)?;
    if !poset.contains(a) {
        return Err(Error::ValueNotInDimension { dim: i.into(), value: a.to_string() });
    }
    let acknowledged = |k: &InnerState| {
        k.assign.get(i).is_some_and(|x| poset.leq_idx(poset.index_of(a).unwrap(), poset.index_of(x).unwrap()))
    };
    if !acknowledged(ka) {
        return Ok(false);
    }
    let shared: BTreeSet<&str> = ka.domain().intersection(&kh.domain()).copied().collect();
    if !ka.restrict(shared).compare(kh)?.is_le() {
        return Ok(false);
    }
    Ok(!acknowledged(kh))
}
