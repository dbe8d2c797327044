//! The `V_dim` meta-dimension: a state may record which numbers of
//! dimensions it admits, and be classified against its own domain size.

use std::collections::BTreeSet;

use crate::element::{ElementId, Label};
use crate::error::{Error, Result};
use crate::inner_state::InnerState;
use crate::value_model::SpecExpr;

/// Index under which the meta-dimension lives in an LRV.
pub const VDIM_INDEX: &str = "V_dim";

/// Whether `V_dim` itself counts towards the domain size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountConvention {
    #[default]
    IncludeVdim,
    ExcludeVdim,
}

/// A non-empty set of admissible dimension counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimSpecValue(BTreeSet<u32>);

impl DimSpecValue {
    pub fn new(counts: impl IntoIterator<Item = u32>) -> Option<DimSpecValue> {
        let set: BTreeSet<u32> = counts.into_iter().collect();
        (!set.is_empty()).then_some(DimSpecValue(set))
    }

    pub fn counts(&self) -> &BTreeSet<u32> {
        &self.0
    }

    fn to_element(&self) -> ElementId {
        ElementId::set(self.0.iter().map(|c| ElementId::sym(c.to_string()))).within(VDIM_INDEX)
    }
}

/// Spec for a `V_dim` dimension over the counts `0..=max`, ordered by
/// inclusion.
pub fn vdim_spec(max: u32) -> SpecExpr {
    SpecExpr::power(SpecExpr::base("N0", (0..=max).map(|c| c.to_string())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetaVerdict {
    pub specified: bool,
    /// `None` when unspecified.
    pub ambiguous: Option<bool>,
    pub consistent: Option<bool>,
}

impl std::fmt::Display for MetaVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.ambiguous, self.consistent) {
            (Some(a), Some(c)) => write!(f, "specified=true ambiguous={a} consistent={c}"),
            _ => f.write_str("specified=false ambiguous=n/a consistent=n/a"),
        }
    }
}

/// Adds or replaces the `V_dim` component.
pub fn attach_vdim(k: &InnerState, a: &DimSpecValue) -> Result<InnerState> {
    k.with(VDIM_INDEX, a.to_element())
}

/// Admissible counts read off a `V_dim` element; labels that are not
/// integers are ignored.
fn admissible(x: &ElementId) -> BTreeSet<u32> {
    match &x.label {
        Label::Set(items) => items.iter().filter_map(|i| i.as_sym()?.parse().ok()).collect(),
        Label::Sym(s) => s.parse().ok().into_iter().collect(),
        Label::Tuple(_) => BTreeSet::new(),
    }
}

pub fn classify(k: &InnerState) -> MetaVerdict {
    classify_with(k, CountConvention::default())
}

pub fn classify_with(k: &InnerState, convention: CountConvention) -> MetaVerdict {
    let Some(x) = k.get(VDIM_INDEX) else {
        return MetaVerdict { specified: false, ambiguous: None, consistent: None };
    };
    let a = admissible(x);
    let count = match convention {
        CountConvention::IncludeVdim => k.len(),
        CountConvention::ExcludeVdim => k.len() - 1,
    } as u32;
    MetaVerdict { specified: true, ambiguous: Some(a.len() > 1), consistent: Some(a.contains(&count)) }
}

/// Resolves a `V_dim` value from integer counts, for callers holding a state.
pub fn vdim_value(counts: &[u32]) -> Result<DimSpecValue> {
    DimSpecValue::new(counts.iter().copied())
        .ok_or_else(|| Error::ValueNotInDimension { dim: VDIM_INDEX.into(), value: "{}".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value_model::make_lrv;
    use std::sync::Arc;

    fn lrv() -> Arc<crate::value_model::Lrv> {
        Arc::new(
            make_lrv([
                ("V1".to_string(), SpecExpr::base("F", ["f1", "f2"])),
                ("V2".to_string(), SpecExpr::base("M", ["m1", "m2"])),
                ("V3".to_string(), SpecExpr::base("B", ["b1"])),
                (VDIM_INDEX.to_string(), vdim_spec(5)),
            ])
            .unwrap(),
        )
    }

    fn two_dims() -> InnerState {
        InnerState::from_rendered(lrv(), &[("V1", "f1"), ("V2", "m1")]).unwrap()
    }

    #[test]
    fn attach_grows_domain() {
        let k = attach_vdim(&two_dims(), &vdim_value(&[3]).unwrap()).unwrap();
        assert_eq!(k.len(), 3);
        let again = attach_vdim(&k, &vdim_value(&[2, 4]).unwrap()).unwrap();
        assert_eq!(again.len(), 3);
        assert_eq!(again.project(VDIM_INDEX).unwrap().erased(), "{2, 4}");
    }

    #[test]
    fn attach_needs_the_meta_dimension() {
        let plain = Arc::new(make_lrv([("V1".to_string(), SpecExpr::base("F", ["f1"]))]).unwrap());
        let k = InnerState::empty(plain);
        assert_eq!(attach_vdim(&k, &vdim_value(&[1]).unwrap()), Err(Error::UnknownIndex(VDIM_INDEX.into())));
        let out_of_range = attach_vdim(&two_dims(), &vdim_value(&[9]).unwrap());
        assert!(matches!(out_of_range, Err(Error::ValueNotInDimension { .. })));
        assert!(DimSpecValue::new([]).is_none());
    }

    #[test]
    fn consistent_single_count() {
        let k = attach_vdim(&two_dims(), &vdim_value(&[3]).unwrap()).unwrap();
        let v = classify(&k);
        assert_eq!(v, MetaVerdict { specified: true, ambiguous: Some(false), consistent: Some(true) });
    }

    #[test]
    fn ambiguous_and_inconsistent_together() {
        let k = attach_vdim(&two_dims(), &vdim_value(&[2, 4]).unwrap()).unwrap();
        let v = classify(&k);
        assert_eq!(v, MetaVerdict { specified: true, ambiguous: Some(true), consistent: Some(false) });
    }

    #[test]
    fn unspecified_without_vdim() {
        let v = classify(&two_dims());
        assert_eq!(v, MetaVerdict { specified: false, ambiguous: None, consistent: None });
        assert_eq!(v.to_string(), "specified=false ambiguous=n/a consistent=n/a");
    }

    #[test]
    fn convention_switch() {
        let k = attach_vdim(&two_dims(), &vdim_value(&[2]).unwrap()).unwrap();
        assert_eq!(classify(&k).consistent, Some(false));
        assert_eq!(classify_with(&k, CountConvention::ExcludeVdim).consistent, Some(true));
    }

    #[test]
    fn adding_a_dimension_tracks_the_incremented_count() {
        let l = lrv();
        for counts in [vec![3], vec![4], vec![3, 4], vec![2, 5], vec![4, 5]] {
            let base = InnerState::from_rendered(l.clone(), &[("V1", "f1"), ("V2", "m1")]).unwrap();
            let k = attach_vdim(&base, &vdim_value(&counts).unwrap()).unwrap();
            let grown = k.with("V3", l.resolve("V3", "b1").unwrap()).unwrap();
            let before = classify(&k).consistent.unwrap();
            let after = classify(&grown).consistent.unwrap();
            assert_eq!(before, counts.contains(&3));
            assert_eq!(after, counts.contains(&4));
            assert!(classify(&grown).specified);
        }
    }
}
