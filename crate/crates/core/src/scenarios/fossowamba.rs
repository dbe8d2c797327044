//! The seven-dimension big-data value representation: three base
//! dimensions (transparency, data policies, technology) and four derived
//! ones.

use std::sync::Arc;

use crate::error::Result;
use crate::inner_state::InnerState;
use crate::value_model::{make_lrv, Atom, Lrv, SpecExpr};

pub fn f_set() -> SpecExpr {
    SpecExpr::base("F", ["f1", "f2", "f3", "f4"])
}

pub fn m_set() -> SpecExpr {
    SpecExpr::base("M", ["m1", "m2", "m3"])
}

pub fn b_set() -> SpecExpr {
    SpecExpr::base("B", ["b1", "b2", "b3"])
}

fn entries() -> Vec<(String, SpecExpr)> {
    vec![
        ("V1".into(), f_set()),
        ("V2".into(), m_set()),
        ("V3".into(), b_set()),
        ("V4".into(), SpecExpr::UnionAsSets(vec![m_set(), b_set()])),
        (
            "V5".into(),
            SpecExpr::ElementsAsAtoms(vec![
                Atom::frozen("F", f_set()),
                Atom::frozen("M", m_set()),
                Atom::symbol("f1"),
                Atom::symbol("b2"),
            ]),
        ),
        ("V6".into(), SpecExpr::Product(vec![m_set(), m_set(), m_set()])),
        ("V7".into(), SpecExpr::power(f_set())),
    ]
}

pub fn fossowamba_lrv() -> Lrv {
    make_lrv(entries()).expect("built-in representation is valid")
}

/// The seven dimensions plus three separate copies `V6_1..V6_3` of `M`,
/// so both readings of the triple of policies live side by side.
pub fn fossowamba_extended_lrv() -> Lrv {
    let mut all = entries();
    all.extend((1..=3).map(|k| (format!("V6_{k}"), m_set())));
    make_lrv(all).expect("built-in representation is valid")
}

/// `(m1, M, (m1, m2, m3))`: the policies valued only as a combination.
pub fn tuple_state(lrv: Arc<Lrv>) -> Result<InnerState> {
    InnerState::from_rendered(lrv, &[("V2", "m1"), ("V5", "M"), ("V6", "(m1, m2, m3)")])
}

/// `(m1, M, m1, m2, m3)`: each policy valued in its own copy of `M`.
pub fn split_state(lrv: Arc<Lrv>) -> Result<InnerState> {
    InnerState::from_rendered(lrv, &[("V2", "m1"), ("V5", "M"), ("V6_1", "m1"), ("V6_2", "m2"), ("V6_3", "m3")])
}

pub fn transcript() -> Result<Vec<String>> {
    let lrv = Arc::new(fossowamba_extended_lrv());
    let mut out = Vec::new();
    for id in ["V1", "V2", "V3", "V4", "V5", "V6", "V7"] {
        let p = lrv.poset(id)?;
        out.push(format!("dimension {id}: {} elements, {} cover pairs", p.len(), p.hasse().len()));
    }
    let tuple = tuple_state(lrv.clone())?;
    let split = split_state(lrv.clone())?;
    out.push(format!("tuple state: {tuple}"));
    out.push(format!("split state: {split}"));
    out.push(format!("compare tuple split: {}", tuple.compare(&split)?));
    out.push(format!("project tuple at V6: {}", tuple.project("V6")?.erased()));
    Ok(out)
}
