use std::sync::Arc;

use proptest::prelude::*;
use valord::dot::export_dot;
use valord::downset::enumeration_labels;
use valord::inner_state::{detect_incompatibility, CompareResult, Composition, InnerState};
use valord::meta::{attach_vdim, classify, vdim_spec, vdim_value, VDIM_INDEX};
use valord::value_model::make_lrv;
use valord::{Lrv, Poset, SpecExpr};

fn lrv() -> Arc<Lrv> {
    Arc::new(
        make_lrv([
            ("A".to_string(), SpecExpr::power(SpecExpr::base("S", ["s", "t", "u"]))),
            ("B".to_string(), SpecExpr::ordered_base("B", ["lo", "mid", "hi", "side"], [("lo", "mid"), ("mid", "hi")])),
            ("C".to_string(), SpecExpr::base("C", ["c1", "c2"])),
            (VDIM_INDEX.to_string(), vdim_spec(4)),
        ])
        .unwrap(),
    )
}

/// A state choosing, per dimension, nothing or one element by index.
fn state() -> impl Strategy<Value = InnerState> {
    prop::collection::vec(prop::option::of(any::<prop::sample::Index>()), 3).prop_map(|picks| {
        let l = lrv();
        let mut k = InnerState::empty(l.clone());
        for (d, pick) in ["A", "B", "C"].into_iter().zip(picks) {
            if let Some(i) = pick {
                let x = i.get(l.poset(d).unwrap().elements()).clone();
                k = k.with(d, x).unwrap();
            }
        }
        k
    })
}

fn le(a: &InnerState, b: &InnerState) -> bool {
    a.compare(b).unwrap().is_le()
}

proptest! {
    #[test]
    fn compare_is_antisymmetric_and_flips(a in state(), b in state()) {
        let ab = a.compare(&b).unwrap();
        let ba = b.compare(&a).unwrap();
        let flipped = match ab {
            CompareResult::LessEq => CompareResult::GreaterEq,
            CompareResult::GreaterEq => CompareResult::LessEq,
            other => other,
        };
        prop_assert_eq!(ba, flipped);
        prop_assert_eq!(ab == CompareResult::Equal, a == b);
    }

    #[test]
    fn compare_is_transitive(a in state(), b in state(), c in state()) {
        if le(&a, &b) && le(&b, &c) {
            prop_assert!(le(&a, &c));
        }
    }

    #[test]
    fn compose_is_a_commutative_upper_bound(a in state(), b in state()) {
        match (a.compose(&b).unwrap(), b.compose(&a).unwrap()) {
            (Composition::Feasible(x), Composition::Feasible(y)) => {
                prop_assert_eq!(&x, &y);
                prop_assert!(le(&a, &x) && le(&b, &x));
                prop_assert_eq!(a.compose(&x).unwrap().feasible(), Some(x.clone()));
                let dom: std::collections::BTreeSet<&str> = a.domain().union(&b.domain()).copied().collect();
                prop_assert_eq!(x.domain(), dom);
            }
            (Composition::Infeasible { witness: w1 }, Composition::Infeasible { witness: w2 }) => {
                prop_assert_eq!(w1, w2);
            }
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
        prop_assert_eq!(a.compose(&a).unwrap().feasible(), Some(a.clone()));
    }

    #[test]
    fn restriction_sits_below(a in state(), keep in prop::collection::btree_set(prop::sample::select(vec!["A", "B", "C", "Z"]), 0..4)) {
        let r = a.restrict(keep.iter().copied());
        prop_assert!(le(&r, &a));
        prop_assert!(r.domain().iter().all(|d| keep.contains(d)));
        prop_assert_eq!(a.restrict(a.domain()), a.clone());
    }

    #[test]
    fn a_state_is_never_incompatible_with_itself(a in state(), d in prop::sample::select(vec!["A", "B", "C"]), pick in any::<prop::sample::Index>()) {
        let x = pick.get(a.lrv().poset(d).unwrap().elements()).clone();
        prop_assert!(!detect_incompatibility(d, &x, &a, &a).unwrap());
        if a.get(d).is_none() {
            prop_assert!(!detect_incompatibility(d, &x, &a, &InnerState::empty(a.lrv().clone())).unwrap());
        }
    }

    #[test]
    fn incompatibility_needs_a_missing_dimension(a in state(), h in state(), d in prop::sample::select(vec!["A", "B", "C"])) {
        if let Some(x) = a.get(d).cloned() {
            if detect_incompatibility(d, &x, &a, &h).unwrap() {
                prop_assert!(h.get(d).is_none());
            }
        }
    }

    #[test]
    fn attached_vdim_is_specified(a in state(), counts in prop::collection::btree_set(0u32..=4, 1..4)) {
        let counts: Vec<u32> = counts.into_iter().collect();
        let k = attach_vdim(&a, &vdim_value(&counts).unwrap()).unwrap();
        let v = classify(&k);
        prop_assert!(v.specified);
        prop_assert_eq!(v.ambiguous, Some(counts.len() > 1));
        prop_assert_eq!(v.consistent, Some(counts.contains(&(k.len() as u32))));
        prop_assert_eq!(classify(&k), v);
    }

    #[test]
    fn dot_edges_are_the_cover_pairs(n in 1usize..7, bits in any::<u64>()) {
        let els = enumeration_labels(n);
        let mut pairs = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> bit & 1 == 1 {
                    pairs.push((els[i].clone(), els[j].clone()));
                }
                bit += 1;
            }
        }
        let p = Poset::build(els.clone(), pairs).unwrap();
        let dot = export_dot(&p);
        prop_assert_eq!(&dot, &export_dot(&p));
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        prop_assert_eq!(edges.len(), p.hasse().len());
        for (a, b) in p.hasse() {
            let line = format!("  \"{}\" -> \"{}\";", a.qualified(), b.qualified());
            prop_assert_eq!(edges.iter().filter(|l| **l == line).count(), 1);
        }
        let mut sorted = edges.clone();
        sorted.sort();
        prop_assert_eq!(sorted, edges);
    }
}

#[test]
fn dimension_context_shows_in_node_names() {
    let l = lrv();
    let dot = export_dot(l.poset("B").unwrap());
    assert!(dot.contains("\"B.lo\" -> \"B.mid\";"));
    assert!(dot.contains("\"B.side\";"));
    assert!(!dot.contains("\"B.lo\" -> \"B.hi\""));
}
