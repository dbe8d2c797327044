//! Invariant suites behind the `selftest` command. Every suite is
//! exhaustive over small structures, so runs are deterministic.

use std::sync::Arc;

use crate::downset::{enumerate_posets, iota_is_join_hom, iota_preserves_strict};
use crate::dsl;
use crate::inner_state::{Composition, InnerState};
use crate::poset::Poset;
use crate::scenarios;
use crate::value_model::{make_lrv, Lrv, SpecExpr};

/// The scenario files shipped with the crate, by file name.
pub const BUNDLED: [(&str, &str); 4] = [
    ("fossowamba.vdl", include_str!("../scenarios/fossowamba.vdl")),
    ("ellsberg.vdl", include_str!("../scenarios/ellsberg.vdl")),
    ("wigner.vdl", include_str!("../scenarios/wigner.vdl")),
    ("meta.vdl", include_str!("../scenarios/meta.vdl")),
];

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, ..Default::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn small_posets(max: usize) -> impl Iterator<Item = Poset> {
    (1..=max).flat_map(|n| enumerate_posets(n, false).expect("size within the enumeration cap"))
}

fn order_and_join_laws(p: &Poset) -> Result<(), String> {
    let n = p.len();
    for a in 0..n {
        if !p.leq_idx(a, a) {
            return Err(format!("{} not reflexive", p.element(a)));
        }
        for b in 0..n {
            if a != b && p.leq_idx(a, b) && p.leq_idx(b, a) {
                return Err(format!("{} and {} violate antisymmetry", p.element(a), p.element(b)));
            }
            for c in 0..n {
                if p.leq_idx(a, b) && p.leq_idx(b, c) && !p.leq_idx(a, c) {
                    return Err(format!("transitivity fails at {}", p.element(b)));
                }
            }
            let j = p.join_idx(a, b);
            if j != p.join_idx(b, a) {
                return Err("join is not commutative".into());
            }
            if let Some(j) = j {
                let least = (0..n).all(|u| !(p.leq_idx(a, u) && p.leq_idx(b, u)) || p.leq_idx(j, u));
                if !(p.leq_idx(a, j) && p.leq_idx(b, j) && least) {
                    return Err(format!("{} is not the join of {} and {}", p.element(j), p.element(a), p.element(b)));
                }
            }
        }
        if p.join_idx(a, a) != Some(a) {
            return Err("join is not idempotent".into());
        }
    }
    let rebuilt = Poset::build(p.elements().iter().cloned(), p.hasse()).map_err(|e| e.to_string())?;
    if rebuilt.relation() != p.relation() {
        return Err("hasse does not rebuild the order".into());
    }
    Ok(())
}

pub fn poset_laws() -> SuiteReport {
    let mut r = SuiteReport::new("poset laws");
    for p in small_posets(4) {
        let res = order_and_join_laws(&p);
        r.check(res.is_ok(), || res.unwrap_err());
    }
    r
}

pub fn iota_suite() -> SuiteReport {
    let mut r = SuiteReport::new("strict down-sets");
    for p in small_posets(4) {
        r.check(iota_preserves_strict(&p), || format!("strict order lost on {:?}", p.relation()));
        if let Ok(hom) = iota_is_join_hom(&p) {
            r.check(!hom || p.is_total(), || format!("join-preserving on a non-chain {:?}", p.relation()));
        }
    }
    r
}

fn order_lrv() -> Lrv {
    make_lrv([
        ("P".to_string(), SpecExpr::power(SpecExpr::base("XY", ["x", "y"]))),
        ("Q".to_string(), SpecExpr::ordered_base("Q", ["p", "q", "r"], [("p", "q")])),
    ])
    .expect("fixed representation is valid")
}

/// Every partial assignment over the dimensions of `lrv`.
pub fn all_states(lrv: &Arc<Lrv>) -> Vec<InnerState> {
    let mut states = vec![InnerState::empty(lrv.clone())];
    for d in lrv.dimensions() {
        let mut next = Vec::with_capacity(states.len() * (d.poset.len() + 1));
        for s in &states {
            next.push(s.clone());
            for x in d.poset.elements() {
                next.push(s.with(&d.id, x.clone()).expect("element of the dimension"));
            }
        }
        states = next;
    }
    states
}

pub fn inner_state_suite() -> SuiteReport {
    let mut r = SuiteReport::new("inner-state order");
    let lrv = Arc::new(order_lrv());
    let states = all_states(&lrv);
    let le = |a: &InnerState, b: &InnerState| a.compare(b).expect("same representation").is_le();
    for a in &states {
        r.check(le(a, a), || format!("{a} not below itself"));
        for b in &states {
            if le(a, b) && le(b, a) {
                r.check(a == b, || format!("{a} and {b} are mutually below"));
            }
            let uppers: Vec<&InnerState> = states.iter().filter(|u| le(a, u) && le(b, u)).collect();
            match a.compose(b).expect("same representation") {
                Composition::Feasible(j) => {
                    let ok = le(a, &j) && le(b, &j) && uppers.iter().all(|u| le(&j, u));
                    r.check(ok, || format!("{j} is not the least upper bound of {a} and {b}"));
                }
                Composition::Infeasible { .. } => {
                    r.check(uppers.is_empty(), || format!("{a} and {b} have an upper bound"));
                }
            }
        }
    }
    r
}

pub fn dsl_suite() -> SuiteReport {
    let mut r = SuiteReport::new("scenario files");
    for (name, text) in BUNDLED {
        let once = dsl::parse(text).map(|d| dsl::serialize(&d));
        let twice = once.clone().and_then(|t| dsl::parse(&t).map(|d| dsl::serialize(&d)));
        r.check(once.is_ok() && once == twice, || format!("{name} does not round-trip"));
        let evaluated = dsl::parse(text).and_then(|d| dsl::eval(&d, crate::poset::DEFAULT_MAX_CARRIER));
        r.check(evaluated.is_ok(), || format!("{name} fails to evaluate: {:?}", evaluated.err()));
    }
    r
}

pub fn scenario_suite() -> SuiteReport {
    let mut r = SuiteReport::new("built-in scenarios");
    let ellsberg = scenarios::ellsberg_scenario();
    r.check(ellsberg.incompatibility() == Ok(true), || "ellsberg states are not incompatible".into());
    for u in [scenarios::Bit::Zero, scenarios::Bit::One] {
        let last = scenarios::wigner::transcript(u).ok().and_then(|t| t.last().cloned());
        r.check(last.as_deref() == Some("incompatibility detected after observation: true"), || {
            format!("wigner run with outcome {u} ends with {last:?}")
        });
    }
    for name in scenarios::NAMES {
        r.check(matches!(scenarios::run(name), Some(Ok(_))), || format!("scenario {name} fails"));
    }
    r
}

pub fn run_all() -> Vec<SuiteReport> {
    vec![poset_laws(), iota_suite(), inner_state_suite(), dsl_suite(), scenario_suite()]
}
