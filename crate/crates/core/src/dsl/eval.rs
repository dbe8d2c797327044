use std::collections::BTreeMap;
use std::sync::Arc;

use super::ast::{Expr, Query, ScenarioDoc};
use super::DslError;
use crate::downset::{iota, iota_is_join_hom, iota_preserves_strict};
use crate::error::Error;
use crate::inner_state::{detect_incompatibility, Composition, InnerState};
use crate::meta::classify;
use crate::scenarios;
use crate::value_model::{make_lrv_capped, Atom, Lrv, SpecExpr};

/// A document with its representation built and its states resolved.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub lrv: Arc<Lrv>,
    pub states: BTreeMap<String, InnerState>,
}

fn to_spec(name: &str, e: &Expr, dims: &BTreeMap<&str, &Expr>) -> SpecExpr {
    let rec = |e: &Expr| to_spec(name, e, dims);
    match e {
        Expr::Base { elements, order } => {
            SpecExpr::Base { name: name.to_string(), elements: elements.clone(), order: order.clone() }
        }
        Expr::Power(inner) => SpecExpr::power(rec(inner)),
        Expr::Product(ps) => SpecExpr::Product(ps.iter().map(rec).collect()),
        Expr::Disjoint(ps) => SpecExpr::DisjointUnion(ps.iter().map(rec).collect()),
        Expr::Union(ps) => SpecExpr::UnionAsSets(ps.iter().map(rec).collect()),
        Expr::Atoms(items) => SpecExpr::ElementsAsAtoms(
            items
                .iter()
                .map(|it| match &it.source {
                    Some(src) => Atom::frozen(&it.name, rec(src)),
                    None => Atom::symbol(&it.name),
                })
                .collect(),
        ),
        // The parser only admits references to earlier dimensions.
        Expr::Ref(r) => to_spec(r, dims[r.as_str()], dims),
    }
}

/// Builds the representation declared by `doc`, refusing any dimension
/// larger than `max_carrier`.
pub fn build_lrv(doc: &ScenarioDoc, max_carrier: usize) -> Result<Lrv, Error> {
    let dims: BTreeMap<&str, &Expr> = doc.dims.iter().map(|(n, e)| (n.as_str(), e)).collect();
    make_lrv_capped(doc.dims.iter().map(|(n, e)| (n.clone(), to_spec(n, e, &dims))), max_carrier)
}

/// Builds the representation and resolves every state against it.
pub fn build_states(doc: &ScenarioDoc, max_carrier: usize) -> Result<Evaluated, Error> {
    let lrv = Arc::new(build_lrv(doc, max_carrier)?);
    let mut states = BTreeMap::new();
    for s in &doc.states {
        let mut assign = BTreeMap::new();
        for (d, v) in &s.entries {
            assign.insert(d.clone(), lrv.resolve(d, &v.render())?);
        }
        states.insert(s.name.clone(), InnerState::new(lrv.clone(), assign)?);
    }
    Ok(Evaluated { lrv, states })
}

/// Runs every query and returns the result lines, each headed by the
/// canonical query text.
pub fn eval(doc: &ScenarioDoc, max_carrier: usize) -> Result<Vec<String>, DslError> {
    let ev = build_states(doc, max_carrier)?;
    let mut out = Vec::new();
    for q in &doc.queries {
        out.extend(answer(&ev, q)?);
    }
    Ok(out)
}

fn answer(ev: &Evaluated, q: &Query) -> Result<Vec<String>, Error> {
    let st = |n: &String| &ev.states[n];
    let line = |body: String| vec![format!("{q}: {body}")];
    Ok(match q {
        Query::Compare(a, b) => line(st(a).compare(st(b))?.to_string()),
        Query::Compose(a, b) => match st(a).compose(st(b))? {
            Composition::Feasible(k) => line(k.to_string()),
            Composition::Infeasible { witness } => line(format!("infeasible at {witness}")),
        },
        Query::Incompat { agent, dim, value, human } => {
            let a = ev.lrv.resolve(dim, &value.render())?;
            line(format!("incompatible: {}", detect_incompatibility(dim, &a, st(agent), st(human))?))
        }
        Query::Meta(s) => line(classify(st(s)).to_string()),
        Query::Iota(d) => {
            let p = ev.lrv.poset(d)?;
            let r = iota(p);
            let hom = match iota_is_join_hom(p) {
                Ok(b) => b.to_string(),
                Err(Error::NotAJoinSemilattice) => "n/a".to_string(),
                Err(e) => return Err(e),
            };
            line(format!(
                "total={} injective={} preserves-strict={} join-hom={hom}",
                p.is_total(),
                r.is_injective(),
                iota_preserves_strict(p)
            ))
        }
        Query::Hasse(d) => {
            let pairs: Vec<String> =
                ev.lrv.poset(d)?.hasse().iter().map(|(a, b)| format!("{} < {}", a.erased(), b.erased())).collect();
            line(if pairs.is_empty() { "none".to_string() } else { pairs.join(", ") })
        }
        Query::Run(name) => {
            let lines = scenarios::run(name).ok_or_else(|| Error::UnknownIndex(name.clone()))??;
            std::iter::once(format!("{q}:")).chain(lines.into_iter().map(|l| format!("  {l}"))).collect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::poset::DEFAULT_MAX_CARRIER;

    fn run(src: &str) -> Result<Vec<String>, DslError> {
        eval(&parse(src).unwrap(), DEFAULT_MAX_CARRIER)
    }

    #[test]
    fn references_copy_the_expression() {
        let d = parse("dim F = base{f1, f2}\ndim P = power(F)\nstate K = { P: {f2, f1} }").unwrap();
        let ev = build_states(&d, DEFAULT_MAX_CARRIER).unwrap();
        assert_eq!(ev.lrv.poset("P").unwrap().len(), 4);
        assert_eq!(ev.states["K"].project("P").unwrap().erased(), "{f1, f2}");
    }

    #[test]
    fn answers() {
        let out = run("dim A = base{a, b} order{a < b}\ndim B = base{x, y}\nstate K = { A: a }\nstate H = { A: b, B: x }\n\
                       state J = { B: y }\nstate L = { A: b }\ncompare K H\ncompose K H\ncompose H J\nhasse A\nhasse B\niota A\nincompat H.B @ x L\nincompat H.B @ x K")
        .unwrap();
        assert_eq!(
            out,
            vec![
                "compare K H: less-eq",
                "compose K H: { A: b, B: x }",
                "compose H J: infeasible at B",
                "hasse A: a < b",
                "hasse B: none",
                "iota A: total=true injective=true preserves-strict=true join-hom=true",
                "incompat H.B @ x L: incompatible: true",
                "incompat H.B @ x K: incompatible: false",
            ]
        );
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            run("dim A = base{a}\nstate K = { A: z }"),
            Err(DslError::Domain(Error::ValueNotInDimension { .. }))
        ));
        assert!(matches!(run("dim A = base{a, b} order{a < b, b < a}"), Err(DslError::Domain(Error::Cycle(..)))));
        let big = parse("dim A = power(base{a, b, c, d, e})").unwrap();
        assert!(matches!(eval(&big, 16), Err(DslError::Domain(Error::SizeExceeded { size: 32, cap: 16 }))));
    }
}
