use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use valord::dsl::{parse, serialize, DslError, Expr, Item, Query, ScenarioDoc, StateDecl, Value};

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_']{0,3}"
}

fn value() -> impl Strategy<Value = Value> {
    name().prop_map(Value::Name).prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::btree_set(inner.clone(), 0..3).prop_map(Value::Set),
            prop::collection::vec(inner, 1..3).prop_map(Value::Tuple),
        ]
    })
}

/// `Ref("#k")` placeholders are bound to earlier dimensions afterwards.
fn expr() -> impl Strategy<Value = Expr> {
    let base = (prop::collection::btree_set(name(), 1..4), prop::collection::btree_set((name(), name()), 0..3))
        .prop_map(|(elements, order)| Expr::Base { elements, order });
    let leaf = prop_oneof![3 => base, 1 => (0usize..8).prop_map(|k| Expr::Ref(format!("#{k}")))];
    leaf.prop_recursive(3, 16, 3, |inner| {
        let item = (name(), prop::option::of(inner.clone())).prop_map(|(name, source)| Item { name, source });
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Power(Box::new(e))),
            prop::collection::vec(inner.clone(), 1..3).prop_map(Expr::Product),
            prop::collection::vec(inner.clone(), 1..3).prop_map(Expr::Disjoint),
            prop::collection::vec(inner, 1..3).prop_map(Expr::Union),
            prop::collection::vec(item, 1..3).prop_map(Expr::Atoms),
        ]
    })
}

fn bind(e: Expr, earlier: &[String]) -> Expr {
    let rec = |e| bind(e, earlier);
    match e {
        Expr::Ref(r) => match earlier.len() {
            0 => {
                Expr::Base { elements: BTreeSet::from([r.trim_start_matches('#').to_string()]), order: BTreeSet::new() }
            }
            n => Expr::Ref(earlier[r[1..].parse::<usize>().unwrap() % n].clone()),
        },
        Expr::Power(inner) => Expr::Power(Box::new(rec(*inner))),
        Expr::Product(ps) => Expr::Product(ps.into_iter().map(rec).collect()),
        Expr::Disjoint(ps) => Expr::Disjoint(ps.into_iter().map(rec).collect()),
        Expr::Union(ps) => Expr::Union(ps.into_iter().map(rec).collect()),
        Expr::Atoms(items) => Expr::Atoms(
            items.into_iter().map(|it| Item { name: it.name, source: it.source.map(|s| bind(s, earlier)) }).collect(),
        ),
        base => base,
    }
}

const KEYWORDS: [&str; 8] = ["base", "power", "order", "atoms", "dim", "state", "union", "meta"];

fn doc() -> impl Strategy<Value = ScenarioDoc> {
    let dims = prop::collection::vec((0usize..12, expr()), 0..5);
    let states = prop::collection::vec(prop::collection::vec((any::<prop::sample::Index>(), value()), 0..3), 0..4);
    let queries =
        prop::collection::vec((0u8..7, any::<prop::sample::Index>(), any::<prop::sample::Index>(), value()), 0..6);
    (dims, states, queries).prop_map(|(dims, states, queries)| {
        let mut doc = ScenarioDoc::default();
        for (k, (pick, e)) in dims.into_iter().enumerate() {
            let name = KEYWORDS.get(pick).map_or(format!("d{k}"), |kw| kw.to_string());
            if doc.dims.iter().any(|(n, _)| *n == name) {
                continue;
            }
            let earlier: Vec<String> = doc.dims.iter().map(|(n, _)| n.clone()).collect();
            doc.dims.push((name, bind(e, &earlier)));
        }
        let dim_names: Vec<String> = doc.dims.iter().map(|(n, _)| n.clone()).collect();
        for (k, entries) in states.into_iter().enumerate() {
            let entries: BTreeMap<String, Value> = if dim_names.is_empty() {
                BTreeMap::new()
            } else {
                entries.into_iter().map(|(i, v)| (i.get(&dim_names).clone(), v)).collect()
            };
            doc.states.push(StateDecl { name: format!("s{k}"), entries });
        }
        let state_names: Vec<String> = doc.states.iter().map(|s| s.name.clone()).collect();
        for (kind, a, b, v) in queries {
            let q = match (kind, state_names.is_empty(), dim_names.is_empty()) {
                (0, false, _) => Query::Compare(a.get(&state_names).clone(), b.get(&state_names).clone()),
                (1, false, _) => Query::Compose(a.get(&state_names).clone(), b.get(&state_names).clone()),
                (2, false, false) => Query::Incompat {
                    agent: a.get(&state_names).clone(),
                    dim: b.get(&dim_names).clone(),
                    value: v,
                    human: b.get(&state_names).clone(),
                },
                (3, false, _) => Query::Meta(a.get(&state_names).clone()),
                (4, _, false) => Query::Iota(a.get(&dim_names).clone()),
                (5, _, false) => Query::Hasse(a.get(&dim_names).clone()),
                _ => Query::Run(a.get(&["fossowamba", "ellsberg", "wigner"]).to_string()),
            };
            doc.queries.push(q);
        }
        doc
    })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(d in doc()) {
        let text = serialize(&d);
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn layout_does_not_matter(d in doc()) {
        let text = serialize(&d);
        let spread = text.replace(", ", " ,\n\t").replace('{', " { # brace\n").replace('(', "( ");
        prop_assert_eq!(parse(&spread).unwrap(), d);
    }

    #[test]
    fn errors_point_into_the_source(d in doc(), cut in any::<prop::sample::Index>()) {
        let text = serialize(&d);
        if text.is_empty() {
            return Ok(());
        }
        let end = cut.index(text.len());
        let prefix = &text[..end];
        if let Err(DslError::Parse(e)) = parse(prefix) {
            let lines: Vec<&str> = prefix.lines().collect();
            prop_assert!(e.line >= 1 && e.line <= lines.len());
            prop_assert!(e.column >= 1 && e.column <= lines[e.line - 1].chars().count());
        }
    }
}

#[test]
fn bundled_files_are_canonical_after_one_pass() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let once = serialize(&parse(&std::fs::read_to_string(&path).unwrap()).unwrap());
        let twice = serialize(&parse(&once).unwrap());
        assert_eq!(once, twice, "{}", path.display());
    }
}
