//! Latent dimensions built from specification expressions, and their
//! assembly into latent representations of value.

use std::collections::{BTreeMap, BTreeSet};

use crate::element::{ElementId, Label};
use crate::error::{Error, Result};
use crate::poset::{Poset, DEFAULT_MAX_CARRIER};

/// An atom of an [`SpecExpr::ElementsAsAtoms`] dimension.
///
/// `source` keeps the expression an atom was frozen from (e.g. a whole base
/// set used as a single element). It is provenance only: atoms expose no
/// projections into their source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub source: Option<Box<SpecExpr>>,
}

impl Atom {
    pub fn symbol(name: impl Into<String>) -> Self {
        Atom { name: name.into(), source: None }
    }

    pub fn frozen(name: impl Into<String>, source: SpecExpr) -> Self {
        Atom { name: name.into(), source: Some(Box::new(source)) }
    }
}

/// Expression over base sets describing a dimension's carrier and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecExpr {
    /// Named base set; the order defaults to the antichain.
    Base { name: String, elements: BTreeSet<String>, order: BTreeSet<(String, String)> },
    /// All subsets of the inner carrier, ordered by inclusion.
    Power(Box<SpecExpr>),
    /// Tuples ordered componentwise.
    Product(Vec<SpecExpr>),
    /// Side-by-side tagged copies with no order across parts.
    DisjointUnion(Vec<SpecExpr>),
    /// Merged carrier and order; labels must not overlap.
    UnionAsSets(Vec<SpecExpr>),
    /// An antichain of opaque atoms.
    ElementsAsAtoms(Vec<Atom>),
}

impl SpecExpr {
    pub fn base<S: Into<String>>(name: &str, elements: impl IntoIterator<Item = S>) -> Self {
        SpecExpr::Base {
            name: name.to_string(),
            elements: elements.into_iter().map(Into::into).collect(),
            order: BTreeSet::new(),
        }
    }

    pub fn ordered_base<S: Into<String>>(
        name: &str,
        elements: impl IntoIterator<Item = S>,
        order: impl IntoIterator<Item = (S, S)>,
    ) -> Self {
        SpecExpr::Base {
            name: name.to_string(),
            elements: elements.into_iter().map(Into::into).collect(),
            order: order.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    pub fn power(inner: SpecExpr) -> Self {
        SpecExpr::Power(Box::new(inner))
    }

    pub fn atoms<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        SpecExpr::ElementsAsAtoms(names.into_iter().map(Atom::symbol).collect())
    }

    /// Carrier size without materialising it; saturates at `u128::MAX`.
    pub fn carrier_size(&self) -> u128 {
        match self {
            SpecExpr::Base { elements, .. } => elements.len() as u128,
            SpecExpr::Power(inner) => {
                let n = inner.carrier_size();
                if n >= 127 {
                    u128::MAX
                } else {
                    1u128 << n
                }
            }
            SpecExpr::Product(fs) => fs.iter().fold(1u128, |acc, f| acc.saturating_mul(f.carrier_size())),
            SpecExpr::DisjointUnion(ps) | SpecExpr::UnionAsSets(ps) => {
                ps.iter().fold(0u128, |acc, p| acc.saturating_add(p.carrier_size()))
            }
            SpecExpr::ElementsAsAtoms(atoms) => atoms.iter().map(|a| &a.name).collect::<BTreeSet<_>>().len() as u128,
        }
    }
}

/// Evaluates a specification expression with the default carrier cap.
pub fn eval_spec(e: &SpecExpr) -> Result<Poset> {
    eval_spec_capped(e, DEFAULT_MAX_CARRIER)
}

pub fn eval_spec_capped(e: &SpecExpr, max_carrier: usize) -> Result<Poset> {
    let size = e.carrier_size();
    if size > max_carrier as u128 {
        return Err(Error::SizeExceeded { size, cap: max_carrier as u128 });
    }
    eval(e, max_carrier)
}

fn eval(e: &SpecExpr, cap: usize) -> Result<Poset> {
    match e {
        SpecExpr::Base { elements, order, .. } => Poset::build_capped(
            elements.iter().map(ElementId::sym),
            order.iter().map(|(a, b)| (ElementId::sym(a), ElementId::sym(b))),
            cap,
        ),
        SpecExpr::Power(inner) => {
            let base = eval(inner, cap)?;
            let n = base.len();
            let subsets: Vec<ElementId> = (0u64..1 << n)
                .map(|mask| ElementId::set((0..n).filter(|b| mask >> b & 1 == 1).map(|b| base.element(b).clone())))
                .collect();
            // index == mask, so inclusion is a bit test
            Ok(Poset::from_closed(subsets, |i, j| i & !j == 0))
        }
        SpecExpr::Product(factors) => {
            if factors.is_empty() {
                return Err(Error::EmptyCarrier);
            }
            let posets = factors.iter().map(|f| eval(f, cap)).collect::<Result<Vec<_>>>()?;
            let sizes: Vec<usize> = posets.iter().map(Poset::len).collect();
            let total: usize = sizes.iter().product();
            let digits = |mut k: usize| -> Vec<usize> {
                let mut out = vec![0; sizes.len()];
                for pos in (0..sizes.len()).rev() {
                    out[pos] = k % sizes[pos];
                    k /= sizes[pos];
                }
                out
            };
            let coords: Vec<Vec<usize>> = (0..total).map(digits).collect();
            let tuples = coords
                .iter()
                .map(|c| ElementId::tuple(c.iter().zip(&posets).map(|(&i, p)| p.element(i).clone())))
                .collect();
            Ok(Poset::from_closed(tuples, |a, b| {
                coords[a].iter().zip(&coords[b]).zip(&posets).all(|((&x, &y), p)| p.leq_idx(x, y))
            }))
        }
        SpecExpr::DisjointUnion(parts) => {
            if parts.is_empty() {
                return Err(Error::EmptyCarrier);
            }
            let posets = parts.iter().map(|p| eval(p, cap)).collect::<Result<Vec<_>>>()?;
            let mut elements = Vec::new();
            for (tag, p) in posets.iter().enumerate() {
                let tag = tag.to_string();
                elements.extend(p.elements().iter().map(|x| x.within(&tag)));
            }
            let part_of: Vec<(usize, usize)> =
                posets.iter().enumerate().flat_map(|(t, p)| (0..p.len()).map(move |l| (t, l))).collect();
            Ok(Poset::from_closed(elements, |a, b| {
                let (ta, la) = part_of[a];
                let (tb, lb) = part_of[b];
                ta == tb && posets[ta].leq_idx(la, lb)
            }))
        }
        SpecExpr::UnionAsSets(parts) => {
            if parts.is_empty() {
                return Err(Error::EmptyCarrier);
            }
            let posets = parts.iter().map(|p| eval(p, cap)).collect::<Result<Vec<_>>>()?;
            let mut seen = BTreeSet::new();
            let mut elements = Vec::new();
            let mut relation = Vec::new();
            for p in &posets {
                for x in p.elements() {
                    if !seen.insert(x.clone()) {
                        return Err(Error::LabelCollision(x.to_string()));
                    }
                    elements.push(x.clone());
                }
                relation.extend(p.relation());
            }
            Poset::build_capped(elements, relation, cap)
        }
        SpecExpr::ElementsAsAtoms(atoms) => {
            if atoms.is_empty() {
                return Err(Error::EmptyCarrier);
            }
            Poset::build_capped(atoms.iter().map(|a| ElementId::sym(&a.name)), [], cap)
        }
    }
}

/// One latent dimension: an index, its poset, and the expression it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimension {
    pub id: String,
    pub poset: Poset,
    pub spec: SpecExpr,
}

/// A latent representation of value: an indexed family of dimensions.
///
/// Every element carries its dimension id at the head of its context path,
/// so carriers of different dimensions never share an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lrv {
    dims: BTreeMap<String, Dimension>,
}

/// Builds an LRV with the default carrier cap.
pub fn make_lrv(entries: impl IntoIterator<Item = (String, SpecExpr)>) -> Result<Lrv> {
    make_lrv_capped(entries, DEFAULT_MAX_CARRIER)
}

pub fn make_lrv_capped(entries: impl IntoIterator<Item = (String, SpecExpr)>, max_carrier: usize) -> Result<Lrv> {
    let mut dims = BTreeMap::new();
    for (id, spec) in entries {
        if dims.contains_key(&id) {
            return Err(Error::DuplicateIndex(id));
        }
        let raw = eval_spec_capped(&spec, max_carrier)?;
        let elements: Vec<ElementId> = raw.elements().iter().map(|x| x.within(&id)).collect();
        let poset = Poset::from_closed(elements, |a, b| raw.leq_idx(a, b));
        dims.insert(id.clone(), Dimension { id, poset, spec });
    }
    Ok(Lrv { dims })
}

impl Lrv {
    pub fn index(&self) -> impl Iterator<Item = &str> {
        self.dims.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn contains(&self, i: &str) -> bool {
        self.dims.contains_key(i)
    }

    pub fn dimension(&self, i: &str) -> Result<&Dimension> {
        self.dims.get(i).ok_or_else(|| Error::UnknownIndex(i.to_string()))
    }

    pub fn dimensions(&self) -> impl Iterator<Item = &Dimension> {
        self.dims.values()
    }

    pub fn poset(&self, i: &str) -> Result<&Poset> {
        Ok(&self.dimension(i)?.poset)
    }

    /// Finds the element of dimension `i` whose context-free rendering is
    /// `rendered` (e.g. `m1`, `{f1, f2}`, `(m1, m2, m3)`).
    ///
    /// Several matches happen only under disjoint unions and are reported as
    /// [`Error::AmbiguousValue`].
    pub fn resolve(&self, i: &str, rendered: &str) -> Result<ElementId> {
        let poset = self.poset(i)?;
        let mut hits = poset.elements().iter().filter(|x| x.erased() == rendered);
        match (hits.next(), hits.next()) {
            (Some(x), None) => Ok(x.clone()),
            (Some(_), Some(_)) => Err(Error::AmbiguousValue { dim: i.into(), value: rendered.into() }),
            (None, _) => Err(Error::ValueNotInDimension { dim: i.into(), value: rendered.into() }),
        }
    }

    /// The product of the dimensions in `j`, as a lazy handle.
    pub fn rho<'a>(&'a self, j: &[&str]) -> Result<Representation<'a>> {
        if j.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut factors: Vec<&'a Dimension> = Vec::with_capacity(j.len());
        for &i in j {
            let d = self.dimension(i)?;
            if !factors.iter().any(|f| f.id == d.id) {
                factors.push(d);
            }
        }
        Ok(Representation { factors })
    }
}

/// Lazy handle on the product of a set of dimensions; never materialised.
#[derive(Clone, Debug)]
pub struct Representation<'a> {
    factors: Vec<&'a Dimension>,
}

impl<'a> Representation<'a> {
    pub fn index(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|d| d.id.as_str())
    }

    /// Number of tuples in the product, saturating.
    pub fn size(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, d| acc.saturating_mul(d.poset.len() as u128))
    }

    /// True iff each component lives in the correspondingly indexed dimension.
    pub fn contains(&self, tuple: &[ElementId]) -> bool {
        tuple.len() == self.factors.len() && tuple.iter().zip(&self.factors).all(|(x, d)| d.poset.contains(x))
    }

    /// Canonical projection onto dimension `i`.
    pub fn project<'t>(&self, tuple: &'t [ElementId], i: &str) -> Result<&'t ElementId> {
        if !self.contains(tuple) {
            return Err(Error::ValueNotInDimension {
                dim: self.index().collect::<Vec<_>>().join("×"),
                value: format!("{tuple:?}"),
            });
        }
        let pos = self.factors.iter().position(|d| d.id == i).ok_or_else(|| Error::UnknownIndex(i.to_string()))?;
        Ok(&tuple[pos])
    }
}

/// Whether `x` is a composite (set or tuple) element.
pub fn is_composite(x: &ElementId) -> bool {
    !matches!(x.label, Label::Sym(_))
}
