//! Ellsberg's three-colour urn, encoded structurally.
//!
//! Two dimensions: `Red`, a two-grade chain the human can assess, and
//! `BlackYellow`, the non-empty subsets of `{Black, Yellow}` under reverse
//! inclusion (finer knowledge sits higher). The human acknowledges only
//! that `BlackYellow` exists; the artificial agent tells `Black` apart.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::inner_state::{detect_incompatibility, Composition, InnerState};
use crate::value_model::{make_lrv, Lrv, SpecExpr};

pub const RED: &str = "Red";
pub const BLACK_YELLOW: &str = "BlackYellow";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Red,
    Black,
    Yellow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BetId {
    Pi1a,
    Pi1b,
    Pi2a,
    Pi2b,
}

impl BetId {
    pub const ALL: [BetId; 4] = [BetId::Pi1a, BetId::Pi1b, BetId::Pi2a, BetId::Pi2b];
}

impl fmt::Display for BetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetId::Pi1a => "pi1a",
            BetId::Pi1b => "pi1b",
            BetId::Pi2a => "pi2a",
            BetId::Pi2b => "pi2b",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bet {
    pub id: BetId,
    pub winning_colours: BTreeSet<Colour>,
    pub payoff: u32,
}

pub fn bets() -> Vec<Bet> {
    use Colour::*;
    let bet = |id, colours: &[Colour]| Bet { id, winning_colours: colours.iter().copied().collect(), payoff: 100 };
    vec![
        bet(BetId::Pi1a, &[Red]),
        bet(BetId::Pi1b, &[Black]),
        bet(BetId::Pi2a, &[Red, Yellow]),
        bet(BetId::Pi2b, &[Black, Yellow]),
    ]
}

/// Urn composition. Metadata only; nothing is computed from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Urn {
    pub total: u32,
    pub red: u32,
    pub black_or_yellow: u32,
}

pub const URN: Urn = Urn { total: 90, red: 30, black_or_yellow: 60 };

#[derive(Clone, Debug)]
pub struct EllsbergScenario {
    pub lrv: Arc<Lrv>,
    pub k_hi: InnerState,
    pub k_ai: InnerState,
    pub bets: Vec<Bet>,
    pub urn: Urn,
}

impl EllsbergScenario {
    /// The element of `BlackYellow` the artificial agent singles out.
    pub fn black(&self) -> ElementId {
        self.lrv.resolve(BLACK_YELLOW, "Black").expect("built-in element")
    }

    pub fn incompatibility(&self) -> Result<bool> {
        detect_incompatibility(BLACK_YELLOW, &self.black(), &self.k_ai, &self.k_hi)
    }
}

pub fn ellsberg_lrv() -> Lrv {
    make_lrv([
        (
            RED.to_string(),
            SpecExpr::ordered_base("RedGrades", ["red_coarse", "red_assessed"], [("red_coarse", "red_assessed")]),
        ),
        (
            BLACK_YELLOW.to_string(),
            SpecExpr::ordered_base(
                "BlackYellowSubsets",
                ["Black", "Yellow", "BlackOrYellow"],
                [("BlackOrYellow", "Black"), ("BlackOrYellow", "Yellow")],
            ),
        ),
    ])
    .expect("built-in representation is valid")
}

pub fn ellsberg_scenario() -> EllsbergScenario {
    let lrv = Arc::new(ellsberg_lrv());
    let k_hi = InnerState::from_rendered(lrv.clone(), &[(RED, "red_assessed")]).expect("built-in state");
    let k_ai = InnerState::from_rendered(lrv.clone(), &[(BLACK_YELLOW, "Black")]).expect("built-in state");
    EllsbergScenario { lrv, k_hi, k_ai, bets: bets(), urn: URN }
}

/// A decision-maker's weak preferences `a ⪯ b` over the four bets.
///
/// A pair counts as determined once either direction has been stated;
/// unstated directions of a determined pair are false.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreferenceProfile {
    relation: BTreeSet<(BetId, BetId)>,
}

impl PreferenceProfile {
    pub fn from_weak(pairs: impl IntoIterator<Item = (BetId, BetId)>) -> Self {
        let mut relation: BTreeSet<(BetId, BetId)> = pairs.into_iter().collect();
        relation.extend(BetId::ALL.iter().map(|&b| (b, b)));
        PreferenceProfile { relation }
    }

    /// Strict ranking, most preferred first.
    pub fn from_ranking(ranking: [BetId; 4]) -> Self {
        let mut pairs = Vec::new();
        for (hi, &better) in ranking.iter().enumerate() {
            for &worse in &ranking[hi + 1..] {
                pairs.push((worse, better));
            }
        }
        PreferenceProfile::from_weak(pairs)
    }

    /// `Some(a ⪯ b)` when the pair is determined.
    pub fn weakly_prefers(&self, a: BetId, b: BetId) -> Option<bool> {
        let fwd = self.relation.contains(&(a, b));
        let back = self.relation.contains(&(b, a));
        (a == b || fwd || back).then_some(fwd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SureThing {
    Satisfied,
    /// Truth values of `pi1a ⪯ pi1b` and `pi2a ⪯ pi2b`, which differ.
    Violated {
        first_pair: bool,
        second_pair: bool,
    },
}

/// Checks `(pi1a ⪯ pi1b) ⇔ (pi2a ⪯ pi2b)`: adding yellow to both bets of a
/// pair must not reverse the preference between them.
pub fn sure_thing_check(p: &PreferenceProfile) -> Result<SureThing> {
    let first =
        p.weakly_prefers(BetId::Pi1a, BetId::Pi1b).ok_or_else(|| Error::IncompleteProfile("pi1a vs pi1b".into()))?;
    let second =
        p.weakly_prefers(BetId::Pi2a, BetId::Pi2b).ok_or_else(|| Error::IncompleteProfile("pi2a vs pi2b".into()))?;
    Ok(if first == second {
        SureThing::Satisfied
    } else {
        SureThing::Violated { first_pair: first, second_pair: second }
    })
}

/// The classic pattern: `pi1a ≻ pi1b` and `pi2b ≻ pi2a`.
pub fn ellsberg_pattern() -> PreferenceProfile {
    PreferenceProfile::from_weak([(BetId::Pi1b, BetId::Pi1a), (BetId::Pi2a, BetId::Pi2b)])
}

pub fn transcript() -> Result<Vec<String>> {
    let s = ellsberg_scenario();
    let mut out =
        vec![format!("urn: {} balls, {} red, {} black or yellow", s.urn.total, s.urn.red, s.urn.black_or_yellow)];
    let winners: BTreeMap<BetId, &BTreeSet<Colour>> = s.bets.iter().map(|b| (b.id, &b.winning_colours)).collect();
    for (id, colours) in winners {
        out.push(format!("bet {id}: pays 100 on {colours:?}"));
    }
    out.push(format!("K_HI = {}", s.k_hi));
    out.push(format!("k_AI = {}", s.k_ai));
    let hi_by = s.k_hi.restrict([BLACK_YELLOW]);
    let ai_by = s.k_ai.restrict([BLACK_YELLOW]);
    out.push(format!("compare K_HI|BlackYellow k_AI|BlackYellow: {}", hi_by.compare(&ai_by)?));
    out.push(format!("incompatible: {}", s.incompatibility()?));
    match s.k_hi.compose(&s.k_ai)? {
        Composition::Feasible(k) => {
            out.push(format!("K_HI v k_AI = {k}"));
            let after = detect_incompatibility(BLACK_YELLOW, &s.black(), &s.k_ai, &k)?;
            out.push(format!("incompatible after update: {after}"));
        }
        Composition::Infeasible { witness } => out.push(format!("K_HI v k_AI: infeasible at {witness}")),
    }
    out.push(format!("sure-thing on ellsberg pattern: {:?}", sure_thing_check(&ellsberg_pattern())?));
    Ok(out)
}
