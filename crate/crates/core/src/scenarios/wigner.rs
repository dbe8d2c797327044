//! Wigner's friend as a four-phase state machine over inner states.
//!
//! The artificial agent (the friend) trains on big data, then observes an
//! outcome along a dimension `o_f` the human (Wigner) never acknowledges.
//! The human only learns that training happened.

use std::fmt;
use std::sync::Arc;

use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::inner_state::{detect_incompatibility, InnerState};
use crate::value_model::{make_lrv, Lrv, SpecExpr};

pub const V_BD: &str = "V_BD";
pub const V_AI: &str = "V_AI";
pub const V_OUT: &str = "o_f";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn as_u8(self) -> u8 {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn from_u8(v: u8) -> Option<Bit> {
        match v {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Parity of the latent factor and the observed output; zero exactly when
/// they agree.
pub fn xor_eval(f: Bit, o: Bit) -> Bit {
    if f == o {
        Bit::Zero
    } else {
        Bit::One
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Initial,
    Trained,
    Observed(Bit),
    HiUpdated,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Initial => f.write_str("initial"),
            Phase::Trained => f.write_str("trained"),
            Phase::Observed(u) => write!(f, "observed({u})"),
            Phase::HiUpdated => f.write_str("hi-updated"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WignerState {
    pub phase: Phase,
    pub k_ai: InnerState,
    pub k_hi: InnerState,
    pub lrv: Arc<Lrv>,
    /// Outcome seen by the agent, once observed.
    pub outcome: Option<Bit>,
}

/// `V_BD`: `F_01 ⪯ F_0`, `F_01 ⪯ F_1`. `V_AI`: `F_01 ⪯ F_0_1 ⪯ F_u`.
/// `o_f`: the antichain `{out0, out1}`.
pub fn wigner_lrv() -> Lrv {
    make_lrv([
        (
            V_BD.to_string(),
            SpecExpr::ordered_base("Factors", ["F_0", "F_1", "F_01"], [("F_01", "F_0"), ("F_01", "F_1")]),
        ),
        (
            V_AI.to_string(),
            SpecExpr::ordered_base(
                "Acknowledgement",
                ["F_0", "F_1", "F_0_1", "F_01"],
                [("F_01", "F_0_1"), ("F_0_1", "F_0"), ("F_0_1", "F_1")],
            ),
        ),
        (V_OUT.to_string(), SpecExpr::base("Outcome", ["out0", "out1"])),
    ])
    .expect("built-in representation is valid")
}

fn el(lrv: &Lrv, dim: &str, label: &str) -> ElementId {
    lrv.resolve(dim, label).expect("built-in element")
}

fn phase_error(action: &'static str, phase: Phase) -> Error {
    Error::Phase { action, phase: phase.to_string() }
}

pub fn wigner_init() -> WignerState {
    let lrv = Arc::new(wigner_lrv());
    let k_hi = InnerState::new(lrv.clone(), [(V_AI.to_string(), el(&lrv, V_AI, "F_01"))]).expect("built-in state");
    WignerState { phase: Phase::Initial, k_ai: InnerState::empty(lrv.clone()), k_hi, lrv, outcome: None }
}

/// Training leaves the agent undecided between the two factors.
pub fn wigner_train(s: &WignerState) -> Result<WignerState> {
    if s.phase != Phase::Initial {
        return Err(phase_error("train", s.phase));
    }
    let k_ai = s.k_ai.with(V_BD, el(&s.lrv, V_BD, "F_01"))?;
    Ok(WignerState { phase: Phase::Trained, k_ai, ..s.clone() })
}

/// The agent sees outcome `u`: its big-data component sharpens to `F_u`
/// and its domain grows by `o_f`.
pub fn wigner_observe(s: &WignerState, u: Bit) -> Result<WignerState> {
    if s.phase != Phase::Trained {
        return Err(phase_error("observe", s.phase));
    }
    let factor = format!("F_{u}");
    let out = format!("out{u}");
    let k_ai = s.k_ai.with(V_BD, el(&s.lrv, V_BD, &factor))?.with(V_OUT, el(&s.lrv, V_OUT, &out))?;
    Ok(WignerState { phase: Phase::Observed(u), k_ai, outcome: Some(u), ..s.clone() })
}

/// The human learns the agent is trained; `o_f` stays outside its domain.
pub fn wigner_hi_update(s: &WignerState) -> Result<WignerState> {
    if !matches!(s.phase, Phase::Observed(_)) {
        return Err(phase_error("update the human state", s.phase));
    }
    let k_hi = s.k_hi.with(V_AI, el(&s.lrv, V_AI, "F_0_1"))?;
    Ok(WignerState { phase: Phase::HiUpdated, k_hi, ..s.clone() })
}

impl WignerState {
    /// The observed value along `o_f`, tested against the two states.
    pub fn incompatibility(&self) -> Result<Option<bool>> {
        let Some(u) = self.outcome else { return Ok(None) };
        let a = el(&self.lrv, V_OUT, &format!("out{u}"));
        detect_incompatibility(V_OUT, &a, &self.k_ai, &self.k_hi).map(Some)
    }
}

pub fn transcript(u: Bit) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let log = |s: &WignerState, out: &mut Vec<String>| {
        out.push(format!("phase {}: k_AI = {} ; K_HI = {}", s.phase, s.k_ai, s.k_hi));
    };
    let s0 = wigner_init();
    log(&s0, &mut out);
    let s1 = wigner_train(&s0)?;
    log(&s1, &mut out);
    out.push(format!("pi_BD(k_AI) = {}", s1.k_ai.project(V_BD)?.erased()));
    let s2 = wigner_observe(&s1, u)?;
    log(&s2, &mut out);
    let grown: Vec<&str> = s2.k_ai.domain().difference(&s1.k_ai.domain()).copied().collect();
    out.push(format!("domain growth of k_AI: {{{}}}", grown.join(", ")));
    let s3 = wigner_hi_update(&s2)?;
    log(&s3, &mut out);
    out.push(format!("pi_AI(K_HI) = {}", s3.k_hi.project(V_AI)?.erased()));
    out.push(format!("o_f in domain of K_HI: {}", s3.k_hi.get(V_OUT).is_some()));
    out.push(format!("xor(f, o(f)) with f = {u}: {}", xor_eval(u, u)));
    out.push(format!("incompatibility detected after observation: {}", s3.incompatibility()?.unwrap_or(false)));
    Ok(out)
}
