//! Built-in worked scenarios, addressable by name.

pub mod ellsberg;
pub mod fossowamba;
pub mod wigner;

use crate::error::Result;

pub use ellsberg::{ellsberg_scenario, sure_thing_check, BetId, PreferenceProfile, SureThing};
pub use fossowamba::fossowamba_lrv;
pub use wigner::{wigner_hi_update, wigner_init, wigner_observe, wigner_train, xor_eval, Bit, Phase, WignerState};

pub const NAMES: [&str; 3] = ["fossowamba", "ellsberg", "wigner"];

/// Runs a built-in scenario and returns its transcript, or `None` for an
/// unknown name. The Wigner run observes outcome 0.
pub fn run(name: &str) -> Option<Result<Vec<String>>> {
    match name {
        "fossowamba" => Some(fossowamba::transcript()),
        "ellsberg" => Some(ellsberg::transcript()),
        "wigner" => Some(wigner::transcript(Bit::Zero)),
        _ => None,
    }
}
