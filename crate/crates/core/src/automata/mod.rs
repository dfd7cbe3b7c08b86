//! Machine models, configuration semantics, run traces and stroke
//! accounting shared by every other module.

mod counter;
mod dfa;
mod dpda;
mod names;
mod transducer;
mod validate;

pub use counter::{blindness_violations, Dbca, Dca, Dpbca, COUNTER};
pub use dfa::{Dfa, PartialDfa};
pub use dpda::{
    stroke_decomposition, strokes_of_heights, Configuration, Direction, Dpda, DpdaBuilder, RunTrace, StackSym,
    StrokeTracker, Strokes, Transition, BOTTOM, BOTTOM_NAME,
};
pub use names::{tokenize_word, Names, StateId, SymbolId};
pub use transducer::{run_transducer, SequentialTransducer};
pub use validate::{validate, Kind, Machine, ValidationError, Violation};

/// Synchronization semantics for the stacks of a pushdown machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StackModel {
    /// Every run ends with only the bottom symbol on its stack.
    Empty,
    /// Every run ends with the same stack.
    Same,
    /// No condition on the stacks.
    Arbitrary,
}

impl StackModel {
    pub const ALL: [StackModel; 3] = [StackModel::Empty, StackModel::Same, StackModel::Arbitrary];

    pub fn tag(self) -> &'static str {
        match self {
            StackModel::Empty => "empty",
            StackModel::Same => "same",
            StackModel::Arbitrary => "arbitrary",
        }
    }
}

impl std::str::FromStr for StackModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "empty" => Ok(StackModel::Empty),
            "same" => Ok(StackModel::Same),
            "arbitrary" | "arb" => Ok(StackModel::Arbitrary),
            other => Err(format!(
                "unknown stack model `{other}` (expected empty, same or arbitrary)"
            )),
        }
    }
}

impl std::fmt::Display for StackModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}
