//! Synchronizing words for deterministic pushdown, counter and transducer
//! machines.
//!
//! A synchronizing word drives every state of a machine into one common
//! state. For pushdown machines the stacks matter too: see [`StackModel`].
//! Decidable cases have exact procedures ([`dfa_sync`], [`turn`],
//! [`blind_counter::decide_dbca_arbitrary`]); everything else gets a
//! bounded search whose verdicts say explicitly when they are
//! inconclusive.

pub mod automata;
pub mod blind_counter;
pub mod check;
pub mod counters;
pub mod dfa_sync;
pub mod error;
pub mod format;
pub mod pda_sync;
pub mod reductions;
pub mod search;
pub mod transducer_sync;
pub mod turn;

pub use automata::StackModel;
pub use error::{Error, Result};
