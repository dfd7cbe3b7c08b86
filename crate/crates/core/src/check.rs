//! Word checking for every machine kind behind one entry point, with a
//! per-run record of where each start state ends up.

use serde::{Deserialize, Serialize};

use crate::automata::{Dpda, Machine, StackModel, SymbolId};
use crate::blind_counter::check_dbca_sync_word;
use crate::error::{Error, Result};
use crate::pda_sync::check;
use crate::transducer_sync::check_trace_sync;

/// Where the run from one start state ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub from: String,
    /// `None` if the run died (undefined move or a read after the bottom
    /// symbol was popped).
    pub state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stack: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Vec<String>>,
}

impl RunRecord {
    fn new(from: &str, state: Option<&str>) -> Self {
        RunRecord {
            from: from.to_string(),
            state: state.map(str::to_string),
            stack: None,
            turns: None,
            counter: None,
            output: None,
        }
    }
}

/// Outcome of [`check_word`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReport {
    pub synchronizes: bool,
    pub runs: Vec<RunRecord>,
    /// Human-readable counterexample when the word fails.
    pub failure: Option<String>,
}

/// Checks whether `word` synchronizes `machine`.
///
/// Pushdown and blind counter machines need a stack model; `turns` bounds
/// the turns of pushdown runs. DFAs use plain synchronization, partial DFAs
/// careful synchronization and transducers trace synchronization.
pub fn check_word(
    machine: &Machine,
    word: &[SymbolId],
    model: Option<StackModel>,
    turns: Option<usize>,
) -> Result<WordReport> {
    if turns.is_some() && machine.as_dpda().is_none() {
        return Err(Error::Unsupported(format!(
            "turn bounds apply to pushdown machines, not to a {}",
            machine.kind()
        )));
    }
    let names = machine.states();
    match machine {
        Machine::Dfa(d) => {
            let runs: Vec<RunRecord> = (0..d.num_states())
                .map(|q| RunRecord::new(names.name(q), Some(names.name(d.run(q, word)))))
                .collect();
            Ok(same_state_report(runs))
        }
        Machine::PartialDfa(d) => {
            let runs: Vec<RunRecord> = (0..d.num_states())
                .map(|q| RunRecord::new(names.name(q), d.run(q, word).map(|s| names.name(s))))
                .collect();
            Ok(same_state_report(runs))
        }
        Machine::Transducer(t) => {
            let runs = (0..t.num_states())
                .map(|q| {
                    let (s, out) = t.run(q, word);
                    let mut r = RunRecord::new(names.name(q), Some(names.name(s)));
                    r.output = Some(t.output().render(&out));
                    r
                })
                .collect();
            let failure = check_trace_sync(t, word).err().map(|f| f.to_string());
            Ok(WordReport {
                synchronizes: failure.is_none(),
                runs,
                failure,
            })
        }
        Machine::Dbca(d) => {
            let model = model.ok_or_else(model_required)?;
            let runs = (0..d.num_states())
                .map(|q| {
                    let (s, c) = d.run(q, word);
                    let mut r = RunRecord::new(names.name(q), Some(names.name(s)));
                    r.counter = Some(c);
                    r
                })
                .collect();
            let ok = check_dbca_sync_word(d, word, model).is_some();
            Ok(WordReport {
                synchronizes: ok,
                runs,
                failure: (!ok).then(|| format!("runs do not agree in state and counter ({model} model)")),
            })
        }
        Machine::Dpda(_) | Machine::Dca(_) | Machine::Dpbca(_) => {
            let m = machine.as_dpda().expect("pushdown kinds");
            let model = model.ok_or_else(model_required)?;
            let runs = pushdown_runs(m, word);
            let failure = check(m, word, model, turns).err().map(|f| f.describe(m));
            Ok(WordReport {
                synchronizes: failure.is_none(),
                runs,
                failure,
            })
        }
    }
}

fn model_required() -> Error {
    Error::Unsupported("a stack model (empty, same or arbitrary) is required for this machine".into())
}

fn same_state_report(runs: Vec<RunRecord>) -> WordReport {
    let failure = if let Some(r) = runs.iter().find(|r| r.state.is_none()) {
        Some(format!("run from `{}` reaches an undefined transition", r.from))
    } else {
        runs.iter()
            .find(|r| r.state != runs[0].state)
            .map(|r| format!("runs from `{}` and `{}` end in different states", runs[0].from, r.from))
    };
    WordReport {
        synchronizes: failure.is_none(),
        runs,
        failure,
    }
}

fn pushdown_runs(m: &Dpda, word: &[SymbolId]) -> Vec<RunRecord> {
    (0..m.num_states())
        .map(|q| {
            let trace = m.run(q, word);
            let from = m.states().name(q);
            if trace.is_stuck() {
                return RunRecord::new(from, None);
            }
            let last = trace.last();
            let mut r = RunRecord::new(from, (!last.is_dead()).then(|| m.states().name(last.state)));
            r.stack = Some(m.render_stack(&last.stack));
            r.turns = trace.strokes().ok().map(|s| s.turns);
            r
        })
        .collect()
}
