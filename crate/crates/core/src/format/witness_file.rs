use serde::{Deserialize, Serialize};

use crate::automata::{Machine, StackModel, SymbolId};
use crate::check::{check_word, RunRecord};
use crate::error::{Error, Result};
use crate::search::SearchStats;
use crate::turn::BoundReport;

pub const WITNESS_FORMAT: &str = "syncpda-witness/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Exact procedure answered yes.
    Yes,
    /// Bounded search or word check succeeded.
    Found,
    /// Exact procedure answered no, or the checked word fails.
    No,
    /// Bounded search covered the theoretical length bound.
    ProvedNo,
    Exhausted,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Yes | Verdict::Found)
    }

    /// Process exit code of the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes | Verdict::Found => 0,
            Verdict::No | Verdict::ProvedNo => 3,
            Verdict::Exhausted => 4,
        }
    }
}

/// A verdict together with the evidence needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub format: String,
    pub verdict: Verdict,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<StackModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunRecord>,
    /// The word was re-run against the machine and the runs above
    /// reproduce the verdict.
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl WitnessFile {
    /// A verdict without a word.
    pub fn bare(machine: &Machine, verdict: Verdict, model: Option<StackModel>, turns: Option<usize>) -> Self {
        WitnessFile {
            format: WITNESS_FORMAT.to_string(),
            verdict,
            kind: machine.kind().tag().to_string(),
            model,
            turns,
            word: None,
            runs: Vec::new(),
            verified: false,
            failure: None,
            bound: None,
            stats: None,
            reason: None,
        }
    }

    /// Checks `word` on `machine` and records the runs. The verdict is
    /// `positive` if the word synchronizes, `No` otherwise.
    pub fn for_word(
        machine: &Machine,
        word: &[SymbolId],
        model: Option<StackModel>,
        turns: Option<usize>,
        positive: Verdict,
    ) -> Result<Self> {
        let report = check_word(machine, word, model, turns)?;
        let verdict = if report.synchronizes { positive } else { Verdict::No };
        let mut w = WitnessFile::bare(machine, verdict, model, turns);
        w.word = Some(machine.input().render(word));
        w.runs = report.runs;
        w.failure = report.failure;
        w.verified = true;
        Ok(w)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness files always serialize");
        s.push('\n');
        s
    }
}

/// Parses a witness document and checks its internal consistency.
pub fn parse_witness(bytes: &[u8]) -> Result<WitnessFile> {
    let w: WitnessFile = serde_json::from_slice(bytes)?;
    if w.format != WITNESS_FORMAT {
        return Err(Error::Parse(format!(
            "unsupported witness format `{}` (expected `{WITNESS_FORMAT}`)",
            w.format
        )));
    }
    if w.verdict.is_positive() && w.word.is_none() {
        return Err(Error::Parse("a positive verdict needs a word".into()));
    }
    Ok(w)
}

/// Re-runs the checker on the witness word and compares verdict and runs.
/// Verdicts without a word carry nothing to reproduce and pass.
pub fn verify_witness(machine: &Machine, w: &WitnessFile) -> Result<bool> {
    if w.kind != machine.kind().tag() {
        return Ok(false);
    }
    let Some(word) = &w.word else {
        return Ok(!w.verdict.is_positive());
    };
    let word = machine.input().resolve(word).map_err(Error::UnknownSymbol)?;
    let report = check_word(machine, &word, w.model, w.turns)?;
    Ok(report.synchronizes == w.verdict.is_positive() && report.runs == w.runs)
}
