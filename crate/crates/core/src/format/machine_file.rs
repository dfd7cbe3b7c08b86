use serde::{Deserialize, Serialize};

use crate::automata::{
    validate, Dbca, Dfa, Dpda, Kind, Machine, PartialDfa, SequentialTransducer, ValidationError, BOTTOM_NAME,
};
use crate::error::{Error, Result};

pub const MACHINE_FORMAT: &str = "syncpda-machine/1";

/// On-disk machine description. Field order here is the canonical
/// serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineFile {
    pub format: String,
    pub kind: String,
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stack_alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub finals: Vec<String>,
    pub transitions: Vec<TransitionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// One transition. Which optional fields are required depends on the kind:
/// pushdown kinds use `top`/`push`, blind counters `delta`, transducers
/// `output`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRecord {
    pub from: String,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub push: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Vec<String>>,
}

/// Where a generated machine came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    /// The result the construction is used for.
    pub result: String,
    pub source: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Why a document could not be turned into a machine.
#[derive(Debug)]
pub enum Diagnostics {
    /// Not JSON, or JSON that does not fit the schema; carries the
    /// line/column reported by the JSON reader.
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Semantic(ValidationError),
}

impl std::fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostics::Syntax { line, column, message } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            Diagnostics::Semantic(v) => write!(f, "{v}"),
        }
    }
}

impl std::error::Error for Diagnostics {}

impl MachineFile {
    pub fn from_slice(bytes: &[u8]) -> std::result::Result<Self, Diagnostics> {
        serde_json::from_slice(bytes).map_err(|e| Diagnostics::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("machine files always serialize");
        s.push('\n');
        s
    }

    pub fn kind(&self) -> std::result::Result<Kind, ValidationError> {
        self.kind.parse::<Kind>().map_err(|v| ValidationError {
            violations: vec![v],
            fallback: None,
        })
    }
}

/// Parses and validates a machine document.
pub fn parse_machine(bytes: &[u8]) -> std::result::Result<Machine, Diagnostics> {
    let file = MachineFile::from_slice(bytes)?;
    let kind = file.kind().map_err(Diagnostics::Semantic)?;
    validate(&file, kind).map_err(Diagnostics::Semantic)
}

/// Canonical form of a machine: declaration order of states and symbols,
/// bottom symbol first, transitions sorted by (state, input, top).
pub fn to_machine_file(machine: &Machine, provenance: Option<Provenance>) -> MachineFile {
    let mut f = match machine {
        Machine::Dfa(d) => dfa_file(d, Kind::Dfa),
        Machine::PartialDfa(d) => partial_dfa_file(d),
        Machine::Dpda(d) => dpda_file(d, Kind::Dpda),
        Machine::Dca(d) => dpda_file(d.as_dpda(), Kind::Dca),
        Machine::Dpbca(d) => dpda_file(d.as_dpda(), Kind::Dpbca),
        Machine::Dbca(d) => dbca_file(d),
        Machine::Transducer(t) => transducer_file(t),
    };
    f.provenance = provenance;
    f
}

/// `parse` followed by canonical serialization.
pub fn canonicalize(bytes: &[u8]) -> std::result::Result<String, Diagnostics> {
    let file = MachineFile::from_slice(bytes)?;
    let kind = file.kind().map_err(Diagnostics::Semantic)?;
    let m = validate(&file, kind).map_err(Diagnostics::Semantic)?;
    Ok(to_machine_file(&m, file.provenance).to_json())
}

fn header(kind: Kind, states: &crate::automata::Names, input: &crate::automata::Names) -> MachineFile {
    MachineFile {
        format: MACHINE_FORMAT.to_string(),
        kind: kind.tag().to_string(),
        states: states.as_slice().to_vec(),
        input_alphabet: input.as_slice().to_vec(),
        stack_alphabet: None,
        output_alphabet: None,
        initial: None,
        finals: Vec::new(),
        transitions: Vec::new(),
        provenance: None,
    }
}

fn set_initial_finals(f: &mut MachineFile, states: &crate::automata::Names, initial: Option<usize>, finals: &[usize]) {
    f.initial = initial.map(|q| states.name(q).to_string());
    let mut fs: Vec<usize> = finals.to_vec();
    fs.sort_unstable();
    fs.dedup();
    f.finals = fs.into_iter().map(|q| states.name(q).to_string()).collect();
}

fn plain(from: &str, input: &str, to: &str) -> TransitionRecord {
    TransitionRecord {
        from: from.to_string(),
        input: input.to_string(),
        top: None,
        to: to.to_string(),
        push: None,
        delta: None,
        output: None,
    }
}

fn dfa_file(d: &Dfa, kind: Kind) -> MachineFile {
    let mut f = header(kind, d.states(), d.input());
    set_initial_finals(&mut f, d.states(), d.initial(), d.finals());
    for q in 0..d.num_states() {
        for a in 0..d.num_symbols() {
            f.transitions.push(plain(
                d.states().name(q),
                d.input().name(a),
                d.states().name(d.next(q, a)),
            ));
        }
    }
    f
}

fn partial_dfa_file(d: &PartialDfa) -> MachineFile {
    let mut f = header(Kind::PartialDfa, d.states(), d.input());
    set_initial_finals(&mut f, d.states(), d.initial(), d.finals());
    for q in 0..d.num_states() {
        for a in 0..d.num_symbols() {
            if let Some(t) = d.next(q, a) {
                f.transitions
                    .push(plain(d.states().name(q), d.input().name(a), d.states().name(t)));
            }
        }
    }
    f
}

fn dpda_file(d: &Dpda, kind: Kind) -> MachineFile {
    let mut f = header(kind, d.states(), d.input());
    set_initial_finals(&mut f, d.states(), d.initial(), d.finals());
    debug_assert_eq!(d.stack_alphabet().name(0), BOTTOM_NAME);
    f.stack_alphabet = Some(d.stack_alphabet().as_slice().to_vec());
    for q in 0..d.num_states() {
        for a in 0..d.num_symbols() {
            for g in 0..d.num_stack_symbols() {
                let t = d.transition(q, a, g);
                let mut r = plain(d.states().name(q), d.input().name(a), d.states().name(t.target));
                r.top = Some(d.stack_alphabet().name(g).to_string());
                r.push = Some(d.render_stack(&t.push));
                f.transitions.push(r);
            }
        }
    }
    f
}

fn dbca_file(d: &Dbca) -> MachineFile {
    let mut f = header(Kind::Dbca, d.states(), d.input());
    set_initial_finals(&mut f, d.states(), d.initial(), d.finals());
    for q in 0..d.num_states() {
        for a in 0..d.num_symbols() {
            let (t, delta) = d.next(q, a);
            let mut r = plain(d.states().name(q), d.input().name(a), d.states().name(t));
            r.delta = Some(delta as i64);
            f.transitions.push(r);
        }
    }
    f
}

fn transducer_file(t: &SequentialTransducer) -> MachineFile {
    let mut f = header(Kind::Transducer, t.states(), t.input());
    set_initial_finals(&mut f, t.states(), t.initial(), t.finals());
    f.output_alphabet = Some(t.output().as_slice().to_vec());
    for q in 0..t.num_states() {
        for a in 0..t.num_symbols() {
            let (target, out) = t.next(q, a);
            let mut r = plain(t.states().name(q), t.input().name(a), t.states().name(target));
            r.output = Some(t.output().render(out));
            f.transitions.push(r);
        }
    }
    f
}

/// Serializes `machine` with an optional provenance header.
pub fn machine_to_json(machine: &Machine, provenance: Option<Provenance>) -> String {
    to_machine_file(machine, provenance).to_json()
}

/// Parses a word given as whitespace-separated symbol names.
pub fn parse_word(alphabet: &crate::automata::Names, text: &str) -> Result<Vec<usize>> {
    alphabet
        .resolve(&crate::automata::tokenize_word(text))
        .map_err(Error::UnknownSymbol)
}
