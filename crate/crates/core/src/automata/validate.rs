use std::fmt;
use std::str::FromStr;

use super::counter::{blindness_violations, Dbca, Dca, Dpbca};
use super::dfa::{Dfa, PartialDfa};
use super::dpda::{bottom_discipline, Dpda, Transition, BOTTOM_NAME};
use super::names::Names;
use super::transducer::SequentialTransducer;
use crate::format::{MachineFile, MACHINE_FORMAT};

/// Machine kinds, from weakest to strongest within each family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Dfa,
    PartialDfa,
    Dpda,
    Dca,
    Dpbca,
    Dbca,
    Transducer,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Dfa => "dfa",
            Kind::PartialDfa => "partial-dfa",
            Kind::Dpda => "dpda",
            Kind::Dca => "dca",
            Kind::Dpbca => "dpbca",
            Kind::Dbca => "dbca",
            Kind::Transducer => "transducer",
        }
    }

    fn is_pushdown(self) -> bool {
        matches!(self, Kind::Dpda | Kind::Dca | Kind::Dpbca)
    }
}

impl FromStr for Kind {
    type Err = Violation;
    fn from_str(s: &str) -> Result<Self, Violation> {
        Ok(match s {
            "dfa" => Kind::Dfa,
            "partial-dfa" => Kind::PartialDfa,
            "dpda" => Kind::Dpda,
            "dca" => Kind::Dca,
            "dpbca" => Kind::Dpbca,
            "dbca" => Kind::Dbca,
            "transducer" => Kind::Transducer,
            other => return Err(Violation::UnknownKind(other.to_string())),
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A validated machine, tagged with the strongest kind it satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Dfa(Dfa),
    PartialDfa(PartialDfa),
    Dpda(Dpda),
    Dca(Dca),
    Dpbca(Dpbca),
    Dbca(Dbca),
    Transducer(SequentialTransducer),
}

impl Machine {
    pub fn kind(&self) -> Kind {
        match self {
            Machine::Dfa(_) => Kind::Dfa,
            Machine::PartialDfa(_) => Kind::PartialDfa,
            Machine::Dpda(_) => Kind::Dpda,
            Machine::Dca(_) => Kind::Dca,
            Machine::Dpbca(_) => Kind::Dpbca,
            Machine::Dbca(_) => Kind::Dbca,
            Machine::Transducer(_) => Kind::Transducer,
        }
    }

    /// The pushdown view of DPDA-family machines.
    pub fn as_dpda(&self) -> Option<&Dpda> {
        match self {
            Machine::Dpda(d) => Some(d),
            Machine::Dca(d) => Some(d.as_dpda()),
            Machine::Dpbca(d) => Some(d.as_dpda()),
            _ => None,
        }
    }

    pub fn as_dca(&self) -> Option<&Dca> {
        match self {
            Machine::Dca(d) => Some(d),
            Machine::Dpbca(d) => Some(d.as_dca()),
            _ => None,
        }
    }

    pub fn states(&self) -> &Names {
        match self {
            Machine::Dfa(d) => d.states(),
            Machine::PartialDfa(d) => d.states(),
            Machine::Dpda(d) => d.states(),
            Machine::Dca(d) => d.states(),
            Machine::Dpbca(d) => d.states(),
            Machine::Dbca(d) => d.states(),
            Machine::Transducer(t) => t.states(),
        }
    }

    pub fn input(&self) -> &Names {
        match self {
            Machine::Dfa(d) => d.input(),
            Machine::PartialDfa(d) => d.input(),
            Machine::Dpda(d) => d.input(),
            Machine::Dca(d) => d.input(),
            Machine::Dpbca(d) => d.input(),
            Machine::Dbca(d) => d.input(),
            Machine::Transducer(t) => t.input(),
        }
    }

    /// Certifies a pushdown automaton with its strongest kind.
    pub fn from_dpda(d: Dpda) -> Machine {
        match Dca::new(d.clone()) {
            Err(_) => Machine::Dpda(d),
            Ok(dca) => match Dpbca::new(dca.clone()) {
                Ok(b) => Machine::Dpbca(b),
                Err(_) => Machine::Dca(dca),
            },
        }
    }
}

/// One broken invariant, with its location in the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Format(String),
    UnknownKind(String),
    Empty(&'static str),
    DuplicateName {
        list: &'static str,
        name: String,
    },
    Undeclared {
        at: String,
        what: &'static str,
        name: String,
    },
    MissingField {
        at: String,
        field: &'static str,
    },
    UnexpectedField {
        at: String,
        field: &'static str,
    },
    DuplicateTransition {
        at: String,
    },
    Undefined {
        at: String,
    },
    MissingBottom,
    BottomDiscipline {
        at: String,
        reason: &'static str,
    },
    NotCounter {
        symbols: usize,
    },
    Blindness {
        at: String,
    },
    CounterDelta {
        at: String,
        delta: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Format(v) => write!(f, "unsupported format `{v}` (expected `{MACHINE_FORMAT}`)"),
            Violation::UnknownKind(k) => write!(f, "unknown kind `{k}`"),
            Violation::Empty(what) => write!(f, "{what} must not be empty"),
            Violation::DuplicateName { list, name } => write!(f, "{list}: duplicate name `{name}`"),
            Violation::Undeclared { at, what, name } => write!(f, "{at}: undeclared {what} `{name}`"),
            Violation::MissingField { at, field } => write!(f, "{at}: missing field `{field}`"),
            Violation::UnexpectedField { at, field } => {
                write!(f, "{at}: field `{field}` is not allowed for this kind")
            }
            Violation::DuplicateTransition { at } => write!(f, "{at}: duplicate transition"),
            Violation::Undefined { at } => write!(f, "transition undefined for {at}"),
            Violation::MissingBottom => {
                write!(f, "stack_alphabet: reserved bottom symbol `{BOTTOM_NAME}` missing")
            }
            Violation::BottomDiscipline { at, reason } => write!(f, "{at}: {reason}"),
            Violation::NotCounter { symbols } => write!(
                f,
                "a counter automaton needs exactly one non-bottom stack symbol, found {symbols}"
            ),
            Violation::Blindness { at } => write!(
                f,
                "{at}: transitions on the bottom and counter symbols differ (partial blindness violated)"
            ),
            Violation::CounterDelta { at, delta } => {
                write!(f, "{at}: counter change {delta} outside -1..=1")
            }
        }
    }
}

/// Validation failure: every violated invariant, plus the weaker kind the
/// description still satisfies, if any.
#[derive(Clone, Debug)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
    pub fallback: Option<Box<Machine>>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        if let Some(m) = &self.fallback {
            write!(f, "\n(certified only as {})", m.kind())?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

fn fail(violations: Vec<Violation>) -> Result<Machine, ValidationError> {
    Err(ValidationError {
        violations,
        fallback: None,
    })
}

/// Checks a machine description against the invariants of `claimed` and
/// returns it certified with the strongest kind it satisfies.
pub fn validate(file: &MachineFile, claimed: Kind) -> Result<Machine, ValidationError> {
    let mut v = Vec::new();
    if file.format != MACHINE_FORMAT {
        v.push(Violation::Format(file.format.clone()));
    }
    let states = names(&file.states, "states", &mut v);
    let input = names(&file.input_alphabet, "input_alphabet", &mut v);
    if file.states.is_empty() {
        v.push(Violation::Empty("states"));
    }
    if file.input_alphabet.is_empty() {
        v.push(Violation::Empty("input_alphabet"));
    }
    let initial = file.initial.as_ref().and_then(|s| {
        let r = states.get(s);
        if r.is_none() {
            v.push(Violation::Undeclared {
                at: "initial".into(),
                what: "state",
                name: s.clone(),
            });
        }
        r
    });
    let mut finals = Vec::new();
    for (i, s) in file.finals.iter().enumerate() {
        match states.get(s) {
            Some(q) => finals.push(q),
            None => v.push(Violation::Undeclared {
                at: format!("finals[{i}]"),
                what: "state",
                name: s.clone(),
            }),
        }
    }
    if claimed.is_pushdown() {
        if file.output_alphabet.is_some() {
            v.push(Violation::UnexpectedField {
                at: "document".into(),
                field: "output_alphabet",
            });
        }
    } else {
        if file.stack_alphabet.is_some() {
            v.push(Violation::UnexpectedField {
                at: "document".into(),
                field: "stack_alphabet",
            });
        }
        if claimed != Kind::Transducer && file.output_alphabet.is_some() {
            v.push(Violation::UnexpectedField {
                at: "document".into(),
                field: "output_alphabet",
            });
        }
    }
    let ctx = Ctx {
        file,
        states: &states,
        input: &input,
        initial,
        finals,
    };
    match claimed {
        Kind::Dfa | Kind::PartialDfa => validate_dfa(&ctx, claimed, v),
        Kind::Dpda | Kind::Dca | Kind::Dpbca => validate_dpda(&ctx, claimed, v),
        Kind::Dbca => validate_dbca(&ctx, v),
        Kind::Transducer => validate_transducer(&ctx, v),
    }
}

struct Ctx<'a> {
    file: &'a MachineFile,
    states: &'a Names,
    input: &'a Names,
    initial: Option<usize>,
    finals: Vec<usize>,
}

fn names(list: &[String], what: &'static str, v: &mut Vec<Violation>) -> Names {
    let mut n = Names::new();
    for s in list {
        if n.get(s).is_some() {
            v.push(Violation::DuplicateName {
                list: what,
                name: s.clone(),
            });
        } else {
            n.push(s.as_str());
        }
    }
    n
}

fn lookup(names: &Names, name: &str, at: &str, what: &'static str, v: &mut Vec<Violation>) -> Option<usize> {
    let r = names.get(name);
    if r.is_none() {
        v.push(Violation::Undeclared {
            at: at.to_string(),
            what,
            name: name.to_string(),
        });
    }
    r
}

fn forbid<T>(field: &Option<T>, name: &'static str, at: &str, v: &mut Vec<Violation>) {
    if field.is_some() {
        v.push(Violation::UnexpectedField {
            at: at.to_string(),
            field: name,
        });
    }
}

fn validate_dfa(ctx: &Ctx<'_>, claimed: Kind, mut v: Vec<Violation>) -> Result<Machine, ValidationError> {
    let mut table = PartialDfa::new(ctx.states.clone(), ctx.input.clone());
    for (i, r) in ctx.file.transitions.iter().enumerate() {
        let at = format!("transitions[{i}]");
        forbid(&r.top, "top", &at, &mut v);
        forbid(&r.push, "push", &at, &mut v);
        forbid(&r.delta, "delta", &at, &mut v);
        forbid(&r.output, "output", &at, &mut v);
        let q = lookup(ctx.states, &r.from, &at, "state", &mut v);
        let a = lookup(ctx.input, &r.input, &at, "symbol", &mut v);
        let t = lookup(ctx.states, &r.to, &at, "state", &mut v);
        if let (Some(q), Some(a), Some(t)) = (q, a, t) {
            if table.next(q, a).is_some() {
                v.push(Violation::DuplicateTransition { at });
            } else {
                table.set(q, a, t);
            }
        }
    }
    table.initial = ctx.initial;
    table.finals = ctx.finals.clone();
    if !v.is_empty() {
        return fail(v);
    }
    match table.to_total() {
        Some(d) => Ok(Machine::Dfa(d)),
        None if claimed == Kind::PartialDfa => Ok(Machine::PartialDfa(table)),
        None => {
            let mut missing = Vec::new();
            for q in 0..table.num_states() {
                for a in 0..table.num_symbols() {
                    if table.next(q, a).is_none() {
                        missing.push(Violation::Undefined {
                            at: format!("({}, {})", ctx.states.name(q), ctx.input.name(a)),
                        });
                    }
                }
            }
            Err(ValidationError {
                violations: missing,
                fallback: Some(Box::new(Machine::PartialDfa(table))),
            })
        }
    }
}

fn validate_dpda(ctx: &Ctx<'_>, claimed: Kind, mut v: Vec<Violation>) -> Result<Machine, ValidationError> {
    let Some(declared) = &ctx.file.stack_alphabet else {
        v.push(Violation::MissingField {
            at: "document".into(),
            field: "stack_alphabet",
        });
        return fail(v);
    };
    // Internally the bottom symbol sits at index 0.
    let mut stack = Names::new();
    if declared.iter().any(|s| s == BOTTOM_NAME) {
        stack.push(BOTTOM_NAME);
    } else {
        v.push(Violation::MissingBottom);
    }
    let mut seen = Names::new();
    for s in declared {
        if seen.get(s).is_some() {
            v.push(Violation::DuplicateName {
                list: "stack_alphabet",
                name: s.clone(),
            });
            continue;
        }
        seen.push(s.as_str());
        if s != BOTTOM_NAME {
            stack.push(s.as_str());
        }
    }
    let (nq, nk, ng) = (ctx.states.len(), ctx.input.len(), stack.len());
    let mut delta: Vec<Option<Transition>> = vec![None; nq * nk * ng];
    for (i, r) in ctx.file.transitions.iter().enumerate() {
        let at = format!("transitions[{i}]");
        forbid(&r.delta, "delta", &at, &mut v);
        forbid(&r.output, "output", &at, &mut v);
        let q = lookup(ctx.states, &r.from, &at, "state", &mut v);
        let a = lookup(ctx.input, &r.input, &at, "symbol", &mut v);
        let t = lookup(ctx.states, &r.to, &at, "state", &mut v);
        let top = match &r.top {
            Some(s) => lookup(&stack, s, &at, "stack symbol", &mut v),
            None => {
                v.push(Violation::MissingField {
                    at: at.clone(),
                    field: "top",
                });
                None
            }
        };
        let push = match &r.push {
            Some(p) => {
                let mut out = Some(Vec::with_capacity(p.len()));
                for s in p {
                    match lookup(&stack, s, &at, "stack symbol", &mut v) {
                        Some(x) => {
                            if let Some(o) = out.as_mut() {
                                o.push(x)
                            }
                        }
                        None => out = None,
                    }
                }
                out
            }
            None => {
                v.push(Violation::MissingField {
                    at: at.clone(),
                    field: "push",
                });
                None
            }
        };
        if let (Some(q), Some(a), Some(t), Some(top), Some(push)) = (q, a, t, top, push) {
            if let Err(reason) = bottom_discipline(top, &push) {
                v.push(Violation::BottomDiscipline { at: at.clone(), reason });
            }
            let slot = &mut delta[(q * nk + a) * ng + top];
            if slot.is_some() {
                v.push(Violation::DuplicateTransition { at });
            } else {
                *slot = Some(Transition::new(t, push));
            }
        }
    }
    if v.is_empty() {
        for (i, t) in delta.iter().enumerate() {
            if t.is_none() {
                let g = i % ng;
                let a = (i / ng) % nk;
                let q = i / (ng * nk);
                v.push(Violation::Undefined {
                    at: format!("({}, {}, {})", ctx.states.name(q), ctx.input.name(a), stack.name(g)),
                });
            }
        }
    }
    if !v.is_empty() {
        return fail(v);
    }
    let dpda = Dpda {
        states: ctx.states.clone(),
        input: ctx.input.clone(),
        stack,
        delta: delta.into_iter().map(Option::unwrap).collect(),
        initial: ctx.initial,
        finals: ctx.finals.clone(),
    };
    let strongest = Machine::from_dpda(dpda.clone());
    match (claimed, strongest.kind()) {
        (Kind::Dca, Kind::Dpda) => fail(vec![Violation::NotCounter {
            symbols: dpda.counter_symbols(),
        }]),
        (Kind::Dpbca, Kind::Dpda) => fail(vec![Violation::NotCounter {
            symbols: dpda.counter_symbols(),
        }]),
        (Kind::Dpbca, Kind::Dca) => {
            let dca = Dca::new(dpda).expect("certified as a counter automaton");
            Err(ValidationError {
                violations: blindness_violations(&dca),
                fallback: Some(Box::new(Machine::Dca(dca))),
            })
        }
        _ => Ok(strongest),
    }
}

fn validate_dbca(ctx: &Ctx<'_>, mut v: Vec<Violation>) -> Result<Machine, ValidationError> {
    let (nq, nk) = (ctx.states.len(), ctx.input.len());
    let mut delta: Vec<Option<(usize, i8)>> = vec![None; nq * nk];
    for (i, r) in ctx.file.transitions.iter().enumerate() {
        let at = format!("transitions[{i}]");
        forbid(&r.top, "top", &at, &mut v);
        forbid(&r.push, "push", &at, &mut v);
        forbid(&r.output, "output", &at, &mut v);
        let q = lookup(ctx.states, &r.from, &at, "state", &mut v);
        let a = lookup(ctx.input, &r.input, &at, "symbol", &mut v);
        let t = lookup(ctx.states, &r.to, &at, "state", &mut v);
        let d = match r.delta {
            Some(d) if (-1..=1).contains(&d) => Some(d as i8),
            Some(d) => {
                v.push(Violation::CounterDelta {
                    at: at.clone(),
                    delta: d,
                });
                None
            }
            None => {
                v.push(Violation::MissingField {
                    at: at.clone(),
                    field: "delta",
                });
                None
            }
        };
        if let (Some(q), Some(a), Some(t), Some(d)) = (q, a, t, d) {
            let slot = &mut delta[q * nk + a];
            if slot.is_some() {
                v.push(Violation::DuplicateTransition { at });
            } else {
                *slot = Some((t, d));
            }
        }
    }
    if v.is_empty() {
        undefined_pairs(ctx, &delta, &mut v);
    }
    if !v.is_empty() {
        return fail(v);
    }
    Ok(Machine::Dbca(Dbca {
        states: ctx.states.clone(),
        input: ctx.input.clone(),
        delta: delta.into_iter().map(Option::unwrap).collect(),
        initial: ctx.initial,
        finals: ctx.finals.clone(),
    }))
}

fn validate_transducer(ctx: &Ctx<'_>, mut v: Vec<Violation>) -> Result<Machine, ValidationError> {
    let output = match &ctx.file.output_alphabet {
        Some(o) => names(o, "output_alphabet", &mut v),
        None => {
            v.push(Violation::MissingField {
                at: "document".into(),
                field: "output_alphabet",
            });
            return fail(v);
        }
    };
    let (nq, nk) = (ctx.states.len(), ctx.input.len());
    let mut delta: Vec<Option<(usize, Vec<usize>)>> = vec![None; nq * nk];
    for (i, r) in ctx.file.transitions.iter().enumerate() {
        let at = format!("transitions[{i}]");
        forbid(&r.top, "top", &at, &mut v);
        forbid(&r.push, "push", &at, &mut v);
        forbid(&r.delta, "delta", &at, &mut v);
        let q = lookup(ctx.states, &r.from, &at, "state", &mut v);
        let a = lookup(ctx.input, &r.input, &at, "symbol", &mut v);
        let t = lookup(ctx.states, &r.to, &at, "state", &mut v);
        let out = match &r.output {
            Some(o) => {
                let mut ok = true;
                let w: Vec<usize> = o
                    .iter()
                    .filter_map(|s| {
                        let x = lookup(&output, s, &at, "output symbol", &mut v);
                        ok &= x.is_some();
                        x
                    })
                    .collect();
                ok.then_some(w)
            }
            None => {
                v.push(Violation::MissingField {
                    at: at.clone(),
                    field: "output",
                });
                None
            }
        };
        if let (Some(q), Some(a), Some(t), Some(out)) = (q, a, t, out) {
            let slot = &mut delta[q * nk + a];
            if slot.is_some() {
                v.push(Violation::DuplicateTransition { at });
            } else {
                *slot = Some((t, out));
            }
        }
    }
    if v.is_empty() {
        undefined_pairs(ctx, &delta, &mut v);
    }
    if !v.is_empty() {
        return fail(v);
    }
    Ok(Machine::Transducer(SequentialTransducer {
        states: ctx.states.clone(),
        input: ctx.input.clone(),
        output,
        delta: delta.into_iter().map(Option::unwrap).collect(),
        initial: ctx.initial,
        finals: ctx.finals.clone(),
    }))
}

fn undefined_pairs<T>(ctx: &Ctx<'_>, delta: &[Option<T>], v: &mut Vec<Violation>) {
    let nk = ctx.input.len();
    for (i, t) in delta.iter().enumerate() {
        if t.is_none() {
            v.push(Violation::Undefined {
                at: format!("({}, {})", ctx.states.name(i / nk), ctx.input.name(i % nk)),
            });
        }
    }
}
