use std::fmt;

use super::names::{Names, StateId, SymbolId};
use super::validate::Violation;
use crate::error::{Error, Result};

/// Index of a stack symbol. Index [`BOTTOM`] is always the bottom symbol.
pub type StackSym = usize;

/// The bottom-of-stack symbol occupies index 0 of every stack alphabet.
pub const BOTTOM: StackSym = 0;

/// Name of the bottom symbol in the exchange format.
pub const BOTTOM_NAME: &str = "bot";

/// Right-hand side of a pushdown transition: the target state and the
/// string that replaces the read top symbol (leftmost = deepest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub target: StateId,
    pub push: Vec<StackSym>,
}

impl Transition {
    pub fn new(target: StateId, push: Vec<StackSym>) -> Self {
        Transition { target, push }
    }

    /// Change in stack height caused by this transition.
    pub fn height_delta(&self) -> isize {
        self.push.len() as isize - 1
    }
}

/// A deterministic real-time pushdown automaton with a total transition
/// table over (state, input symbol, top-of-stack symbol).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpda {
    pub(crate) states: Names,
    pub(crate) input: Names,
    pub(crate) stack: Names,
    pub(crate) delta: Vec<Transition>,
    pub(crate) initial: Option<StateId>,
    pub(crate) finals: Vec<StateId>,
}

impl Dpda {
    pub fn states(&self) -> &Names {
        &self.states
    }

    pub fn input(&self) -> &Names {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &Names {
        &self.stack
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.input.len()
    }

    pub fn num_stack_symbols(&self) -> usize {
        self.stack.len()
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    #[inline]
    pub fn transition(&self, q: StateId, a: SymbolId, top: StackSym) -> &Transition {
        let k = self.input.len();
        let g = self.stack.len();
        &self.delta[(q * k + a) * g + top]
    }

    /// Applies one step in place. Returns `false` (leaving `config`
    /// untouched) when the stack is empty, i.e. the run is stuck.
    #[inline]
    pub(crate) fn apply(&self, config: &mut Configuration, a: SymbolId) -> bool {
        let Some(&top) = config.stack.last() else {
            return false;
        };
        let t = self.transition(config.state, a, top);
        config.stack.pop();
        config.stack.extend_from_slice(&t.push);
        config.state = t.target;
        true
    }

    /// One application of the step rule. `Ok(None)` is the stuck outcome
    /// (the bottom symbol was popped earlier); malformed configurations
    /// are an error.
    pub fn step(&self, config: &Configuration, a: SymbolId) -> Result<Option<Configuration>> {
        self.check_configuration(config)?;
        if a >= self.input.len() {
            return Err(Error::UnknownSymbol(format!("#{a}")));
        }
        let mut next = config.clone();
        Ok(self.apply(&mut next, a).then_some(next))
    }

    pub fn check_configuration(&self, config: &Configuration) -> Result<()> {
        if config.state >= self.states.len() {
            return Err(Error::MalformedConfiguration(format!(
                "state index {} out of range",
                config.state
            )));
        }
        if let Some(&s) = config.stack.iter().find(|&&s| s >= self.stack.len()) {
            return Err(Error::MalformedConfiguration(format!(
                "stack symbol index {s} out of range"
            )));
        }
        if !config.stack.is_empty() {
            if config.stack[0] != BOTTOM {
                return Err(Error::MalformedConfiguration(
                    "the bottom symbol must be the first stack symbol".into(),
                ));
            }
            if config.stack[1..].contains(&BOTTOM) {
                return Err(Error::MalformedConfiguration(
                    "the bottom symbol occurs above the first position".into(),
                ));
            }
        }
        Ok(())
    }

    /// The run induced by `word` from `(start, ⊥)`.
    pub fn run(&self, start: StateId, word: &[SymbolId]) -> RunTrace {
        let mut configs = Vec::with_capacity(word.len() + 1);
        let mut cur = Configuration::initial(start);
        configs.push(cur.clone());
        let mut stuck_at = None;
        for (i, &a) in word.iter().enumerate() {
            if !self.apply(&mut cur, a) {
                stuck_at = Some(i);
                break;
            }
            configs.push(cur.clone());
        }
        RunTrace {
            start,
            word: word.to_vec(),
            configs,
            stuck_at,
        }
    }

    /// Final configuration of the run, or `None` if it got stuck.
    pub fn run_to_end(&self, start: StateId, word: &[SymbolId]) -> Option<Configuration> {
        let mut cur = Configuration::initial(start);
        for &a in word {
            if !self.apply(&mut cur, a) {
                return None;
            }
        }
        Some(cur)
    }

    /// Whether every transition leaves the stack unchanged.
    pub fn is_stack_free(&self) -> bool {
        let g = self.stack.len();
        self.delta
            .iter()
            .enumerate()
            .all(|(i, t)| t.push.len() == 1 && t.push[0] == i % g)
    }

    pub fn render_stack(&self, stack: &[StackSym]) -> Vec<String> {
        self.stack.render(stack)
    }

    pub fn render_config(&self, c: &Configuration) -> String {
        let stack: Vec<String> = c
            .stack
            .iter()
            .map(|&s| {
                if s == BOTTOM {
                    "⊥".to_string()
                } else {
                    self.stack.name(s).to_string()
                }
            })
            .collect();
        format!("({}, {})", self.states.name(c.state), stack.join(" "))
    }

    /// Number of non-bottom stack symbols.
    pub fn counter_symbols(&self) -> usize {
        self.stack.len() - 1
    }
}

/// Incremental construction of a [`Dpda`]; undefined slots must be filled
/// before [`DpdaBuilder::build`].
#[derive(Clone, Debug)]
pub struct DpdaBuilder {
    states: Names,
    input: Names,
    stack: Names,
    delta: Vec<Option<Transition>>,
    initial: Option<StateId>,
    finals: Vec<StateId>,
}

impl DpdaBuilder {
    /// `stack` must list the non-bottom symbols; the bottom symbol is
    /// inserted at index 0.
    pub fn new<S: AsRef<str>>(states: Names, input: Names, stack: &[S]) -> Self {
        let mut st = Names::new();
        st.push(BOTTOM_NAME);
        for s in stack {
            st.push(s.as_ref());
        }
        let n = states.len() * input.len() * st.len();
        DpdaBuilder {
            states,
            input,
            stack: st,
            delta: vec![None; n],
            initial: None,
            finals: Vec::new(),
        }
    }

    pub fn states(&self) -> &Names {
        &self.states
    }

    pub fn input(&self) -> &Names {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &Names {
        &self.stack
    }

    pub fn state(&self, name: &str) -> StateId {
        self.states
            .get(name)
            .unwrap_or_else(|| panic!("unknown state `{name}`"))
    }

    pub fn symbol(&self, name: &str) -> SymbolId {
        self.input
            .get(name)
            .unwrap_or_else(|| panic!("unknown symbol `{name}`"))
    }

    pub fn stack_symbol(&self, name: &str) -> StackSym {
        self.stack
            .get(name)
            .unwrap_or_else(|| panic!("unknown stack symbol `{name}`"))
    }

    fn slot(&self, q: StateId, a: SymbolId, top: StackSym) -> usize {
        (q * self.input.len() + a) * self.stack.len() + top
    }

    pub fn set(&mut self, q: StateId, a: SymbolId, top: StackSym, target: StateId, push: Vec<StackSym>) {
        let i = self.slot(q, a, top);
        self.delta[i] = Some(Transition::new(target, push));
    }

    /// Sets the transition only if the slot is still undefined.
    pub fn set_default(&mut self, q: StateId, a: SymbolId, top: StackSym, target: StateId, push: Vec<StackSym>) {
        let i = self.slot(q, a, top);
        if self.delta[i].is_none() {
            self.delta[i] = Some(Transition::new(target, push));
        }
    }

    pub fn is_set(&self, q: StateId, a: SymbolId, top: StackSym) -> bool {
        self.delta[self.slot(q, a, top)].is_some()
    }

    /// Fills every undefined slot with `f(state, symbol, top)`.
    pub fn fill_undefined(&mut self, mut f: impl FnMut(StateId, SymbolId, StackSym) -> Transition) {
        for q in 0..self.states.len() {
            for a in 0..self.input.len() {
                for g in 0..self.stack.len() {
                    let i = self.slot(q, a, g);
                    if self.delta[i].is_none() {
                        self.delta[i] = Some(f(q, a, g));
                    }
                }
            }
        }
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.initial = Some(q);
        self
    }

    pub fn finals(&mut self, finals: Vec<StateId>) -> &mut Self {
        self.finals = finals;
        self
    }

    pub fn build(self) -> Result<Dpda> {
        let mut violations = Vec::new();
        let mut delta = Vec::with_capacity(self.delta.len());
        let g = self.stack.len();
        let k = self.input.len();
        for (i, t) in self.delta.into_iter().enumerate() {
            let top = i % g;
            let a = (i / g) % k;
            let q = i / (g * k);
            let loc = || {
                format!(
                    "({}, {}, {})",
                    self.states.name(q),
                    self.input.name(a),
                    self.stack.name(top)
                )
            };
            match t {
                None => violations.push(Violation::Undefined { at: loc() }),
                Some(t) => {
                    if let Err(reason) = bottom_discipline(top, &t.push) {
                        violations.push(Violation::BottomDiscipline { at: loc(), reason });
                    }
                    delta.push(t);
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Dpda {
            states: self.states,
            input: self.input,
            stack: self.stack,
            delta,
            initial: self.initial,
            finals: self.finals,
        })
    }
}

/// Checks that the bottom symbol occurs in `push` only as its first symbol
/// and only when the read symbol was the bottom symbol.
pub(crate) fn bottom_discipline(top: StackSym, push: &[StackSym]) -> std::result::Result<(), &'static str> {
    if push.iter().skip(1).any(|&s| s == BOTTOM) {
        return Err("bottom symbol occurs past the first position of the pushed string");
    }
    if push.first() == Some(&BOTTOM) && top != BOTTOM {
        return Err("bottom symbol pushed although the read symbol is not the bottom");
    }
    if top == BOTTOM && !push.is_empty() && push[0] != BOTTOM {
        return Err("bottom symbol replaced by a non-bottom symbol");
    }
    Ok(())
}

/// A state together with a stack, leftmost symbol deepest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Configuration {
    pub state: StateId,
    pub stack: Vec<StackSym>,
}

impl Configuration {
    pub fn new(state: StateId, stack: Vec<StackSym>) -> Self {
        Configuration { state, stack }
    }

    /// `(q, ⊥)`.
    pub fn initial(state: StateId) -> Self {
        Configuration {
            state,
            stack: vec![BOTTOM],
        }
    }

    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty_stack(&self) -> bool {
        self.stack.len() == 1 && self.stack[0] == BOTTOM
    }

    /// The bottom symbol has been popped; any further step is stuck.
    pub fn is_dead(&self) -> bool {
        self.stack.is_empty()
    }
}

/// The sequence of configurations a word induces from one start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub start: StateId,
    pub word: Vec<SymbolId>,
    pub configs: Vec<Configuration>,
    /// Index of the letter the run could not read because the bottom
    /// symbol had already been popped.
    pub stuck_at: Option<usize>,
}

impl RunTrace {
    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("a trace has at least one configuration")
    }

    pub fn heights(&self) -> Vec<usize> {
        self.configs.iter().map(Configuration::height).collect()
    }

    pub fn is_stuck(&self) -> bool {
        self.stuck_at.is_some()
    }

    /// Number of strokes and turns; errors on a stuck trace.
    pub fn strokes(&self) -> Result<Strokes> {
        stroke_decomposition(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Strokes {
    pub strokes: usize,
    pub turns: usize,
}

pub fn stroke_decomposition(trace: &RunTrace) -> Result<Strokes> {
    if let Some(i) = trace.stuck_at {
        return Err(Error::StuckTrace(i));
    }
    Ok(strokes_of_heights(&trace.heights()))
}

/// Minimal number of strokes covering a height sequence.
pub fn strokes_of_heights(heights: &[usize]) -> Strokes {
    let mut tracker = StrokeTracker::default();
    for w in heights.windows(2) {
        tracker.record(w[1] as isize - w[0] as isize);
    }
    Strokes {
        strokes: tracker.strokes(),
        turns: tracker.turns(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    #[default]
    Flat,
    Up,
    Down,
}

/// Greedy online stroke counter: a new stroke opens exactly when a height
/// change contradicts the direction of the current stroke.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrokeTracker {
    turns: u32,
    dir: Direction,
}

impl StrokeTracker {
    pub fn record(&mut self, delta: isize) {
        let d = match delta.signum() {
            0 => return,
            1 => Direction::Up,
            _ => Direction::Down,
        };
        match self.dir {
            Direction::Flat => self.dir = d,
            cur if cur != d => {
                self.turns += 1;
                self.dir = d;
            }
            _ => {}
        }
    }

    pub fn strokes(&self) -> usize {
        self.turns as usize + 1
    }

    pub fn turns(&self) -> usize {
        self.turns as usize
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.state, self.stack)
    }
}
