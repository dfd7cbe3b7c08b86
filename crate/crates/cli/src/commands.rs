use std::fmt;
use std::path::Path;

use serde_json::json;
use syncpda::automata::{Dca, Machine, StackModel, SymbolId};
use syncpda::blind_counter::{dbca_sync_bounded, decide_dbca_arbitrary, dpbca_sync_bounded};
use syncpda::dfa_sync::{careful_sync_capped, find_sync_word_greedy, is_synchronizable_dfa, shortest_sync_word_capped};
use syncpda::format::{machine_to_json, parse_machine, parse_word, Provenance, Verdict, WitnessFile};
use syncpda::pda_sync::sync_search_bounded;
use syncpda::reductions::{self, pcp_brute_solve, PcpInstance};
use syncpda::search::{Limits, SearchOutcome};
use syncpda::transducer_sync::{trace_sync_search_bounded, TraceLimits};
use syncpda::turn::{decide_0turn_capped, decide_1turn_dca, Decision};
use syncpda::Error;

use crate::{Budget, Command, Oracle, Output, PcpArgs, Reduction};

pub enum CliError {
    Input(String),
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Refused(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Refused(m) => write!(f, "refused: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Refused(m) => CliError::Refused(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Validate { file, canonical } => validate(&file, canonical),
        Command::Simulate { file, from, word } => simulate(&file, &from, &word),
        Command::CheckWord {
            file,
            word,
            model,
            turns,
            out,
        } => {
            let m = load(&file)?;
            let w = parse_word(m.input(), &word)?;
            let witness = WitnessFile::for_word(&m, &w, model.map(Into::into), turns, Verdict::Found)?;
            if let Some(f) = &witness.failure {
                eprintln!("word does not synchronize: {f}");
            }
            emit_witness(&witness, &out)
        }
        Command::FindWord {
            file,
            model,
            turns,
            budget,
            max_residual,
            out,
        } => find_word(&load(&file)?, model.map(Into::into), turns, &budget, max_residual, &out),
        Command::Decide {
            file,
            model,
            turns,
            budget,
            bound_exponent,
            out,
        } => decide(
            &load(&file)?,
            model.map(Into::into),
            turns,
            &budget,
            bound_exponent,
            &out,
        ),
        Command::Reduce { reduction } => reduce(reduction),
        Command::Oracle { oracle } => run_oracle(oracle),
    }
}

fn load(path: &Path) -> Result<Machine> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_machine(&bytes).map_err(|d| CliError::Input(format!("{}: {d}", path.display())))
}

fn write_out(text: &str, out: &Output) -> Result<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_witness(w: &WitnessFile, out: &Output) -> Result<i32> {
    write_out(&w.to_json(), out)?;
    Ok(w.verdict.exit_code())
}

fn limits(b: &Budget) -> Limits {
    Limits::new(b.max_len, b.max_nodes)
}

fn require_model(model: Option<StackModel>, m: &Machine) -> Result<StackModel> {
    model.ok_or_else(|| CliError::Input(format!("--model is required for a {}", m.kind())))
}

fn validate(file: &Path, canonical: bool) -> Result<i32> {
    let m = load(file)?;
    if canonical {
        print!("{}", machine_to_json(&m, None));
    } else {
        println!(
            "valid {}: {} states, {} input symbols",
            m.kind(),
            m.states().len(),
            m.input().len()
        );
    }
    Ok(0)
}

fn simulate(file: &Path, from: &str, word: &str) -> Result<i32> {
    let m = load(file)?;
    let q = m
        .states()
        .get(from)
        .ok_or_else(|| CliError::Input(format!("unknown state `{from}`")))?;
    let w = parse_word(m.input(), word)?;
    let states = m.states();
    let mut steps = Vec::new();
    match &m {
        Machine::Dfa(d) => {
            let mut s = q;
            steps.push(json!({ "state": states.name(s) }));
            for &a in &w {
                s = d.next(s, a);
                steps.push(json!({ "letter": m.input().name(a), "state": states.name(s) }));
            }
        }
        Machine::PartialDfa(d) => {
            let mut s = q;
            steps.push(json!({ "state": states.name(s) }));
            for &a in &w {
                match d.next(s, a) {
                    Some(t) => s = t,
                    None => {
                        steps.push(json!({ "letter": m.input().name(a), "undefined": true }));
                        break;
                    }
                }
                steps.push(json!({ "letter": m.input().name(a), "state": states.name(s) }));
            }
        }
        Machine::Dbca(d) => {
            let (mut s, mut c) = (q, 0i64);
            steps.push(json!({ "state": states.name(s), "counter": c }));
            for &a in &w {
                let (t, dc) = d.next(s, a);
                s = t;
                c += dc as i64;
                steps.push(json!({ "letter": m.input().name(a), "state": states.name(s), "counter": c }));
            }
        }
        Machine::Transducer(t) => {
            let mut s = q;
            steps.push(json!({ "state": states.name(s) }));
            for &a in &w {
                let (n, o) = t.next(s, a);
                s = n;
                steps.push(json!({
                    "letter": m.input().name(a),
                    "state": states.name(s),
                    "output": t.output().render(o),
                }));
            }
        }
        Machine::Dpda(_) | Machine::Dca(_) | Machine::Dpbca(_) => {
            let d = m.as_dpda().expect("pushdown kinds");
            let trace = d.run(q, &w);
            for (i, c) in trace.configs.iter().enumerate() {
                let mut step = json!({ "state": states.name(c.state), "stack": d.render_stack(&c.stack) });
                if i > 0 {
                    step["letter"] = json!(m.input().name(w[i - 1]));
                }
                steps.push(step);
            }
            if let Some(i) = trace.stuck_at {
                steps.push(json!({ "letter": m.input().name(w[i]), "stuck": true }));
            }
        }
    }
    let doc = json!({ "kind": m.kind().tag(), "from": from, "steps": steps });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(0)
}

/// Witness file for a search outcome whose words are resolved by `word`.
fn outcome_file<W>(
    m: &Machine,
    outcome: SearchOutcome<W>,
    model: Option<StackModel>,
    turns: Option<usize>,
    word: impl Fn(&W) -> Vec<SymbolId>,
) -> Result<WitnessFile> {
    Ok(match outcome {
        SearchOutcome::Found(w) => WitnessFile::for_word(m, &word(&w), model, turns, Verdict::Found)?,
        SearchOutcome::Exhausted(stats) => {
            let mut f = WitnessFile::bare(m, Verdict::Exhausted, model, turns);
            f.stats = Some(stats);
            f.reason = Some("no synchronizing word within the search limits".into());
            f
        }
        SearchOutcome::ProvedNo { reason } => {
            let mut f = WitnessFile::bare(m, Verdict::ProvedNo, model, turns);
            f.reason = Some(reason);
            f
        }
    })
}

/// Result of a subset-lattice procedure: exact unless the node cap is hit.
fn subset_file(
    m: &Machine,
    r: syncpda::Result<Option<Vec<SymbolId>>>,
    positive: Verdict,
    model: Option<StackModel>,
    turns: Option<usize>,
) -> Result<WitnessFile> {
    Ok(match r {
        Ok(Some(w)) => WitnessFile::for_word(m, &w, model, turns, positive)?,
        Ok(None) => {
            let mut f = WitnessFile::bare(m, Verdict::No, model, turns);
            f.reason = Some("no synchronizing word exists".into());
            f
        }
        Err(Error::BudgetExceeded(msg)) => {
            let mut f = WitnessFile::bare(m, Verdict::Exhausted, model, turns);
            f.reason = Some(msg);
            f
        }
        Err(e) => return Err(e.into()),
    })
}

fn find_word(
    m: &Machine,
    model: Option<StackModel>,
    turns: Option<usize>,
    budget: &Budget,
    max_residual: usize,
    out: &Output,
) -> Result<i32> {
    if turns.is_some() && m.as_dpda().is_none() {
        return Err(CliError::Input(format!(
            "--turns applies to pushdown machines, not to a {}",
            m.kind()
        )));
    }
    let limits = limits(budget);
    let file = match m {
        Machine::Dfa(d) => subset_file(
            m,
            shortest_sync_word_capped(d, budget.max_nodes),
            Verdict::Found,
            None,
            None,
        )?,
        Machine::PartialDfa(d) => subset_file(m, careful_sync_capped(d, budget.max_nodes), Verdict::Found, None, None)?,
        Machine::Transducer(t) => {
            let tl = TraceLimits::new(budget.max_len, budget.max_nodes, max_residual);
            outcome_file(m, trace_sync_search_bounded(t, tl), None, None, |w| w.word.clone())?
        }
        Machine::Dbca(d) => {
            let model = require_model(model, m)?;
            outcome_file(m, dbca_sync_bounded(d, model, limits), Some(model), None, |w| {
                w.word.clone()
            })?
        }
        Machine::Dpbca(d) if turns.is_none() => {
            let model = require_model(model, m)?;
            outcome_file(m, dpbca_sync_bounded(d, model, limits)?, Some(model), None, |w| {
                w.word.clone()
            })?
        }
        Machine::Dpda(_) | Machine::Dca(_) | Machine::Dpbca(_) => {
            let model = require_model(model, m)?;
            let d = m.as_dpda().expect("pushdown kinds");
            outcome_file(
                m,
                sync_search_bounded(d, model, limits, turns),
                Some(model),
                turns,
                |w| w.word.clone(),
            )?
        }
    };
    emit_witness(&file, out)
}

fn decide(
    m: &Machine,
    model: Option<StackModel>,
    turns: Option<usize>,
    budget: &Budget,
    exponent: u32,
    out: &Output,
) -> Result<i32> {
    let refuse = |msg: &str| -> Result<i32> { Err(CliError::Refused(msg.to_string())) };
    if turns.is_some() && m.as_dpda().is_none() {
        return Err(CliError::Input(format!(
            "--turns applies to pushdown machines, not to a {}",
            m.kind()
        )));
    }
    let file = match m {
        Machine::Dfa(d) => {
            if is_synchronizable_dfa(d) {
                let w = find_sync_word_greedy(d).expect("synchronizable");
                WitnessFile::for_word(m, &w, None, None, Verdict::Yes)?
            } else {
                WitnessFile::bare(m, Verdict::No, None, None)
            }
        }
        Machine::PartialDfa(d) => subset_file(m, careful_sync_capped(d, budget.max_nodes), Verdict::Yes, None, None)?,
        Machine::Transducer(_) => {
            return refuse(
                "trace-synchronization of sequential transducers is undecidable; use `find-word` for a bounded search",
            )
        }
        Machine::Dbca(d) => match require_model(model, m)? {
            StackModel::Arbitrary => match decide_dbca_arbitrary(d) {
                Decision::Yes(w) => WitnessFile::for_word(m, &w, Some(StackModel::Arbitrary), None, Verdict::Yes)?,
                Decision::No => WitnessFile::bare(m, Verdict::No, Some(StackModel::Arbitrary), None),
            },
            _ => {
                return refuse(
                    "synchronization of blind counter automata is decidable in this model only through \
                     multi-counter emptiness, which is not implemented exactly; use `find-word`",
                )
            }
        },
        Machine::Dpda(_) | Machine::Dca(_) | Machine::Dpbca(_) => {
            let model = require_model(model, m)?;
            let d = m.as_dpda().expect("pushdown kinds");
            let dca: Option<&Dca> = m.as_dca();
            match turns {
                Some(0) => match decide_0turn_capped(d, model, budget.max_nodes) {
                    Ok(Decision::Yes(w)) => WitnessFile::for_word(m, &w.word, Some(model), Some(0), Verdict::Yes)?,
                    Ok(Decision::No) => WitnessFile::bare(m, Verdict::No, Some(model), Some(0)),
                    Err(e) => subset_file(m, Err(e), Verdict::Yes, Some(model), Some(0))?,
                },
                Some(1) if dca.is_some() => {
                    match decide_1turn_dca(dca.expect("checked"), model, limits(budget), exponent) {
                        Ok((outcome, report)) => {
                            let mut f = outcome_file(m, outcome, Some(model), Some(1), |w| w.word.clone())?;
                            f.bound = Some(report);
                            f
                        }
                        Err(e) => subset_file(m, Err(e), Verdict::Yes, Some(model), Some(1))?,
                    }
                }
                Some(1) => return refuse(
                    "1-turn synchronization of DPDAs is undecidable in every stack model; use `find-word --turns 1`",
                ),
                Some(_) => {
                    return refuse(
                        "no decision procedure is known for synchronization with more than one turn; use `find-word`",
                    )
                }
                None if matches!(m, Machine::Dpbca(_)) => {
                    return refuse(
                        "synchronization of partially blind counter automata is decidable, but only through \
                         vector addition system reachability, which is not implemented; use `find-word`",
                    )
                }
                None if dca.is_some() => {
                    return refuse(
                        "synchronization of counter automata is undecidable in every stack model; use `find-word`",
                    )
                }
                None => return refuse("synchronization of DPDAs is undecidable in every stack model; use `find-word`"),
            }
        }
    };
    emit_witness(&file, out)
}

fn pcp(args: &PcpArgs) -> Result<PcpInstance> {
    Ok(PcpInstance::parse(&args.a, &args.b)?)
}

fn emit_machine(m: &Machine, p: Provenance, out: &Output) -> Result<i32> {
    write_out(&machine_to_json(m, Some(p)), out)?;
    Ok(0)
}

fn reduce(r: Reduction) -> Result<i32> {
    match r {
        Reduction::PcpAcceptors { pcp: args, which, out } => {
            let p = pcp(&args)?;
            let (ma, mb) = reductions::pcp_to_1turn_acceptors(&p);
            let m = if which == "a" { ma } else { mb };
            emit_machine(&Machine::Dpda(m), reductions::acceptors_provenance(&p, &which), &out)
        }
        Reduction::SyncGadget { first, second, out } => {
            let (m1, m2) = (load(&first)?, load(&second)?);
            let (Some(d1), Some(d2)) = (m1.as_dpda(), m2.as_dpda()) else {
                return Err(CliError::Input("the gadget combines two pushdown machines".into()));
            };
            let g = reductions::combine_sync_gadget(d1, d2)?;
            let source = json!({ "first": file_label(&first), "second": file_label(&second) });
            let machine = match Dca::new(g.clone()) {
                Ok(dca) => Machine::Dca(dca),
                Err(_) => Machine::Dpda(g),
            };
            emit_machine(&machine, reductions::gadget_provenance(source), &out)
        }
        Reduction::Pcp0turnSame { pcp: args, out } => {
            let p = pcp(&args)?;
            emit_machine(
                &Machine::Dpda(reductions::pcp_to_0turn_same(&p)),
                reductions::same_provenance(&p),
                &out,
            )
        }
        Reduction::DfaSubset0turn { file, subset, out } => {
            let m = load(&file)?;
            let Machine::Dfa(d) = &m else {
                return Err(CliError::Input(format!("expected a dfa, got a {}", m.kind())));
            };
            let s = d
                .states()
                .resolve(&syncpda::automata::tokenize_word(&subset))
                .map_err(|q| CliError::Input(format!("unknown state `{q}`")))?;
            let dca = reductions::dfa_subset_to_0turn_dca(d, &s)?;
            emit_machine(&Machine::Dca(dca), reductions::subset_provenance(d, &s), &out)
        }
        Reduction::PcpTransducer { pcp: args, out } => {
            let p = pcp(&args)?;
            emit_machine(
                &Machine::Transducer(reductions::pcp_to_transducer(&p)),
                reductions::transducer_provenance(&p),
                &out,
            )
        }
    }
}

fn file_label(p: &Path) -> String {
    p.file_name()
        .map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn run_oracle(o: Oracle) -> Result<i32> {
    match o {
        Oracle::Pcp { pcp: args, max_indices } => {
            let p = pcp(&args)?;
            let sol = pcp_brute_solve(&p, max_indices);
            let doc = match &sol {
                Some(s) => json!({ "solution": s, "word": p.top(s) }),
                None => json!({ "solution": null, "max_indices": max_indices }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            Ok(if sol.is_some() { 0 } else { 4 })
        }
        Oracle::ShortestSync { file } => {
            let m = load(&file)?;
            let Machine::Dfa(d) = &m else {
                return Err(CliError::Input(format!("expected a dfa, got a {}", m.kind())));
            };
            let w = shortest_sync_word_capped(d, syncpda::dfa_sync::DEFAULT_SUBSET_CAP)?;
            let doc = match &w {
                Some(w) => json!({ "word": m.input().render(w), "length": w.len() }),
                None => json!({ "word": null }),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            Ok(if w.is_some() { 0 } else { 3 })
        }
    }
}
