//! `syncpda`: check, search for and decide synchronizing words of
//! automata stored as JSON machine files.
//!
//! Exit codes: 0 yes/found, 3 no, 4 inconclusive, 2 input error,
//! 5 refused.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use syncpda::StackModel;

#[derive(Parser)]
#[command(
    name = "syncpda",
    version,
    about = "Synchronizing words for pushdown, counter and transducer machines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a machine file; print its canonical form.
    Validate {
        file: PathBuf,
        /// Print the canonical document instead of a summary.
        #[arg(long)]
        canonical: bool,
    },
    /// Run a word from one state and print every step.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        from: String,
        /// Whitespace-separated input symbols.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Check whether a word synchronizes the machine.
    CheckWord {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        model: Option<Model>,
        #[arg(long)]
        turns: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Bounded search for a shortest synchronizing word.
    FindWord {
        file: PathBuf,
        #[arg(long)]
        model: Option<Model>,
        #[arg(long)]
        turns: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        /// Transducers only: how far one run's output may run ahead.
        #[arg(long, default_value_t = 64)]
        max_residual: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run an exact procedure, or refuse if none exists for this input.
    Decide {
        file: PathBuf,
        #[arg(long)]
        model: Option<Model>,
        #[arg(long)]
        turns: Option<usize>,
        #[command(flatten)]
        budget: Budget,
        /// Constant `c` of the 1-turn length bound `(m*s)^(c*m)`.
        #[arg(long, default_value_t = 1)]
        bound_exponent: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Build the machines of the reductions.
    Reduce {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Brute-force reference solvers.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
}

#[derive(Subcommand)]
pub enum Reduction {
    /// One of the two 1-turn acceptors of a PCP instance.
    PcpAcceptors {
        #[command(flatten)]
        pcp: PcpArgs,
        /// Which list the acceptor pushes.
        #[arg(long, value_parser = ["a", "b"], default_value = "a")]
        which: String,
        #[command(flatten)]
        out: Output,
    },
    /// Combine two acceptors into a synchronization gadget.
    SyncGadget {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The 0-turn DPDA for the same-stack model.
    #[command(name = "pcp-0turn-same")]
    Pcp0turnSame {
        #[command(flatten)]
        pcp: PcpArgs,
        #[command(flatten)]
        out: Output,
    },
    /// The 0-turn counter automaton for a DFA and a target subset.
    #[command(name = "dfa-subset-0turn")]
    DfaSubset0turn {
        file: PathBuf,
        /// Whitespace-separated state names.
        #[arg(long)]
        subset: String,
        #[command(flatten)]
        out: Output,
    },
    /// The sequential transducer of a PCP instance.
    PcpTransducer {
        #[command(flatten)]
        pcp: PcpArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
pub enum Oracle {
    /// Shortest, lexicographically least PCP solution.
    Pcp {
        #[command(flatten)]
        pcp: PcpArgs,
        #[arg(long, default_value_t = 8)]
        max_indices: usize,
    },
    /// Shortest synchronizing word of a DFA by subset search.
    ShortestSync { file: PathBuf },
}

#[derive(Args)]
pub struct PcpArgs {
    /// Comma-separated tiles of list A, e.g. `10,1`.
    #[arg(long = "a")]
    pub a: String,
    /// Comma-separated tiles of list B, e.g. `1,01`.
    #[arg(long = "b")]
    pub b: String,
}

#[derive(Args)]
pub struct Budget {
    #[arg(long, default_value_t = 32)]
    pub max_len: usize,
    #[arg(long, env = "SYNCPDA_MAX_NODES", default_value_t = 200_000)]
    pub max_nodes: usize,
}

#[derive(Args)]
pub struct Output {
    /// Write the JSON result here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Model {
    Empty,
    Same,
    #[value(alias = "arb")]
    Arbitrary,
}

impl From<Model> for StackModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Empty => StackModel::Empty,
            Model::Same => StackModel::Same,
            Model::Arbitrary => StackModel::Arbitrary,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("syncpda: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
