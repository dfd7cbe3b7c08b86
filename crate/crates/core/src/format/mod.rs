//! JSON exchange formats for machines and witnesses.

mod machine_file;
mod witness_file;

pub use machine_file::{
    canonicalize, machine_to_json, parse_machine, parse_word, to_machine_file, Diagnostics, MachineFile, Provenance,
    TransitionRecord, MACHINE_FORMAT,
};
pub use witness_file::{parse_witness, verify_witness, Verdict, WitnessFile, WITNESS_FORMAT};
