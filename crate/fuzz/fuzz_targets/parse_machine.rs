#![no_main]

use libfuzzer_sys::fuzz_target;
use syncpda::format::{canonicalize, machine_to_json, parse_machine};

fuzz_target!(|data: &[u8]| {
    let Ok(m) = parse_machine(data) else { return };
    // Anything that parses must survive a round trip unchanged.
    let text = machine_to_json(&m, None);
    let again = parse_machine(text.as_bytes()).expect("serialized machines parse");
    assert_eq!(machine_to_json(&again, None), text);
    assert_eq!(canonicalize(text.as_bytes()).expect("canonical"), text);
});
