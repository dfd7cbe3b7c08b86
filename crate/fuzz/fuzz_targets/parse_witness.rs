#![no_main]

use libfuzzer_sys::fuzz_target;
use syncpda::format::parse_witness;

fuzz_target!(|data: &[u8]| {
    if let Ok(w) = parse_witness(data) {
        assert!(!w.verdict.is_positive() || w.word.is_some());
        let again = parse_witness(w.to_json().as_bytes()).expect("serialized witnesses parse");
        assert_eq!(again, w);
    }
});
