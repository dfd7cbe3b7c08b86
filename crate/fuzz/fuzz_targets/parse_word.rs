#![no_main]

use libfuzzer_sys::fuzz_target;
use syncpda::automata::Names;
use syncpda::format::parse_word;

fuzz_target!(|data: &str| {
    let alphabet = Names::from_iter_unique(["a", "b", "#", "$", "idx:1", "sync:a"]).unwrap();
    if let Ok(w) = parse_word(&alphabet, data) {
        assert!(w.iter().all(|&a| a < alphabet.len()));
        let text = alphabet.render(&w).join(" ");
        assert_eq!(parse_word(&alphabet, &text).unwrap(), w);
    }
});
