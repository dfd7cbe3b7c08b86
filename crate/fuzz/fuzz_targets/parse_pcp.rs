#![no_main]

use libfuzzer_sys::fuzz_target;
use syncpda::reductions::PcpInstance;

// Input is the two tile lists separated by a newline.
fuzz_target!(|data: &str| {
    let Some((a, b)) = data.split_once('\n') else { return };
    if let Ok(p) = PcpInstance::parse(a, b) {
        assert_eq!(p.a().len(), p.b().len());
        assert!(p.a().iter().chain(p.b()).all(|t| !t.is_empty()));
    }
});
