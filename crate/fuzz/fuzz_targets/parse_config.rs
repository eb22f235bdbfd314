#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Parsing arbitrary bytes must never panic.
    let _ = swapdec::config::ExperimentConfig::from_json_bytes(data);
});
