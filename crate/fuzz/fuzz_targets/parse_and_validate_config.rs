#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Anything that parses must survive validation and serialize to an echo
    // that reparses to the identical configuration. serde_json rejects
    // out-of-range number literals, so every parsed float is finite and the
    // 17-significant-digit echo is lossless.
    if let Ok(config) = swapdec::config::ExperimentConfig::from_json_bytes(data) {
        let _ = config.validate();
        let json = config.to_json().expect("parsed config must serialize");
        let again = swapdec::config::ExperimentConfig::from_json_str(&json)
            .expect("config echo must reparse");
        assert_eq!(config, again, "config echo round-trip must be identical");
    }
});
