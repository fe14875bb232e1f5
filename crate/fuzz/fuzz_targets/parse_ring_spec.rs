#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Ring spec parsing plus context construction (modulus validation,
    // Frobenius order checks) must never panic on any input.
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = skewlab::parse::parse_ring_spec(s);
    }
});
