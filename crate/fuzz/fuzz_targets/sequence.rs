#![no_main]

use flatcomp::fixtures::t3;
use flatcomp::text::parse_sequence;
use libfuzzer_sys::fuzz_target;

// Blocks are parsed against the fixed three-point space T3.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_sequence(s, &t3());
    }
});
