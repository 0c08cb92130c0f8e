#![no_main]

use flatcomp::text::{parse_space, write_space};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(space) = parse_space(s) {
        let _ = space.violations();
        let again = parse_space(&write_space(&space)).expect("written space parses");
        assert_eq!(again.matrix(), space.matrix());
    }
});
