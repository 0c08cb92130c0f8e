#![no_main]

use flatcomp::quantale::Base;
use flatcomp::text::parse_qvalue;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for base in [Base::RPlus, Base::Bool] {
        if let Ok(v) = parse_qvalue(base, s) {
            assert_eq!(parse_qvalue(base, &v.to_string()), Ok(v));
        }
    }
});
