//! Replays the fuzz corpus seeds through the parser entry points.

use std::fs;
use std::path::Path;

use flatcomp::fixtures::t3;
use flatcomp::quantale::Base;
use flatcomp::text::{parse_document, parse_filter, parse_module, parse_qvalue, parse_sequence, parse_space};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn seeds_parse() {
    for s in seeds("qvalue") {
        assert!(parse_qvalue(Base::RPlus, &s).is_ok(), "{s}");
    }
    for s in seeds("space") {
        assert!(parse_space(&s).unwrap().violations().is_empty(), "{s}");
    }
    for s in seeds("document") {
        parse_document(&s, &[]).unwrap();
    }
    let t = t3();
    for s in seeds("module") {
        parse_module(&s, &t).unwrap();
    }
    for s in seeds("filter") {
        parse_filter(&s, &t).unwrap();
    }
    for s in seeds("sequence") {
        parse_sequence(&s, &t).unwrap();
    }
}
