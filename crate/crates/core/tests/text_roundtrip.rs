use proptest::prelude::*;

use flatcomp::quantale::{Base, QValue, Rational};
use flatcomp::text::{parse_document, parse_qvalue, parse_space, write_filter, write_module, write_space};
use flatcomp::filters::PrincipalFilter;
use flatcomp::text::ParsedModule;
use flatcomp::verify::{left_modules, rplus_spaces, CatalogParams};

fn qvalue() -> impl Strategy<Value = QValue> {
    prop_oneof![
        Just(QValue::Infinity),
        (0i64..1000, 1i64..50).prop_map(|(p, q)| QValue::Finite(Rational::new(p, q))),
    ]
}

proptest! {
    #[test]
    fn rplus_values_round_trip(v in qvalue()) {
        prop_assert_eq!(parse_qvalue(Base::RPlus, &v.to_string()), Ok(v));
    }

    #[test]
    fn garbage_never_panics(s in "\\PC*") {
        let _ = parse_document(&s, &[]);
        let _ = parse_space(&s);
    }

    #[test]
    fn block_like_garbage_never_panics(lines in prop::collection::vec("(space|points|d|module|m|filter|gen|seq|pre|cycle)( [a-c0-9/inf]{1,4}){0,5}", 0..8)) {
        let _ = parse_document(&lines.join("\n"), &[]);
    }
}

#[test]
fn catalog_spaces_and_modules_round_trip() {
    let grid = CatalogParams::default().grid;
    for s in rplus_spaces(&CatalogParams::default()) {
        let again = parse_space(&write_space(&s)).unwrap();
        assert_eq!(again.matrix(), s.matrix(), "{}", s.name());
        for m in left_modules(&s, &grid) {
            let text = write_module("M", &ParsedModule::Left(m.clone()));
            let doc = parse_document(&text, std::slice::from_ref(&s)).unwrap();
            assert_eq!(doc.modules[0].module.values(), m.values());
        }
        let f = PrincipalFilter::new(s.clone(), (0..s.len()).collect()).unwrap();
        let doc = parse_document(&write_filter("F", &f), std::slice::from_ref(&s)).unwrap();
        assert_eq!(doc.filters[0].filter, f);
    }
}
