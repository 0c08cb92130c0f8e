use flatcomp::flatness::budget_from_env;
use flatcomp::verify::{exit_code, run_all, CatalogParams, Context, SUITES};

#[test]
fn every_suite_passes_on_the_default_catalog() {
    let ctx = Context::new(CatalogParams::default(), budget_from_env());
    let results = run_all(&ctx);
    assert_eq!(results.len(), SUITES.len());
    for r in &results {
        println!("{r}");
    }
    assert_eq!(exit_code(&results), 0);
}

#[test]
fn symmetric_catalog_passes() {
    let params = CatalogParams { symmetric_only: true, ..CatalogParams::default() };
    let ctx = Context::new(params, budget_from_env());
    assert!(ctx.rplus.iter().all(|s| s.is_symmetric()));
    assert_eq!(exit_code(&run_all(&ctx)), 0);
}
