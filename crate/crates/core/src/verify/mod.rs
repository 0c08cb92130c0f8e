//! Property suites run over generated catalogs of small spaces.
//!
//! Categorical suites are exhaustive over the catalog; only the quantale
//! laws are sampled, from a seeded generator.

mod algebra;
pub mod catalog;
mod completion_suites;
mod filter_suites;
mod flat_suites;

use std::fmt;
use std::sync::Arc;

use crate::enriched::{LeftModule, RightModule, Space};
use crate::flatness::FlatnessError;
use crate::quantale::{Base, QValue};

pub use algebra::{broken_hom, quantale_suite};
pub use catalog::{bool_preorders, rplus_spaces, CatalogParams};

/// Failure messages kept per suite; the count is always exact.
const KEPT_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    /// Set when the suite stopped early on the enumeration budget.
    pub skipped: Option<String>,
}

impl SuiteResult {
    pub fn new(name: &'static str) -> SuiteResult {
        SuiteResult { name, checked: 0, failed: 0, failures: Vec::new(), skipped: None }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    pub fn fail(&mut self, what: impl fmt::Display) {
        self.check(false, || what.to_string());
    }

    /// Records an oracle error: a skip when it is the budget, otherwise a
    /// failure.
    pub fn oracle_error(&mut self, context: impl fmt::Display, e: FlatnessError) {
        match e {
            FlatnessError::Budget { .. } => self.skipped = Some(format!("{context}: {e}")),
            e => self.fail(format_args!("{context}: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.skipped.is_none()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.failed > 0 {
            "FAIL"
        } else if self.skipped.is_some() {
            "SKIP"
        } else {
            "ok"
        };
        write!(f, "{:<13} {:>4}  checked {:>9}  failed {}", self.name, status, self.checked, self.failed)?;
        if let Some(reason) = &self.skipped {
            write!(f, "  (skipped: {reason})")?;
        }
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Inputs shared by all suites.
pub struct Context {
    pub params: CatalogParams,
    pub rplus: Vec<Arc<Space>>,
    pub bools: Vec<Arc<Space>>,
    pub budget: u64,
}

impl Context {
    pub fn new(params: CatalogParams, budget: u64) -> Context {
        let rplus = rplus_spaces(&params);
        let bools = if params.symmetric_only { Vec::new() } else { bool_preorders(params.max_preorder) };
        Context { params, rplus, bools, budget }
    }
}

/// Entries used when enumerating modules: the catalog grid over R̄₊.
pub(crate) fn module_grid(ctx: &Context, base: Base) -> Vec<QValue> {
    match base {
        Base::RPlus => ctx.params.grid.clone(),
        Base::Bool => vec![QValue::FALSE, QValue::TRUE],
    }
}

fn tables(n: usize, grid: &[QValue]) -> Vec<Vec<QValue>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        out.push(idx.iter().map(|&i| grid[i]).collect());
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Every left module with entries in `grid`.
pub fn left_modules(space: &Arc<Space>, grid: &[QValue]) -> Vec<LeftModule> {
    tables(space.len(), grid).into_iter().filter_map(|v| LeftModule::new(space.clone(), v).ok()).collect()
}

/// Every right module with entries in `grid`.
pub fn right_modules(space: &Arc<Space>, grid: &[QValue]) -> Vec<RightModule> {
    tables(space.len(), grid).into_iter().filter_map(|v| RightModule::new(space.clone(), v).ok()).collect()
}

pub(crate) fn show(values: &[QValue]) -> String {
    let v: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", v.join(","))
}

pub const SUITES: [&str; 15] = [
    "quantale",
    "enriched",
    "kan",
    "commut",
    "oracle",
    "hierarchy",
    "reflection",
    "filters",
    "wfhom",
    "constructive",
    "completions",
    "cauchy",
    "sycomp",
    "universal",
    "bridge",
];

/// Runs one suite by name.
pub fn run_suite(name: &str, ctx: &Context) -> Option<SuiteResult> {
    let r = match name {
        "quantale" => quantale_suite(10_000, ctx.params.seed, QValue::hom),
        "enriched" => algebra::enriched_suite(ctx),
        "kan" => algebra::kan_suite(ctx),
        "commut" => algebra::commut_suite(ctx),
        "oracle" => flat_suites::oracle_suite(ctx),
        "hierarchy" => flat_suites::hierarchy_suite(ctx),
        "reflection" => filter_suites::reflection_suite(ctx),
        "filters" => filter_suites::filter_suite(ctx),
        "wfhom" => filter_suites::wfhom_suite(ctx),
        "constructive" => filter_suites::constructive_suite(ctx),
        "completions" => completion_suites::completions_suite(ctx),
        "cauchy" => completion_suites::cauchy_suite(ctx),
        "sycomp" => completion_suites::sycomp_suite(ctx),
        "universal" => completion_suites::universal_suite(ctx),
        "bridge" => completion_suites::bridge_suite(ctx),
        _ => return None,
    };
    Some(r)
}

/// Runs every suite in order.
pub fn run_all(ctx: &Context) -> Vec<SuiteResult> {
    SUITES.iter().map(|name| run_suite(name, ctx).expect("known suite")).collect()
}

/// `0` all passed, `1` some property failed, `3` some suite ran out of
/// budget.
pub fn exit_code(results: &[SuiteResult]) -> i32 {
    if results.iter().any(|r| r.failed > 0) {
        1
    } else if results.iter().any(|r| r.skipped.is_some()) {
        3
    } else {
        0
    }
}
