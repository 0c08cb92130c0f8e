//! Completions: fixed instances, invariants over the catalog, finite
//! Cauchy completeness, the Hausdorff description, universal properties
//! and the Bool bridge.

use std::sync::Arc;

use crate::completions::{
    bridge_check, check_universal_property, complete, extend_map, incompleteness_witness, is_complete,
    points_included, sycomp_check, Completion, CompletionError, Notion,
};
use crate::enriched::{Map, Space};
use crate::fixtures::{antichain2, chain2, one_point, pair1, t3, z2};
use crate::flatness::{is_p0_flat, is_p1_flat, is_p2_flat};
use crate::quantale::{Base, QValue};

use super::{left_modules, Context, SuiteResult};

fn notions(base: Base) -> &'static [Notion] {
    match base {
        Base::RPlus => &[Notion::P0, Notion::P1, Notion::P2],
        Base::Bool => &Notion::ALL,
    }
}

/// Point counts by brute force: modules over a grid containing every
/// value the flat ones can take, filtered by the closed forms.
fn brute_force_counts(s: &Arc<Space>) -> [usize; 3] {
    let grid: Vec<QValue> = match s.base() {
        Base::RPlus => {
            let mut g: Vec<QValue> = s.matrix().to_vec();
            g.sort_by(|a, b| a.numeric_cmp(*b));
            g.dedup();
            g
        }
        Base::Bool => vec![QValue::FALSE, QValue::TRUE],
    };
    let ms = left_modules(s, &grid);
    [
        ms.iter().filter(|m| is_p0_flat(m)).count(),
        ms.iter().filter(|m| is_p1_flat(m)).count(),
        ms.iter().filter(|m| is_p2_flat(m)).count(),
    ]
}

/// Cut pairs `(L, U)` with `L` the lower bounds of `U` and `U` the upper
/// bounds of `L`, found by trying every pair of subsets.
fn brute_force_cuts(p: &Space) -> usize {
    let n = p.len();
    let set = |mask: usize| (0..n).filter(move |&i| mask & (1 << i) != 0);
    let mut count = 0;
    for l in 0usize..(1 << n) {
        for u in 0usize..(1 << n) {
            let lower = (0..n).filter(|&x| set(u).all(|y| p.arrow(x, y))).fold(0, |m, x| m | (1 << x));
            let upper = (0..n).filter(|&y| set(l).all(|x| p.arrow(x, y))).fold(0, |m, y| m | (1 << y));
            if lower == l && upper == u {
                count += 1;
            }
        }
    }
    count
}

fn size(r: &mut SuiteResult, s: &Arc<Space>, notion: Notion) -> usize {
    match complete(s, notion) {
        Ok(c) => c.result().len(),
        Err(e) => {
            r.fail(format_args!("{} {notion}: {e}", s.name()));
            0
        }
    }
}

fn invariants(r: &mut SuiteResult, s: &Arc<Space>, all: &[(Notion, Completion)]) {
    let name = s.name();
    let get = |n: Notion| all.iter().find(|(k, _)| *k == n).map(|(_, c)| c);
    for (notion, c) in all {
        r.check(c.is_fully_faithful(), || format!("{name} {notion}: embedding not fully faithful"));
        r.check(c.is_separated(), || format!("{name} {notion}: isomorphic points in the result"));
    }
    for (notion, check_as) in [(Notion::P1, Notion::P1), (Notion::P2, Notion::P2), (Notion::FreeBool, Notion::FreeBool), (Notion::Dmn, Notion::FreeBool)] {
        if let Some(c) = get(notion) {
            r.check(is_complete(c.result(), check_as) == Ok(true), || {
                format!("{name} {notion}: result is not {check_as}-complete")
            });
        }
    }
    if let (Some(p0), Some(p1), Some(p2)) = (get(Notion::P0), get(Notion::P1), get(Notion::P2)) {
        r.check(points_included(p0, p2) && points_included(p2, p1), || format!("{name}: P0 ⊆ P2 ⊆ P1 fails"));
    }
    for (a, b) in [(Notion::P1, Notion::DownsetsBool), (Notion::P2, Notion::IdealsBool)] {
        if let (Some(x), Some(y)) = (get(a), get(b)) {
            r.check(points_included(x, y) && points_included(y, x), || format!("{name}: {a} differs from {b}"));
        }
    }
}

/// The fixed instances with independently counted sizes, plus the
/// structural invariants of every completion of every catalog space.
pub(crate) fn completions_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("completions");
    let (t, z, a) = (t3(), z2(), antichain2());
    let expected = [
        (&t, Notion::P1, 7),
        (&t, Notion::P2, 3),
        (&z, Notion::P1, 1),
        (&z, Notion::P2, 1),
        (&a, Notion::FreeBool, 4),
        (&a, Notion::P1, 3),
        (&a, Notion::IdealsBool, 2),
        (&a, Notion::Dmn, 4),
        (&a, Notion::P0, 2),
    ];
    for (s, notion, n) in expected {
        let got = size(&mut r, s, notion);
        r.check(got == n, || format!("{} {notion}: {got} points, expected {n}", s.name()));
    }
    r.check(brute_force_counts(&t) == [3, 7, 3], || format!("T3 brute-force counts {:?}", brute_force_counts(&t)));
    r.check(brute_force_counts(&z) == [1, 1, 1], || format!("Z2 brute-force counts {:?}", brute_force_counts(&z)));
    r.check(brute_force_counts(&a) == [2, 3, 2], || format!("antichain brute-force counts {:?}", brute_force_counts(&a)));
    r.check(brute_force_cuts(&a) == 4, || format!("antichain has {} cuts", brute_force_cuts(&a)));
    r.check(left_modules(&a, &[QValue::FALSE, QValue::TRUE]).len() == 4, || "antichain downsets".into());
    match complete(&t, Notion::P2) {
        Ok(c) => r.check(c.result().is_isomorphic(&t), || "T3 P2 completion not isomorphic to T3".into()),
        Err(e) => r.fail(e),
    }
    r.check(is_complete(&t, Notion::P2) == Ok(true), || "T3 not P2-complete".into());
    r.check(incompleteness_witness(&t, Notion::P1) == Ok(Some("{a,b}".into())), || "T3 P1 witness".into());
    if let (Ok(c), Ok(f)) = (complete(&z, Notion::P2), Map::constant(z.clone(), t.clone(), 1)) {
        r.check(extend_map(&f, &c).map(|m| m.assignment().to_vec()) == Ok(vec![1]), || "Z2 → T3 extension".into());
    }

    for s in ctx.rplus.iter().chain(&ctx.bools) {
        let mut all = Vec::new();
        for &notion in notions(s.base()) {
            match complete(s, notion) {
                Ok(c) => all.push((notion, c)),
                Err(e) => r.fail(format_args!("{} {notion}: {e}", s.name())),
            }
        }
        invariants(&mut r, s, &all);
        if s.base() == Base::Bool {
            let cuts = all.iter().find(|(n, _)| *n == Notion::Dmn).map_or(0, |(_, c)| c.result().len());
            r.check(cuts == brute_force_cuts(s), || format!("{}: {cuts} cuts by closure, {} by pairs", s.name(), brute_force_cuts(s)));
        }
    }
    r
}

/// P2 and P0 completions of a finite space are its zero-quotient.
pub(crate) fn cauchy_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("cauchy");
    for s in ctx.rplus.iter().chain(&ctx.bools) {
        let (q, _) = s.zero_quotient();
        for notion in [Notion::P2, Notion::P0] {
            match complete(s, notion) {
                Ok(c) => r.check(c.result().is_isomorphic(&q), || {
                    format!("{} {notion}: completion not isomorphic to the zero-quotient", s.name())
                }),
                Err(e) => r.fail(format_args!("{} {notion}: {e}", s.name())),
            }
        }
    }
    r
}

/// Closed subsets under the Hausdorff distance match the P1 completion on
/// every symmetric space.
pub(crate) fn sycomp_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("sycomp");
    for s in ctx.rplus.iter().filter(|s| s.is_symmetric()) {
        match sycomp_check(s) {
            Ok(ok) => r.check(ok, || format!("{}: Hausdorff construction differs from P1", s.name())),
            Err(e) => r.fail(format_args!("{}: {e}", s.name())),
        }
    }
    r
}

/// The complete targets used for universal properties: a point, a
/// two-point chain, and the P1 completion of two points at distance one.
pub fn universal_targets() -> Vec<Arc<Space>> {
    let names = vec!["lo".to_string(), "hi".to_string()];
    let d = [[0, 0], [1, 0]];
    let chain = Space::from_fn("chain", Base::RPlus, names, |x, y| QValue::int(d[x][y])).expect("valid chain").into_ref();
    let pair = complete(&pair1(), Notion::P1).expect("pair completes").result().clone();
    vec![one_point(Base::RPlus), chain, pair]
}

/// Every map from every catalog space into each target extends uniquely
/// along the P1, P2 and P0 completions.
pub(crate) fn universal_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("universal");
    let mut spent = 0u64;
    for s in ctx.rplus.iter().filter(|s| s.len() <= 3) {
        for b in universal_targets() {
            for notion in [Notion::P1, Notion::P2, Notion::P0] {
                let left = ctx.budget.saturating_sub(spent);
                match check_universal_property(s, notion, &b, left) {
                    Ok(report) => {
                        spent += report.steps;
                        if report.budget_exhausted {
                            r.skipped = Some(format!("QC_BUDGET of {} steps exhausted at {} into {}", ctx.budget, s.name(), b.name()));
                            return r;
                        }
                        r.check(report.holds(), || format!("{} {notion} into {}: {:?}", s.name(), b.name(), report.failures));
                    }
                    Err(CompletionError::Incomplete { witness }) => {
                        r.fail(format_args!("target {} is not {notion}-complete: {witness}", b.name()))
                    }
                    Err(e) => r.fail(format_args!("{} {notion}: {e}", s.name())),
                }
            }
        }
    }
    r
}

/// Completing an encoded preorder agrees with encoding its completion.
pub(crate) fn bridge_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("bridge");
    let fixed = [one_point(Base::Bool), chain2(), antichain2()];
    for p in ctx.bools.iter().chain(&fixed) {
        for notion in [Notion::P1, Notion::P2] {
            match bridge_check(p, notion) {
                Ok(ok) => r.check(ok, || format!("{} {notion}: routes disagree", p.name())),
                Err(e) => r.fail(format_args!("{} {notion}: {e}", p.name())),
            }
        }
    }
    r
}
