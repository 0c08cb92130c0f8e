//! Filters against modules: the reflection laws, the filter hierarchy,
//! distances between filters and the sequence constructions.

use std::sync::Arc;

use crate::enriched::{presheaf_hom, LeftModule, Space};
use crate::filters::{
    charffil_finite_check, closure, colimit_closed, converges, converges_via_module, definitional, fac22_check,
    filter_morphism, filter_of_module, interpolate_sequences, is_cauchy, is_closed, is_flat, is_weakly_flat,
    liminf_f_check, m_minus, m_plus, neighborhood, nonempty_subsets, representative, separating_sequence,
    sup_filters, wf_hom_distance, zoi_check, EvPeriodicSequence, FilterError, PrincipalFilter,
};
use crate::flatness::{is_p0_flat, is_p1_flat, is_p2_flat};
use crate::quantale::Base;

use super::{left_modules, module_grid, right_modules, show, Context, SuiteResult};

fn filters_on(s: &Arc<Space>) -> Vec<PrincipalFilter> {
    nonempty_subsets(s.len()).into_iter().map(|b| PrincipalFilter::new(s.clone(), b).expect("non-empty")).collect()
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Ordered pairs of non-empty subsets of `b` whose union is `b`.
fn two_splits(b: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let parts: Vec<Vec<usize>> =
        nonempty_subsets(b.len()).into_iter().map(|ix| ix.into_iter().map(|i| b[i]).collect()).collect();
    let mut out = Vec::new();
    for x in &parts {
        for y in &parts {
            if b.iter().all(|p| x.contains(p) || y.contains(p)) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Counit, unit, the two monotonicity facts, zero-inclusion, the
/// composition inequality, limits over split filters, and the passage
/// between flat filters and flat modules.
pub(crate) fn reflection_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("reflection");
    for s in &ctx.rplus {
        let name = s.name();
        let modules = left_modules(s, &module_grid(ctx, Base::RPlus));
        let rights = right_modules(s, &module_grid(ctx, Base::RPlus));
        let filters = filters_on(s);

        for m in &modules {
            let Ok(fm) = filter_of_module(m) else { continue };
            let back = m_minus(&fm);
            r.check(back.arrow_to(m) == Ok(true), || format!("{name}: counit fails for {}", show(m.values())));
            r.check((back == *m) == is_p1_flat(m), || {
                format!("{name}: counit is iso for {} but P1 says otherwise", show(m.values()))
            });
            if is_p1_flat(m) {
                r.check(is_weakly_flat(&fm), || format!("{name}: F({}) not weakly flat", show(m.values())));
            }
            if is_p2_flat(m) {
                r.check(is_flat(&fm), || format!("{name}: F({}) not flat", show(m.values())));
            }
        }
        for m1 in &modules {
            for m2 in &modules {
                if m1.arrow_to(m2) == Ok(true) {
                    r.check(subset(&m1.zero_set(), &m2.zero_set()), || {
                        format!("{name}: {} ⇒ {} but kernels not nested", show(m1.values()), show(m2.values()))
                    });
                }
            }
        }
        for f1 in &filters {
            for f2 in &filters {
                if subset(f1.generator(), f2.generator()) {
                    r.check(m_minus(f1).arrow_to(&m_minus(f2)) == Ok(true), || {
                        format!("{name}: {} ⊇ {} but M⁻ not monotone", f1.label(), f2.label())
                    });
                }
            }
        }
        let tables: Vec<Vec<_>> = modules
            .iter()
            .map(|m| m.values().to_vec())
            .chain(rights.iter().map(|n| n.values().to_vec()))
            .collect();
        for f in &filters {
            let wf = is_weakly_flat(f);
            let unit = subset(f.generator(), closure(f).generator());
            r.check(wf == unit && wf == definitional::weakly_flat(f), || format!("{name}: unit law fails for {}", f.label()));
            if wf {
                r.check(is_p1_flat(&m_minus(f)), || format!("{name}: M⁻{} not P1-flat", f.label()));
            }
            if is_flat(f) {
                r.check(is_p2_flat(&m_minus(f)), || format!("{name}: M⁻{} not P2-flat", f.label()));
            }
            for m in &modules {
                r.check(zoi_check(f, m) == Ok(true), || format!("{name}: zero inclusion fails for {} and {}", f.label(), show(m.values())));
            }
            for n in &rights {
                r.check(fac22_check(f, n) == Ok(true), || format!("{name}: composition inequality fails for {} and {}", f.label(), show(n.values())));
            }
            for (x, y) in two_splits(f.generator()) {
                let parts = [PrincipalFilter::new(s.clone(), x).expect("non-empty"), PrincipalFilter::new(s.clone(), y).expect("non-empty")];
                for t in &tables {
                    r.check(liminf_f_check(f, &parts, t) == Ok(true), || {
                        format!("{name}: lim⁻ over {} does not split as {} and {} on {}", f.label(), parts[0].label(), parts[1].label(), show(t))
                    });
                }
            }
        }
    }
    r
}

/// Short sequences over the space: every preperiod of length at most one
/// and every cycle of one or two distinct points.
fn small_sequences(s: &Arc<Space>) -> Vec<EvPeriodicSequence> {
    let n = s.len();
    let mut cycles: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                cycles.push(vec![x, y]);
            }
        }
    }
    let pres: Vec<Vec<usize>> = std::iter::once(Vec::new()).chain((0..n).map(|p| vec![p])).collect();
    let mut out = Vec::new();
    for pre in &pres {
        for c in &cycles {
            out.push(EvPeriodicSequence::new(s.clone(), pre.clone(), c.clone()).expect("points of the space"));
        }
    }
    out
}

/// The Cauchy/flat/weakly flat hierarchy and its closed forms, closures,
/// morphisms, convergence, suprema and the symmetric case.
pub(crate) fn filter_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("filters");
    for n in 1..=4 {
        r.check(definitional::every_filter_is_principal(n), || format!("a filter on {n} points is not principal"));
    }
    for s in &ctx.rplus {
        let name = s.name();
        let filters = filters_on(s);
        for f in &filters {
            let (c, fl, wf) = (is_cauchy(f), is_flat(f), is_weakly_flat(f));
            r.check(!c || fl, || format!("{name}: {} Cauchy but not flat", f.label()));
            r.check(!fl || wf, || format!("{name}: {} flat but not weakly flat", f.label()));
            r.check(c == definitional::cauchy(f), || format!("{name}: Cauchy closed form wrong for {}", f.label()));
            r.check(fl == definitional::flat(f), || format!("{name}: flat closed form wrong for {}", f.label()));
            r.check(wf == definitional::weakly_flat(f), || format!("{name}: weakly flat closed form wrong for {}", f.label()));
            let cl = closure(f);
            r.check(closure(&cl) == cl && is_closed(&cl) && subset(f.generator(), cl.generator()), || {
                format!("{name}: closure of {} misbehaves", f.label())
            });
            r.check(filter_morphism(f, f) == Ok(true), || format!("{name}: {} ↛ itself", f.label()));
            r.check(m_plus(f).arrow_to(&m_minus(f)) == Ok(true), || format!("{name}: M⁻{} exceeds M⁺", f.label()));
            if c {
                r.check(m_minus(f) == m_plus(f), || format!("{name}: M⁻ ≠ M⁺ on Cauchy {}", f.label()));
            }
            if s.is_symmetric() {
                r.check(!fl || c, || format!("{name}: flat {} not Cauchy on a symmetric space", f.label()));
            }
            for x in 0..s.len() {
                if wf {
                    r.check(converges(f, x) == converges_via_module(f, x), || {
                        format!("{name}: convergence of {} to {} differs by route", f.label(), s.point(x))
                    });
                }
            }
            let reps = representative(f);
            r.check(reps.iter().all(|&a| reps.iter().all(|&b| s.iso(a, b))), || {
                format!("{name}: representatives of {} not isomorphic", f.label())
            });
        }
        for x in 0..s.len() {
            let v = neighborhood(s, x).expect("point of the space");
            r.check(representative(&v).contains(&x) && converges(&v, x) == Ok(true), || {
                format!("{name}: neighborhood filter of {} misbehaves", s.point(x))
            });
        }
        for f1 in &filters {
            for f2 in &filters {
                r.check(filter_morphism(f1, f2).ok() == Some(definitional::morphism(f1, f2)), || {
                    format!("{name}: morphism {} → {} differs from its definition", f1.label(), f2.label())
                });
                let pair = [f1.clone(), f2.clone()];
                let sup = sup_filters(&pair).expect("same space");
                if is_weakly_flat(f1) && is_weakly_flat(f2) {
                    r.check(is_weakly_flat(&sup), || format!("{name}: sup of {} and {} not weakly flat", f1.label(), f2.label()));
                }
                r.check(colimit_closed(&pair).map(|c| is_closed(&c)) == Ok(true), || {
                    format!("{name}: closed colimit of {} and {} not closed", f1.label(), f2.label())
                });
            }
        }
        if s.is_symmetric() {
            for m in left_modules(s, &module_grid(ctx, Base::RPlus)) {
                r.check(is_p2_flat(&m) == is_p0_flat(&m), || format!("{name}: P2 ≠ P0 for {} on a symmetric space", show(m.values())));
            }
            let closed_cauchy: Vec<&PrincipalFilter> = filters.iter().filter(|f| is_cauchy(f) && is_closed(f)).collect();
            for f1 in &closed_cauchy {
                for f2 in &closed_cauchy {
                    let (m1, m2) = (m_minus(f1), m_minus(f2));
                    let mutual = presheaf_hom(&m1, &m2).map(|v| v.is_unit()) == Ok(true)
                        && presheaf_hom(&m2, &m1).map(|v| v.is_unit()) == Ok(true);
                    r.check(!mutual || f1.generator() == f2.generator(), || {
                        format!("{name}: closed Cauchy {} and {} at distance zero", f1.label(), f2.label())
                    });
                }
            }
        }
        for seq in small_sequences(s) {
            r.check(seq.is_forward_cauchy() == definitional::forward_cauchy(&seq), || {
                format!("{name}: forward Cauchy closed form wrong for {}", seq.label())
            });
            r.check(seq.tail_filter().generator() == seq.cycle_values().as_slice(), || {
                format!("{name}: tail filter of {}", seq.label())
            });
        }
    }
    r
}

/// Distances between weakly flat filters through modules and through the
/// double limit, plus the swapped limit when the first is Cauchy.
pub(crate) fn wfhom_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("wfhom");
    for s in &ctx.rplus {
        let filters: Vec<PrincipalFilter> = filters_on(s).into_iter().filter(is_weakly_flat).collect();
        for f1 in &filters {
            for f2 in &filters {
                match wf_hom_distance(f1, f2) {
                    Ok(h) => r.check(h.consistent() && (f1 != f2 || h.via_modules.is_unit()), || {
                        format!("{}: {} to {}: {h:?}", s.name(), f1.label(), f2.label())
                    }),
                    Err(e) => r.fail(format_args!("{}: {e}", s.name())),
                }
            }
        }
    }
    r
}

/// Post-conditions of the separating and interpolating sequence
/// constructions on every admissible input, and the finite density
/// corollary.
pub(crate) fn constructive_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("constructive");
    for s in &ctx.rplus {
        let name = s.name();
        r.check(charffil_finite_check(s), || format!("{name}: a closed flat filter is not a point closure"));
        let filters = filters_on(s);
        let modules: Vec<LeftModule> = left_modules(s, &module_grid(ctx, Base::RPlus));
        for f in filters.iter().filter(|f| is_weakly_flat(f)) {
            let lower = m_minus(f);
            for m in &modules {
                let dominated = lower.arrow_to(m) == Ok(true);
                match separating_sequence(f, m) {
                    Ok(seq) => {
                        let tail = seq.tail_filter();
                        let ok = !dominated
                            && seq.is_forward_cauchy()
                            && filter_morphism(&tail, f) == Ok(true)
                            && m_minus(&tail).arrow_to(m) == Ok(false);
                        r.check(ok, || format!("{name}: separating sequence {} for {} and {}", seq.label(), f.label(), show(m.values())));
                    }
                    Err(FilterError::NoSeparatingWitness) => {
                        r.check(dominated, || format!("{name}: no separating witness for {} and {}", f.label(), show(m.values())))
                    }
                    Err(e) => r.fail(format_args!("{name}: {} and {}: {e}", f.label(), show(m.values()))),
                }
            }
        }
        let sequences = small_sequences(s);
        for f in filters.iter().filter(|f| is_flat(f)) {
            let admissible: Vec<&EvPeriodicSequence> = sequences
                .iter()
                .filter(|q| q.is_forward_cauchy() && filter_morphism(&q.tail_filter(), f) == Ok(true))
                .collect();
            for s1 in &admissible {
                for s2 in &admissible {
                    match interpolate_sequences(s1, s2, f) {
                        Ok(z) => {
                            let tail = z.tail_filter();
                            let ok = z.is_forward_cauchy()
                                && filter_morphism(&s1.tail_filter(), &tail) == Ok(true)
                                && filter_morphism(&s2.tail_filter(), &tail) == Ok(true)
                                && filter_morphism(&tail, f) == Ok(true);
                            r.check(ok, || format!("{name}: interpolation {} of {} and {} into {}", z.label(), s1.label(), s2.label(), f.label()));
                        }
                        Err(e) => r.fail(format_args!("{name}: interpolating {} and {} into {}: {e}", s1.label(), s2.label(), f.label())),
                    }
                }
            }
        }
    }
    r
}
