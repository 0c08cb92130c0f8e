//! Quantale laws, enriched-category identities, Kan extensions and the
//! commutation of weighted limits with weighted colimits.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enriched::{
    hom_via_adjoint, is_adjoint_pair, kan_extend, presheaf_hom, right_adjoint_candidate, yoneda, Diagram, LeftModule,
    Map, Space, Variance, Weight,
};
use crate::filters::{direct_image, is_flat, is_weakly_flat, m_minus, nonempty_subsets, PrincipalFilter};
use crate::fixtures::{antichain2, chain2, one_point, pair1, t3, z2};
use crate::flatness::{self, FlatnessClass};
use crate::quantale::{check_fac_r2, check_fac_r_with, join_fin, meet_fin, Base, QValue, Rational};

use super::{left_modules, module_grid, show, Context, SuiteResult};

/// `|y − x|` instead of `max(y − x, 0)`: a deliberately wrong internal hom
/// for checking that the quantale suite notices.
pub fn broken_hom(x: QValue, y: QValue) -> QValue {
    match (x, y) {
        (QValue::Finite(a), QValue::Finite(b)) if b < a => QValue::Finite(a - b),
        _ => x.hom(y),
    }
}

fn sample(rng: &mut ChaCha8Rng) -> QValue {
    match rng.gen_range(0..10) {
        0 => QValue::ZERO,
        1 => QValue::Infinity,
        _ => {
            let p: i64 = rng.gen_range(0..=40);
            let q: i64 = rng.gen_range(1..=8);
            QValue::Finite(Rational::new(p, q))
        }
    }
}

/// Residuation, monoid laws, monotonicity of hom, and both infimum
/// identities, on `samples` random triples and families over R̄₊ plus all
/// of Bool. `hom` is the internal hom under test.
pub fn quantale_suite(samples: usize, seed: u64, hom: fn(QValue, QValue) -> QValue) -> SuiteResult {
    let mut r = SuiteResult::new("quantale");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        laws(&mut r, x, y, z, hom);
        let len = rng.gen_range(1..=4);
        let family: Vec<QValue> = (0..len).map(|_| sample(&mut rng)).collect();
        match check_fac_r_with(x, &family, hom) {
            Ok(ok) => r.check(ok, || format!("facR fails for v={x}, family {}", show(&family))),
            Err(e) => r.fail(format_args!("facR: {e}")),
        }
        match check_fac_r2(x, &family) {
            Ok(ok) => r.check(ok, || format!("facR2 fails for v={x}, family {}", show(&family))),
            Err(crate::quantale::QuantaleError::Inapplicable) => {}
            Err(e) => r.fail(format_args!("facR2: {e}")),
        }
    }
    let bools = [QValue::FALSE, QValue::TRUE];
    for x in bools {
        for y in bools {
            for z in bools {
                laws(&mut r, x, y, z, |a, b| a.hom(b));
            }
        }
    }
    for base in [Base::RPlus, Base::Bool] {
        r.check(meet_fin(base, &[]) == Ok(base.terminal()), || format!("empty meet over {base:?}"));
        r.check(join_fin(base, &[]) == Ok(base.initial()), || format!("empty join over {base:?}"));
    }
    r
}

fn laws(r: &mut SuiteResult, x: QValue, y: QValue, z: QValue, hom: impl Fn(QValue, QValue) -> QValue) {
    let unit = x.base().unit();
    r.check(z.tensor(x).le(y) == z.le(hom(x, y)), || format!("residuation fails at x={x}, y={y}, z={z}"));
    r.check(x.tensor(y) == y.tensor(x), || format!("tensor not commutative at {x}, {y}"));
    r.check(x.tensor(y).tensor(z) == x.tensor(y.tensor(z)), || format!("tensor not associative at {x}, {y}, {z}"));
    r.check(x.tensor(unit) == x, || format!("unit law fails at {x}"));
    r.check(hom(unit, x) == x, || format!("hom(unit, {x}) ≠ {x}"));
    if x.le(z) {
        r.check(hom(z, y).le(hom(x, y)), || format!("hom not antitone: {x} → {z}, second argument {y}"));
        r.check(hom(y, x).le(hom(y, z)), || format!("hom not monotone: {x} → {z}, first argument {y}"));
    }
}

/// Yoneda, identity extensions and homs through adjoints on every catalog
/// space.
pub(crate) fn enriched_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("enriched");
    for s in ctx.rplus.iter().chain(&ctx.bools) {
        r.check(s.violations().is_empty(), || format!("{} violates the space laws", s.name()));
        let n = s.len();
        let pre = s.underlying_preorder();
        for a in 0..n {
            let ya = yoneda(s, a).expect("point of the space");
            for b in 0..n {
                let yb = yoneda(s, b).expect("point of the space");
                r.check(presheaf_hom(&ya, &yb) == Ok(s.dist(a, b)), || format!("{}: Yoneda fails at ({a},{b})", s.name()));
                r.check(pre.dist(a, b) == QValue::Bool(s.arrow(a, b)), || {
                    format!("{}: underlying preorder wrong at ({a},{b})", s.name())
                });
            }
        }
        let id = Map::identity(s.clone());
        let modules = left_modules(s, &module_grid(ctx, s.base()));
        for m in &modules {
            r.check(kan_extend(m, &id).as_ref() == Ok(m), || {
                format!("{}: extension along the identity changes {}", s.name(), show(m.values()))
            });
            if !is_adjoint_pair(m, &right_adjoint_candidate(m)).unwrap_or(false) {
                continue;
            }
            for other in &modules {
                r.check(hom_via_adjoint(m, other) == presheaf_hom(m, other), || {
                    format!("{}: hom via adjoint of {} differs", s.name(), show(m.values()))
                });
            }
        }
    }
    r
}

fn kan_targets(base: Base) -> Vec<Arc<Space>> {
    match base {
        Base::RPlus => {
            let names = vec!["lo".to_string(), "hi".to_string()];
            let d = [[0, 0], [1, 0]];
            let chain = Space::from_fn("chain", Base::RPlus, names, |x, y| QValue::int(d[x][y]))
                .expect("valid chain")
                .into_ref();
            vec![one_point(Base::RPlus), z2(), pair1(), chain, t3()]
        }
        Base::Bool => vec![one_point(Base::Bool), chain2(), antichain2()],
    }
}

/// Left Kan extensions along every map into a few fixed targets: validity,
/// flatness preservation, cocontinuity on pairs and the direct-image
/// formula for filters.
pub(crate) fn kan_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("kan");
    for s in ctx.rplus.iter().chain(&ctx.bools) {
        let modules = left_modules(s, &module_grid(ctx, s.base()));
        let filters: Vec<PrincipalFilter> = nonempty_subsets(s.len())
            .into_iter()
            .map(|b| PrincipalFilter::new(s.clone(), b).expect("non-empty"))
            .collect();
        for target in kan_targets(s.base()) {
            for g in Map::all(s, &target) {
                let label = || format!("{} → {} via {:?}", s.name(), target.name(), g.assignment());
                let mut extended: Vec<LeftModule> = Vec::with_capacity(modules.len());
                for m in &modules {
                    let k = kan_extend(m, &g).expect("same spaces");
                    r.check(LeftModule::new(target.clone(), k.values().to_vec()).is_ok(), || {
                        format!("{}: extension of {} is not a module", label(), show(m.values()))
                    });
                    for class in [FlatnessClass::P1, FlatnessClass::P2, FlatnessClass::P0] {
                        if flatness::is_flat(m, class) {
                            r.check(flatness::is_flat(&k, class), || {
                                format!("{}: {class}-flatness of {} lost", label(), show(m.values()))
                            });
                        }
                    }
                    extended.push(k);
                }
                for i in 0..modules.len() {
                    for j in i + 1..modules.len() {
                        let joined = LeftModule::pointwise_join(&[modules[i].clone(), modules[j].clone()])
                            .expect("same space");
                        let lhs = kan_extend(&joined, &g).expect("same spaces");
                        let rhs = LeftModule::pointwise_join(&[extended[i].clone(), extended[j].clone()])
                            .expect("same space");
                        r.check(lhs == rhs, || {
                            format!("{}: not cocontinuous on {} and {}", label(), show(modules[i].values()), show(modules[j].values()))
                        });
                    }
                }
                for f in &filters {
                    let image = direct_image(f, &g).expect("same spaces");
                    r.check(kan_extend(&m_minus(f), &g).as_ref() == Ok(&m_minus(&image)), || {
                        format!("{}: M⁻ does not commute with the image of {}", label(), f.label())
                    });
                    if is_weakly_flat(f) {
                        r.check(is_weakly_flat(&image), || format!("{}: image of {} not weakly flat", label(), f.label()));
                    }
                    if is_flat(f) {
                        r.check(is_flat(&image), || format!("{}: image of {} not flat", label(), f.label()));
                    }
                }
            }
        }
    }
    r
}

/// `F * −` preserves `{P, G}` exactly when `{P, −}` preserves `F * G`, over
/// all weights and diagrams with entries in `{0, 1, ∞}` on catalog spaces of
/// at most two points.
pub(crate) fn commut_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("commut");
    let grid = [QValue::ZERO, QValue::int(1), QValue::Infinity];
    let small: Vec<&Arc<Space>> = ctx.rplus.iter().filter(|s| s.len() <= 2).collect();
    for a in &small {
        let fs: Vec<Weight> = super::tables(a.len(), &grid)
            .into_iter()
            .filter_map(|v| Weight::new((*a).clone(), v, Variance::Contravariant).ok())
            .collect();
        for k in &small {
            let ps: Vec<Weight> = super::tables(k.len(), &grid)
                .into_iter()
                .filter_map(|v| Weight::new((*k).clone(), v, Variance::Covariant).ok())
                .collect();
            let gs: Vec<Diagram> = super::tables(k.len() * a.len(), &grid)
                .into_iter()
                .filter_map(|cells| {
                    let rows = cells.chunks(a.len()).map(|c| c.to_vec()).collect();
                    Diagram::new((*k).clone(), (*a).clone(), rows).ok()
                })
                .collect();
            for f in &fs {
                for p in &ps {
                    for g in &gs {
                        match flatness::commutation_instance(f, p, g) {
                            Ok((lhs, rhs)) => r.check(lhs == rhs, || {
                                format!(
                                    "A={}, K={}: F={} P={} G={:?}: {lhs} vs {rhs}",
                                    a.name(),
                                    k.name(),
                                    show(f.values()),
                                    show(p.values()),
                                    (0..k.len()).map(|i| show(g.row(i))).collect::<Vec<_>>()
                                )
                            }),
                            Err(e) => r.fail(format_args!("commutation instance: {e}")),
                        }
                    }
                }
            }
        }
    }
    r
}
