//! Closed forms of flatness against the definitional oracle, and the
//! implications between the flatness classes.

use crate::enriched::{yoneda, LeftModule};
use crate::flatness::{is_p0_flat, is_p1_flat, is_p2_flat, is_zero_directed, FlatnessClass, OracleConfig, OracleTable};
use crate::quantale::{Base, QValue};

use super::{left_modules, module_grid, show, Context, SuiteResult};

/// Every module over every R̄₊ catalog space: the P1 and P2 closed forms
/// agree with the oracle.
pub(crate) fn oracle_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("oracle");
    let config = OracleConfig { budget: ctx.budget, ..OracleConfig::new(Base::RPlus) };
    for s in &ctx.rplus {
        let table = match OracleTable::new(s, &config) {
            Ok(t) => t,
            Err(e) => {
                r.oracle_error(s.name(), e);
                return r;
            }
        };
        for m in left_modules(s, &module_grid(ctx, Base::RPlus)) {
            for (class, closed) in [(FlatnessClass::P1, is_p1_flat(&m)), (FlatnessClass::P2, is_p2_flat(&m))] {
                match table.check(&m, class) {
                    Ok(v) => r.check(v.holds == closed, || {
                        let witness = v.witness.map(|w| w.to_string()).unwrap_or_default();
                        format!(
                            "{}: {} {class}: closed form {closed}, oracle {} {witness}",
                            s.name(),
                            show(m.values()),
                            v.holds
                        )
                    }),
                    Err(e) => {
                        r.oracle_error(format_args!("{} {}", s.name(), show(m.values())), e);
                        return r;
                    }
                }
            }
        }
    }
    r
}

/// P0 ⟹ P2 ⟹ P1 for every module, representables in every class, closure
/// of P1 under binary pointwise joins, and the Bool readings as downsets.
pub(crate) fn hierarchy_suite(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("hierarchy");
    for s in ctx.rplus.iter().chain(&ctx.bools) {
        let modules = left_modules(s, &module_grid(ctx, s.base()));
        let flags: Vec<(bool, bool, bool)> =
            modules.iter().map(|m| (is_p0_flat(m), is_p2_flat(m), is_p1_flat(m))).collect();
        for (m, &(p0, p2, p1)) in modules.iter().zip(&flags) {
            r.check(!p0 || p2, || format!("{}: {} is P0- but not P2-flat", s.name(), show(m.values())));
            r.check(!p2 || p1, || format!("{}: {} is P2- but not P1-flat", s.name(), show(m.values())));
            if s.base() == Base::Bool {
                let members: Vec<usize> = (0..s.len()).filter(|&x| m.at(x) == QValue::TRUE).collect();
                r.check(p1 == !members.is_empty(), || {
                    format!("{}: P1 differs from non-empty downset at {}", s.name(), show(m.values()))
                });
                r.check(p2 == is_zero_directed(s, &members), || {
                    format!("{}: P2 differs from directed downset at {}", s.name(), show(m.values()))
                });
            }
        }
        for a in 0..s.len() {
            let y = yoneda(s, a).expect("point of the space");
            r.check(is_p0_flat(&y) && is_p2_flat(&y) && is_p1_flat(&y), || {
                format!("{}: representable at {} not flat", s.name(), s.point(a))
            });
        }
        let p1: Vec<&LeftModule> = modules.iter().zip(&flags).filter(|(_, f)| f.2).map(|(m, _)| m).collect();
        for i in 0..p1.len() {
            for j in i + 1..p1.len() {
                let joined = LeftModule::pointwise_join(&[p1[i].clone(), p1[j].clone()]).expect("same space");
                r.check(is_p1_flat(&joined), || {
                    format!("{}: join of {} and {} not P1-flat", s.name(), show(p1[i].values()), show(p1[j].values()))
                });
            }
        }
    }
    r
}
