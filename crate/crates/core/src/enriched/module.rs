use std::sync::Arc;

use crate::quantale::QValue;

use super::space::{same_space, Map, Space};
use super::EnrichedError;

/// A presheaf `A^op → V`, i.e. a module `I ⇸ A`.
///
/// Over R̄₊ the defining inequality reads `M(x) ≤ M(y) + A(x,y)`; over Bool
/// the values form a downset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftModule {
    space: Arc<Space>,
    values: Vec<QValue>,
}

/// A copresheaf `A → V`, i.e. a module `A ⇸ I`: `N(y) ≤ A(x,y) + N(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightModule {
    space: Arc<Space>,
    values: Vec<QValue>,
}

fn check_values(space: &Space, values: &[QValue]) -> Result<(), EnrichedError> {
    if values.len() != space.len() {
        return Err(EnrichedError::Shape(format!(
            "module has {} values, space `{}` has {} points",
            values.len(),
            space.name(),
            space.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| v.base() != space.base()) {
        return Err(EnrichedError::Base(space.base(), v.base()));
    }
    Ok(())
}

impl LeftModule {
    pub fn new(space: Arc<Space>, values: Vec<QValue>) -> Result<LeftModule, EnrichedError> {
        check_values(&space, &values)?;
        let n = space.len();
        for x in 0..n {
            for y in 0..n {
                if !values[y].tensor(space.dist(x, y)).le(values[x]) {
                    return Err(EnrichedError::InvalidModule {
                        kind: "left",
                        x: space.point(x).to_string(),
                        y: space.point(y).to_string(),
                    });
                }
            }
        }
        Ok(LeftModule { space, values })
    }

    /// Skips the module inequality. Callers must have established it.
    pub(crate) fn new_unchecked(space: Arc<Space>, values: Vec<QValue>) -> LeftModule {
        debug_assert!(LeftModule::new(space.clone(), values.clone()).is_ok());
        LeftModule { space, values }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn values(&self) -> &[QValue] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> QValue {
        self.values[x]
    }

    /// Points where the module takes the unit value (its kernel).
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.values[x].is_unit()).collect()
    }

    /// `self ⇒ other` in the presheaf category: the hom is the unit.
    pub fn arrow_to(&self, other: &LeftModule) -> Result<bool, EnrichedError> {
        Ok(presheaf_hom(self, other)?.is_unit())
    }

    /// Pointwise categorical join of a non-empty family (the numeric
    /// minimum over R̄₊); it is again a left module.
    pub fn pointwise_join(family: &[LeftModule]) -> Result<LeftModule, EnrichedError> {
        let first = family.first().ok_or_else(|| EnrichedError::Shape("empty family".into()))?;
        let mut values = first.values.clone();
        for m in &family[1..] {
            if !same_space(&m.space, &first.space) {
                return Err(EnrichedError::SpaceMismatch);
            }
            for (v, &w) in values.iter_mut().zip(&m.values) {
                *v = v.join(w);
            }
        }
        Ok(LeftModule::new_unchecked(first.space.clone(), values))
    }
}

impl RightModule {
    pub fn new(space: Arc<Space>, values: Vec<QValue>) -> Result<RightModule, EnrichedError> {
        check_values(&space, &values)?;
        let n = space.len();
        for x in 0..n {
            for y in 0..n {
                if !space.dist(x, y).tensor(values[x]).le(values[y]) {
                    return Err(EnrichedError::InvalidModule {
                        kind: "right",
                        x: space.point(x).to_string(),
                        y: space.point(y).to_string(),
                    });
                }
            }
        }
        Ok(RightModule { space, values })
    }

    pub(crate) fn new_unchecked(space: Arc<Space>, values: Vec<QValue>) -> RightModule {
        debug_assert!(RightModule::new(space.clone(), values.clone()).is_ok());
        RightModule { space, values }
    }

    /// The corepresentable `A(a, −)`.
    pub fn corepresentable(space: &Arc<Space>, a: usize) -> RightModule {
        let values = (0..space.len()).map(|y| space.dist(a, y)).collect();
        RightModule::new_unchecked(space.clone(), values)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn values(&self) -> &[QValue] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> QValue {
        self.values[x]
    }
}

/// The representable presheaf `A(−, a)`.
pub fn yoneda(space: &Arc<Space>, a: usize) -> Result<LeftModule, EnrichedError> {
    if a >= space.len() {
        return Err(EnrichedError::UnknownPoint(format!("#{a}")));
    }
    let values = (0..space.len()).map(|x| space.dist(x, a)).collect();
    Ok(LeftModule::new_unchecked(space.clone(), values))
}

fn same(a: &Arc<Space>, b: &Arc<Space>) -> Result<(), EnrichedError> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(EnrichedError::SpaceMismatch)
    }
}

/// Hom in the presheaf category: the meet over points of `[M(x), N(x)]`.
/// Over R̄₊ this is `max_x max(N(x) − M(x), 0)`.
pub fn presheaf_hom(m: &LeftModule, n: &LeftModule) -> Result<QValue, EnrichedError> {
    same(&m.space, &n.space)?;
    Ok(m.values
        .iter()
        .zip(&n.values)
        .fold(m.space.base().terminal(), |acc, (&a, &b)| acc.meet(a.hom(b))))
}

/// The composite `N * M`: join over points of `M(x) ⊗ N(x)`
/// (`min_x M(x) + N(x)` over R̄₊).
pub fn compose_modules(m: &LeftModule, n: &RightModule) -> Result<QValue, EnrichedError> {
    same(&m.space, &n.space)?;
    Ok(m.values
        .iter()
        .zip(&n.values)
        .fold(m.space.base().initial(), |acc, (&a, &b)| acc.join(a.tensor(b))))
}

/// Evaluates the Yoneda extension `− * M` of `M` at the copresheaf `G`.
pub fn lan_yoneda_apply(m: &LeftModule, g: &RightModule) -> Result<QValue, EnrichedError> {
    compose_modules(m, g)
}

/// Pointwise left Kan extension of `M` along `G^op`:
/// `b ↦ join_x M(x) ⊗ B(b, Gx)`.
pub fn kan_extend(m: &LeftModule, g: &Map) -> Result<LeftModule, EnrichedError> {
    same(&m.space, g.source())?;
    let target = g.target();
    let values = (0..target.len())
        .map(|b| {
            (0..m.space.len())
                .fold(target.base().initial(), |acc, x| acc.join(m.at(x).tensor(target.dist(b, g.apply(x)))))
        })
        .collect();
    Ok(LeftModule::new_unchecked(target.clone(), values))
}

/// Precomposition with `G^op`.
pub fn restrict(m: &LeftModule, g: &Map) -> Result<LeftModule, EnrichedError> {
    same(&m.space, g.target())?;
    let values = (0..g.source().len()).map(|x| m.at(g.apply(x))).collect();
    Ok(LeftModule::new_unchecked(g.source().clone(), values))
}

/// `a ↦ [A^op,V](M, A(−,a))`. If `M` has a right adjoint at all, it is this.
pub fn right_adjoint_candidate(m: &LeftModule) -> RightModule {
    let space = &m.space;
    let values = (0..space.len())
        .map(|a| {
            (0..space.len()).fold(space.base().terminal(), |acc, x| acc.meet(m.at(x).hom(space.dist(x, a))))
        })
        .collect();
    RightModule::new_unchecked(space.clone(), values)
}

/// `M ⊣ N` as modules: `N * M` is the unit and `N(y) ⊗ M(x) ⊑ A(x,y)`.
pub fn is_adjoint_pair(m: &LeftModule, n: &RightModule) -> Result<bool, EnrichedError> {
    let space = &m.space;
    if !compose_modules(m, n)?.is_unit() {
        return Ok(false);
    }
    for x in 0..space.len() {
        for y in 0..space.len() {
            if !n.at(y).tensor(m.at(x)).le(space.dist(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computes `[A^op,V](M, N)` as `Ñ * N` using the right adjoint `Ñ` of `M`.
pub fn hom_via_adjoint(m: &LeftModule, n: &LeftModule) -> Result<QValue, EnrichedError> {
    same(&m.space, &n.space)?;
    let adjoint = right_adjoint_candidate(m);
    if !is_adjoint_pair(m, &adjoint)? {
        return Err(EnrichedError::NotLeftAdjoint);
    }
    compose_modules(n, &adjoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{antichain2, chain2, one_point, t3, z2};
    use crate::quantale::{Base, QValue};

    fn q(s: &str) -> QValue {
        Base::RPlus.parse_value(s).unwrap()
    }

    fn vals(xs: &[&str]) -> Vec<QValue> {
        xs.iter().map(|s| q(s)).collect()
    }

    fn left(space: &Arc<Space>, xs: &[&str]) -> LeftModule {
        LeftModule::new(space.clone(), vals(xs)).unwrap()
    }

    fn right(space: &Arc<Space>, xs: &[&str]) -> RightModule {
        RightModule::new(space.clone(), vals(xs)).unwrap()
    }

    #[test]
    fn yoneda_reads_columns() {
        let t = t3();
        assert_eq!(yoneda(&t, 1).unwrap().values(), vals(&["1", "0", "4"]).as_slice());
        assert_eq!(yoneda(&t, 0).unwrap().values(), vals(&["0", "2", "5"]).as_slice());
        let p = one_point(Base::RPlus);
        assert_eq!(yoneda(&p, 0).unwrap().values(), &[QValue::ZERO]);
        assert!(yoneda(&t, 3).is_err());
    }

    #[test]
    fn presheaf_hom_examples() {
        let t = t3();
        let yb = yoneda(&t, 1).unwrap();
        let ya = yoneda(&t, 0).unwrap();
        assert_eq!(presheaf_hom(&yb, &ya).unwrap(), q("2"));
        assert_eq!(presheaf_hom(&ya, &ya).unwrap(), QValue::ZERO);
        assert_eq!(presheaf_hom(&left(&t, &["0", "0", "4"]), &ya).unwrap(), q("2"));
        let z = z2();
        assert_eq!(presheaf_hom(&ya, &yoneda(&z, 0).unwrap()), Err(EnrichedError::SpaceMismatch));
    }

    #[test]
    fn bool_presheaf_hom_is_identity_on_self() {
        let c = chain2();
        let m = yoneda(&c, 1).unwrap();
        assert_eq!(presheaf_hom(&m, &m).unwrap(), QValue::TRUE);
    }

    #[test]
    fn compose_examples() {
        let t = t3();
        let yb = yoneda(&t, 1).unwrap();
        let b_row = RightModule::corepresentable(&t, 1);
        assert_eq!(b_row.values(), vals(&["2", "0", "1"]).as_slice());
        assert_eq!(compose_modules(&yb, &b_row).unwrap(), QValue::ZERO);
        let m = left(&t, &["0", "0", "4"]);
        assert_eq!(compose_modules(&m, &RightModule::corepresentable(&t, 0)).unwrap(), QValue::ZERO);
        let p = one_point(Base::RPlus);
        let unit = LeftModule::new(p.clone(), vec![QValue::ZERO]).unwrap();
        let n = RightModule::new(p.clone(), vec![q("3/2")]).unwrap();
        assert_eq!(compose_modules(&unit, &n).unwrap(), q("3/2"));
        assert_eq!(lan_yoneda_apply(&unit, &n).unwrap(), q("3/2"));
    }

    #[test]
    fn module_validation() {
        let t = t3();
        assert!(LeftModule::new(t.clone(), vals(&["0", "1", "1"])).is_ok());
        assert!(LeftModule::new(t.clone(), vals(&["1/2", "1", "1"])).is_ok());
        // M(c) = 0 forces M(a) ≤ A(a,c) = 2.
        assert!(matches!(
            LeftModule::new(t.clone(), vals(&["6", "1", "0"])),
            Err(EnrichedError::InvalidModule { kind: "left", .. })
        ));
        assert!(LeftModule::new(t.clone(), vals(&["0", "0"])).is_err());
        assert!(LeftModule::new(t.clone(), vec![QValue::TRUE; 3]).is_err());
        assert!(RightModule::new(t, vals(&["0", "0", "inf"])).is_err());
    }

    #[test]
    fn kan_extension_examples() {
        let z = z2();
        let t = t3();
        let m = LeftModule::new(z.clone(), vec![QValue::ZERO; 2]).unwrap();
        let g = Map::constant(z.clone(), t.clone(), 1).unwrap();
        assert_eq!(kan_extend(&m, &g).unwrap(), yoneda(&t, 1).unwrap());

        let id = Map::identity(t.clone());
        let n = left(&t, &["0", "0", "4"]);
        assert_eq!(kan_extend(&n, &id).unwrap(), n);

        // Representables go to representables.
        let ya = yoneda(&z, 0).unwrap();
        assert_eq!(kan_extend(&ya, &g).unwrap(), yoneda(&t, g.apply(0)).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let z = z2();
        let t = t3();
        let g = Map::constant(z.clone(), t.clone(), 1).unwrap();
        let r = restrict(&yoneda(&t, 0).unwrap(), &g).unwrap();
        assert_eq!(r.values(), vals(&["2", "2"]).as_slice());
        let id = Map::identity(t.clone());
        let n = left(&t, &["0", "0", "4"]);
        assert_eq!(restrict(&n, &id).unwrap(), n);
    }

    #[test]
    fn unit_of_the_kan_adjunction() {
        // restrict(kan_extend(M)) ⇐ M, i.e. numerically below M, for every
        // module with values in {0,1,2,inf} on Z2 and every map Z2 → T3.
        let z = z2();
        let t = t3();
        let grid = vals(&["0", "1", "2", "inf"]);
        for &u in &grid {
            for &v in &grid {
                let Ok(m) = LeftModule::new(z.clone(), vec![u, v]) else { continue };
                for g in Map::all(&z, &t) {
                    let back = restrict(&kan_extend(&m, &g).unwrap(), &g).unwrap();
                    for x in 0..2 {
                        assert!(m.at(x).le(back.at(x)));
                    }
                }
            }
        }
    }

    #[test]
    fn right_adjoint_candidates() {
        let t = t3();
        let yb = yoneda(&t, 1).unwrap();
        assert_eq!(right_adjoint_candidate(&yb), RightModule::corepresentable(&t, 1));
        let m = left(&t, &["0", "0", "4"]);
        assert_eq!(right_adjoint_candidate(&m).values(), vals(&["2", "1", "2"]).as_slice());
        let p = one_point(Base::RPlus);
        let unit = LeftModule::new(p.clone(), vec![QValue::ZERO]).unwrap();
        assert_eq!(right_adjoint_candidate(&unit).values(), &[QValue::ZERO]);
    }

    #[test]
    fn adjoint_pairs() {
        let t = t3();
        let yb = yoneda(&t, 1).unwrap();
        assert!(is_adjoint_pair(&yb, &RightModule::corepresentable(&t, 1)).unwrap());
        let m = left(&t, &["0", "0", "4"]);
        assert_eq!(compose_modules(&m, &right(&t, &["2", "1", "2"])).unwrap(), q("1"));
        assert!(!is_adjoint_pair(&m, &right(&t, &["2", "1", "2"])).unwrap());
        assert!(!is_adjoint_pair(&m, &right_adjoint_candidate(&m)).unwrap());
    }

    #[test]
    fn hom_via_adjoint_examples() {
        let t = t3();
        let yb = yoneda(&t, 1).unwrap();
        let ya = yoneda(&t, 0).unwrap();
        assert_eq!(hom_via_adjoint(&yb, &ya).unwrap(), q("2"));
        assert_eq!(hom_via_adjoint(&ya, &ya).unwrap(), QValue::ZERO);
        let m = left(&t, &["0", "0", "4"]);
        assert_eq!(hom_via_adjoint(&m, &ya), Err(EnrichedError::NotLeftAdjoint));
    }

    #[test]
    fn bool_hom_via_adjoint_is_membership() {
        // Principal downset ↓p against a downset D: the hom is 1 iff p ∈ D.
        let a = antichain2();
        let principal = yoneda(&a, 0).unwrap();
        for d in [[false, false], [true, false], [false, true], [true, true]] {
            let n = LeftModule::new(a.clone(), d.iter().map(|&b| QValue::Bool(b)).collect()).unwrap();
            assert_eq!(hom_via_adjoint(&principal, &n).unwrap(), QValue::Bool(d[0]));
        }
    }

    #[test]
    fn pointwise_join_of_modules() {
        let t = t3();
        let m = LeftModule::pointwise_join(&[yoneda(&t, 0).unwrap(), yoneda(&t, 1).unwrap()]).unwrap();
        assert_eq!(m.values(), vals(&["0", "0", "4"]).as_slice());
        assert!(LeftModule::pointwise_join(&[]).is_err());
    }
}
