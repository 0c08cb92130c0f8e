use std::sync::Arc;

use crate::quantale::QValue;

use super::space::Space;
use super::EnrichedError;

/// Whether a weight or diagram is a functor out of `K` or out of `K^op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `K → V`, a right module on `K` (weights of limits).
    Covariant,
    /// `K^op → V`, a left module on `K` (weights of colimits).
    Contravariant,
}

/// A weight on a finite index space `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    index: Arc<Space>,
    values: Vec<QValue>,
    variance: Variance,
}

fn functorial(index: &Space, values: &[QValue], variance: Variance) -> Result<(), EnrichedError> {
    if values.len() != index.len() {
        return Err(EnrichedError::Shape(format!(
            "weight has {} values, index space has {} points",
            values.len(),
            index.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| v.base() != index.base()) {
        return Err(EnrichedError::Base(index.base(), v.base()));
    }
    for k in 0..index.len() {
        for l in 0..index.len() {
            let ok = match variance {
                Variance::Covariant => index.dist(k, l).tensor(values[k]).le(values[l]),
                Variance::Contravariant => values[l].tensor(index.dist(k, l)).le(values[k]),
            };
            if !ok {
                return Err(EnrichedError::InvalidModule {
                    kind: "weight",
                    x: index.point(k).to_string(),
                    y: index.point(l).to_string(),
                });
            }
        }
    }
    Ok(())
}

impl Weight {
    pub fn new(index: Arc<Space>, values: Vec<QValue>, variance: Variance) -> Result<Weight, EnrichedError> {
        functorial(&index, &values, variance)?;
        Ok(Weight { index, values, variance })
    }

    pub fn index(&self) -> &Arc<Space> {
        &self.index
    }

    pub fn values(&self) -> &[QValue] {
        &self.values
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }
}

/// A V-valued diagram `G(k, a)` on `K × A`, covariant in both variables:
/// each row `G(k, −)` is a right module on `A` and each column `G(−, a)` is
/// functorial on `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    index: Arc<Space>,
    target: Arc<Space>,
    rows: Vec<Vec<QValue>>,
}

impl Diagram {
    pub fn new(index: Arc<Space>, target: Arc<Space>, rows: Vec<Vec<QValue>>) -> Result<Diagram, EnrichedError> {
        if rows.len() != index.len() {
            return Err(EnrichedError::Shape("diagram row count differs from index size".into()));
        }
        for row in &rows {
            functorial(&target, row, Variance::Covariant)?;
        }
        for a in 0..target.len() {
            let column: Vec<QValue> = rows.iter().map(|r| r[a]).collect();
            functorial(&index, &column, Variance::Covariant)?;
        }
        Ok(Diagram { index, target, rows })
    }

    pub fn index(&self) -> &Arc<Space> {
        &self.index
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn at(&self, k: usize, a: usize) -> QValue {
        self.rows[k][a]
    }

    pub fn row(&self, k: usize) -> &[QValue] {
        &self.rows[k]
    }

    pub fn column(&self, a: usize) -> Vec<QValue> {
        self.rows.iter().map(|r| r[a]).collect()
    }
}

/// `{P, G}` for V-valued `G`: the meet over `k` of `[P(k), G(k)]`.
pub fn weighted_limit(weight: &Weight, values: &[QValue]) -> Result<QValue, EnrichedError> {
    if values.len() != weight.values.len() {
        return Err(EnrichedError::Shape("limit diagram does not match weight".into()));
    }
    let base = weight.index.base();
    if let Some(v) = values.iter().find(|v| v.base() != base) {
        return Err(EnrichedError::Base(base, v.base()));
    }
    Ok(weight
        .values
        .iter()
        .zip(values)
        .fold(base.terminal(), |acc, (&p, &g)| acc.meet(p.hom(g))))
}

/// `F * G` for V-valued `G`: the join over `k` of `F(k) ⊗ G(k)`.
pub fn weighted_colimit(weight: &Weight, values: &[QValue]) -> Result<QValue, EnrichedError> {
    if values.len() != weight.values.len() {
        return Err(EnrichedError::Shape("colimit diagram does not match weight".into()));
    }
    let base = weight.index.base();
    if let Some(v) = values.iter().find(|v| v.base() != base) {
        return Err(EnrichedError::Base(base, v.base()));
    }
    Ok(weight
        .values
        .iter()
        .zip(values)
        .fold(base.initial(), |acc, (&f, &g)| acc.join(f.tensor(g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{discrete, empty_space, one_point};
    use crate::quantale::Base;

    fn q(s: &str) -> QValue {
        Base::RPlus.parse_value(s).unwrap()
    }

    #[test]
    fn limits() {
        let one = one_point(Base::RPlus);
        let unit = Weight::new(one, vec![QValue::ZERO], Variance::Covariant).unwrap();
        assert_eq!(weighted_limit(&unit, &[q("7/2")]).unwrap(), q("7/2"));

        let two = discrete(2, QValue::Infinity);
        let conical = Weight::new(two, vec![QValue::ZERO; 2], Variance::Covariant).unwrap();
        assert_eq!(weighted_limit(&conical, &[q("1"), q("3")]).unwrap(), q("3"));

        let none = Weight::new(empty_space(Base::RPlus), vec![], Variance::Covariant).unwrap();
        assert_eq!(weighted_limit(&none, &[]).unwrap(), QValue::ZERO);
        assert!(weighted_limit(&none, &[q("1")]).is_err());
    }

    #[test]
    fn colimits() {
        let one = one_point(Base::RPlus);
        let unit = Weight::new(one, vec![QValue::ZERO], Variance::Contravariant).unwrap();
        assert_eq!(weighted_colimit(&unit, &[q("7/2")]).unwrap(), q("7/2"));

        let two = discrete(2, QValue::Infinity);
        let conical = Weight::new(two, vec![QValue::ZERO; 2], Variance::Contravariant).unwrap();
        assert_eq!(weighted_colimit(&conical, &[q("1"), q("3")]).unwrap(), q("1"));

        let none = Weight::new(empty_space(Base::RPlus), vec![], Variance::Contravariant).unwrap();
        assert_eq!(weighted_colimit(&none, &[]).unwrap(), QValue::Infinity);
    }

    #[test]
    fn weights_are_checked_for_functoriality() {
        // K = {k,l} with K(k,l) = 0: a covariant weight needs P(l) ≤ P(k).
        let k = Arc::new(
            Space::new(
                "K",
                Base::RPlus,
                vec!["k".into(), "l".into()],
                vec![QValue::ZERO, QValue::ZERO, QValue::Infinity, QValue::ZERO],
            )
            .unwrap(),
        );
        assert!(Weight::new(k.clone(), vec![q("2"), q("1")], Variance::Covariant).is_ok());
        assert!(Weight::new(k.clone(), vec![q("1"), q("2")], Variance::Covariant).is_err());
        assert!(Weight::new(k, vec![q("1"), q("2")], Variance::Contravariant).is_ok());
    }
}
