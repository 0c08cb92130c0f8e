//! Exact arithmetic used inside the enumeration oracles.
//!
//! Both bases embed into R̄₊ (Bool via `1 ↦ 0`, `0 ↦ ∞`), and once every
//! value in play is a multiple of `1/scale` the rationals become integer
//! ticks. The oracles run on ticks whenever that encoding exists and fall
//! back to [`QValue`] otherwise.

use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;

use crate::quantale::{Base, QValue, Rational};

pub(crate) trait Scalar: Copy + Eq + Hash + Debug {
    fn tensor(self, other: Self) -> Self;
    fn hom(self, other: Self) -> Self;
    fn meet(self, other: Self) -> Self;
    fn join(self, other: Self) -> Self;

    /// Categorical order: an arrow `self → other`.
    #[inline]
    fn le(self, other: Self) -> bool {
        self.meet(other) == self
    }
}

impl Scalar for QValue {
    #[inline]
    fn tensor(self, other: Self) -> Self {
        QValue::tensor(self, other)
    }
    #[inline]
    fn hom(self, other: Self) -> Self {
        QValue::hom(self, other)
    }
    #[inline]
    fn meet(self, other: Self) -> Self {
        QValue::meet(self, other)
    }
    #[inline]
    fn join(self, other: Self) -> Self {
        QValue::join(self, other)
    }
}

/// A multiple of `1/scale`, with `u64::MAX` standing for ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Tick(pub u64);

impl Tick {
    pub const INF: Tick = Tick(u64::MAX);
}

impl Scalar for Tick {
    #[inline]
    fn tensor(self, other: Self) -> Self {
        if self == Tick::INF || other == Tick::INF {
            Tick::INF
        } else {
            Tick(self.0 + other.0)
        }
    }
    #[inline]
    fn hom(self, other: Self) -> Self {
        if self == Tick::INF {
            Tick(0)
        } else if other == Tick::INF {
            Tick::INF
        } else {
            Tick(other.0.saturating_sub(self.0))
        }
    }
    #[inline]
    fn meet(self, other: Self) -> Self {
        self.max(other)
    }
    #[inline]
    fn join(self, other: Self) -> Self {
        self.min(other)
    }
}

/// Finite ticks stay below this bound so that sums never overflow.
const TICK_BOUND: u64 = 1 << 40;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Encoder {
    base: Base,
    scale: i64,
}

impl Encoder {
    /// An encoder for every value in `values`, or `None` when the common
    /// denominator or the magnitudes are too large for ticks.
    pub fn for_values<'a>(base: Base, values: impl IntoIterator<Item = &'a QValue>) -> Option<Encoder> {
        let mut scale: i64 = 1;
        let mut finite = Vec::new();
        for v in values {
            if let QValue::Finite(r) = v {
                scale = scale.checked_mul(*r.denom() / scale.gcd(r.denom()))?;
                if scale as u64 > TICK_BOUND {
                    return None;
                }
                finite.push(*r);
            }
        }
        let enc = Encoder { base, scale };
        for r in finite {
            enc.encode_rational(r)?;
        }
        Some(enc)
    }

    fn encode_rational(&self, r: Rational) -> Option<u64> {
        if (self.scale % r.denom()) != 0 {
            return None;
        }
        let t = r.numer().checked_mul(self.scale / r.denom())?;
        let t = u64::try_from(t).ok()?;
        (t < TICK_BOUND).then_some(t)
    }

    pub fn encode(&self, v: QValue) -> Option<Tick> {
        match v {
            QValue::Bool(true) => Some(Tick(0)),
            QValue::Bool(false) | QValue::Infinity => Some(Tick::INF),
            QValue::Finite(r) => self.encode_rational(r).map(Tick),
        }
    }

    pub fn decode(&self, t: Tick) -> QValue {
        match self.base {
            Base::Bool => QValue::Bool(t.0 == 0),
            Base::RPlus if t == Tick::INF => QValue::Infinity,
            Base::RPlus => QValue::Finite(Rational::new(t.0 as i64, self.scale)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_agree_with_exact_arithmetic() {
        let values: Vec<QValue> =
            ["0", "1/2", "1", "3/2", "2", "7/3", "inf"].iter().map(|s| Base::RPlus.parse_value(s).unwrap()).collect();
        let enc = Encoder::for_values(Base::RPlus, &values).unwrap();
        for &x in &values {
            for &y in &values {
                let (tx, ty) = (enc.encode(x).unwrap(), enc.encode(y).unwrap());
                assert_eq!(enc.decode(tx.tensor(ty)), x.tensor(y));
                assert_eq!(enc.decode(tx.hom(ty)), x.hom(y));
                assert_eq!(enc.decode(tx.meet(ty)), x.meet(y));
                assert_eq!(enc.decode(tx.join(ty)), x.join(y));
            }
        }
        let bools = [QValue::TRUE, QValue::FALSE];
        let enc = Encoder::for_values(Base::Bool, &bools).unwrap();
        for &x in &bools {
            for &y in &bools {
                let (tx, ty) = (enc.encode(x).unwrap(), enc.encode(y).unwrap());
                assert_eq!(enc.decode(tx.tensor(ty)), x.tensor(y));
                assert_eq!(enc.decode(tx.hom(ty)), x.hom(y));
                assert_eq!(enc.decode(tx.meet(ty)), x.meet(y));
                assert_eq!(enc.decode(tx.join(ty)), x.join(y));
            }
        }
    }

    #[test]
    fn oversized_values_are_not_encoded() {
        let huge = QValue::Finite(Rational::from_integer(1 << 50));
        assert!(Encoder::for_values(Base::RPlus, &[huge]).is_none());
    }
}
