//! The two base quantales: extended non-negative rationals (R̄₊) and Bool.
//!
//! Everything here is phrased in the *categorical* order of the base, where
//! `x ⊑ y` means there is an arrow `x → y`. For R̄₊ the arrows run downhill
//! (`x → y` iff `x ≥ y` numerically), so:
//!
//! | categorical | R̄₊ (numeric)   | Bool |
//! |-------------|----------------|------|
//! | `meet`      | maximum / sup  | `∧`  |
//! | `join`      | minimum / inf  | `∨`  |
//! | `tensor`    | addition       | `∧`  |
//! | `unit`      | `0`            | `1`  |
//! | `hom(x,y)`  | `max(y−x, 0)`  | `⇒`  |
//!
//! In the metric literature the big-wedge over R̄₊ denotes the numeric
//! infimum, which is the categorical *join* here; the big-vee denotes the
//! numeric supremum, which is the categorical *meet*. Code in the other
//! modules always names the categorical operation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedSub, Signed};
use thiserror::Error;

/// Exact rational used for finite R̄₊ values.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(Base, Base),
    #[error("empty family")]
    EmptyFamily,
    #[error("operation requires the rplus base")]
    NotRPlus,
    #[error("side condition violated: supremum is infinite but no member is")]
    Inapplicable,
    #[error("negative value {0}")]
    Negative(Rational),
    #[error("invalid {base} literal `{literal}`")]
    BadLiteral { base: Base, literal: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    RPlus,
    Bool,
}

impl Base {
    pub fn unit(self) -> QValue {
        match self {
            Base::RPlus => QValue::ZERO,
            Base::Bool => QValue::TRUE,
        }
    }

    /// Terminal object: the empty categorical meet. Coincides with the unit
    /// for both bases.
    pub fn terminal(self) -> QValue {
        self.unit()
    }

    /// Initial object: the empty categorical join.
    pub fn initial(self) -> QValue {
        match self {
            Base::RPlus => QValue::Infinity,
            Base::Bool => QValue::FALSE,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Base::RPlus => "rplus",
            Base::Bool => "bool",
        }
    }

    pub fn parse_value(self, literal: &str) -> Result<QValue, QuantaleError> {
        let bad = || QuantaleError::BadLiteral { base: self, literal: literal.to_string() };
        match self {
            Base::Bool => match literal {
                "0" => Ok(QValue::FALSE),
                "1" => Ok(QValue::TRUE),
                _ => Err(bad()),
            },
            Base::RPlus => {
                if literal == "inf" {
                    return Ok(QValue::Infinity);
                }
                let r = parse_rational(literal).ok_or_else(bad)?;
                QValue::real(r)
            }
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Base {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rplus" => Ok(Base::RPlus),
            "bool" => Ok(Base::Bool),
            other => Err(format!("unknown base `{other}` (expected rplus or bool)")),
        }
    }
}

// `p/q` or an integer; only ASCII digits, optional leading `-` so that
// negatives are rejected with a precise error rather than as garbage.
fn parse_rational(s: &str) -> Option<Rational> {
    fn int(s: &str) -> Option<i64> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match s.split_once('/') {
        None => int(s).map(Rational::from_integer),
        Some((p, q)) => {
            let p = int(p)?;
            let q = int(q)?;
            if q <= 0 {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

/// An element of one of the two base quantales.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QValue {
    /// Finite non-negative element of R̄₊.
    Finite(Rational),
    /// `+∞` in R̄₊.
    Infinity,
    Bool(bool),
}

impl QValue {
    pub const ZERO: QValue = QValue::Finite(Ratio::new_raw(0, 1));
    pub const TRUE: QValue = QValue::Bool(true);
    pub const FALSE: QValue = QValue::Bool(false);

    pub fn real(r: Rational) -> Result<QValue, QuantaleError> {
        if r.is_negative() {
            Err(QuantaleError::Negative(r))
        } else {
            Ok(QValue::Finite(r))
        }
    }

    /// Non-negative integer in R̄₊.
    pub fn int(n: u32) -> QValue {
        QValue::Finite(Rational::from_integer(i64::from(n)))
    }

    /// `num/den` in R̄₊. Panics on a zero denominator.
    pub fn frac(num: u32, den: u32) -> QValue {
        QValue::Finite(Rational::new(i64::from(num), i64::from(den)))
    }

    pub fn base(self) -> Base {
        match self {
            QValue::Finite(_) | QValue::Infinity => Base::RPlus,
            QValue::Bool(_) => Base::Bool,
        }
    }

    pub fn is_unit(self) -> bool {
        self == self.base().unit()
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, QValue::Infinity)
    }

    pub fn as_rational(self) -> Option<Rational> {
        match self {
            QValue::Finite(r) => Some(r),
            _ => None,
        }
    }

    fn same_base(self, other: QValue) -> Result<Base, QuantaleError> {
        let (a, b) = (self.base(), other.base());
        if a == b {
            Ok(a)
        } else {
            Err(QuantaleError::BaseMismatch(a, b))
        }
    }

    fn expect_same(self, other: QValue) -> Base {
        match self.same_base(other) {
            Ok(b) => b,
            Err(e) => panic!("{e}"),
        }
    }

    /// Monoidal product. Panics on base mismatch; see [`tensor`] for the
    /// checked variant.
    pub fn tensor(self, other: QValue) -> QValue {
        self.expect_same(other);
        match (self, other) {
            (QValue::Finite(a), QValue::Finite(b)) => {
                QValue::Finite(a.checked_add(&b).expect("rational overflow in tensor"))
            }
            (QValue::Bool(a), QValue::Bool(b)) => QValue::Bool(a && b),
            _ => QValue::Infinity,
        }
    }

    /// Internal hom `[self, other]`, right adjoint to tensoring with `self`.
    pub fn hom(self, other: QValue) -> QValue {
        self.expect_same(other);
        match (self, other) {
            (QValue::Bool(a), QValue::Bool(b)) => QValue::Bool(!a || b),
            (QValue::Infinity, _) => QValue::ZERO,
            (QValue::Finite(_), QValue::Infinity) => QValue::Infinity,
            (QValue::Finite(x), QValue::Finite(y)) => {
                if y > x {
                    QValue::Finite(y.checked_sub(&x).expect("rational overflow in hom"))
                } else {
                    QValue::ZERO
                }
            }
            _ => unreachable!(),
        }
    }

    /// `self ⊑ other`: there is an arrow `self → other` in the base.
    pub fn le(self, other: QValue) -> bool {
        self.expect_same(other);
        match (self, other) {
            (QValue::Bool(a), QValue::Bool(b)) => !a || b,
            _ => self.numeric_cmp(other) != Ordering::Less,
        }
    }

    /// Binary categorical meet.
    pub fn meet(self, other: QValue) -> QValue {
        self.expect_same(other);
        match (self, other) {
            (QValue::Bool(a), QValue::Bool(b)) => QValue::Bool(a && b),
            _ => std::cmp::max_by(self, other, |a, b| a.numeric_cmp(*b)),
        }
    }

    /// Binary categorical join.
    pub fn join(self, other: QValue) -> QValue {
        self.expect_same(other);
        match (self, other) {
            (QValue::Bool(a), QValue::Bool(b)) => QValue::Bool(a || b),
            _ => std::cmp::min_by(self, other, |a, b| a.numeric_cmp(*b)),
        }
    }

    /// Numeric order on R̄₊ (∞ largest); `false < true` on Bool.
    pub fn numeric_cmp(self, other: QValue) -> Ordering {
        match (self, other) {
            (QValue::Finite(a), QValue::Finite(b)) => a.cmp(&b),
            (QValue::Finite(_), QValue::Infinity) => Ordering::Less,
            (QValue::Infinity, QValue::Finite(_)) => Ordering::Greater,
            (QValue::Infinity, QValue::Infinity) => Ordering::Equal,
            (QValue::Bool(a), QValue::Bool(b)) => a.cmp(&b),
            (a, b) => panic!("{}", QuantaleError::BaseMismatch(a.base(), b.base())),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Infinity => f.write_str("inf"),
            QValue::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            QValue::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            QValue::Bool(b) => f.write_str(if *b { "1" } else { "0" }),
        }
    }
}

fn fold_same<F>(base: Base, xs: &[QValue], empty: QValue, op: F) -> Result<QValue, QuantaleError>
where
    F: Fn(QValue, QValue) -> QValue,
{
    let mut acc = empty;
    for &x in xs {
        if x.base() != base {
            return Err(QuantaleError::BaseMismatch(base, x.base()));
        }
        acc = op(acc, x);
    }
    Ok(acc)
}

pub fn tensor(x: QValue, y: QValue) -> Result<QValue, QuantaleError> {
    x.same_base(y)?;
    Ok(x.tensor(y))
}

pub fn hom(x: QValue, y: QValue) -> Result<QValue, QuantaleError> {
    x.same_base(y)?;
    Ok(x.hom(y))
}

/// Categorical meet of a finite family; the empty meet is the terminal object.
pub fn meet_fin(base: Base, xs: &[QValue]) -> Result<QValue, QuantaleError> {
    fold_same(base, xs, base.terminal(), QValue::meet)
}

/// Categorical join of a finite family; the empty join is the initial object.
pub fn join_fin(base: Base, xs: &[QValue]) -> Result<QValue, QuantaleError> {
    fold_same(base, xs, base.initial(), QValue::join)
}

fn rplus_family(xs: &[QValue]) -> Result<(), QuantaleError> {
    if xs.is_empty() {
        return Err(QuantaleError::EmptyFamily);
    }
    if let Some(x) = xs.iter().find(|x| x.base() != Base::RPlus) {
        return Err(QuantaleError::BaseMismatch(Base::RPlus, x.base()));
    }
    Ok(())
}

/// `[v, inf aᵢ] = inf [v, aᵢ]` for a non-empty family in R̄₊.
pub fn check_fac_r(v: QValue, family: &[QValue]) -> Result<bool, QuantaleError> {
    check_fac_r_with(v, family, QValue::hom)
}

/// [`check_fac_r`] with a caller-supplied internal hom; used to sanity-check
/// the verification harness against a deliberately broken hom.
pub fn check_fac_r_with(
    v: QValue,
    family: &[QValue],
    hom: impl Fn(QValue, QValue) -> QValue,
) -> Result<bool, QuantaleError> {
    if v.base() != Base::RPlus {
        return Err(QuantaleError::NotRPlus);
    }
    rplus_family(family)?;
    let inf = join_fin(Base::RPlus, family)?;
    let lhs = hom(v, inf);
    let homs: Vec<QValue> = family.iter().map(|&a| hom(v, a)).collect();
    Ok(lhs == join_fin(Base::RPlus, &homs)?)
}

/// `[sup aᵢ, v] = inf [aᵢ, v]` for a non-empty family in R̄₊ whose supremum is
/// only infinite when some member is. Returns [`QuantaleError::Inapplicable`]
/// when that side condition fails.
pub fn check_fac_r2(v: QValue, family: &[QValue]) -> Result<bool, QuantaleError> {
    if v.base() != Base::RPlus {
        return Err(QuantaleError::NotRPlus);
    }
    rplus_family(family)?;
    let sup = meet_fin(Base::RPlus, family)?;
    if sup.is_infinite() && !family.iter().any(|a| a.is_infinite()) {
        return Err(QuantaleError::Inapplicable);
    }
    let homs: Vec<QValue> = family.iter().map(|&a| a.hom(v)).collect();
    Ok(sup.hom(v) == join_fin(Base::RPlus, &homs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QValue {
        Base::RPlus.parse_value(s).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(q("1/2"), q("3/2")).unwrap(), q("2"));
        assert_eq!(tensor(QValue::Infinity, QValue::ZERO).unwrap(), QValue::Infinity);
        assert_eq!(tensor(QValue::TRUE, QValue::FALSE).unwrap(), QValue::FALSE);
        assert!(matches!(tensor(QValue::TRUE, QValue::ZERO), Err(QuantaleError::BaseMismatch(..))));
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom(q("1"), q("3")).unwrap(), q("2"));
        assert_eq!(hom(q("3"), q("1")).unwrap(), QValue::ZERO);
        assert_eq!(hom(QValue::Infinity, QValue::Infinity).unwrap(), QValue::ZERO);
        assert_eq!(hom(q("5"), QValue::Infinity).unwrap(), QValue::Infinity);
        assert_eq!(hom(QValue::Infinity, q("5")).unwrap(), QValue::ZERO);
        assert_eq!(hom(QValue::TRUE, QValue::FALSE).unwrap(), QValue::FALSE);
        assert!(hom(QValue::FALSE, QValue::ZERO).is_err());
    }

    #[test]
    fn finite_meets_and_joins() {
        let xs = [q("1"), q("2"), q("5")];
        assert_eq!(join_fin(Base::RPlus, &xs).unwrap(), q("1"));
        assert_eq!(meet_fin(Base::RPlus, &xs).unwrap(), q("5"));
        assert_eq!(meet_fin(Base::RPlus, &[]).unwrap(), QValue::ZERO);
        assert_eq!(join_fin(Base::RPlus, &[]).unwrap(), QValue::Infinity);
        assert_eq!(join_fin(Base::Bool, &[QValue::FALSE, QValue::TRUE]).unwrap(), QValue::TRUE);
        assert_eq!(meet_fin(Base::Bool, &[]).unwrap(), QValue::TRUE);
        assert_eq!(join_fin(Base::Bool, &[]).unwrap(), QValue::FALSE);
        assert!(join_fin(Base::Bool, &[QValue::ZERO]).is_err());
    }

    #[test]
    fn fac_r_examples() {
        assert!(check_fac_r(q("2"), &[q("3"), q("5")]).unwrap());
        assert!(check_fac_r(QValue::ZERO, &[q("7/3")]).unwrap());
        assert!(check_fac_r(QValue::Infinity, &[q("1"), QValue::Infinity]).unwrap());
        assert_eq!(check_fac_r(q("1"), &[]), Err(QuantaleError::EmptyFamily));
        assert_eq!(check_fac_r(QValue::TRUE, &[QValue::TRUE]), Err(QuantaleError::NotRPlus));
    }

    #[test]
    fn fac_r2_examples() {
        assert!(check_fac_r2(q("5"), &[q("1"), q("3")]).unwrap());
        assert!(check_fac_r2(QValue::ZERO, &[q("4")]).unwrap());
        assert!(check_fac_r2(q("1"), &[q("2"), QValue::Infinity]).unwrap());
        assert_eq!(check_fac_r2(q("1"), &[]), Err(QuantaleError::EmptyFamily));
    }

    #[test]
    fn the_empty_family_breaks_fac_r() {
        // [∞, inf ∅] = [∞, ∞] = 0, but the inf of the empty family of homs is ∞.
        let lhs = QValue::Infinity.hom(Base::RPlus.initial());
        assert_eq!(lhs, QValue::ZERO);
        assert_ne!(lhs, join_fin(Base::RPlus, &[]).unwrap());
    }

    #[test]
    fn literals() {
        assert_eq!(q("4/2"), q("2"));
        assert_eq!(q("inf"), QValue::Infinity);
        assert_eq!(q("3/6").to_string(), "1/2");
        for bad in ["", "-1", "1/0", "1/-2", "x", "1.5", "inf/2", "+3", "2/"] {
            assert!(Base::RPlus.parse_value(bad).is_err(), "{bad}");
        }
        assert!(Base::Bool.parse_value("2").is_err());
        assert_eq!(Base::Bool.parse_value("1").unwrap(), QValue::TRUE);
    }

    #[test]
    fn categorical_order_reverses_numeric() {
        assert!(q("3").le(q("1")));
        assert!(!q("1").le(q("3")));
        assert!(QValue::Infinity.le(QValue::ZERO));
        assert!(QValue::FALSE.le(QValue::TRUE));
    }
}
