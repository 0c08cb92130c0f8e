//! Small named spaces used throughout the tests, goldens and verification
//! runs.

use std::sync::Arc;

use crate::enriched::Space;
use crate::quantale::{Base, QValue};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn int(n: u32) -> QValue {
    QValue::int(n)
}

/// Three points with an asymmetric metric and a discrete zero-preorder.
pub fn t3() -> Arc<Space> {
    let d = [[0, 1, 2], [2, 0, 1], [5, 4, 0]];
    Space::from_fn("T3", Base::RPlus, names(&["a", "b", "c"]), |x, y| int(d[x][y]))
        .expect("T3 is a valid space")
        .into_ref()
}

/// Two points at distance zero in both directions.
pub fn z2() -> Arc<Space> {
    Space::from_fn("Z2", Base::RPlus, names(&["p", "q"]), |_, _| QValue::ZERO)
        .expect("Z2 is a valid space")
        .into_ref()
}

pub fn one_point(base: Base) -> Arc<Space> {
    Space::from_fn("one", base, names(&["o"]), |_, _| base.unit())
        .expect("one-point space")
        .into_ref()
}

pub fn empty_space(base: Base) -> Arc<Space> {
    Space::new("empty", base, Vec::new(), Vec::new())
        .expect("empty space")
        .into_ref()
}

/// `n` points named `x0, x1, ...` at pairwise distance `d`.
pub fn discrete(n: usize, d: QValue) -> Arc<Space> {
    let points = (0..n).map(|i| format!("x{i}")).collect();
    let unit = d.base().unit();
    Space::from_fn("discrete", d.base(), points, |x, y| if x == y { unit } else { d })
        .expect("discrete space")
        .into_ref()
}

/// Two incomparable points, over Bool.
pub fn antichain2() -> Arc<Space> {
    Space::from_fn("antichain", Base::Bool, names(&["x", "y"]), |x, y| QValue::Bool(x == y))
        .expect("antichain")
        .into_ref()
}

/// The chain `x < y`, over Bool.
pub fn chain2() -> Arc<Space> {
    Space::from_fn("chain", Base::Bool, names(&["x", "y"]), |x, y| QValue::Bool(x <= y))
        .expect("chain")
        .into_ref()
}

/// Two points at distance 1 from each other.
pub fn pair1() -> Arc<Space> {
    Space::from_fn("pair", Base::RPlus, names(&["x", "y"]), |x, y| int(u32::from(x != y)))
        .expect("pair")
        .into_ref()
}
