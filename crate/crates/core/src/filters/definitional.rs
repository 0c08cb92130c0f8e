//! Filter properties evaluated straight from their ε-quantified
//! definitions, with filter members ranging over all supersets of the
//! generator. Exponential in the number of points; used to cross-check the
//! closed forms on small spaces.

use crate::enriched::Space;
use crate::quantale::{QValue, Rational};

use super::{EvPeriodicSequence, PrincipalFilter};

/// The tolerances that matter: every positive finite distance and half the
/// least one. Each definition below is monotone in `ε`, so these decide it.
pub fn tolerances(space: &Space) -> Vec<QValue> {
    let mut positive: Vec<Rational> = space
        .matrix()
        .iter()
        .filter_map(|v| v.as_rational())
        .filter(|r| *r > Rational::from_integer(0))
        .collect();
    positive.sort();
    positive.dedup();
    let mut out = Vec::new();
    match positive.first() {
        Some(&least) => out.push(QValue::Finite(least / Rational::from_integer(2))),
        None => out.push(QValue::int(1)),
    }
    out.extend(positive.into_iter().map(QValue::Finite));
    out
}

fn le(d: QValue, eps: QValue) -> bool {
    d.numeric_cmp(eps).is_le()
}

/// Members of the filter: every superset of the generator.
fn members(f: &PrincipalFilter) -> Vec<Vec<usize>> {
    let n = f.space().len();
    let gen_mask: usize = f.generator().iter().map(|&x| 1 << x).sum();
    (0usize..(1 << n))
        .filter(|m| m & gen_mask == gen_mask)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

fn subsets_of(xs: &[usize]) -> Vec<Vec<usize>> {
    (0usize..(1 << xs.len()))
        .map(|m| (0..xs.len()).filter(|&i| m & (1 << i) != 0).map(|i| xs[i]).collect())
        .collect()
}

/// `P(f, ε, F)`: every `x ∈ f` is within `ε` of some point of every member.
pub fn property_p(space: &Space, f: &[usize], eps: QValue, filter: &PrincipalFilter) -> bool {
    let gs = members(filter);
    f.iter().all(|&x| gs.iter().all(|g| g.iter().any(|&y| le(space.dist(x, y), eps))))
}

/// `Q(f, ε, F)`: every finite family in `f` has, in every member, a common
/// point within `ε` of all of it.
pub fn property_q(space: &Space, f: &[usize], eps: QValue, filter: &PrincipalFilter) -> bool {
    let gs = members(filter);
    subsets_of(f)
        .iter()
        .all(|xs| gs.iter().all(|g| g.iter().any(|&y| xs.iter().all(|&x| le(space.dist(x, y), eps)))))
}

pub fn weakly_flat(f: &PrincipalFilter) -> bool {
    let s = f.space();
    let fs = members(f);
    tolerances(s).into_iter().all(|eps| fs.iter().any(|m| property_p(s, m, eps, f)))
}

pub fn flat(f: &PrincipalFilter) -> bool {
    let s = f.space();
    let fs = members(f);
    tolerances(s).into_iter().all(|eps| fs.iter().any(|m| property_q(s, m, eps, f)))
}

/// Some member has diameter at most `ε`, for every `ε`.
pub fn cauchy(f: &PrincipalFilter) -> bool {
    let s = f.space();
    let fs = members(f);
    tolerances(s)
        .into_iter()
        .all(|eps| fs.iter().any(|m| m.iter().all(|&x| m.iter().all(|&y| le(s.dist(x, y), eps)))))
}

/// `F1 → F2` for weakly flat filters: for every `ε` some member of `F1`
/// satisfies `P(·, ε, F2)`.
pub fn morphism(f1: &PrincipalFilter, f2: &PrincipalFilter) -> bool {
    let s = f1.space();
    let fs = members(f1);
    tolerances(s).into_iter().all(|eps| fs.iter().any(|m| property_p(s, m, eps, f2)))
}

/// `∀ε ∃N ∀m ≥ n ≥ N: A(xₙ,xₘ) ≤ ε`. Indices beyond one preperiod plus two
/// cycles only repeat earlier pairs.
pub fn forward_cauchy(s: &EvPeriodicSequence) -> bool {
    let space = s.space();
    let horizon = s.preperiod().len() + s.cycle().len();
    tolerances(space).into_iter().all(|eps| {
        (0..=horizon).any(|big_n| {
            (big_n..big_n + horizon)
                .all(|n| (n..=n + horizon).all(|m| le(space.dist(s.at(n), s.at(m)), eps)))
        })
    })
}

/// On an `n`-point set every proper, upward closed, intersection-stable
/// family of subsets is the set of supersets of its intersection.
pub fn every_filter_is_principal(n: usize) -> bool {
    assert!(n <= 4, "exhaustive over families of subsets; keep n small");
    let sets = 1usize << n;
    let full = sets - 1;
    (0u64..(1u64 << sets)).all(|family| {
        let has = |s: usize| family & (1 << s) != 0;
        let members: Vec<usize> = (0..sets).filter(|&s| has(s)).collect();
        if members.is_empty() || has(0) {
            return true;
        }
        let upward = members.iter().all(|&s| (0..sets).all(|t| t & s != s || has(t)));
        let meets = members.iter().all(|&s| members.iter().all(|&t| has(s & t)));
        if !(upward && meets) {
            return true;
        }
        let core = members.iter().fold(full, |acc, &s| acc & s);
        (0..sets).all(|t| has(t) == (t & core == core))
    })
}
