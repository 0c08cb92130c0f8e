//! Eventually periodic sequences and the constructions producing forward
//! Cauchy sequences from filters.

use std::collections::HashMap;
use std::sync::Arc;

use crate::enriched::{EnrichedError, LeftModule, Space};
use crate::quantale::{Base, QValue, Rational};

use super::{filter_morphism, is_flat, is_weakly_flat, m_minus, same_space, FilterError, PrincipalFilter};

/// `preperiod ++ cycle ++ cycle ++ ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvPeriodicSequence {
    space: Arc<Space>,
    preperiod: Vec<usize>,
    cycle: Vec<usize>,
}

impl EvPeriodicSequence {
    pub fn new(space: Arc<Space>, preperiod: Vec<usize>, cycle: Vec<usize>) -> Result<EvPeriodicSequence, FilterError> {
        if cycle.is_empty() {
            return Err(FilterError::EmptyCycle);
        }
        if let Some(&x) = preperiod.iter().chain(&cycle).find(|&&x| x >= space.len()) {
            return Err(EnrichedError::UnknownPoint(format!("#{x}")).into());
        }
        Ok(EvPeriodicSequence { space, preperiod, cycle })
    }

    pub fn constant(space: Arc<Space>, x: usize) -> Result<EvPeriodicSequence, FilterError> {
        EvPeriodicSequence::new(space, Vec::new(), vec![x])
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn preperiod(&self) -> &[usize] {
        &self.preperiod
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn at(&self, n: usize) -> usize {
        match n.checked_sub(self.preperiod.len()) {
            None => self.preperiod[n],
            Some(k) => self.cycle[k % self.cycle.len()],
        }
    }

    /// The same sequence with the shortest preperiod and cycle.
    pub fn normalized(mut self) -> EvPeriodicSequence {
        let len = self.cycle.len();
        if let Some(p) = (1..=len).find(|&p| len.is_multiple_of(p) && (p..len).all(|i| self.cycle[i] == self.cycle[i - p])) {
            self.cycle.truncate(p);
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.cycle.last().expect("cycle is non-empty") {
                break;
            }
            self.preperiod.pop();
            self.cycle.rotate_right(1);
        }
        self
    }

    /// Points visited infinitely often.
    pub fn cycle_values(&self) -> Vec<usize> {
        let mut v = self.cycle.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Points of the tail from index `n` on.
    pub fn tail_values(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.preperiod.iter().skip(n).copied().chain(self.cycle.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The filter generated by the tails; on a finite carrier it is
    /// generated by the cycle's values.
    pub fn tail_filter(&self) -> PrincipalFilter {
        PrincipalFilter::new(self.space.clone(), self.cycle_values()).expect("cycle is non-empty")
    }

    /// Every ordered pair of cycle values recurs past any index, so the
    /// sequence is forward Cauchy exactly when those values form a zero
    /// clique.
    pub fn is_forward_cauchy(&self) -> bool {
        let vals = self.cycle_values();
        vals.iter().all(|&u| vals.iter().all(|&v| self.space.arrow(u, v)))
    }

    pub fn label(&self) -> String {
        let names = |xs: &[usize]| xs.iter().map(|&x| self.space.point(x)).collect::<Vec<_>>().join(" ");
        format!("[{}]({})", names(&self.preperiod), names(&self.cycle))
    }
}

/// `d ≤ α·2^e` for a distance `d` and positive rational `α`, exactly.
fn within(d: QValue, alpha: Rational, e: i64) -> bool {
    let QValue::Finite(d) = d else { return false };
    let (p, q) = (i128::from(*d.numer()), i128::from(*d.denom()));
    let (a, b) = (i128::from(*alpha.numer()), i128::from(*alpha.denom()));
    if p == 0 {
        return true;
    }
    // p/q ≤ (a/b)·2^e  ⟺  p·b ≤ a·q·2^e.
    let lhs = p * b;
    let rhs = a * q;
    if e >= 0 {
        if e >= 126 {
            return true;
        }
        rhs.checked_mul(1i128 << e).is_none_or(|r| lhs <= r)
    } else {
        if -e >= 126 {
            return false;
        }
        lhs.checked_mul(1i128 << -e).is_some_and(|l| l <= rhs)
    }
}

/// Least positive finite distance of the space, if there is one.
fn least_positive(space: &Space) -> Option<Rational> {
    space
        .matrix()
        .iter()
        .filter_map(|v| v.as_rational())
        .filter(|r| *r > Rational::from_integer(0))
        .min()
}

/// Whether `α·2^e` is already below every positive distance, so that
/// `within(·, α, e)` only admits distance zero.
fn below_all(space: &Space, alpha: Rational, e: i64) -> bool {
    match least_positive(space) {
        None => true,
        Some(delta) => !within(QValue::Finite(delta), alpha, e),
    }
}

fn require_rplus(space: &Space) -> Result<(), FilterError> {
    if space.base() == Base::RPlus {
        Ok(())
    } else {
        Err(FilterError::NotRPlus)
    }
}

/// Builds a forward Cauchy sequence `(yₙ) → F` with `M⁻(yₙ) ⇏ M`.
///
/// Follows the greedy construction: fix a witness `x` with
/// `M⁻(F)(x) < M(x)` and a gap `α`, pick `y₀ ∈ B` with `A(x,y₀) + α < M(x)`
/// and then `yₙ₊₁ ∈ B` with `A(yₙ,yₙ₊₁) ≤ α·2^{−2−n}`, always taking the
/// first admissible point. Once the tolerance drops below every positive
/// distance the choice no longer depends on `n`, so the sequence is read
/// off as soon as a point repeats.
pub fn separating_sequence(f: &PrincipalFilter, m: &LeftModule) -> Result<EvPeriodicSequence, FilterError> {
    let space = f.space();
    require_rplus(space)?;
    if !same_space(space, m.space()) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    if !is_weakly_flat(f) {
        return Err(FilterError::NotWeaklyFlat(f.label()));
    }
    let lower = m_minus(f);
    let x = (0..space.len())
        .find(|&x| lower.at(x).numeric_cmp(m.at(x)).is_lt())
        .ok_or(FilterError::NoSeparatingWitness)?;
    let gap = match (m.at(x), lower.at(x)) {
        (QValue::Finite(mx), QValue::Finite(lx)) => (mx - lx) / Rational::from_integer(2),
        _ => Rational::from_integer(1),
    };
    let b = f.generator();
    let y0 = *b
        .iter()
        .find(|&&y| space.dist(x, y).tensor(QValue::Finite(gap)).numeric_cmp(m.at(x)).is_lt())
        .expect("the gap leaves room for some generator point");

    let mut ys = vec![y0];
    let mut first_stable: HashMap<usize, usize> = HashMap::new();
    let mut n: i64 = 0;
    loop {
        let cur = *ys.last().expect("non-empty");
        let stable = below_all(space, gap, -2 - n);
        if stable {
            if let Some(&start) = first_stable.get(&cur) {
                let pos = ys.len() - 1;
                let seq = EvPeriodicSequence::new(space.clone(), ys[..start].to_vec(), ys[start..pos].to_vec())?;
                return Ok(seq.normalized());
            }
            first_stable.insert(cur, ys.len() - 1);
        }
        let next = *b
            .iter()
            .find(|&&y| within(space.dist(cur, y), gap, -2 - n))
            .expect("weak flatness provides a successor");
        ys.push(next);
        n += 1;
    }
}

/// The least `N ≥ floor` such that every point of the tail from `N` is
/// within `2^{-i}` of the generator.
fn tail_index(s: &EvPeriodicSequence, f: &PrincipalFilter, i: i64, floor: usize) -> usize {
    let space = f.space();
    let one = Rational::from_integer(1);
    let close = |x: usize| f.generator().iter().any(|&y| within(space.dist(x, y), one, -i));
    let mut n = floor;
    while !s.tail_values(n).into_iter().all(close) {
        n += 1;
    }
    n
}

/// Builds a forward Cauchy `(zₙ)` with `(xₙ) → (zₙ) ← (yₙ)` and `(zₙ) → F`.
///
/// Index blocks: `Nᵢ` is the least index past `Nᵢ₋₁` from which the tail
/// of `(xₙ)` is within `2^{-i}` of the generator, `Xᵢ = {xₙ : Nᵢ ≤ n < Nᵢ₊₁}`,
/// and likewise `Mᵢ`, `Yᵢ` for `(yₙ)`. Every `fᵢ` is the generator `B`.
/// Then `z₀` is the first point of `B` and `zᵢ₊₁` the first point of `B`
/// within `2^{-i+1}` of all of `Xᵢ ∪ Yᵢ ∪ {zᵢ}`.
pub fn interpolate_sequences(
    s1: &EvPeriodicSequence,
    s2: &EvPeriodicSequence,
    f: &PrincipalFilter,
) -> Result<EvPeriodicSequence, FilterError> {
    let space = f.space();
    require_rplus(space)?;
    if !same_space(space, s1.space()) || !same_space(space, s2.space()) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    if !is_flat(f) {
        return Err(FilterError::NotFlat(f.label()));
    }
    for s in [s1, s2] {
        if !is_weakly_flat(&s.tail_filter()) {
            return Err(FilterError::Precondition(format!("sequence {} is not weakly flat", s.label())));
        }
        if !filter_morphism(&s.tail_filter(), f)? {
            return Err(FilterError::Precondition(format!("sequence {} does not map to {}", s.label(), f.label())));
        }
    }
    let b = f.generator();
    let one = Rational::from_integer(1);

    let mut ns = vec![tail_index(s1, f, 0, 0)];
    let mut ms = vec![tail_index(s2, f, 0, 0)];
    let mut zs = vec![b[0]];
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut i: i64 = 0;
    loop {
        let iu = i as usize;
        ns.push(tail_index(s1, f, i + 1, ns[iu] + 1));
        ms.push(tail_index(s2, f, i + 1, ms[iu] + 1));
        let z = zs[iu];
        // From here on blocks have one element and only distance 0 passes,
        // so the step depends on (zᵢ, phase of xₙ, phase of yₙ) alone.
        let stable = i >= 1
            && below_all(space, one, 1 - i)
            && ns[iu] == ns[iu - 1] + 1
            && ms[iu] == ms[iu - 1] + 1
            && ns[iu] >= s1.preperiod().len()
            && ms[iu] >= s2.preperiod().len();
        if stable {
            let key = (
                z,
                (ns[iu] - s1.preperiod().len()) % s1.cycle().len(),
                (ms[iu] - s2.preperiod().len()) % s2.cycle().len(),
            );
            if let Some(&start) = seen.get(&key) {
                let seq = EvPeriodicSequence::new(space.clone(), zs[..start].to_vec(), zs[start..iu].to_vec())?;
                return Ok(seq.normalized());
            }
            seen.insert(key, iu);
        }
        let block: Vec<usize> = (ns[iu]..ns[iu + 1])
            .map(|n| s1.at(n))
            .chain((ms[iu]..ms[iu + 1]).map(|n| s2.at(n)))
            .chain(std::iter::once(z))
            .collect();
        let next = b
            .iter()
            .copied()
            .find(|&c| block.iter().all(|&x| within(space.dist(x, c), one, 1 - i)))
            .ok_or_else(|| FilterError::Precondition(format!("no interpolating point at step {i}")))?;
        zs.push(next);
        i += 1;
    }
}
