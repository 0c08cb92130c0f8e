//! Sampled check that `{P, −}: [K,V] → V` preserves colimits.

use std::fmt;

use crate::enriched::{Variance, Weight};
use crate::quantale::QValue;

use super::FlatnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColimitKind {
    /// Unit weight over a non-empty discrete index.
    Conical,
    /// Index with at most one point, any weight.
    AtMostOnePoint,
    /// Any sampled index size, any weight.
    Finite,
}

impl fmt::Display for ColimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColimitKind::Conical => "conical",
            ColimitKind::AtMostOnePoint => "unary",
            ColimitKind::Finite => "finite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoflatSample {
    pub kind: ColimitKind,
    pub checked: u64,
    pub failures: u64,
}

impl CoflatSample {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoflatReport {
    pub holds: bool,
    pub samples: Vec<CoflatSample>,
    pub first_failure: Option<String>,
}

impl CoflatReport {
    pub fn kind(&self, kind: ColimitKind) -> &CoflatSample {
        self.samples.iter().find(|s| s.kind == kind).expect("every kind is reported")
    }
}

/// Right modules on the weight's index space with entries in `grid`.
fn copresheaves(p: &Weight, grid: &[QValue]) -> Vec<Vec<QValue>> {
    let k = p.index();
    let n = k.len();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        let vals: Vec<QValue> = cur.iter().map(|&i| grid[i]).collect();
        let ok = (0..n).all(|x| (0..n).all(|y| k.dist(x, y).tensor(vals[x]).le(vals[y])));
        if ok {
            out.push(vals);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < grid.len() {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Checks `{P, F * G} = F * {P, G(−)}` for colimits of `G: A → [K,V]`
/// weighted by `F`, with `A` discrete of size up to `max_a` and all values
/// drawn from `grid`. Failures are counted per kind of colimit rather than
/// reported as an error.
pub fn is_coflat_oracle(
    p: &Weight,
    grid: &[QValue],
    max_a: usize,
    budget: u64,
) -> Result<CoflatReport, FlatnessError> {
    if p.variance() != Variance::Covariant {
        return Err(FlatnessError::Shape("coflatness needs a limit weight K → V".into()));
    }
    let base = p.index().base();
    let kn = p.index().len();
    let gs = copresheaves(p, grid);
    let limit = |g: &[QValue]| {
        p.values().iter().zip(g).fold(base.terminal(), |acc, (&w, &v)| acc.meet(w.hom(v)))
    };
    let limits: Vec<QValue> = gs.iter().map(|g| limit(g)).collect();

    let kinds = [ColimitKind::Conical, ColimitKind::AtMostOnePoint, ColimitKind::Finite];
    let mut samples: Vec<CoflatSample> =
        kinds.iter().map(|&kind| CoflatSample { kind, checked: 0, failures: 0 }).collect();
    let mut first_failure = None;
    let mut used = 0u64;

    for a in 0..=max_a {
        // Odometer over (F(0..a), G(0..a)) as indices into grid and gs.
        let mut fi = vec![0usize; a];
        let mut gi = vec![0usize; a];
        if a > 0 && gs.is_empty() {
            continue;
        }
        loop {
            used += 1;
            if used > budget {
                return Err(FlatnessError::Budget { limit: budget });
            }
            let colimit: Vec<QValue> = (0..kn)
                .map(|k| (0..a).fold(base.initial(), |acc, i| acc.join(grid[fi[i]].tensor(gs[gi[i]][k]))))
                .collect();
            let lhs = limit(&colimit);
            let rhs = (0..a).fold(base.initial(), |acc, i| acc.join(grid[fi[i]].tensor(limits[gi[i]])));
            let ok = lhs == rhs;
            let conical = a > 0 && fi.iter().all(|&i| grid[i].is_unit());
            for s in samples.iter_mut() {
                let applies = match s.kind {
                    ColimitKind::Conical => conical,
                    ColimitKind::AtMostOnePoint => a <= 1,
                    ColimitKind::Finite => true,
                };
                if applies {
                    s.checked += 1;
                    if !ok {
                        s.failures += 1;
                    }
                }
            }
            if !ok && first_failure.is_none() {
                let weights: Vec<String> = fi.iter().map(|&i| grid[i].to_string()).collect();
                first_failure = Some(format!(
                    "{a}-point colimit with weights ({}): limit of colimit {lhs}, colimit of limits {rhs}",
                    weights.join(",")
                ));
            }
            // Advance the odometer; a carry out of the first slot ends it.
            let mut carry = true;
            for pos in (0..2 * a).rev() {
                let (slot, len) = if pos < a { (&mut fi[pos], grid.len()) } else { (&mut gi[pos - a], gs.len()) };
                *slot += 1;
                if *slot < len {
                    carry = false;
                    break;
                }
                *slot = 0;
            }
            if carry {
                break;
            }
        }
    }
    let holds = samples.iter().all(|s| s.holds());
    Ok(CoflatReport { holds, samples, first_failure })
}
