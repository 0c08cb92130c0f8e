//! Extending maps along completions, and exhaustive checks that the
//! extension is the unique representative-preserving one.

use std::sync::Arc;

use crate::enriched::{same_space, EnrichedError, Map, Space};
use crate::filters::{representative, PrincipalFilter};

use super::{complete, incompleteness_witness, least_points, subsets_by_size, Completion, CompletionError};

/// `f̄(M)`: the first representative of the direct image of `F(M)` under
/// `f`. The empty downset of the free Bool completion goes to the least
/// point.
pub fn extend_map(f: &Map, c: &Completion) -> Result<Map, CompletionError> {
    if !same_space(f.source(), c.source()) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    let b = f.target();
    if let Some(witness) = incompleteness_witness(b, c.notion())? {
        return Err(CompletionError::Incomplete { witness });
    }
    let mut assignment = Vec::with_capacity(c.points().len());
    for p in c.points() {
        let reps = if p.generator.is_empty() {
            least_points(b)
        } else {
            let image = PrincipalFilter::new(b.clone(), p.generator.iter().map(|&x| f.apply(x)).collect())?;
            representative(&image)
        };
        let first = *reps.first().ok_or_else(|| CompletionError::Incomplete {
            witness: super::subset_label(b, &p.generator.iter().map(|&x| f.apply(x)).collect::<Vec<_>>()),
        })?;
        assignment.push(first);
    }
    Ok(Map::new(c.result().clone(), b.clone(), assignment)?)
}

/// Outcome of [`check_universal_property`]. Each count is the number of
/// maps `f` passing that stage.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniversalReport {
    pub maps: usize,
    pub extended: usize,
    pub commuting: usize,
    pub preserving: usize,
    pub unique: usize,
    pub failures: Vec<String>,
    pub steps: u64,
    pub budget_exhausted: bool,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        !self.budget_exhausted
            && self.failures.is_empty()
            && [self.extended, self.commuting, self.preserving, self.unique].iter().all(|&n| n == self.maps)
    }
}

/// Filters on the completion admitted by its notion, each with one
/// representative.
fn completion_filters(c: &Completion) -> Vec<(Vec<usize>, usize)> {
    let r = c.result();
    let mut out = Vec::new();
    if c.notion() == super::Notion::FreeBool {
        if let Some(&bottom) = least_points(r).first() {
            out.push((Vec::new(), bottom));
        }
    }
    for subset in subsets_by_size(r.len()) {
        let Ok(f) = PrincipalFilter::new(r.clone(), subset.clone()) else { continue };
        if c.notion().admits(&f) != Some(true) {
            continue;
        }
        if let Some(&rep) = representative(&f).first() {
            out.push((subset, rep));
        }
    }
    out
}

/// Representatives in `b` of every subset, indexed by bitmask; the empty
/// mask holds the least points.
fn reps_by_mask(b: &Arc<Space>) -> Vec<Vec<usize>> {
    let n = b.len();
    (0usize..(1 << n))
        .map(|mask| {
            if mask == 0 {
                return least_points(b);
            }
            let generator = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            representative(&PrincipalFilter::new(b.clone(), generator).expect("non-empty mask"))
        })
        .collect()
}

fn preserves(g: &[usize], filters: &[(Vec<usize>, usize)], b_reps: &[Vec<usize>]) -> bool {
    filters.iter().all(|(generator, rep)| {
        let mask = generator.iter().fold(0usize, |m, &x| m | (1 << g[x]));
        b_reps[mask].contains(&g[*rep])
    })
}

struct Search<'a> {
    c: &'a Space,
    b: &'a Space,
    allowed: Vec<Vec<usize>>,
    filters: &'a [(Vec<usize>, usize)],
    b_reps: &'a [Vec<usize>],
    expected: &'a [usize],
    steps: u64,
    budget: u64,
    other: Option<Vec<usize>>,
}

impl Search<'_> {
    /// Depth-first over nonexpansive assignments; stops at the first
    /// representative-preserving map not pointwise isomorphic to
    /// `expected`, or when the budget runs out.
    fn go(&mut self, g: &mut Vec<usize>) -> bool {
        self.steps += 1;
        if self.steps > self.budget {
            return false;
        }
        let p = g.len();
        if p == self.c.len() {
            if preserves(g, self.filters, self.b_reps)
                && (0..p).any(|x| !self.b.iso(g[x], self.expected[x]))
            {
                self.other = Some(g.clone());
                return false;
            }
            return true;
        }
        for k in 0..self.allowed[p].len() {
            let y = self.allowed[p][k];
            let fits = (0..p).all(|q| {
                self.c.dist(p, q).le(self.b.dist(y, g[q])) && self.c.dist(q, p).le(self.b.dist(g[q], y))
            });
            if !fits {
                continue;
            }
            g.push(y);
            let cont = self.go(g);
            g.pop();
            if !cont {
                return false;
            }
        }
        true
    }
}

/// For every nonexpansive `f: A → B`, checks that `f̄` exists, satisfies
/// `f̄ ∘ i ≅ f`, preserves representatives of the admitted filters, and is
/// the only such map up to pointwise isomorphism. The uniqueness search
/// counts visited nodes against `budget`; running out is flagged in the
/// report rather than treated as a failure.
pub fn check_universal_property(
    a: &Arc<Space>,
    notion: super::Notion,
    b: &Arc<Space>,
    budget: u64,
) -> Result<UniversalReport, CompletionError> {
    let c = complete(a, notion)?;
    if let Some(witness) = incompleteness_witness(b, notion)? {
        return Err(CompletionError::Incomplete { witness });
    }
    assert!(b.len() < 16, "target too large to index its subsets");
    let filters = completion_filters(&c);
    let b_reps = reps_by_mask(b);
    let i = c.embedding();
    let mut report = UniversalReport::default();
    for f in Map::all(a, b) {
        report.maps += 1;
        let label = format!("f = {:?}", f.assignment());
        let fbar = match extend_map(&f, &c) {
            Ok(m) => m,
            Err(e) => {
                report.failures.push(format!("{label}: no extension ({e})"));
                continue;
            }
        };
        report.extended += 1;
        if (0..a.len()).all(|x| b.iso(fbar.apply(i.apply(x)), f.apply(x))) {
            report.commuting += 1;
        } else {
            report.failures.push(format!("{label}: extension does not restrict to f"));
        }
        if preserves(fbar.assignment(), &filters, &b_reps) {
            report.preserving += 1;
        } else {
            report.failures.push(format!("{label}: extension does not preserve representatives"));
        }

        let allowed = (0..c.result().len())
            .map(|p| {
                (0..b.len())
                    .filter(|&y| (0..a.len()).all(|x| i.apply(x) != p || b.iso(y, f.apply(x))))
                    .collect()
            })
            .collect();
        let mut search = Search {
            c: c.result(),
            b,
            allowed,
            filters: &filters,
            b_reps: &b_reps,
            expected: fbar.assignment(),
            steps: 0,
            budget: budget.saturating_sub(report.steps),
            other: None,
        };
        search.go(&mut Vec::new());
        report.steps += search.steps;
        if let Some(other) = search.other {
            report.failures.push(format!("{label}: second extension {other:?}"));
        } else if report.steps > budget {
            report.budget_exhausted = true;
            return Ok(report);
        } else {
            report.unique += 1;
        }
    }
    Ok(report)
}
