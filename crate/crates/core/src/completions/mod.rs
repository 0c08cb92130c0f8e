//! Finite completions: spaces of flat modules, downset lattices and cuts.
//!
//! Every completion point is stored with the subset it is generated by and
//! its module; distances between points are presheaf homs, which over Bool
//! is inclusion of downsets.

mod universal;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::enriched::{presheaf_hom, same_space, yoneda, EnrichedError, LeftModule, Map, Space};
use crate::filters::{
    closure, is_cauchy, is_flat, is_weakly_flat, m_minus, representative, subset_label, FilterError,
    PrincipalFilter,
};
use crate::flatness::{is_p0_flat, is_zero_directed};
use crate::quantale::{Base, QValue};

pub use universal::{check_universal_property, extend_map, UniversalReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("notion {notion} needs a space over {expected}, got {actual}")]
    BaseMismatch { notion: Notion, expected: Base, actual: Base },
    #[error("space is not symmetric")]
    NotSymmetric,
    #[error("target is not complete: filter {witness} has no representative")]
    Incomplete { witness: String },
    #[error("notion {0} is not supported here")]
    Unsupported(Notion),
    #[error("point {0} has no representable image in the completion")]
    MissingEmbedding(String),
}

/// Which completion to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Notion {
    /// Left adjoint modules.
    P0,
    /// Modules generated by a non-empty closed kernel.
    P1,
    /// Modules generated by a closed directed kernel.
    P2,
    /// All downsets of a preorder.
    FreeBool,
    /// Non-empty directed downsets.
    IdealsBool,
    /// Non-empty downsets.
    DownsetsBool,
    /// Dedekind-MacNeille cuts.
    Dmn,
}

impl Notion {
    pub const ALL: [Notion; 7] = [
        Notion::P0,
        Notion::P1,
        Notion::P2,
        Notion::FreeBool,
        Notion::IdealsBool,
        Notion::DownsetsBool,
        Notion::Dmn,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Notion::P0 => "p0",
            Notion::P1 => "p1",
            Notion::P2 => "p2",
            Notion::FreeBool => "free",
            Notion::IdealsBool => "ideals",
            Notion::DownsetsBool => "downsets",
            Notion::Dmn => "dmn",
        }
    }

    pub fn bool_only(self) -> bool {
        matches!(self, Notion::FreeBool | Notion::IdealsBool | Notion::DownsetsBool | Notion::Dmn)
    }

    /// Whether a filter on the target must have a representative for maps
    /// to extend along this completion. `None` for cuts, which are not a
    /// free construction.
    fn admits(self, f: &PrincipalFilter) -> Option<bool> {
        match self {
            Notion::P1 | Notion::DownsetsBool => Some(is_weakly_flat(f)),
            Notion::P2 | Notion::IdealsBool => Some(is_flat(f)),
            Notion::P0 => Some(is_cauchy(f)),
            Notion::FreeBool => Some(true),
            Notion::Dmn => None,
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Notion {
    type Err = String;

    fn from_str(s: &str) -> Result<Notion, String> {
        Notion::ALL
            .into_iter()
            .find(|n| n.keyword() == s)
            .ok_or_else(|| format!("unknown notion `{s}` (expected p0, p1, p2, free, ideals, downsets or dmn)"))
    }
}

/// A point of a completion: the subset naming it and its module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionPoint {
    pub generator: Vec<usize>,
    pub module: LeftModule,
}

#[derive(Debug, Clone)]
pub struct Completion {
    source: Arc<Space>,
    notion: Notion,
    result: Arc<Space>,
    embedding: Map,
    points: Vec<CompletionPoint>,
}

impl Completion {
    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn notion(&self) -> Notion {
        self.notion
    }

    pub fn result(&self) -> &Arc<Space> {
        &self.result
    }

    /// `a ↦ yoneda(a)`.
    pub fn embedding(&self) -> &Map {
        &self.embedding
    }

    pub fn points(&self) -> &[CompletionPoint] {
        &self.points
    }

    /// `result.dist(i(a), i(b)) = source.dist(a, b)` for all `a, b`.
    pub fn is_fully_faithful(&self) -> bool {
        let n = self.source.len();
        let i = &self.embedding;
        (0..n).all(|a| (0..n).all(|b| self.result.dist(i.apply(a), i.apply(b)) == self.source.dist(a, b)))
    }

    /// No two distinct points are zero-isomorphic.
    pub fn is_separated(&self) -> bool {
        let n = self.result.len();
        (0..n).all(|x| (0..n).all(|y| x == y || !self.result.iso(x, y)))
    }

    /// One line per point: name, generator, module values.
    pub fn point_table_tsv(&self) -> String {
        let mut out = String::from("point\tgenerator\tvalues\n");
        for (k, p) in self.points.iter().enumerate() {
            let values: Vec<String> = p.module.values().iter().map(|v| v.to_string()).collect();
            let generator: Vec<&str> = p.generator.iter().map(|&x| self.source.point(x)).collect();
            out.push_str(&format!("{}\t{}\t{}\n", self.result.point(k), generator.join(" "), values.join(" ")));
        }
        out
    }

    /// One line per source point: the point and its image.
    pub fn embedding_tsv(&self) -> String {
        let mut out = String::from("source\timage\n");
        for a in 0..self.source.len() {
            out.push_str(&format!("{}\t{}\n", self.source.point(a), self.result.point(self.embedding.apply(a))));
        }
        out
    }
}

/// Every subset of `0..n`, ordered by size and then lexicographically.
pub(crate) fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    assert!(n < 20, "too many points to enumerate subsets");
    let mut all: Vec<Vec<usize>> =
        (0usize..(1 << n)).map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn indicator(space: &Arc<Space>, members: &[usize]) -> LeftModule {
    let values = (0..space.len()).map(|x| QValue::Bool(members.contains(&x))).collect();
    LeftModule::new(space.clone(), values).expect("downsets are modules")
}

fn is_downset(space: &Space, d: &[usize]) -> bool {
    d.iter().all(|&y| (0..space.len()).all(|x| !space.arrow(x, y) || d.contains(&x)))
}

/// Points below every point of `us`.
fn lower_bounds(space: &Space, us: &[usize]) -> Vec<usize> {
    (0..space.len()).filter(|&l| us.iter().all(|&u| space.arrow(l, u))).collect()
}

/// Points above every point of `xs`.
fn upper_bounds(space: &Space, xs: &[usize]) -> Vec<usize> {
    (0..space.len()).filter(|&u| xs.iter().all(|&x| space.arrow(x, u))).collect()
}

/// Candidate points of a completion, before distances are computed.
fn candidates(s: &Arc<Space>, notion: Notion) -> Vec<CompletionPoint> {
    let n = s.len();
    let mut out: Vec<CompletionPoint> = Vec::new();
    for subset in subsets_by_size(n) {
        let point = match notion {
            Notion::P0 | Notion::P1 | Notion::P2 => {
                let Ok(f) = PrincipalFilter::new(s.clone(), subset.clone()) else { continue };
                if closure(&f).generator() != subset.as_slice() {
                    continue;
                }
                if notion == Notion::P2 && !is_zero_directed(s, &subset) {
                    continue;
                }
                let module = m_minus(&f);
                if notion == Notion::P0 && !is_p0_flat(&module) {
                    continue;
                }
                CompletionPoint { generator: subset, module }
            }
            Notion::FreeBool | Notion::DownsetsBool | Notion::IdealsBool => {
                if !is_downset(s, &subset) {
                    continue;
                }
                if notion != Notion::FreeBool && subset.is_empty() {
                    continue;
                }
                if notion == Notion::IdealsBool && !is_zero_directed(s, &subset) {
                    continue;
                }
                CompletionPoint { module: indicator(s, &subset), generator: subset }
            }
            Notion::Dmn => {
                let cut = lower_bounds(s, &upper_bounds(s, &subset));
                if cut != subset {
                    continue;
                }
                CompletionPoint { module: indicator(s, &subset), generator: subset }
            }
        };
        if !out.iter().any(|p| p.module == point.module) {
            out.push(point);
        }
    }
    out
}

/// Builds the completion of `s` for `notion`, embedding each point as its
/// representable module.
pub fn complete(s: &Arc<Space>, notion: Notion) -> Result<Completion, CompletionError> {
    if notion.bool_only() && s.base() != Base::Bool {
        return Err(CompletionError::BaseMismatch { notion, expected: Base::Bool, actual: s.base() });
    }
    let points = candidates(s, notion);
    let k = points.len();
    let mut dist = Vec::with_capacity(k * k);
    for p in &points {
        for q in &points {
            dist.push(presheaf_hom(&p.module, &q.module)?);
        }
    }
    let names = points.iter().map(|p| subset_label(s, &p.generator)).collect();
    let result = Space::new(format!("{}-{}", s.name(), notion), s.base(), names, dist)?.into_ref();
    let mut assignment = Vec::with_capacity(s.len());
    for a in 0..s.len() {
        let y = yoneda(s, a)?;
        let image = points
            .iter()
            .position(|p| p.module == y)
            .ok_or_else(|| CompletionError::MissingEmbedding(s.point(a).to_string()))?;
        assignment.push(image);
    }
    let embedding = Map::new(s.clone(), result.clone(), assignment)?;
    Ok(Completion { source: s.clone(), notion, result, embedding, points })
}

/// Points `x₀` with `A(x₀,a)` the unit for every `a`: representatives of
/// the empty family.
fn least_points(s: &Space) -> Vec<usize> {
    (0..s.len()).filter(|&x| (0..s.len()).all(|a| s.arrow(x, a))).collect()
}

/// The first filter admitted by `notion` without a representative, if any.
/// For the free Bool completion the empty family is checked too, reported
/// as `{}`.
pub fn incompleteness_witness(s: &Arc<Space>, notion: Notion) -> Result<Option<String>, CompletionError> {
    if notion == Notion::Dmn {
        return Err(CompletionError::Unsupported(notion));
    }
    if notion == Notion::FreeBool && least_points(s).is_empty() {
        return Ok(Some("{}".to_string()));
    }
    for subset in subsets_by_size(s.len()) {
        let Ok(f) = PrincipalFilter::new(s.clone(), subset) else { continue };
        if notion.admits(&f) == Some(true) && representative(&f).is_empty() {
            return Ok(Some(f.label()));
        }
    }
    Ok(None)
}

/// Every filter admitted by `notion` (weakly flat for P1, flat for P2,
/// Cauchy for P0) has a representative.
pub fn is_complete(s: &Arc<Space>, notion: Notion) -> Result<bool, CompletionError> {
    Ok(incompleteness_witness(s, notion)?.is_none())
}

/// Nonempty closed subsets of the Cauchy completion of a symmetric space,
/// at the one-sided Hausdorff distance `d(X,Y) = max_{x∈X} min_{y∈Y} Ā(x,y)`.
///
/// The Cauchy completion of a finite space is its zero-quotient. Points are
/// named by the source points they collect, so they line up with the names
/// used by [`complete`].
pub fn hausdorff_construction(s: &Arc<Space>) -> Result<Space, CompletionError> {
    if !s.is_symmetric() {
        return Err(CompletionError::NotSymmetric);
    }
    let (quotient, class) = s.zero_quotient();
    let base = s.base();
    let mut sets: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for xs in subsets_by_size(quotient.len()) {
        if xs.is_empty() {
            continue;
        }
        let closed: Vec<usize> = (0..quotient.len())
            .filter(|&p| xs.iter().fold(base.initial(), |acc, &x| acc.join(quotient.dist(p, x))).is_unit())
            .collect();
        if closed != xs {
            continue;
        }
        let preimage: Vec<usize> = (0..s.len()).filter(|&a| xs.contains(&class[a])).collect();
        sets.push((xs, preimage));
    }
    sets.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(&b.1)));
    let k = sets.len();
    let mut dist = Vec::with_capacity(k * k);
    for (xs, _) in &sets {
        for (ys, _) in &sets {
            let d = xs.iter().fold(base.terminal(), |acc, &x| {
                acc.meet(ys.iter().fold(base.initial(), |inner, &y| inner.join(quotient.dist(x, y))))
            });
            dist.push(d);
        }
    }
    let names = sets.iter().map(|(_, pre)| subset_label(s, pre)).collect();
    Ok(Space::new(format!("{}-hausdorff", s.name()), base, names, dist)?)
}

/// Compares [`hausdorff_construction`] with the P1 completion entrywise,
/// matching points by name.
pub fn sycomp_check(s: &Arc<Space>) -> Result<bool, CompletionError> {
    let h = hausdorff_construction(s)?;
    let c = complete(s, Notion::P1)?;
    let p = c.result();
    if h.len() != p.len() {
        return Ok(false);
    }
    let mut to_p = Vec::with_capacity(h.len());
    for x in 0..h.len() {
        match p.index_of(h.point(x)) {
            Ok(i) => to_p.push(i),
            Err(_) => return Ok(false),
        }
    }
    Ok((0..h.len()).all(|x| (0..h.len()).all(|y| h.dist(x, y) == p.dist(to_p[x], to_p[y]))))
}

/// Reads a preorder as a generalized metric space: `1 ↦ 0`, `0 ↦ ∞`.
pub fn bool_bridge(p: &Space) -> Result<Space, CompletionError> {
    Ok(p.bool_to_rplus()?)
}

/// Completing the encoded preorder agrees, up to isomorphism, with encoding
/// its downset (P1) or ideal (P2) completion.
pub fn bridge_check(p: &Arc<Space>, notion: Notion) -> Result<bool, CompletionError> {
    let bool_notion = match notion {
        Notion::P1 => Notion::DownsetsBool,
        Notion::P2 => Notion::IdealsBool,
        other => return Err(CompletionError::Unsupported(other)),
    };
    let encoded = bool_bridge(p)?.into_ref();
    let via_metric = complete(&encoded, notion)?;
    let via_order = complete(p, bool_notion)?;
    Ok(via_metric.result().is_isomorphic(&bool_bridge(via_order.result())?))
}

/// Cuts `X = X^{ul}` ordered by inclusion. Reported next to the P0
/// completion but not identified with it.
pub fn dedekind_mac_neille(p: &Arc<Space>) -> Result<Completion, CompletionError> {
    complete(p, Notion::Dmn)
}

/// Whether every point of `a` is a point of `b`.
pub fn points_included(a: &Completion, b: &Completion) -> bool {
    same_space(&a.source, &b.source) && a.points.iter().all(|p| b.points.iter().any(|q| q.module == p.module))
}

#[cfg(test)]
mod tests;
