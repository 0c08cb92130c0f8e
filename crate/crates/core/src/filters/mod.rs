//! Filters on finite carriers and their correspondence with left modules.
//!
//! Every filter on a finite set is principal, so a filter is stored as its
//! generating subset `B` and stands for `{f : B ⊆ f}`. All limits over a
//! filter then collapse to limits over `B`.

pub mod definitional;
mod sequence;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::enriched::{presheaf_hom, same_space, yoneda, EnrichedError, LeftModule, Map, RightModule, Space};
use crate::flatness::is_zero_directed;
use crate::quantale::{Base, QValue};

pub use sequence::{interpolate_sequences, separating_sequence, EvPeriodicSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error("a filter needs a non-empty generator")]
    EmptyGenerator,
    #[error("a family of filters must be non-empty")]
    EmptyFamily,
    #[error("module has no kernel, so it does not determine a filter")]
    NoKernel,
    #[error("filter {0} is not weakly flat")]
    NotWeaklyFlat(String),
    #[error("filter {0} is not flat")]
    NotFlat(String),
    #[error("tolerance must be positive")]
    NonPositive,
    #[error("no separating witness: M⁻(F) ⇒ M already holds")]
    NoSeparatingWitness,
    #[error("only defined over R̄₊")]
    NotRPlus,
    #[error("a sequence needs a non-empty cycle")]
    EmptyCycle,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// The principal filter of all supersets of a non-empty generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrincipalFilter {
    space: Arc<Space>,
    generator: Vec<usize>,
}

impl PrincipalFilter {
    /// Sorts and dedups the generator.
    pub fn new(space: Arc<Space>, mut generator: Vec<usize>) -> Result<PrincipalFilter, FilterError> {
        generator.sort_unstable();
        generator.dedup();
        if generator.is_empty() {
            return Err(FilterError::EmptyGenerator);
        }
        if let Some(&x) = generator.iter().find(|&&x| x >= space.len()) {
            return Err(EnrichedError::UnknownPoint(format!("#{x}")).into());
        }
        Ok(PrincipalFilter { space, generator })
    }

    pub fn from_names<S: AsRef<str>>(space: &Arc<Space>, names: &[S]) -> Result<PrincipalFilter, FilterError> {
        let generator = names.iter().map(|n| space.index_of(n.as_ref())).collect::<Result<_, _>>()?;
        PrincipalFilter::new(space.clone(), generator)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn generator(&self) -> &[usize] {
        &self.generator
    }

    pub fn contains(&self, x: usize) -> bool {
        self.generator.binary_search(&x).is_ok()
    }

    /// Whether the set `f` belongs to the filter.
    pub fn has_member(&self, f: &[usize]) -> bool {
        self.generator.iter().all(|x| f.contains(x))
    }

    pub fn names(&self) -> Vec<&str> {
        self.generator.iter().map(|&x| self.space.point(x)).collect()
    }

    /// `{a,b}` in generator order.
    pub fn label(&self) -> String {
        subset_label(&self.space, &self.generator)
    }
}

impl fmt::Display for PrincipalFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn subset_label(space: &Space, subset: &[usize]) -> String {
    let names: Vec<&str> = subset.iter().map(|&x| space.point(x)).collect();
    format!("{{{}}}", names.join(","))
}

fn same_filter_space(a: &PrincipalFilter, b: &PrincipalFilter) -> Result<(), FilterError> {
    if same_space(&a.space, &b.space) {
        Ok(())
    } else {
        Err(EnrichedError::SpaceMismatch.into())
    }
}

/// `lim⁺_F t`: the meet of `t` over the generator (numeric max over R̄₊).
pub fn lim_plus(f: &PrincipalFilter, t: &[QValue]) -> QValue {
    f.generator.iter().fold(f.space.base().terminal(), |acc, &x| acc.meet(t[x]))
}

/// `lim⁻_F t`: the join of `t` over the generator (numeric min over R̄₊).
pub fn lim_minus(f: &PrincipalFilter, t: &[QValue]) -> QValue {
    f.generator.iter().fold(f.space.base().initial(), |acc, &x| acc.join(t[x]))
}

fn column(space: &Space, y: usize) -> Vec<QValue> {
    (0..space.len()).map(|x| space.dist(x, y)).collect()
}

fn row(space: &Space, x: usize) -> Vec<QValue> {
    (0..space.len()).map(|y| space.dist(x, y)).collect()
}

/// `M⁻(F): x ↦ lim⁻_F A(x,−)`.
pub fn m_minus(f: &PrincipalFilter) -> LeftModule {
    let s = &f.space;
    let values = (0..s.len()).map(|x| lim_minus(f, &row(s, x))).collect();
    LeftModule::new_unchecked(s.clone(), values)
}

/// `M⁺(F): x ↦ lim⁺_F A(x,−)`.
pub fn m_plus(f: &PrincipalFilter) -> LeftModule {
    let s = &f.space;
    let values = (0..s.len()).map(|x| lim_plus(f, &row(s, x))).collect();
    LeftModule::new_unchecked(s.clone(), values)
}

/// `Γ(M)(ε) = {x : M(x) ≤ ε}`.
pub fn gamma(m: &LeftModule, eps: QValue) -> Result<Vec<usize>, FilterError> {
    let base = m.space().base();
    if eps.base() != base {
        return Err(EnrichedError::Base(base, eps.base()).into());
    }
    if base == Base::RPlus && eps == QValue::ZERO {
        return Err(FilterError::NonPositive);
    }
    Ok((0..m.space().len()).filter(|&x| eps.le(m.at(x))).collect())
}

/// `F(M)`, generated by the kernel of `M`: below its least non-zero value,
/// every sublevel set `Γ(M)(ε)` is the kernel.
pub fn filter_of_module(m: &LeftModule) -> Result<PrincipalFilter, FilterError> {
    let kernel = m.zero_set();
    if kernel.is_empty() {
        return Err(FilterError::NoKernel);
    }
    PrincipalFilter::new(m.space().clone(), kernel)
}

/// The neighborhood filter `V_A(x) = F(A(−,x))`.
pub fn neighborhood(space: &Arc<Space>, x: usize) -> Result<PrincipalFilter, FilterError> {
    filter_of_module(&yoneda(space, x)?)
}

/// Every point of the generator has a zero-successor inside it.
pub fn is_weakly_flat(f: &PrincipalFilter) -> bool {
    let s = &f.space;
    f.generator.iter().all(|&x| f.generator.iter().any(|&y| s.arrow(x, y)))
}

/// The generator is directed in the zero-preorder.
pub fn is_flat(f: &PrincipalFilter) -> bool {
    is_zero_directed(&f.space, &f.generator)
}

/// The generator has diameter zero.
pub fn is_cauchy(f: &PrincipalFilter) -> bool {
    let s = &f.space;
    f.generator.iter().all(|&x| f.generator.iter().all(|&y| s.arrow(x, y)))
}

/// `lim⁺_F M⁺(F)` is the unit. Excludes neighborhood filters of asymmetric
/// spaces, which is why the theory works with `M⁻` instead.
pub fn is_clumsy(f: &PrincipalFilter) -> bool {
    lim_plus(f, m_plus(f).values()).is_unit()
}

/// `F ∘ M⁻(F)`, generated by the kernel of `M⁻(F)`.
pub fn closure(f: &PrincipalFilter) -> PrincipalFilter {
    let generator = m_minus(f).zero_set();
    PrincipalFilter { space: f.space.clone(), generator }
}

pub fn is_closed(f: &PrincipalFilter) -> bool {
    closure(f).generator == f.generator
}

/// `F1 → F2`: `F1 ⊇ F(M⁻(F2))`.
pub fn filter_morphism(f1: &PrincipalFilter, f2: &PrincipalFilter) -> Result<bool, FilterError> {
    same_filter_space(f1, f2)?;
    let target = closure(f2);
    Ok(f1.generator.iter().all(|&x| target.contains(x)))
}

/// `F ⊇ F(M)`, read off generators. When `M` has an empty kernel `F(M)` is
/// the improper filter and no principal filter contains it.
pub fn contains_filter_of(f: &PrincipalFilter, m: &LeftModule) -> Result<bool, FilterError> {
    if !same_space(&f.space, m.space()) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    let kernel = m.zero_set();
    Ok(f.generator.iter().all(|x| kernel.contains(x)))
}

/// Evaluates `F ⊇ F(M)` and `M⁻(F) ⇒ M` independently and reports whether
/// they agree.
pub fn zoi_check(f: &PrincipalFilter, m: &LeftModule) -> Result<bool, FilterError> {
    if !is_weakly_flat(f) {
        return Err(FilterError::NotWeaklyFlat(f.label()));
    }
    let via_filters = contains_filter_of(f, m)?;
    let via_modules = m_minus(f).arrow_to(m)?;
    Ok(via_filters == via_modules)
}

/// `N * M⁻(F) ⊑ lim⁻_F N` always (numerically `≥`), with equality when `F`
/// is weakly flat.
pub fn fac22_check(f: &PrincipalFilter, n: &RightModule) -> Result<bool, FilterError> {
    let composite = crate::enriched::compose_modules(&m_minus(f), n)?;
    let lim = lim_minus(f, n.values());
    if !composite.le(lim) {
        return Ok(false);
    }
    Ok(!is_weakly_flat(f) || composite == lim)
}

/// Every `x₀` with `A(x₀,a) = lim⁺_F A(−,a)` for all `a`. Witnesses are
/// zero-isomorphic to one another.
pub fn representative(f: &PrincipalFilter) -> Vec<usize> {
    let s = &f.space;
    let target: Vec<QValue> = (0..s.len()).map(|a| lim_plus(f, &column(s, a))).collect();
    (0..s.len()).filter(|&x0| row(s, x0) == target).collect()
}

/// `F ⊇ V_A(x)`.
pub fn converges(f: &PrincipalFilter, x: usize) -> Result<bool, FilterError> {
    contains_filter_of(f, &yoneda(&f.space, x)?)
}

/// `M⁻(F) ⇒ A(−,x)`; agrees with [`converges`] on weakly flat filters.
pub fn converges_via_module(f: &PrincipalFilter, x: usize) -> Result<bool, FilterError> {
    Ok(m_minus(f).arrow_to(&yoneda(&f.space, x)?)?)
}

/// `G(F)`, generated by the image of the generator.
pub fn direct_image(f: &PrincipalFilter, g: &Map) -> Result<PrincipalFilter, FilterError> {
    if !same_space(&f.space, g.source()) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    PrincipalFilter::new(g.target().clone(), f.generator.iter().map(|&x| g.apply(x)).collect())
}

/// Least upper bound under reverse inclusion: the intersection of the
/// filters, generated by the union of the generators.
pub fn sup_filters(fs: &[PrincipalFilter]) -> Result<PrincipalFilter, FilterError> {
    let first = fs.first().ok_or(FilterError::EmptyFamily)?;
    let mut generator = Vec::new();
    for f in fs {
        same_filter_space(first, f)?;
        generator.extend_from_slice(&f.generator);
    }
    PrincipalFilter::new(first.space.clone(), generator)
}

/// Colimit among closed weakly flat filters: the closure of the supremum.
pub fn colimit_closed(fs: &[PrincipalFilter]) -> Result<PrincipalFilter, FilterError> {
    Ok(closure(&sup_filters(fs)?))
}

/// The three routes to the distance between weakly flat filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfHom {
    /// `[A^op,V](M⁻F₁, M⁻F₂)`.
    pub via_modules: QValue,
    /// `lim⁺_{x∈F₁} lim⁻_{y∈F₂} A(x,y)`.
    pub sup_inf: QValue,
    /// `lim⁻_{y∈F₂} lim⁺_{x∈F₁} A(x,y)`, reported when `F₁` is Cauchy.
    pub inf_sup: Option<QValue>,
}

impl WfHom {
    pub fn consistent(&self) -> bool {
        self.via_modules == self.sup_inf && self.inf_sup.is_none_or(|v| v == self.sup_inf)
    }
}

pub fn wf_hom_distance(f1: &PrincipalFilter, f2: &PrincipalFilter) -> Result<WfHom, FilterError> {
    same_filter_space(f1, f2)?;
    for f in [f1, f2] {
        if !is_weakly_flat(f) {
            return Err(FilterError::NotWeaklyFlat(f.label()));
        }
    }
    let s = &f1.space;
    let via_modules = presheaf_hom(&m_minus(f1), &m_minus(f2))?;
    let inner: Vec<QValue> = (0..s.len()).map(|x| lim_minus(f2, &row(s, x))).collect();
    let sup_inf = lim_plus(f1, &inner);
    let inf_sup = is_cauchy(f1).then(|| {
        let inner: Vec<QValue> = (0..s.len()).map(|y| lim_plus(f1, &column(s, y))).collect();
        lim_minus(f2, &inner)
    });
    Ok(WfHom { via_modules, sup_inf, inf_sup })
}

/// `lim⁻_F t = join over parts of lim⁻_φ t` when `F` is the supremum of the
/// parts.
pub fn liminf_f_check(f: &PrincipalFilter, parts: &[PrincipalFilter], t: &[QValue]) -> Result<bool, FilterError> {
    let sup = sup_filters(parts)?;
    if sup != *f {
        return Err(FilterError::Precondition(format!("{} is not the supremum of the parts", f.label())));
    }
    if t.len() != f.space.len() {
        return Err(EnrichedError::Shape("function does not match the space".into()).into());
    }
    let base = f.space.base();
    let rhs = parts.iter().fold(base.initial(), |acc, p| acc.join(lim_minus(p, t)));
    Ok(lim_minus(f, t) == rhs)
}

/// All non-empty subsets of the points, as sorted index lists, in order of
/// their bitmask.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    assert!(n < usize::BITS as usize, "too many points to enumerate subsets");
    (1usize..(1 << n)).map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect()).collect()
}

/// Every closed flat filter is the closure of a single point, i.e. the
/// closure of the tail of a constant forward Cauchy sequence.
pub fn charffil_finite_check(space: &Arc<Space>) -> bool {
    let points: Vec<PrincipalFilter> = (0..space.len())
        .map(|y| closure(&PrincipalFilter { space: space.clone(), generator: vec![y] }))
        .collect();
    nonempty_subsets(space.len()).into_iter().all(|b| {
        let f = PrincipalFilter { space: space.clone(), generator: b };
        !(is_flat(&f) && is_closed(&f)) || points.contains(&f)
    })
}

#[cfg(test)]
mod tests;
