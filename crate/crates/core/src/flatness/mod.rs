//! Flat presheaves: closed forms for finite spaces and the definitional
//! oracles they are checked against.
//!
//! A left module `M` is flat for a class of weights when `− * M`, the left
//! Kan extension of `M` along Yoneda, preserves every limit weighted by that
//! class. `P1` has the empty and one-point index spaces, `P2` all finite ones
//! and `P0` every weight; flatness for `P0` means `M` is a left adjoint.

mod coflat;
mod oracle;
pub(crate) mod scalar;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::enriched::{
    compose_modules, is_adjoint_pair, kan_extend, right_adjoint_candidate, weighted_colimit, weighted_limit,
    Diagram, EnrichedError, LeftModule, Map, RightModule, Space, Variance, Weight,
};
use crate::quantale::QValue;

pub use coflat::{is_coflat_oracle, ColimitKind, CoflatReport, CoflatSample};
pub use oracle::{
    budget_from_env, default_grid, flatness_oracle, OracleConfig, OracleTable, OracleVerdict, OracleWitness,
    DEFAULT_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatnessClass {
    /// No weights at all; every module qualifies.
    Empty,
    P1,
    P2,
    P0,
}

impl FlatnessClass {
    pub fn keyword(self) -> &'static str {
        match self {
            FlatnessClass::Empty => "empty",
            FlatnessClass::P0 => "p0",
            FlatnessClass::P1 => "p1",
            FlatnessClass::P2 => "p2",
        }
    }
}

impl fmt::Display for FlatnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for FlatnessClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "empty" => Ok(FlatnessClass::Empty),
            "p0" => Ok(FlatnessClass::P0),
            "p1" => Ok(FlatnessClass::P1),
            "p2" => Ok(FlatnessClass::P2),
            other => Err(format!("unknown flatness class `{other}` (expected empty, p0, p1 or p2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatnessError {
    #[error("enumeration budget of {limit} checks exceeded")]
    Budget { limit: u64 },
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error("module is not {0}-flat")]
    NotFlat(FlatnessClass),
    #[error("{0}")]
    Shape(String),
}

/// `− * M` preserves the terminal object: `join_x M(x)` is the unit.
pub fn preserves_terminal(m: &LeftModule) -> bool {
    let base = m.space().base();
    m.values().iter().fold(base.initial(), |acc, &v| acc.join(v)).is_unit()
}

/// `− * M` preserves the cotensor `[v, N]`.
pub fn preserves_cotensor(m: &LeftModule, v: QValue, n: &RightModule) -> Result<bool, FlatnessError> {
    let base = m.space().base();
    if v.base() != base {
        return Err(EnrichedError::Base(base, v.base()).into());
    }
    let rhs = v.hom(compose_modules(m, n)?);
    let cotensor: Vec<QValue> = n.values().iter().map(|&x| v.hom(x)).collect();
    let lhs = compose_modules(m, &RightModule::new_unchecked(n.space().clone(), cotensor))?;
    Ok(lhs == rhs)
}

/// `− * M` preserves the pointwise meet of a finite family of right modules.
pub fn preserves_finite_meet(m: &LeftModule, ns: &[RightModule]) -> Result<bool, FlatnessError> {
    let space = m.space();
    let base = space.base();
    let mut meet = vec![base.terminal(); space.len()];
    let mut rhs = base.terminal();
    for n in ns {
        rhs = rhs.meet(compose_modules(m, n)?);
        for (acc, &v) in meet.iter_mut().zip(n.values()) {
            *acc = acc.meet(v);
        }
    }
    let lhs = compose_modules(m, &RightModule::new_unchecked(space.clone(), meet))?;
    Ok(lhs == rhs)
}

/// Whether `subset` is directed in the zero-preorder of `space`: non-empty,
/// and any two of its points have a common upper bound inside it.
pub fn is_zero_directed(space: &Space, subset: &[usize]) -> bool {
    !subset.is_empty()
        && subset.iter().all(|&x| {
            subset
                .iter()
                .all(|&y| subset.iter().any(|&z| space.arrow(x, z) && space.arrow(y, z)))
        })
}

/// `M(x) = join_{y ∈ Z} A(x,y)` over the kernel `Z` of `M`.
fn generated_by_kernel(m: &LeftModule, kernel: &[usize]) -> bool {
    let space = m.space();
    (0..space.len()).all(|x| {
        let from_kernel = kernel
            .iter()
            .fold(space.base().initial(), |acc, &y| acc.join(space.dist(x, y)));
        m.at(x) == from_kernel
    })
}

/// Closed form of P1-flatness on a finite space: the kernel is non-empty and
/// generates `M`.
pub fn is_p1_flat(m: &LeftModule) -> bool {
    let kernel = m.zero_set();
    !kernel.is_empty() && generated_by_kernel(m, &kernel)
}

/// Closed form of P2-flatness: P1-flat with a directed kernel.
pub fn is_p2_flat(m: &LeftModule) -> bool {
    let kernel = m.zero_set();
    is_zero_directed(m.space(), &kernel) && generated_by_kernel(m, &kernel)
}

/// P0-flat means left adjoint.
pub fn is_p0_flat(m: &LeftModule) -> bool {
    is_adjoint_pair(m, &right_adjoint_candidate(m)).expect("candidate lives on the same space")
}

pub fn is_flat(m: &LeftModule, class: FlatnessClass) -> bool {
    match class {
        FlatnessClass::Empty => true,
        FlatnessClass::P1 => is_p1_flat(m),
        FlatnessClass::P2 => is_p2_flat(m),
        FlatnessClass::P0 => is_p0_flat(m),
    }
}

/// Kan extension along a map keeps a flat module flat.
pub fn kan_preserves_flatness(m: &LeftModule, g: &Map, class: FlatnessClass) -> Result<bool, FlatnessError> {
    if !is_flat(m, class) {
        return Err(FlatnessError::NotFlat(class));
    }
    Ok(is_flat(&kan_extend(m, g)?, class))
}

/// Both sides of the commutation of `F * −` with `{P, −}` on one diagram
/// `G: K × A → V`.
///
/// The first flag says whether `F * −` preserves the limit `{P, G}`, computed
/// through module composition; the second whether `{P, −}` preserves the
/// colimit `F * G`, computed through weighted (co)limits in `V`.
pub fn commutation_instance(f: &Weight, p: &Weight, g: &Diagram) -> Result<(bool, bool), FlatnessError> {
    if f.variance() != Variance::Contravariant || p.variance() != Variance::Covariant {
        return Err(FlatnessError::Shape("expected a colimit weight on A and a limit weight on K".into()));
    }
    let a = g.target();
    let k = g.index();
    if !crate::enriched::same_space(f.index(), a) || !crate::enriched::same_space(p.index(), k) {
        return Err(EnrichedError::SpaceMismatch.into());
    }
    let f_module = LeftModule::new(a.clone(), f.values().to_vec())?;

    let limit: Vec<QValue> =
        (0..a.len()).map(|x| weighted_limit(p, &g.column(x))).collect::<Result<_, _>>()?;
    let limit_module = RightModule::new(a.clone(), limit.clone())?;
    let row_colimits: Vec<QValue> = (0..k.len())
        .map(|i| compose_modules(&f_module, &RightModule::new(a.clone(), g.row(i).to_vec())?))
        .collect::<Result<_, EnrichedError>>()?;
    let f_preserves = compose_modules(&f_module, &limit_module)? == weighted_limit(p, &row_colimits)?;

    let colimit: Vec<QValue> =
        (0..k.len()).map(|i| weighted_colimit(f, g.row(i))).collect::<Result<_, _>>()?;
    let p_preserves = weighted_limit(p, &colimit)? == weighted_colimit(f, &limit)?;

    Ok((f_preserves, p_preserves))
}
