//! Finite enriched categories, maps, modules and the basic calculus on them.

mod module;
mod space;
mod weighted;

use thiserror::Error;

use crate::quantale::Base;

pub use module::{
    compose_modules, hom_via_adjoint, is_adjoint_pair, kan_extend, lan_yoneda_apply,
    presheaf_hom, restrict, right_adjoint_candidate, yoneda, LeftModule, RightModule,
};
pub use space::{Map, Space, Violation};
pub use weighted::{weighted_colimit, weighted_limit, Diagram, Variance, Weight};

pub(crate) use space::same_space;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichedError {
    #[error("space violates the enrichment laws: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSpace(Vec<Violation>),
    #[error("base mismatch: expected {0}, found {1}")]
    Base(Base, Base),
    #[error("{0}")]
    Shape(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("map is not nonexpansive at ({x},{y})")]
    NotNonexpansive { x: String, y: String },
    #[error("{kind} module inequality fails at ({x},{y})")]
    InvalidModule { kind: &'static str, x: String, y: String },
    #[error("module is not a left adjoint")]
    NotLeftAdjoint,
}
