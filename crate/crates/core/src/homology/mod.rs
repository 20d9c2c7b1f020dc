//! Exact integer linear algebra and the homological invariants built on it.

pub mod group;
pub mod laurent;
pub mod matrix;
pub mod slope;
pub mod snf;
pub mod wirtinger;

pub use group::{
    klein_case_group, meridional_pair_predict, primitivity_necessary, subgroup_index, AbelianGroup,
    KleinCase, LoopClass, Presentation, SubgroupIndex,
};
pub use laurent::LaurentPoly;
pub use matrix::IntMatrix;
pub use slope::{slope_pair_classify, Rational, SlopeClass, SlopePair, SlopeShape};
pub use snf::{smith_normal_form, SmithForm};
pub use wirtinger::{
    alexander_polynomial, h1_complement, loop_classes, Arc, H1Complement, MarkedLoop, Meridian,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("no classes given")]
    Empty,
    #[error("ambient group {0} is not free")]
    NotFree(AbelianGroup),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("k = {0} is excluded; need |k| >= 2")]
    KleinMultiplier(i64),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("expected a single closed component, found {0} components")]
    NotAKnot(usize),
    #[error("loop refers to unknown arc {edge}#{segment}")]
    UnknownArc { edge: String, segment: usize },
}
