//! Combinatorics of genus-2 handlebody-knot exteriors.
//!
//! - [`diagram`]: characteristic diagrams, their constraints and the
//!   exhaustive enumeration.
//! - [`annulus`]: annulus labels on diagrams, consistency rules, symmetry
//!   bounds.
//! - [`spatial`]: spatial trivalent graphs as Gauss codes, looping, facts
//!   and classification of atoroidal graphs.
//! - [`homology`]: exact integer linear algebra and the invariants built on
//!   it.

pub mod annulus;
pub mod diagram;
pub mod exec;
pub mod homology;
pub mod spatial;
pub mod text;

pub use exec::Strategy;
