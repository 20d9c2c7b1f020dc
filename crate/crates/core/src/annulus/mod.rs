//! Annulus diagrams: characteristic diagrams with an annulus type on each
//! edge, the rules tying labels to shapes, and what follows from them.

pub mod catalog;
pub mod facts;
pub mod label;
pub mod model;
pub mod rules;
pub mod symmetry;

pub use catalog::{
    h1_diagram, h2_diagrams, known_knots, label_alphabet, label_catalog, theta_diagram, with_kind,
    KnownKnot,
};
pub use facts::{derived_facts, DerivedFact};
pub use label::{EdgeLabel, LabelError, LabelKind};
pub use model::{annulus_to_json, parse_annulus, write_annulus, AnnulusDiagram, AnnulusError};
pub use rules::{validate_labels, LabelViolation, Rule};
pub use symmetry::{is_fourone, symmetry_bounds, Bound, Group, SymmetryBound, SymmetryError};
