//! Characteristic diagrams: data model, structural constraints, canonical
//! forms and the exhaustive enumeration.

pub mod canon;
pub mod enumerate;
pub mod format;
pub mod model;
pub mod validate;

pub use canon::{are_isomorphic, canonical_form, canonical_form_labeled, CanonicalForm};
pub use enumerate::{
    ablation, candidate_count, enumerate_valid, enumerate_with, MAX_EDGES, MAX_NODES,
};
pub use format::{diagram_to_json, parse_diagram, write_diagram, DiagramError};
pub use model::{CharDiagram, Node, NodeKind, StructuralError};
pub use validate::{
    classify_type, ibundle_base, raw_type, realization, validate, validate_with, Constraint,
    ConstraintSet, ConstraintViolation, DiagramType, IBundleBase, InvalidDiagram, Realization,
};
