//! Trivalent spatial graphs at the Gauss-code level: the code itself,
//! looping rewrites, constituent links, facts and classification.

pub mod classify;
pub mod code;
pub mod facts;
pub mod families;
pub mod format;
pub mod links;
pub mod looping;

pub use classify::{
    candidates, classify_atoroidal, looping_transition, predicted_annulus, transition_table,
    AnnulusPrediction, AnnulusType, ClassifyError, GraphClass, HandcuffType, ThetaType, Transition,
};
pub use code::{
    validate_code, CodeViolation, Edge, EdgeEnd, GraphKind, Level, LoopOrigin, LoopStep,
    LoopingKind, Pass, SpatialGraphCode, Vertex,
};
pub use facts::{Certificate, Fact, FactError, FactSet, Provenance, ASSERT_KEYS};
pub use families::{
    family_odd_ringed, family_ringed_looped, family_torus_link, family_torus_looped,
    five_two_spine, FamilyError, Ring,
};
pub use format::{parse_code, write_code};
pub use links::{
    component_knot, connected_sum, constituent_links, linking_number, Constituent, LinkError,
};
pub use looping::{double_loop, loop_at, looping_kind, loopings, LoopError, LoopOptions};
