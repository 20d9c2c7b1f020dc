//! Classification of atoroidal θ and handcuff graphs, the looping
//! transition table, and the annulus predicted for a looping.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::code::{GraphKind, LoopOrigin, LoopingKind, SpatialGraphCode};
use super::facts::FactSet;
use crate::annulus::catalog::{h1_diagram, h2_diagrams};
use crate::annulus::{AnnulusDiagram, LabelKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThetaType {
    T1,
    T2,
    T3,
    T4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HandcuffType {
    H1,
    H2,
    H3,
    H4,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphClass {
    Theta(ThetaType),
    Handcuff(HandcuffType),
    Unclassified(String),
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Theta(t) => write!(f, "tau{}", *t as u8 + 1),
            GraphClass::Handcuff(h) => write!(f, "h{}", *h as u8 + 1),
            GraphClass::Unclassified(r) => write!(f, "unclassified ({r})"),
        }
    }
}

use GraphClass::{Handcuff as Hc, Theta as Th};
use HandcuffType::*;
use ThetaType::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("contradictory facts: {0}")]
    Contradiction(String),
    #[error("classification needs a theta or handcuff graph, found {0}")]
    WrongShape(GraphKind),
}

/// Classes consistent with the facts, assuming atoroidality. `None` when
/// atoroidality has not been asserted.
pub fn candidates(
    kind: GraphKind,
    facts: &FactSet,
) -> Result<Option<Vec<GraphClass>>, ClassifyError> {
    if facts.atoroidal() != Some(true) {
        return Ok(None);
    }
    let mut set: BTreeSet<GraphClass> = match kind {
        GraphKind::Theta => [T1, T2, T3, T4].into_iter().map(Th).collect(),
        GraphKind::Handcuff => [H1, H2, H3, H4].into_iter().map(Hc).collect(),
        GraphKind::Link => return Err(ClassifyError::WrongShape(kind)),
    };
    let mut why: Vec<String> = Vec::new();
    let mut keep = |set: &mut BTreeSet<GraphClass>, allowed: &[GraphClass], reason: &str| {
        set.retain(|c| allowed.contains(c));
        why.push(reason.to_string());
    };

    let planar = facts.planar();
    let irreducible = facts.is_irreducible();
    match kind {
        GraphKind::Theta => {
            let nontrivial = facts.knot_trivial.values().any(|f| !f.value);
            let all_trivial = facts.knot_trivial.values().filter(|f| f.value).count() >= 3;
            match planar {
                Some(true) => keep(&mut set, &[Th(T1)], "planar"),
                Some(false) => keep(&mut set, &[Th(T2), Th(T3), Th(T4)], "not planar"),
                None => {}
            }
            if nontrivial {
                keep(
                    &mut set,
                    &[Th(T3), Th(T4)],
                    "a constituent knot is nontrivial",
                );
            }
            if all_trivial {
                keep(
                    &mut set,
                    &[Th(T1), Th(T2)],
                    "all constituent knots are trivial",
                );
            }
            if facts.tunnel.is_some() {
                keep(&mut set, &[Th(T1), Th(T3)], "an edge is a tunnel");
            }
            if facts.knotting_arc.is_some() {
                keep(&mut set, &[Th(T2), Th(T4)], "an edge is a knotting arc");
            }
            match irreducible {
                Some(true) => keep(&mut set, &[Th(T2), Th(T4)], "irreducible"),
                Some(false) => keep(&mut set, &[Th(T1), Th(T3)], "reducible"),
                None => {}
            }
            for arc in facts.tunnel.iter().chain(&facts.knotting_arc) {
                let rest = theta_rest(&arc.value, facts);
                if let Some(k) = rest.and_then(|k| facts.knot_trivial.get(&k)) {
                    if k.value {
                        keep(
                            &mut set,
                            &[Th(T1), Th(T2)],
                            "the knot off the arc is trivial",
                        );
                    } else {
                        keep(
                            &mut set,
                            &[Th(T3), Th(T4)],
                            "the knot off the arc is nontrivial",
                        );
                    }
                }
            }
        }
        GraphKind::Handcuff => {
            match planar {
                Some(true) => keep(&mut set, &[Hc(H1)], "planar"),
                Some(false) => keep(&mut set, &[Hc(H2), Hc(H3), Hc(H4)], "not planar"),
                None => {}
            }
            match facts.split() {
                Some(true) => keep(&mut set, &[Hc(H1), Hc(H2)], "constituent link split"),
                Some(false) => keep(&mut set, &[Hc(H3), Hc(H4)], "constituent link non-split"),
                None => {}
            }
            if facts.link_trivial.as_ref().is_some_and(|f| !f.value) {
                keep(
                    &mut set,
                    &[Hc(H2), Hc(H3), Hc(H4)],
                    "constituent link nontrivial",
                );
            }
            if facts.tunnel.is_some() {
                keep(&mut set, &[Hc(H1), Hc(H3)], "the joining arc is a tunnel");
            }
            if facts.knotting_arc.is_some() {
                keep(
                    &mut set,
                    &[Hc(H2), Hc(H4)],
                    "the joining arc is a knotting arc",
                );
            }
            match irreducible {
                Some(true) => keep(&mut set, &[Hc(H2), Hc(H4)], "irreducible"),
                Some(false) => keep(&mut set, &[Hc(H1), Hc(H3)], "reducible"),
                None => {}
            }
        }
        GraphKind::Link => unreachable!(),
    }
    if set.is_empty() {
        return Err(ClassifyError::Contradiction(why.join("; ")));
    }
    Ok(Some(set.into_iter().collect()))
}

/// Constituent key of the knot formed by the two θ edges other than `arc`.
fn theta_rest(arc: &str, facts: &FactSet) -> Option<String> {
    facts
        .knot_trivial
        .keys()
        .find(|k| k.split('+').count() == 2 && !k.split('+').any(|e| e == arc))
        .cloned()
}

pub fn classify_atoroidal(
    g: &SpatialGraphCode,
    facts: &FactSet,
) -> Result<GraphClass, ClassifyError> {
    if g.kind == GraphKind::Link {
        return Err(ClassifyError::WrongShape(g.kind));
    }
    let Some(set) = candidates(g.kind, facts)? else {
        return Ok(GraphClass::Unclassified("needs atoroidal".into()));
    };
    if let [only] = &set[..] {
        return Ok(only.clone());
    }
    Ok(GraphClass::Unclassified(format!(
        "one of {}; needs {}",
        set.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        missing_facts(g.kind, &set).join(", ")
    )))
}

fn missing_facts(kind: GraphKind, set: &[GraphClass]) -> Vec<&'static str> {
    let has = |c: GraphClass| set.contains(&c);
    let mut out = Vec::new();
    match kind {
        GraphKind::Theta => {
            if has(Th(T1)) && set.len() > 1 {
                out.push("planar");
            }
            if (has(Th(T1)) || has(Th(T2))) && (has(Th(T3)) || has(Th(T4))) {
                out.push("knot_trivial");
            }
            if (has(Th(T1)) || has(Th(T3))) && (has(Th(T2)) || has(Th(T4))) {
                out.push("tunnel or knotting_arc or irreducible");
            }
        }
        _ => {
            if has(Hc(H1)) && set.len() > 1 {
                out.push("planar");
            }
            if (has(Hc(H1)) || has(Hc(H2))) && (has(Hc(H3)) || has(Hc(H4))) {
                out.push("split");
            }
            if (has(Hc(H1)) || has(Hc(H3))) && (has(Hc(H2)) || has(Hc(H4))) {
                out.push("tunnel or knotting_arc or irreducible");
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: GraphClass,
    pub kind: Option<LoopingKind>,
    pub to: Vec<GraphClass>,
    pub note: Option<String>,
}

/// Class of a looping of a graph of class `c`. A τ3 graph looped without
/// a recorded kind can land in either h3 or h4.
pub fn looping_transition(c: &GraphClass, kind: LoopingKind) -> Transition {
    let (to, note) = match c {
        Th(T1) => (vec![Hc(H3)], Some("equivalent to 2_1".to_string())),
        Th(T2) | Th(T4) => (vec![Hc(H4)], None),
        Th(T3) => match kind {
            LoopingKind::Knot => (vec![Hc(H4)], None),
            LoopingKind::Tunnel => (vec![Hc(H3), Hc(H4)], Some("indeterminate".to_string())),
            LoopingKind::Plain => (
                vec![Hc(H3), Hc(H4)],
                Some("looping kind unknown".to_string()),
            ),
        },
        Hc(H1) => (vec![Hc(H1)], None),
        Hc(H2) | Hc(H3) | Hc(H4) => (vec![Hc(H2)], None),
        GraphClass::Unclassified(r) => (vec![GraphClass::Unclassified(r.clone())], None),
    };
    Transition {
        from: c.clone(),
        kind: matches!(c, Th(T3)).then_some(kind),
        to,
        note,
    }
}

/// The full table: one row per (class, kind) combination that the
/// looping lemmas distinguish.
pub fn transition_table() -> Vec<Transition> {
    let mut rows = vec![
        looping_transition(&Th(T1), LoopingKind::Plain),
        looping_transition(&Th(T2), LoopingKind::Plain),
        looping_transition(&Th(T3), LoopingKind::Knot),
        looping_transition(&Th(T3), LoopingKind::Tunnel),
        looping_transition(&Th(T3), LoopingKind::Plain),
        looping_transition(&Th(T4), LoopingKind::Plain),
    ];
    for h in [H1, H2, H3, H4] {
        rows.push(looping_transition(&Hc(h), LoopingKind::Plain));
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AnnulusType {
    #[serde(rename = "2-1")]
    TwoOne,
    #[serde(rename = "2-2")]
    TwoTwo,
}

impl fmt::Display for AnnulusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnnulusType::TwoOne => "2-1",
            AnnulusType::TwoTwo => "2-2",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusPrediction {
    /// Canonical annuli induced by the loops, one per looping step.
    pub annuli: Vec<AnnulusType>,
    pub unique: Option<bool>,
    pub unknotting: Option<bool>,
    pub irreducible_atoroidal: Option<bool>,
    /// Candidate annulus diagrams; empty when nothing is derived.
    pub diagrams: Vec<AnnulusDiagram>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
struct Outcome {
    unique: Option<bool>,
    unknotting: Option<bool>,
    irreducible_atoroidal: Option<bool>,
    diagrams: Option<Vec<AnnulusDiagram>>,
}

fn single(class: &GraphClass, h2: &[AnnulusDiagram]) -> Outcome {
    let good = |unknotting| Outcome {
        unique: Some(true),
        unknotting: Some(unknotting),
        irreducible_atoroidal: Some(true),
        diagrams: Some(vec![h1_diagram()]),
    };
    match class {
        Th(T2) | Th(T4) => good(false),
        Th(T3) => good(true),
        Hc(H2) | Hc(H4) => Outcome {
            unknotting: Some(false),
            irreducible_atoroidal: Some(true),
            diagrams: Some(h2.to_vec()),
            ..Outcome::default()
        },
        Hc(H3) => Outcome {
            unknotting: Some(true),
            irreducible_atoroidal: Some(true),
            diagrams: Some(h2.to_vec()),
            ..Outcome::default()
        },
        Hc(H1) => Outcome {
            irreducible_atoroidal: Some(false),
            ..Outcome::default()
        },
        _ => Outcome::default(),
    }
}

fn double(class: &GraphClass) -> Outcome {
    let theta = |solid| Some(vec![crate::annulus::catalog::theta_diagram(solid)]);
    match class {
        Th(T1) => Outcome {
            unique: Some(false),
            unknotting: Some(true),
            irreducible_atoroidal: Some(true),
            diagrams: theta(true),
        },
        Th(T2) | Th(T4) | Hc(H2) | Hc(H4) => Outcome {
            unique: Some(false),
            unknotting: Some(false),
            irreducible_atoroidal: Some(true),
            diagrams: theta(false),
        },
        Hc(H1) => Outcome {
            irreducible_atoroidal: Some(false),
            ..Outcome::default()
        },
        _ => Outcome {
            unique: Some(false),
            ..Outcome::default()
        },
    }
}

fn agree<T: Clone + PartialEq>(vals: impl Iterator<Item = Option<T>>) -> Option<T> {
    let mut first: Option<Option<T>> = None;
    for v in vals {
        match &first {
            None => first = Some(v),
            Some(f) if *f != v => return None,
            _ => {}
        }
    }
    first.flatten()
}

/// Predicts the canonical annulus of a looping (or double looping).
///
/// `origin` records how the looped code was made; `facts` describe the
/// source graph. When the source code itself is supplied, handcuff
/// predictions are narrowed by its constituent link.
pub fn predicted_annulus(
    origin: Option<&LoopOrigin>,
    source: Option<&SpatialGraphCode>,
    facts: &FactSet,
) -> Result<AnnulusPrediction, ClassifyError> {
    let Some(origin) = origin else {
        return Ok(AnnulusPrediction {
            notes: vec!["no looping provenance; nothing predicted".into()],
            ..AnnulusPrediction::default()
        });
    };
    let mut p = AnnulusPrediction::default();
    let is_double = origin.steps.len() >= 2;
    p.annuli = match (origin.source, is_double) {
        (GraphKind::Theta, false) => vec![AnnulusType::TwoOne],
        (_, true) => vec![AnnulusType::TwoTwo, AnnulusType::TwoTwo],
        _ => vec![AnnulusType::TwoTwo],
    };
    let Some(classes) = candidates(origin.source, facts)? else {
        p.notes.push("source atoroidality not asserted".into());
        return Ok(p);
    };

    let h2 = narrowed_h2(origin, source, facts, &mut p.notes);
    let outcomes: Vec<Outcome> = classes
        .iter()
        .map(|c| if is_double { double(c) } else { single(c, &h2) })
        .collect();
    p.unique = agree(outcomes.iter().map(|o| o.unique));
    p.unknotting = agree(outcomes.iter().map(|o| o.unknotting));
    p.irreducible_atoroidal = agree(outcomes.iter().map(|o| o.irreducible_atoroidal));
    if outcomes.iter().all(|o| o.diagrams.is_some()) {
        let mut all: Vec<AnnulusDiagram> = Vec::new();
        for o in &outcomes {
            for d in o.diagrams.as_ref().unwrap() {
                if !all.contains(d) {
                    all.push(d.clone());
                }
            }
        }
        p.diagrams = all;
    }
    if classes.len() > 1 {
        p.notes.push(format!(
            "source is one of {}",
            classes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(p)
}

/// H2 diagrams still possible for a single looping of a handcuff, after the
/// linking-number and second-annulus criteria.
fn narrowed_h2(
    origin: &LoopOrigin,
    source: Option<&SpatialGraphCode>,
    facts: &FactSet,
    notes: &mut Vec<String>,
) -> Vec<AnnulusDiagram> {
    let mut ds = h2_diagrams();
    if origin.source != GraphKind::Handcuff {
        return ds;
    }
    if let Some(lk) = &facts.linking_number {
        if lk.value.abs() == 1 {
            ds.retain(|d| !d.has_kind(LabelKind::K1) && !d.has_kind(LabelKind::K2));
            notes.push("|lk| = 1 rules out a type 3-2 annulus".into());
        }
    }
    let l1 = source.and_then(|g| {
        origin.steps.first().and_then(|st| {
            st.pair
                .iter()
                .find(|e| g.edge(&e.edge).is_some_and(|x| x.is_loop()))
                .map(|e| e.edge.clone())
        })
    });
    let l1_trivial = l1
        .as_ref()
        .and_then(|l| facts.knot_trivial.get(l))
        .map(|f| f.value);
    let link_trivial = facts.link_trivial.as_ref().map(|f| f.value);
    let hopf = facts.link_hopf.as_ref().map(|f| f.value);
    if l1_trivial == Some(true) && link_trivial == Some(false) && hopf == Some(false) {
        ds.retain(|d| d.count_kind(LabelKind::H2) < 2);
        notes.push("trivial looped loop in a non-trivial, non-Hopf link rules out a second type 2-2 annulus".into());
    }
    ds
}
