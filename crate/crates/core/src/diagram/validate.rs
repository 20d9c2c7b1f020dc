use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::model::{CharDiagram, NodeKind};

/// Structural constraints on the characteristic diagram of a genus-2
/// handlebody-knot exterior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constraint {
    /// Exactly one labeled node, with label 2.
    OneLabeledNode,
    /// Unlabeled nodes are solid.
    UnlabeledSolid,
    /// No loop at a solid node.
    NoSolidLoop,
    /// Every edge touches the labeled node.
    EdgesAtLabeled,
    /// A solid labeled node does not make the whole diagram one bigon.
    NoSolidBigon,
    /// Degree at most 3, loops counted twice.
    Trivalent,
    /// At least one edge.
    Cylindrical,
}

impl Constraint {
    pub const ALL: [Constraint; 7] = [
        Constraint::OneLabeledNode,
        Constraint::UnlabeledSolid,
        Constraint::NoSolidLoop,
        Constraint::EdgesAtLabeled,
        Constraint::NoSolidBigon,
        Constraint::Trivalent,
        Constraint::Cylindrical,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Constraint::OneLabeledNode => "C-i",
            Constraint::UnlabeledSolid => "C-ii",
            Constraint::NoSolidLoop => "C-iii",
            Constraint::EdgesAtLabeled => "C-iv",
            Constraint::NoSolidBigon => "C-vi",
            Constraint::Trivalent => "C-vii",
            Constraint::Cylindrical => "C-cyl",
        }
    }

    pub fn from_code(s: &str) -> Option<Constraint> {
        Constraint::ALL.into_iter().find(|c| c.code() == s)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Set of enabled constraints, for ablation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintSet(u8);

impl ConstraintSet {
    pub fn all() -> Self {
        ConstraintSet((1 << Constraint::ALL.len()) - 1)
    }

    pub fn without(self, c: Constraint) -> Self {
        ConstraintSet(self.0 & !(1 << c as u8))
    }

    pub fn contains(self, c: Constraint) -> bool {
        self.0 & (1 << c as u8) != 0
    }
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet::all()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintViolation {
    pub constraint: Constraint,
    pub detail: String,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.constraint, self.detail)
    }
}

pub fn validate(d: &CharDiagram) -> Vec<ConstraintViolation> {
    validate_with(d, ConstraintSet::all())
}

pub fn validate_with(d: &CharDiagram, enabled: ConstraintSet) -> Vec<ConstraintViolation> {
    let mut out = Vec::new();
    let mut fail = |c: Constraint, detail: String| {
        if enabled.contains(c) {
            out.push(ConstraintViolation {
                constraint: c,
                detail,
            });
        }
    };
    let nodes = d.nodes();
    let labeled = d.labeled_nodes();
    match labeled[..] {
        [v] if nodes[v].genus == Some(2) => {}
        [v] => fail(
            Constraint::OneLabeledNode,
            format!(
                "node {} has label {}, expected 2",
                nodes[v].id,
                nodes[v].genus.unwrap()
            ),
        ),
        _ => fail(
            Constraint::OneLabeledNode,
            format!("{} labeled nodes, expected exactly one", labeled.len()),
        ),
    }
    for n in nodes {
        if !n.is_labeled() && n.kind != NodeKind::Solid {
            fail(
                Constraint::UnlabeledSolid,
                format!("unlabeled node {} is hollow", n.id),
            );
        }
    }
    for &(a, b) in d.edges() {
        if a == b && nodes[a].kind == NodeKind::Solid {
            fail(
                Constraint::NoSolidLoop,
                format!("loop at solid node {}", nodes[a].id),
            );
        }
    }
    if let Some(v) = d.labeled_node() {
        for (i, &(a, b)) in d.edges().iter().enumerate() {
            if a != v && b != v {
                let (x, y) = d.edge_ids(i);
                fail(
                    Constraint::EdgesAtLabeled,
                    format!("edge {x}-{y} misses labeled node {}", nodes[v].id),
                );
            }
        }
        let bigon =
            nodes.len() == 2 && d.edges().len() == 2 && d.edges().iter().all(|&(a, b)| a != b);
        if nodes[v].kind == NodeKind::Solid && bigon {
            fail(
                Constraint::NoSolidBigon,
                format!(
                    "solid labeled node {} and the other node form a bigon",
                    nodes[v].id
                ),
            );
        }
    }
    for (i, n) in nodes.iter().enumerate() {
        let deg = d.degree(i);
        if deg > 3 {
            fail(
                Constraint::Trivalent,
                format!("node {} has degree {deg}", n.id),
            );
        }
    }
    if d.edges().is_empty() {
        fail(Constraint::Cylindrical, "no edges".into());
    }
    out
}

/// `(e, l, b, square)`: edges, loops, bigons, kind of the labeled node.
/// Bigons are counted per pair of non-loop edges with the same endpoints,
/// so a triple edge contributes 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramType {
    pub e: usize,
    pub l: usize,
    pub b: usize,
    pub square: NodeKind,
}

impl DiagramType {
    pub const fn new(e: usize, l: usize, b: usize, square: NodeKind) -> Self {
        DiagramType { e, l, b, square }
    }

    /// `(1,1,0,∘)` style.
    pub fn symbolic(&self) -> String {
        format!(
            "({},{},{},{})",
            self.e,
            self.l,
            self.b,
            self.square.symbol()
        )
    }

    /// Sort key matching the order shapes are usually tabulated in.
    pub fn table_key(
        &self,
    ) -> (
        usize,
        std::cmp::Reverse<usize>,
        std::cmp::Reverse<usize>,
        NodeKind,
    ) {
        use std::cmp::Reverse;
        (self.e, Reverse(self.l), Reverse(self.b), self.square)
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.e, self.l, self.b, self.square)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("diagram violates {}", .0.iter().map(|v| v.constraint.code()).collect::<Vec<_>>().join(", "))]
pub struct InvalidDiagram(pub Vec<ConstraintViolation>);

pub fn classify_type(d: &CharDiagram) -> Result<DiagramType, InvalidDiagram> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(InvalidDiagram(violations));
    }
    Ok(raw_type(d))
}

/// Type of a diagram with a labeled node, without validating it first.
pub fn raw_type(d: &CharDiagram) -> DiagramType {
    let n = d.node_count();
    let l = d.edges().iter().filter(|(a, b)| a == b).count();
    let mut b = 0;
    for x in 0..n {
        for y in x + 1..n {
            let m = d.multiplicity(x, y);
            b += m * m.saturating_sub(1) / 2;
        }
    }
    let square = d
        .labeled_nodes()
        .first()
        .map_or(NodeKind::Hollow, |&v| d.nodes()[v].kind);
    DiagramType {
        e: d.edges().len(),
        l,
        b,
        square,
    }
}

/// Base surface of the I-bundle at a solid labeled node, forced by its
/// degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IBundleBase {
    KleinBottle,
    MobiusBand,
    PairOfPants,
}

impl fmt::Display for IBundleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IBundleBase::KleinBottle => "I-bundle over a once-punctured Klein bottle",
            IBundleBase::MobiusBand => "I-bundle over a once-punctured Mobius band",
            IBundleBase::PairOfPants => "I-bundle over a pair of pants",
        })
    }
}

pub fn ibundle_base(d: &CharDiagram) -> Option<IBundleBase> {
    let v = d.labeled_node()?;
    if d.nodes()[v].kind != NodeKind::Solid {
        return None;
    }
    match d.degree(v) {
        1 => Some(IBundleBase::KleinBottle),
        2 => Some(IBundleBase::MobiusBand),
        3 => Some(IBundleBase::PairOfPants),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    Known,
    Unknown,
}

/// Whether some handlebody-knot is known to have a diagram of this type.
pub fn realization(t: &DiagramType) -> Realization {
    match (t.e, t.l, t.b, t.square) {
        (2, 0, 0, NodeKind::Solid) | (3, 0, 1, _) | (3, 0, 0, _) => Realization::Unknown,
        _ => Realization::Known,
    }
}
