use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Theta,
    Handcuff,
    Link,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Theta => "theta",
            GraphKind::Handcuff => "handcuff",
            GraphKind::Link => "link",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Over,
    Under,
}

impl Level {
    pub fn flip(self) -> Level {
        match self {
            Level::Over => Level::Under,
            Level::Under => Level::Over,
        }
    }
}

/// One passage of an edge through a crossing. Both passages of a crossing
/// carry the crossing's sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub crossing: String,
    pub level: Level,
    pub sign: i8,
}

impl Pass {
    pub fn new(crossing: impl Into<String>, level: Level, sign: i8) -> Self {
        Pass {
            crossing: crossing.into(),
            level,
            sign,
        }
    }
}

/// `end` is 0 for the tail of the edge and 1 for its head.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: String,
    pub end: u8,
}

impl EdgeEnd {
    pub fn new(edge: impl Into<String>, end: u8) -> Self {
        EdgeEnd {
            edge: edge.into(),
            end,
        }
    }

    pub fn tail(edge: impl Into<String>) -> Self {
        Self::new(edge, 0)
    }

    pub fn head(edge: impl Into<String>) -> Self {
        Self::new(edge, 1)
    }
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    /// Incident edge ends in cyclic order; a well-formed vertex has three.
    pub ends: Vec<EdgeEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    /// `None` for a closed, vertex-free component.
    pub from: Option<String>,
    pub to: Option<String>,
    pub passes: Vec<Pass>,
}

impl Edge {
    pub fn closed(id: impl Into<String>, passes: Vec<Pass>) -> Self {
        Edge {
            id: id.into(),
            from: None,
            to: None,
            passes,
        }
    }

    pub fn open(
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        passes: Vec<Pass>,
    ) -> Self {
        Edge {
            id: id.into(),
            from: Some(from.into()),
            to: Some(to.into()),
            passes,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.from.is_none() && self.to.is_none()
    }

    pub fn is_loop(&self) -> bool {
        self.from.is_some() && self.from == self.to
    }

    pub fn endpoint(&self, end: u8) -> Option<&str> {
        match end {
            0 => self.from.as_deref(),
            _ => self.to.as_deref(),
        }
    }

    pub fn under_count(&self) -> usize {
        self.passes
            .iter()
            .filter(|p| p.level == Level::Under)
            .count()
    }
}

/// Gauss-code-level diagram of a trivalent spatial graph or a link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpatialGraphCode {
    pub kind: GraphKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Looping history, when the code was produced by `loop_at`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<LoopOrigin>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopingKind {
    Tunnel,
    Knot,
    Plain,
}

impl LoopingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LoopingKind::Tunnel => "tunnel",
            LoopingKind::Knot => "knot",
            LoopingKind::Plain => "plain",
        }
    }
}

impl fmt::Display for LoopingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One looping operation: the vertex replaced and the two ends merged,
/// named as in the code the step was applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopStep {
    pub vertex: String,
    pub pair: [EdgeEnd; 2],
    pub kind: LoopingKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopOrigin {
    pub source: GraphKind,
    pub steps: Vec<LoopStep>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeViolation {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("crossing {crossing} is passed {count} times, expected 2")]
    PassCount { crossing: String, count: usize },
    #[error("crossing {crossing} is not passed once over and once under")]
    Levels { crossing: String },
    #[error("crossing {crossing} has inconsistent signs")]
    SignMismatch { crossing: String },
    #[error("crossing {crossing} has sign {sign}, expected +1 or -1")]
    BadSign { crossing: String, sign: i8 },
    #[error("vertex {vertex} has {count} edge ends, expected 3")]
    Arity { vertex: String, count: usize },
    #[error("vertex {vertex} lists unknown edge {edge}")]
    UnknownEdge { vertex: String, edge: String },
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {edge} has only one of from/to")]
    HalfOpen { edge: String },
    #[error("edge end {end} is not listed exactly once at its vertex")]
    EndMismatch { end: String },
    #[error("declared {declared} but the abstract graph is {found}")]
    Shape { declared: GraphKind, found: String },
}

impl SpatialGraphCode {
    pub fn new(kind: GraphKind, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        SpatialGraphCode {
            kind,
            vertices,
            edges,
            origin: None,
        }
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn edge_mut(&mut self, id: &str) -> Option<&mut Edge> {
        self.edges.iter_mut().find(|e| e.id == id)
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Crossing ids in first-seen traversal order.
    pub fn crossings(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            for p in &e.passes {
                if seen.insert(p.crossing.clone()) {
                    out.push(p.crossing.clone());
                }
            }
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().len()
    }

    /// Sign of each crossing, read from its first passage.
    pub fn crossing_signs(&self) -> BTreeMap<String, i8> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            for p in &e.passes {
                out.entry(p.crossing.clone()).or_insert(p.sign);
            }
        }
        out
    }

    /// Edges passing through each crossing, as `(edge, level)` pairs.
    pub fn crossing_edges(&self) -> BTreeMap<String, Vec<(String, Level)>> {
        let mut out: BTreeMap<String, Vec<(String, Level)>> = BTreeMap::new();
        for e in &self.edges {
            for p in &e.passes {
                out.entry(p.crossing.clone())
                    .or_default()
                    .push((e.id.clone(), p.level));
            }
        }
        out
    }

    pub fn fresh_crossing_id(&self, stem: &str) -> String {
        let used: BTreeSet<String> = self.crossings().into_iter().collect();
        fresh(stem, |s| used.contains(s))
    }

    pub fn fresh_edge_id(&self, stem: &str) -> String {
        fresh(stem, |s| self.edge(s).is_some())
    }

    /// Flips every crossing sign and every over/under level.
    pub fn mirror(&self) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            for p in &mut e.passes {
                p.sign = -p.sign;
                p.level = p.level.flip();
            }
        }
        g
    }

    /// Reverses the orientation of the named edges, adjusting crossing
    /// signs and vertex end references.
    pub fn reverse_edges(&self, ids: &[&str]) -> Self {
        let rev: BTreeSet<&str> = ids.iter().copied().collect();
        let mut flips: BTreeMap<String, usize> = BTreeMap::new();
        for e in &self.edges {
            if rev.contains(e.id.as_str()) {
                for p in &e.passes {
                    *flips.entry(p.crossing.clone()).or_default() += 1;
                }
            }
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if rev.contains(e.id.as_str()) {
                e.passes.reverse();
                std::mem::swap(&mut e.from, &mut e.to);
            }
            for p in &mut e.passes {
                if flips.get(&p.crossing).is_some_and(|n| n % 2 == 1) {
                    p.sign = -p.sign;
                }
            }
        }
        for v in &mut g.vertices {
            for end in &mut v.ends {
                if rev.contains(end.edge.as_str()) {
                    end.end = 1 - end.end;
                }
            }
        }
        g
    }

    /// Shape of the abstract graph, ignoring the declared kind.
    pub fn abstract_shape(&self) -> Option<GraphKind> {
        if self.vertices.is_empty() {
            return (!self.edges.is_empty() && self.edges.iter().all(Edge::is_closed))
                .then_some(GraphKind::Link);
        }
        if self.vertices.len() != 2 || self.edges.len() != 3 {
            return None;
        }
        let (a, b) = (&self.vertices[0].id, &self.vertices[1].id);
        let mut between = 0;
        let mut loops_a = 0;
        let mut loops_b = 0;
        for e in &self.edges {
            match (e.from.as_ref(), e.to.as_ref()) {
                (Some(x), Some(y)) if x == y && x == a => loops_a += 1,
                (Some(x), Some(y)) if x == y && x == b => loops_b += 1,
                (Some(x), Some(y)) if x != y => between += 1,
                _ => return None,
            }
        }
        match (between, loops_a, loops_b) {
            (3, 0, 0) => Some(GraphKind::Theta),
            (1, 1, 1) => Some(GraphKind::Handcuff),
            _ => None,
        }
    }

    /// Closed components of a link code, in file order.
    pub fn components(&self) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|e| e.is_closed())
            .map(|e| e.id.as_str())
            .collect()
    }
}

fn fresh(stem: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(stem) {
        return stem.to_string();
    }
    (2..)
        .map(|i| format!("{stem}_{i}"))
        .find(|s| !taken(s))
        .expect("unbounded search")
}

/// Checks the structural invariants of a code. Empty result means
/// well-formed.
pub fn validate_code(g: &SpatialGraphCode) -> Vec<CodeViolation> {
    let mut out = Vec::new();

    let mut ids = BTreeSet::new();
    for id in g
        .vertices
        .iter()
        .map(|v| &v.id)
        .chain(g.edges.iter().map(|e| &e.id))
    {
        if !ids.insert(id.clone()) {
            out.push(CodeViolation::DuplicateId(id.clone()));
        }
    }

    let mut passes: BTreeMap<&str, Vec<&Pass>> = BTreeMap::new();
    for e in &g.edges {
        for p in &e.passes {
            passes.entry(&p.crossing).or_default().push(p);
        }
    }
    for (c, ps) in &passes {
        if let Some(p) = ps.iter().find(|p| p.sign != 1 && p.sign != -1) {
            out.push(CodeViolation::BadSign {
                crossing: c.to_string(),
                sign: p.sign,
            });
        }
        if ps.len() != 2 {
            out.push(CodeViolation::PassCount {
                crossing: c.to_string(),
                count: ps.len(),
            });
            continue;
        }
        if ps[0].level == ps[1].level {
            out.push(CodeViolation::Levels {
                crossing: c.to_string(),
            });
        }
        if ps[0].sign != ps[1].sign {
            out.push(CodeViolation::SignMismatch {
                crossing: c.to_string(),
            });
        }
    }

    let vertex_ids: BTreeSet<&str> = g.vertices.iter().map(|v| v.id.as_str()).collect();
    let mut listed: BTreeMap<(String, u8), Vec<&str>> = BTreeMap::new();
    for v in &g.vertices {
        if v.ends.len() != 3 {
            out.push(CodeViolation::Arity {
                vertex: v.id.clone(),
                count: v.ends.len(),
            });
        }
        for end in &v.ends {
            if g.edge(&end.edge).is_none() {
                out.push(CodeViolation::UnknownEdge {
                    vertex: v.id.clone(),
                    edge: end.edge.clone(),
                });
            }
            listed
                .entry((end.edge.clone(), end.end))
                .or_default()
                .push(&v.id);
        }
    }
    for e in &g.edges {
        match (&e.from, &e.to) {
            (None, None) => {
                for end in 0..2u8 {
                    if listed.contains_key(&(e.id.clone(), end)) {
                        out.push(CodeViolation::EndMismatch {
                            end: EdgeEnd::new(e.id.clone(), end).to_string(),
                        });
                    }
                }
            }
            (Some(_), None) | (None, Some(_)) => {
                out.push(CodeViolation::HalfOpen { edge: e.id.clone() })
            }
            (Some(f), Some(t)) => {
                for (end, v) in [(0u8, f), (1u8, t)] {
                    if !vertex_ids.contains(v.as_str()) {
                        out.push(CodeViolation::UnknownVertex {
                            edge: e.id.clone(),
                            vertex: v.clone(),
                        });
                        continue;
                    }
                    let at = listed.get(&(e.id.clone(), end));
                    if at.is_none_or(|vs| vs.len() != 1 || vs[0] != v.as_str()) {
                        out.push(CodeViolation::EndMismatch {
                            end: EdgeEnd::new(e.id.clone(), end).to_string(),
                        });
                    }
                }
            }
        }
    }

    if out.is_empty() {
        let found = g.abstract_shape();
        if found != Some(g.kind) {
            out.push(CodeViolation::Shape {
                declared: g.kind,
                found: found.map_or("unrecognized".to_string(), |k| k.to_string()),
            });
        }
    }
    out
}
