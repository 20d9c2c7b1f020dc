use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Hollow,
    Solid,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Hollow => "hollow",
            NodeKind::Solid => "solid",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            NodeKind::Hollow => '∘',
            NodeKind::Solid => '•',
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    /// Genus of the boundary component, present on labeled nodes only.
    #[serde(default)]
    pub genus: Option<u32>,
}

impl Node {
    pub fn new(id: impl Into<String>, kind: NodeKind, genus: Option<u32>) -> Self {
        Node {
            id: id.into(),
            kind,
            genus,
        }
    }

    pub fn is_labeled(&self) -> bool {
        self.genus.is_some()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum StructuralError {
    #[error("diagram has no nodes")]
    Empty,
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("edge {edge} refers to unknown node `{node}`")]
    DanglingEndpoint { edge: usize, node: String },
    #[error("node `{id}` has genus label {genus}; labels are at least 2")]
    GenusTooSmall { id: String, genus: u32 },
    #[error("diagram is not connected")]
    Disconnected,
}

/// A characteristic diagram: nodes plus a multiset of edges, loops allowed.
/// Edges keep their input order, so other data (annulus labels) can be
/// attached by edge index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct CharDiagram {
    nodes: Vec<Node>,
    /// Endpoint indices into `nodes`, stored with `a <= b`.
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawDiagram {
    nodes: Vec<Node>,
    edges: Vec<[String; 2]>,
}

impl TryFrom<RawDiagram> for CharDiagram {
    type Error = StructuralError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        let edges: Vec<(String, String)> = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
        CharDiagram::from_ids(raw.nodes, &edges)
    }
}

impl From<CharDiagram> for RawDiagram {
    fn from(d: CharDiagram) -> Self {
        let edges = d
            .edges
            .iter()
            .map(|&(a, b)| [d.nodes[a].id.clone(), d.nodes[b].id.clone()])
            .collect();
        RawDiagram {
            nodes: d.nodes,
            edges,
        }
    }
}

impl CharDiagram {
    /// Builds a diagram from nodes and index pairs.
    pub fn new(nodes: Vec<Node>, edges: Vec<(usize, usize)>) -> Result<Self, StructuralError> {
        if nodes.is_empty() {
            return Err(StructuralError::Empty);
        }
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if !seen.insert(n.id.as_str()) {
                return Err(StructuralError::DuplicateNode(n.id.clone()));
            }
            if let Some(g) = n.genus {
                if g < 2 {
                    return Err(StructuralError::GenusTooSmall {
                        id: n.id.clone(),
                        genus: g,
                    });
                }
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for x in [a, b] {
                if x >= nodes.len() {
                    return Err(StructuralError::DanglingEndpoint {
                        edge: i,
                        node: format!("#{x}"),
                    });
                }
            }
        }
        let edges = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let d = CharDiagram { nodes, edges };
        if !d.is_connected() {
            return Err(StructuralError::Disconnected);
        }
        Ok(d)
    }

    /// Builds a diagram from nodes and id pairs.
    pub fn from_ids(nodes: Vec<Node>, edges: &[(String, String)]) -> Result<Self, StructuralError> {
        let mut pairs = Vec::with_capacity(edges.len());
        for (i, (a, b)) in edges.iter().enumerate() {
            let find = |id: &str| {
                nodes.iter().position(|n| n.id == id).ok_or_else(|| {
                    StructuralError::DanglingEndpoint {
                        edge: i,
                        node: id.to_string(),
                    }
                })
            };
            pairs.push((find(a)?, find(b)?));
        }
        CharDiagram::new(nodes, pairs)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_ids(&self, i: usize) -> (&str, &str) {
        let (a, b) = self.edges[i];
        (&self.nodes[a].id, &self.nodes[b].id)
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn labeled_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].is_labeled())
            .collect()
    }

    /// The labeled node, if there is exactly one.
    pub fn labeled_node(&self) -> Option<usize> {
        match self.labeled_nodes()[..] {
            [v] => Some(v),
            _ => None,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(None)
    }

    /// Whether removing edge `i` disconnects the diagram. Loops and edges
    /// of a multi-edge never do.
    pub fn is_cut_edge(&self, i: usize) -> bool {
        !self.connected_without(Some(i))
    }

    fn connected_without(&self, skip: Option<usize>) -> bool {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same diagram with nodes reordered: new node `i` is old node `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CharDiagram {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let nodes = perm.iter().map(|&old| self.nodes[old].clone()).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (inv[a], inv[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        CharDiagram { nodes, edges }
    }
}
