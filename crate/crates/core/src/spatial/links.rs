//! Constituent knots and links, linking numbers, and small code surgery
//! (component extraction, connected sum).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::code::{validate_code, Edge, GraphKind, SpatialGraphCode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("a component cannot be linked with itself")]
    SameComponent,
    #[error("code has vertices; expected a vertex-free link")]
    NotVertexFree,
    #[error("odd signed crossing count {0} between the components")]
    OddSum(i64),
    #[error("expected a theta or handcuff code, found {0}")]
    WrongShape(GraphKind),
}

/// A constituent knot or link, named by the graph edges it uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub name: String,
    pub edges: Vec<String>,
    pub code: SpatialGraphCode,
}

/// Canonical name for a set of edges: sorted ids joined by `+`.
pub fn pair_name(a: &str, b: &str) -> String {
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    format!("{x}+{y}")
}

fn check(g: &SpatialGraphCode) -> Result<(), LinkError> {
    match validate_code(g).first() {
        Some(v) => Err(LinkError::Invalid(v.to_string())),
        None => Ok(()),
    }
}

/// Keeps only the named edges and the crossings among them.
fn restrict(g: &SpatialGraphCode, keep: &[&str]) -> Vec<Edge> {
    let keep: BTreeSet<&str> = keep.iter().copied().collect();
    let mut inside: BTreeSet<String> = BTreeSet::new();
    for (c, users) in g.crossing_edges() {
        if users.iter().all(|(e, _)| keep.contains(e.as_str())) {
            inside.insert(c);
        }
    }
    g.edges
        .iter()
        .filter(|e| keep.contains(e.id.as_str()))
        .map(|e| {
            let mut e = e.clone();
            e.passes.retain(|p| inside.contains(&p.crossing));
            e
        })
        .collect()
}

/// θ: the three constituent knots (one per edge pair). Handcuff: the
/// two-component constituent link. Link: the code itself.
pub fn constituent_links(g: &SpatialGraphCode) -> Result<Vec<Constituent>, LinkError> {
    check(g)?;
    match g.kind {
        GraphKind::Link => Ok(vec![Constituent {
            name: g.components().join("+"),
            edges: g.components().into_iter().map(String::from).collect(),
            code: g.clone(),
        }]),
        GraphKind::Theta => {
            let ids: Vec<&str> = g.edges.iter().map(|e| e.id.as_str()).collect();
            let mut out = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                out.push(theta_knot(g, ids[i], ids[j]));
            }
            Ok(out)
        }
        GraphKind::Handcuff => {
            let loops: Vec<&str> = g
                .edges
                .iter()
                .filter(|e| e.is_loop())
                .map(|e| e.id.as_str())
                .collect();
            let mut edges = restrict(g, &loops);
            for e in &mut edges {
                e.from = None;
                e.to = None;
            }
            Ok(vec![Constituent {
                name: loops.join("+"),
                edges: loops.iter().map(|s| s.to_string()).collect(),
                code: SpatialGraphCode {
                    origin: None,
                    kind: GraphKind::Link,
                    vertices: vec![],
                    edges,
                },
            }])
        }
    }
}

/// Knot formed by two θ edges: `a` traversed forward, then `b` back.
fn theta_knot(g: &SpatialGraphCode, a: &str, b: &str) -> Constituent {
    let ea = g.edge(a).expect("edge exists");
    let eb = g.edge(b).expect("edge exists");
    let oriented = if eb.from == ea.from {
        g.reverse_edges(&[b])
    } else {
        g.clone()
    };
    let kept = restrict(&oriented, &[a, b]);
    let mut passes = Vec::new();
    for id in [a, b] {
        passes.extend(kept.iter().find(|e| e.id == id).unwrap().passes.clone());
    }
    let name = pair_name(a, b);
    Constituent {
        name: name.clone(),
        edges: vec![a.to_string(), b.to_string()],
        code: SpatialGraphCode {
            origin: None,
            kind: GraphKind::Link,
            vertices: vec![],
            edges: vec![Edge::closed(name, passes)],
        },
    }
}

/// Half the signed count of crossings between components `a` and `b`.
pub fn linking_number(link: &SpatialGraphCode, a: &str, b: &str) -> Result<i64, LinkError> {
    check(link)?;
    if !link.vertices.is_empty() {
        return Err(LinkError::NotVertexFree);
    }
    for c in [a, b] {
        if link.edge(c).is_none() {
            return Err(LinkError::UnknownComponent(c.to_string()));
        }
    }
    if a == b {
        return Err(LinkError::SameComponent);
    }
    let signs = link.crossing_signs();
    let mut sum = 0i64;
    for (c, users) in link.crossing_edges() {
        let on: BTreeSet<&str> = users.iter().map(|(e, _)| e.as_str()).collect();
        if on.len() == 2 && on.contains(a) && on.contains(b) {
            sum += i64::from(signs[&c]);
        }
    }
    if sum % 2 != 0 {
        return Err(LinkError::OddSum(sum));
    }
    Ok(sum / 2)
}

/// One closed component as a knot code, keeping only its self-crossings.
pub fn component_knot(link: &SpatialGraphCode, id: &str) -> Result<SpatialGraphCode, LinkError> {
    let e = link
        .edge(id)
        .ok_or_else(|| LinkError::UnknownComponent(id.to_string()))?;
    if !e.is_closed() {
        return Err(LinkError::NotVertexFree);
    }
    Ok(SpatialGraphCode {
        origin: None,
        kind: GraphKind::Link,
        vertices: vec![],
        edges: restrict(link, &[id]),
    })
}

/// Connected sum of two knot codes, joining the traversals end to end.
/// Crossings of the second factor are renamed apart.
pub fn connected_sum(
    k1: &SpatialGraphCode,
    k2: &SpatialGraphCode,
) -> Result<SpatialGraphCode, LinkError> {
    for k in [k1, k2] {
        check(k)?;
        if !k.vertices.is_empty() || k.edges.len() != 1 {
            return Err(LinkError::NotVertexFree);
        }
    }
    let used: BTreeSet<String> = k1.crossings().into_iter().collect();
    let mut passes = k1.edges[0].passes.clone();
    for p in &k2.edges[0].passes {
        let mut p = p.clone();
        let mut name = format!("{}'", p.crossing);
        while used.contains(&name) {
            name.push('\'');
        }
        p.crossing = name;
        passes.push(p);
    }
    Ok(SpatialGraphCode {
        origin: None,
        kind: GraphKind::Link,
        vertices: vec![],
        edges: vec![Edge::closed(k1.edges[0].id.clone(), passes)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::code::{Level, Pass};

    fn hopf(sign: i8) -> SpatialGraphCode {
        SpatialGraphCode {
            origin: None,
            kind: GraphKind::Link,
            vertices: vec![],
            edges: vec![
                Edge::closed(
                    "a",
                    vec![
                        Pass::new("1", Level::Over, sign),
                        Pass::new("2", Level::Under, sign),
                    ],
                ),
                Edge::closed(
                    "b",
                    vec![
                        Pass::new("1", Level::Under, sign),
                        Pass::new("2", Level::Over, sign),
                    ],
                ),
            ],
        }
    }

    #[test]
    fn hopf_link() {
        assert_eq!(linking_number(&hopf(1), "a", "b"), Ok(1));
        assert_eq!(linking_number(&hopf(-1), "b", "a"), Ok(-1));
        assert_eq!(linking_number(&hopf(1).mirror(), "a", "b"), Ok(-1));
        assert_eq!(
            linking_number(&hopf(1).reverse_edges(&["a"]), "a", "b"),
            Ok(-1)
        );
        assert_eq!(
            linking_number(&hopf(1).reverse_edges(&["a", "b"]), "a", "b"),
            Ok(1)
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            linking_number(&hopf(1), "a", "z"),
            Err(LinkError::UnknownComponent("z".into()))
        );
        assert_eq!(
            linking_number(&hopf(1), "a", "a"),
            Err(LinkError::SameComponent)
        );
    }

    #[test]
    fn unlink() {
        let g = SpatialGraphCode {
            origin: None,
            kind: GraphKind::Link,
            vertices: vec![],
            edges: vec![Edge::closed("a", vec![]), Edge::closed("b", vec![])],
        };
        assert_eq!(linking_number(&g, "a", "b"), Ok(0));
    }
}
