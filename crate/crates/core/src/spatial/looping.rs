//! The looping rewrite: replace a trivalent vertex by a small loop that
//! rings the strand formed by merging two of its edge ends.

use thiserror::Error;

use super::code::{
    validate_code, Edge, EdgeEnd, GraphKind, Level, LoopOrigin, LoopStep, LoopingKind, Pass,
    SpatialGraphCode, Vertex,
};
use super::facts::FactSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("looping needs a theta or handcuff code, found {0}")]
    NotTrivalent(GraphKind),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge end {end} is not incident to vertex {vertex}")]
    EndNotAtVertex { vertex: String, end: String },
    #[error("the two chosen ends must be distinct")]
    SameEnd,
    #[error("merging both ends of loop {0} would disconnect the graph")]
    Disconnect(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoopOptions {
    /// Use negative crossings for the ring instead of positive ones.
    pub mirror: bool,
    pub kind: Option<LoopingKind>,
}

/// Loops the ends `pair` at vertex `v`.
///
/// The merged strand keeps the id of `pair[0]`'s edge and is oriented from
/// that edge's far end to the far end of `pair[1]`'s edge. The ring is a
/// new loop edge `ring_<v>` at the vertex, which keeps its id; it crosses
/// the strand over then under, both crossings of the same sign.
pub fn loop_at(
    g: &SpatialGraphCode,
    v: &str,
    pair: [&EdgeEnd; 2],
    opts: LoopOptions,
) -> Result<SpatialGraphCode, LoopError> {
    if let Some(bad) = validate_code(g).first() {
        return Err(LoopError::Invalid(bad.to_string()));
    }
    if g.kind == GraphKind::Link {
        return Err(LoopError::NotTrivalent(g.kind));
    }
    let vertex = g
        .vertex(v)
        .ok_or_else(|| LoopError::UnknownVertex(v.to_string()))?;
    for end in pair {
        if !vertex.ends.contains(end) {
            return Err(LoopError::EndNotAtVertex {
                vertex: v.to_string(),
                end: end.to_string(),
            });
        }
    }
    let [a, b] = pair;
    if a == b {
        return Err(LoopError::SameEnd);
    }
    if a.edge == b.edge {
        return Err(LoopError::Disconnect(a.edge.clone()));
    }
    let third = vertex
        .ends
        .iter()
        .find(|e| *e != a && *e != b)
        .expect("trivalent vertex")
        .clone();

    // Orient edge(a) into v and edge(b) out of v.
    let mut rev = Vec::new();
    if a.end == 0 {
        rev.push(a.edge.as_str());
    }
    if b.end == 1 {
        rev.push(b.edge.as_str());
    }
    let h = g.reverse_edges(&rev);
    let remap = |e: &EdgeEnd, was_reversed: bool| -> EdgeEnd {
        let end = if was_reversed { 1 - e.end } else { e.end };
        EdgeEnd::new(e.edge.clone(), end)
    };
    let third = remap(&third, rev.contains(&third.edge.as_str()));

    let ea = h.edge(&a.edge).unwrap().clone();
    let eb = h.edge(&b.edge).unwrap().clone();
    let sign: i8 = if opts.mirror { -1 } else { 1 };
    let x1 = h.fresh_crossing_id(&format!("{v}_r1"));
    let x2 = h.fresh_crossing_id(&format!("{v}_r2"));
    let ring_id = h.fresh_edge_id(&format!("ring_{v}"));

    let mut passes = ea.passes.clone();
    passes.push(Pass::new(x1.clone(), Level::Under, sign));
    passes.push(Pass::new(x2.clone(), Level::Over, sign));
    passes.extend(eb.passes.iter().cloned());
    let strand = Edge {
        id: ea.id.clone(),
        from: ea.from.clone(),
        to: eb.to.clone(),
        passes,
    };
    let ring = Edge::open(
        ring_id.clone(),
        v,
        v,
        vec![
            Pass::new(x1, Level::Over, sign),
            Pass::new(x2, Level::Under, sign),
        ],
    );

    // Ends of edge(b) away from v now belong to the strand's head; the
    // far end of edge(a) stays the strand's tail.
    let rename = |e: &EdgeEnd| -> EdgeEnd {
        if e.edge == eb.id {
            EdgeEnd::new(ea.id.clone(), 1)
        } else {
            e.clone()
        }
    };

    let mut edges = Vec::new();
    for e in &h.edges {
        if e.id == ea.id {
            edges.push(strand.clone());
        } else if e.id == eb.id {
            continue;
        } else {
            edges.push(e.clone());
        }
    }
    edges.push(ring);

    let vertices = h
        .vertices
        .iter()
        .map(|w| {
            if w.id == v {
                Vertex {
                    id: w.id.clone(),
                    ends: vec![
                        rename(&third),
                        EdgeEnd::tail(ring_id.clone()),
                        EdgeEnd::head(ring_id.clone()),
                    ],
                }
            } else {
                Vertex {
                    id: w.id.clone(),
                    ends: w.ends.iter().map(rename).collect(),
                }
            }
        })
        .collect();

    let mut steps = g.origin.as_ref().map_or_else(Vec::new, |o| o.steps.clone());
    steps.push(LoopStep {
        vertex: v.to_string(),
        pair: [a.clone(), b.clone()],
        kind: opts.kind.unwrap_or(LoopingKind::Plain),
    });
    let out = SpatialGraphCode {
        kind: GraphKind::Handcuff,
        vertices,
        edges,
        origin: Some(LoopOrigin {
            source: g.origin.as_ref().map_or(g.kind, |o| o.source),
            steps,
        }),
    };
    if let Some(bad) = validate_code(&out).first() {
        return Err(LoopError::Invalid(bad.to_string()));
    }
    Ok(out)
}

/// All admissible loopings of a θ (six) or handcuff (four) code, as
/// `(vertex, pair)` choices in file order.
pub fn loopings(g: &SpatialGraphCode) -> Vec<(String, [EdgeEnd; 2])> {
    let mut out = Vec::new();
    for v in &g.vertices {
        for i in 0..v.ends.len() {
            for j in i + 1..v.ends.len() {
                if v.ends[i].edge != v.ends[j].edge {
                    out.push((v.id.clone(), [v.ends[i].clone(), v.ends[j].clone()]));
                }
            }
        }
    }
    out
}

/// Names a θ looping relative to a designated tunnel edge: merging the
/// two knot edges is a tunnel looping, merging a knot edge with the
/// tunnel is a knot looping.
pub fn looping_kind(g: &SpatialGraphCode, facts: &FactSet, pair: [&EdgeEnd; 2]) -> LoopingKind {
    if g.kind != GraphKind::Theta {
        return LoopingKind::Plain;
    }
    let Some(tunnel) = facts.tunnel.as_ref().map(|f| f.value.as_str()) else {
        return LoopingKind::Plain;
    };
    if pair.iter().any(|e| e.edge == tunnel) {
        LoopingKind::Knot
    } else {
        LoopingKind::Tunnel
    }
}

/// Loops at both vertices of a code. The second pair is chosen at the
/// other vertex so that the merged strand from the first step is joined
/// with the edge that was not looped at the first vertex.
pub fn double_loop(
    g: &SpatialGraphCode,
    v: &str,
    pair: [&EdgeEnd; 2],
    opts: LoopOptions,
) -> Result<SpatialGraphCode, LoopError> {
    let once = loop_at(g, v, pair, opts)?;
    let w = g
        .vertices
        .iter()
        .find(|x| x.id != v)
        .ok_or_else(|| LoopError::UnknownVertex(v.to_string()))?
        .id
        .clone();
    let at_w = once.vertex(&w).expect("other vertex survives").ends.clone();
    let strand = &pair[0].edge;
    let first = at_w
        .iter()
        .find(|e| &e.edge == strand)
        .ok_or_else(|| LoopError::Disconnect(strand.clone()))?
        .clone();
    let second = at_w
        .iter()
        .find(|e| e.edge != first.edge)
        .ok_or_else(|| LoopError::Disconnect(first.edge.clone()))?
        .clone();
    let opts = LoopOptions { kind: None, ..opts };
    loop_at(&once, &w, [&first, &second], opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::links::{constituent_links, linking_number};

    fn planar_theta() -> SpatialGraphCode {
        SpatialGraphCode::new(
            GraphKind::Theta,
            vec![
                Vertex {
                    id: "a".into(),
                    ends: vec![
                        EdgeEnd::tail("e1"),
                        EdgeEnd::tail("e2"),
                        EdgeEnd::tail("e3"),
                    ],
                },
                Vertex {
                    id: "b".into(),
                    ends: vec![
                        EdgeEnd::head("e3"),
                        EdgeEnd::head("e2"),
                        EdgeEnd::head("e1"),
                    ],
                },
            ],
            vec![
                Edge::open("e1", "a", "b", vec![]),
                Edge::open("e2", "a", "b", vec![]),
                Edge::open("e3", "a", "b", vec![]),
            ],
        )
    }

    #[test]
    fn planar_theta_loops_to_hopf_handcuff() {
        let g = planar_theta();
        let out = loop_at(
            &g,
            "a",
            [&EdgeEnd::tail("e1"), &EdgeEnd::tail("e2")],
            LoopOptions::default(),
        )
        .unwrap();
        assert_eq!(out.kind, GraphKind::Handcuff);
        assert_eq!(out.crossing_count(), 2);
        let link = &constituent_links(&out).unwrap()[0].code;
        let comps = link.components();
        assert_eq!(linking_number(link, comps[0], comps[1]).unwrap().abs(), 1);
    }

    #[test]
    fn six_and_four_loopings() {
        let g = planar_theta();
        assert_eq!(loopings(&g).len(), 6);
        for (v, [x, y]) in loopings(&g) {
            let out = loop_at(&g, &v, [&x, &y], LoopOptions::default()).unwrap();
            assert_eq!(loopings(&out).len(), 4);
        }
    }

    #[test]
    fn disconnecting_choice_is_rejected() {
        let g = planar_theta();
        let h = loop_at(
            &g,
            "a",
            [&EdgeEnd::tail("e1"), &EdgeEnd::tail("e2")],
            LoopOptions::default(),
        )
        .unwrap();
        let ring = h.vertex("a").unwrap().ends[1].clone();
        let ring_head = h.vertex("a").unwrap().ends[2].clone();
        assert!(matches!(
            loop_at(&h, "a", [&ring, &ring_head], LoopOptions::default()),
            Err(LoopError::Disconnect(_))
        ));
    }

    #[test]
    fn double_looping_has_two_rings() {
        let g = planar_theta();
        let d = double_loop(
            &g,
            "a",
            [&EdgeEnd::tail("e1"), &EdgeEnd::tail("e2")],
            LoopOptions::default(),
        )
        .unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(
            d.edges.iter().filter(|e| e.id.starts_with("ring_")).count(),
            2
        );
        assert_eq!(d.origin.as_ref().unwrap().steps.len(), 2);
    }
}
