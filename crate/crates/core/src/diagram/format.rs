//! Text and JSON forms of characteristic diagrams.
//!
//! ```text
//! node v hollow genus=2
//! node w solid
//! edge v v
//! edge v w
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::model::{CharDiagram, Node, NodeKind, StructuralError};
use crate::text::{is_identifier, lines, ParseError, Token};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed diagram: {0}")]
    Structural(#[from] StructuralError),
}

/// An edge's `label=...` token, kept for the annulus-diagram reader.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LabelToken {
    pub line: usize,
    pub col: usize,
    pub text: String,
}

pub(crate) fn parse_text(
    src: &str,
) -> Result<(CharDiagram, Vec<Option<LabelToken>>), DiagramError> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut labels = Vec::new();
    let mut endpoint_pos: Vec<[Token; 2]> = Vec::new();
    let mut edge_lines = Vec::new();
    for line in lines(src) {
        let head = line.tokens[0];
        match head.text {
            "node" => {
                let id = line.token(1, "node id")?;
                if !is_identifier(id.text) {
                    return Err(line
                        .error(id.col, format!("bad node id `{}`", id.text))
                        .into());
                }
                if nodes.iter().any(|n| n.id == id.text) {
                    return Err(line
                        .error(id.col, format!("duplicate node id `{}`", id.text))
                        .into());
                }
                let k = line.token(2, "`solid` or `hollow`")?;
                let kind = match k.text {
                    "solid" => NodeKind::Solid,
                    "hollow" => NodeKind::Hollow,
                    other => {
                        return Err(line
                            .error(
                                k.col,
                                format!("expected `solid` or `hollow`, found `{other}`"),
                            )
                            .into())
                    }
                };
                let genus = match line.tokens.get(3) {
                    None => None,
                    Some(t) => {
                        let v = t.text.strip_prefix("genus=").ok_or_else(|| {
                            line.error(t.col, format!("expected `genus=<n>`, found `{}`", t.text))
                        })?;
                        Some(
                            v.parse::<u32>()
                                .map_err(|_| line.error(t.col + 6, format!("bad genus `{v}`")))?,
                        )
                    }
                };
                line.expect_len(4)?;
                nodes.push(Node::new(id.text, kind, genus));
            }
            "edge" => {
                let a = line.token(1, "first endpoint")?;
                let b = line.token(2, "second endpoint")?;
                let label = match line.tokens.get(3) {
                    None => None,
                    Some(t) => {
                        let v = t.text.strip_prefix("label=").ok_or_else(|| {
                            line.error(t.col, format!("expected `label=...`, found `{}`", t.text))
                        })?;
                        Some(LabelToken {
                            line: line.number,
                            col: t.col + 6,
                            text: v.to_string(),
                        })
                    }
                };
                line.expect_len(4)?;
                edges.push((a.text.to_string(), b.text.to_string()));
                endpoint_pos.push([a, b]);
                edge_lines.push(line.number);
                labels.push(label);
            }
            other => {
                return Err(line
                    .error(
                        head.col,
                        format!("expected `node` or `edge`, found `{other}`"),
                    )
                    .into())
            }
        }
    }
    // Report unknown endpoints at their position.
    for (i, (pos, &ln)) in endpoint_pos.iter().zip(&edge_lines).enumerate() {
        for (t, id) in pos.iter().zip([&edges[i].0, &edges[i].1]) {
            if !nodes.iter().any(|n| &n.id == id) {
                return Err(ParseError::new(
                    ln,
                    t.col,
                    format!("edge endpoint `{id}` is not a declared node"),
                )
                .into());
            }
        }
    }
    let d = CharDiagram::from_ids(nodes, &edges)?;
    Ok((d, labels))
}

fn json_error(e: &serde_json::Error) -> ParseError {
    ParseError::new(e.line(), e.column(), e.to_string())
}

pub(crate) fn is_json(src: &str) -> bool {
    src.trim_start().starts_with('{')
}

/// Reads either format; JSON is recognized by a leading `{`.
pub fn parse_diagram(src: &str) -> Result<CharDiagram, DiagramError> {
    if is_json(src) {
        return serde_json::from_str(src).map_err(|e| DiagramError::Parse(json_error(&e)));
    }
    let (d, labels) = parse_text(src)?;
    if let Some(l) = labels.into_iter().flatten().next() {
        return Err(
            ParseError::new(l.line, l.col, "edge labels belong in an annulus diagram").into(),
        );
    }
    Ok(d)
}

pub fn write_diagram(d: &CharDiagram) -> String {
    write_with_labels(d, |_| None)
}

pub(crate) fn write_with_labels(
    d: &CharDiagram,
    label: impl Fn(usize) -> Option<String>,
) -> String {
    let mut out = String::new();
    for n in d.nodes() {
        write!(out, "node {} {}", n.id, n.kind).unwrap();
        if let Some(g) = n.genus {
            write!(out, " genus={g}").unwrap();
        }
        out.push('\n');
    }
    for i in 0..d.edges().len() {
        let (a, b) = d.edge_ids(i);
        write!(out, "edge {a} {b}").unwrap();
        if let Some(l) = label(i) {
            write!(out, " label={l}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn diagram_to_json(d: &CharDiagram) -> String {
    serde_json::to_string_pretty(d).expect("diagram serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str =
        "# theta shape\nnode v solid genus=2\nnode w solid\nedge v w\nedge v w\nedge w v\n";

    #[test]
    fn text_round_trip() {
        let d = parse_diagram(THETA).unwrap();
        assert_eq!(d.edges().len(), 3);
        assert_eq!(parse_diagram(&write_diagram(&d)).unwrap(), d);
        assert_eq!(parse_diagram(&diagram_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn error_positions() {
        let e = parse_diagram("node v hollow genus=2\nedge v z\n").unwrap_err();
        assert_eq!(
            e,
            DiagramError::Parse(ParseError::new(
                2,
                8,
                "edge endpoint `z` is not a declared node"
            ))
        );
        let DiagramError::Parse(e) = parse_diagram("node v hollow genus=2\nedge v").unwrap_err()
        else {
            panic!()
        };
        assert_eq!((e.line, e.col), (2, 7));
        let DiagramError::Parse(e) = parse_diagram("node v round").unwrap_err() else {
            panic!()
        };
        assert_eq!((e.line, e.col), (1, 8));
        assert!(matches!(
            parse_diagram("node v hollow genus=2\nnode w solid\n"),
            Err(DiagramError::Structural(StructuralError::Disconnected))
        ));
        assert!(matches!(
            parse_diagram(""),
            Err(DiagramError::Structural(StructuralError::Empty))
        ));
    }
}
