//! Text format for spatial graph codes.
//!
//! ```text
//! graph theta
//! vertex a ends e1.0 e2.0 e3.0
//! vertex b ends e3.1 e2.1 e1.1
//! edge e1 from a to b
//! edge k loop                 # closed component (links only)
//! pass e1 x1 over sign=+
//! ```
//!
//! Codes written by the looping command also carry their history:
//!
//! ```text
//! origin theta
//! step a e1.0 e2.0 kind=tunnel
//! ```

use std::fmt::Write as _;

use super::code::{
    Edge, EdgeEnd, GraphKind, Level, LoopOrigin, LoopStep, LoopingKind, Pass, SpatialGraphCode,
    Vertex,
};
use crate::text::{eof_error, is_identifier, lines, Line, ParseError, Token};

pub fn parse_code(src: &str) -> Result<SpatialGraphCode, ParseError> {
    let mut kind = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut origin: Option<LoopOrigin> = None;

    for line in lines(src) {
        let head = line.tokens[0];
        match head.text {
            "origin" => {
                let t = line.token(1, "source kind")?;
                let source = match t.text {
                    "theta" => GraphKind::Theta,
                    "handcuff" => GraphKind::Handcuff,
                    other => return Err(line.error(t.col, format!("bad origin kind `{other}`"))),
                };
                line.expect_len(2)?;
                origin = Some(LoopOrigin {
                    source,
                    steps: Vec::new(),
                });
            }
            "step" => {
                let Some(o) = origin.as_mut() else {
                    return Err(line.error(head.col, "`step` before `origin`"));
                };
                let vertex = ident(&line, 1, "vertex id")?;
                let a = parse_end(&line, line.token(2, "edge end")?)?;
                let b = parse_end(&line, line.token(3, "edge end")?)?;
                let kt = line.token(4, "kind=<tunnel|knot|plain>")?;
                let kind = match kt.text {
                    "kind=tunnel" => LoopingKind::Tunnel,
                    "kind=knot" => LoopingKind::Knot,
                    "kind=plain" => LoopingKind::Plain,
                    other => return Err(line.error(kt.col, format!("bad looping kind `{other}`"))),
                };
                line.expect_len(5)?;
                o.steps.push(LoopStep {
                    vertex,
                    pair: [a, b],
                    kind,
                });
            }
            "graph" => {
                if kind.is_some() {
                    return Err(line.error(head.col, "duplicate graph declaration"));
                }
                let t = line.token(1, "graph kind")?;
                kind = Some(match t.text {
                    "theta" => GraphKind::Theta,
                    "handcuff" => GraphKind::Handcuff,
                    "link" => GraphKind::Link,
                    other => return Err(line.error(t.col, format!("unknown graph kind `{other}`"))),
                });
                line.expect_len(2)?;
            }
            "vertex" => {
                let id = ident(&line, 1, "vertex id")?;
                let kw = line.token(2, "`ends`")?;
                if kw.text != "ends" {
                    return Err(line.error(kw.col, "expected `ends`"));
                }
                let ends = line.tokens[3..]
                    .iter()
                    .map(|t| parse_end(&line, *t))
                    .collect::<Result<Vec<_>, _>>()?;
                vertices.push(Vertex { id, ends });
            }
            "edge" => {
                let id = ident(&line, 1, "edge id")?;
                if edges.iter().any(|e| e.id == id) {
                    return Err(line.error(line.tokens[1].col, format!("duplicate edge `{id}`")));
                }
                let mut i = 2;
                let looped = line.tokens.get(i).is_some_and(|t| t.text == "loop");
                if looped {
                    i += 1;
                }
                if line.tokens.len() == i {
                    if !looped {
                        return Err(line.error(line.end_col, "expected `loop` or `from`"));
                    }
                    edges.push(Edge::closed(id, Vec::new()));
                    continue;
                }
                let kw = line.token(i, "`from`")?;
                if kw.text != "from" {
                    return Err(line.error(kw.col, "expected `from`"));
                }
                let from = ident(&line, i + 1, "vertex id")?;
                let kw = line.token(i + 2, "`to`")?;
                if kw.text != "to" {
                    return Err(line.error(kw.col, "expected `to`"));
                }
                let to = ident(&line, i + 3, "vertex id")?;
                line.expect_len(i + 4)?;
                if looped && from != to {
                    return Err(line.error(
                        line.tokens[i + 3].col,
                        "a `loop` edge must start and end at the same vertex",
                    ));
                }
                edges.push(Edge::open(id, from, to, Vec::new()));
            }
            "pass" => {
                let et = line.token(1, "edge id")?;
                let crossing = ident(&line, 2, "crossing id")?;
                let lt = line.token(3, "`over` or `under`")?;
                let level = match lt.text {
                    "over" => Level::Over,
                    "under" => Level::Under,
                    other => {
                        return Err(
                            line.error(lt.col, format!("expected over/under, got `{other}`"))
                        )
                    }
                };
                let st = line.token(4, "sign=+ or sign=-")?;
                let sign = match st.text {
                    "sign=+" | "sign=+1" => 1,
                    "sign=-" | "sign=-1" => -1,
                    other => return Err(line.error(st.col, format!("bad sign `{other}`"))),
                };
                line.expect_len(5)?;
                let edge = edges.iter_mut().find(|e| e.id == et.text).ok_or_else(|| {
                    line.error(et.col, format!("pass on undeclared edge `{}`", et.text))
                })?;
                edge.passes.push(Pass {
                    crossing,
                    level,
                    sign,
                });
            }
            other => return Err(line.error(head.col, format!("unknown declaration `{other}`"))),
        }
    }
    let kind = kind.ok_or_else(|| eof_error(src, "missing `graph` declaration"))?;
    Ok(SpatialGraphCode {
        kind,
        vertices,
        edges,
        origin,
    })
}

fn ident(line: &Line<'_>, i: usize, what: &str) -> Result<String, ParseError> {
    let t = line.token(i, what)?;
    if !is_identifier(t.text) {
        return Err(line.error(t.col, format!("invalid {what} `{}`", t.text)));
    }
    Ok(t.text.to_string())
}

fn parse_end(line: &Line<'_>, t: Token<'_>) -> Result<EdgeEnd, ParseError> {
    let (edge, end) = t
        .text
        .rsplit_once('.')
        .ok_or_else(|| line.error(t.col, format!("expected <edge>.<0|1>, got `{}`", t.text)))?;
    let end = match end {
        "0" => 0,
        "1" => 1,
        _ => return Err(line.error(t.col + edge.len() + 1, "edge end must be 0 or 1")),
    };
    if !is_identifier(edge) {
        return Err(line.error(t.col, format!("invalid edge id `{edge}`")));
    }
    Ok(EdgeEnd::new(edge, end))
}

pub fn write_code(g: &SpatialGraphCode) -> String {
    let mut s = String::new();
    writeln!(s, "graph {}", g.kind).unwrap();
    for v in &g.vertices {
        let ends: Vec<String> = v.ends.iter().map(ToString::to_string).collect();
        writeln!(s, "vertex {} ends {}", v.id, ends.join(" ")).unwrap();
    }
    for e in &g.edges {
        match (&e.from, &e.to) {
            (Some(f), Some(t)) if f == t => writeln!(s, "edge {} loop from {f} to {t}", e.id),
            (Some(f), Some(t)) => writeln!(s, "edge {} from {f} to {t}", e.id),
            _ => writeln!(s, "edge {} loop", e.id),
        }
        .unwrap();
    }
    for e in &g.edges {
        for p in &e.passes {
            let level = match p.level {
                Level::Over => "over",
                Level::Under => "under",
            };
            let sign = if p.sign < 0 { "-" } else { "+" };
            writeln!(s, "pass {} {} {level} sign={sign}", e.id, p.crossing).unwrap();
        }
    }
    if let Some(o) = &g.origin {
        writeln!(s, "origin {}", o.source).unwrap();
        for st in &o.steps {
            writeln!(
                s,
                "step {} {} {} kind={}",
                st.vertex, st.pair[0], st.pair[1], st.kind
            )
            .unwrap();
        }
    }
    s
}
