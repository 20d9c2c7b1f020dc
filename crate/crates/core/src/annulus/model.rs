use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::label::{EdgeLabel, LabelKind};
use crate::diagram::format::{is_json, parse_text, write_with_labels, DiagramError};
use crate::diagram::validate::{classify_type, DiagramType, InvalidDiagram};
use crate::diagram::{canonical_form_labeled, CanonicalForm, CharDiagram, Node, StructuralError};
use crate::text::ParseError;

/// A characteristic diagram with one annulus label per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAnnulus", into = "RawAnnulus")]
pub struct AnnulusDiagram {
    base: CharDiagram,
    labels: Vec<EdgeLabel>,
}

#[derive(Serialize, Deserialize)]
struct RawAnnulus {
    nodes: Vec<Node>,
    edges: Vec<[String; 2]>,
    labels: Vec<EdgeLabel>,
}

impl TryFrom<RawAnnulus> for AnnulusDiagram {
    type Error = AnnulusError;

    fn try_from(raw: RawAnnulus) -> Result<Self, AnnulusError> {
        let edges: Vec<(String, String)> = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
        let base = CharDiagram::from_ids(raw.nodes, &edges)?;
        AnnulusDiagram::new(base, raw.labels)
    }
}

impl From<AnnulusDiagram> for RawAnnulus {
    fn from(ad: AnnulusDiagram) -> Self {
        let d = &ad.base;
        RawAnnulus {
            nodes: d.nodes().to_vec(),
            edges: (0..d.edges().len())
                .map(|i| {
                    let (a, b) = d.edge_ids(i);
                    [a.to_string(), b.to_string()]
                })
                .collect(),
            labels: ad.labels,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnulusError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed diagram: {0}")]
    Structural(#[from] StructuralError),
    #[error("malformed diagram: edge {edge} has no label")]
    Unlabeled { edge: String },
    #[error("malformed diagram: {edges} edges but {labels} labels")]
    LabelCount { edges: usize, labels: usize },
}

impl From<DiagramError> for AnnulusError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Parse(p) => AnnulusError::Parse(p),
            DiagramError::Structural(s) => AnnulusError::Structural(s),
        }
    }
}

impl AnnulusDiagram {
    pub fn new(base: CharDiagram, labels: Vec<EdgeLabel>) -> Result<Self, AnnulusError> {
        if labels.len() != base.edges().len() {
            return Err(AnnulusError::LabelCount {
                edges: base.edges().len(),
                labels: labels.len(),
            });
        }
        Ok(AnnulusDiagram { base, labels })
    }

    pub fn base(&self) -> &CharDiagram {
        &self.base
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn has_kind(&self, k: LabelKind) -> bool {
        self.labels.iter().any(|l| l.kind() == k)
    }

    pub fn count_kind(&self, k: LabelKind) -> usize {
        self.labels.iter().filter(|l| l.kind() == k).count()
    }

    /// Label kinds, sorted.
    pub fn kinds(&self) -> Vec<LabelKind> {
        let mut ks: Vec<LabelKind> = self.labels.iter().map(EdgeLabel::kind).collect();
        ks.sort();
        ks
    }

    pub fn diagram_type(&self) -> Result<DiagramType, InvalidDiagram> {
        classify_type(&self.base)
    }

    /// Canonical form with full labels (parameters included).
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form_labeled(&self.base, &|i| self.labels[i].to_string().into_bytes())
    }

    /// Canonical form with label kinds only, forgetting parameters.
    pub fn kind_form(&self) -> CanonicalForm {
        canonical_form_labeled(&self.base, &|i| vec![self.labels[i].kind() as u8])
    }

    /// `(3,0,3,solid) {h2,h2,l0}`.
    pub fn summary(&self) -> String {
        let t = crate::diagram::validate::raw_type(&self.base);
        let mut ls: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        ls.sort();
        format!("{t} {{{}}}", ls.join(","))
    }
}

impl fmt::Display for AnnulusDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// Reads the text or JSON form. In text, each edge line takes a
/// `label=<h1|h2|k1|k2(p/q)|l(p/q,r/s)|l0|em>` token.
pub fn parse_annulus(src: &str) -> Result<AnnulusDiagram, AnnulusError> {
    if is_json(src) {
        return serde_json::from_str(src).map_err(|e| {
            AnnulusError::Parse(ParseError::new(e.line(), e.column(), e.to_string()))
        });
    }
    let (base, tokens) = parse_text(src)?;
    let mut labels = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.into_iter().enumerate() {
        let Some(t) = t else {
            let (a, b) = base.edge_ids(i);
            return Err(AnnulusError::Unlabeled {
                edge: format!("{a}-{b}"),
            });
        };
        labels.push(EdgeLabel::parse(&t.text).map_err(|e| ParseError::new(t.line, t.col, e))?);
    }
    AnnulusDiagram::new(base, labels)
}

pub fn write_annulus(ad: &AnnulusDiagram) -> String {
    write_with_labels(&ad.base, |i| Some(ad.labels[i].to_string()))
}

pub fn annulus_to_json(ad: &AnnulusDiagram) -> String {
    serde_json::to_string_pretty(ad).expect("diagram serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOURONE: &str = "node v solid genus=2\nnode w solid\nedge v w label=h2\nedge v w label=h2\nedge v w label=l0\n";

    #[test]
    fn round_trips() {
        let ad = parse_annulus(FOURONE).unwrap();
        assert_eq!(ad.summary(), "(3,0,3,solid) {h2,h2,l0}");
        assert_eq!(parse_annulus(&write_annulus(&ad)).unwrap(), ad);
        assert_eq!(parse_annulus(&annulus_to_json(&ad)).unwrap(), ad);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_annulus("node v hollow genus=2\nedge v v\n"),
            Err(AnnulusError::Unlabeled { .. })
        ));
        let Err(AnnulusError::Parse(e)) =
            parse_annulus("node v hollow genus=2\nedge v v label=k2(1)\n")
        else {
            panic!()
        };
        assert_eq!((e.line, e.col), (2, 16));
    }
}
