//! Consistency rules between annulus labels and the diagram they sit on.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{EdgeLabel, LabelKind};
use super::model::AnnulusDiagram;
use crate::diagram::validate::{classify_type, DiagramType, InvalidDiagram};
use crate::diagram::NodeKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// Non-cut edges carry h1, h2, l or l0; cut edges carry k1, k2 or em.
    R1,
    /// h1 only on the single-loop diagram.
    R2,
    /// A reciprocal slope pair only on a single-edge diagram.
    R3,
    /// The triple edge is labeled exactly {h2, h2, l0}.
    R4,
    /// em excludes h and l labels.
    R5,
    /// An h2 loop sits with at most one cut edge, labeled k1 or k2.
    R6,
    /// Two h2 edges exclude k labels.
    R7,
    /// Next to h2, a second h2 appears exactly when an l0 does.
    R8,
    /// h2 never shares a diagram with a nontrivial l label.
    R9,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
            Rule::R7 => "R7",
            Rule::R8 => "R8",
            Rule::R9 => "R9",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelViolation {
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for LabelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

/// Checks the labels against the rules. The base diagram must itself be
/// valid.
pub fn validate_labels(ad: &AnnulusDiagram) -> Result<Vec<LabelViolation>, InvalidDiagram> {
    let t = classify_type(ad.base())?;
    Ok(check(ad, &t))
}

fn check(ad: &AnnulusDiagram, t: &DiagramType) -> Vec<LabelViolation> {
    let d = ad.base();
    let mut out = Vec::new();
    let mut fail = |rule, detail: String| out.push(LabelViolation { rule, detail });
    let edge = |i: usize| {
        let (a, b) = d.edge_ids(i);
        format!("{a}-{b}")
    };
    let n = |k| ad.count_kind(k);
    let cut: Vec<bool> = (0..d.edges().len()).map(|i| d.is_cut_edge(i)).collect();

    for (i, l) in ad.labels().iter().enumerate() {
        let k = l.kind();
        let ok = if cut[i] {
            matches!(k, LabelKind::K1 | LabelKind::K2 | LabelKind::EM)
        } else {
            matches!(
                k,
                LabelKind::H1 | LabelKind::H2 | LabelKind::L | LabelKind::L0
            )
        };
        if !ok {
            let what = if cut[i] { "cut" } else { "non-cut" };
            fail(Rule::R1, format!("{} on {what} edge {}", l, edge(i)));
        }
    }

    let single_loop = DiagramType::new(1, 1, 0, NodeKind::Hollow);
    if n(LabelKind::H1) > 0 && *t != single_loop {
        fail(
            Rule::R2,
            format!("h1 on a diagram of type {t}, expected {single_loop}"),
        );
    }
    for l in ad.labels() {
        if let EdgeLabel::L(sp) = l {
            if sp.is_reciprocal() && d.edges().len() != 1 {
                fail(
                    Rule::R3,
                    format!(
                        "reciprocal slope pair {l} on a {}-edge diagram",
                        d.edges().len()
                    ),
                );
            }
        }
    }
    if (t.e, t.l, t.b) == (3, 0, 3) && ad.kinds() != [LabelKind::H2, LabelKind::H2, LabelKind::L0] {
        fail(
            Rule::R4,
            format!(
                "triple edge labeled {}, expected {{h2,h2,l0}}",
                labels_of(ad)
            ),
        );
    }
    if n(LabelKind::EM) > 0 {
        let bad = n(LabelKind::H1) + n(LabelKind::H2) + n(LabelKind::L) + n(LabelKind::L0);
        if bad > 0 {
            fail(Rule::R5, "em together with an h or l label".into());
        }
    }
    let h2_loop = ad
        .labels()
        .iter()
        .enumerate()
        .any(|(i, l)| l.kind() == LabelKind::H2 && d.edges()[i].0 == d.edges()[i].1);
    if h2_loop {
        let cuts: Vec<usize> = (0..cut.len()).filter(|&i| cut[i]).collect();
        if cuts.len() > 1 {
            fail(Rule::R6, format!("h2 loop with {} cut edges", cuts.len()));
        }
        for &i in &cuts {
            if !ad.labels()[i].kind().is_k() {
                fail(
                    Rule::R6,
                    format!(
                        "h2 loop with cut edge {} labeled {}",
                        edge(i),
                        ad.labels()[i]
                    ),
                );
            }
        }
    }
    let k_count = n(LabelKind::K1) + n(LabelKind::K2);
    if n(LabelKind::H2) >= 2 && k_count > 0 {
        fail(Rule::R7, "two h2 edges together with a k label".into());
    }
    if n(LabelKind::H2) > 0 && (n(LabelKind::H2) == 2) != (n(LabelKind::L0) > 0) {
        fail(
            Rule::R8,
            format!(
                "{} h2 edges with {} l0 edges",
                n(LabelKind::H2),
                n(LabelKind::L0)
            ),
        );
    }
    if n(LabelKind::H2) > 0 && n(LabelKind::L) > 0 {
        fail(Rule::R9, "h2 together with a nontrivial l label".into());
    }
    out
}

fn labels_of(ad: &AnnulusDiagram) -> String {
    let ks: Vec<&str> = ad.kinds().iter().map(|k| k.as_str()).collect();
    format!("{{{}}}", ks.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::model::parse_annulus;

    fn rules(src: &str) -> Vec<Rule> {
        validate_labels(&parse_annulus(src).unwrap())
            .unwrap()
            .into_iter()
            .map(|v| v.rule)
            .collect()
    }

    const HEAD: &str = "node v hollow genus=2\nnode w solid\n";

    #[test]
    fn examples() {
        assert!(rules("node v hollow genus=2\nedge v v label=h1\n").is_empty());
        assert_eq!(
            rules(&format!("{HEAD}edge v v label=h1\nedge v w label=k1\n")),
            [Rule::R2]
        );
        assert!(rules("node v solid genus=2\nnode w solid\nedge v w label=h2\nedge v w label=h2\nedge v w label=l0\n").is_empty());
    }

    #[test]
    fn each_rule_fires() {
        assert!(rules(&format!("{HEAD}edge v w label=h2\n")).contains(&Rule::R1));
        assert!(rules(&format!(
            "{HEAD}edge v w label=l(2/3,3/2)\nedge v w label=l0\n"
        ))
        .contains(&Rule::R3));
        assert!(rules(&format!(
            "{HEAD}edge v w label=h2\nedge v w label=l0\nedge v w label=l0\n"
        ))
        .contains(&Rule::R4));
        assert!(
            rules(&format!("{HEAD}edge v v label=l0\nedge v w label=em\n")).contains(&Rule::R5)
        );
        assert!(
            rules(&format!("{HEAD}edge v v label=h2\nedge v w label=em\n")).contains(&Rule::R6)
        );
        assert!(rules(&format!(
            "{HEAD}node x solid\nedge v w label=h2\nedge v w label=h2\nedge v x label=k1\n"
        ))
        .contains(&Rule::R7));
        assert!(
            rules(&format!("{HEAD}edge v w label=h2\nedge v w label=h2\n")).contains(&Rule::R8)
        );
        assert!(rules(&format!(
            "{HEAD}edge v w label=h2\nedge v w label=l(2/3,6)\n"
        ))
        .contains(&Rule::R9));
    }

    #[test]
    fn invalid_base_is_rejected() {
        let ad = parse_annulus("node v solid genus=2\nedge v v label=h2\n").unwrap();
        assert!(validate_labels(&ad).is_err());
    }
}
