//! Statements about the annuli in the exterior that follow from a labeled
//! diagram.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{EdgeLabel, LabelKind};
use super::model::AnnulusDiagram;
use super::symmetry::is_fourone;
use crate::diagram::validate::{
    classify_type, ibundle_base, realization, InvalidDiagram, Realization,
};
use crate::diagram::NodeKind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFact {
    pub statement: String,
    /// Short name of the result the statement rests on.
    pub rule: String,
}

impl DerivedFact {
    fn new(statement: impl Into<String>, rule: &str) -> Self {
        DerivedFact {
            statement: statement.into(),
            rule: rule.to_string(),
        }
    }
}

impl fmt::Display for DerivedFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.statement, self.rule)
    }
}

fn reciprocal_l(ad: &AnnulusDiagram) -> bool {
    ad.labels()
        .iter()
        .any(|l| matches!(l, EdgeLabel::L(sp) if sp.is_reciprocal()))
}

/// Facts in a fixed order: uniqueness, characteristic annuli, isotopy
/// counts, then structure of the solid nodes.
pub fn derived_facts(ad: &AnnulusDiagram) -> Result<Vec<DerivedFact>, InvalidDiagram> {
    let t = classify_type(ad.base())?;
    let mut out = Vec::new();
    let has = |k| ad.has_kind(k);

    if !has(LabelKind::H1) && !has(LabelKind::H2) {
        out.push(DerivedFact::new(
            "no type 2 annulus: not constrained by the classification theorems",
            "type-2 classification",
        ));
    }
    if has(LabelKind::H1) || (reciprocal_l(ad) && ad.labels().len() == 1) {
        out.push(DerivedFact::new(
            "unique annulus, up to isotopy",
            "unique annulus",
        ));
    }
    for (i, l) in ad.labels().iter().enumerate() {
        let characteristic = matches!(l.kind(), LabelKind::H1 | LabelKind::H2 | LabelKind::L0)
            || matches!(l, EdgeLabel::L(sp) if sp.is_reciprocal());
        if characteristic {
            let (a, b) = ad.base().edge_ids(i);
            out.push(DerivedFact::new(
                format!(
                    "the {l} annulus on edge {} ({a}-{b}) is characteristic",
                    i + 1
                ),
                "characteristic annuli",
            ));
        }
    }
    if has(LabelKind::L0) {
        out.push(DerivedFact::new(
            "the type 3-3 annulus with trivial slopes is unique up to isotopy",
            "trivial slope pair",
        ));
    }
    if (t.e, t.l, t.b) == (3, 0, 3) {
        out.push(DerivedFact::new(
            "unlabeled node has no exceptional fiber",
            "three bigons",
        ));
    }
    let solid = t.square == NodeKind::Solid;
    let count = match (t.e, t.l, t.b, solid) {
        (1, 0, 0, true) => "exactly 5 isotopy classes of essential annuli".to_string(),
        (2, 0, 0, true) => "infinitely many isotopy classes of essential annuli".to_string(),
        // Distinct edges are non-isotopic essential annuli.
        _ if t.e >= 3 => "exactly 3 isotopy classes of essential annuli".to_string(),
        _ => format!("between {} and 3 isotopy classes of essential annuli", t.e),
    };
    out.push(DerivedFact::new(count, "isotopy classes"));
    if has(LabelKind::EM) {
        out.push(DerivedFact::new(
            "no non-separating annulus is disjoint from the em annulus",
            "em excludes non-separating",
        ));
    }
    if let Some(base) = ibundle_base(ad.base()) {
        out.push(DerivedFact::new(
            format!("labeled node is an {base}"),
            "I-bundle",
        ));
    }
    if realization(&t) == Realization::Unknown {
        out.push(DerivedFact::new(
            format!(
                "no handlebody-knot with a diagram of type {} is known",
                t.symbolic()
            ),
            "realization",
        ));
    }
    if ad.kinds() == [LabelKind::H2, LabelKind::H2, LabelKind::L0] {
        let verdict = if is_fourone(ad)? {
            "equivalent to 4_1"
        } else {
            "not equivalent to 4_1"
        };
        out.push(DerivedFact::new(verdict, "4_1 characterization"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::model::parse_annulus;

    fn statements(src: &str) -> Vec<String> {
        derived_facts(&parse_annulus(src).unwrap())
            .unwrap()
            .into_iter()
            .map(|f| f.statement)
            .collect()
    }

    #[test]
    fn uniqueness() {
        let h1 = statements("node v hollow genus=2\nedge v v label=h1\n");
        assert!(h1.contains(&"unique annulus, up to isotopy".to_string()));
        let l = statements("node v solid genus=2\nnode w solid\nedge v w label=l(2/3,3/2)\n");
        assert!(l.contains(&"unique annulus, up to isotopy".to_string()));
        assert!(l.iter().any(|s| s.contains("not constrained")));
        assert!(l.contains(&"exactly 5 isotopy classes of essential annuli".to_string()));
    }

    #[test]
    fn fourone() {
        let s = statements("node v solid genus=2\nnode w solid\nedge v w label=h2\nedge v w label=h2\nedge v w label=l0\n");
        for want in [
            "exactly 3 isotopy classes of essential annuli",
            "unlabeled node has no exceptional fiber",
            "equivalent to 4_1",
        ] {
            assert!(s.contains(&want.to_string()), "{want}");
        }
        let s = statements("node v hollow genus=2\nnode w solid\nedge v w label=h2\nedge v w label=h2\nedge v w label=l0\n");
        assert!(s.contains(&"not equivalent to 4_1".to_string()));
    }
}
