//! Exhaustive labelings of the valid diagrams, and the diagrams of a few
//! handlebody-knots with known symmetry groups.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::label::{EdgeLabel, LabelKind};
use super::model::{parse_annulus, AnnulusDiagram};
use super::rules::validate_labels;
use super::symmetry::Group;
use crate::diagram::{enumerate_with, CanonicalForm, ConstraintSet};
use crate::exec::{filter_map, Strategy};
use crate::homology::slope::Rational;

/// One representative per label kind. k2 and l parameters do not affect
/// the rules beyond the reciprocal/product split of l.
pub fn label_alphabet() -> Vec<EdgeLabel> {
    let r = |p, q| Rational::new(p, q);
    vec![
        EdgeLabel::H1,
        EdgeLabel::H2,
        EdgeLabel::K1,
        EdgeLabel::k2(r(3, 2)).expect("valid parameter"),
        EdgeLabel::l(r(2, 3), r(3, 2)).expect("reciprocal pair"),
        EdgeLabel::l(r(2, 3), r(6, 1)).expect("product pair"),
        EdgeLabel::L0,
        EdgeLabel::EM,
    ]
}

/// Every consistent labeling of every valid diagram, one per class up to
/// isomorphism and label parameters.
pub fn label_catalog(strategy: Strategy) -> Vec<AnnulusDiagram> {
    let bases = enumerate_with(ConstraintSet::all(), strategy);
    let alphabet = label_alphabet();
    let found: Vec<Vec<AnnulusDiagram>> = filter_map(&bases, strategy, |base| {
        let hits: Vec<AnnulusDiagram> = (0..base.edges().len())
            .map(|_| alphabet.iter().copied())
            .multi_cartesian_product()
            .filter_map(|labels| AnnulusDiagram::new(base.clone(), labels).ok())
            .filter(|ad| validate_labels(ad).is_ok_and(|v| v.is_empty()))
            .collect();
        Some(hits)
    });
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    for ad in found.into_iter().flatten() {
        if seen.insert(ad.kind_form()) {
            out.push(ad);
        }
    }
    out
}

/// Entries containing an h label of the given kind.
pub fn with_kind(catalog: &[AnnulusDiagram], k: LabelKind) -> Vec<&AnnulusDiagram> {
    catalog.iter().filter(|ad| ad.has_kind(k)).collect()
}

fn fixed(src: &str) -> AnnulusDiagram {
    parse_annulus(src).expect("built-in diagram parses")
}

/// The single-loop diagram labeled h1.
pub fn h1_diagram() -> AnnulusDiagram {
    fixed("node v hollow genus=2\nedge v v label=h1\n")
}

/// The five h2 diagrams: single loop, loop with k1, loop with k2, and the
/// triple edge with hollow then solid labeled node.
pub fn h2_diagrams() -> Vec<AnnulusDiagram> {
    vec![
        fixed("node v hollow genus=2\nedge v v label=h2\n"),
        fixed("node v hollow genus=2\nnode w1 solid\nedge v v label=h2\nedge v w1 label=k1\n"),
        fixed("node v hollow genus=2\nnode w1 solid\nedge v v label=h2\nedge v w1 label=k2(3/2)\n"),
        theta_diagram(false),
        theta_diagram(true),
    ]
}

/// Triple edge labeled {h2, h2, l0}.
pub fn theta_diagram(solid: bool) -> AnnulusDiagram {
    let kind = if solid { "solid" } else { "hollow" };
    fixed(&format!(
        "node v {kind} genus=2\nnode w1 solid\nedge v w1 label=h2\nedge v w1 label=h2\nedge v w1 label=l0\n"
    ))
}

/// A handlebody-knot whose symmetry groups are known.
#[derive(Clone, Debug, Serialize)]
pub struct KnownKnot {
    pub name: &'static str,
    /// `None` when the exterior has no type 2 annulus.
    pub diagram: Option<AnnulusDiagram>,
    pub sym_plus: Group,
    pub sym: Group,
}

/// Handlebody-knots from the standard table with known groups.
pub fn known_knots() -> Vec<KnownKnot> {
    let h2 = h2_diagrams();
    let k = |name, diagram, sym_plus, sym| KnownKnot {
        name,
        diagram,
        sym_plus,
        sym,
    };
    vec![
        k("4_1", Some(theta_diagram(true)), Group::Z2, Group::Z2xZ2),
        k("5_1", Some(h2[0].clone()), Group::Trivial, Group::Trivial),
        k("5_2", None, Group::Z2xZ2, Group::Z2xZ2),
        k("6_1", None, Group::Trivial, Group::Trivial),
        k("6_4", Some(h1_diagram()), Group::Z2, Group::Z2),
        k("6_11", None, Group::Trivial, Group::Trivial),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_diagrams_are_consistent() {
        for ad in h2_diagrams().iter().chain([&h1_diagram()]) {
            assert_eq!(validate_labels(ad).unwrap(), vec![], "{ad}");
        }
    }

    #[test]
    fn catalog_counts() {
        let cat = label_catalog(Strategy::Sequential);
        let h1 = with_kind(&cat, LabelKind::H1);
        let h2 = with_kind(&cat, LabelKind::H2);
        assert_eq!((h1.len(), h2.len()), (1, 5));
        assert_eq!(h1[0].kind_form(), h1_diagram().kind_form());
        let mut want: Vec<_> = h2_diagrams()
            .iter()
            .map(AnnulusDiagram::kind_form)
            .collect();
        let mut got: Vec<_> = h2.iter().map(|ad| ad.kind_form()).collect();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }
}
