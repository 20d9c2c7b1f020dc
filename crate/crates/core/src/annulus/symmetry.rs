//! Symmetry-group bounds read off an annulus diagram.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::label::LabelKind;
use super::model::AnnulusDiagram;
use super::rules::{validate_labels, LabelViolation};
use crate::diagram::validate::{classify_type, InvalidDiagram};
use crate::diagram::NodeKind;

/// The groups the bounds can mention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Group {
    Trivial,
    Z2,
    Z2xZ2,
}

impl Group {
    pub fn order(self) -> usize {
        match self {
            Group::Trivial => 1,
            Group::Z2 => 2,
            Group::Z2xZ2 => 4,
        }
    }

    /// Whether `self` embeds in `other`.
    pub fn embeds_in(self, other: Group) -> bool {
        self.order() <= other.order()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Trivial => "1",
            Group::Z2 => "Z2",
            Group::Z2xZ2 => "Z2xZ2",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "relation", content = "group", rename_all = "snake_case")]
pub enum Bound {
    AtMost(Group),
    Exactly(Group),
}

impl Bound {
    pub fn group(self) -> Group {
        match self {
            Bound::AtMost(g) | Bound::Exactly(g) => g,
        }
    }

    /// Whether a group `g` is consistent with the bound.
    pub fn admits(self, g: Group) -> bool {
        match self {
            Bound::AtMost(b) => g.embeds_in(b),
            Bound::Exactly(b) => g == b,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Bound::Exactly(_)) || self.group() == Group::Trivial
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(Group::Trivial) | Bound::Exactly(_) => write!(f, "{}", self.group()),
            Bound::AtMost(g) => write!(f, "<= {g}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryBound {
    /// Orientation-preserving symmetries.
    pub sym_plus: Bound,
    pub sym: Bound,
    pub exact: bool,
}

impl SymmetryBound {
    fn new(sym_plus: Bound, sym: Bound) -> Self {
        SymmetryBound {
            sym_plus,
            sym,
            exact: sym_plus.is_exact() && sym.is_exact(),
        }
    }

    /// Whether a pair of known groups is consistent with the bound.
    pub fn admits(&self, sym_plus: Group, sym: Group) -> bool {
        self.sym_plus.admits(sym_plus) && self.sym.admits(sym)
    }
}

impl fmt::Display for SymmetryBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym+ {}, Sym {}", self.sym_plus, self.sym)?;
        if self.exact {
            f.write_str(" (exact)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error(transparent)]
    Invalid(#[from] InvalidDiagram),
    #[error("labels violate {}", .0.iter().map(|v| v.rule.code()).collect::<Vec<_>>().join(", "))]
    Labels(Vec<LabelViolation>),
    #[error("bounds not derived: the diagram has no h1 or h2 edge")]
    NotDerived,
}

/// Bounds on Sym and Sym+ implied by the type-2 annuli in the diagram.
pub fn symmetry_bounds(ad: &AnnulusDiagram) -> Result<SymmetryBound, SymmetryError> {
    use Bound::*;
    use Group::*;
    let violations = validate_labels(ad)?;
    if !violations.is_empty() {
        return Err(SymmetryError::Labels(violations));
    }
    let h2 = ad.count_kind(LabelKind::H2);
    let k = ad.count_kind(LabelKind::K1) + ad.count_kind(LabelKind::K2);
    Ok(if ad.has_kind(LabelKind::H1) {
        SymmetryBound::new(AtMost(Z2), AtMost(Z2xZ2))
    } else if h2 >= 2 {
        if is_fourone(ad)? {
            SymmetryBound::new(Exactly(Z2), Exactly(Z2xZ2))
        } else {
            SymmetryBound::new(AtMost(Z2), AtMost(Z2xZ2))
        }
    } else if h2 == 1 && k > 0 {
        SymmetryBound::new(Exactly(Trivial), Exactly(Trivial))
    } else if h2 == 1 {
        SymmetryBound::new(Exactly(Trivial), AtMost(Z2))
    } else {
        return Err(SymmetryError::NotDerived);
    })
}

/// True when the diagram pins the pair down as the 4_1 handlebody-knot.
/// Labels are assumed valid.
pub fn is_fourone(ad: &AnnulusDiagram) -> Result<bool, InvalidDiagram> {
    let t = classify_type(ad.base())?;
    Ok((t.e, t.l, t.b, t.square) == (3, 0, 3, NodeKind::Solid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::model::parse_annulus;

    fn bounds(src: &str) -> Result<SymmetryBound, SymmetryError> {
        symmetry_bounds(&parse_annulus(src).unwrap())
    }

    #[test]
    fn lookup() {
        let b = bounds("node v solid genus=2\nnode w solid\nedge v w label=h2\nedge v w label=h2\nedge v w label=l0\n").unwrap();
        assert_eq!(
            (b.sym_plus, b.sym, b.exact),
            (
                Bound::Exactly(Group::Z2),
                Bound::Exactly(Group::Z2xZ2),
                true
            )
        );
        let b =
            bounds("node v hollow genus=2\nnode w solid\nedge v v label=h2\nedge v w label=k1\n")
                .unwrap();
        assert!(
            b.exact && b.admits(Group::Trivial, Group::Trivial) && !b.admits(Group::Z2, Group::Z2)
        );
        let b = bounds("node v hollow genus=2\nedge v v label=h1\n").unwrap();
        assert_eq!(b.to_string(), "Sym+ <= Z2, Sym <= Z2xZ2");
        let b = bounds("node v hollow genus=2\nedge v v label=h2\n").unwrap();
        assert_eq!(b.to_string(), "Sym+ 1, Sym <= Z2");
    }

    #[test]
    fn no_type_two_edge() {
        assert_eq!(
            bounds("node v hollow genus=2\nnode w solid\nedge v w label=k1\n"),
            Err(SymmetryError::NotDerived)
        );
        assert!(matches!(
            bounds("node v hollow genus=2\nedge v v label=h1\nnode w solid\nedge v w label=k1\n"),
            Err(SymmetryError::Labels(_))
        ));
    }
}
