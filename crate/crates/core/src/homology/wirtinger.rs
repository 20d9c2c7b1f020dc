//! Abelianized Wirtinger presentations of spatial graph and link
//! complements, and the Alexander polynomial of a knot diagram.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::{AbelianGroup, LoopClass, Presentation};
use super::laurent::{poly_determinant, LaurentPoly};
use super::matrix::IntMatrix;
use super::HomologyError;
use crate::spatial::code::{validate_code, Level, SpatialGraphCode};

/// An arc of the diagram: the stretch of `edge` after its `segment`-th
/// under-passage (segment 0 starts at the tail or, for a closed
/// component, after the last under-passage).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub edge: String,
    pub segment: usize,
}

/// A meridian of one arc, oriented by the right-hand rule.
pub type Meridian = Arc;

/// A loop in the complement written as a word in arc meridians.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedLoop {
    pub name: String,
    pub word: Vec<(Meridian, i64)>,
}

impl MarkedLoop {
    pub fn meridian(name: impl Into<String>, edge: impl Into<String>) -> Self {
        MarkedLoop {
            name: name.into(),
            word: vec![(
                Arc {
                    edge: edge.into(),
                    segment: 0,
                },
                1,
            )],
        }
    }
}

#[derive(Clone, Debug)]
pub struct H1Complement {
    presentation: Presentation,
    arcs: BTreeMap<Arc, usize>,
    segments: BTreeMap<String, usize>,
    closed: BTreeMap<String, bool>,
}

impl H1Complement {
    pub fn group(&self) -> &AbelianGroup {
        self.presentation.group()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.keys()
    }

    fn generator(&self, arc: &Arc) -> Result<usize, HomologyError> {
        let unknown = || HomologyError::UnknownArc {
            edge: arc.edge.clone(),
            segment: arc.segment,
        };
        let count = *self.segments.get(&arc.edge).ok_or_else(unknown)?;
        let seg = if self.closed[&arc.edge] {
            if arc.segment > count {
                return Err(unknown());
            }
            arc.segment % count
        } else {
            arc.segment
        };
        self.arcs
            .get(&Arc {
                edge: arc.edge.clone(),
                segment: seg,
            })
            .copied()
            .ok_or_else(unknown)
    }

    /// Class of a marked loop in the reduced basis of the (free) group.
    pub fn class_of(&self, l: &MarkedLoop) -> Result<LoopClass, HomologyError> {
        let mut v = vec![BigInt::zero(); self.arcs.len()];
        for (arc, exp) in &l.word {
            v[self.generator(arc)?] += *exp;
        }
        self.presentation.free_coordinates(&v)
    }
}

/// Number of arcs on each edge and whether it is closed.
fn arc_layout(g: &SpatialGraphCode) -> Vec<(String, usize, bool)> {
    g.edges
        .iter()
        .map(|e| {
            let k = e.under_count();
            let closed = e.is_closed();
            let count = if closed { k.max(1) } else { k + 1 };
            (e.id.clone(), count, closed)
        })
        .collect()
}

pub fn h1_complement(g: &SpatialGraphCode) -> Result<H1Complement, HomologyError> {
    let violations = validate_code(g);
    if let Some(v) = violations.first() {
        return Err(HomologyError::InvalidCode(v.to_string()));
    }
    let mut arcs = BTreeMap::new();
    let mut segments = BTreeMap::new();
    let mut closed = BTreeMap::new();
    for (edge, count, is_closed) in arc_layout(g) {
        for s in 0..count {
            let n = arcs.len();
            arcs.insert(
                Arc {
                    edge: edge.clone(),
                    segment: s,
                },
                n,
            );
        }
        segments.insert(edge.clone(), count);
        closed.insert(edge, is_closed);
    }
    let gen = |edge: &str, seg: usize| -> usize {
        let count = segments[edge];
        let seg = if closed[edge] { seg % count } else { seg };
        arcs[&Arc {
            edge: edge.to_string(),
            segment: seg,
        }]
    };

    let n = arcs.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for e in &g.edges {
        let mut seg = 0;
        for p in &e.passes {
            if p.level == Level::Under {
                let mut row = vec![BigInt::zero(); n];
                row[gen(&e.id, seg)] += 1;
                row[gen(&e.id, seg + 1)] -= 1;
                rows.push(row);
                seg += 1;
            }
        }
    }
    for v in &g.vertices {
        let mut row = vec![BigInt::zero(); n];
        for end in &v.ends {
            if end.end == 1 {
                let last = segments[&end.edge] - 1;
                row[gen(&end.edge, last)] += 1;
            } else {
                row[gen(&end.edge, 0)] -= 1;
            }
        }
        rows.push(row);
    }
    let m = IntMatrix::from_big_rows(rows, n);
    Ok(H1Complement {
        presentation: Presentation::new(m),
        arcs,
        segments,
        closed,
    })
}

pub fn loop_classes(
    g: &SpatialGraphCode,
    loops: &[MarkedLoop],
) -> Result<Vec<LoopClass>, HomologyError> {
    let h = h1_complement(g)?;
    loops.iter().map(|l| h.class_of(l)).collect()
}

/// Alexander polynomial of a one-component, vertex-free code, normalized
/// to lowest exponent 0 and positive leading coefficient.
pub fn alexander_polynomial(k: &SpatialGraphCode) -> Result<LaurentPoly, HomologyError> {
    let violations = validate_code(k);
    if let Some(v) = violations.first() {
        return Err(HomologyError::InvalidCode(v.to_string()));
    }
    let comps = k.components();
    if !k.vertices.is_empty() || comps.len() != 1 || k.edges.len() != 1 {
        return Err(HomologyError::NotAKnot(k.edges.len()));
    }
    let edge = &k.edges[0];
    let n = edge.under_count();
    if n <= 1 {
        return Ok(LaurentPoly::one());
    }

    // Arc index of every passage position; arc j runs from under-pass j-1
    // to under-pass j (cyclically), so position p lies on arc
    // (#unders strictly before p) mod n.
    let mut under_idx = 0usize;
    let mut over_arc: BTreeMap<&str, usize> = BTreeMap::new();
    let mut under_at: BTreeMap<&str, (usize, usize, i8)> = BTreeMap::new();
    for p in &edge.passes {
        match p.level {
            Level::Over => {
                over_arc.insert(&p.crossing, under_idx % n);
            }
            Level::Under => {
                under_at.insert(&p.crossing, (under_idx % n, (under_idx + 1) % n, p.sign));
                under_idx += 1;
            }
        }
    }

    let t = LaurentPoly::monomial(1, 1);
    let one = LaurentPoly::one();
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    for (row, (c, (inc, out, sign))) in under_at.iter().enumerate() {
        let over = over_arc[c];
        let (a, b, d) = if *sign > 0 {
            (&one - &t, t.clone(), -&one)
        } else {
            (&t - &one, one.clone(), -&t)
        };
        m[row][over] = &m[row][over] + &a;
        m[row][*inc] = &m[row][*inc] + &b;
        m[row][*out] = &m[row][*out] + &d;
    }
    let minor: Vec<Vec<LaurentPoly>> = m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    let det = poly_determinant(&minor);
    Ok(det.normalized())
}

/// Whether the polynomial certifies that the knot is nontrivial.
pub fn certifies_nontrivial(p: &LaurentPoly) -> bool {
    !p.eq_up_to_units(&LaurentPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::code::{Edge, Pass};

    fn knot(seq: &[(&str, Level, i8)]) -> SpatialGraphCode {
        SpatialGraphCode {
            origin: None,
            kind: crate::spatial::code::GraphKind::Link,
            vertices: vec![],
            edges: vec![Edge::closed(
                "k",
                seq.iter().map(|(c, l, s)| Pass::new(*c, *l, *s)).collect(),
            )],
        }
    }

    use Level::{Over as O, Under as U};

    #[test]
    fn trefoil() {
        let k = knot(&[
            ("1", O, 1),
            ("2", U, 1),
            ("3", O, 1),
            ("1", U, 1),
            ("2", O, 1),
            ("3", U, 1),
        ]);
        let a = alexander_polynomial(&k).unwrap();
        assert_eq!(a, LaurentPoly::from_coeffs(&[1, -1, 1]));
        let h = h1_complement(&k).unwrap();
        assert_eq!(h.group(), &AbelianGroup::free(1));
    }

    #[test]
    fn figure_eight() {
        let k = knot(&[
            ("1", O, 1),
            ("4", U, -1),
            ("3", O, -1),
            ("1", U, 1),
            ("2", O, 1),
            ("3", U, -1),
            ("4", O, -1),
            ("2", U, 1),
        ]);
        assert_eq!(
            alexander_polynomial(&k).unwrap(),
            LaurentPoly::from_coeffs(&[1, -3, 1])
        );
    }

    #[test]
    fn unknot() {
        assert_eq!(
            alexander_polynomial(&knot(&[])).unwrap(),
            LaurentPoly::one()
        );
        let kink = knot(&[("1", O, 1), ("1", U, 1)]);
        assert_eq!(alexander_polynomial(&kink).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn meridian_is_generator() {
        let k = knot(&[
            ("1", O, 1),
            ("2", U, 1),
            ("3", O, 1),
            ("1", U, 1),
            ("2", O, 1),
            ("3", U, 1),
        ]);
        let c = loop_classes(&k, &[MarkedLoop::meridian("m", "k")]).unwrap();
        assert_eq!(c[0].coordinates.len(), 1);
        assert_eq!(
            c[0].coordinates[0].clone() * &c[0].coordinates[0],
            BigInt::from(1)
        );
        let bad = MarkedLoop::meridian("m", "zz");
        assert!(matches!(
            loop_classes(&k, &[bad]),
            Err(HomologyError::UnknownArc { .. })
        ));
    }
}
