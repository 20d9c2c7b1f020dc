use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithForm};
use super::HomologyError;

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Checks the divisibility chain and that every factor exceeds one.
    pub fn is_canonical(&self) -> bool {
        self.invariant_factors.iter().all(|d| *d > BigInt::one())
            && self
                .invariant_factors
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finitely presented abelian group `Z^generators / rowspace(relations)`
/// together with its Smith form, so elements given in the original
/// generators can be rewritten in the reduced basis.
#[derive(Clone, Debug)]
pub struct Presentation {
    relations: IntMatrix,
    smith: SmithForm,
    group: AbelianGroup,
    /// Columns of the reduced basis that carry a coordinate: torsion first
    /// (with modulus), then free.
    kept: Vec<(usize, Option<BigInt>)>,
}

impl Presentation {
    pub fn new(relations: IntMatrix) -> Self {
        let smith = smith_normal_form(&relations);
        let diag = smith.diagonal();
        let gens = relations.cols();
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for j in 0..gens {
            let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                continue;
            }
            if d > BigInt::one() {
                factors.push(d.clone());
                kept.push((j, Some(d)));
            }
        }
        let free: Vec<usize> = (0..gens)
            .filter(|&j| diag.get(j).is_none_or(Zero::is_zero))
            .collect();
        let free_rank = free.len();
        kept.extend(free.into_iter().map(|j| (j, None)));
        Presentation {
            relations,
            smith,
            group: AbelianGroup {
                invariant_factors: factors,
                free_rank,
            },
            kept,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.relations.cols()
    }

    /// Coordinates of an element (given as a combination of the original
    /// generators) in the reduced basis: torsion coordinates reduced mod
    /// their order, followed by free coordinates.
    pub fn coordinates(&self, element: &[BigInt]) -> Result<Vec<BigInt>, HomologyError> {
        if element.len() != self.generator_count() {
            return Err(HomologyError::RankMismatch {
                expected: self.generator_count(),
                found: element.len(),
            });
        }
        let image = self.smith.v_inverse_apply(element);
        Ok(self
            .kept
            .iter()
            .map(|(j, modulus)| match modulus {
                Some(m) => image[*j].mod_floor(m),
                None => image[*j].clone(),
            })
            .collect())
    }

    /// Free coordinates only; errors if the group has torsion.
    pub fn free_coordinates(&self, element: &[BigInt]) -> Result<LoopClass, HomologyError> {
        if !self.group.is_free() {
            return Err(HomologyError::NotFree(self.group.clone()));
        }
        Ok(LoopClass::new(self.coordinates(element)?))
    }
}

impl SmithForm {
    /// Rewrites a generator combination `c` in the reduced basis. With
    /// `U R V = D`, the substitution `y = V^{-1} x` sends relations to the
    /// diagonal ones, so an element `c·x` becomes `(c V)·y`.
    pub(crate) fn v_inverse_apply(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.v.left_apply(c)
    }
}

/// Homology class in a declared basis of a free ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopClass {
    pub coordinates: Vec<BigInt>,
}

impl LoopClass {
    pub fn new(coordinates: Vec<BigInt>) -> Self {
        LoopClass { coordinates }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LoopClass::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> LoopClass {
        LoopClass::new(self.coordinates.iter().map(|c| -c).collect())
    }

    pub fn scaled_sum(&self, a: i64, other: &LoopClass, b: i64) -> LoopClass {
        LoopClass::new(
            self.coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        )
    }
}

impl fmt::Display for LoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupIndex {
    Finite(BigInt),
    Infinite,
}

impl SubgroupIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, SubgroupIndex::Finite(n) if n.is_one())
    }
}

impl fmt::Display for SubgroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupIndex::Finite(n) => write!(f, "{n}"),
            SubgroupIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Index of the subgroup spanned by `classes` in the free ambient group.
///
/// For a square nonsingular coordinate matrix this is `|det|`; in general
/// it is the product of the invariant factors when the span has full rank,
/// and infinite otherwise.
pub fn subgroup_index(classes: &[LoopClass]) -> Result<SubgroupIndex, HomologyError> {
    let Some(first) = classes.first() else {
        return Err(HomologyError::Empty);
    };
    let rank = first.rank();
    if let Some(bad) = classes.iter().find(|c| c.rank() != rank) {
        return Err(HomologyError::RankMismatch {
            expected: rank,
            found: bad.rank(),
        });
    }
    if rank == 0 {
        return Ok(SubgroupIndex::Finite(BigInt::one()));
    }
    let m = IntMatrix::from_big_rows(
        classes.iter().map(|c| c.coordinates.clone()).collect(),
        rank,
    );
    if m.is_square() {
        let det = m.determinant().expect("square");
        return Ok(if det.is_zero() {
            SubgroupIndex::Infinite
        } else {
            SubgroupIndex::Finite(det.abs())
        });
    }
    let s = smith_normal_form(&m);
    if s.rank() < rank {
        return Ok(SubgroupIndex::Infinite);
    }
    Ok(SubgroupIndex::Finite(
        s.diagonal().into_iter().filter(|d| !d.is_zero()).product(),
    ))
}

/// Homology-level necessary condition for `classes` to be primitive in a
/// handlebody: they must span the whole first homology. Passing this test
/// does not certify primitivity.
pub fn primitivity_necessary(classes: &[LoopClass]) -> Result<bool, HomologyError> {
    let rank = classes.first().map_or(0, LoopClass::rank);
    if classes.len() != rank {
        return Err(HomologyError::RankMismatch {
            expected: rank,
            found: classes.len(),
        });
    }
    Ok(subgroup_index(classes)?.is_one())
}

/// Predicted classes of `l+` and `l-` in a meridional basis for a type 3-3
/// annulus with slope pair `(p/q, pq)`, choosing `[l+] = (p1, p - p1)`.
///
/// `l-` is the separating one of the two loops. The upper sign branch is
/// used; `mirror` returns the negated pair.
pub fn meridional_pair_predict(
    p: i64,
    q: i64,
    p1: i64,
    mirror: bool,
) -> Result<(LoopClass, LoopClass), HomologyError> {
    if q == 0 {
        return Err(HomologyError::InvalidSlope("q must be nonzero".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(HomologyError::InvalidSlope(format!(
            "p={p} and q={q} are not coprime"
        )));
    }
    let p2 = p - p1;
    let plus = LoopClass::from_ints(&[p1, p2]);
    let minus = LoopClass::from_ints(&[p1 - 1, p2 + 1]);
    Ok(if mirror {
        (plus.neg(), minus.neg())
    } else {
        (plus, minus)
    })
}

/// First homology of the exterior in the Klein-bottle case:
/// `<v+, v-, u> / (v+ + v- = k u)`.
#[derive(Clone, Debug)]
pub struct KleinCase {
    pub k: i64,
    pub group: AbelianGroup,
    pub v_plus: LoopClass,
    pub v_minus: LoopClass,
    pub u: LoopClass,
    pub v_plus_u_basis: bool,
    pub v_minus_u_basis: bool,
}

pub fn klein_case_group(k: i64) -> Result<KleinCase, HomologyError> {
    if k.abs() <= 1 {
        return Err(HomologyError::KleinMultiplier(k));
    }
    let pres = Presentation::new(IntMatrix::from_rows(&[[1, 1, -k]]));
    let gen = |i: usize| {
        let mut e = vec![BigInt::zero(); 3];
        e[i] = BigInt::one();
        pres.free_coordinates(&e)
    };
    let v_plus = gen(0)?;
    let v_minus = gen(1)?;
    let u = gen(2)?;
    let v_plus_u_basis = subgroup_index(&[v_plus.clone(), u.clone()])?.is_one();
    let v_minus_u_basis = subgroup_index(&[v_minus.clone(), u.clone()])?.is_one();
    Ok(KleinCase {
        k,
        group: pres.group().clone(),
        v_plus,
        v_minus,
        u,
        v_plus_u_basis,
        v_minus_u_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        let idx = |v: &[&[i64]]| {
            subgroup_index(
                &v.iter()
                    .map(|c| LoopClass::from_ints(c))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        assert_eq!(
            idx(&[&[1, 0], &[0, 1]]),
            SubgroupIndex::Finite(BigInt::from(1))
        );
        assert_eq!(idx(&[&[1, 0], &[2, 0]]), SubgroupIndex::Infinite);
        assert_eq!(
            idx(&[&[2, 1], &[1, 2]]),
            SubgroupIndex::Finite(BigInt::from(3))
        );
        assert_eq!(idx(&[&[1, 0]]), SubgroupIndex::Infinite);
        assert_eq!(
            idx(&[&[2, 0], &[0, 2], &[1, 1]]),
            SubgroupIndex::Finite(BigInt::from(2))
        );
    }

    #[test]
    fn index_rank_mismatch() {
        let r = subgroup_index(&[LoopClass::from_ints(&[1, 0]), LoopClass::from_ints(&[1])]);
        assert!(matches!(r, Err(HomologyError::RankMismatch { .. })));
    }

    #[test]
    fn meridional_pair() {
        let (a, b) = meridional_pair_predict(3, 2, 2, false).unwrap();
        assert_eq!(a, LoopClass::from_ints(&[2, 1]));
        assert_eq!(b, LoopClass::from_ints(&[1, 2]));
        assert_eq!(
            subgroup_index(&[a, b]).unwrap(),
            SubgroupIndex::Finite(BigInt::from(3))
        );

        let (a, b) = meridional_pair_predict(0, 1, 1, false).unwrap();
        assert_eq!(a, LoopClass::from_ints(&[1, -1]));
        assert_eq!(b, LoopClass::from_ints(&[0, 0]));
        assert_eq!(subgroup_index(&[a, b]).unwrap(), SubgroupIndex::Infinite);

        let (a, b) = meridional_pair_predict(1, 5, -4, false).unwrap();
        assert!(subgroup_index(&[a, b]).unwrap().is_one());

        assert!(meridional_pair_predict(2, 4, 1, false).is_err());
        let (a, _) = meridional_pair_predict(3, 2, 2, true).unwrap();
        assert_eq!(a, LoopClass::from_ints(&[-2, -1]));
    }

    #[test]
    fn klein_case() {
        let c = klein_case_group(2).unwrap();
        assert_eq!(c.group, AbelianGroup::free(2));
        assert!(c.v_plus_u_basis && c.v_minus_u_basis);
        assert!(matches!(
            klein_case_group(1),
            Err(HomologyError::KleinMultiplier(1))
        ));
        assert!(klein_case_group(0).is_err());
        assert!(klein_case_group(-1).is_err());

        let c = klein_case_group(3).unwrap();
        assert_eq!(c.v_minus, c.u.scaled_sum(3, &c.v_plus, -1));
        assert!(c.v_plus_u_basis && c.v_minus_u_basis);
    }

    #[test]
    fn primitivity() {
        assert!(primitivity_necessary(&[
            LoopClass::from_ints(&[1, 0]),
            LoopClass::from_ints(&[0, 1])
        ])
        .unwrap());
        assert!(!primitivity_necessary(&[
            LoopClass::from_ints(&[2, 1]),
            LoopClass::from_ints(&[1, 2])
        ])
        .unwrap());
        assert!(primitivity_necessary(&[LoopClass::from_ints(&[1])]).unwrap());
        assert!(primitivity_necessary(&[LoopClass::from_ints(&[1, 0])]).is_err());
    }

    #[test]
    fn presentation_with_torsion() {
        let p = Presentation::new(IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(p.group().to_string(), "Z/6");
        let p = Presentation::new(IntMatrix::from_rows(&[[2, 4]]));
        assert_eq!(
            p.group(),
            &AbelianGroup {
                invariant_factors: vec![BigInt::from(2)],
                free_rank: 1
            }
        );
        assert!(p.group().is_canonical());
    }
}
