use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i64>;

/// Parses `p/q` or a bare integer `p`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let p: i64 = num.parse().map_err(|_| format!("bad numerator `{num}`"))?;
    let q: i64 = den
        .parse()
        .map_err(|_| format!("bad denominator `{den}`"))?;
    if q == 0 {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlopeShape {
    /// `(p/q, q/p)` with `pq != 0`.
    Reciprocal { p: i64, q: i64 },
    /// `(p/q, pq)` with `q != 0`.
    ProductForm { p: i64, q: i64 },
    /// `(0, 0)`.
    Trivial,
}

/// Unordered boundary slope pair of a type 3-3 annulus. The two slopes are
/// stored in the order matching `shape`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopePair {
    r1: Rational,
    r2: Rational,
    shape: SlopeShape,
}

impl SlopePair {
    pub fn r1(&self) -> Rational {
        self.r1
    }

    pub fn r2(&self) -> Rational {
        self.r2
    }

    pub fn shape(&self) -> SlopeShape {
        self.shape
    }

    pub fn is_trivial(&self) -> bool {
        self.shape == SlopeShape::Trivial
    }

    pub fn is_reciprocal(&self) -> bool {
        matches!(self.shape, SlopeShape::Reciprocal { .. })
    }

    pub fn trivial() -> Self {
        SlopePair {
            r1: Rational::zero(),
            r2: Rational::zero(),
            shape: SlopeShape::Trivial,
        }
    }
}

impl fmt::Display for SlopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.r1),
            format_rational(&self.r2)
        )
    }
}

impl Serialize for SlopePair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.r1), format_rational(&self.r2)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlopePair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let r1 = parse_rational(&a).map_err(serde::de::Error::custom)?;
        let r2 = parse_rational(&b).map_err(serde::de::Error::custom)?;
        match slope_pair_classify(r1, r2) {
            SlopeClass::Valid(sp) => Ok(sp),
            SlopeClass::Invalid(reason) => Err(serde::de::Error::custom(reason)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeClass {
    Valid(SlopePair),
    Invalid(String),
}

impl SlopeClass {
    pub fn valid(self) -> Option<SlopePair> {
        match self {
            SlopeClass::Valid(sp) => Some(sp),
            SlopeClass::Invalid(_) => None,
        }
    }
}

/// Matches an unordered pair of slopes against the two admissible shapes.
///
/// When both shapes fit (this happens for `p = ±1`) the reciprocal reading
/// wins. The result does not depend on argument order.
pub fn slope_pair_classify(r1: Rational, r2: Rational) -> SlopeClass {
    if r1.is_zero() && r2.is_zero() {
        return SlopeClass::Valid(SlopePair::trivial());
    }
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    for (a, b) in [(lo, hi), (hi, lo)] {
        if !a.is_zero() && a * b == Rational::one() {
            return SlopeClass::Valid(SlopePair {
                r1: a,
                r2: b,
                shape: SlopeShape::Reciprocal {
                    p: *a.numer(),
                    q: *a.denom(),
                },
            });
        }
    }
    for (a, b) in [(lo, hi), (hi, lo)] {
        if b.is_integer() && *b.numer() == a.numer() * a.denom() {
            return SlopeClass::Valid(SlopePair {
                r1: a,
                r2: b,
                shape: SlopeShape::ProductForm {
                    p: *a.numer(),
                    q: *a.denom(),
                },
            });
        }
    }
    SlopeClass::Invalid(format!(
        "({}, {}) is neither of the form (p/q, q/p) nor (p/q, pq)",
        format_rational(&r1),
        format_rational(&r2)
    ))
}

/// Whether `r` is the reciprocal of an integer (including `±1`).
pub fn is_integer_reciprocal(r: &Rational) -> bool {
    !r.is_zero() && r.numer().abs() == 1
}

/// Reduced `p/q` with positive denominator, or `None` if `q = 0`.
pub fn reduced(p: i64, q: i64) -> Option<(i64, i64)> {
    if q == 0 {
        return None;
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    Some(if q < 0 { (-p, -q) } else { (p, q) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn shapes() {
        let sp = slope_pair_classify(r(2, 3), r(3, 2)).valid().unwrap();
        assert_eq!(sp.shape(), SlopeShape::Reciprocal { p: 2, q: 3 });
        let sp = slope_pair_classify(r(2, 3), r(6, 1)).valid().unwrap();
        assert_eq!(sp.shape(), SlopeShape::ProductForm { p: 2, q: 3 });
        assert!(matches!(
            slope_pair_classify(r(1, 2), r(1, 3)),
            SlopeClass::Invalid(_)
        ));
        assert!(slope_pair_classify(r(0, 1), r(0, 1))
            .valid()
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn order_does_not_matter() {
        for (a, b) in [
            (r(2, 3), r(3, 2)),
            (r(6, 1), r(2, 3)),
            (r(-5, 7), r(-35, 1)),
            (r(1, 4), r(4, 1)),
        ] {
            assert_eq!(slope_pair_classify(a, b), slope_pair_classify(b, a));
        }
    }

    #[test]
    fn reciprocal_wins_on_overlap() {
        let sp = slope_pair_classify(r(1, 4), r(4, 1)).valid().unwrap();
        assert!(sp.is_reciprocal());
    }

    #[test]
    fn negative_and_zero_components() {
        // (0/1, 0) is trivial; (p/q, pq) with p = 0 collapses to it.
        let sp = slope_pair_classify(r(-2, 3), r(-6, 1)).valid().unwrap();
        assert_eq!(sp.shape(), SlopeShape::ProductForm { p: -2, q: 3 });
        assert!(matches!(
            slope_pair_classify(r(0, 1), r(3, 1)),
            SlopeClass::Invalid(_)
        ));
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("4/6").unwrap(), r(2, 3));
        assert_eq!(parse_rational("-3").unwrap(), r(-3, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(reduced(4, -6), Some((-2, 3)));
        assert!(is_integer_reciprocal(&r(-1, 5)));
        assert!(!is_integer_reciprocal(&r(2, 5)));
    }
}
