use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::slope::{
    format_rational, is_integer_reciprocal, parse_rational, slope_pair_classify, Rational,
    SlopeClass, SlopePair,
};

/// Annulus type carried by an edge of an annulus diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    H1,
    H2,
    K1,
    /// Type 3-2ii with its rational parameter, never 0 or `1/n`.
    K2(Rational),
    /// Type 3-3 with a nontrivial boundary slope pair.
    L(SlopePair),
    /// Type 3-3 with the trivial slope pair.
    L0,
    EM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    H1,
    H2,
    K1,
    K2,
    L,
    L0,
    EM,
}

impl LabelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LabelKind::H1 => "h1",
            LabelKind::H2 => "h2",
            LabelKind::K1 => "k1",
            LabelKind::K2 => "k2",
            LabelKind::L => "l",
            LabelKind::L0 => "l0",
            LabelKind::EM => "em",
        }
    }

    pub fn is_h(self) -> bool {
        matches!(self, LabelKind::H1 | LabelKind::H2)
    }

    pub fn is_k(self) -> bool {
        matches!(self, LabelKind::K1 | LabelKind::K2)
    }
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("unknown label `{0}` (expected h1, h2, k1, k2(p/q), l(p/q,r/s), l0 or em)")]
    Unknown(String),
    #[error("bad rational in `{label}`: {reason}")]
    BadRational { label: String, reason: String },
    #[error("k2 parameter {0} is 0 or the reciprocal of an integer")]
    K2Parameter(String),
    #[error("invalid slope pair: {0}")]
    Slopes(String),
}

impl EdgeLabel {
    pub fn k2(r: Rational) -> Result<Self, LabelError> {
        if is_integer_reciprocal(&r) || r == Rational::from_integer(0) {
            return Err(LabelError::K2Parameter(format_rational(&r)));
        }
        Ok(EdgeLabel::K2(r))
    }

    /// `l(r1, r2)`; the trivial pair gives `L0`.
    pub fn l(r1: Rational, r2: Rational) -> Result<Self, LabelError> {
        match slope_pair_classify(r1, r2) {
            SlopeClass::Valid(sp) if sp.is_trivial() => Ok(EdgeLabel::L0),
            SlopeClass::Valid(sp) => Ok(EdgeLabel::L(sp)),
            SlopeClass::Invalid(reason) => Err(LabelError::Slopes(reason)),
        }
    }

    pub fn kind(&self) -> LabelKind {
        match self {
            EdgeLabel::H1 => LabelKind::H1,
            EdgeLabel::H2 => LabelKind::H2,
            EdgeLabel::K1 => LabelKind::K1,
            EdgeLabel::K2(_) => LabelKind::K2,
            EdgeLabel::L(_) => LabelKind::L,
            EdgeLabel::L0 => LabelKind::L0,
            EdgeLabel::EM => LabelKind::EM,
        }
    }

    pub fn parse(s: &str) -> Result<Self, LabelError> {
        let lower = s.trim().to_ascii_lowercase();
        let rational = |t: &str| {
            parse_rational(t).map_err(|reason| LabelError::BadRational {
                label: s.to_string(),
                reason,
            })
        };
        match lower.as_str() {
            "h1" => return Ok(EdgeLabel::H1),
            "h2" => return Ok(EdgeLabel::H2),
            "k1" => return Ok(EdgeLabel::K1),
            "l0" => return Ok(EdgeLabel::L0),
            "em" => return Ok(EdgeLabel::EM),
            _ => {}
        }
        if let Some(inner) = lower.strip_prefix("k2(").and_then(|t| t.strip_suffix(')')) {
            return EdgeLabel::k2(rational(inner)?);
        }
        if let Some(inner) = lower.strip_prefix("l(").and_then(|t| t.strip_suffix(')')) {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| LabelError::Unknown(s.to_string()))?;
            return EdgeLabel::l(rational(a)?, rational(b)?);
        }
        Err(LabelError::Unknown(s.to_string()))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::K2(r) => write!(f, "k2({})", format_rational(r)),
            EdgeLabel::L(sp) => write!(
                f,
                "l({},{})",
                format_rational(&sp.r1()),
                format_rational(&sp.r2())
            ),
            other => f.write_str(other.kind().as_str()),
        }
    }
}

/// JSON object form: `{"kind":"k2","r":"3/2"}`, `{"kind":"l","slopes":["2/3","3/2"]}`.
#[derive(Serialize, Deserialize)]
struct LabelObject {
    kind: LabelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slopes: Option<[String; 2]>,
}

impl Serialize for EdgeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let obj = LabelObject {
            kind: self.kind(),
            r: match self {
                EdgeLabel::K2(r) => Some(format_rational(r)),
                _ => None,
            },
            slopes: match self {
                EdgeLabel::L(sp) => Some([format_rational(&sp.r1()), format_rational(&sp.r2())]),
                _ => None,
            },
        };
        obj.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let obj = LabelObject::deserialize(d)?;
        let text = match (obj.kind, obj.r, obj.slopes) {
            (LabelKind::K2, Some(r), None) => format!("k2({r})"),
            (LabelKind::L, None, Some([a, b])) => format!("l({a},{b})"),
            (k, None, None) if k != LabelKind::K2 && k != LabelKind::L => k.as_str().to_string(),
            (k, _, _) => return Err(D::Error::custom(format!("bad fields for label `{k}`"))),
        };
        EdgeLabel::parse(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in [
            "h1",
            "h2",
            "k1",
            "k2(3/2)",
            "k2(-2)",
            "l(2/3,3/2)",
            "l(2/3,6)",
            "l0",
            "em",
        ] {
            let l = EdgeLabel::parse(s).unwrap();
            assert_eq!(l.to_string(), s);
            let j = serde_json::to_string(&l).unwrap();
            assert_eq!(serde_json::from_str::<EdgeLabel>(&j).unwrap(), l);
        }
        assert_eq!(EdgeLabel::parse("l(0,0)").unwrap(), EdgeLabel::L0);
        assert_eq!(EdgeLabel::parse("k2(6/4)").unwrap().to_string(), "k2(3/2)");
    }

    #[test]
    fn rejects_bad_parameters() {
        for s in ["k2(0)", "k2(1)", "k2(-1)", "k2(1/3)", "k2(-1/5)"] {
            assert!(
                matches!(EdgeLabel::parse(s), Err(LabelError::K2Parameter(_))),
                "{s}"
            );
        }
        assert!(matches!(
            EdgeLabel::parse("l(1/2,1/3)"),
            Err(LabelError::Slopes(_))
        ));
        assert!(matches!(
            EdgeLabel::parse("h3"),
            Err(LabelError::Unknown(_))
        ));
        assert!(matches!(
            EdgeLabel::parse("k2(1/0)"),
            Err(LabelError::BadRational { .. })
        ));
    }
}
