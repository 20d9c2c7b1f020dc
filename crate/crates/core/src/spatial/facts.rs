//! Facts about a spatial graph that the classification rules consume.
//!
//! Most of these predicates (knot triviality, splitness, tunnels,
//! atoroidality) are not decided here. They enter as user assertions, and
//! a few sound but incomplete certificates can fill them in: a nonzero
//! linking number shows a link is non-split, and an Alexander polynomial
//! other than 1 shows a knot is nontrivial.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::code::{GraphKind, SpatialGraphCode};
use super::links::{component_knot, constituent_links, linking_number};
use crate::homology::alexander_polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", content = "oracle", rename_all = "lowercase")]
pub enum Provenance {
    User,
    Computed(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::User => write!(f, "asserted"),
            Provenance::Computed(o) => write!(f, "computed by {o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Fact<T> {
    pub fn user(value: T) -> Self {
        Fact {
            value,
            provenance: Provenance::User,
        }
    }

    pub fn computed(value: T, oracle: &str) -> Self {
        Fact {
            value,
            provenance: Provenance::Computed(oracle.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSet {
    /// Keyed by constituent name: `e1+e2` for a θ pair, the edge id for a
    /// handcuff loop.
    pub knot_trivial: BTreeMap<String, Fact<bool>>,
    pub link_split: Option<Fact<bool>>,
    pub link_trivial: Option<Fact<bool>>,
    pub link_hopf: Option<Fact<bool>>,
    pub linking_number: Option<Fact<i64>>,
    /// Edge designated as a tunnel of the rest of the graph.
    pub tunnel: Option<Fact<String>>,
    /// Edge designated as a knotting arc of the rest of the graph.
    pub knotting_arc: Option<Fact<String>>,
    pub graph_atoroidal: Option<Fact<bool>>,
    pub graph_planar: Option<Fact<bool>>,
    pub irreducible: Option<Fact<bool>>,
}

/// Keys accepted by `--assert`.
pub const ASSERT_KEYS: &[&str] = &[
    "atoroidal",
    "planar",
    "irreducible",
    "split",
    "link_trivial",
    "hopf",
    "tunnel",
    "knotting_arc",
    "knot_trivial",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactError {
    #[error("unknown assertion key `{0}` (expected one of: {keys})", keys = ASSERT_KEYS.join(", "))]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`")]
    BadValue { key: String, value: String },
    #[error("contradiction on {key}: asserted {asserted}, but {oracle} shows {computed}")]
    Contradiction {
        key: String,
        asserted: String,
        computed: String,
        oracle: String,
    },
}

fn parse_bool(key: &str, v: Option<&str>) -> Result<bool, FactError> {
    match v {
        None | Some("true") | Some("yes") => Ok(true),
        Some("false") | Some("no") => Ok(false),
        Some(other) => Err(FactError::BadValue {
            key: key.to_string(),
            value: other.to_string(),
        }),
    }
}

/// Sorted `+`-joined form of a constituent name.
pub fn constituent_key(s: &str) -> String {
    let mut parts: Vec<&str> = s.split('+').collect();
    parts.sort_unstable();
    parts.join("+")
}

impl FactSet {
    /// Applies one `key[=value]` assertion.
    pub fn assert_str(&mut self, s: &str) -> Result<(), FactError> {
        let (key, value) = match s.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (s.trim(), None),
        };
        let need = |v: Option<&str>| -> Result<String, FactError> {
            v.filter(|x| !x.is_empty())
                .map(str::to_string)
                .ok_or_else(|| FactError::BadValue {
                    key: key.to_string(),
                    value: String::new(),
                })
        };
        match key {
            "atoroidal" => self.graph_atoroidal = Some(Fact::user(parse_bool(key, value)?)),
            "planar" => self.graph_planar = Some(Fact::user(parse_bool(key, value)?)),
            "irreducible" => self.irreducible = Some(Fact::user(parse_bool(key, value)?)),
            "split" => self.link_split = Some(Fact::user(parse_bool(key, value)?)),
            "link_trivial" => self.link_trivial = Some(Fact::user(parse_bool(key, value)?)),
            "hopf" => self.link_hopf = Some(Fact::user(parse_bool(key, value)?)),
            "tunnel" => self.tunnel = Some(Fact::user(need(value)?)),
            "knotting_arc" => self.knotting_arc = Some(Fact::user(need(value)?)),
            "knot_trivial" => {
                let v = need(value)?;
                let (name, b) = match v.split_once(':') {
                    Some((n, b)) => (n, Some(b)),
                    None => (v.as_str(), None),
                };
                let b = parse_bool(key, b)?;
                self.knot_trivial
                    .insert(constituent_key(name), Fact::user(b));
            }
            other => return Err(FactError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn from_assertions<S: AsRef<str>>(items: &[S]) -> Result<Self, FactError> {
        let mut f = FactSet::default();
        for s in items {
            f.assert_str(s.as_ref())?;
        }
        Ok(f)
    }

    /// Adds computed certificates for `g`. A user assertion that disagrees
    /// with a certificate is reported as a contradiction.
    pub fn certify(&mut self, g: &SpatialGraphCode) -> Result<Vec<Certificate>, FactError> {
        let mut certs = Vec::new();
        let Ok(constituents) = constituent_links(g) else {
            return Ok(certs);
        };
        match g.kind {
            GraphKind::Theta => {
                for c in &constituents {
                    if let Ok(p) = alexander_polynomial(&c.code) {
                        let nontrivial = !p.eq_up_to_units(&crate::homology::LaurentPoly::one());
                        certs.push(Certificate {
                            subject: c.name.clone(),
                            oracle: "alexander".into(),
                            value: p.to_string(),
                        });
                        if nontrivial {
                            merge(
                                self.knot_trivial
                                    .entry(constituent_key(&c.name))
                                    .or_insert_with(|| Fact::computed(false, "alexander")),
                                false,
                                &format!("knot_trivial={}", c.name),
                                "alexander",
                            )?;
                        }
                    }
                }
            }
            GraphKind::Handcuff | GraphKind::Link => {
                let link = &constituents[0].code;
                let comps = link.components();
                for id in &comps {
                    if let Ok(k) = component_knot(link, id) {
                        if let Ok(p) = alexander_polynomial(&k) {
                            certs.push(Certificate {
                                subject: id.to_string(),
                                oracle: "alexander".into(),
                                value: p.to_string(),
                            });
                            if !p.eq_up_to_units(&crate::homology::LaurentPoly::one()) {
                                merge(
                                    self.knot_trivial
                                        .entry(id.to_string())
                                        .or_insert_with(|| Fact::computed(false, "alexander")),
                                    false,
                                    &format!("knot_trivial={id}"),
                                    "alexander",
                                )?;
                                // Both components of a trivial or Hopf link are unknots.
                                merge_opt(
                                    &mut self.link_trivial,
                                    false,
                                    "link_trivial",
                                    "alexander",
                                )?;
                                merge_opt(&mut self.link_hopf, false, "hopf", "alexander")?;
                            } else if k.crossing_count() == 0 {
                                merge(
                                    self.knot_trivial
                                        .entry(id.to_string())
                                        .or_insert_with(|| Fact::computed(true, "crossing-free")),
                                    true,
                                    &format!("knot_trivial={id}"),
                                    "crossing-free",
                                )?;
                            }
                        }
                    }
                }
                if let [a, b] = comps[..] {
                    if let Ok(lk) = linking_number(link, a, b) {
                        certs.push(Certificate {
                            subject: format!("{a},{b}"),
                            oracle: "linking-number".into(),
                            value: lk.to_string(),
                        });
                        self.linking_number = Some(Fact::computed(lk, "linking-number"));
                        if lk != 0 {
                            merge_opt(&mut self.link_split, false, "split", "linking-number")?;
                            merge_opt(
                                &mut self.link_trivial,
                                false,
                                "link_trivial",
                                "linking-number",
                            )?;
                        }
                        if lk.abs() != 1 {
                            merge_opt(&mut self.link_hopf, false, "hopf", "linking-number")?;
                        }
                    }
                }
            }
        }
        Ok(certs)
    }

    pub fn atoroidal(&self) -> Option<bool> {
        self.graph_atoroidal.as_ref().map(|f| f.value)
    }

    pub fn planar(&self) -> Option<bool> {
        self.graph_planar.as_ref().map(|f| f.value)
    }

    pub fn is_irreducible(&self) -> Option<bool> {
        self.irreducible.as_ref().map(|f| f.value)
    }

    pub fn split(&self) -> Option<bool> {
        self.link_split.as_ref().map(|f| f.value)
    }

    /// Every fact as `(key, value, provenance)` rows, in a fixed order.
    pub fn rows(&self) -> Vec<(String, String, Provenance)> {
        let mut out = Vec::new();
        let mut push_b = |k: &str, f: &Option<Fact<bool>>| {
            if let Some(f) = f {
                out.push((k.to_string(), f.value.to_string(), f.provenance.clone()));
            }
        };
        push_b("atoroidal", &self.graph_atoroidal);
        push_b("planar", &self.graph_planar);
        push_b("irreducible", &self.irreducible);
        push_b("split", &self.link_split);
        push_b("link_trivial", &self.link_trivial);
        push_b("hopf", &self.link_hopf);
        if let Some(f) = &self.linking_number {
            out.push((
                "linking_number".into(),
                f.value.to_string(),
                f.provenance.clone(),
            ));
        }
        if let Some(f) = &self.tunnel {
            out.push(("tunnel".into(), f.value.clone(), f.provenance.clone()));
        }
        if let Some(f) = &self.knotting_arc {
            out.push(("knotting_arc".into(), f.value.clone(), f.provenance.clone()));
        }
        for (k, f) in &self.knot_trivial {
            out.push((
                format!("knot_trivial[{k}]"),
                f.value.to_string(),
                f.provenance.clone(),
            ));
        }
        out
    }
}

fn merge(slot: &mut Fact<bool>, computed: bool, key: &str, oracle: &str) -> Result<(), FactError> {
    if slot.value != computed {
        return Err(FactError::Contradiction {
            key: key.to_string(),
            asserted: slot.value.to_string(),
            computed: computed.to_string(),
            oracle: oracle.to_string(),
        });
    }
    Ok(())
}

fn merge_opt(
    slot: &mut Option<Fact<bool>>,
    computed: bool,
    key: &str,
    oracle: &str,
) -> Result<(), FactError> {
    match slot {
        Some(f) => merge(f, computed, key, oracle),
        None => {
            *slot = Some(Fact::computed(computed, oracle));
            Ok(())
        }
    }
}

/// A computed invariant value backing a fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub oracle: String,
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assertion_vocabulary() {
        let f = FactSet::from_assertions(&[
            "tunnel=e3",
            "atoroidal",
            "planar=false",
            "knot_trivial=e2+e1:false",
        ])
        .unwrap();
        assert_eq!(f.tunnel.unwrap().value, "e3");
        assert!(f.graph_atoroidal.unwrap().value);
        assert!(!f.graph_planar.unwrap().value);
        assert!(!f.knot_trivial["e1+e2"].value);
        assert!(matches!(
            FactSet::from_assertions(&["bogus=1"]),
            Err(FactError::UnknownKey(_))
        ));
        assert!(matches!(
            FactSet::from_assertions(&["planar=maybe"]),
            Err(FactError::BadValue { .. })
        ));
        assert!(matches!(
            FactSet::from_assertions(&["tunnel"]),
            Err(FactError::BadValue { .. })
        ));
    }
}
