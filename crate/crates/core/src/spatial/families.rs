//! Parametric families built from closed 2-braids, and the bundled
//! 5_2 spine.

use std::path::PathBuf;

use thiserror::Error;

use super::code::{Edge, EdgeEnd, GraphKind, Level, LoopingKind, Pass, SpatialGraphCode, Vertex};
use super::format::parse_code;
use super::looping::{loop_at, LoopOptions};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("n must be at least 2, got {0}")]
    TooSmall(i64),
    #[error("n must be odd, got {0}")]
    EvenN(i64),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad data file {path}: {message}")]
    Data { path: String, message: String },
}

/// Where a ring sits relative to the braid closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    /// Around both closure strands: linking number 2 with the knot.
    Both,
    /// Around one closure strand: linking number 1.
    One,
}

/// Passes of the closed 2-braid σ₁ⁿ read from the strand starting at the
/// left position. For even n there are two such reads, one per component.
fn braid_strand(n: usize, start_over: bool) -> Vec<Pass> {
    (0..n)
        .map(|i| {
            let over = (i % 2 == 0) == start_over;
            Pass::new(
                format!("c{}", i + 1),
                if over { Level::Over } else { Level::Under },
                1,
            )
        })
        .collect()
}

fn check_n(n: i64) -> Result<usize, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall(n));
    }
    Ok(n as usize)
}

/// The (n,2)-torus link as a closed 2-braid with n positive crossings,
/// optionally with a crossing-free tunnel joining the two closure strands.
///
/// Even n: components `a`, `b`; with the tunnel, a handcuff with loops
/// `a` at `va`, `b` at `vb` and connecting edge `t`. Odd n: the knot `k`;
/// with the tunnel, a θ-curve whose edges `k1`, `k2` make up the knot and
/// `t` is the tunnel.
pub fn family_torus_link(n: i64, tunnel: bool) -> Result<SpatialGraphCode, FamilyError> {
    let n = check_n(n)?;
    let first = braid_strand(n, true);
    let second = braid_strand(n, false);
    let code = match (n % 2 == 0, tunnel) {
        (true, false) => SpatialGraphCode::new(
            GraphKind::Link,
            vec![],
            vec![Edge::closed("a", first), Edge::closed("b", second)],
        ),
        (false, false) => {
            let mut passes = first;
            passes.extend(second);
            SpatialGraphCode::new(GraphKind::Link, vec![], vec![Edge::closed("k", passes)])
        }
        (true, true) => SpatialGraphCode::new(
            GraphKind::Handcuff,
            vec![
                Vertex {
                    id: "va".into(),
                    ends: vec![EdgeEnd::tail("a"), EdgeEnd::head("a"), EdgeEnd::tail("t")],
                },
                Vertex {
                    id: "vb".into(),
                    ends: vec![EdgeEnd::tail("b"), EdgeEnd::head("b"), EdgeEnd::head("t")],
                },
            ],
            vec![
                Edge::open("a", "va", "va", first),
                Edge::open("b", "vb", "vb", second),
                Edge::open("t", "va", "vb", vec![]),
            ],
        ),
        (false, true) => SpatialGraphCode::new(
            GraphKind::Theta,
            vec![
                Vertex {
                    id: "va".into(),
                    ends: vec![EdgeEnd::tail("k1"), EdgeEnd::head("k2"), EdgeEnd::tail("t")],
                },
                Vertex {
                    id: "vb".into(),
                    ends: vec![EdgeEnd::head("k1"), EdgeEnd::tail("k2"), EdgeEnd::head("t")],
                },
            ],
            vec![
                Edge::open("k1", "va", "vb", first),
                Edge::open("k2", "vb", "va", second),
                Edge::open("t", "va", "vb", vec![]),
            ],
        ),
    };
    Ok(code)
}

/// Looping of the tunnelled torus link at `va`. For odd n the two knot
/// edges are merged (a tunnel looping); for even n the loop `a` is merged
/// with the tunnel.
pub fn family_torus_looped(n: i64) -> Result<SpatialGraphCode, FamilyError> {
    let g = family_torus_link(n, true)?;
    let (pair, kind) = if g.kind == GraphKind::Theta {
        (
            [EdgeEnd::tail("k1"), EdgeEnd::head("k2")],
            LoopingKind::Tunnel,
        )
    } else {
        ([EdgeEnd::tail("a"), EdgeEnd::tail("t")], LoopingKind::Plain)
    };
    let opts = LoopOptions {
        mirror: false,
        kind: Some(kind),
    };
    Ok(loop_at(&g, "va", [&pair[0], &pair[1]], opts).expect("family looping is admissible"))
}

/// The (n,2)-torus knot `k` (n odd) with a ring `r` and a crossing-free
/// tunnel `t` from `vk` on the knot to `vr` on the ring.
pub fn family_odd_ringed(n: i64, ring: Ring) -> Result<SpatialGraphCode, FamilyError> {
    if n % 2 == 0 {
        return Err(FamilyError::EvenN(n));
    }
    let n = check_n(n)?;
    let p = |c: &str, level| Pass::new(c, level, 1);
    let mut knot = vec![p("s1", Level::Over), p("s2", Level::Under)];
    knot.extend(braid_strand(n, true));
    let ring_passes = match ring {
        Ring::One => {
            knot.extend(braid_strand(n, false));
            vec![p("s1", Level::Under), p("s2", Level::Over)]
        }
        Ring::Both => {
            knot.extend([p("s3", Level::Over), p("s4", Level::Under)]);
            knot.extend(braid_strand(n, false));
            vec![
                p("s2", Level::Over),
                p("s4", Level::Over),
                p("s3", Level::Under),
                p("s1", Level::Under),
            ]
        }
    };
    Ok(SpatialGraphCode::new(
        GraphKind::Handcuff,
        vec![
            Vertex {
                id: "vk".into(),
                ends: vec![EdgeEnd::tail("k"), EdgeEnd::head("k"), EdgeEnd::tail("t")],
            },
            Vertex {
                id: "vr".into(),
                ends: vec![EdgeEnd::tail("r"), EdgeEnd::head("r"), EdgeEnd::head("t")],
            },
        ],
        vec![
            Edge::open("k", "vk", "vk", knot),
            Edge::open("r", "vr", "vr", ring_passes),
            Edge::open("t", "vk", "vr", vec![]),
        ],
    ))
}

/// Looping of the ringed family at the ring's vertex, merging the ring
/// with the tunnel.
pub fn family_ringed_looped(n: i64, ring: Ring) -> Result<SpatialGraphCode, FamilyError> {
    let g = family_odd_ringed(n, ring)?;
    let pair = [EdgeEnd::tail("r"), EdgeEnd::head("t")];
    Ok(
        loop_at(&g, "vr", [&pair[0], &pair[1]], LoopOptions::default())
            .expect("family looping is admissible"),
    )
}

pub const FIVE_TWO_FILE: &str = "hk5_2.sg";
const FIVE_TWO_BUNDLED: &str = include_str!("../../data/hk5_2.sg");

/// The θ-curve spine of the handlebody-knot 5_2. Read from
/// `$HKDIAG_DATA/hk5_2.sg` when the variable is set, otherwise from the
/// copy bundled with the crate.
pub fn five_two_spine() -> Result<SpatialGraphCode, FamilyError> {
    let (path, src) = match std::env::var_os("HKDIAG_DATA") {
        Some(dir) => {
            let path = PathBuf::from(dir).join(FIVE_TWO_FILE);
            let src = std::fs::read_to_string(&path).map_err(|source| FamilyError::Io {
                path: path.display().to_string(),
                source,
            })?;
            (path.display().to_string(), src)
        }
        None => (
            format!("<bundled {FIVE_TWO_FILE}>"),
            FIVE_TWO_BUNDLED.to_string(),
        ),
    };
    parse_code(&src).map_err(|e| FamilyError::Data {
        path,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{alexander_polynomial, LaurentPoly};
    use crate::spatial::code::validate_code;
    use crate::spatial::links::{constituent_links, linking_number};

    fn lk(g: &SpatialGraphCode) -> i64 {
        let link = &constituent_links(g).unwrap()[0].code;
        let c = link.components();
        linking_number(link, c[0], c[1]).unwrap()
    }

    #[test]
    fn torus_links_are_well_formed() {
        for n in 2..9 {
            for tunnel in [false, true] {
                let g = family_torus_link(n, tunnel).unwrap();
                assert!(validate_code(&g).is_empty(), "n={n} tunnel={tunnel}");
                assert_eq!(g.crossing_count(), n as usize);
            }
        }
        assert!(matches!(
            family_torus_link(1, true),
            Err(FamilyError::TooSmall(1))
        ));
    }

    #[test]
    fn odd_torus_theta_contains_torus_knot() {
        let g = family_torus_link(3, true).unwrap();
        let knots = constituent_links(&g).unwrap();
        let k = knots.iter().find(|c| c.name == "k1+k2").unwrap();
        let p = alexander_polynomial(&k.code).unwrap();
        assert!(p.eq_up_to_units(&LaurentPoly::from_coeffs(&[1, -1, 1])));
    }

    #[test]
    fn ringed_linking_numbers() {
        assert_eq!(lk(&family_odd_ringed(3, Ring::One).unwrap()).abs(), 1);
        assert_eq!(lk(&family_odd_ringed(5, Ring::Both).unwrap()).abs(), 2);
        assert!(matches!(
            family_odd_ringed(4, Ring::One),
            Err(FamilyError::EvenN(4))
        ));
    }

    #[test]
    fn looped_families_validate() {
        for n in 2..7 {
            let g = family_torus_looped(n).unwrap();
            assert!(validate_code(&g).is_empty());
            assert_eq!(g.kind, GraphKind::Handcuff);
        }
        let g = family_ringed_looped(3, Ring::One).unwrap();
        assert_eq!(g.crossing_count(), 3 + 2 + 2);
    }

    #[test]
    fn bundled_spine_parses() {
        let g = five_two_spine().unwrap();
        assert_eq!(g.kind, GraphKind::Theta);
        assert_eq!(g.crossing_count(), 5);
    }
}
