use std::sync::OnceLock;

use hkdiag::annulus::{
    is_fourone, label_alphabet, label_catalog, symmetry_bounds, validate_labels, AnnulusDiagram,
    EdgeLabel,
};
use hkdiag::diagram::{are_isomorphic, canonical_form, enumerate_valid, CharDiagram};
use hkdiag::homology::{
    alexander_polynomial, meridional_pair_predict, slope_pair_classify, smith_normal_form,
    subgroup_index, IntMatrix, LaurentPoly, Rational, SlopeClass, SubgroupIndex,
};
use hkdiag::spatial::{
    family_torus_link, linking_number, loop_at, parse_code, validate_code, write_code, LoopOptions,
};
use hkdiag::Strategy as Exec;
use num_bigint::BigInt;
use proptest::prelude::*;

fn valid() -> &'static [CharDiagram] {
    static V: OnceLock<Vec<CharDiagram>> = OnceLock::new();
    V.get_or_init(enumerate_valid)
}

fn catalog() -> &'static [AnnulusDiagram] {
    static C: OnceLock<Vec<AnnulusDiagram>> = OnceLock::new();
    C.get_or_init(|| label_catalog(Exec::default()))
}

/// A valid diagram together with a permutation of its nodes.
fn permuted_valid() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..13usize).prop_flat_map(|i| {
        let n = valid()[i].node_count();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn rule_codes(ad: &AnnulusDiagram) -> Vec<&'static str> {
    let mut v: Vec<_> = validate_labels(ad)
        .unwrap()
        .iter()
        .map(|x| x.rule.code())
        .collect();
    v.sort_unstable();
    v
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=6usize, 1..=6usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_node_order((i, perm) in permuted_valid()) {
        let d = &valid()[i];
        let p = d.permuted(&perm);
        prop_assert_eq!(canonical_form(d), canonical_form(&p));
        prop_assert!(are_isomorphic(d, &p));
    }

    #[test]
    fn label_rules_ignore_node_order(
        (i, perm) in permuted_valid(),
        picks in prop::collection::vec(0..8usize, 3),
    ) {
        let base = &valid()[i];
        let alphabet = label_alphabet();
        let labels: Vec<EdgeLabel> = (0..base.edges().len()).map(|e| alphabet[picks[e]]).collect();
        let ad = AnnulusDiagram::new(base.clone(), labels.clone()).unwrap();
        let moved = AnnulusDiagram::new(base.permuted(&perm), labels).unwrap();
        prop_assert_eq!(rule_codes(&ad), rule_codes(&moved));
        prop_assert_eq!(ad.kind_form(), moved.kind_form());
        prop_assert_eq!(symmetry_bounds(&ad).ok(), symmetry_bounds(&moved).ok());
    }

    #[test]
    fn slope_classification_is_unordered(a in rational(), b in rational()) {
        prop_assert_eq!(slope_pair_classify(a, b).valid(), slope_pair_classify(b, a).valid());
    }

    #[test]
    fn admissible_slope_shapes_are_valid(p in -12i64..=12, q in 1i64..=12) {
        prop_assume!(p != 0 && num_integer::gcd(p, q) == 1);
        let r = Rational::new(p, q);
        prop_assert!(matches!(slope_pair_classify(r, Rational::new(q, p)), SlopeClass::Valid(_)));
        prop_assert!(matches!(slope_pair_classify(r, Rational::from_integer(p * q)), SlopeClass::Valid(_)));
    }

    #[test]
    fn smith_form_is_a_fixed_point(m in small_matrix()) {
        let s = smith_normal_form(&m);
        let again = smith_normal_form(&s.d);
        prop_assert_eq!(&again.d, &s.d);
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn meridional_index_ignores_mirror(p in -50i64..=50, q in 1i64..=50, p1 in -50i64..=50) {
        prop_assume!(p != 0 && num_integer::gcd(p, q) == 1);
        let (a, b) = meridional_pair_predict(p, q, p1, false).unwrap();
        let (c, d) = meridional_pair_predict(p, q, p1, true).unwrap();
        let want = SubgroupIndex::Finite(BigInt::from(p.abs()));
        prop_assert_eq!(subgroup_index(&[a, b]).unwrap(), want.clone());
        prop_assert_eq!(subgroup_index(&[c, d]).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mirror_negates_linking_number(half in 1i64..=8) {
        let link = family_torus_link(2 * half, false).unwrap();
        let lk = linking_number(&link, "a", "b").unwrap();
        prop_assert_eq!(lk.abs(), half);
        prop_assert_eq!(linking_number(&link.mirror(), "a", "b").unwrap(), -lk);
    }

    #[test]
    fn alexander_polynomial_survives_mirroring(half in 1i64..=5) {
        let k = family_torus_link(2 * half + 1, false).unwrap();
        let a = alexander_polynomial(&k).unwrap();
        prop_assert!(a.eq_up_to_units(&alexander_polynomial(&k.mirror()).unwrap()));
        prop_assert!(!a.eq_up_to_units(&LaurentPoly::one()));
    }

    #[test]
    fn looping_adds_two_crossings(n in 2i64..=9, mirror: bool, pick in 0..3usize, second in 1..3usize) {
        let g = family_torus_link(n, true).unwrap();
        for v in &g.vertices {
            let ends = &v.ends;
            let pair = [&ends[pick], &ends[(pick + second) % 3]];
            match loop_at(&g, &v.id, pair, LoopOptions { mirror, kind: None }) {
                Ok(h) => {
                    prop_assert_eq!(h.crossing_count(), g.crossing_count() + 2);
                    prop_assert!(validate_code(&h).is_empty());
                    prop_assert_eq!(parse_code(&write_code(&h)).unwrap(), h);
                }
                Err(e) => prop_assert!(e.to_string().contains("disconnect"), "{}", e),
            }
        }
    }
}

#[test]
fn symmetry_bounds_are_coherent() {
    for ad in catalog() {
        let Ok(b) = symmetry_bounds(ad) else { continue };
        assert!(b.sym_plus.group().embeds_in(b.sym.group()), "{ad}: {b}");
        if is_fourone(ad).unwrap() {
            assert!(b.exact, "{ad}: {b}");
        }
        assert!(rule_codes(ad).is_empty());
    }
}

#[test]
fn valid_classes_are_pairwise_distinct() {
    let forms: std::collections::BTreeSet<_> = valid().iter().map(canonical_form).collect();
    assert_eq!(forms.len(), valid().len());
}
