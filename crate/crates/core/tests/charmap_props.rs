mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use qtoric::charmap::{
    extend_to_characteristic, restrict_to_section, search_isotropy, search_mod2,
    validate_characteristic, validate_isotropy, validate_mod2, IsotropyMap, IsotropySearch,
};
use qtoric::polytope::{catalog, cone, suspension, truncate_all_vertices, CombPolytope};

use common::{cube_map, octahedron_map, pyramid_map, sv};

fn valid_maps() -> Vec<(&'static str, IsotropyMap)> {
    vec![
        ("cube", cube_map()),
        ("pyramid", pyramid_map()),
        ("octahedron", octahedron_map()),
    ]
}

/// Isotropy on a 3-polytope: along every edge the two values have
/// determinant `±1`.
fn edge_det_oracle(m: &IsotropyMap) -> bool {
    m.polytope().edges().iter().all(|e| {
        let [a, b] = [e.facets[0], e.facets[1]].map(|f| m.value(f).rep().entries().to_vec());
        let d = &a[0] * &b[1] - &a[1] * &b[0];
        d == BigInt::from(1) || d == BigInt::from(-1)
    })
}

fn to_rows(a: &[[i64; 2]; 2]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|r| r.iter().map(|&x| x.into()).collect())
        .collect()
}

#[test]
fn fixtures_are_valid() {
    for (name, m) in valid_maps() {
        assert!(validate_isotropy(&m).is_valid(), "{name}");
        assert!(edge_det_oracle(&m), "{name}");
    }
}

#[test]
fn search_results_validate() {
    let polys: Vec<(&str, CombPolytope)> = vec![
        ("cube", catalog::cube()),
        ("octahedron", catalog::octahedron()),
        ("square pyramid", catalog::square_pyramid()),
        (
            "hexagonal bipyramid",
            suspension(&catalog::polygon(6)).unwrap(),
        ),
    ];
    for (name, p) in polys {
        match search_isotropy(&p, 2) {
            IsotropySearch::Found(m) => {
                assert!(validate_isotropy(&m).is_valid(), "{name}");
                assert!(edge_det_oracle(&m), "{name}");
            }
            other => panic!("{name}: {other:?}"),
        }
        let m2 = search_mod2(&p).unwrap();
        assert!(validate_mod2(&m2).is_valid(), "{name}");
    }
}

#[test]
fn obstructions_are_mod2() {
    // In a tetrahedron all four facets are mutually adjacent, but F_2^2 has
    // only three nonzero vectors.
    let tetra = cone(&catalog::polygon(3)).unwrap();
    for p in [
        catalog::simplex(3),
        catalog::simplex(4),
        catalog::pentagonal_pyramid(),
        tetra,
    ] {
        assert!(search_mod2(&p).is_none());
        assert!(matches!(
            search_isotropy(&p, 3),
            IsotropySearch::Mod2Obstruction
        ));
    }
}

#[test]
fn extensions_and_sections_validate() {
    for (name, m) in valid_maps() {
        let t = truncate_all_vertices(m.polytope()).unwrap();
        let ext = extend_to_characteristic(&t, &m).unwrap();
        assert!(validate_characteristic(&ext).is_valid(), "{name}");
        for v in 0..m.polytope().vertex_count() {
            let c = restrict_to_section(&t, &m, v).unwrap();
            assert!(validate_characteristic(&c).is_valid(), "{name} at {v}");
        }
    }
}

proptest! {
    #[test]
    fn validation_matches_edge_oracle(vals in proptest::collection::vec((-3i64..=3, -3i64..=3), 6)) {
        prop_assume!(vals.iter().all(|&(a, b)| a != 0 || b != 0));
        let assign = vals.iter().map(|&(a, b)| sv(&[a, b])).collect();
        let m = IsotropyMap::new(catalog::cube(), assign).unwrap();
        prop_assert_eq!(validate_isotropy(&m).is_valid(), edge_det_oracle(&m));
    }

    #[test]
    fn unimodular_transform_preserves_validity(steps in 1usize..8, seed in any::<u64>(), which in 0usize..3) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_unimodular(&mut rng, steps);
        let rows = a.rows().iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        let m = &valid_maps()[which].1;
        let t = m.transform(&rows).unwrap();
        prop_assert!(validate_isotropy(&t).is_valid());
    }

    #[test]
    fn singular_transform_breaks_validity(a in -3i64..=3, b in -3i64..=3, k in 2i64..=4) {
        // |det| = |k b| >= 2, so no edge keeps a basis.
        prop_assume!(b != 0);
        let rows = to_rows(&[[k, 0], [a, b]]);
        if let Ok(t) = cube_map().transform(&rows) {
            prop_assert!(!validate_isotropy(&t).is_valid());
        }
    }

    #[test]
    fn mod2_reduction_of_valid_is_valid(steps in 1usize..8, seed in any::<u64>(), which in 0usize..3) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_unimodular(&mut rng, steps);
        let rows = a.rows().iter().map(|r| r.to_vec()).collect::<Vec<_>>();
        let m = valid_maps()[which].1.transform(&rows).unwrap();
        prop_assert!(validate_mod2(&m.reduce_mod2()).is_valid());
    }
}
