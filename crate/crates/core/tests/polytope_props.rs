use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qtoric::polytope::{
    catalog, cone, dual3, face_counts_by_codim, h_vector, index_data, suspension,
    truncate_all_vertices, CombPolytope, Functional,
};

fn simple_catalog() -> Vec<(&'static str, CombPolytope)> {
    vec![
        ("triangle", catalog::polygon(3)),
        ("hexagon", catalog::polygon(6)),
        ("tetrahedron", catalog::simplex(3)),
        ("simplex4", catalog::simplex(4)),
        ("cube", catalog::cube()),
        ("dodecahedron", catalog::dodecahedron()),
        ("cone over triangle", cone(&catalog::polygon(3)).unwrap()),
    ]
}

fn edge_simple_catalog() -> Vec<(&'static str, CombPolytope)> {
    let mut out = simple_catalog();
    out.push(("octahedron", catalog::octahedron()));
    out.push(("square pyramid", catalog::square_pyramid()));
    out.push(("pentagonal pyramid", catalog::pentagonal_pyramid()));
    out.push(("bipyramid", suspension(&catalog::polygon(5)).unwrap()));
    out
}

/// `h_i` = number of vertices with exactly `i` neighbours below a generic
/// linear functional.
fn h_by_functional(p: &CombPolytope, w: &[i64]) -> Option<Vec<u64>> {
    let coords = p.coords()?;
    let val = |v: usize| -> BigRational {
        coords[v]
            .iter()
            .zip(w)
            .map(|(x, &c)| x * BigRational::from_integer(BigInt::from(c)))
            .sum()
    };
    let vals: Vec<BigRational> = (0..p.vertex_count()).map(val).collect();
    let mut h = vec![0u64; p.dim() + 1];
    for v in 0..p.vertex_count() {
        let mut below = 0;
        for e in p.edges_at(v) {
            let (a, b) = p.edges()[e].ends;
            let u = if a == v { b } else { a };
            if vals[u] == vals[v] {
                return None;
            }
            if vals[u] < vals[v] {
                below += 1;
            }
        }
        h[below] += 1;
    }
    Some(h)
}

#[test]
fn h_vector_matches_functional_count() {
    let mut polys: Vec<CombPolytope> = simple_catalog()
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| p.coords().is_some())
        .collect();
    polys.push(truncate_all_vertices(&catalog::cube()).unwrap().q().clone());
    polys.push(
        truncate_all_vertices(&catalog::square_pyramid())
            .unwrap()
            .q()
            .clone(),
    );
    for p in polys {
        let oracle = [[7, -3, 11, 5], [1009, 7919, -104729, 13], [31, 1, -17, 2]]
            .iter()
            .find_map(|w| h_by_functional(&p, &w[..p.dim()]))
            .expect("generic functional");
        assert_eq!(h_vector(&p).unwrap().entries(), oracle.as_slice());
    }
}

#[test]
fn h_vector_known_values() {
    assert_eq!(h_vector(&catalog::cube()).unwrap().entries(), &[1, 3, 3, 1]);
    assert_eq!(
        h_vector(&catalog::dodecahedron()).unwrap().entries(),
        &[1, 9, 9, 1]
    );
    assert_eq!(
        h_vector(&catalog::simplex(4)).unwrap().entries(),
        &[1, 1, 1, 1, 1]
    );
}

#[test]
fn h_vector_palindromic_and_sums_to_vertices() {
    for (name, p) in simple_catalog() {
        let h = h_vector(&p).unwrap();
        let e = h.entries();
        let rev: Vec<u64> = e.iter().rev().copied().collect();
        assert_eq!(e, rev.as_slice(), "{name}");
        assert_eq!(h.sum(), p.vertex_count() as u64, "{name}");
        let f = face_counts_by_codim(&p).unwrap();
        assert_eq!(f[0], 1);
        assert_eq!(f[1], p.facet_count() as u64, "{name}");
        assert_eq!(f[p.dim()], p.vertex_count() as u64, "{name}");
    }
}

#[test]
fn simple_implies_edge_simple() {
    for (name, p) in edge_simple_catalog() {
        if p.is_simple() {
            assert!(p.is_edge_simple(), "{name}");
        }
        assert!(p.is_edge_simple(), "{name}");
    }
}

#[test]
fn dual_transposes_incidence() {
    for (name, p) in simple_catalog() {
        if p.dim() != 3 {
            continue;
        }
        let d = dual3(&p).unwrap();
        assert_eq!(d.vertex_ids(), p.facet_ids(), "{name}");
        assert_eq!(d.facet_ids(), p.vertex_ids(), "{name}");
        assert_eq!(d.edges().len(), p.edges().len(), "{name}");
        for v in 0..p.vertex_count() {
            let a: BTreeSet<usize> = p.vertex_facets(v).iter().copied().collect();
            let b: BTreeSet<usize> = d.facet(v).iter().copied().collect();
            assert_eq!(a, b, "{name}");
        }
        assert!(d.is_edge_simple(), "{name}");
    }
    let t = catalog::simplex(3);
    let tt = dual3(&dual3(&t).unwrap()).unwrap();
    assert_eq!(tt.vertex_ids(), t.vertex_ids());
    assert_eq!(tt.facets(), t.facets());
}

#[test]
fn truncation_is_simple_with_simple_sections() {
    for (name, p) in edge_simple_catalog() {
        if p.dim() != 3 || p.coords().is_none() {
            continue;
        }
        let t = truncate_all_vertices(&p).unwrap();
        let q = t.q();
        assert!(q.is_simple(), "{name}");
        let degree_sum: usize = (0..p.vertex_count()).map(|v| p.edges_at(v).len()).sum();
        assert_eq!(q.vertex_count(), degree_sum, "{name}");
        assert_eq!(
            q.facet_count(),
            p.facet_count() + p.vertex_count(),
            "{name}"
        );
        for v in 0..p.vertex_count() {
            let s = t.section(v).unwrap();
            assert!(s.is_simple(), "{name} at {v}");
            assert_eq!(s.vertex_count(), p.edges_at(v).len(), "{name} at {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn index_identity_across_functionals(seed in any::<u64>(), which in 0usize..4) {
        let p = match which {
            0 => catalog::cube(),
            1 => catalog::square_pyramid(),
            2 => catalog::octahedron(),
            _ => catalog::pentagonal_pyramid(),
        };
        let t = truncate_all_vertices(&p).unwrap();
        let data = index_data(&t, &Functional::Seeded(seed)).unwrap();
        let total_h: u64 = (0..p.vertex_count())
            .map(|v| h_vector(&t.section(v).unwrap()).unwrap().sum())
            .sum();
        // Each base edge contributes exactly one cell.
        prop_assert_eq!(data.total_cells(), p.edges().len());
        // Section vertex counts are the vertex degrees; their sum is 2E.
        prop_assert_eq!(total_h as usize, 2 * p.edges().len());
        prop_assert_eq!(data.cell_counts().len(), p.dim());
    }
}
