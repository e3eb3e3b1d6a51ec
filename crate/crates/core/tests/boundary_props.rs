mod common;

use qtoric::boundary::{
    boundary_class, build_boundary_model, build_small_cover_boundary, euler_report,
    homology_relative, signed_piece_classes, BuildOptions, PieceId,
};
use qtoric::charmap::{validate_mod2, IsotropyMap};
use qtoric::polytope::{h_vector, Functional};

use common::{cube_map, octahedron_map, pyramid_map};

fn maps() -> Vec<(&'static str, IsotropyMap)> {
    vec![
        ("cube", cube_map()),
        ("pyramid", pyramid_map()),
        ("octahedron", octahedron_map()),
    ]
}

fn opts(seed: u64) -> BuildOptions {
    BuildOptions {
        functional: Functional::Seeded(seed),
        experimental: false,
    }
}

#[test]
fn ranks_independent_of_functional() {
    for (name, m) in maps() {
        let first = homology_relative(&build_boundary_model(&m, &opts(0)).unwrap());
        for seed in 1..20 {
            let b = build_boundary_model(&m, &opts(seed)).unwrap();
            assert_eq!(homology_relative(&b), first, "{name} seed {seed}");
        }
    }
}

#[test]
fn piece_vertices_sum_to_section_h() {
    for (name, m) in maps() {
        let b = build_boundary_model(&m, &opts(3)).unwrap();
        let verts: usize = b.pieces().iter().map(|c| c.polytope().vertex_count()).sum();
        let h: u64 = b
            .pieces()
            .iter()
            .map(|c| h_vector(c.polytope()).unwrap().sum())
            .sum();
        assert_eq!(verts as u64, h, "{name}");
        let r = euler_report(&b).unwrap();
        assert_eq!(r.section_h_total, h, "{name}");
    }
}

#[test]
fn euler_is_half_the_boundary() {
    for (name, m) in maps() {
        for seed in 0..5 {
            let r = euler_report(&build_boundary_model(&m, &opts(seed)).unwrap()).unwrap();
            assert_eq!(r.chi, r.half_boundary, "{name}");
            assert_eq!(
                r.chi_without_top_cells,
                r.chi + *r.cell_counts.last().unwrap() as i64
            );
        }
    }
}

#[test]
fn boundary_classes_cancel() {
    for (name, m) in maps() {
        let b = build_boundary_model(&m, &opts(0)).unwrap();
        let pieces = signed_piece_classes(&b).unwrap();
        assert!(
            pieces.iter().all(|(_, p)| *p != PieceId::Unrecognized),
            "{name}"
        );
        assert!(boundary_class(&pieces).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn small_cover_sections_validate() {
    for (name, m) in maps() {
        let sections = build_small_cover_boundary(&m.reduce_mod2()).unwrap();
        assert_eq!(sections.len(), m.polytope().vertex_count());
        for (v, s) in sections {
            assert!(s.is_characteristic());
            assert!(validate_mod2(&s).is_valid(), "{name} at {v}");
        }
    }
}
