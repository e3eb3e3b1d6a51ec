#![allow(dead_code)]

use std::collections::BTreeMap;

use qtoric::charmap::IsotropyMap;
use qtoric::cobord4::{self, Polygon4};
use qtoric::intlat::{Mat2, Sign, SignVec};
use qtoric::polytope::catalog;
use rand::Rng;

pub fn sv(v: &[i64]) -> SignVec {
    SignVec::from_i64(v).unwrap()
}

pub fn poly(v: &[[i64; 2]]) -> Polygon4 {
    Polygon4::from_i64(v).unwrap()
}

fn by_id(pairs: &[(&str, &[i64])]) -> BTreeMap<String, SignVec> {
    pairs.iter().map(|(k, v)| (k.to_string(), sv(v))).collect()
}

/// Axis pairs of the cube get `(1,0)`, `(0,1)`, `(1,1)`.
pub fn cube_map() -> IsotropyMap {
    IsotropyMap::from_ids(
        catalog::cube(),
        &by_id(&[
            ("x0", &[1, 0]),
            ("x1", &[1, 0]),
            ("y0", &[0, 1]),
            ("y1", &[0, 1]),
            ("z0", &[1, 1]),
            ("z1", &[1, 1]),
        ]),
    )
    .unwrap()
}

/// Slant facets alternate `(0,1)`, `(1,0)`; the base gets their sum.
pub fn pyramid_map() -> IsotropyMap {
    IsotropyMap::from_ids(
        catalog::square_pyramid(),
        &by_id(&[
            ("Ce0", &[0, 1]),
            ("Ce1", &[1, 0]),
            ("Ce2", &[0, 1]),
            ("Ce3", &[1, 0]),
            ("base", &[1, 1]),
        ]),
    )
    .unwrap()
}

/// Octants with an even number of negative signs get `(1,0)`, the others
/// `(0,1)`; facets sharing an edge differ in one sign.
pub fn octahedron_map() -> IsotropyMap {
    let o = catalog::octahedron();
    let assign = o
        .facet_ids()
        .iter()
        .map(|f| {
            if f.matches('-').count() % 2 == 0 {
                sv(&[1, 0])
            } else {
                sv(&[0, 1])
            }
        })
        .collect();
    IsotropyMap::new(o, assign).unwrap()
}

/// A random matrix of determinant ±1 as a product of elementary moves.
pub fn random_unimodular<R: Rng>(rng: &mut R, steps: usize) -> Mat2 {
    let mut a = Mat2::identity();
    for _ in 0..steps {
        let t = rng.gen_range(-2i64..=2);
        let e = match rng.gen_range(0..3) {
            0 => Mat2::from_i64([[1, t], [0, 1]]),
            1 => Mat2::from_i64([[1, 0], [t, 1]]),
            _ => Mat2::from_i64([[0, 1], [1, 0]]),
        };
        a = a.mul(&e);
    }
    a
}

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A valid polygon with `m` vectors, built from a transformed triangle or
/// Hirzebruch square by inverse blow-ups at random positions.
pub fn random_polygon<R: Rng>(rng: &mut R, m: usize) -> Polygon4 {
    let seed = if m >= 4 && rng.gen_bool(0.5) {
        let k = rng.gen_range(-4i64..=4);
        poly(&[[0, 1], [1, 0], [0, 1], [1, k]])
    } else {
        poly(&[[1, 0], [0, 1], [1, 1]])
    };
    let a = random_unimodular(rng, 3);
    let mut p = seed.transform(&a).unwrap();
    while p.m() < m {
        let i = rng.gen_range(0..p.m());
        p = cobord4::inverse_blow_up(&p, i, random_sign(rng), random_sign(rng)).unwrap();
    }
    p
}
