//! Standard polytopes.

use super::{cone, CombPolytope};
use crate::linalg::q;

fn build(
    dim: usize,
    vertices: Vec<String>,
    facets: Vec<(String, Vec<usize>)>,
    coords: Option<Vec<Vec<i64>>>,
) -> CombPolytope {
    let (ids, sets): (Vec<String>, Vec<Vec<usize>>) = facets.into_iter().unzip();
    let coords = coords.map(|c| {
        c.into_iter()
            .map(|p| p.into_iter().map(q).collect())
            .collect()
    });
    CombPolytope::from_indices(dim, vertices, ids, sets, coords)
        .expect("catalog polytopes are valid")
}

/// The standard `n`-simplex with vertices `0, e_1, ..., e_n`.
pub fn simplex(n: usize) -> CombPolytope {
    let vertices: Vec<String> = (0..=n).map(|i| format!("v{i}")).collect();
    let facets = (0..=n)
        .map(|i| (format!("f{i}"), (0..=n).filter(|&j| j != i).collect()))
        .collect();
    let coords = (0..=n)
        .map(|i| (1..=n).map(|j| i64::from(i == j)).collect())
        .collect();
    build(n, vertices, facets, Some(coords))
}

/// The cube `[-1, 1]^3`. Facets `x0`, `x1`, `y0`, `y1`, `z0`, `z1` sit at
/// the low and high end of each axis; vertex `vXYZ` has bit 1 for the high
/// end.
pub fn cube() -> CombPolytope {
    let mut vertices = Vec::new();
    let mut coords = Vec::new();
    for b in 0..8usize {
        let bits = [b >> 2 & 1, b >> 1 & 1, b & 1];
        vertices.push(format!("v{}{}{}", bits[0], bits[1], bits[2]));
        coords.push(bits.iter().map(|&x| 2 * x as i64 - 1).collect());
    }
    let mut facets = Vec::new();
    for (axis, name) in ["x", "y", "z"].iter().enumerate() {
        for side in 0..2usize {
            let members = (0..8usize)
                .filter(|b| b >> (2 - axis) & 1 == side)
                .collect();
            facets.push((format!("{name}{side}"), members));
        }
    }
    build(3, vertices, facets, Some(coords))
}

/// The octahedron with vertices `±e_i`, named `px`, `nx`, ...; facet `f+-+`
/// is the octant with those coordinate signs.
pub fn octahedron() -> CombPolytope {
    let vertices: Vec<String> = ["px", "nx", "py", "ny", "pz", "nz"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let coords = vec![
        vec![1, 0, 0],
        vec![-1, 0, 0],
        vec![0, 1, 0],
        vec![0, -1, 0],
        vec![0, 0, 1],
        vec![0, 0, -1],
    ];
    let mut facets = Vec::new();
    for b in 0..8usize {
        let signs = [b >> 2 & 1, b >> 1 & 1, b & 1];
        let name: String = signs
            .iter()
            .map(|&s| if s == 0 { '+' } else { '-' })
            .collect();
        let members = (0..3).map(|axis| 2 * axis + signs[axis]).collect();
        facets.push((format!("f{name}"), members));
    }
    build(3, vertices, facets, Some(coords))
}

/// The convex `m`-gon on the points `(i, i^2)`. Edge `e{i}` joins `v{i}` and
/// `v{i+1}`.
pub fn polygon(m: usize) -> CombPolytope {
    assert!(m >= 3, "a polygon needs at least 3 vertices");
    let vertices = (0..m).map(|i| format!("v{i}")).collect();
    let facets = (0..m)
        .map(|i| (format!("e{i}"), vec![i, (i + 1) % m]))
        .collect();
    let coords = (0..m as i64).map(|i| vec![i, i * i]).collect();
    build(2, vertices, facets, Some(coords))
}

/// The cone over a square.
pub fn square_pyramid() -> CombPolytope {
    cone(&polygon(4)).expect("a polygon is simple")
}

/// The cone over a pentagon.
pub fn pentagonal_pyramid() -> CombPolytope {
    cone(&polygon(5)).expect("a polygon is simple")
}

/// The dodecahedron as incidence data only: a top pentagon `t`, two zigzag
/// rings `u` and `l`, and a bottom pentagon `b`.
pub fn dodecahedron() -> CombPolytope {
    let mut vertices = Vec::new();
    for layer in ["t", "u", "l", "b"] {
        for i in 0..5 {
            vertices.push(format!("{layer}{i}"));
        }
    }
    let t = |i: usize| i % 5;
    let u = |i: usize| 5 + i % 5;
    let l = |i: usize| 10 + i % 5;
    let b = |i: usize| 15 + i % 5;
    let mut facets = vec![
        ("top".to_string(), (0..5).map(t).collect()),
        ("bottom".to_string(), (0..5).map(b).collect()),
    ];
    for i in 0..5 {
        facets.push((format!("up{i}"), vec![t(i), t(i + 1), u(i + 1), l(i), u(i)]));
        facets.push((
            format!("lo{i}"),
            vec![l(i), u(i + 1), l(i + 1), b(i + 1), b(i)],
        ));
    }
    build(3, vertices, facets, None)
}
