//! Truncation of every vertex of an edge-simple polytope.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{CombPolytope, PolytopeError};
use crate::linalg::{self, Q};

/// The simple polytope `Q` obtained by cutting off every vertex of an
/// edge-simple base.
///
/// Vertices of `Q` are the pairs `(v, e)` of a base vertex and an incident
/// base edge. Facets `0..F` of `Q` are the truncated base facets, in base
/// order; facet `F + v` is the section at base vertex `v`.
#[derive(Clone, Debug)]
pub struct TruncatedPolytope {
    base: CombPolytope,
    q: CombPolytope,
    corner: Vec<usize>,
    pedge_of: Vec<usize>,
    at: BTreeMap<(usize, usize), usize>,
}

impl TruncatedPolytope {
    pub fn base(&self) -> &CombPolytope {
        &self.base
    }

    pub fn q(&self) -> &CombPolytope {
        &self.q
    }

    /// The `Q` facet replacing base facet `f`.
    pub fn old_facet(&self, f: usize) -> usize {
        f
    }

    /// The section facet of `Q` at base vertex `v`.
    pub fn new_facet(&self, v: usize) -> usize {
        self.base.facet_count() + v
    }

    pub fn is_new_facet(&self, f: usize) -> bool {
        f >= self.base.facet_count()
    }

    /// The base vertex whose cut contains `Q` vertex `x`.
    pub fn corner(&self, x: usize) -> usize {
        self.corner[x]
    }

    /// The base edge on which `Q` vertex `x` lies.
    pub fn pedge_of(&self, x: usize) -> usize {
        self.pedge_of[x]
    }

    /// The `Q` vertex cut from base edge `e` near base vertex `v`.
    pub fn qvertex(&self, v: usize, e: usize) -> Option<usize> {
        self.at.get(&(v, e)).copied()
    }

    /// Base facets through base vertex `v`, i.e. the facets of the section.
    pub fn section_facets(&self, v: usize) -> &[usize] {
        self.base.vertex_facets(v)
    }

    /// The section `P_H` at base vertex `v` as an `(n-1)`-polytope.
    ///
    /// Facets carry the ids of the base facets through `v`. Coordinates, if
    /// any, are the cut points projected along one axis transverse to the
    /// cutting hyperplane.
    pub fn section(&self, v: usize) -> Result<CombPolytope, PolytopeError> {
        let n = self.base.dim();
        let members: Vec<usize> = self
            .base
            .edges_at(v)
            .iter()
            .map(|&e| self.at[&(v, e)])
            .collect();
        let local: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let vertex_ids = members
            .iter()
            .map(|&x| self.q.vertex_id(x).to_string())
            .collect();
        let facet_ids = self
            .section_facets(v)
            .iter()
            .map(|&f| self.base.facet_id(f).to_string())
            .collect();
        let facets = self
            .section_facets(v)
            .iter()
            .map(|&f| {
                self.q
                    .facet(self.old_facet(f))
                    .iter()
                    .filter_map(|x| local.get(x).copied())
                    .collect()
            })
            .collect();
        let coords = match (self.q.coords(), self.q.hyperplane(self.new_facet(v))) {
            (Some(c), Some(h)) => {
                let drop = h
                    .normal
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("hyperplane normals are nonzero");
                Some(
                    members
                        .iter()
                        .map(|&x| {
                            c[x].iter()
                                .enumerate()
                                .filter(|&(i, _)| i != drop)
                                .map(|(_, y)| y.clone())
                                .collect()
                        })
                        .collect(),
                )
            }
            _ => None,
        };
        CombPolytope::from_indices(n - 1, vertex_ids, facet_ids, facets, coords)
    }
}

/// Cuts every vertex of an edge-simple polytope of dimension at least 3.
///
/// When the base has coordinates, the cut at `v` is a hyperplane normal to
/// the sum of the outward normals at `v`, placed a third of the way towards
/// the nearest other vertex along that direction. If the resulting points
/// fail validation the fraction is divided by 3 and the cut retried.
pub fn truncate_all_vertices(p: &CombPolytope) -> Result<TruncatedPolytope, PolytopeError> {
    let n = p.dim();
    if n < 3 {
        return Err(PolytopeError::TruncationDim(n));
    }
    if !p.is_edge_simple() {
        return Err(PolytopeError::NotEdgeSimple);
    }
    let mut corner = Vec::new();
    let mut pedge_of = Vec::new();
    let mut at = BTreeMap::new();
    let mut vertex_ids = Vec::new();
    for v in 0..p.vertex_count() {
        for e in p.edges_at(v) {
            let (a, b) = p.edges()[e].ends;
            let w = if a == v { b } else { a };
            at.insert((v, e), corner.len());
            corner.push(v);
            pedge_of.push(e);
            vertex_ids.push(format!("{}~{}", p.vertex_id(v), p.vertex_id(w)));
        }
    }
    let mut facet_ids: Vec<String> = p.facet_ids().to_vec();
    let mut facets: Vec<Vec<usize>> = (0..p.facet_count())
        .map(|f| {
            (0..corner.len())
                .filter(|&x| p.edges()[pedge_of[x]].facets.binary_search(&f).is_ok())
                .collect()
        })
        .collect();
    for v in 0..p.vertex_count() {
        facet_ids.push(fresh_section_id(p.vertex_id(v), &facet_ids));
        facets.push((0..corner.len()).filter(|&x| corner[x] == v).collect());
    }

    let q = match p.coords() {
        None => CombPolytope::from_indices(n, vertex_ids, facet_ids, facets, None)?,
        Some(_) => {
            let mut t = Q::new(1.into(), 3.into());
            let mut last = PolytopeError::TruncationCoordinates;
            let mut built = None;
            for _ in 0..8 {
                let coords = cut_points(p, &corner, &pedge_of, &t);
                match CombPolytope::from_indices(
                    n,
                    vertex_ids.clone(),
                    facet_ids.clone(),
                    facets.clone(),
                    Some(coords),
                ) {
                    Ok(q) => {
                        built = Some(q);
                        break;
                    }
                    Err(e) => last = e,
                }
                t /= Q::from_integer(3.into());
            }
            match built {
                Some(q) => q,
                None => {
                    return Err(match last {
                        PolytopeError::Coordinates(_) => PolytopeError::TruncationCoordinates,
                        e => e,
                    })
                }
            }
        }
    };
    Ok(TruncatedPolytope {
        base: p.clone(),
        q,
        corner,
        pedge_of,
        at,
    })
}

fn fresh_section_id(v: &str, taken: &[String]) -> String {
    let mut s = format!("H[{v}]");
    while taken.contains(&s) {
        s.push('\'');
    }
    s
}

fn cut_points(p: &CombPolytope, corner: &[usize], pedge_of: &[usize], t: &Q) -> Vec<Vec<Q>> {
    let coords = p.coords().expect("caller checked coordinates");
    let n = p.dim();
    let dirs: Vec<Vec<Q>> = (0..p.vertex_count())
        .map(|v| {
            p.vertex_facets(v)
                .iter()
                .fold(vec![Q::zero(); n], |acc, &f| {
                    linalg::add(
                        &acc,
                        &p.hyperplane(f)
                            .expect("coordinates imply hyperplanes")
                            .normal,
                    )
                })
        })
        .collect();
    let depth: Vec<Q> = (0..p.vertex_count())
        .map(|v| {
            let top = linalg::dot(&dirs[v], &coords[v]);
            let gap = (0..p.vertex_count())
                .filter(|&u| u != v)
                .map(|u| &top - linalg::dot(&dirs[v], &coords[u]))
                .min()
                .expect("polytopes have several vertices");
            debug_assert!(gap.is_positive());
            t * gap
        })
        .collect();
    (0..corner.len())
        .map(|x| {
            let v = corner[x];
            let (a, b) = p.edges()[pedge_of[x]].ends;
            let w = if a == v { b } else { a };
            let step = linalg::sub(&coords[w], &coords[v]);
            let drop = -linalg::dot(&dirs[v], &step);
            let s = &depth[v] / drop;
            linalg::add(&coords[v], &linalg::scale(&s, &step))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, h_vector};
    use super::*;

    #[test]
    fn truncated_cube() {
        let t = truncate_all_vertices(&catalog::cube()).unwrap();
        assert_eq!(t.q().vertex_count(), 24);
        assert_eq!(t.q().facet_count(), 14);
        assert!(t.q().is_simple());
        assert!(t.q().coords().is_some());
        for v in 0..8 {
            let s = t.section(v).unwrap();
            assert_eq!(s.vertex_count(), 3);
            assert!(s.is_simple());
        }
    }

    #[test]
    fn truncated_pyramid_sections() {
        let p = catalog::square_pyramid();
        let t = truncate_all_vertices(&p).unwrap();
        assert_eq!(t.q().vertex_count(), 16);
        let mut sizes: Vec<usize> = (0..5)
            .map(|v| t.section(v).unwrap().vertex_count())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 3, 3, 4]);
        assert!(t.q().is_simple());
    }

    #[test]
    fn truncated_tetrahedron() {
        let t = truncate_all_vertices(&catalog::simplex(3)).unwrap();
        assert_eq!(t.q().vertex_count(), 12);
        assert_eq!(h_vector(t.q()).unwrap().sum(), 12);
    }

    #[test]
    fn rejects_non_edge_simple_and_polygons() {
        assert_eq!(
            truncate_all_vertices(&catalog::polygon(4)).unwrap_err(),
            PolytopeError::TruncationDim(2)
        );
        // Pyramid over a square pyramid: the edge between the two apices
        // lies in four facets of a 4-polytope.
        let base = catalog::square_pyramid();
        let top = base.vertex_count();
        let mut ids = base.vertex_ids().to_vec();
        ids.push("top".into());
        let mut fids: Vec<String> = base.facet_ids().iter().map(|f| format!("T{f}")).collect();
        fids.push("bottom".into());
        let mut facets: Vec<Vec<usize>> = base
            .facets()
            .iter()
            .map(|f| f.iter().copied().chain([top]).collect())
            .collect();
        facets.push((0..top).collect());
        let p = CombPolytope::from_indices(4, ids, fids, facets, None).unwrap();
        assert!(!p.is_edge_simple());
        assert_eq!(
            truncate_all_vertices(&p).unwrap_err(),
            PolytopeError::NotEdgeSimple
        );
    }

    #[test]
    fn combinatorial_truncation_without_coordinates() {
        let t = truncate_all_vertices(&catalog::dodecahedron()).unwrap();
        assert_eq!(t.q().vertex_count(), 60);
        assert!(t.q().coords().is_none());
    }
}
