//! Combinatorial convex polytopes.
//!
//! A polytope is a facet-vertex incidence with optional rational
//! coordinates. Edges are derived from the incidence: two vertices span an
//! edge when they share at least `n - 1` facets. This is exact for simple
//! and edge-simple polytopes, which are the only inputs admitted here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Q};

pub mod catalog;
mod index;
mod truncate;

pub use index::{index_data, Cell, Functional, IndexData};
pub use truncate::{truncate_all_vertices, TruncatedPolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("dimension {0} is below 2")]
    DimTooSmall(usize),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate facet id {0:?}")]
    DuplicateFacet(String),
    #[error("facet {facet:?} lists unknown vertex {vertex:?}")]
    UnknownVertex { facet: String, vertex: String },
    #[error("vertex {vertex:?} lies in {found} facets, fewer than {needed}")]
    VertexUnderCovered {
        vertex: String,
        found: usize,
        needed: usize,
    },
    #[error("facet {inner:?} is contained in facet {outer:?}")]
    NestedFacets { inner: String, outer: String },
    #[error("vertex {vertex:?} has {found} derived edges, fewer than {needed}")]
    TooFewEdges {
        vertex: String,
        found: usize,
        needed: usize,
    },
    #[error("Euler relation fails: V - E + F = {v} - {e} + {f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("edge graph is disconnected")]
    Disconnected,
    #[error("coordinates: {0}")]
    Coordinates(String),
    #[error("polytope is not simple")]
    NotSimple,
    #[error("polytope is not edge-simple")]
    NotEdgeSimple,
    #[error("expected dimension {expected}, found {found}")]
    WrongDim { expected: usize, found: usize },
    #[error("truncation needs dimension at least 3, found {0}")]
    TruncationDim(usize),
    #[error("polytope has no coordinates")]
    NoCoordinates,
    #[error("no generic functional found after {0} attempts")]
    DegenerateFunctional(usize),
    #[error("functional has dimension {found}, expected {expected}")]
    FunctionalDim { expected: usize, found: usize },
    #[error("could not place truncation hyperplanes")]
    TruncationCoordinates,
}

/// An edge of a polytope: its end vertices and the facets containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRec {
    pub ends: (usize, usize),
    pub facets: Vec<usize>,
}

/// An outward facet inequality `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

#[derive(Clone, Debug)]
pub struct CombPolytope {
    dim: usize,
    vertex_ids: Vec<String>,
    facet_ids: Vec<String>,
    facets: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
    edges: Vec<EdgeRec>,
    coords: Option<Vec<Vec<Q>>>,
    hyperplanes: Option<Vec<Hyperplane>>,
}

impl CombPolytope {
    /// Builds and validates a polytope from labelled incidence data.
    ///
    /// `coords`, when present, is aligned with `vertices`.
    pub fn new(
        dim: usize,
        vertices: Vec<String>,
        facets: Vec<(String, Vec<String>)>,
        coords: Option<Vec<Vec<BigRational>>>,
    ) -> Result<Self, PolytopeError> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(PolytopeError::DuplicateVertex(v.clone()));
            }
        }
        let mut facet_ids = Vec::with_capacity(facets.len());
        let mut sets = Vec::with_capacity(facets.len());
        for (fid, vs) in facets {
            let mut set = Vec::with_capacity(vs.len());
            for v in vs {
                match index.get(&v) {
                    Some(&i) => set.push(i),
                    None => {
                        return Err(PolytopeError::UnknownVertex {
                            facet: fid,
                            vertex: v,
                        })
                    }
                }
            }
            facet_ids.push(fid);
            sets.push(set);
        }
        Self::from_indices(dim, vertices, facet_ids, sets, coords)
    }

    /// Builds and validates a polytope whose facets are given by vertex
    /// indices.
    pub fn from_indices(
        dim: usize,
        vertex_ids: Vec<String>,
        facet_ids: Vec<String>,
        facets: Vec<Vec<usize>>,
        coords: Option<Vec<Vec<BigRational>>>,
    ) -> Result<Self, PolytopeError> {
        if dim < 2 {
            return Err(PolytopeError::DimTooSmall(dim));
        }
        let mut seen = BTreeSet::new();
        for v in &vertex_ids {
            if !seen.insert(v) {
                return Err(PolytopeError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for f in &facet_ids {
            if !seen.insert(f) {
                return Err(PolytopeError::DuplicateFacet(f.clone()));
            }
        }
        assert_eq!(facet_ids.len(), facets.len(), "one id per facet");
        let nv = vertex_ids.len();
        let facets: Vec<Vec<usize>> = facets
            .into_iter()
            .enumerate()
            .map(|(fi, f)| {
                let set: BTreeSet<usize> = f.into_iter().collect();
                if let Some(&bad) = set.iter().find(|&&v| v >= nv) {
                    return Err(PolytopeError::UnknownVertex {
                        facet: facet_ids[fi].clone(),
                        vertex: bad.to_string(),
                    });
                }
                Ok(set.into_iter().collect())
            })
            .collect::<Result<_, _>>()?;

        let mut vertex_facets = vec![Vec::new(); nv];
        for (fi, f) in facets.iter().enumerate() {
            for &v in f {
                vertex_facets[v].push(fi);
            }
        }
        for (v, fs) in vertex_facets.iter().enumerate() {
            if fs.len() < dim {
                return Err(PolytopeError::VertexUnderCovered {
                    vertex: vertex_ids[v].clone(),
                    found: fs.len(),
                    needed: dim,
                });
            }
        }
        for (i, a) in facets.iter().enumerate() {
            for (j, b) in facets.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    return Err(PolytopeError::NestedFacets {
                        inner: facet_ids[i].clone(),
                        outer: facet_ids[j].clone(),
                    });
                }
            }
        }

        let mut edges = Vec::new();
        for u in 0..nv {
            for w in u + 1..nv {
                let shared = intersect(&vertex_facets[u], &vertex_facets[w]);
                if shared.len() + 1 >= dim {
                    edges.push(EdgeRec {
                        ends: (u, w),
                        facets: shared,
                    });
                }
            }
        }
        let mut degree = vec![0usize; nv];
        for e in &edges {
            degree[e.ends.0] += 1;
            degree[e.ends.1] += 1;
        }
        for (v, &d) in degree.iter().enumerate() {
            if d < dim {
                return Err(PolytopeError::TooFewEdges {
                    vertex: vertex_ids[v].clone(),
                    found: d,
                    needed: dim,
                });
            }
        }
        if dim == 3 && nv + facets.len() != edges.len() + 2 {
            return Err(PolytopeError::Euler {
                v: nv,
                e: edges.len(),
                f: facets.len(),
            });
        }
        if !connected(nv, &edges) {
            return Err(PolytopeError::Disconnected);
        }

        let hyperplanes = match &coords {
            Some(c) => Some(facet_hyperplanes(dim, c, &facets, &facet_ids)?),
            None => None,
        };

        Ok(CombPolytope {
            dim,
            vertex_ids,
            facet_ids,
            facets,
            vertex_facets,
            edges,
            coords,
            hyperplanes,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn facet_ids(&self) -> &[String] {
        &self.facet_ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn facet_id(&self, f: usize) -> &str {
        &self.facet_ids[f]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn facet_index(&self, id: &str) -> Option<usize> {
        self.facet_ids.iter().position(|f| f == id)
    }

    /// Sorted vertex indices of facet `f`.
    pub fn facet(&self, f: usize) -> &[usize] {
        &self.facets[f]
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Sorted facet indices containing vertex `v`.
    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    pub fn edges(&self) -> &[EdgeRec] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, w: usize) -> Option<usize> {
        let key = (u.min(w), u.max(w));
        self.edges.iter().position(|e| e.ends == key)
    }

    /// Edges incident to `v`, as indices into [`Self::edges`].
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].ends.0 == v || self.edges[i].ends.1 == v)
            .collect()
    }

    pub fn coords(&self) -> Option<&[Vec<BigRational>]> {
        self.coords.as_deref()
    }

    pub fn hyperplane(&self, f: usize) -> Option<&Hyperplane> {
        self.hyperplanes.as_ref().map(|h| &h[f])
    }

    /// Every vertex lies in exactly `n` facets.
    pub fn is_simple(&self) -> bool {
        self.vertex_facets.iter().all(|fs| fs.len() == self.dim)
    }

    /// Every edge lies in exactly `n - 1` facets.
    pub fn is_edge_simple(&self) -> bool {
        self.edges.iter().all(|e| e.facets.len() + 1 == self.dim)
    }

    /// The same polytope without coordinates.
    pub fn without_coords(&self) -> CombPolytope {
        CombPolytope {
            coords: None,
            hyperplanes: None,
            ..self.clone()
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn connected(nv: usize, edges: &[EdgeRec]) -> bool {
    if nv == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); nv];
    for e in edges {
        adj[e.ends.0].push(e.ends.1);
        adj[e.ends.1].push(e.ends.0);
    }
    let mut seen = vec![false; nv];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn facet_hyperplanes(
    dim: usize,
    coords: &[Vec<Q>],
    facets: &[Vec<usize>],
    facet_ids: &[String],
) -> Result<Vec<Hyperplane>, PolytopeError> {
    if let Some(p) = coords.iter().find(|p| p.len() != dim) {
        return Err(PolytopeError::Coordinates(format!(
            "point of dimension {} in a {dim}-polytope",
            p.len()
        )));
    }
    let distinct: BTreeSet<&Vec<Q>> = coords.iter().collect();
    if distinct.len() != coords.len() {
        return Err(PolytopeError::Coordinates("repeated point".into()));
    }
    facets
        .iter()
        .enumerate()
        .map(|(fi, f)| {
            let rows: Vec<Vec<Q>> = f
                .iter()
                .map(|&v| {
                    let mut r = coords[v].clone();
                    r.push(linalg::q(1));
                    r
                })
                .collect();
            let ns = linalg::nullspace(&rows, dim + 1);
            if ns.len() != 1 {
                return Err(PolytopeError::Coordinates(format!(
                    "facet {:?} does not span a hyperplane",
                    facet_ids[fi]
                )));
            }
            let mut normal = ns[0][..dim].to_vec();
            let mut offset = -ns[0][dim].clone();
            let mut side = None;
            for (v, p) in coords.iter().enumerate() {
                if f.binary_search(&v).is_ok() {
                    continue;
                }
                let s = linalg::dot(&normal, p) - &offset;
                if s.is_zero() {
                    return Err(PolytopeError::Coordinates(format!(
                        "vertex {v} lies on the hyperplane of facet {:?}",
                        facet_ids[fi]
                    )));
                }
                let pos = s.is_positive();
                match side {
                    None => side = Some(pos),
                    Some(prev) if prev != pos => {
                        return Err(PolytopeError::Coordinates(format!(
                            "facet {:?} is not supporting",
                            facet_ids[fi]
                        )))
                    }
                    _ => {}
                }
            }
            if side == Some(true) {
                normal = normal.into_iter().map(|x| -x).collect();
                offset = -offset;
            }
            Ok(Hyperplane { normal, offset })
        })
        .collect()
}

/// The h-vector of a simple polytope, `h_0, ..., h_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Number of faces of each codimension `0..=n` of a simple polytope.
///
/// In a simple polytope every subset of the facets at a vertex cuts out a
/// face, and distinct subsets give distinct faces.
pub fn face_counts_by_codim(p: &CombPolytope) -> Result<Vec<u64>, PolytopeError> {
    if !p.is_simple() {
        return Err(PolytopeError::NotSimple);
    }
    let n = p.dim();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in 0..p.vertex_count() {
        let fs = p.vertex_facets(v);
        for mask in 0u32..(1 << n) {
            let sub: Vec<usize> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| fs[i])
                .collect();
            faces.insert(sub);
        }
    }
    let mut counts = vec![0u64; n + 1];
    for f in faces {
        counts[f.len()] += 1;
    }
    Ok(counts)
}

/// `sum h_i t^i = sum_i f_{i-1} (t - 1)^(n - i)`, where `f_{i-1}` counts
/// faces of codimension `i`.
pub fn h_vector(p: &CombPolytope) -> Result<HVector, PolytopeError> {
    let counts = face_counts_by_codim(p)?;
    let n = p.dim();
    let mut h = vec![0i128; n + 1];
    for (i, &f) in counts.iter().enumerate() {
        // Expand f * (t - 1)^(n - i).
        let e = n - i;
        let mut binom: i128 = 1;
        for (k, hk) in h.iter_mut().enumerate().take(e + 1) {
            let sign = if (e - k).is_multiple_of(2) { 1 } else { -1 };
            *hk += sign * binom * f as i128;
            binom = binom * (e - k) as i128 / (k + 1) as i128;
        }
    }
    Ok(HVector(
        h.into_iter()
            .map(|x| u64::try_from(x).expect("h-vector of a simple polytope is nonnegative"))
            .collect(),
    ))
}

fn fresh(name: &str, taken: &[String]) -> String {
    let mut s = name.to_string();
    while taken.contains(&s) {
        s.push('\'');
    }
    s
}

/// The cone over a simple polytope: one facet `C{F}` per facet `F` plus the
/// base. The result is edge-simple.
pub fn cone(p: &CombPolytope) -> Result<CombPolytope, PolytopeError> {
    if !p.is_simple() {
        return Err(PolytopeError::NotSimple);
    }
    let n = p.dim();
    let apex_id = fresh("apex", p.vertex_ids());
    let apex = p.vertex_count();
    let mut vertices = p.vertex_ids().to_vec();
    vertices.push(apex_id);
    let mut facet_ids: Vec<String> = p.facet_ids().iter().map(|f| format!("C{f}")).collect();
    let base_id = fresh("base", &facet_ids);
    facet_ids.push(base_id);
    let mut facets: Vec<Vec<usize>> = p
        .facets()
        .iter()
        .map(|f| {
            let mut g = f.clone();
            g.push(apex);
            g
        })
        .collect();
    facets.push((0..p.vertex_count()).collect());
    let coords = p.coords().map(|c| {
        let refs: Vec<&Vec<Q>> = c.iter().collect();
        let mid = linalg::centroid(&refs);
        let mut out: Vec<Vec<Q>> = c
            .iter()
            .map(|x| {
                let mut y = x.clone();
                y.push(linalg::q(0));
                y
            })
            .collect();
        let mut top = mid;
        top.push(linalg::q(1));
        out.push(top);
        out
    });
    CombPolytope::from_indices(n + 1, vertices, facet_ids, facets, coords)
}

/// The suspension of a polygon: two apices `a`, `b` and facets `{F}_a`,
/// `{F}_b` for every edge `F`.
pub fn suspension(p: &CombPolytope) -> Result<CombPolytope, PolytopeError> {
    if p.dim() != 2 {
        return Err(PolytopeError::WrongDim {
            expected: 2,
            found: p.dim(),
        });
    }
    let m = p.vertex_count();
    let a_id = fresh("a", p.vertex_ids());
    let mut vertices = p.vertex_ids().to_vec();
    vertices.push(a_id);
    let b_id = fresh("b", &vertices);
    vertices.push(b_id);
    let mut facet_ids = Vec::new();
    let mut facets = Vec::new();
    for (suffix, apex) in [("a", m), ("b", m + 1)] {
        for (fi, f) in p.facets().iter().enumerate() {
            facet_ids.push(format!("{}_{suffix}", p.facet_id(fi)));
            let mut g = f.clone();
            g.push(apex);
            facets.push(g);
        }
    }
    let coords = p.coords().map(|c| {
        let refs: Vec<&Vec<Q>> = c.iter().collect();
        let mid = linalg::centroid(&refs);
        let mut out: Vec<Vec<Q>> = c
            .iter()
            .map(|x| {
                let mut y = x.clone();
                y.push(linalg::q(0));
                y
            })
            .collect();
        for h in [1, -1] {
            let mut apex = mid.clone();
            apex.push(linalg::q(h));
            out.push(apex);
        }
        out
    });
    CombPolytope::from_indices(3, vertices, facet_ids, facets, coords)
}

/// The dual of a simple 3-polytope. Vertices and facets swap roles and keep
/// their ids; coordinates are the polar set about the vertex centroid.
pub fn dual3(p: &CombPolytope) -> Result<CombPolytope, PolytopeError> {
    if p.dim() != 3 {
        return Err(PolytopeError::WrongDim {
            expected: 3,
            found: p.dim(),
        });
    }
    if !p.is_simple() {
        return Err(PolytopeError::NotSimple);
    }
    let facets: Vec<Vec<usize>> = (0..p.vertex_count())
        .map(|v| p.vertex_facets(v).to_vec())
        .collect();
    let coords = match (p.coords(), &p.hyperplanes) {
        (Some(c), Some(hs)) => {
            let refs: Vec<&Vec<Q>> = c.iter().collect();
            let mid = linalg::centroid(&refs);
            Some(
                hs.iter()
                    .map(|h| {
                        let beta = &h.offset - linalg::dot(&h.normal, &mid);
                        h.normal.iter().map(|x| x / &beta).collect()
                    })
                    .collect(),
            )
        }
        _ => None,
    };
    CombPolytope::from_indices(
        3,
        p.facet_ids().to_vec(),
        p.vertex_ids().to_vec(),
        facets,
        coords,
    )
}
