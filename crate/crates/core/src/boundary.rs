//! Manifolds with quasitoric boundary.
//!
//! Truncating every vertex of an edge-simple polytope `P` with an isotropy
//! function gives a manifold `W` whose boundary is the disjoint union of the
//! quasitoric manifolds over the sections. This module models `W`
//! combinatorially: its boundary pieces, the ranks of `H_*(W, ∂W)` and the
//! Euler characteristic.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::charmap::{
    self, CharacteristicMap, CharmapError, IsotropyMap, Mod2Map, ValidationReport,
};
use crate::cobord4::{self, CobClass, CobordError, Polygon4, PolygonReport};
use crate::intlat::{canonical_triangle_class, Sign, SignVec, TriangleClass, TriangleData};
use crate::linalg;
use crate::polytope::{
    h_vector, index_data, truncate_all_vertices, CombPolytope, Functional, IndexData,
    PolytopeError, TruncatedPolytope,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("dimension {0} bases need the experimental flag")]
    UnsupportedDim(usize),
    #[error("isotropy function is not valid: {0}")]
    InvalidIsotropy(ValidationReport),
    #[error("mod-2 isotropy function is not valid: {0}")]
    InvalidMod2(ValidationReport),
    #[error("facet cycles cannot be oriented consistently")]
    NonOrientable,
    #[error("piece is not a valid polygon: {0}")]
    InvalidPiece(PolygonReport),
    #[error("piece is not a polygon")]
    NotPolygon,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Charmap(#[from] CharmapError),
    #[error(transparent)]
    Cobord(#[from] CobordError),
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub functional: Functional,
    /// Admit bases of dimension above 3.
    pub experimental: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            functional: Functional::Seeded(0),
            experimental: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryModel {
    trunc: TruncatedPolytope,
    iso: IsotropyMap,
    pieces: Vec<CharacteristicMap>,
    rotations: Option<Vec<Vec<usize>>>,
    index: IndexData,
}

impl BoundaryModel {
    pub fn trunc(&self) -> &TruncatedPolytope {
        &self.trunc
    }

    pub fn iso(&self) -> &IsotropyMap {
        &self.iso
    }

    /// The characteristic map over the section at each base vertex.
    pub fn pieces(&self) -> &[CharacteristicMap] {
        &self.pieces
    }

    pub fn index(&self) -> &IndexData {
        &self.index
    }

    /// Base facets around vertex `v` in counterclockwise order seen from
    /// outside (3-dimensional bases only).
    pub fn rotation(&self, v: usize) -> Option<&[usize]> {
        self.rotations.as_ref().map(|r| r[v].as_slice())
    }

    /// The section's vectors in rotation order.
    pub fn section_cycle(&self, v: usize) -> Option<Vec<SignVec>> {
        self.rotation(v)
            .map(|r| r.iter().map(|&f| self.iso.value(f).clone()).collect())
    }
}

pub fn build_boundary_model(
    iso: &IsotropyMap,
    opts: &BuildOptions,
) -> Result<BoundaryModel, BoundaryError> {
    let p = iso.polytope();
    let n = p.dim();
    if n != 3 && !(opts.experimental && n > 3) {
        return Err(BoundaryError::UnsupportedDim(n));
    }
    if !p.is_edge_simple() {
        return Err(PolytopeError::NotEdgeSimple.into());
    }
    let report = charmap::validate_isotropy(iso);
    if !report.is_valid() {
        return Err(BoundaryError::InvalidIsotropy(report));
    }
    let trunc = truncate_all_vertices(p)?;
    let pieces = (0..p.vertex_count())
        .map(|v| charmap::restrict_to_section(&trunc, iso, v))
        .collect::<Result<_, _>>()?;
    let index = index_data(&trunc, &opts.functional)?;
    let rotations = if n == 3 {
        Some(vertex_rotations(p)?)
    } else {
        None
    };
    Ok(BoundaryModel {
        trunc,
        iso: iso.clone(),
        pieces,
        rotations,
        index,
    })
}

/// Vertex cycle of every facet of a 3-polytope, oriented consistently, and
/// counterclockwise from outside when coordinates are present.
pub fn oriented_facet_cycles(p: &CombPolytope) -> Result<Vec<Vec<usize>>, BoundaryError> {
    if p.dim() != 3 {
        return Err(PolytopeError::WrongDim {
            expected: 3,
            found: p.dim(),
        }
        .into());
    }
    let mut cycles: Vec<Vec<usize>> = (0..p.facet_count()).map(|f| facet_cycle(p, f)).collect();
    let mut done = vec![false; p.facet_count()];
    let mut queue = VecDeque::from([0]);
    done[0] = true;
    while let Some(f) = queue.pop_front() {
        let cyc = cycles[f].clone();
        for i in 0..cyc.len() {
            let (u, w) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            let e = p
                .edge_between(u, w)
                .expect("consecutive facet vertices share an edge");
            let g = *p.edges()[e]
                .facets
                .iter()
                .find(|&&g| g != f)
                .ok_or(BoundaryError::NonOrientable)?;
            let forward = has_step(&cycles[g], u, w);
            if done[g] {
                if forward {
                    return Err(BoundaryError::NonOrientable);
                }
            } else {
                if forward {
                    cycles[g].reverse();
                }
                done[g] = true;
                queue.push_back(g);
            }
        }
    }
    if let (Some(c), Some(h)) = (p.coords(), p.hyperplane(0)) {
        let cyc = &cycles[0];
        let (u, v, w) = (&c[cyc[0]], &c[cyc[1]], &c[cyc[2]]);
        let turn = linalg::cross(&linalg::sub(v, u), &linalg::sub(w, v));
        if linalg::dot(&turn, &h.normal).is_negative() {
            for cyc in cycles.iter_mut() {
                cyc.reverse();
            }
        }
    }
    Ok(cycles)
}

fn has_step(cycle: &[usize], u: usize, w: usize) -> bool {
    (0..cycle.len()).any(|i| cycle[i] == u && cycle[(i + 1) % cycle.len()] == w)
}

fn facet_cycle(p: &CombPolytope, f: usize) -> Vec<usize> {
    let members = p.facet(f);
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in p.edges() {
        if e.facets.binary_search(&f).is_ok() {
            adj.entry(e.ends.0).or_default().push(e.ends.1);
            adj.entry(e.ends.1).or_default().push(e.ends.0);
        }
    }
    let mut cycle = vec![members[0]];
    let mut prev = usize::MAX;
    let mut cur = members[0];
    loop {
        let next = *adj[&cur]
            .iter()
            .find(|&&x| x != prev)
            .expect("facet boundary is a cycle");
        if next == members[0] {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

/// Facets around each vertex of a 3-polytope: from facet `F` the rotation
/// moves to the other facet on the edge from `v` to its predecessor in `F`.
fn vertex_rotations(p: &CombPolytope) -> Result<Vec<Vec<usize>>, BoundaryError> {
    let cycles = oriented_facet_cycles(p)?;
    (0..p.vertex_count())
        .map(|v| {
            let start = p.vertex_facets(v)[0];
            let mut order = vec![start];
            let mut f = start;
            loop {
                let cyc = &cycles[f];
                let i = cyc
                    .iter()
                    .position(|&x| x == v)
                    .expect("vertex lies on its facets");
                let pred = cyc[(i + cyc.len() - 1) % cyc.len()];
                let e = p
                    .edge_between(v, pred)
                    .expect("facet cycle steps are edges");
                f = *p.edges()[e]
                    .facets
                    .iter()
                    .find(|&&g| g != f)
                    .ok_or(BoundaryError::NonOrientable)?;
                if f == start {
                    break;
                }
                order.push(f);
                if order.len() > p.vertex_facets(v).len() {
                    return Err(BoundaryError::NonOrientable);
                }
            }
            Ok(order)
        })
        .collect()
}

/// Ranks of the relative homology `H_*(W, ∂W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    ranks: BTreeMap<usize, usize>,
}

impl HomologyProfile {
    /// Rank 1 in degree 0 and `|I_j|` in degree `2j - 1`.
    pub fn from_index(index: &IndexData) -> Self {
        let mut ranks = BTreeMap::from([(0, 1)]);
        for (&j, cells) in index.cells() {
            if !cells.is_empty() {
                ranks.insert(2 * j - 1, cells.len());
            }
        }
        HomologyProfile { ranks }
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero ranks by degree.
    pub fn ranks(&self) -> &BTreeMap<usize, usize> {
        &self.ranks
    }
}

pub fn homology_relative(b: &BoundaryModel) -> HomologyProfile {
    HomologyProfile::from_index(&b.index)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `Σh - Σ_{j=1..n} |I_j|`.
    pub chi: i64,
    /// Sum of the h-vector entries over all sections, which is `χ(∂W)`.
    pub section_h_total: u64,
    pub cell_counts: Vec<usize>,
    /// `Σh - Σ_{j=1..n-1} |I_j|`, the sum stopping one term early.
    pub chi_without_top_cells: i64,
    /// `χ(∂W) / 2`, which must equal `chi`.
    pub half_boundary: i64,
    pub notes: Vec<String>,
}

pub fn euler_report(b: &BoundaryModel) -> Result<EulerReport, BoundaryError> {
    let mut total = 0u64;
    for piece in &b.pieces {
        total += h_vector(piece.polytope())?.sum();
    }
    let counts = b.index.cell_counts();
    let all: i64 = counts.iter().map(|&c| c as i64).sum();
    let top = *counts.last().unwrap_or(&0) as i64;
    let chi = total as i64 - all;
    let mut notes = Vec::new();
    if !total.is_multiple_of(2) {
        notes.push("boundary Euler characteristic is odd".to_string());
    }
    notes.push(format!(
        "dropping the top cell count gives {}, one more than the cell count",
        chi + top
    ));
    Ok(EulerReport {
        chi,
        section_h_total: total,
        cell_counts: counts,
        chi_without_top_cells: chi + top,
        half_boundary: total as i64 / 2,
        notes,
    })
}

pub fn euler_characteristic(b: &BoundaryModel) -> Result<i64, BoundaryError> {
    Ok(euler_report(b)?.chi)
}

/// What a boundary piece over a polygon is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceId {
    Triangle { class: TriangleClass, sign: Sign },
    Hirzebruch { k: num_bigint::BigInt },
    ProductOfSpheres,
    Polygon { m: usize, class: CobClass },
    Unrecognized,
}

impl PieceId {
    /// The cobordism class of the piece, if it is a classified polygon.
    pub fn class(&self) -> Option<CobClass> {
        match self {
            PieceId::Triangle { class, sign } => Some(CobClass::unit(class.clone(), *sign)),
            PieceId::Hirzebruch { .. } | PieceId::ProductOfSpheres => Some(CobClass::zero()),
            PieceId::Polygon { class, .. } => Some(class.clone()),
            PieceId::Unrecognized => None,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            PieceId::Triangle { sign, .. } => Some(*sign),
            _ => None,
        }
    }
}

/// Identifies the manifold over a polygon from its cyclic vector list.
pub fn identify_cycle(vecs: &[SignVec]) -> Result<PieceId, BoundaryError> {
    let p = Polygon4::new(vecs.to_vec())?;
    let report = cobord4::validate_polygon(&p);
    if !report.is_valid() {
        return Err(BoundaryError::InvalidPiece(report));
    }
    Ok(match p.m() {
        3 => {
            let t = TriangleData::new(vecs[0].clone(), vecs[1].clone(), vecs[2].clone())
                .map_err(CobordError::from)?;
            let (class, sign) = canonical_triangle_class(&t).map_err(CobordError::from)?;
            PieceId::Triangle { class, sign }
        }
        4 => match cobord4::is_hirzebruch(&p) {
            Some(k) if k.is_zero() => PieceId::ProductOfSpheres,
            Some(k) => PieceId::Hirzebruch { k },
            None => PieceId::Polygon {
                m: 4,
                class: cobord4::cobordism_class(&p)?.0,
            },
        },
        m => PieceId::Polygon {
            m,
            class: cobord4::cobordism_class(&p)?.0,
        },
    })
}

/// Facets of a polygon in cyclic order: from facet 0 towards its
/// lower-numbered neighbour.
pub fn polygon_facet_cycle(p: &CombPolytope) -> Result<Vec<usize>, BoundaryError> {
    if p.dim() != 2 {
        return Err(BoundaryError::NotPolygon);
    }
    let nf = p.facet_count();
    let neighbours = |f: usize| -> Vec<usize> {
        (0..nf)
            .filter(|&g| g != f && !crate::polytope::intersect(p.facet(f), p.facet(g)).is_empty())
            .collect()
    };
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = *neighbours(0)
        .iter()
        .min()
        .ok_or(BoundaryError::NotPolygon)?;
    while cur != 0 {
        order.push(cur);
        let next = *neighbours(cur)
            .iter()
            .find(|&&g| g != prev)
            .ok_or(BoundaryError::NotPolygon)?;
        prev = cur;
        cur = next;
        if order.len() > nf {
            return Err(BoundaryError::NotPolygon);
        }
    }
    Ok(order)
}

/// Identifies a characteristic map over a polygon, reading its facets in
/// the order of [`polygon_facet_cycle`].
pub fn identify_piece(c: &CharacteristicMap) -> Result<PieceId, BoundaryError> {
    let order = polygon_facet_cycle(c.polytope())?;
    let vecs: Vec<SignVec> = order.iter().map(|&f| c.value(f).clone()).collect();
    identify_cycle(&vecs)
}

/// Every boundary piece, read in the rotation order at its vertex.
pub fn signed_piece_classes(b: &BoundaryModel) -> Result<Vec<(usize, PieceId)>, BoundaryError> {
    (0..b.pieces.len())
        .map(|v| match b.section_cycle(v) {
            Some(cycle) => Ok((v, identify_cycle(&cycle)?)),
            None => Ok((v, PieceId::Unrecognized)),
        })
        .collect()
}

/// Sum of the classes of all boundary pieces.
pub fn boundary_class(pieces: &[(usize, PieceId)]) -> Option<CobClass> {
    pieces.iter().map(|(_, p)| p.class()).sum()
}

/// The mod-2 restriction to every section.
pub fn build_small_cover_boundary(m2: &Mod2Map) -> Result<Vec<(usize, Mod2Map)>, BoundaryError> {
    let report = charmap::validate_mod2(m2);
    if !report.is_valid() {
        return Err(BoundaryError::InvalidMod2(report));
    }
    let p = m2.polytope();
    let t = truncate_all_vertices(p)?;
    (0..p.vertex_count())
        .map(|v| {
            let section = t.section(v)?;
            let assign = t
                .section_facets(v)
                .iter()
                .map(|&f| m2.assign()[f].clone())
                .collect();
            Ok((v, Mod2Map::characteristic(section, assign)?))
        })
        .collect()
}
