//! Characteristic, isotropy and mod-2 isotropy functions.
//!
//! A characteristic function on a simple `n`-polytope assigns classes in
//! `Z^n/±` to facets so that the vectors at every face span a direct
//! summand. An isotropy function on an edge-simple `n`-polytope assigns
//! classes in `Z^(n-1)/±` so that the vectors along every edge form a basis.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::intlat::{self, IntVec, SignVec};
use crate::polytope::{CombPolytope, PolytopeError, TruncatedPolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharmapError {
    #[error("expected {expected} facet values, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("value for facet {facet:?} has dimension {found}, expected {expected}")]
    WrongDim {
        facet: String,
        expected: usize,
        found: usize,
    },
    #[error("no value for facet {0:?}")]
    MissingFacet(String),
    #[error("value given for unknown facet {0:?}")]
    UnknownFacet(String),
    #[error("map fails validation: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// One failed condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSimple,
    NotEdgeSimple,
    /// The vectors on this set of facets (a face) are not a direct summand.
    Face {
        facets: Vec<usize>,
    },
    /// The vectors on the facets along this edge are not a basis.
    Edge {
        ends: (usize, usize),
        facets: Vec<usize>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} checks, {} violations",
            self.checked,
            self.violations.len()
        )
    }
}

fn check_assignment<T>(
    p: &CombPolytope,
    assign: &[T],
    dim: usize,
    len: impl Fn(&T) -> usize,
) -> Result<(), CharmapError> {
    if assign.len() != p.facet_count() {
        return Err(CharmapError::WrongCount {
            expected: p.facet_count(),
            found: assign.len(),
        });
    }
    for (f, v) in assign.iter().enumerate() {
        if len(v) != dim {
            return Err(CharmapError::WrongDim {
                facet: p.facet_id(f).to_string(),
                expected: dim,
                found: len(v),
            });
        }
    }
    Ok(())
}

fn order_by_facets<T: Clone>(
    p: &CombPolytope,
    by_id: &BTreeMap<String, T>,
) -> Result<Vec<T>, CharmapError> {
    if let Some(k) = by_id.keys().find(|k| p.facet_index(k).is_none()) {
        return Err(CharmapError::UnknownFacet(k.clone()));
    }
    p.facet_ids()
        .iter()
        .map(|f| {
            by_id
                .get(f)
                .cloned()
                .ok_or_else(|| CharmapError::MissingFacet(f.clone()))
        })
        .collect()
}

/// Facet values in `Z^n/±` on an `n`-polytope.
#[derive(Clone, Debug)]
pub struct CharacteristicMap {
    polytope: CombPolytope,
    assign: Vec<SignVec>,
}

impl CharacteristicMap {
    /// Pairs a polytope with one value per facet, in facet order. Only
    /// shapes are checked here; see [`validate_characteristic`].
    pub fn new(polytope: CombPolytope, assign: Vec<SignVec>) -> Result<Self, CharmapError> {
        check_assignment(&polytope, &assign, polytope.dim(), SignVec::dim)?;
        Ok(CharacteristicMap { polytope, assign })
    }

    pub fn from_ids(
        polytope: CombPolytope,
        by_id: &BTreeMap<String, SignVec>,
    ) -> Result<Self, CharmapError> {
        let assign = order_by_facets(&polytope, by_id)?;
        Self::new(polytope, assign)
    }

    pub fn polytope(&self) -> &CombPolytope {
        &self.polytope
    }

    pub fn assign(&self) -> &[SignVec] {
        &self.assign
    }

    pub fn value(&self, f: usize) -> &SignVec {
        &self.assign[f]
    }
}

/// Facet values in `Z^(n-1)/±` on an edge-simple `n`-polytope.
#[derive(Clone, Debug)]
pub struct IsotropyMap {
    polytope: CombPolytope,
    assign: Vec<SignVec>,
}

impl IsotropyMap {
    pub fn new(polytope: CombPolytope, assign: Vec<SignVec>) -> Result<Self, CharmapError> {
        check_assignment(&polytope, &assign, polytope.dim() - 1, SignVec::dim)?;
        Ok(IsotropyMap { polytope, assign })
    }

    pub fn from_ids(
        polytope: CombPolytope,
        by_id: &BTreeMap<String, SignVec>,
    ) -> Result<Self, CharmapError> {
        let assign = order_by_facets(&polytope, by_id)?;
        Self::new(polytope, assign)
    }

    pub fn polytope(&self) -> &CombPolytope {
        &self.polytope
    }

    pub fn assign(&self) -> &[SignVec] {
        &self.assign
    }

    pub fn value(&self, f: usize) -> &SignVec {
        &self.assign[f]
    }

    /// Componentwise reduction modulo 2.
    pub fn reduce_mod2(&self) -> Mod2Map {
        let assign = self
            .assign
            .iter()
            .map(|v| v.rep().entries().iter().map(|x| x.is_odd()).collect())
            .collect();
        Mod2Map {
            polytope: self.polytope.clone(),
            assign,
        }
    }

    /// Applies an integer matrix (by rows) to every value.
    pub fn transform(&self, rows: &[Vec<BigInt>]) -> Result<IsotropyMap, CharmapError> {
        let assign = self
            .assign
            .iter()
            .map(|v| {
                let image: Vec<BigInt> = rows
                    .iter()
                    .map(|r| r.iter().zip(v.rep().entries()).map(|(a, b)| a * b).sum())
                    .collect();
                SignVec::new(IntVec::new(image))
                    .map_err(|_| CharmapError::Invalid(ValidationReport::default()))
            })
            .collect::<Result<_, _>>()?;
        IsotropyMap::new(self.polytope.clone(), assign)
    }
}

/// Facet values over `F_2` on an `n`-polytope.
///
/// Values in `F_2^(n-1)` on an edge-simple polytope are a mod-2 isotropy
/// function. Values in `F_2^n` on a simple polytope are a mod-2
/// characteristic function, as on the sections of a truncation.
#[derive(Clone, Debug)]
pub struct Mod2Map {
    polytope: CombPolytope,
    assign: Vec<Vec<bool>>,
}

impl Mod2Map {
    /// A mod-2 isotropy function: values in `F_2^(n-1)`.
    pub fn new(polytope: CombPolytope, assign: Vec<Vec<bool>>) -> Result<Self, CharmapError> {
        check_assignment(&polytope, &assign, polytope.dim() - 1, Vec::len)?;
        Ok(Mod2Map { polytope, assign })
    }

    /// A mod-2 characteristic function: values in `F_2^n`.
    pub fn characteristic(
        polytope: CombPolytope,
        assign: Vec<Vec<bool>>,
    ) -> Result<Self, CharmapError> {
        check_assignment(&polytope, &assign, polytope.dim(), Vec::len)?;
        Ok(Mod2Map { polytope, assign })
    }

    pub fn is_characteristic(&self) -> bool {
        self.assign
            .first()
            .is_some_and(|v| v.len() == self.polytope.dim())
    }

    pub fn from_ids(
        polytope: CombPolytope,
        by_id: &BTreeMap<String, Vec<bool>>,
    ) -> Result<Self, CharmapError> {
        let assign = order_by_facets(&polytope, by_id)?;
        Self::new(polytope, assign)
    }

    pub fn polytope(&self) -> &CombPolytope {
        &self.polytope
    }

    pub fn assign(&self) -> &[Vec<bool>] {
        &self.assign
    }
}

/// Checks the direct-summand condition on every face, enumerated as the
/// distinct nonempty subsets of the facets at each vertex.
pub fn validate_characteristic(c: &CharacteristicMap) -> ValidationReport {
    let p = &c.polytope;
    let mut report = ValidationReport::default();
    if !p.is_simple() {
        report.violations.push(Violation::NotSimple);
        return report;
    }
    let n = p.dim();
    let mut faces = BTreeSet::new();
    for v in 0..p.vertex_count() {
        let fs = p.vertex_facets(v);
        for mask in 1u32..(1 << fs.len()) {
            let sub: Vec<usize> = (0..fs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| fs[i])
                .collect();
            faces.insert(sub);
        }
    }
    for face in faces {
        report.checked += 1;
        let vs: Vec<SignVec> = face.iter().map(|&f| c.assign[f].clone()).collect();
        if !intlat::is_direct_summand(&vs, n).expect("dimensions checked on construction") {
            report.violations.push(Violation::Face { facets: face });
        }
    }
    report
}

/// Checks that the values along every edge form a basis of `Z^(n-1)`.
pub fn validate_isotropy(m: &IsotropyMap) -> ValidationReport {
    let p = &m.polytope;
    let mut report = ValidationReport::default();
    if !p.is_edge_simple() {
        report.violations.push(Violation::NotEdgeSimple);
        return report;
    }
    for e in p.edges() {
        report.checked += 1;
        let vs: Vec<SignVec> = e.facets.iter().map(|&f| m.assign[f].clone()).collect();
        if !intlat::is_basis(&vs, p.dim() - 1) {
            report.violations.push(Violation::Edge {
                ends: e.ends,
                facets: e.facets.clone(),
            });
        }
    }
    report
}

fn pack(v: &[bool]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (u64::from(b) << i))
}

/// Rank over `F_2` of bit-packed vectors.
fn rank_f2(vs: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn edge_is_f2_basis(vs: &[u64], d: usize) -> bool {
    vs.len() == d && rank_f2(vs) == d
}

/// Checks that the values along every edge form a basis of `F_2^(n-1)`,
/// or for a characteristic function, that the values at every vertex form a
/// basis of `F_2^n`.
pub fn validate_mod2(m: &Mod2Map) -> ValidationReport {
    let p = &m.polytope;
    let mut report = ValidationReport::default();
    if m.is_characteristic() {
        if !p.is_simple() {
            report.violations.push(Violation::NotSimple);
            return report;
        }
        let packed: Vec<u64> = m.assign.iter().map(|v| pack(v)).collect();
        for v in 0..p.vertex_count() {
            report.checked += 1;
            let fs = p.vertex_facets(v);
            let vs: Vec<u64> = fs.iter().map(|&f| packed[f]).collect();
            if !edge_is_f2_basis(&vs, p.dim()) {
                report.violations.push(Violation::Face {
                    facets: fs.to_vec(),
                });
            }
        }
        return report;
    }
    if !p.is_edge_simple() {
        report.violations.push(Violation::NotEdgeSimple);
        return report;
    }
    let packed: Vec<u64> = m.assign.iter().map(|v| pack(v)).collect();
    for e in p.edges() {
        report.checked += 1;
        let vs: Vec<u64> = e.facets.iter().map(|&f| packed[f]).collect();
        if !edge_is_f2_basis(&vs, p.dim() - 1) {
            report.violations.push(Violation::Edge {
                ends: e.ends,
                facets: e.facets.clone(),
            });
        }
    }
    report
}

fn require_valid(m: &IsotropyMap) -> Result<(), CharmapError> {
    let report = validate_isotropy(m);
    if report.is_valid() {
        Ok(())
    } else {
        Err(CharmapError::Invalid(report))
    }
}

/// The characteristic map on the section at base vertex `v`: each section
/// facet keeps the value of the base facet it comes from.
pub fn restrict_to_section(
    t: &TruncatedPolytope,
    m: &IsotropyMap,
    v: usize,
) -> Result<CharacteristicMap, CharmapError> {
    require_valid(m)?;
    let section = t.section(v)?;
    let assign = t
        .section_facets(v)
        .iter()
        .map(|&f| m.assign[f].clone())
        .collect();
    CharacteristicMap::new(section, assign)
}

/// Extends an isotropy function to a characteristic function on `Q`:
/// truncated facets get `(lambda, 0)` and section facets get `(0, ..., 0, 1)`.
pub fn extend_to_characteristic(
    t: &TruncatedPolytope,
    m: &IsotropyMap,
) -> Result<CharacteristicMap, CharmapError> {
    require_valid(m)?;
    let n = t.base().dim();
    let q = t.q();
    let assign = (0..q.facet_count())
        .map(|f| {
            let v = if t.is_new_facet(f) {
                IntVec::unit(n, n - 1)
            } else {
                m.assign[f].rep().extended(BigInt::zero())
            };
            SignVec::new(v).expect("extended values are nonzero")
        })
        .collect();
    CharacteristicMap::new(q.clone(), assign)
}

/// Outcome of [`search_isotropy`].
#[derive(Clone, Debug)]
pub enum IsotropySearch {
    Found(IsotropyMap),
    /// No mod-2 isotropy function exists, hence no integral one.
    Mod2Obstruction,
    /// No isotropy function with entries bounded by this value.
    NoneWithinBound(u64),
}

/// Facets in breadth-first order over facet adjacency, so that the
/// backtracking searches meet edge constraints early.
fn facet_order(p: &CombPolytope) -> Vec<usize> {
    let nf = p.facet_count();
    let mut adj = vec![BTreeSet::new(); nf];
    for e in p.edges() {
        for &a in &e.facets {
            for &b in &e.facets {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    let mut order = Vec::with_capacity(nf);
    let mut seen = vec![false; nf];
    for s in 0..nf {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &g in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
    }
    order
}

/// For each position in `order`, the edges whose facets are all assigned
/// once that position is filled.
fn edges_closing_at(p: &CombPolytope, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; p.facet_count()];
    for (i, &f) in order.iter().enumerate() {
        pos[f] = i;
    }
    let mut closing = vec![Vec::new(); order.len()];
    for (ei, e) in p.edges().iter().enumerate() {
        let last = e.facets.iter().map(|&f| pos[f]).max().unwrap_or(0);
        closing[last].push(ei);
    }
    closing
}

/// Exhaustive search for a mod-2 isotropy function.
pub fn search_mod2(p: &CombPolytope) -> Option<Mod2Map> {
    if !p.is_edge_simple() {
        return None;
    }
    let d = p.dim() - 1;
    let order = facet_order(p);
    let closing = edges_closing_at(p, &order);
    let mut assign = vec![0u64; p.facet_count()];
    let candidates: Vec<u64> = (1..(1u64 << d)).collect();
    if !backtrack(
        0,
        &order,
        &closing,
        &candidates,
        &mut assign,
        &|vs: &[&u64]| {
            let vs: Vec<u64> = vs.iter().map(|&&x| x).collect();
            edge_is_f2_basis(&vs, d)
        },
        p,
    ) {
        return None;
    }
    let values = assign
        .iter()
        .map(|&x| (0..d).map(|i| x >> i & 1 == 1).collect())
        .collect();
    Mod2Map::new(p.clone(), values).ok()
}

fn backtrack<T: Clone>(
    i: usize,
    order: &[usize],
    closing: &[Vec<usize>],
    candidates: &[T],
    assign: &mut [T],
    ok: &dyn Fn(&[&T]) -> bool,
    p: &CombPolytope,
) -> bool {
    if i == order.len() {
        return true;
    }
    let f = order[i];
    for c in candidates {
        assign[f] = c.clone();
        let fine = closing[i].iter().all(|&ei| {
            let vs: Vec<&T> = p.edges()[ei].facets.iter().map(|&g| &assign[g]).collect();
            ok(&vs)
        });
        if fine && backtrack(i + 1, order, closing, candidates, assign, ok, p) {
            return true;
        }
    }
    false
}

/// Primitive sign classes in `Z^d` with entries in `[-bound, bound]`.
fn primitive_candidates(d: usize, bound: u64) -> Vec<SignVec> {
    let b = bound as i64;
    let width = (2 * b + 1) as usize;
    let total = width.pow(d as u32);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let entries: Vec<i64> = (0..d)
            .map(|_| {
                let x = (c % width) as i64 - b;
                c /= width;
                x
            })
            .collect();
        let v = IntVec::from_i64(&entries);
        if v.content().is_one() {
            out.insert(SignVec::new(v).expect("primitive vectors are nonzero"));
        }
    }
    let mut out: Vec<SignVec> = out.into_iter().collect();
    out.sort_by_key(|v| (v.rep().l1_norm(), v.clone()));
    out
}

/// Searches for an isotropy function, first ruling out the mod-2 reduction,
/// then backtracking over primitive vectors with bounded entries.
pub fn search_isotropy(p: &CombPolytope, bound: u64) -> IsotropySearch {
    if search_mod2(p).is_none() {
        return IsotropySearch::Mod2Obstruction;
    }
    let d = p.dim() - 1;
    let candidates = primitive_candidates(d, bound);
    if candidates.is_empty() {
        return IsotropySearch::NoneWithinBound(bound);
    }
    let order = facet_order(p);
    let closing = edges_closing_at(p, &order);
    let mut assign = vec![candidates[0].clone(); p.facet_count()];
    let ok = |vs: &[&SignVec]| {
        let vs: Vec<SignVec> = vs.iter().map(|&v| v.clone()).collect();
        intlat::is_basis(&vs, d)
    };
    if !backtrack(0, &order, &closing, &candidates, &mut assign, &ok, p) {
        return IsotropySearch::NoneWithinBound(bound);
    }
    match IsotropyMap::new(p.clone(), assign) {
        Ok(m) if validate_isotropy(&m).is_valid() => IsotropySearch::Found(m),
        _ => IsotropySearch::NoneWithinBound(bound),
    }
}
