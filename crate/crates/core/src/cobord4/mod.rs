//! Equivariant cobordism of 4-dimensional quasitoric manifolds.
//!
//! A 4-dimensional quasitoric manifold is a polygon with a cyclic list of
//! classes in `Z^2/±`, adjacent pairs unimodular. Repeated blow-downs split
//! it into triangles (copies of `CP^2` with either orientation) and at most
//! one Hirzebruch square, whose class is zero. The cobordism class is the
//! signed sum of the triangle classes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::intlat::{
    self, canonical_triangle_class, det2_raw, is_unit, LatticeError, Mat2, Sign, SignVec,
    TriangleClass, TriangleData,
};

mod witness;

pub use witness::{verify_witness, witness_polytope, Witness, WitnessKind, WitnessReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobordError {
    #[error("a polygon needs at least 3 vectors, found {0}")]
    TooFewVectors(usize),
    #[error("polygon vectors must have dimension 2")]
    NotPlanar,
    #[error("polygon is not valid: {0}")]
    Invalid(PolygonReport),
    #[error("no blow-down at index {0}")]
    NotBlowDownable(usize),
    #[error("index {index} out of range for a {m}-gon")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("a triangle cannot be blown down")]
    TriangleBlowDown,
    #[error("{m}-gon has no blow-down order ending in a triangle or a Hirzebruch square")]
    Unclassifiable { m: usize },
    #[error("square does not match any witness pattern")]
    PatternNotMatched,
    #[error("witness requires a square, found a {0}-gon")]
    NotSquare(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A cyclic list of classes in `Z^2/±` around a polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon4 {
    vecs: Vec<SignVec>,
}

impl Polygon4 {
    /// Checks only the shape (at least 3 vectors, all planar); see
    /// [`validate_polygon`] for the unimodularity condition.
    pub fn new(vecs: Vec<SignVec>) -> Result<Self, CobordError> {
        if vecs.len() < 3 {
            return Err(CobordError::TooFewVectors(vecs.len()));
        }
        if vecs.iter().any(|v| v.dim() != 2) {
            return Err(CobordError::NotPlanar);
        }
        Ok(Polygon4 { vecs })
    }

    pub fn from_i64(vecs: &[[i64; 2]]) -> Result<Self, CobordError> {
        let vecs = vecs
            .iter()
            .map(|v| SignVec::from_i64(v))
            .collect::<Result<_, _>>()?;
        Self::new(vecs)
    }

    pub fn m(&self) -> usize {
        self.vecs.len()
    }

    pub fn vecs(&self) -> &[SignVec] {
        &self.vecs
    }

    pub fn vec(&self, i: usize) -> &SignVec {
        &self.vecs[i % self.m()]
    }

    /// `(v_0, ..., v_{m-1}) -> (v_r, ..., v_{r-1})`.
    pub fn rotate(&self, r: usize) -> Polygon4 {
        let m = self.m();
        Polygon4 {
            vecs: (0..m).map(|i| self.vecs[(i + r) % m].clone()).collect(),
        }
    }

    /// The reversed cycle `(v_0, v_{m-1}, ..., v_1)`.
    pub fn reflect(&self) -> Polygon4 {
        let m = self.m();
        Polygon4 {
            vecs: (0..m).map(|i| self.vecs[(m - i) % m].clone()).collect(),
        }
    }

    /// Applies a 2x2 matrix to every vector.
    pub fn transform(&self, a: &Mat2) -> Result<Polygon4, CobordError> {
        let vecs = self
            .vecs
            .iter()
            .map(|v| a.apply_sign(v))
            .collect::<Result<_, _>>()?;
        Polygon4::new(vecs)
    }

    fn det_abs(&self, i: usize, j: usize) -> BigInt {
        det2_raw(self.vec(i).rep(), self.vec(j).rep()).abs()
    }

    fn without(&self, i: usize) -> Polygon4 {
        let mut vecs = self.vecs.clone();
        vecs.remove(i);
        Polygon4 { vecs }
    }
}

impl fmt::Display for Polygon4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vecs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.rep())?;
        }
        write!(f, ")")
    }
}

/// Adjacent pairs `(i, i+1)` whose determinant is not `±1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolygonReport {
    pub bad_pairs: Vec<(usize, usize)>,
}

impl PolygonReport {
    pub fn is_valid(&self) -> bool {
        self.bad_pairs.is_empty()
    }
}

impl fmt::Display for PolygonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "non-unimodular adjacent pairs {:?}", self.bad_pairs)
    }
}

pub fn validate_polygon(p: &Polygon4) -> PolygonReport {
    let m = p.m();
    PolygonReport {
        bad_pairs: (0..m)
            .map(|i| (i, (i + 1) % m))
            .filter(|&(i, j)| !is_unit(&det2_raw(p.vec(i).rep(), p.vec(j).rep())))
            .collect(),
    }
}

fn require_valid(p: &Polygon4) -> Result<(), CobordError> {
    let report = validate_polygon(p);
    if report.is_valid() {
        Ok(())
    } else {
        Err(CobordError::Invalid(report))
    }
}

/// True iff facet `i` can be blown down: `|det(v_{i-1}, v_{i+1})| = 1`.
pub fn can_blow_down(p: &Polygon4, i: usize) -> bool {
    let m = p.m();
    m >= 4 && i < m && p.det_abs(i + m - 1, i + 1) == BigInt::from(1)
}

/// Removes facet `i`, returning the smaller polygon and the split-off
/// triangle `(v_{i-1}, v_i, v_{i+1})`.
pub fn blow_down(p: &Polygon4, i: usize) -> Result<(Polygon4, TriangleData), CobordError> {
    let m = p.m();
    if i >= m {
        return Err(CobordError::IndexOutOfRange { index: i, m });
    }
    if m == 3 {
        return Err(CobordError::TriangleBlowDown);
    }
    require_valid(p)?;
    if !can_blow_down(p, i) {
        return Err(CobordError::NotBlowDownable(i));
    }
    let (a, b, c) = (p.vec(i + m - 1), p.vec(i), p.vec(i + 1));
    let summand = TriangleData::new(a.clone(), b.clone(), c.clone())?;
    // Three unimodular pairs force b = ±a ± c.
    debug_assert!([(1i64, 1i64), (1, -1)].iter().any(|&(s, t)| {
        let sum = &(&BigInt::from(s) * a.rep()) + &(&BigInt::from(t) * c.rep());
        SignVec::new(sum).is_ok_and(|x| &x == b)
    }));
    Ok((p.without(i), summand))
}

/// For a square with one diagonal pair equal, `|det|` of the other
/// diagonal. Zero means both diagonals are equal pairs.
pub fn is_hirzebruch(p: &Polygon4) -> Option<BigInt> {
    if p.m() != 4 {
        return None;
    }
    if p.vec(0) == p.vec(2) {
        Some(p.det_abs(1, 3))
    } else if p.vec(1) == p.vec(3) {
        Some(p.det_abs(0, 2))
    } else {
        None
    }
}

/// Inserts `s1 v_i + s2 v_{i+1}` between positions `i` and `i+1`.
pub fn inverse_blow_up(
    p: &Polygon4,
    i: usize,
    s1: Sign,
    s2: Sign,
) -> Result<Polygon4, CobordError> {
    let m = p.m();
    if i >= m {
        return Err(CobordError::IndexOutOfRange { index: i, m });
    }
    require_valid(p)?;
    let a = &BigInt::from(s1.value()) * p.vec(i).rep();
    let b = &BigInt::from(s2.value()) * p.vec(i + 1).rep();
    let new = SignVec::new(&a + &b)?;
    let mut vecs = p.vecs.clone();
    vecs.insert(i + 1, new);
    Ok(Polygon4 { vecs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityMode {
    Strict,
    Dihedral,
}

/// Equality of characteristic data, position by position or up to the
/// dihedral relabelling of the polygon.
pub fn equivariantly_equal(p: &Polygon4, q: &Polygon4, mode: EqualityMode) -> bool {
    if p.m() != q.m() {
        return false;
    }
    match mode {
        EqualityMode::Strict => p == q,
        EqualityMode::Dihedral => {
            let r = q.reflect();
            (0..q.m()).any(|k| p == &q.rotate(k) || p == &r.rotate(k))
        }
    }
}

/// A matrix `A` with `|det A| = 1` carrying `p_i` to `q_i` for every `i`.
pub fn delta_equivalent(p: &Polygon4, q: &Polygon4) -> Option<Mat2> {
    if p.m() != q.m() {
        return None;
    }
    let pairs: Vec<(SignVec, SignVec)> =
        p.vecs.iter().cloned().zip(q.vecs.iter().cloned()).collect();
    intlat::solve_gl2(&pairs).ok().flatten()
}

/// A finitely supported integer combination of triangle classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CobClass {
    terms: BTreeMap<TriangleClass, BigInt>,
}

impl CobClass {
    pub fn zero() -> Self {
        CobClass::default()
    }

    pub fn unit(class: TriangleClass, sign: Sign) -> Self {
        let mut c = CobClass::zero();
        c.add_term(class, BigInt::from(sign.value()));
        c
    }

    /// The signed class of a triangle.
    pub fn of_triangle(t: &TriangleData) -> Result<Self, CobordError> {
        let (class, sign) = canonical_triangle_class(t)?;
        Ok(Self::unit(class, sign))
    }

    pub fn add_term(&mut self, class: TriangleClass, coeff: BigInt) {
        let entry = self.terms.entry(class.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<TriangleClass, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, class: &TriangleClass) -> BigInt {
        self.terms.get(class).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &CobClass {
    type Output = CobClass;
    fn add(self, rhs: &CobClass) -> CobClass {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Neg for &CobClass {
    type Output = CobClass;
    fn neg(self) -> CobClass {
        CobClass {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Sub for &CobClass {
    type Output = CobClass;
    fn sub(self, rhs: &CobClass) -> CobClass {
        self + &(-rhs)
    }
}

impl std::iter::Sum for CobClass {
    fn sum<I: Iterator<Item = CobClass>>(iter: I) -> CobClass {
        iter.fold(CobClass::zero(), |acc, c| &acc + &c)
    }
}

impl fmt::Display for CobClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*{k}")?;
        }
        Ok(())
    }
}

/// One blow-down in a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Index removed from the polygon current at this step.
    pub index: usize,
    pub summand: TriangleData,
    pub class: TriangleClass,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    Triangle {
        triangle: TriangleData,
        class: TriangleClass,
        sign: Sign,
    },
    Hirzebruch(BigInt),
    Product,
}

impl Terminal {
    pub fn size(&self) -> usize {
        match self {
            Terminal::Triangle { .. } => 3,
            Terminal::Hirzebruch(_) | Terminal::Product => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompTrace {
    pub steps: Vec<TraceStep>,
    pub terminal: Terminal,
}

impl DecompTrace {
    /// Replays the blow-downs from `p`, returning the terminal polygon.
    pub fn replay(&self, p: &Polygon4) -> Result<Polygon4, CobordError> {
        let mut cur = p.clone();
        for s in &self.steps {
            let (next, summand) = blow_down(&cur, s.index)?;
            if summand != s.summand {
                return Err(CobordError::NotBlowDownable(s.index));
            }
            cur = next;
        }
        Ok(cur)
    }
}

/// The cobordism class of a valid polygon, by repeated blow-down.
///
/// Indices are tried lowest first. Some polygons reach a dead end (an
/// `m >= 5` polygon with no admissible index) along one order but not
/// another, so a dead end backtracks to the next index. The class does not
/// depend on the order taken.
pub fn cobordism_class(p: &Polygon4) -> Result<(CobClass, DecompTrace), CobordError> {
    require_valid(p)?;
    let mut dead = HashSet::new();
    let (mut steps, terminal) =
        decompose(p, &mut dead)?.ok_or(CobordError::Unclassifiable { m: p.m() })?;
    steps.reverse();
    let mut class = CobClass::zero();
    for s in &steps {
        class.add_term(s.class.clone(), BigInt::from(s.sign.value()));
    }
    if let Terminal::Triangle { class: c, sign, .. } = &terminal {
        class.add_term(c.clone(), BigInt::from(sign.value()));
    }
    Ok((class, DecompTrace { steps, terminal }))
}

/// Depth-first search for a complete decomposition; steps come back in
/// reverse order. `dead` remembers polygons with none.
fn decompose(
    cur: &Polygon4,
    dead: &mut HashSet<Polygon4>,
) -> Result<Option<(Vec<TraceStep>, Terminal)>, CobordError> {
    let m = cur.m();
    if m == 3 {
        let triangle = TriangleData::new(
            cur.vecs[0].clone(),
            cur.vecs[1].clone(),
            cur.vecs[2].clone(),
        )?;
        let (class, sign) = canonical_triangle_class(&triangle)?;
        return Ok(Some((
            Vec::new(),
            Terminal::Triangle {
                triangle,
                class,
                sign,
            },
        )));
    }
    if dead.contains(cur) {
        return Ok(None);
    }
    let admissible: Vec<usize> = (0..m).filter(|&i| can_blow_down(cur, i)).collect();
    if admissible.is_empty() {
        return Ok(match is_hirzebruch(cur) {
            Some(k) if k.is_zero() => Some((Vec::new(), Terminal::Product)),
            Some(k) => Some((Vec::new(), Terminal::Hirzebruch(k))),
            None => {
                dead.insert(cur.clone());
                None
            }
        });
    }
    for i in admissible {
        let (next, summand) = blow_down(cur, i)?;
        if let Some((mut steps, terminal)) = decompose(&next, dead)? {
            let (class, sign) = canonical_triangle_class(&summand)?;
            steps.push(TraceStep {
                index: i,
                summand,
                class,
                sign,
            });
            return Ok(Some((steps, terminal)));
        }
    }
    dead.insert(cur.clone());
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[[i64; 2]]) -> Polygon4 {
        Polygon4::from_i64(v).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_polygon(&poly(&[[0, 1], [1, 0], [0, 1], [1, 5]])).is_valid());
        assert!(validate_polygon(&poly(&[[0, 1], [1, 0], [-1, 1], [1, -2]])).is_valid());
        assert!(!validate_polygon(&poly(&[[0, 1], [0, 1], [1, 0]])).is_valid());
    }

    #[test]
    fn blow_down_examples() {
        let (t, s) = blow_down(&poly(&[[1, 0], [0, 1], [1, 1], [0, 1]]), 1).unwrap();
        assert_eq!(t, poly(&[[1, 0], [1, 1], [0, 1]]));
        assert_eq!(s, TriangleData::from_i64([[1, 0], [0, 1], [1, 1]]).unwrap());

        let (t, s) = blow_down(&poly(&[[0, 1], [1, 0], [-1, 1], [1, -2]]), 1).unwrap();
        assert_eq!(t, poly(&[[0, 1], [-1, 1], [1, -2]]));
        assert_eq!(
            s,
            TriangleData::from_i64([[0, 1], [1, 0], [-1, 1]]).unwrap()
        );

        let h = poly(&[[0, 1], [1, 0], [0, 1], [1, 2]]);
        for i in 0..4 {
            assert_eq!(
                blow_down(&h, i).unwrap_err(),
                CobordError::NotBlowDownable(i)
            );
        }
    }

    #[test]
    fn hirzebruch_detection() {
        for k in -4..=4 {
            assert_eq!(
                is_hirzebruch(&poly(&[[0, 1], [1, 0], [0, 1], [1, k]])),
                Some(BigInt::from(k.abs()))
            );
        }
        assert_eq!(
            is_hirzebruch(&poly(&[[0, 1], [1, 0], [-1, 1], [1, -2]])),
            None
        );
    }

    #[test]
    fn class_examples() {
        for k in -10..=10 {
            let (c, _) = cobordism_class(&poly(&[[0, 1], [1, 0], [0, 1], [1, k]])).unwrap();
            assert!(c.is_zero(), "k = {k}: {c}");
        }
        let (c, trace) = cobordism_class(&poly(&[[0, 1], [1, 0], [-1, 1], [1, -2]])).unwrap();
        assert_eq!(c.terms().len(), 2);
        assert!(c.terms().values().all(|v| v.abs() == BigInt::from(1)));
        assert_eq!(trace.steps.len() + trace.terminal.size(), 4);
        let (c, _) = cobordism_class(&poly(&[[1, 0], [0, 1], [1, 1]])).unwrap();
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.augmentation(), BigInt::from(1));
    }

    #[test]
    fn blow_up_examples() {
        let t = poly(&[[1, 0], [0, 1], [1, 1]]);
        let b = inverse_blow_up(&t, 0, Sign::Plus, Sign::Plus).unwrap();
        assert_eq!(b, poly(&[[1, 0], [1, 1], [0, 1], [1, 1]]));
        assert!(validate_polygon(&b).is_valid());
        assert_eq!(blow_down(&b, 1).unwrap().0, t);
    }

    #[test]
    fn equality_modes() {
        let p = poly(&[[0, 1], [1, 0], [0, 1], [1, 1]]);
        let r = p.rotate(1);
        assert!(equivariantly_equal(&p, &p, EqualityMode::Strict));
        assert!(!equivariantly_equal(&p, &r, EqualityMode::Strict));
        assert!(equivariantly_equal(&p, &r, EqualityMode::Dihedral));
        let q = poly(&[[0, 1], [1, 0], [0, 1], [1, -1]]);
        assert!(!equivariantly_equal(&p, &q, EqualityMode::Strict));
        assert!(!equivariantly_equal(&p, &q, EqualityMode::Dihedral));
        assert_eq!(delta_equivalent(&p, &p), Some(Mat2::identity()));
    }
}
