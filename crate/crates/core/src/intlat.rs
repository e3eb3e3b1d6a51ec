//! Exact integer lattice algebra.
//!
//! Vectors of `Z^d`, their classes modulo sign, determinants, the Smith
//! normal form, and the triangle canonical form used to index the
//! cobordism basis. Everything here is arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no sign class")]
    ZeroVector,
    #[error("vectors of dimension 0 are not allowed")]
    EmptyVector,
    #[error("triangle entries {0} and {1} do not span a unimodular pair")]
    NotUnimodular(usize, usize),
    #[error("no rotation or sign choice puts the triangle in sum form")]
    NoSumForm,
    #[error("all source vectors are parallel")]
    Underdetermined,
}

/// An element of `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVec(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVec(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sum of absolute values of the entries.
    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// Gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The vector with one extra trailing coordinate.
    pub fn extended(&self, last: BigInt) -> IntVec {
        let mut e = self.0.clone();
        e.push(last);
        IntVec(e)
    }

    fn first_nonzero_is_negative(&self) -> bool {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|x| -x).collect())
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        assert_eq!(self.dim(), rhs.dim(), "IntVec addition across dimensions");
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        assert_eq!(
            self.dim(),
            rhs.dim(),
            "IntVec subtraction across dimensions"
        );
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&IntVec> for &BigInt {
    type Output = IntVec;
    fn mul(self, rhs: &IntVec) -> IntVec {
        IntVec(rhs.0.iter().map(|x| self * x).collect())
    }
}

/// A nonzero vector of `Z^d` modulo `v ~ -v`.
///
/// The stored representative has its first nonzero entry positive, so two
/// classes are equal exactly when their representatives are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVec(IntVec);

impl SignVec {
    pub fn new(v: IntVec) -> Result<Self, LatticeError> {
        if v.dim() == 0 {
            return Err(LatticeError::EmptyVector);
        }
        if v.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        if v.first_nonzero_is_negative() {
            Ok(SignVec(-&v))
        } else {
            Ok(SignVec(v))
        }
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self, LatticeError> {
        Self::new(IntVec::from_i64(entries))
    }

    pub fn rep(&self) -> &IntVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl fmt::Display for SignVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// An orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Option<Sign> {
        match x.cmp(&BigInt::zero()) {
            Ordering::Greater => Some(Sign::Plus),
            Ordering::Less => Some(Sign::Minus),
            Ordering::Equal => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Determinant of a square integer matrix given by rows (fraction-free
/// Bareiss elimination). The empty matrix has determinant 1.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut a = rows.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Nonzero invariant factors of an integer matrix (rows need not be square).
///
/// Returned in order, positive, each dividing the next. Their count is the
/// rank of the matrix.
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if a[pi][pj].abs() <= x.abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                #[allow(clippy::needless_range_loop)]
                for j in t..n {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block.
            let bad_row =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) =>
                {
                    #[allow(clippy::needless_range_loop)]
                    for j in t..n {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn rows_of(vs: &[SignVec]) -> Vec<Vec<BigInt>> {
    vs.iter().map(|v| v.rep().entries().to_vec()).collect()
}

fn check_dims(vs: &[SignVec], d: usize) -> Result<(), LatticeError> {
    match vs.iter().find(|v| v.dim() != d) {
        Some(v) => Err(LatticeError::DimensionMismatch {
            expected: d,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

/// `a1*b2 - a2*b1` on the normalized representatives.
pub fn det2(u: &SignVec, v: &SignVec) -> Result<BigInt, LatticeError> {
    check_dims(&[u.clone(), v.clone()], 2)?;
    Ok(det2_raw(u.rep(), v.rep()))
}

pub(crate) fn det2_raw(u: &IntVec, v: &IntVec) -> BigInt {
    let (a, b) = (&u.entries()[0], &u.entries()[1]);
    let (c, d) = (&v.entries()[0], &v.entries()[1]);
    a * d - b * c
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// True iff `vs` is a basis of `Z^d`.
pub fn is_basis(vs: &[SignVec], d: usize) -> bool {
    if vs.len() != d || check_dims(vs, d).is_err() {
        return false;
    }
    is_unit(&determinant(&rows_of(vs)))
}

/// True iff `vs` spans a direct summand of `Z^d` of rank `|vs|`.
pub fn is_direct_summand(vs: &[SignVec], d: usize) -> Result<bool, LatticeError> {
    check_dims(vs, d)?;
    if vs.is_empty() {
        return Ok(true);
    }
    if vs.len() > d {
        return Ok(false);
    }
    let inv = smith_invariants(&rows_of(vs));
    Ok(inv.len() == vs.len() && inv.iter().all(One::is_one))
}

/// Three classes in `Z^2/±` around a triangle, cyclically ordered, with
/// every adjacent pair unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangleData {
    vecs: [SignVec; 3],
}

impl TriangleData {
    pub fn new(a: SignVec, b: SignVec, c: SignVec) -> Result<Self, LatticeError> {
        let vecs = [a, b, c];
        check_dims(&vecs, 2)?;
        for i in 0..3 {
            let j = (i + 1) % 3;
            if !is_unit(&det2_raw(vecs[i].rep(), vecs[j].rep())) {
                return Err(LatticeError::NotUnimodular(i, j));
            }
        }
        Ok(TriangleData { vecs })
    }

    pub fn from_i64(vs: [[i64; 2]; 3]) -> Result<Self, LatticeError> {
        Self::new(
            SignVec::from_i64(&vs[0])?,
            SignVec::from_i64(&vs[1])?,
            SignVec::from_i64(&vs[2])?,
        )
    }

    pub fn vecs(&self) -> &[SignVec; 3] {
        &self.vecs
    }

    /// `(v1, v2, v3) -> (v2, v3, v1)`.
    pub fn rotate(&self) -> Self {
        let [a, b, c] = self.vecs.clone();
        TriangleData { vecs: [b, c, a] }
    }

    /// `(v1, v2, v3) -> (v1, v3, v2)`: the same triangle with the opposite
    /// cyclic orientation.
    pub fn reflect(&self) -> Self {
        let [a, b, c] = self.vecs.clone();
        TriangleData { vecs: [a, c, b] }
    }
}

impl fmt::Display for TriangleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.vecs;
        write!(f, "({}, {}, {})", a.rep(), b.rep(), c.rep())
    }
}

/// Product of the signs of the three cyclic determinants. Independent of
/// the sign representatives and of rotation; reflection negates it.
pub fn orientation_sigma(t: &TriangleData) -> Sign {
    let [a, b, c] = &t.vecs;
    let s = |u: &SignVec, v: &SignVec| {
        Sign::of(&det2_raw(u.rep(), v.rep())).expect("triangle invariant: unimodular pairs")
    };
    s(a, b) * s(b, c) * s(c, a)
}

/// A 2x2 integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    rows: [[BigInt; 2]; 2],
}

impl Mat2 {
    pub fn new(rows: [[BigInt; 2]; 2]) -> Self {
        Mat2 { rows }
    }

    pub fn from_i64(r: [[i64; 2]; 2]) -> Self {
        Mat2::new(r.map(|row| row.map(BigInt::from)))
    }

    /// The matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &IntVec, v: &IntVec) -> Self {
        let (u, v) = (u.entries(), v.entries());
        Mat2::new([[u[0].clone(), v[0].clone()], [u[1].clone(), v[1].clone()]])
    }

    pub fn identity() -> Self {
        Mat2::from_i64([[1, 0], [0, 1]])
    }

    pub fn rows(&self) -> &[[BigInt; 2]; 2] {
        &self.rows
    }

    pub fn det(&self) -> BigInt {
        let r = &self.rows;
        &r[0][0] * &r[1][1] - &r[0][1] * &r[1][0]
    }

    pub fn apply(&self, v: &IntVec) -> IntVec {
        let r = &self.rows;
        let e = v.entries();
        IntVec::new(vec![
            &r[0][0] * &e[0] + &r[0][1] * &e[1],
            &r[1][0] * &e[0] + &r[1][1] * &e[1],
        ])
    }

    pub fn apply_sign(&self, v: &SignVec) -> Result<SignVec, LatticeError> {
        SignVec::new(self.apply(v.rep()))
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.rows, &rhs.rows);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse over `Z`, if the determinant is a unit.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if !is_unit(&d) {
            return None;
        }
        let r = &self.rows;
        // d = ±1, so multiplying by d divides by it.
        Some(Mat2::new([
            [&r[1][1] * &d, -&r[0][1] * &d],
            [-&r[1][0] * &d, &r[0][0] * &d],
        ]))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.rows;
        write!(f, "[({},{});({},{})]", r[0][0], r[0][1], r[1][0], r[1][1])
    }
}

/// A matrix `A` with `|det A| = 1` and `A u ≡ v (mod sign)` for every pair.
///
/// Solves on the first independent pair of sources and verifies the rest.
/// Sign choices are tried in a fixed order, so the result is deterministic.
pub fn solve_gl2(pairs: &[(SignVec, SignVec)]) -> Result<Option<Mat2>, LatticeError> {
    for (u, v) in pairs {
        check_dims(&[u.clone(), v.clone()], 2)?;
    }
    let mut base = None;
    'outer: for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if !det2_raw(pairs[i].0.rep(), pairs[j].0.rep()).is_zero() {
                base = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = base.ok_or(LatticeError::Underdetermined)?;
    let src = Mat2::from_columns(pairs[i].0.rep(), pairs[j].0.rep());
    let src_det = src.det();
    let r = src.rows();
    let adj = Mat2::new([[r[1][1].clone(), -&r[0][1]], [-&r[1][0], r[0][0].clone()]]);
    for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let ti = &BigInt::from(si) * pairs[i].1.rep();
        let tj = &BigInt::from(sj) * pairs[j].1.rep();
        let scaled = Mat2::from_columns(&ti, &tj).mul(&adj);
        // scaled = A * det(src); A must be integral.
        let integral = scaled
            .rows()
            .iter()
            .flatten()
            .all(|x| x.is_multiple_of(&src_det));
        if !integral {
            continue;
        }
        let a = Mat2::new(scaled.rows().clone().map(|row| row.map(|x| x / &src_det)));
        if !is_unit(&a.det()) {
            continue;
        }
        let all_match = pairs
            .iter()
            .all(|(u, v)| SignVec::new(a.apply(u.rep())).is_ok_and(|w| &w == v));
        if all_match {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// A point of `SL(2,Z)` modulo `A ~ -A`, chosen canonically from the cyclic
/// orbit of a positively oriented triangle.
///
/// The stored matrix has determinant +1 and a first row whose first nonzero
/// entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleClass {
    canon: Mat2,
}

impl TriangleClass {
    /// Wraps a determinant-one matrix, choosing the representative of `±A`
    /// with normalized first row.
    pub fn from_matrix(m: Mat2) -> Option<Self> {
        if !m.det().is_one() {
            return None;
        }
        let first = IntVec::new(m.rows()[0].to_vec());
        let canon = if first.first_nonzero_is_negative() {
            Mat2::new(m.rows().clone().map(|row| row.map(|x| -x)))
        } else {
            m
        };
        Some(TriangleClass { canon })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.canon
    }

    pub fn first(&self) -> IntVec {
        IntVec::new(self.canon.rows()[0].to_vec())
    }

    pub fn second(&self) -> IntVec {
        IntVec::new(self.canon.rows()[1].to_vec())
    }

    /// The positively oriented triangle `(v1, v2, v1 + v2)` of this class.
    pub fn triangle(&self) -> TriangleData {
        let (a, b) = (self.first(), self.second());
        let c = &a + &b;
        TriangleData::new(
            SignVec::new(a).expect("det 1 rows are nonzero"),
            SignVec::new(b).expect("det 1 rows are nonzero"),
            SignVec::new(c).expect("det 1 rows are nonzero"),
        )
        .expect("det 1 rows give a valid triangle")
    }

    fn order_key(&self) -> (BigInt, &Mat2) {
        let norm = self.canon.rows().iter().flatten().map(|x| x.abs()).sum();
        (norm, &self.canon)
    }
}

impl fmt::Display for TriangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canon)
    }
}

/// Canonical class and orientation sign of a triangle.
///
/// Negatively oriented triangles are reflected first. Among the three
/// rotations and all sign representatives `(v1; v2)` with `det = +1` and
/// `v3 ≡ v1 + v2`, the chosen matrix minimizes the sum of absolute
/// entries, ties broken by row-major order.
pub fn canonical_triangle_class(t: &TriangleData) -> Result<(TriangleClass, Sign), LatticeError> {
    let sign = orientation_sigma(t);
    let mut cur = match sign {
        Sign::Plus => t.clone(),
        Sign::Minus => t.reflect(),
    };
    let one = BigInt::one();
    let mut best: Option<TriangleClass> = None;
    for _ in 0..3 {
        let [a, b, c] = cur.vecs();
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                let u = &BigInt::from(sa) * a.rep();
                let w = &BigInt::from(sb) * b.rep();
                if det2_raw(&u, &w) != one {
                    continue;
                }
                let sum = &u + &w;
                if SignVec::new(sum).ok().as_ref() != Some(c) {
                    continue;
                }
                let m = Mat2::new([
                    [u.entries()[0].clone(), u.entries()[1].clone()],
                    [w.entries()[0].clone(), w.entries()[1].clone()],
                ]);
                let cand = TriangleClass::from_matrix(m).expect("det checked");
                let better = match &best {
                    None => true,
                    Some(b) => cand.order_key() < b.order_key(),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        cur = cur.rotate();
    }
    best.map(|c| (c, sign)).ok_or(LatticeError::NoSumForm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(a: i64, b: i64) -> SignVec {
        SignVec::from_i64(&[a, b]).unwrap()
    }

    fn tri(v: [[i64; 2]; 3]) -> TriangleData {
        TriangleData::from_i64(v).unwrap()
    }

    #[test]
    fn signvec_normalizes() {
        assert_eq!(sv(-1, 2), sv(1, -2));
        assert_eq!(sv(0, -3).rep(), &IntVec::from_i64(&[0, 3]));
        assert_eq!(SignVec::from_i64(&[0, 0]), Err(LatticeError::ZeroVector));
        assert_eq!(SignVec::from_i64(&[]), Err(LatticeError::EmptyVector));
    }

    #[test]
    fn det2_examples() {
        assert_eq!(det2(&sv(1, 0), &sv(0, 1)).unwrap(), BigInt::from(1));
        assert_eq!(det2(&sv(1, 0), &sv(1, 1)).unwrap(), BigInt::from(1));
        assert_eq!(det2(&sv(1, 0), &sv(1, 2)).unwrap(), BigInt::from(2));
        let three = SignVec::from_i64(&[1, 0, 0]).unwrap();
        assert!(matches!(
            det2(&three, &sv(0, 1)),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_examples() {
        assert!(is_basis(&[sv(1, 0), sv(0, 1)], 2));
        assert!(!is_basis(&[sv(1, 1), sv(1, -1)], 2));
        assert!(!is_basis(&[sv(1, 0)], 2));
        assert!(is_basis(&[], 0));
    }

    #[test]
    fn direct_summand_examples() {
        let v3 = |a, b, c| SignVec::from_i64(&[a, b, c]).unwrap();
        assert!(is_direct_summand(&[v3(1, 0, 0), v3(0, 1, 0)], 3).unwrap());
        assert!(!is_direct_summand(&[sv(2, 0), sv(0, 1)], 2).unwrap());
        assert!(is_direct_summand(&[v3(1, 1, 0), v3(0, 1, 1)], 3).unwrap());
        assert!(!is_direct_summand(&[v3(1, 1, 0), v3(2, 2, 0)], 3).unwrap());
        assert!(is_direct_summand(&[], 3).unwrap());
        assert!(is_direct_summand(&[sv(1, 0)], 3).is_err());
    }

    #[test]
    fn smith_known_forms() {
        let m = |r: &[&[i64]]| -> Vec<Vec<BigInt>> {
            r.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        let inv = smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            inv,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let inv = smith_invariants(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(inv, vec![BigInt::from(1), BigInt::from(6)]);
        assert!(smith_invariants(&m(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(
            orientation_sigma(&tri([[1, 0], [0, 1], [1, 1]])),
            Sign::Plus
        );
        assert_eq!(
            orientation_sigma(&tri([[0, 1], [1, 0], [1, 1]])),
            Sign::Minus
        );
        assert_eq!(
            orientation_sigma(&tri([[1, 0], [0, 1], [1, -1]])),
            Sign::Minus
        );
    }

    #[test]
    fn canonical_examples() {
        let id = TriangleClass::from_matrix(Mat2::identity()).unwrap();
        assert_eq!(
            canonical_triangle_class(&tri([[1, 0], [0, 1], [1, 1]])).unwrap(),
            (id.clone(), Sign::Plus)
        );
        assert_eq!(
            canonical_triangle_class(&tri([[0, 1], [1, 0], [1, 1]])).unwrap(),
            (id, Sign::Minus)
        );
        let a = canonical_triangle_class(&tri([[0, 1], [-1, 1], [1, -2]])).unwrap();
        let b = canonical_triangle_class(&tri([[0, 1], [1, 0], [-1, 1]])).unwrap();
        assert_ne!(a.0, b.0);
    }

    #[test]
    fn class_triangle_roundtrip() {
        let (c, s) = canonical_triangle_class(&tri([[2, 1], [1, 1], [3, 2]])).unwrap();
        assert_eq!(s, Sign::Plus);
        assert_eq!(
            canonical_triangle_class(&c.triangle()).unwrap(),
            (c, Sign::Plus)
        );
    }

    #[test]
    fn solve_gl2_examples() {
        let a = solve_gl2(&[(sv(1, 0), sv(1, 0)), (sv(0, 1), sv(0, 1))])
            .unwrap()
            .unwrap();
        assert_eq!(a, Mat2::identity());
        let a = solve_gl2(&[(sv(1, 0), sv(0, 1)), (sv(0, 1), sv(1, 0))])
            .unwrap()
            .unwrap();
        assert_eq!(a, Mat2::from_i64([[0, 1], [1, 0]]));
        let a = solve_gl2(&[
            (sv(1, 0), sv(1, 1)),
            (sv(0, 1), sv(0, 1)),
            (sv(1, 1), sv(1, 2)),
        ])
        .unwrap()
        .unwrap();
        assert_eq!(
            a.apply(&IntVec::from_i64(&[1, 1])),
            IntVec::from_i64(&[1, 2])
        );
        assert_eq!(a, Mat2::from_i64([[1, 0], [1, 1]]));
        assert_eq!(
            solve_gl2(&[(sv(1, 0), sv(1, 0)), (sv(2, 0), sv(0, 1))]),
            Err(LatticeError::Underdetermined)
        );
        // (1,0)->(1,0), (0,1)->(0,1) forces ±identity, which sends (1,1) to (1,1).
        assert_eq!(
            solve_gl2(&[
                (sv(1, 0), sv(1, 0)),
                (sv(0, 1), sv(0, 1)),
                (sv(1, 1), sv(1, 2)),
            ])
            .unwrap(),
            None
        );
    }

    #[test]
    fn inverse_is_inverse() {
        let a = Mat2::from_i64([[2, 1], [1, 1]]);
        assert_eq!(a.mul(&a.inverse().unwrap()), Mat2::identity());
        assert!(Mat2::from_i64([[2, 0], [0, 1]]).inverse().is_none());
    }
}
