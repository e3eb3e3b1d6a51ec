//! Edge-simple 3-polytopes whose truncation bounds a given square.
//!
//! Each witness has a vertex `O` in four facets `A, B, C, D` carrying the
//! square's vectors, so the section at `O` is the square itself. Every other
//! vertex is simple and contributes a triangle. The signed triangle classes
//! then sum to the class of the square.
//!
//! Inputs are first moved to the frame where the first two vectors are
//! `(0,1)` and `(1,0)`; the witness values are moved back at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{
    cobordism_class, equivariantly_equal, validate_polygon, CobClass, CobordError, EqualityMode,
    Polygon4,
};
use crate::boundary::{self, BuildOptions, PieceId};
use crate::charmap::{self, IsotropyMap};
use crate::intlat::{self, IntVec, Mat2, Sign, SignVec};
use crate::linalg::q;
use crate::polytope::CombPolytope;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// Both diagonals equal: a square pyramid.
    Product,
    /// Hirzebruch square with `k = ±1`.
    HirzebruchUnit,
    /// Hirzebruch square with `|k| >= 2`: a tower of `|k| - 1` strips.
    HirzebruchTower,
    /// A square splitting into two triangles.
    TwoSummand,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    /// The matrix taking the input to the normalized frame.
    pub frame: Mat2,
    pub iso: IsotropyMap,
}

impl Witness {
    pub fn polytope(&self) -> &CombPolytope {
        self.iso.polytope()
    }
}

fn iv(a: i64, b: i64) -> IntVec {
    IntVec::from_i64(&[a, b])
}

/// Builds the witness for a square matching one of the supported patterns
/// in the normalized frame.
pub fn witness_polytope(p: &Polygon4) -> Result<Witness, CobordError> {
    if p.m() != 4 {
        return Err(CobordError::NotSquare(p.m()));
    }
    let report = validate_polygon(p);
    if !report.is_valid() {
        return Err(CobordError::Invalid(report));
    }
    let e1 = SignVec::new(iv(0, 1))?;
    let e2 = SignVec::new(iv(1, 0))?;
    let frame = intlat::solve_gl2(&[(p.vec(0).clone(), e1), (p.vec(1).clone(), e2)])?
        .expect("unimodular pairs can always be normalized");
    let q = p.transform(&frame)?;
    let (q3, q4) = (q.vec(2).rep(), q.vec(3).rep());
    let eta: Vec<IntVec> = q.vecs().iter().map(|v| v.rep().clone()).collect();

    let (kind, polytope, labels) = if q3 == &iv(0, 1) && q4 == &iv(1, 0) {
        let base = &eta[0] + &eta[1];
        let mut labels = eta.clone();
        labels.push(base);
        (WitnessKind::Product, square_pyramid(), labels)
    } else if q3 == &iv(0, 1) && q4.entries()[0].is_one() && !q4.entries()[1].is_zero() {
        let k = q4.entries()[1].clone();
        let levels = usize::try_from(k.abs()).map_err(|_| CobordError::PatternNotMatched)?;
        let step = if k.is_positive() {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let strip = |s: usize| &eta[1] + &(&(&step * BigInt::from(s)) * &eta[0]);
        let mut labels = eta.clone();
        labels.extend((1..levels).map(strip));
        labels.push(eta[3].clone());
        labels.push(strip(levels - 1));
        let kind = if levels == 1 {
            WitnessKind::HirzebruchUnit
        } else {
            WitnessKind::HirzebruchTower
        };
        (kind, ridge_tower(levels), labels)
    } else if (q3 == &iv(1, -1) && q4 == &iv(1, -2)) || (q3 == &iv(1, 1) && q4 == &iv(1, 2)) {
        let w = [&eta[3], &eta[0], &eta[1], &eta[2]];
        let labels = vec![
            w[0].clone(),
            w[1].clone(),
            w[2].clone(),
            w[3].clone(),
            w[3].clone(),
            w[1].clone(),
        ];
        (WitnessKind::TwoSummand, ridge_tower(1), labels)
    } else {
        return Err(CobordError::PatternNotMatched);
    };

    let back = frame.inverse().expect("frame matrices are unimodular");
    let assign = labels
        .iter()
        .map(|v| SignVec::new(back.apply(v)))
        .collect::<Result<Vec<_>, _>>()?;
    let iso = IsotropyMap::new(polytope, assign).expect("witness shapes are consistent");
    Ok(Witness { kind, frame, iso })
}

/// Square pyramid with apex `O` at the origin and base `GHIJ` at height 1.
/// Facets in order: `A, B, C, D, base`.
fn square_pyramid() -> CombPolytope {
    let names = ["O", "G", "H", "I", "J"];
    let pts = [[0, 0, 0], [-1, -1, 1], [1, -1, 1], [1, 1, 1], [-1, 1, 1]];
    let facets = [
        ("A", vec![0, 1, 2]),
        ("B", vec![0, 2, 3]),
        ("C", vec![0, 3, 4]),
        ("D", vec![0, 4, 1]),
        ("base", vec![1, 2, 3, 4]),
    ];
    CombPolytope::from_indices(
        3,
        names.iter().map(|s| s.to_string()).collect(),
        facets.iter().map(|(f, _)| f.to_string()).collect(),
        facets.iter().map(|(_, v)| v.clone()).collect(),
        Some(
            pts.iter()
                .map(|p| p.iter().map(|&x| q(x)).collect())
                .collect(),
        ),
    )
    .expect("the square pyramid is valid")
}

/// The tower over a profile polygon `O, c_0, ..., c_{levels+1}` in the
/// `(x, z)` plane, thickened to the wedge `|y| <= z`.
///
/// Profile vertex `c_i` gives two vertices, one on `A: y = -z` and one on
/// `C: y = z`: `H, I` for `i = 0`, `H_i, I_i` for `0 < i < levels`, `E, F`
/// for `i = levels` and `G, J` for `i = levels + 1`. Facets in order:
/// `A, B = OHI, C, D = OJG`, strips `S_1..S_{levels-1}`, `Roof1`, `Roof2`.
fn ridge_tower(levels: usize) -> CombPolytope {
    let chain = levels + 2;
    let top = (chain - 1) as i64;
    let names = |i: usize| -> (String, String) {
        if i == 0 {
            ("H".into(), "I".into())
        } else if i < levels {
            (format!("H{i}"), format!("I{i}"))
        } else if i == levels {
            ("E".into(), "F".into())
        } else {
            ("G".into(), "J".into())
        }
    };
    let mut vertex_ids = vec!["O".to_string()];
    let mut coords = vec![vec![q(0), q(0), q(0)]];
    for i in 0..chain {
        let x = top - 2 * i as i64;
        let z = top + (top * top - x * x);
        let (a, c) = names(i);
        vertex_ids.push(a);
        coords.push(vec![q(x), q(-z), q(z)]);
        vertex_ids.push(c);
        coords.push(vec![q(x), q(z), q(z)]);
    }
    let a_side = |i: usize| 1 + 2 * i;
    let c_side = |i: usize| 2 + 2 * i;
    let mut facet_ids = vec!["A".to_string(), "B".into(), "C".into(), "D".into()];
    let mut facets = vec![
        std::iter::once(0).chain((0..chain).map(a_side)).collect(),
        vec![0, a_side(0), c_side(0)],
        std::iter::once(0).chain((0..chain).map(c_side)).collect(),
        vec![0, a_side(chain - 1), c_side(chain - 1)],
    ];
    for i in 0..=levels {
        facet_ids.push(if i + 1 < levels {
            format!("S{}", i + 1)
        } else if i + 1 == levels {
            "Roof1".into()
        } else {
            "Roof2".into()
        });
        facets.push(vec![a_side(i), c_side(i), a_side(i + 1), c_side(i + 1)]);
    }
    CombPolytope::from_indices(3, vertex_ids, facet_ids, facets, Some(coords))
        .expect("the tower is valid")
}

/// Outcome of [`verify_witness`].
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub edge_simple: bool,
    pub isotropy_valid: bool,
    pub model_error: Option<String>,
    /// Vertices whose section equals the input square up to relabelling.
    pub matching_sections: Vec<String>,
    /// The remaining pieces, by vertex id.
    pub others: Vec<(String, PieceId)>,
    pub plus: usize,
    pub minus: usize,
    /// Signed sum of the remaining pieces.
    pub triangle_sum: CobClass,
    /// Class of the input square from the classifier.
    pub expected: Option<CobClass>,
    /// Whether all boundary pieces together sum to zero.
    pub boundary_total_zero: bool,
}

impl WitnessReport {
    /// `+1` and `-1` triangles occur equally often.
    pub fn balanced(&self) -> bool {
        self.plus == self.minus
    }

    pub fn passed(&self) -> bool {
        let Some(expected) = &self.expected else {
            return false;
        };
        let excess = BigInt::from(self.plus as i64 - self.minus as i64);
        self.edge_simple
            && self.isotropy_valid
            && self.model_error.is_none()
            && self.matching_sections.len() == 1
            && self
                .others
                .iter()
                .all(|(_, p)| matches!(p, PieceId::Triangle { .. }))
            && &self.triangle_sum == expected
            && excess == expected.augmentation()
            && self.boundary_total_zero
    }
}

/// Checks that `iso` is a witness for the square `p`.
pub fn verify_witness(iso: &IsotropyMap, p: &Polygon4) -> WitnessReport {
    let poly = iso.polytope();
    let mut report = WitnessReport {
        edge_simple: poly.is_edge_simple(),
        isotropy_valid: charmap::validate_isotropy(iso).is_valid(),
        model_error: None,
        matching_sections: Vec::new(),
        others: Vec::new(),
        plus: 0,
        minus: 0,
        triangle_sum: CobClass::zero(),
        expected: cobordism_class(p).ok().map(|(c, _)| c),
        boundary_total_zero: false,
    };
    let model = match boundary::build_boundary_model(iso, &BuildOptions::default()) {
        Ok(m) => m,
        Err(e) => {
            report.model_error = Some(e.to_string());
            return report;
        }
    };
    let pieces = match boundary::signed_piece_classes(&model) {
        Ok(p) => p,
        Err(e) => {
            report.model_error = Some(e.to_string());
            return report;
        }
    };
    report.boundary_total_zero = boundary::boundary_class(&pieces).is_some_and(|c| c.is_zero());
    for (v, piece) in pieces {
        let id = poly.vertex_id(v).to_string();
        let cycle = model
            .section_cycle(v)
            .expect("3-dimensional models have rotations");
        let matches =
            Polygon4::new(cycle).is_ok_and(|s| equivariantly_equal(&s, p, EqualityMode::Dihedral));
        if matches {
            report.matching_sections.push(id);
            continue;
        }
        match piece.sign() {
            Some(Sign::Plus) => report.plus += 1,
            Some(Sign::Minus) => report.minus += 1,
            None => {}
        }
        if let Some(c) = piece.class() {
            report.triangle_sum = &report.triangle_sum + &c;
        }
        report.others.push((id, piece));
    }
    report
}
