//! Index data of a truncation under a generic linear functional.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolytopeError, TruncatedPolytope};
use crate::linalg::{self, Q};

const RANDOM_ATTEMPTS: usize = 64;
const RANDOM_RANGE: i64 = 1000;

/// How the linear functional is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    /// Use this integer direction.
    Fixed(Vec<BigInt>),
    /// Draw integer directions from a seeded generator until one separates
    /// all vertices.
    Seeded(u64),
}

/// An index-`j` vertex of `Q` paired with its inward edge along a base edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub vertex: usize,
    /// The `Q` edge, lower endpoint first.
    pub edge: (usize, usize),
    pub base_edge: usize,
}

#[derive(Clone, Debug)]
pub struct IndexData {
    direction: Vec<BigInt>,
    values: Vec<Q>,
    ind: Vec<usize>,
    cells: BTreeMap<usize, Vec<Cell>>,
}

impl IndexData {
    pub fn direction(&self) -> &[BigInt] {
        &self.direction
    }

    /// Functional value at each `Q` vertex.
    pub fn values(&self) -> &[Q] {
        &self.values
    }

    /// Number of edges oriented towards each `Q` vertex.
    pub fn ind(&self) -> &[usize] {
        &self.ind
    }

    /// The sets `I_j` for `j = 1..=n`.
    pub fn cells(&self) -> &BTreeMap<usize, Vec<Cell>> {
        &self.cells
    }

    /// `|I_1|, ..., |I_n|`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.values().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }
}

/// Orients the edges of `Q` by increasing functional value and collects the
/// sets `I_j`: every base edge contributes its segment in `Q`, attached to
/// the upper endpoint of the segment.
pub fn index_data(
    t: &TruncatedPolytope,
    functional: &Functional,
) -> Result<IndexData, PolytopeError> {
    let q = t.q();
    let coords = q.coords().ok_or(PolytopeError::NoCoordinates)?;
    let n = q.dim();
    let direction = match functional {
        Functional::Fixed(d) => {
            if d.len() != n {
                return Err(PolytopeError::FunctionalDim {
                    expected: n,
                    found: d.len(),
                });
            }
            if evaluate(d, coords).is_none() {
                return Err(PolytopeError::DegenerateFunctional(1));
            }
            d.clone()
        }
        Functional::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut found = None;
            for _ in 0..RANDOM_ATTEMPTS {
                let d: Vec<BigInt> = (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)))
                    .collect();
                if evaluate(&d, coords).is_some() {
                    found = Some(d);
                    break;
                }
            }
            found.ok_or(PolytopeError::DegenerateFunctional(RANDOM_ATTEMPTS))?
        }
    };
    let values = evaluate(&direction, coords).expect("direction checked generic");

    let mut ind = vec![0usize; q.vertex_count()];
    for e in q.edges() {
        let (a, b) = e.ends;
        if values[a] < values[b] {
            ind[b] += 1;
        } else {
            ind[a] += 1;
        }
    }

    let mut cells: BTreeMap<usize, Vec<Cell>> = (1..=n).map(|j| (j, Vec::new())).collect();
    let base = t.base();
    for (be, edge) in base.edges().iter().enumerate() {
        let (v, w) = edge.ends;
        let x = t
            .qvertex(v, be)
            .expect("every base edge is cut at both ends");
        let y = t
            .qvertex(w, be)
            .expect("every base edge is cut at both ends");
        let (lo, hi) = if values[x] < values[y] {
            (x, y)
        } else {
            (y, x)
        };
        cells.entry(ind[hi]).or_default().push(Cell {
            vertex: hi,
            edge: (lo, hi),
            base_edge: be,
        });
    }
    Ok(IndexData {
        direction,
        values,
        ind,
        cells,
    })
}

fn evaluate(direction: &[BigInt], coords: &[Vec<Q>]) -> Option<Vec<Q>> {
    let d: Vec<Q> = direction
        .iter()
        .map(|x| Q::from_integer(x.clone()))
        .collect();
    let values: Vec<Q> = coords.iter().map(|p| linalg::dot(&d, p)).collect();
    let mut sorted = values.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(values)
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, truncate_all_vertices};
    use super::*;

    #[test]
    fn cube_cells_count_edges() {
        let t = truncate_all_vertices(&catalog::cube()).unwrap();
        let d = index_data(&t, &Functional::Seeded(7)).unwrap();
        assert_eq!(d.total_cells(), 12);
        assert_eq!(d.cell_counts()[2], 1);
    }

    #[test]
    fn pyramid_cells() {
        let t = truncate_all_vertices(&catalog::square_pyramid()).unwrap();
        let d = index_data(&t, &Functional::Seeded(0)).unwrap();
        assert_eq!(d.cell_counts(), vec![4, 3, 1]);
    }

    #[test]
    fn degenerate_fixed_functional() {
        let t = truncate_all_vertices(&catalog::cube()).unwrap();
        let zero = vec![BigInt::from(0); 3];
        assert_eq!(
            index_data(&t, &Functional::Fixed(zero)).unwrap_err(),
            PolytopeError::DegenerateFunctional(1)
        );
    }
}
