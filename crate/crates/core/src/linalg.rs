//! Rational linear algebra for coordinate checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(s: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| s * x).collect()
}

pub fn centroid(points: &[&Vec<Q>]) -> Vec<Q> {
    let dim = points[0].len();
    let mut c = vec![Q::zero(); dim];
    for p in points {
        c = add(&c, p);
    }
    let n = q(points.len() as i64);
    c.into_iter().map(|x| x / &n).collect()
}

/// A basis of the right nullspace of `rows` (reduced row echelon form).
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                #[allow(clippy::needless_range_loop)]
                for j in 0..ncols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Cross product in `Q^3`.
pub fn cross(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_plane() {
        // x + y + z = 0 in Q^3 has a 2-dimensional nullspace.
        let ns = nullspace(&[vec![q(1), q(1), q(1)]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&[q(1), q(1), q(1)], v).is_zero());
        }
    }

    #[test]
    fn nullspace_full_rank() {
        let ns = nullspace(&[vec![q(1), q(0)], vec![q(0), q(2)]], 2);
        assert!(ns.is_empty());
    }
}
