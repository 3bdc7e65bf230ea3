//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::vector::Q;

pub type QMatrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn transpose(m: &[Vec<Q>], cols: usize) -> QMatrix {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| super::vector::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], b_cols: usize) -> QMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
pub fn rref(m: &mut QMatrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> QMatrix {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Row basis (in RREF) of the span of `vectors`.
pub fn row_basis(vectors: &[Vec<Q>], cols: usize) -> QMatrix {
    let mut m = vectors.to_vec();
    rref(&mut m, cols);
    m
}

pub fn inverse(m: &[Vec<Q>]) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `m x = b` for a particular solution, if any.
pub fn solve(m: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcone::vector::q;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inverse_of_cartan_a2() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let a = m(&[&[1, 1, 0], &[0, 0, 0]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&a, 3), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 0], &[1, 0]]);
        assert!(solve(&a, &[q(1), q(2)], 2).is_none());
        assert_eq!(solve(&a, &[q(3), q(3)], 2).unwrap(), vec![q(3), q(0)]);
    }
}
