//! Exact feasibility for `A x = b, x >= 0` by a phase-one simplex with
//! Bland's rule. Infeasible systems come back with a Farkas vector.

use num_traits::{One, Signed, Zero};

use super::vector::{dot, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A nonnegative solution.
    Feasible(Vec<Q>),
    /// `y` with `yᵀA >= 0` and `yᵀb < 0`.
    Infeasible(Vec<Q>),
}

impl Feasibility {
    pub fn solution(self) -> Option<Vec<Q>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Decides `A x = b, x >= 0`; `a` is row-major with `n` columns.
pub fn solve_nonneg(a: &[Vec<Q>], b: &[Q], n: usize) -> Feasibility {
    let m = a.len();
    assert_eq!(m, b.len());
    if m == 0 {
        return Feasibility::Feasible(vec![Q::zero(); n]);
    }

    // Columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut signs = Vec::with_capacity(m);
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let s = if bi.is_negative() { -Q::one() } else { Q::one() };
        let mut r = vec![Q::zero(); width];
        for j in 0..n {
            r[j] = &row[j] * &s;
        }
        r[n + i] = Q::one();
        r[width - 1] = bi * &s;
        signs.push(s);
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Q::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (row, _) = leave.expect("phase-one simplex is bounded");
        pivot(&mut t, &mut cost, row, enter);
        basis[row] = enter;
    }

    let objective = -cost[width - 1].clone();
    if objective.is_zero() {
        let mut x = vec![Q::zero(); n];
        for (i, &bj) in basis.iter().enumerate() {
            if bj < n {
                x[bj] = t[i][width - 1].clone();
            }
        }
        debug_assert!(a.iter().zip(b).all(|(row, bi)| dot(row, &x) == *bi));
        Feasibility::Feasible(x)
    } else {
        // Dual of phase one: y_i = 1 - (reduced cost of artificial i).
        let y: Vec<Q> = (0..m)
            .map(|i| -(Q::one() - &cost[n + i]) * &signs[i])
            .collect();
        debug_assert!((0..n).all(|j| {
            let s = a.iter().zip(&y).fold(Q::zero(), |acc, (row, yi)| acc + &row[j] * yi);
            !s.is_negative()
        }));
        debug_assert!(dot(&y, b).is_negative());
        Feasibility::Infeasible(y)
    }
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], row: usize, col: usize) {
    let inv = Q::one() / &t[row][col];
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, p) in cost.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcone::vector::q;

    fn rows(r: &[&[i64]]) -> Vec<Vec<Q>> {
        r.iter().map(|x| x.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn finds_nonnegative_solution() {
        let a = rows(&[&[2, -1], &[-1, 2]]);
        let x = solve_nonneg(&a, &[q(1), q(1)], 2).solution().unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }

    #[test]
    fn farkas_vector_separates() {
        // x1 - x2 = -1 and x1 + x2 = -1 has no nonnegative solution.
        let a = rows(&[&[1, -1], &[1, 1]]);
        let b = vec![q(-1), q(-1)];
        match solve_nonneg(&a, &b, 2) {
            Feasibility::Infeasible(y) => {
                for j in 0..2 {
                    let s: Q = (0..2).map(|i| &a[i][j] * &y[i]).sum();
                    assert!(!s.is_negative());
                }
                assert!(dot(&y, &b).is_negative());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_redundant_rows() {
        let a = rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let x = solve_nonneg(&a, &[q(2), q(2), q(0)], 3).solution().unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        assert_eq!(x[2], q(0));
    }
}
