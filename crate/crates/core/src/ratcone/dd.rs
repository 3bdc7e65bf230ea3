//! Double description: from `{x : <a_i, x> >= 0}` to lineality space plus
//! extreme rays, with combinatorial adjacency on zero sets.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg;
use super::vector::{primitive, primitive_int, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdOutput {
    /// Basis of the lineality space, primitive integer rows in echelon order.
    pub lineality: Vec<Vec<BigInt>>,
    /// Extreme rays modulo lineality, projected onto its orthogonal complement.
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn comb(ca: &BigInt, a: &[BigInt], cb: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    primitive_int(a.iter().zip(b).map(|(x, y)| ca * x - cb * y).collect())
}

/// Converts an inequality system (rows) in dimension `dim` to generators.
pub fn hrep_to_vrep(dim: usize, rows: &[Vec<Q>]) -> DdOutput {
    let mut ineqs: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| primitive(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    // Deterministic processing order.
    ineqs.sort();
    ineqs.dedup();
    let m = ineqs.len();

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !idot(a, l).is_zero()) {
            let mut l = lineality.remove(pos);
            let mut al = idot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = idot(a, other);
                if !ao.is_zero() {
                    *other = comb(&al, other, &ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = idot(a, &r.v);
                if !ar.is_zero() {
                    r.v = comb(&al, &r.v, &ar, &l);
                }
                r.zero.set(k);
            }
            let mut zero = Bits::new(m);
            for j in 0..k {
                zero.set(j);
            }
            rays.push(Ray { v: l, zero });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let need = dim.saturating_sub(lineality.len()).saturating_sub(2);
        let mut next: Vec<Ray> = Vec::new();
        for (r, s) in rays.iter().zip(&vals) {
            if !s.is_negative() {
                let mut r = r.clone();
                if s.is_zero() {
                    r.zero.set(k);
                }
                next.push(r);
            }
        }
        for (i, (rp, sp)) in rays.iter().zip(&vals).enumerate() {
            if !sp.is_positive() {
                continue;
            }
            for (j, (rn, sn)) in rays.iter().zip(&vals).enumerate() {
                if !sn.is_negative() {
                    continue;
                }
                let common = rp.zero.and(&rn.zero);
                if common.count() < need {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == i || t == j || !r.zero.contains(&common));
                if !adjacent {
                    continue;
                }
                // sp * rn - sn * rp with sp > 0, -sn > 0.
                let v = comb(sp, &rn.v, sn, &rp.v);
                let mut zero = common;
                zero.set(k);
                next.push(Ray { v, zero });
            }
        }
        rays = next;
    }

    canonicalize(dim, lineality, rays.into_iter().map(|r| r.v).collect())
}

fn canonicalize(dim: usize, lineality: Vec<Vec<BigInt>>, rays: Vec<Vec<BigInt>>) -> DdOutput {
    let lq: Vec<Vec<Q>> = lineality
        .iter()
        .map(|l| l.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let basis = linalg::row_basis(&lq, dim);
    let mut lin: Vec<Vec<BigInt>> = basis.iter().map(|r| primitive(r)).collect();
    lin.sort();

    // Orthogonal projection away from the lineality space.
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| super::vector::dot(x, y)).collect())
        .collect();
    let gram_inv = linalg::inverse(&gram).unwrap_or_default();
    let mut out: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| {
            let rq: Vec<Q> = r.iter().map(|x| Q::from_integer(x.clone())).collect();
            if basis.is_empty() {
                return r;
            }
            let coeffs: Vec<Q> = basis.iter().map(|b| super::vector::dot(b, &rq)).collect();
            let c = linalg::mat_vec(&gram_inv, &coeffs);
            let mut p = rq;
            for (ci, b) in c.iter().zip(&basis) {
                for (x, y) in p.iter_mut().zip(b) {
                    *x -= ci * y;
                }
            }
            primitive(&p)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    DdOutput { lineality: lin, rays: out }
}
