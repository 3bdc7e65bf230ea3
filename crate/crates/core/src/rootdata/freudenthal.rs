//! Freudenthal's recursion, run factor by factor on dominant weights only.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;

use super::{Factor, RootDatum};
use crate::ratcone::linalg;
use crate::ratcone::{q, Q};

/// Weight (integer internal coordinates) to multiplicity.
pub type Multiplicities = BTreeMap<Vec<i64>, u64>;

struct Local<'a> {
    cartan: &'a [Vec<i64>],
    roots: &'a [Vec<i64>],
    gram: Vec<Vec<i64>>,
}

impl Local<'_> {
    fn form(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                s += (*x as i128) * (self.gram[i][j] as i128) * (*y as i128);
            }
        }
        s
    }

    fn reflect(&self, i: usize, v: &mut [i64]) {
        let c = v[i];
        if c != 0 {
            for (x, a) in v.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    fn dominant(&self, v: &[i64]) -> Vec<i64> {
        let mut cur = v.to_vec();
        while let Some(i) = cur.iter().position(|&x| x < 0) {
            self.reflect(i, &mut cur);
        }
        cur
    }

    fn orbit(&self, v: &[i64]) -> Vec<Vec<i64>> {
        let mut seen = BTreeSet::new();
        seen.insert(v.to_vec());
        let mut stack = vec![v.to_vec()];
        while let Some(x) = stack.pop() {
            for i in 0..self.cartan.len() {
                let mut y = x.clone();
                self.reflect(i, &mut y);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Dominant weights `μ ≤ λ` with their multiplicities in `V_λ`.
fn dominant_multiplicities(local: &Local, lambda: &[i64]) -> Vec<(Vec<i64>, u64)> {
    let r = lambda.len();
    if r == 0 {
        return vec![(Vec::new(), 1)];
    }
    // Every dominant weight below λ is reachable through dominant weights
    // by subtracting one positive root at a time.
    let mut found = BTreeSet::new();
    found.insert(lambda.to_vec());
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        for alpha in local.roots {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&x| x >= 0) && found.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }

    // Depth = height of λ - μ in simple-root coordinates.
    let a: Vec<Vec<Q>> = local.cartan.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
    let a_inv = linalg::inverse(&a).expect("Cartan matrix is invertible");
    let h: Vec<Q> = a_inv.iter().map(|row| row.iter().fold(Q::zero(), |s, x| s + x)).collect();
    let depth = |mu: &[i64]| -> Q {
        lambda.iter().zip(mu).zip(&h).fold(Q::zero(), |s, ((l, m), hi)| s + q(l - m) * hi)
    };
    let mut order: Vec<(Q, Vec<i64>)> = found.into_iter().map(|mu| (depth(&mu), mu)).collect();
    order.sort();

    let lr: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let norm_lr = local.form(&lr, &lr);
    let mut mult: HashMap<Vec<i64>, i128> = HashMap::new();
    let mut out = Vec::new();
    for (_, mu) in order {
        let m = if mu == lambda {
            1
        } else {
            let mut sum = 0i128;
            for alpha in local.roots {
                let mut nu = mu.clone();
                loop {
                    nu.iter_mut().zip(alpha).for_each(|(x, a)| *x += a);
                    let mn = *mult.get(&local.dominant(&nu)).unwrap_or(&0);
                    if mn == 0 {
                        break;
                    }
                    sum += local.form(&nu, alpha) * mn;
                }
            }
            let mr: Vec<i64> = mu.iter().map(|x| x + 1).collect();
            let denom = norm_lr - local.form(&mr, &mr);
            debug_assert!(denom > 0);
            debug_assert_eq!((2 * sum) % denom, 0);
            2 * sum / denom
        };
        mult.insert(mu.clone(), m);
        if m > 0 {
            out.push((mu, m as u64));
        }
    }
    out
}

fn factor_multiplicities(rd: &RootDatum, f: &Factor, lambda: &[i64]) -> Vec<(Vec<i64>, u64)> {
    let local = Local { cartan: f.cartan(), roots: f.positive_roots(), gram: rd.local_gram_int(f) };
    let mut out = Vec::new();
    for (mu, m) in dominant_multiplicities(&local, lambda) {
        for w in local.orbit(&mu) {
            out.push((w, m));
        }
    }
    out
}

pub(super) fn multiplicities(rd: &RootDatum, lambda: &[i64]) -> Multiplicities {
    let rank = rd.rank();
    let mut acc: Vec<(Vec<i64>, u64)> = vec![(Vec::new(), 1)];
    for f in rd.factors().iter().filter(|f| f.ss_rank > 0) {
        let local = factor_multiplicities(rd, f, &lambda[f.ss_offset..f.ss_offset + f.ss_rank]);
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for (a, ma) in &acc {
            for (b, mb) in &local {
                let mut v = a.clone();
                v.extend_from_slice(b);
                next.push((v, ma * mb));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(mut v, m)| {
            debug_assert_eq!(v.len(), rank);
            v.extend_from_slice(&lambda[rank..]);
            (v, m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use crate::ratcone::RatVec;
    use crate::rootdata::RootDatum;

    fn total(rd: &RootDatum, l: &[i64]) -> u64 {
        rd.weight_multiplicities(&RatVec::from_ints(l)).unwrap().values().sum()
    }

    #[test]
    fn a1_strings() {
        let rd = RootDatum::parse("A1").unwrap();
        let m = rd.weight_multiplicities(&RatVec::from_ints(&[4])).unwrap();
        let keys: Vec<i64> = m.keys().map(|k| k[0]).collect();
        assert_eq!(keys, vec![-4, -2, 0, 2, 4]);
        assert!(m.values().all(|&x| x == 1));
    }

    #[test]
    fn a2_adjoint() {
        let rd = RootDatum::parse("A2").unwrap();
        let m = rd.weight_multiplicities(&RatVec::from_ints(&[1, 1])).unwrap();
        assert_eq!(m[&vec![0, 0]], 2);
        assert_eq!(m.values().sum::<u64>(), 8);
        assert_eq!(m.len(), 7);
    }

    #[test]
    fn trivial_and_central() {
        let rd = RootDatum::parse("U3").unwrap();
        let m = rd.weight_multiplicities(&RatVec::from_ints(&[0, 0, 5])).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&vec![0, 0, 5]], 1);
    }

    #[test]
    fn totals_match_weyl_dimension() {
        for (t, ls) in [
            ("B2", vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 3]]),
            ("C3", vec![vec![1, 0, 0], vec![0, 1, 1]]),
            ("D4", vec![vec![0, 1, 0, 0], vec![1, 0, 1, 1], vec![2, 0, 0, 0]]),
            ("A1xA2", vec![vec![2, 1, 1]]),
        ] {
            let rd = RootDatum::parse(t).unwrap();
            for l in ls {
                let dim = rd.weyl_dimension(&RatVec::from_ints(&l)).unwrap();
                assert_eq!(total(&rd, &l) as u128, dim, "{t} {l:?}");
            }
        }
    }
}
