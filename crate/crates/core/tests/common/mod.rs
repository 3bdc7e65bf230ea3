//! Independent oracles shared by the integration tests. None of them call
//! into the cone, LP or Weyl-group code they check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use kcone::ratcone::{Cone, RatVec};
use kcone::rootdata::RootDatum;

pub fn v(xs: &[i64]) -> RatVec {
    RatVec::from_ints(xs)
}

pub fn cone(dim: usize, gens: &[Vec<i64>]) -> Cone {
    Cone::from_generators(dim, gens.iter().map(|g| v(g)).collect()).unwrap()
}

/// All `Σ a_i s_i` with `a_i ∈ {0..=max}`.
pub fn int_combinations(gens: &[Vec<i64>], dim: usize, max: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    out.insert(vec![0; dim]);
    for g in gens {
        let mut next = BTreeSet::new();
        for p in &out {
            for a in 0..=max {
                next.insert(p.iter().zip(g).map(|(x, y)| x + a * y).collect::<Vec<i64>>());
            }
        }
        out = next;
    }
    out
}

/// Whether the two `Z>=0`-spans share a nonzero point with coefficients up to `max`.
pub fn brute_force_common(s: &[Vec<i64>], t: &[Vec<i64>], dim: usize, max: i64) -> Option<Vec<i64>> {
    let a = int_combinations(s, dim, max);
    let b = int_combinations(t, dim, max);
    a.intersection(&b).find(|p| p.iter().any(|x| *x != 0)).cloned()
}

/// Clebsch–Gordan: `V_n ⊗ V_m` for `SU(2)`, by highest weight.
pub fn clebsch_gordan(n: i64, m: i64) -> Vec<i64> {
    ((n - m).abs()..=n + m).step_by(2).collect()
}

/// Weights of `V_n` for `SU(2)`.
pub fn su2_weights(n: i64) -> Vec<i64> {
    (0..=n).map(|k| n - 2 * k).collect()
}

/// Orbit of `x` under the reflections `s_i(x) = x - x_i α_i`, with `α_i`
/// the rows of the Cartan matrix. Semisimple coordinates only.
pub fn reflection_closure(cartan: &[Vec<i64>], x: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![x.to_vec()];
    while let Some(p) = stack.pop() {
        if !seen.insert(p.clone()) {
            continue;
        }
        for (i, a) in cartan.iter().enumerate() {
            let q: Vec<i64> = p.iter().zip(a).map(|(y, ai)| y - p[i] * ai).collect();
            if !seen.contains(&q) {
                stack.push(q);
            }
        }
    }
    seen
}

/// Character of a tensor product of `SU(2)` representations decomposed by
/// repeated peeling of the top weight.
pub fn peel_su2(mut weights: BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    while let Some((&top, &m)) = weights.iter().rev().find(|(_, m)| **m != 0) {
        assert!(m > 0, "negative multiplicity in oracle");
        *out.entry(top).or_insert(0) += m;
        for w in su2_weights(top) {
            *weights.entry(w).or_insert(0) -= m;
        }
    }
    out
}

pub fn rd(t: &str) -> RootDatum {
    RootDatum::parse(t).unwrap()
}
