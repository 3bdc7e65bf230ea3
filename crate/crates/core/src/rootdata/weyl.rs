use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use super::{Family, FactorKind, RootDatum};
use crate::ratcone::{RatVec, Q};

/// Weyl group generated by the simple reflections
/// `s_i(λ) = λ - <λ, α_i^∨> α_i`; in fundamental coordinates the pairing is
/// just the `i`-th coordinate.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    simple_roots: Vec<Vec<Q>>,
    order: u128,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl WeylGroup {
    pub fn new(rd: &RootDatum) -> WeylGroup {
        let order = rd
            .factors()
            .iter()
            .map(|f| match f.kind {
                FactorKind::Simple(t) => match t.family {
                    Family::A => factorial(t.rank + 1),
                    Family::B | Family::C => (1u128 << t.rank) * factorial(t.rank),
                    Family::D => (1u128 << (t.rank - 1)) * factorial(t.rank),
                },
                FactorKind::Unitary(n) => factorial(n),
                FactorKind::Torus(_) => 1,
            })
            .product();
        let simple_roots = rd.simple_roots().into_iter().map(RatVec::into_coords).collect();
        WeylGroup { dim: rd.dim(), simple_roots, order }
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn reflect(&self, i: usize, v: &RatVec) -> RatVec {
        let c = v[i].clone();
        if c.is_zero() {
            return v.clone();
        }
        RatVec::new(v.coords().iter().zip(&self.simple_roots[i]).map(|(x, a)| x - &c * a).collect())
    }

    /// Applies `s_{w[0]}` first, then `s_{w[1]}`, and so on.
    pub fn apply_word(&self, word: &[usize], v: &RatVec) -> RatVec {
        word.iter().fold(v.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Dominant representative and the reflection word reaching it.
    pub fn to_dominant(&self, v: &RatVec) -> (RatVec, Vec<usize>) {
        let mut cur = v.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| cur[i].is_negative()) {
            cur = self.reflect(i, &cur);
            word.push(i);
        }
        (cur, word)
    }

    /// Full orbit, sorted, without duplicates.
    pub fn orbit(&self, v: &RatVec) -> Vec<RatVec> {
        self.orbit_with_depth(v).into_iter().map(|(w, _)| w).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Orbit points with their breadth-first distance from `v`. For a
    /// regular dominant `v` the distance is the length of the unique Weyl
    /// element carrying `v` there.
    pub fn orbit_with_depth(&self, v: &RatVec) -> Vec<(RatVec, usize)> {
        assert_eq!(v.dim(), self.dim);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back((v.clone(), 0));
        while let Some((x, d)) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back((y, d + 1));
                }
            }
            out.push((x, d));
        }
        out
    }

    /// Sign `(-1)^{ℓ(w)}` and image `wρ` for every element, in breadth-first order.
    pub fn signed_rho_images(&self, rho: &RatVec) -> Vec<(RatVec, i64)> {
        self.orbit_with_depth(rho)
            .into_iter()
            .map(|(x, d)| (x, if d % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// `⟨v, α_i^∨⟩` for every simple root.
    pub fn pairings(&self, v: &RatVec) -> Vec<Q> {
        (0..self.rank()).map(|i| v[i].clone()).collect()
    }
}
