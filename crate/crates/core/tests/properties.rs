//! Randomized invariants of the cone, root-datum, branching and decision
//! layers.

mod common;

use std::collections::BTreeMap;

use common::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use kcone::branching::{branch, invariant_dimension, spherical_monoid, Block, Embedding};
use kcone::conecalc::{as_support, c_cone, ConeOptions, KModuleSpec, SubgroupSpec};
use kcone::decision::{decide_admissible, Status};
use kcone::ratcone::{
    dd_convert, hull_membership, intersect, is_trivial_intersection, limit_cone, membership, q, qf, Cone, ConeUnion,
    RatVec, SupportDescription, Q,
};
use kcone::rootdata::RootDatum;

fn gens(dim: usize, max_gens: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=max_gens)
}

fn cone_pair() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(|d| (Just(d), gens(d, 3), gens(d, 3)))
}

fn probes(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 20)
}

/// Clears denominators of two coefficient vectors by a common factor.
fn integral_combination(a: &[Q], b: &[Q]) -> (Vec<i64>, Vec<i64>) {
    let mut den = num_bigint::BigInt::from(1);
    for x in a.iter().chain(b) {
        den = num_integer::lcm(den, x.denom().clone());
    }
    let conv = |xs: &[Q]| -> Vec<i64> {
        xs.iter().map(|x| i64::try_from((x * Q::from_integer(den.clone())).to_integer()).unwrap()).collect()
    };
    (conv(a), conv(b))
}

fn combine(gens: &[Vec<i64>], coeffs: &[i64], dim: usize) -> Vec<i64> {
    let mut out = vec![0; dim];
    for (g, c) in gens.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(g) {
            *o += c * x;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]

    /// Z-, Q- and R-span intersections agree with a bounded integer search.
    #[test]
    fn lemma_2_8_equivalence((dim, s, t) in cone_pair()) {
        let (c1, c2) = (cone(dim, &s), cone(dim, &t));
        let (trivial, cert) = is_trivial_intersection(&c1, &c2).unwrap();
        cert.verify(&c1, &c2).unwrap();
        let brute = brute_force_common(&s, &t, dim, 6);
        if brute.is_some() {
            prop_assert!(!trivial);
        }
        if !trivial {
            let w = cert.witness().unwrap();
            prop_assert!(c1.contains(w).unwrap() && c2.contains(w).unwrap());
            // Nonzero rational witness gives a nonzero integral one.
            let a = membership(w, &c1).unwrap().unwrap();
            let b = membership(w, &c2).unwrap().unwrap();
            let (ai, bi) = integral_combination(&a, &b);
            let (s_nz, t_nz): (Vec<_>, Vec<_>) = (
                s.iter().filter(|g| g.iter().any(|x| *x != 0)).cloned().collect(),
                t.iter().filter(|g| g.iter().any(|x| *x != 0)).cloned().collect(),
            );
            let lhs = combine(&s_nz, &ai, dim);
            prop_assert_eq!(&lhs, &combine(&t_nz, &bi, dim));
            prop_assert!(lhs.iter().any(|x| *x != 0));
        }
    }

    /// A trivial intersection keeps every ray of the second cone outside a
    /// facet of the first, so thickened neighbourhoods meet it in a bounded
    /// set; a common ray stays at distance zero forever.
    #[test]
    fn delta_neighbourhood((dim, s, t) in cone_pair()) {
        let (c1, c2) = (cone(dim, &s), cone(dim, &t));
        let (trivial, cert) = is_trivial_intersection(&c1, &c2).unwrap();
        let facets = dd_convert(&c1).facet_list();
        // Lower bound for the distance to c1, up to facet norms.
        let gap = |x: &RatVec| facets.iter().map(|f| -f.dot(x)).fold(Q::zero(), |m, y| if y > m { y } else { m });
        if trivial {
            for a in 0..=3i64 {
                for g in c2.generators() {
                    for h in c2.generators() {
                        let x = &g.scale(&q(a)) + h;
                        if !x.is_zero() {
                            let big = x.scale(&q(1000));
                            prop_assert!(gap(&x).is_positive());
                            prop_assert_eq!(gap(&big), gap(&x) * q(1000));
                        }
                    }
                }
            }
        } else {
            let w = cert.witness().unwrap();
            prop_assert!(gap(&w.scale(&q(1000))).is_zero());
        }
    }

    #[test]
    fn dd_round_trip((dim, s, _t) in cone_pair(), pts in probes(4)) {
        let c = cone(dim, &s);
        let d = dd_convert(&c);
        let back = Cone::from_facets(dim, d.facet_list()).unwrap();
        let again = Cone::from_generators(dim, back.generators().to_vec()).unwrap();
        for p in &pts {
            let p = v(&p[..dim]);
            let m = c.contains(&p).unwrap();
            prop_assert_eq!(m, again.contains(&p).unwrap());
            prop_assert_eq!(m, d.facet_list().iter().all(|f| !f.dot(&p).is_negative()));
        }
    }

    #[test]
    fn intersection_is_set_intersection((dim, s, t) in cone_pair(), pts in probes(4)) {
        let (c1, c2) = (cone(dim, &s), cone(dim, &t));
        let i = intersect(&c1, &c2).unwrap();
        for g in i.generators() {
            prop_assert!(c1.contains(g).unwrap() && c2.contains(g).unwrap());
        }
        for p in &pts {
            let p = v(&p[..dim]);
            let both = c1.contains(&p).unwrap() && c2.contains(&p).unwrap();
            prop_assert_eq!(both, i.contains(&p).unwrap());
        }
        // Two algorithms, one answer.
        let (trivial, _) = is_trivial_intersection(&c1, &c2).unwrap();
        prop_assert_eq!(trivial, i.is_zero());
    }

    #[test]
    fn limit_cones_contain_generators((dim, s, _t) in cone_pair()) {
        let ws: Vec<RatVec> = s.iter().map(|g| v(g)).collect();
        let c = limit_cone(&SupportDescription::MonoidGenerators(ws.clone())).unwrap();
        for w in &ws {
            prop_assert!(c.contains(w).unwrap());
        }
        prop_assert!(limit_cone(&SupportDescription::FiniteSet(ws)).unwrap().is_zero());
        prop_assert_eq!(c.dim(), dim);
    }

    /// Scaling generators by positive rationals never changes a verdict.
    #[test]
    fn verdicts_are_scale_invariant(
        (dim, s, t) in cone_pair(),
        scales in prop::collection::vec((1i64..=9, 1i64..=9), 6),
    ) {
        let (c1, c2) = (cone(dim, &s), cone(dim, &t));
        let f = |c: &Cone, off: usize| {
            let k: Vec<Q> = (0..c.generators().len()).map(|i| { let (a, b) = scales[(i + off) % 6]; qf(a, b) }).collect();
            c.rescaled(&k)
        };
        let before = decide_admissible(&ConeUnion::single(c1.clone()), &c2).unwrap();
        let after = decide_admissible(&ConeUnion::single(f(&c1, 0)), &f(&c2, 3)).unwrap();
        prop_assert_eq!(before.status(), after.status());
        before.verify(&ConeUnion::single(c1), &c2).unwrap();
    }
}

fn small_dominant(r: &RootDatum, max: i64) -> impl Strategy<Value = Vec<i64>> {
    let rank = r.rank();
    let center = r.center_dim();
    (prop::collection::vec(0..=max, rank), prop::collection::vec(-max..=max, center))
        .prop_map(|(a, b)| a.into_iter().chain(b).collect())
}

const TYPES: &[&str] = &["A1", "A2", "B2", "C3", "D4", "A1xA1", "U2", "U3"];

fn type_and_weight(max: i64) -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop::sample::select(TYPES).prop_flat_map(move |t| (Just(t), small_dominant(&rd(t), max)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, .. ProptestConfig::default() })]

    #[test]
    fn multiplicities_are_weyl_invariant((t, l) in type_and_weight(3)) {
        let r = rd(t);
        let lambda = v(&l);
        prop_assume!(r.in_lattice(&lambda));
        prop_assume!(r.weyl_dimension(&lambda).unwrap() <= 10_000);
        let m = r.weight_multiplicities(&lambda).unwrap();
        prop_assert_eq!(m.values().map(|x| *x as u128).sum::<u128>(), r.weyl_dimension(&lambda).unwrap());
        let w = r.weyl_group();
        for (mu, k) in m.iter().take(40) {
            for i in 0..r.rank() {
                let img = w.reflect(i, &v(mu));
                let key: Vec<i64> = img.coords().iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect();
                prop_assert_eq!(m.get(&key), Some(k));
            }
        }
    }

    #[test]
    fn orbit_meets_chamber_once((t, l) in type_and_weight(3), word in prop::collection::vec(0usize..8, 0..6)) {
        let r = rd(t);
        prop_assume!(r.rank() > 0);
        let w = r.weyl_group();
        let word: Vec<usize> = word.into_iter().map(|i| i % r.rank()).collect();
        let x = w.apply_word(&word, &v(&l));
        let orbit = r.weyl_orbit(&x).unwrap();
        let dominant: Vec<_> = orbit.iter().filter(|p| r.is_dominant(p)).collect();
        let target = v(&l);
        prop_assert_eq!(dominant, vec![&target]);
        if r.is_semisimple() && l.iter().any(|x| *x != 0) {
            prop_assert!(hull_membership(&RatVec::zeros(r.dim()), &orbit).unwrap());
        }
    }

    #[test]
    fn chamber_is_cut_out_by_simple_roots((t, l) in type_and_weight(4)) {
        let r = rd(t);
        let c = dd_convert(&r.dominant_chamber());
        for g in c.generators() {
            for a in r.simple_roots() {
                prop_assert!(!r.inner(g, &a).is_negative());
            }
        }
        prop_assert!(c.contains(&v(&l)).unwrap());
    }
}

fn presets() -> Vec<(&'static str, Vec<Block>)> {
    vec![
        ("A1xA1", vec![Block::Diagonal]),
        ("A2xA2", vec![Block::Diagonal]),
        ("A2", vec![Block::SoInSu]),
        ("A3", vec![Block::SUxUInSU]),
        ("A2", vec![Block::Torus]),
        ("B2", vec![Block::SoEvenInSoOdd]),
        ("B3", vec![Block::SoEvenInSoOdd]),
        ("D3", vec![Block::UnitaryInSoEven]),
        ("D3", vec![Block::SoOddInSoEven]),
        ("D4", vec![Block::Spin7Triality]),
        ("D4", vec![Block::SoOddInSoEven]),
        ("U3", vec![Block::Center]),
        ("C2", vec![Block::DerivedTorus]),
    ]
}

fn preset_and_weight() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..presets().len()).prop_flat_map(|i| {
        let r = rd(presets()[i].0);
        (Just(i), small_dominant(&r, 2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, .. ProptestConfig::default() })]

    #[test]
    fn branching_conserves_dimension((i, l) in preset_and_weight()) {
        let (t, blocks) = &presets()[i];
        let r = rd(t);
        let lambda = v(&l);
        prop_assume!(r.in_lattice(&lambda));
        prop_assume!(r.weyl_dimension(&lambda).unwrap() <= 2000);
        let e = Embedding::from_blocks(&r, blocks).unwrap();
        let b = branch(&e, &lambda).unwrap();
        // Torus characters of SU(n) have fractional coordinates; dimensions
        // only see the semisimple part.
        let total: u128 = b.iter().map(|(tau, m)| *m as u128 * e.target().weyl_dimension(tau).unwrap()).sum();
        prop_assert_eq!(total, r.weyl_dimension(&lambda).unwrap());
        let zero = RatVec::zeros(e.target().dim());
        prop_assert_eq!(b.get(&zero).copied().unwrap_or(0), invariant_dimension(&e, &lambda).unwrap());
    }

    /// Restricted weight multiplicities are invariant under the subgroup's
    /// Weyl group.
    #[test]
    fn restriction_is_subgroup_weyl_invariant((i, l) in preset_and_weight()) {
        let (t, blocks) = &presets()[i];
        let r = rd(t);
        let lambda = v(&l);
        prop_assume!(r.in_lattice(&lambda));
        prop_assume!(r.weyl_dimension(&lambda).unwrap() <= 2000);
        let e = Embedding::from_blocks(&r, blocks).unwrap();
        let mut restricted: BTreeMap<RatVec, u64> = BTreeMap::new();
        for (mu, m) in r.weight_multiplicities(&lambda).unwrap() {
            *restricted.entry(e.restrict(&v(&mu))).or_insert(0) += m;
        }
        let w = e.target().weyl_group();
        for (mu, m) in &restricted {
            for j in 0..e.target().rank() {
                prop_assert_eq!(restricted.get(&w.reflect(j, mu)), Some(m));
            }
        }
    }

    /// Products of spherical weights are spherical.
    #[test]
    fn spherical_support_is_a_monoid((i, a) in preset_and_weight(), b in prop::collection::vec(0i64..=2, 8)) {
        let (t, blocks) = &presets()[i];
        let r = rd(t);
        let e = Embedding::from_blocks(&r, blocks).unwrap();
        let b: Vec<i64> = (0..r.dim()).map(|k| if k < r.rank() { b[k] } else { -a[k] }).collect();
        let (la, lb) = (v(&a), v(&b));
        prop_assume!(r.in_lattice(&la) && r.in_lattice(&lb));
        let sum = &la + &lb;
        prop_assume!(r.weyl_dimension(&sum).unwrap() <= 3000);
        if invariant_dimension(&e, &la).unwrap() > 0 && invariant_dimension(&e, &lb).unwrap() > 0 {
            prop_assert!(invariant_dimension(&e, &sum).unwrap() > 0);
        }
    }
}

/// `K″ ⊂ K′` gives `C_K(K′) ⊂ C_K(K″)`.
#[test]
fn cones_shrink_as_subgroups_grow() {
    let o = ConeOptions { bound: 6 };
    for t in ["D2xD2", "D3xD3"] {
        let r = rd(t);
        let chain = [
            SubgroupSpec::Whole,
            SubgroupSpec::symmetric(&r, &[Block::UnitaryInSoEven; 2]).unwrap(),
            SubgroupSpec::general(&r, &[Block::UnitaryInSoEven; 2]).unwrap(),
            SubgroupSpec::MaximalTorus,
            SubgroupSpec::Trivial,
        ];
        let cones: Vec<Cone> = chain.iter().map(|s| c_cone(&r, s, &o).unwrap().cone).collect();
        for pair in cones.windows(2) {
            assert!(pair[1].contains_cone(&pair[0]).unwrap(), "{t}");
        }
    }
    let r = rd("A3");
    let so = c_cone(&r, &SubgroupSpec::symmetric(&r, &[Block::SoInSu]).unwrap(), &o).unwrap().cone;
    let t = c_cone(&r, &SubgroupSpec::MaximalTorus, &o).unwrap().cone;
    assert!(t.contains_cone(&so).unwrap());
}

/// Twisting by a finite-dimensional module moves points a bounded distance,
/// so normalized facet deficits decay like `1/k` and the limit cone is unchanged.
#[test]
fn tensoring_with_finite_modules_keeps_limit_cones() {
    let cases: [(&str, Vec<Block>, Vec<i64>); 3] = [
        ("D2", vec![Block::SoOddInSoEven], vec![1, 0]),
        ("A2", vec![Block::SoInSu], vec![1, 1]),
        ("A1xA1", vec![Block::Diagonal], vec![2, 1]),
    ];
    for (t, blocks, f) in cases {
        let r = rd(t);
        let e = Embedding::from_blocks(&r, &blocks).unwrap();
        let m = spherical_monoid(&e, 4).unwrap();
        let c = limit_cone(&SupportDescription::MonoidGenerators(m.generators.clone())).unwrap();
        let facets = dd_convert(&c).facet_list();
        let f_weights: Vec<RatVec> = r.weight_multiplicities(&v(&f)).unwrap().into_keys().map(|w| v(&w)).collect();
        let mut previous: Option<Q> = None;
        for k in [10i64, 100, 1000] {
            let mut worst = Q::zero();
            for g in &m.generators {
                for nu in &f_weights {
                    let x = &g.scale(&q(k)) + nu;
                    for fa in &facets {
                        let d = -fa.dot(&x) / q(k);
                        if d > worst {
                            worst = d;
                        }
                    }
                }
            }
            if let Some(p) = previous {
                assert!(worst.is_zero() || worst.clone() * q(10) <= p, "{t}: deficit does not decay");
            }
            previous = Some(worst);
        }
        // The same holds for modules induced from `Q ∩ K`: the support only
        // depends on `C_K(Q ∩ K)`.
        let sub = SubgroupSpec::general(&r, &blocks).unwrap();
        let induced = as_support(&r, &KModuleSpec::ParabolicInduced(sub), &ConeOptions::default()).unwrap();
        assert!(induced.union.components()[0].same_set(&c).unwrap());
    }
}

/// A submodule's support cone lies inside the ambient one.
#[test]
fn support_is_monotone() {
    let r = rd("B2");
    let o = ConeOptions::default();
    let small = as_support(&r, &KModuleSpec::MonoidSupport(vec![v(&[2, 0])]), &o).unwrap();
    let big = as_support(&r, &KModuleSpec::MonoidSupport(vec![v(&[1, 0]), v(&[0, 2])]), &o).unwrap();
    assert!(big.union.components()[0].contains_cone(&small.union.components()[0]).unwrap());
}

/// A common ray of lower-bound cones settles non-admissibility; a trivial
/// intersection of them does not settle admissibility.
#[test]
fn verdict_soundness_under_truncation() {
    let r = rd("A1xA1");
    let sub = SubgroupSpec::general(&r, &[Block::Diagonal]).unwrap();
    let x = KModuleSpec::MonoidSupport(vec![v(&[1, 1])]);
    for bound in 1..=4 {
        let verdict = kcone::decision::decide_module(&r, &x, &sub, &ConeOptions { bound }).unwrap();
        let want = if bound >= 2 { Status::NotAdmissible } else { Status::ProvisionalAdmissible };
        assert_eq!(verdict.status(), want, "bound {bound}");
    }
}
