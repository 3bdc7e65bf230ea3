//! Restricted root systems of involutions and the chamber `(t^{-σ})*_+`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::branching::Block;
use crate::error::{Error, Result};
use crate::ratcone::linalg::{self, QMatrix};
use crate::ratcone::{q, Cone, RatVec, Q};
use crate::rootdata::{FactorKind, RootDatum};

/// An involution of `K` acting on weight space.
#[derive(Clone, Debug)]
pub struct InvolutionData {
    /// Matrix on internal coordinates.
    pub sigma_on_t: QMatrix,
    /// `root_permutation[i] = j` when σ maps root `i` to root `j`, indexing
    /// positive roots first and then their negatives.
    pub root_permutation: Vec<usize>,
}

fn all_roots(rd: &RootDatum) -> Vec<RatVec> {
    let pos: Vec<RatVec> = rd.positive_roots().iter().map(|r| RatVec::from_ints(r)).collect();
    let neg: Vec<RatVec> = pos.iter().map(|r| -r).collect();
    pos.into_iter().chain(neg).collect()
}

impl InvolutionData {
    /// Validates σ on internal coordinates.
    pub fn new(rd: &RootDatum, sigma: QMatrix) -> Result<InvolutionData> {
        let d = rd.dim();
        if sigma.len() != d || sigma.iter().any(|r| r.len() != d) {
            return Err(Error::Involution(format!("σ must be {d} x {d}")));
        }
        if linalg::mat_mul(&sigma, &sigma, d) != linalg::identity(d) {
            return Err(Error::Involution("σ² is not the identity".into()));
        }
        let st = linalg::transpose(&sigma, d);
        if linalg::mat_mul(&linalg::mat_mul(&st, rd.gram(), d), &sigma, d) != *rd.gram() {
            return Err(Error::Involution("σ does not preserve the invariant form".into()));
        }
        if sigma.iter().flatten().any(|x| !x.is_integer()) {
            return Err(Error::Involution("σ does not preserve the weight lattice".into()));
        }
        let roots = all_roots(rd);
        let mut root_permutation = Vec::with_capacity(roots.len());
        for r in &roots {
            let img = RatVec::new(linalg::mat_vec(&sigma, r.coords()));
            let j = roots
                .iter()
                .position(|s| *s == img)
                .ok_or_else(|| Error::Involution(format!("σ maps root {r} to {img}, which is not a root")))?;
            root_permutation.push(j);
        }
        Ok(InvolutionData { sigma_on_t: sigma, root_permutation })
    }

    /// From a matrix on standard coordinates.
    pub fn from_standard(rd: &RootDatum, sigma_std: &[Vec<Q>]) -> Result<InvolutionData> {
        let d = rd.dim();
        let s = rd.std_dim();
        if sigma_std.len() != s || sigma_std.iter().any(|r| r.len() != s) {
            return Err(Error::Involution(format!("standard σ must be {s} x {s}")));
        }
        let sb = linalg::mat_mul(sigma_std, rd.basis(), d);
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let col = RatVec::new(sb.iter().map(|r| r[j].clone()).collect());
            let c = rd
                .from_standard(&col)
                .map_err(|_| Error::Involution("σ does not preserve the weight space".into()))?;
            cols.push(c.into_coords());
        }
        InvolutionData::new(rd, linalg::transpose(&cols, d))
    }

    /// Block-diagonal involution; leftover torus factors are fixed.
    pub fn from_blocks(rd: &RootDatum, blocks: &[Block]) -> Result<InvolutionData> {
        let kinds: Vec<FactorKind> = rd.factors().iter().map(|f| f.kind).collect();
        let consumed: usize = blocks.iter().map(|b| b.consumes()).sum();
        if consumed > kinds.len() {
            return Err(Error::Involution(format!("blocks consume {consumed} factors but {rd} has {}", kinds.len())));
        }
        let mut used = blocks.to_vec();
        for k in &kinds[consumed..] {
            if !matches!(k, FactorKind::Torus(_)) {
                return Err(Error::Involution(format!("no block given for factor {k} of {rd}")));
            }
            used.push(Block::Whole);
        }
        let mut sigma = linalg::zeros(rd.std_dim(), rd.std_dim());
        let (mut pos, mut off) = (0, 0);
        for b in used {
            let n = b.consumes();
            let m = b.involution(&kinds[pos..pos + n])?;
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    sigma[off + i][off + j] = x.clone();
                }
            }
            off += m.len();
            pos += n;
        }
        InvolutionData::from_standard(rd, &sigma)
    }

    pub fn is_identity(&self) -> bool {
        self.sigma_on_t == linalg::identity(self.sigma_on_t.len())
    }
}

/// Output of [`restricted_chamber`].
#[derive(Clone, Debug)]
pub struct RestrictedRootData {
    /// `ι`-image of the restricted chamber, inside `t*_+`.
    pub chamber: Cone,
    /// Restricted chamber for the compatible positive system, before `ι`.
    pub compatible_chamber: Cone,
    /// Compatible positive system `Δ⁺` (internal coordinates).
    pub compatible_positive: Vec<RatVec>,
    /// Positive restricted roots `Σ⁺`.
    pub restricted_positive: Vec<RatVec>,
    /// Reduced word of `ι` in simple reflections, applied left to right.
    pub iota: Vec<usize>,
    /// Dimension of the `-1` eigenspace.
    pub split_rank: usize,
}

/// Lexicographic sign of `(⟨v, b_1⟩, …, ⟨v, b_k⟩, ⟨v, c_1⟩, …)`.
fn lex_sign(rd: &RootDatum, v: &RatVec, order: &[RatVec]) -> i32 {
    for b in order {
        let x = rd.inner(v, b);
        if x.is_positive() {
            return 1;
        }
        if x.is_negative() {
            return -1;
        }
    }
    0
}

fn is_root_system(rd: &RootDatum, roots: &BTreeSet<RatVec>) -> bool {
    roots.iter().all(|b| {
        roots.iter().all(|g| {
            let gg = rd.inner(g, g);
            let n = q(2) * rd.inner(b, g) / &gg;
            if !n.is_integer() {
                return false;
            }
            let img = b - &g.scale(&n);
            roots.contains(&img)
        })
    })
}

/// Computes the chamber `(t^{-σ})*_+` of the restricted root system and
/// transports it into the standard chamber.
pub fn restricted_chamber(rd: &RootDatum, inv: &InvolutionData) -> Result<RestrictedRootData> {
    let d = rd.dim();
    let half = Q::new(1.into(), 2.into());
    let p: QMatrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let id = if i == j { q(1) } else { Q::zero() };
                    (id - &inv.sigma_on_t[i][j]) * &half
                })
                .collect()
        })
        .collect();
    let e_basis: Vec<RatVec> = linalg::row_basis(&linalg::transpose(&p, d), d).into_iter().map(RatVec::new).collect();
    let k = e_basis.len();
    if k == 0 {
        return Ok(RestrictedRootData {
            chamber: Cone::zero(d),
            compatible_chamber: Cone::zero(d),
            compatible_positive: Vec::new(),
            restricted_positive: Vec::new(),
            iota: Vec::new(),
            split_rank: 0,
        });
    }
    let gb: Vec<Vec<Q>> = e_basis.iter().map(|b| linalg::mat_vec(rd.gram(), b.coords())).collect();
    let perp: Vec<RatVec> = linalg::nullspace(&gb, d).into_iter().map(RatVec::new).collect();

    let project = |v: &RatVec| RatVec::new(linalg::mat_vec(&p, v.coords()));
    let roots = all_roots(rd);
    let restricted: BTreeSet<RatVec> = roots.iter().map(project).filter(|r| !r.is_zero()).collect();
    if !is_root_system(rd, &restricted) {
        return Err(Error::Involution(
            "restricted roots do not form a root system; the -1 eigenspace is not maximal abelian".into(),
        ));
    }

    let order: Vec<RatVec> = e_basis.iter().chain(&perp).cloned().collect();
    let compatible_positive: Vec<RatVec> = roots.iter().filter(|a| lex_sign(rd, a, &order) > 0).cloned().collect();
    if compatible_positive.len() * 2 != roots.len() {
        return Err(Error::Internal("lexicographic order is not regular on the roots".into()));
    }
    let restricted_positive: BTreeSet<RatVec> =
        restricted.iter().filter(|b| lex_sign(rd, b, &e_basis) > 0).cloned().collect();
    let image: BTreeSet<RatVec> = compatible_positive.iter().map(project).filter(|r| !r.is_zero()).collect();
    if image != restricted_positive {
        return Err(Error::Involution("no compatible positive system found".into()));
    }

    let mut facets: Vec<RatVec> =
        compatible_positive.iter().map(|a| RatVec::new(linalg::mat_vec(rd.gram(), a.coords()))).collect();
    for c in &perp {
        let f = RatVec::new(linalg::mat_vec(rd.gram(), c.coords()));
        facets.push(-&f);
        facets.push(f);
    }
    let compatible_chamber = crate::ratcone::dd_convert(&Cone::from_facets(d, facets)?);

    let mut rho_c = RatVec::zeros(d);
    for a in &compatible_positive {
        rho_c = &rho_c + a;
    }
    let weyl = rd.weyl_group();
    let (dom, iota) = weyl.to_dominant(&rho_c);
    if dom.coords()[..rd.rank()].iter().any(Zero::is_zero) {
        return Err(Error::Internal("compatible ρ is not regular".into()));
    }
    let moved: Vec<RatVec> = compatible_chamber.generators().iter().map(|g| weyl.apply_word(&iota, g)).collect();
    if let Some(bad) = moved.iter().find(|g| !rd.is_dominant(g)) {
        return Err(Error::Internal(format!("ι does not carry {bad} into the dominant chamber")));
    }
    let chamber = Cone::from_generators(d, moved)?;
    Ok(RestrictedRootData {
        chamber,
        compatible_chamber,
        compatible_positive,
        restricted_positive: restricted_positive.into_iter().collect(),
        iota,
        split_rank: k,
    })
}
