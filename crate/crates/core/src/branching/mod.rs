//! Restriction of representations to subgroups given as weight-restriction
//! maps, and the spherical monoid of `K/K′`.

pub mod presets;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratcone::linalg::{self, QMatrix};
use crate::ratcone::{q, RatVec, Q};
use crate::rootdata::{FactorKind, RootDatum, Weight};

pub use presets::Block;

/// `K′ ⊂ K` as a linear map from `K`-weights to `K′`-weights (internal coordinates).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: RootDatum,
    target: RootDatum,
    matrix: QMatrix,
    /// `den * matrix`, integral.
    scaled: Vec<Vec<i64>>,
    den: i64,
    /// Scaled `ρ′ - wρ′` with signs, computed on first use.
    rho_keys: OnceLock<Vec<(Vec<i64>, i64)>>,
    /// Independent blocks, when there is more than one.
    pieces: OnceLock<Vec<Piece>>,
}

/// A block of an embedding that touches no other block: source coordinate
/// indices and the restricted embedding.
#[derive(Clone, Debug)]
struct Piece {
    coords: Vec<usize>,
    embedding: Embedding,
}

fn factor_coords(rd: &RootDatum, i: usize) -> Vec<usize> {
    let f = &rd.factors()[i];
    (f.ss_offset..f.ss_offset + f.ss_rank).chain(f.center_offset..f.center_offset + f.center_dim).collect()
}

/// Multiplicities of `K′`-irreducibles, keyed by highest weight.
pub type BranchingResult = BTreeMap<Weight, u64>;

impl Embedding {
    /// From a matrix on internal coordinates (`target.dim() x source.dim()`).
    pub fn new(source: RootDatum, target: RootDatum, matrix: QMatrix) -> Result<Embedding> {
        if matrix.len() != target.dim() || matrix.iter().any(|r| r.len() != source.dim()) {
            return Err(Error::Embedding(format!(
                "restriction matrix must be {} x {}",
                target.dim(),
                source.dim()
            )));
        }
        let mut den = BigInt::one();
        for x in matrix.iter().flatten() {
            den = den.lcm(x.denom());
        }
        let den_q = Q::from_integer(den.clone());
        let scaled = matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        (x * &den_q)
                            .to_integer()
                            .to_i64()
                            .ok_or_else(|| Error::Embedding("restriction matrix entries too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let den = den.to_i64().ok_or_else(|| Error::Embedding("denominator too large".into()))?;
        Ok(Embedding { source, target, matrix, scaled, den, rho_keys: OnceLock::new(), pieces: OnceLock::new() })
    }

    /// From a matrix on standard coordinates (`target.std_dim() x source.std_dim()`).
    pub fn from_standard(source: RootDatum, target: RootDatum, r_std: &[Vec<Q>]) -> Result<Embedding> {
        if r_std.len() != target.std_dim() || r_std.iter().any(|r| r.len() != source.std_dim()) {
            return Err(Error::Embedding(format!(
                "standard restriction matrix must be {} x {}",
                target.std_dim(),
                source.std_dim()
            )));
        }
        let mut columns = Vec::with_capacity(source.dim());
        for j in 0..source.dim() {
            let img = if target.std_dim() == 0 {
                RatVec::zeros(0)
            } else {
                let col: Vec<Q> = source.basis().iter().map(|r| r[j].clone()).collect();
                RatVec::new(linalg::mat_vec(r_std, &col))
            };
            let c = target
                .from_standard(&img)
                .map_err(|_| Error::Embedding(format!("image of coordinate {j} leaves the weight space of {target}")))?;
            columns.push(c.into_coords());
        }
        let matrix = linalg::transpose(&columns, target.dim());
        Embedding::new(source, target, matrix)
    }

    /// Product of blocks consuming the factors of `source` in order.
    /// Leftover torus factors pass through unchanged.
    pub fn from_blocks(source: &RootDatum, blocks: &[Block]) -> Result<Embedding> {
        let kinds: Vec<FactorKind> = source.factors().iter().map(|f| f.kind).collect();
        let mut pos = 0;
        let mut targets = Vec::new();
        let mut pieces = Vec::new();
        let mut used: Vec<Block> = blocks.to_vec();
        let consumed: usize = blocks.iter().map(|b| b.consumes()).sum();
        if consumed > kinds.len() {
            return Err(Error::Embedding(format!("blocks consume {consumed} factors but {source} has {}", kinds.len())));
        }
        for k in &kinds[consumed..] {
            if !matches!(k, FactorKind::Torus(_)) {
                return Err(Error::Embedding(format!("no block given for factor {k} of {source}")));
            }
            used.push(Block::Whole);
        }
        for b in used {
            let n = b.consumes();
            let (t, m) = b.embedding(&kinds[pos..pos + n])?;
            let in_dim: usize = kinds[pos..pos + n].iter().map(|k| presets::std_dim(*k)).sum();
            targets.extend(t);
            pieces.push((m, in_dim));
            pos += n;
        }
        let targets: Vec<FactorKind> = targets.into_iter().filter(|k| *k != FactorKind::Torus(0)).collect();
        let target = if targets.is_empty() {
            RootDatum::from_factors(&[FactorKind::Torus(0)])?
        } else {
            RootDatum::from_factors(&targets)?
        };
        let r_std = block_diagonal(&pieces, source.std_dim());
        Embedding::from_standard(source.clone(), target, &r_std)
    }

    pub fn identity(rd: &RootDatum) -> Embedding {
        Embedding::new(rd.clone(), rd.clone(), linalg::identity(rd.dim())).expect("identity embedding")
    }

    /// Whether `K′ = K`.
    pub fn is_identity(&self) -> bool {
        self.source.rank() == self.target.rank() && self.matrix == linalg::identity(self.source.dim())
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn target(&self) -> &RootDatum {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn restrict(&self, v: &RatVec) -> RatVec {
        RatVec::new(linalg::mat_vec(&self.matrix, v.coords()))
    }

    fn restrict_scaled(&self, v: &[i64]) -> Vec<i64> {
        self.scaled.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn unscale(&self, key: &[i64]) -> RatVec {
        RatVec::new(key.iter().map(|&x| Q::new(BigInt::from(x), BigInt::from(self.den))).collect())
    }

    /// Restricted weight multiplicities of `V_λ`, keyed by `den`-scaled target weights.
    fn restricted(&self, lambda: &Weight) -> Result<BTreeMap<Vec<i64>, i64>> {
        let mults = self.source.weight_multiplicities(lambda)?;
        let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (w, m) in mults {
            *out.entry(self.restrict_scaled(&w)).or_insert(0) += m as i64;
        }
        Ok(out)
    }

    /// Full weight diagram of a target irreducible, scaled like [`Self::restricted`].
    fn target_diagram(&self, key: &[i64]) -> Result<Vec<(Vec<i64>, i64)>> {
        let r = self.target.rank();
        let mut lambda = Vec::with_capacity(key.len());
        for (i, &x) in key.iter().enumerate() {
            if i < r {
                if x % self.den != 0 {
                    return Err(Error::Embedding(format!(
                        "restricted highest weight {} is not integral; the restriction map is not lattice-compatible",
                        self.unscale(key)
                    )));
                }
                lambda.push(x / self.den);
            } else {
                lambda.push(x);
            }
        }
        let mut out = Vec::new();
        // Central coordinates stay scaled; the recursion never touches them.
        for (mut w, m) in self.target.multiplicities_unchecked(&lambda) {
            for x in w[..r].iter_mut() {
                *x *= self.den;
            }
            out.push((w, m as i64));
        }
        Ok(out)
    }

    fn rho_keys(&self) -> &[(Vec<i64>, i64)] {
        self.rho_keys.get_or_init(|| {
            let rho = self.target.rho();
            self.target
                .weyl_group()
                .signed_rho_images(&rho)
                .into_iter()
                .map(|(w_rho, sign)| {
                    let key = (&rho - &w_rho)
                        .coords()
                        .iter()
                        .map(|x| (x * q(self.den)).to_integer().to_i64().expect("small weight"))
                        .collect();
                    (key, sign)
                })
                .collect()
        })
    }

    /// Splits the embedding into blocks linking disjoint sets of source and
    /// target factors. Empty when the embedding does not split.
    fn pieces(&self) -> &[Piece] {
        self.pieces.get_or_init(|| self.split().unwrap_or_default())
    }

    fn split(&self) -> Option<Vec<Piece>> {
        let ns = self.source.factors().len();
        let nt = self.target.factors().len();
        let src: Vec<Vec<usize>> = (0..ns).map(|i| factor_coords(&self.source, i)).collect();
        let tgt: Vec<Vec<usize>> = (0..nt).map(|i| factor_coords(&self.target, i)).collect();
        // Union-find over source factors 0..ns and target factors ns..ns+nt.
        let mut parent: Vec<usize> = (0..ns + nt).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (i, sc) in src.iter().enumerate() {
            for (j, tc) in tgt.iter().enumerate() {
                if tc.iter().any(|&r| sc.iter().any(|&c| !self.matrix[r][c].is_zero())) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, ns + j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for i in 0..ns {
            groups.entry(find(&mut parent, i)).or_default().0.push(i);
        }
        for j in 0..nt {
            groups.entry(find(&mut parent, ns + j)).or_default().1.push(j);
        }
        // Target-only groups carry the trivial representation and are dropped.
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().filter(|(s, _)| !s.is_empty()).collect();
        if groups.len() < 2 {
            return None;
        }
        let lattice = self.source.lattice();
        let mut out = Vec::with_capacity(groups.len());
        for (si, ti) in groups {
            let kinds = |rd: &RootDatum, idx: &[usize]| -> Vec<FactorKind> {
                idx.iter().map(|&i| rd.factors()[i].kind).collect()
            };
            // Internal coordinates list semisimple parts before central ones.
            let order = |coords: &[Vec<usize>], rd: &RootDatum, idx: &[usize]| -> Vec<usize> {
                let mut v: Vec<usize> = idx.iter().flat_map(|&i| coords[i].iter().copied()).collect();
                v.sort_by_key(|&c| (c >= rd.rank(), c));
                v
            };
            let sc = order(&src, &self.source, &si);
            let tc = order(&tgt, &self.target, &ti);
            let sub_source = RootDatum::from_factors(&kinds(&self.source, &si)).ok()?.with_lattice(lattice);
            let tk = kinds(&self.target, &ti);
            let sub_target = if tk.is_empty() {
                RootDatum::from_factors(&[FactorKind::Torus(0)]).ok()?
            } else {
                RootDatum::from_factors(&tk).ok()?.with_lattice(self.target.lattice())
            };
            let m: QMatrix = tc.iter().map(|&r| sc.iter().map(|&c| self.matrix[r][c].clone()).collect()).collect();
            let embedding = Embedding::new(sub_source, sub_target, m).ok()?;
            out.push(Piece { coords: sc, embedding });
        }
        Some(out)
    }

    /// Height functional on scaled target weights: positive on positive roots.
    fn heights(&self) -> Vec<Q> {
        let mut h = vec![Q::zero(); self.target.dim()];
        for f in self.target.factors() {
            if f.ss_rank == 0 {
                continue;
            }
            let a: QMatrix = f.cartan().iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let inv = linalg::inverse(&a).expect("Cartan matrix is invertible");
            for i in 0..f.ss_rank {
                h[f.ss_offset + i] = inv[i].iter().fold(Q::zero(), |s, x| s + x);
            }
        }
        h
    }
}

fn block_diagonal(pieces: &[(QMatrix, usize)], cols: usize) -> QMatrix {
    let mut out = Vec::new();
    let mut c0 = 0;
    for (m, w) in pieces {
        for r in m {
            let mut row = vec![Q::zero(); cols];
            row[c0..c0 + w].clone_from_slice(r);
            out.push(row);
        }
        c0 += w;
    }
    out
}

/// Decomposes `V_λ|_{K′}` by repeatedly removing the weight diagram of a
/// maximal remaining weight.
pub fn branch(e: &Embedding, lambda: &Weight) -> Result<BranchingResult> {
    let mut rest = e.restricted(lambda)?;
    let h = e.heights();
    let r = e.target.rank();
    let mut out = BranchingResult::new();
    loop {
        rest.retain(|_, m| *m != 0);
        if let Some((w, m)) = rest.iter().find(|(_, m)| **m < 0) {
            return Err(Error::NegativeMultiplicity { weight: e.unscale(w).to_string(), mult: *m });
        }
        let Some(top) = rest
            .keys()
            .map(|k| (k.iter().zip(&h).fold(Q::zero(), |s, (x, hi)| s + q(*x) * hi), k))
            .max()
            .map(|(_, k)| k.clone())
        else {
            break;
        };
        if top[..r].iter().any(|x| x.is_negative()) {
            return Err(Error::Embedding(format!("maximal restricted weight {} is not dominant", e.unscale(&top))));
        }
        let m = rest[&top];
        for (w, d) in e.target_diagram(&top)? {
            *rest.entry(w).or_insert(0) -= m * d;
        }
        out.insert(e.unscale(&top), m as u64);
    }
    Ok(out)
}

/// Dimension of the `K′`-invariants of `V_λ`, by the alternating sum
/// `Σ_w ε(w) m(ρ′ - wρ′)` over the Weyl group of `K′`.
pub fn invariant_dimension(e: &Embedding, lambda: &Weight) -> Result<u64> {
    e.source.check_dim(lambda)?;
    let pieces = e.pieces();
    if !pieces.is_empty() {
        let mut total = 1;
        for p in pieces {
            let part = RatVec::new(p.coords.iter().map(|&i| lambda[i].clone()).collect());
            total *= invariant_dimension(&p.embedding, &part)?;
            if total == 0 {
                break;
            }
        }
        return Ok(total);
    }
    direct_invariant_dimension(e, lambda)
}

fn direct_invariant_dimension(e: &Embedding, lambda: &Weight) -> Result<u64> {
    let rest = e.restricted(lambda)?;
    let mut total: i64 = 0;
    for (key, sign) in e.rho_keys() {
        total += sign * rest.get(key).copied().unwrap_or(0);
    }
    if total < 0 {
        return Err(Error::NegativeMultiplicity { weight: "0".into(), mult: total });
    }
    Ok(total as u64)
}

/// Result of [`spherical_monoid`].
#[derive(Clone, Debug)]
pub struct SphericalMonoid {
    /// Minimal generators of the discovered monoid, in graded lexicographic order.
    pub generators: Vec<Weight>,
    pub saturated: bool,
    pub bound: u32,
    /// Number of nonzero spherical weights found.
    pub discovered: usize,
}

/// Height used to bound enumeration: fundamental coefficients plus absolute
/// central coordinates.
pub fn height(rd: &RootDatum, v: &[i64]) -> i64 {
    v[..rd.rank()].iter().sum::<i64>() + v[rd.rank()..].iter().map(|x| x.abs()).sum::<i64>()
}

/// Dominant lattice weights of height at most `bound`, graded lexicographic.
pub fn dominant_weights_up_to(rd: &RootDatum, bound: u32) -> Vec<Vec<i64>> {
    let dim = rd.dim();
    let rank = rd.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    fn rec(i: usize, left: i64, rank: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            if i < rank || a == 0 {
                cur[i] = a;
                rec(i + 1, left - a, rank, cur, out);
            } else {
                for s in [a, -a] {
                    cur[i] = s;
                    rec(i + 1, left - a, rank, cur, out);
                }
            }
        }
        cur[i] = 0;
    }
    rec(0, bound as i64, rank, &mut cur, &mut out);
    out.retain(|v| rd.in_lattice(&RatVec::from_ints(v)));
    out.sort_by(|a, b| height(rd, a).cmp(&height(rd, b)).then_with(|| a.cmp(b)));
    out
}

/// Enumerates `Supp_K(C[K_C/K′_C])` up to `bound` and extracts generators.
pub fn spherical_monoid(e: &Embedding, bound: u32) -> Result<SphericalMonoid> {
    if bound == 0 {
        return Err(Error::Spec("enumeration bound must be positive".into()));
    }
    let rd = &e.source;
    let candidates: Vec<Vec<i64>> = dominant_weights_up_to(rd, bound).into_iter().filter(|v| v.iter().any(|x| *x != 0)).collect();
    let flags: Vec<bool> = candidates
        .par_iter()
        .map(|v| invariant_dimension(e, &RatVec::from_ints(v)).map(|d| d > 0))
        .collect::<Result<Vec<_>>>()?;
    let found: Vec<&Vec<i64>> = candidates.iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| v).collect();
    let set: BTreeSet<&Vec<i64>> = found.iter().copied().collect();
    let mut generators = Vec::new();
    let mut max_height = 0;
    for x in &found {
        let decomposable = found.iter().take_while(|y| height(rd, y) < height(rd, x)).any(|y| {
            let diff: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
            set.contains(&diff)
        });
        if !decomposable {
            max_height = max_height.max(height(rd, x));
            generators.push(RatVec::from_ints(x));
        }
    }
    // Only the trivial representation has `K`-fixed vectors.
    let saturated = e.is_identity() || (!generators.is_empty() && 2 * max_height <= bound as i64);
    Ok(SphericalMonoid { generators, saturated, bound, discovered: found.len() })
}
