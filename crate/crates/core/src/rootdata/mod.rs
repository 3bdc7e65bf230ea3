//! Root data of compact connected groups: products of simple factors,
//! unitary groups and tori.
//!
//! Weights are stored in internal coordinates: fundamental-weight
//! coefficients of the semisimple part followed by central coordinates.
//! Standard coordinates (`e_i` bases of the classical groups) are used at
//! I/O and are reached through [`RootDatum::to_standard`].

mod freudenthal;
mod weyl;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratcone::linalg::{self, QMatrix};
use crate::ratcone::{q, qf, Cone, RatVec, Q};

pub use freudenthal::Multiplicities;
pub use weyl::WeylGroup;

/// A weight in internal coordinates.
pub type Weight = RatVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Simple(SimpleType),
    /// `U(n)`: `A_{n-1}` together with its one-dimensional center, sharing
    /// the standard coordinates `R^n`.
    Unitary(usize),
    Torus(usize),
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Simple(t) => write!(f, "{:?}{}", t.family, t.rank),
            FactorKind::Unitary(n) => write!(f, "U{n}"),
            FactorKind::Torus(d) => write!(f, "T{d}"),
        }
    }
}

/// Which dominant weights count as highest weights of `K`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lattice {
    /// Full weight lattice of the simply connected cover (integral central coordinates).
    #[default]
    Weight,
    /// Root lattice on the semisimple part.
    Root,
    /// Lattice of the classical matrix groups: `SU(n)`, `U(n)`, `SO(n)`, `Sp(n)`.
    Standard,
}

impl FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "weight" | "simply-connected" => Ok(Lattice::Weight),
            "root" | "adjoint" => Ok(Lattice::Root),
            "standard" | "classical" => Ok(Lattice::Standard),
            other => Err(Error::Spec(format!("unknown lattice {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub kind: FactorKind,
    /// First semisimple internal coordinate and count.
    pub ss_offset: usize,
    pub ss_rank: usize,
    /// First central internal coordinate and count.
    pub center_offset: usize,
    pub center_dim: usize,
    pub std_offset: usize,
    pub std_dim: usize,
    cartan: Vec<Vec<i64>>,
    /// Positive roots in local fundamental-weight coordinates.
    positive_roots: Vec<Vec<i64>>,
}

impl Factor {
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Factors whose standard coordinates are trace-zero (`SU(n)`).
    fn is_special_unitary(&self) -> bool {
        matches!(self.kind, FactorKind::Simple(SimpleType { family: Family::A, .. }))
    }
}

/// Combinatorial skeleton of a compact connected group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    factors: Vec<Factor>,
    rank: usize,
    center_dim: usize,
    std_dim: usize,
    lattice: Lattice,
    /// Internal to standard coordinates (`std_dim x dim`).
    basis: QMatrix,
    /// Left inverse of `basis`.
    basis_pinv: QMatrix,
    gram: QMatrix,
}

fn std_simple_roots(t: SimpleType) -> Vec<Vec<Q>> {
    let n = t.rank;
    let (dim, mut roots) = match t.family {
        Family::A => (n + 1, Vec::new()),
        _ => (n, Vec::new()),
    };
    let e = |i: usize, c: i64| {
        let mut v = vec![Q::zero(); dim];
        v[i] = q(c);
        v
    };
    let diff = |i: usize, j: usize, s: i64| {
        let mut v = e(i, 1);
        v[j] = q(s);
        v
    };
    match t.family {
        Family::A => {
            for i in 0..n {
                roots.push(diff(i, i + 1, -1));
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1, -1));
            }
            roots.push(e(n - 1, 1));
        }
        Family::C => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1, -1));
            }
            roots.push(e(n - 1, 2));
        }
        Family::D => {
            for i in 0..n - 1 {
                roots.push(diff(i, i + 1, -1));
            }
            roots.push(diff(n - 2, n - 1, 1));
        }
    }
    roots
}

fn cartan_of(roots: &[Vec<Q>]) -> Vec<Vec<i64>> {
    roots
        .iter()
        .map(|a| {
            roots
                .iter()
                .map(|b| {
                    let v = q(2) * linalg_dot(a, b) / linalg_dot(b, b);
                    v.to_integer().to_i64().expect("Cartan entry")
                })
                .collect()
        })
        .collect()
}

fn linalg_dot(a: &[Q], b: &[Q]) -> Q {
    crate::ratcone::dot(a, b)
}

/// Positive roots in fundamental coordinates, by the string criterion on
/// simple-root coordinates.
fn positive_roots_of(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let unit = |i: usize| (0..r).map(|j| (i == j) as i64).collect::<Vec<i64>>();
    let mut roots: Vec<Vec<i64>> = (0..r).map(unit).collect();
    let mut frontier = roots.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                // <beta, alpha_i^vee> = sum_k c_k A_{k i}
                let pairing: i64 = (0..r).map(|k| beta[k] * cartan[k][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !roots.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        frontier = next;
    }
    // Convert simple-root coordinates to fundamental coordinates.
    let mut out: Vec<Vec<i64>> = roots
        .iter()
        .map(|c| (0..r).map(|j| (0..r).map(|k| c[k] * cartan[k][j]).sum()).collect())
        .collect();
    out.sort();
    out
}

fn parse_factor(tok: &str, input: &str) -> Result<FactorKind> {
    let bad = |reason: &str| Error::CartanType { input: input.to_string(), reason: reason.to_string() };
    let tok = tok.trim();
    if tok.is_empty() {
        return Err(bad("empty factor"));
    }
    let (head, digits) = tok.split_at(tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len()));
    let n: usize = digits.parse().map_err(|_| bad(&format!("missing rank in {tok:?}")))?;
    if n == 0 {
        return Err(bad("rank must be positive"));
    }
    let simple = |family, min: usize| {
        if n < min {
            Err(bad(&format!("{tok} needs rank at least {min}")))
        } else {
            Ok(FactorKind::Simple(SimpleType { family, rank: n }))
        }
    };
    match head.to_ascii_uppercase().as_str() {
        "A" => simple(Family::A, 1),
        "B" => simple(Family::B, 1),
        "C" => simple(Family::C, 1),
        "D" => simple(Family::D, 2),
        "U" => Ok(FactorKind::Unitary(n)),
        "T" | "CENTER" => Ok(FactorKind::Torus(n)),
        _ => Err(bad(&format!("unknown factor {tok:?}"))),
    }
}

/// Parses strings such as `"D4xD4"`, `"U2xU2"`, `"A3+center1"`.
pub fn parse_type(input: &str) -> Result<Vec<FactorKind>> {
    let mut out = Vec::new();
    for (k, part) in input.split('+').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::CartanType { input: input.to_string(), reason: "empty component".into() });
        }
        if k > 0 && !part.to_ascii_lowercase().starts_with("center") {
            return Err(Error::CartanType {
                input: input.to_string(),
                reason: format!("expected center<k> after '+', found {part:?}"),
            });
        }
        for tok in part.split(['x', 'X', '*']) {
            out.push(parse_factor(tok, input)?);
        }
    }
    Ok(out)
}

impl RootDatum {
    pub fn parse(input: &str) -> Result<RootDatum> {
        RootDatum::from_factors(&parse_type(input)?)
    }

    pub fn from_factors(kinds: &[FactorKind]) -> Result<RootDatum> {
        if kinds.is_empty() {
            return Err(Error::Empty("factor list"));
        }
        let rank: usize = kinds
            .iter()
            .map(|k| match k {
                FactorKind::Simple(t) => t.rank,
                FactorKind::Unitary(n) => n - 1,
                FactorKind::Torus(_) => 0,
            })
            .sum();
        let center_dim: usize = kinds
            .iter()
            .map(|k| match k {
                FactorKind::Simple(_) => 0,
                FactorKind::Unitary(_) => 1,
                FactorKind::Torus(d) => *d,
            })
            .sum();
        let std_dim: usize = kinds
            .iter()
            .map(|k| match k {
                FactorKind::Simple(t) if t.family == Family::A => t.rank + 1,
                FactorKind::Simple(t) => t.rank,
                FactorKind::Unitary(n) => *n,
                FactorKind::Torus(d) => *d,
            })
            .sum();
        let dim = rank + center_dim;
        let mut basis = linalg::zeros(std_dim, dim);
        let mut factors = Vec::new();
        let (mut ss, mut cen, mut st) = (0, rank, 0);
        for &kind in kinds {
            let (roots_std, fd, cd, sd) = match kind {
                FactorKind::Simple(t) => {
                    let r = std_simple_roots(t);
                    let sd = r[0].len();
                    (r, t.rank, 0, sd)
                }
                FactorKind::Unitary(n) => {
                    let r = if n > 1 {
                        std_simple_roots(SimpleType { family: Family::A, rank: n - 1 })
                    } else {
                        Vec::new()
                    };
                    (r, n - 1, 1, n)
                }
                FactorKind::Torus(d) => (Vec::new(), 0, d, d),
            };
            let cartan = cartan_of(&roots_std);
            if fd > 0 {
                let a: QMatrix = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                let a_inv = linalg::inverse(&a).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
                // omega_j = sum_k (A^-1)_{jk} alpha_k
                for j in 0..fd {
                    for (k, root) in roots_std.iter().enumerate() {
                        for (s, x) in root.iter().enumerate() {
                            basis[st + s][ss + j] += &a_inv[j][k] * x;
                        }
                    }
                }
            }
            match kind {
                FactorKind::Unitary(n) => {
                    for s in 0..n {
                        basis[st + s][cen] = qf(1, n as i64);
                    }
                }
                FactorKind::Torus(d) => {
                    for i in 0..d {
                        basis[st + i][cen + i] = Q::one();
                    }
                }
                FactorKind::Simple(_) => {}
            }
            let positive_roots = positive_roots_of(&cartan);
            factors.push(Factor {
                kind,
                ss_offset: ss,
                ss_rank: fd,
                center_offset: cen,
                center_dim: cd,
                std_offset: st,
                std_dim: sd,
                cartan,
                positive_roots,
            });
            ss += fd;
            cen += cd;
            st += sd;
        }
        let bt = linalg::transpose(&basis, dim);
        let gram = linalg::mat_mul(&bt, &basis, dim);
        let gram_inv = linalg::inverse(&gram).ok_or_else(|| Error::Internal("degenerate form".into()))?;
        let basis_pinv = linalg::mat_mul(&gram_inv, &bt, std_dim);
        Ok(RootDatum { factors, rank, center_dim, std_dim, lattice: Lattice::Weight, basis, basis_pinv, gram })
    }

    pub fn with_lattice(mut self, lattice: Lattice) -> RootDatum {
        self.lattice = lattice;
        self
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    /// Dimension of weight space (rank plus center).
    pub fn dim(&self) -> usize {
        self.rank + self.center_dim
    }

    pub fn std_dim(&self) -> usize {
        self.std_dim
    }

    pub fn is_semisimple(&self) -> bool {
        self.center_dim == 0
    }

    pub fn type_string(&self) -> String {
        self.factors.iter().map(|f| f.kind.to_string()).collect::<Vec<_>>().join("x")
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0; self.rank]; self.rank];
        for f in &self.factors {
            for i in 0..f.ss_rank {
                for j in 0..f.ss_rank {
                    a[f.ss_offset + i][f.ss_offset + j] = f.cartan[i][j];
                }
            }
        }
        a
    }

    /// Simple roots in internal coordinates.
    pub fn simple_roots(&self) -> Vec<RatVec> {
        let a = self.cartan_matrix();
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.dim()];
                v[..self.rank].copy_from_slice(&a[i]);
                RatVec::from_ints(&v)
            })
            .collect()
    }

    pub fn fundamental_weights(&self) -> Vec<RatVec> {
        (0..self.rank).map(|i| RatVec::unit(self.dim(), i)).collect()
    }

    pub fn central_directions(&self) -> Vec<RatVec> {
        (self.rank..self.dim()).map(|i| RatVec::unit(self.dim(), i)).collect()
    }

    /// All positive roots in internal coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for f in &self.factors {
            for r in &f.positive_roots {
                let mut v = vec![0; self.dim()];
                v[f.ss_offset..f.ss_offset + f.ss_rank].copy_from_slice(r);
                out.push(v);
            }
        }
        out
    }

    pub fn rho(&self) -> RatVec {
        let mut v = vec![0; self.dim()];
        v[..self.rank].iter_mut().for_each(|x| *x = 1);
        RatVec::from_ints(&v)
    }

    /// Invariant form in internal coordinates.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn inner(&self, a: &RatVec, b: &RatVec) -> Q {
        let gb = linalg::mat_vec(&self.gram, b.coords());
        crate::ratcone::dot(a.coords(), &gb)
    }

    pub fn weyl_group(&self) -> WeylGroup {
        WeylGroup::new(self)
    }

    pub fn check_dim(&self, v: &RatVec) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }

    pub fn is_dominant(&self, v: &RatVec) -> bool {
        v.coords()[..self.rank].iter().all(|x| !x.is_negative())
    }

    pub fn in_lattice(&self, v: &RatVec) -> bool {
        if v.dim() != self.dim() || !v.coords()[self.rank..].iter().all(Q::is_integer) {
            return false;
        }
        match self.lattice {
            Lattice::Weight => v.is_integral(),
            Lattice::Root => {
                v.is_integral()
                    && self.factors.iter().filter(|f| f.ss_rank > 0).all(|f| {
                        let a: QMatrix = f.cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                        let at = linalg::transpose(&a, f.ss_rank);
                        let local = &v.coords()[f.ss_offset..f.ss_offset + f.ss_rank];
                        linalg::solve(&at, local, f.ss_rank).is_some_and(|c| c.iter().all(Q::is_integer))
                    })
            }
            Lattice::Standard => {
                let s = self.to_standard(v);
                self.factors.iter().all(|f| {
                    if f.is_special_unitary() {
                        v.coords()[f.ss_offset..f.ss_offset + f.ss_rank].iter().all(Q::is_integer)
                    } else {
                        s.coords()[f.std_offset..f.std_offset + f.std_dim].iter().all(Q::is_integer)
                    }
                })
            }
        }
    }

    /// Internal to standard coordinates.
    pub fn to_standard(&self, v: &RatVec) -> RatVec {
        RatVec::new(linalg::mat_vec(&self.basis, v.coords()))
    }

    /// Standard to internal coordinates. `SU(n)` blocks are taken modulo
    /// the all-ones direction.
    pub fn from_standard(&self, x: &RatVec) -> Result<RatVec> {
        if x.dim() != self.std_dim {
            return Err(Error::DimensionMismatch { expected: self.std_dim, found: x.dim() });
        }
        let mut p = x.coords().to_vec();
        for f in self.factors.iter().filter(|f| f.is_special_unitary()) {
            let block = &mut p[f.std_offset..f.std_offset + f.std_dim];
            let mean = block.iter().fold(Q::zero(), |a, b| a + b) / q(f.std_dim as i64);
            block.iter_mut().for_each(|y| *y -= &mean);
        }
        let y = linalg::mat_vec(&self.basis_pinv, &p);
        if linalg::mat_vec(&self.basis, &y) != p {
            return Err(Error::NotInLattice(format!("{x} is outside the weight space of {}", self.type_string())));
        }
        Ok(RatVec::new(y))
    }

    /// Matrix of [`RootDatum::to_standard`].
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_pinv(&self) -> &QMatrix {
        &self.basis_pinv
    }

    pub fn cone_to_standard(&self, c: &Cone) -> Result<Cone> {
        c.map_linear(&self.basis)
    }

    pub fn cone_from_standard(&self, c: &Cone) -> Result<Cone> {
        let gens = c.generators().iter().map(|g| self.from_standard(g)).collect::<Result<Vec<_>>>()?;
        Cone::from_generators(self.dim(), gens)
    }

    /// `t*_+`: fundamental weights plus both signs of each central direction.
    pub fn dominant_chamber(&self) -> Cone {
        let mut gens = self.fundamental_weights();
        for c in self.central_directions() {
            gens.push(-&c);
            gens.push(c);
        }
        Cone::from_generators(self.dim(), gens).expect("chamber dimensions agree")
    }

    /// `t*_+ ∩ (t^s)*`: the span of the fundamental weights alone.
    pub fn semisimple_chamber(&self) -> Cone {
        Cone::from_generators(self.dim(), self.fundamental_weights()).expect("chamber dimensions agree")
    }

    pub fn weyl_orbit(&self, v: &RatVec) -> Result<Vec<RatVec>> {
        self.check_dim(v)?;
        Ok(self.weyl_group().orbit(v))
    }

    /// Converts a dominant lattice weight to integer coordinates.
    pub fn integral_weight(&self, v: &Weight) -> Result<Vec<i64>> {
        self.check_dim(v)?;
        if !self.is_dominant(v) {
            return Err(Error::NotDominant(v.to_string()));
        }
        if !v.is_integral() {
            return Err(Error::NotInLattice(v.to_string()));
        }
        v.coords()
            .iter()
            .map(|x| x.to_integer().to_i64().ok_or_else(|| Error::Unsupported(format!("weight {v} too large"))))
            .collect()
    }

    /// Weights of `V_λ` with multiplicities, keyed by integer internal coordinates.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<Multiplicities> {
        let l = self.integral_weight(lambda)?;
        Ok(freudenthal::multiplicities(self, &l))
    }

    /// Multiplicities without lattice checks; central coordinates are copied through.
    pub(crate) fn multiplicities_unchecked(&self, l: &[i64]) -> Multiplicities {
        freudenthal::multiplicities(self, l)
    }

    /// Weyl dimension formula.
    /// Dimension of `V_λ`. Central coordinates do not enter, so they may be
    /// fractional, as for characters of a covering torus.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u128> {
        self.check_dim(lambda)?;
        let mut coords = lambda.coords().to_vec();
        coords[self.rank..].iter_mut().for_each(|x| *x = Q::zero());
        let l = self.integral_weight(&RatVec::new(coords))?;
        Ok(self.weyl_dimension_int(&l))
    }

    pub(crate) fn weyl_dimension_int(&self, l: &[i64]) -> u128 {
        let mut num = Q::one();
        for f in &self.factors {
            let g = self.local_gram(f);
            let local = &l[f.ss_offset..f.ss_offset + f.ss_rank];
            for alpha in &f.positive_roots {
                let pair = |w: &dyn Fn(usize) -> i64| {
                    let mut s = Q::zero();
                    for i in 0..f.ss_rank {
                        for j in 0..f.ss_rank {
                            s += q(w(i) * alpha[j]) * &g[i][j];
                        }
                    }
                    s
                };
                num *= pair(&|i| local[i] + 1) / pair(&|_| 1);
            }
        }
        debug_assert!(num.is_integer());
        num.to_integer().to_u128().expect("dimension fits in u128")
    }

    pub(crate) fn local_gram(&self, f: &Factor) -> QMatrix {
        (0..f.ss_rank)
            .map(|i| (0..f.ss_rank).map(|j| self.gram[f.ss_offset + i][f.ss_offset + j].clone()).collect())
            .collect()
    }

    /// Integer multiple of the local Gram matrix and the factor used.
    pub(crate) fn local_gram_int(&self, f: &Factor) -> Vec<Vec<i64>> {
        let g = self.local_gram(f);
        let mut den = num_bigint::BigInt::one();
        for row in &g {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        g.iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i64().expect("gram entry"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.type_string())
    }
}
