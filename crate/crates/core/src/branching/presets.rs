//! Named subgroup blocks. Each block consumes one or two consecutive factors
//! of `K` and describes the subgroup either as a restriction map on
//! standard coordinates, as an involution of `K`, or both.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratcone::linalg::{self, QMatrix};
use crate::ratcone::{q, qf, Q};
use crate::rootdata::{Family, FactorKind, SimpleType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Whole,
    Trivial,
    Torus,
    DerivedTorus,
    Center,
    /// Diagonal `H ⊂ H × H`, the fixed points of the factor swap.
    Diagonal,
    /// `{(g, τ g)} ⊂ Spin(8) × Spin(8)` for the triality-type automorphism
    /// `τ` acting on weights by [`theta`].
    Triality,
    /// `Spin(7) ⊂ Spin(8)` embedded through [`theta`].
    Spin7Triality,
    SoOddInSoEven,
    SoEvenInSoOdd,
    UnitaryInSoEven,
    SoInSu,
    SUxUInSU,
}

const NAMES: &[(Block, &str)] = &[
    (Block::Whole, "whole"),
    (Block::Trivial, "trivial"),
    (Block::Torus, "torus"),
    (Block::DerivedTorus, "derived-torus"),
    (Block::Center, "center"),
    (Block::Diagonal, "diagonal"),
    (Block::Triality, "triality"),
    (Block::Spin7Triality, "spin7-triality-in-so8"),
    (Block::SoOddInSoEven, "so(2n-1)-in-so(2n)"),
    (Block::SoEvenInSoOdd, "so(2n)-in-so(2n+1)"),
    (Block::UnitaryInSoEven, "u(n)-in-so(2n)"),
    (Block::SoInSu, "so(n)-in-su(n)"),
    (Block::SUxUInSU, "s(u(n-1)xu(1))-in-su(n)"),
];

impl Block {
    pub fn all() -> impl Iterator<Item = Block> {
        NAMES.iter().map(|(b, _)| *b)
    }

    pub fn name(self) -> &'static str {
        NAMES.iter().find(|(b, _)| *b == self).map(|(_, n)| *n).expect("named block")
    }

    /// Number of consecutive factors of `K` the block acts on.
    pub fn consumes(self) -> usize {
        match self {
            Block::Diagonal | Block::Triality => 2,
            _ => 1,
        }
    }

    /// Whether the block is the fixed-point group of an involution.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Block::Trivial | Block::Torus | Block::DerivedTorus | Block::Center | Block::Spin7Triality)
    }

    /// Target factors and restriction matrix on standard coordinates.
    pub fn embedding(self, kinds: &[FactorKind]) -> Result<(Vec<FactorKind>, QMatrix)> {
        self.check_arity(kinds)?;
        let k = kinds[0];
        let sd = std_dim(k);
        let unsupported = || Error::Embedding(format!("block {self} does not apply to {k}"));
        Ok(match self {
            Block::Whole => (vec![k], linalg::identity(sd)),
            Block::Trivial => (vec![FactorKind::Torus(0)], Vec::new()),
            Block::Torus => (vec![FactorKind::Torus(sd)], linalg::identity(sd)),
            Block::DerivedTorus => {
                let mut m = linalg::identity(sd);
                if let FactorKind::Unitary(n) = k {
                    for row in m.iter_mut() {
                        row.iter_mut().for_each(|x| *x -= qf(1, n as i64));
                    }
                }
                (vec![FactorKind::Torus(sd)], m)
            }
            Block::Center => match k {
                FactorKind::Simple(_) => (vec![FactorKind::Torus(0)], Vec::new()),
                FactorKind::Unitary(n) => (vec![FactorKind::Torus(1)], vec![vec![Q::one(); n]]),
                FactorKind::Torus(d) => (vec![k], linalg::identity(d)),
            },
            Block::Diagonal => {
                let id = linalg::identity(sd);
                (vec![k], id.iter().map(|r| r.iter().chain(r.iter()).cloned().collect()).collect())
            }
            Block::Triality => {
                require_d4(k).ok_or_else(unsupported)?;
                let id = linalg::identity(4);
                let th = theta();
                (vec![k], id.iter().zip(&th).map(|(a, b)| a.iter().chain(b.iter()).cloned().collect()).collect())
            }
            Block::Spin7Triality => {
                require_d4(k).ok_or_else(unsupported)?;
                let th = theta();
                (vec![simple(Family::B, 3)], th[..3].to_vec())
            }
            Block::SoOddInSoEven => {
                let n = rank_of(k, Family::D).ok_or_else(unsupported)?;
                (vec![simple(Family::B, n - 1)], linalg::identity(n)[..n - 1].to_vec())
            }
            Block::SoEvenInSoOdd => {
                let n = rank_of(k, Family::B).ok_or_else(unsupported)?;
                if n < 2 {
                    return Err(unsupported());
                }
                (vec![simple(Family::D, n)], linalg::identity(n))
            }
            Block::UnitaryInSoEven => {
                let n = rank_of(k, Family::D).ok_or_else(unsupported)?;
                (vec![FactorKind::Unitary(n)], linalg::identity(n))
            }
            Block::SoInSu => {
                let n = rank_of(k, Family::A).ok_or_else(unsupported)? + 1;
                let m = n / 2;
                let target = if n % 2 == 1 {
                    simple(Family::B, m)
                } else if m == 1 {
                    FactorKind::Torus(1)
                } else {
                    simple(Family::D, m)
                };
                let mut r = linalg::zeros(m, n);
                for i in 0..m {
                    r[i][2 * i] = q(1);
                    r[i][2 * i + 1] = q(-1);
                }
                (vec![target], r)
            }
            Block::SUxUInSU => {
                let n = rank_of(k, Family::A).ok_or_else(unsupported)? + 1;
                let mut r = linalg::zeros(n - 1, n);
                for (i, row) in r.iter_mut().enumerate() {
                    row[i] = q(1);
                    row[n - 1] = q(-1);
                }
                (vec![FactorKind::Unitary(n - 1)], r)
            }
        })
    }

    /// Involution on the standard coordinates of the consumed factors.
    pub fn involution(self, kinds: &[FactorKind]) -> Result<QMatrix> {
        self.check_arity(kinds)?;
        let k = kinds[0];
        let sd = std_dim(k);
        let unsupported = || Error::Involution(format!("block {self} is not a symmetric subgroup of {k}"));
        let flip_first = |n: usize| {
            let mut m = linalg::identity(n);
            m[0][0] = q(-1);
            m
        };
        Ok(match self {
            Block::Whole => linalg::identity(sd),
            Block::Diagonal => swap(&linalg::identity(sd)),
            Block::Triality => {
                require_d4(k).ok_or_else(unsupported)?;
                swap(&theta())
            }
            Block::SoOddInSoEven => flip_first(rank_of(k, Family::D).ok_or_else(unsupported)?),
            Block::SoEvenInSoOdd => {
                let n = rank_of(k, Family::B).ok_or_else(unsupported)?;
                if n < 2 {
                    return Err(unsupported());
                }
                flip_first(n)
            }
            Block::UnitaryInSoEven => {
                let n = rank_of(k, Family::D).ok_or_else(unsupported)?;
                let mut m = linalg::zeros(n, n);
                for i in 0..n / 2 {
                    m[2 * i][2 * i + 1] = q(-1);
                    m[2 * i + 1][2 * i] = q(-1);
                }
                if n % 2 == 1 {
                    m[n - 1][n - 1] = q(1);
                }
                m
            }
            Block::SoInSu => {
                rank_of(k, Family::A).ok_or_else(unsupported)?;
                let mut m = linalg::identity(sd);
                m.iter_mut().for_each(|r| r.iter_mut().for_each(|x| *x = -x.clone()));
                m
            }
            Block::SUxUInSU => {
                let n = rank_of(k, Family::A).ok_or_else(unsupported)? + 1;
                let mut m = linalg::identity(n);
                m[0][0] = Q::zero();
                m[n - 1][n - 1] = Q::zero();
                m[0][n - 1] = Q::one();
                m[n - 1][0] = Q::one();
                m
            }
            _ => return Err(unsupported()),
        })
    }

    fn check_arity(self, kinds: &[FactorKind]) -> Result<()> {
        if kinds.len() != self.consumes() {
            return Err(Error::Embedding(format!("block {self} takes {} factor(s)", self.consumes())));
        }
        if kinds.len() == 2 && kinds[0] != kinds[1] {
            return Err(Error::Embedding(format!("block {self} needs two equal factors, got {} and {}", kinds[0], kinds[1])));
        }
        Ok(())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Block {
    type Err = Error;
    fn from_str(s: &str) -> Result<Block> {
        let t = s.trim().to_ascii_lowercase();
        let alias = match t.as_str() {
            "swap" => "diagonal",
            "identity" => "whole",
            "maximal-torus" => "torus",
            other => other,
        };
        NAMES
            .iter()
            .find(|(_, n)| *n == alias)
            .map(|(b, _)| *b)
            .ok_or_else(|| Error::Spec(format!("unknown subgroup preset {s:?}")))
    }
}

fn simple(family: Family, rank: usize) -> FactorKind {
    FactorKind::Simple(SimpleType { family, rank })
}

fn rank_of(k: FactorKind, family: Family) -> Option<usize> {
    match k {
        FactorKind::Simple(t) if t.family == family => Some(t.rank),
        _ => None,
    }
}

fn require_d4(k: FactorKind) -> Option<()> {
    (rank_of(k, Family::D) == Some(4)).then_some(())
}

pub(crate) fn std_dim(k: FactorKind) -> usize {
    match k {
        FactorKind::Simple(t) if t.family == Family::A => t.rank + 1,
        FactorKind::Simple(t) => t.rank,
        FactorKind::Unitary(n) => n,
        FactorKind::Torus(d) => d,
    }
}

/// `[[0, m], [m⁻¹, 0]]` for an involutive `m`.
fn swap(m: &QMatrix) -> QMatrix {
    let n = m.len();
    let mut out = linalg::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[i][n + j] = m[i][j].clone();
            out[n + i][j] = m[i][j].clone();
        }
    }
    out
}

/// Weight action, in standard coordinates of `D4`, of the outer
/// automorphism exchanging the vector and one half-spin representation:
/// it swaps `ω1` and `ω3` and fixes `ω2` and `ω4`. It is the composite of
/// an order-three triality `ζ` with `x4 ↦ -x4`.
pub fn theta() -> QMatrix {
    let h = qf(1, 2);
    let s = [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]];
    s.iter().map(|r| r.iter().map(|&x| q(x) * &h).collect()).collect()
}

/// The order-three triality `ζ`: `ω1 → ω3 → ω4 → ω1`, fixing `ω2`.
pub fn zeta() -> QMatrix {
    let mut m = theta();
    for row in m.iter_mut() {
        row[3] = -row[3].clone();
    }
    m
}
