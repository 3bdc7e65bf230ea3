//! Worked examples with known answers, runnable as a self-check.

use rayon::prelude::*;
use serde::Serialize;

use crate::branching::presets::zeta;
use crate::branching::Block;
use crate::conecalc::catalog::{Catalog, CatalogEntry};
use crate::conecalc::{as_support, c_cone, ConeOptions, KModuleSpec, SubgroupSpec};
use crate::decision::{decide_module, decide_q_series, hermitian_center_check, Status};
use crate::ratcone::linalg::mat_vec;
use crate::ratcone::{Cone, RatVec};
use crate::rootdata::RootDatum;

/// Root data the crate ships examples for.
pub const SHIPPED_TYPES: &[&str] = &["A1", "A2", "B2", "C3", "D4", "A1xA1", "D2xD2", "D4xD4", "U2", "U3"];

/// How a case obtains its module catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogMode {
    Builtin,
    /// Swaps the `q-series` support for the principal series, which must
    /// make the verdict cases fail.
    Corrupted,
}

impl CatalogMode {
    pub fn catalog(self, rd: &RootDatum) -> Catalog {
        let mut c = Catalog::builtin(rd);
        if self == CatalogMode::Corrupted {
            c.extend(Catalog::new(vec![CatalogEntry {
                name: "q-series".into(),
                module: KModuleSpec::ParabolicInduced(SubgroupSpec::Trivial),
                note: "corrupted".into(),
            }]));
        }
        c
    }
}

type Check = fn(CatalogMode) -> Result<(), String>;

pub struct GoldenCase {
    pub name: &'static str,
    pub description: &'static str,
    check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rd(t: &str) -> Result<RootDatum, String> {
    RootDatum::parse(t).map_err(|e| e.to_string())
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn std_cone(gens: &[Vec<i64>]) -> Result<Cone, String> {
    let dim = gens[0].len();
    Cone::from_generators(dim, gens.iter().map(|g| RatVec::from_ints(g)).collect()).map_err(s)
}

fn expect_std(rd: &RootDatum, got: &Cone, want: &Cone) -> Result<(), String> {
    let got = rd.cone_to_standard(got).map_err(s)?;
    if got.same_set(want).map_err(s)? {
        Ok(())
    } else {
        let gens: Vec<String> = got.generators().iter().map(|g| g.to_string()).collect();
        Err(format!("cone generated by [{}] differs from the expected cone", gens.join(", ")))
    }
}

fn c_std(t: &str, sub: impl Fn(&RootDatum) -> crate::Result<SubgroupSpec>, want: &Cone) -> Result<(), String> {
    let rd = rd(t)?;
    let sub = sub(&rd).map_err(s)?;
    let c = c_cone(&rd, &sub, &ConeOptions::default()).map_err(s)?;
    if !c.saturated {
        return Err("enumeration did not saturate".into());
    }
    expect_std(&rd, &c.cone, want)
}

fn qk_blocks(rd: &RootDatum) -> crate::Result<SubgroupSpec> {
    SubgroupSpec::general(rd, &vec![Block::SoOddInSoEven; rd.factors().len()])
}

fn axis_pair(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![0; 2 * n];
    let mut b = vec![0; 2 * n];
    a[0] = 1;
    b[n] = 1;
    vec![a, b]
}

/// `{((x1,…,x4), ζ(x1,x2,x3,−x4)) : x1 ≥ x2 ≥ x3 ≥ |x4|}`.
pub fn triality_cone() -> Cone {
    let z = zeta();
    let chamber = [[2, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, -1], [1, 1, 1, 1]];
    let gens = chamber
        .iter()
        .map(|x| {
            let v = RatVec::from_ints(x);
            let mut flipped = v.clone().into_coords();
            flipped[3] = -flipped[3].clone();
            let mut coords = v.into_coords();
            coords.extend(mat_vec(&z, &flipped));
            RatVec::new(coords)
        })
        .collect();
    Cone::from_generators(8, gens).expect("triality generators")
}

fn verdict_case(t: &str, kprime: &[Block], mode: CatalogMode) -> Result<(), String> {
    let rd = rd(t)?;
    let entry = mode.catalog(&rd).get("q-series").map_err(s)?.clone();
    let sub = SubgroupSpec::symmetric(&rd, kprime).or_else(|_| SubgroupSpec::general(&rd, kprime)).map_err(s)?;
    let opts = ConeOptions::default();
    let v = decide_module(&rd, &entry.module, &sub, &opts).map_err(s)?;
    if v.status() != Status::Admissible {
        return Err(format!("verdict {:?}", v.status()));
    }
    let q = decide_q_series(&rd, &qk_blocks(&rd).map_err(s)?, &sub, &opts).map_err(s)?;
    if q.status() != Status::Admissible {
        return Err(format!("q-series verdict {:?}", q.status()));
    }
    Ok(())
}

fn enumerated_torus(t: &str) -> Result<(), String> {
    let rd = rd(t)?;
    let sub = SubgroupSpec::general(&rd, &vec![Block::Torus; rd.factors().len()]).map_err(s)?;
    let c = c_cone(&rd, &sub, &ConeOptions { bound: 6 }).map_err(s)?;
    if !c.saturated {
        return Err("enumeration did not saturate".into());
    }
    if c.cone.same_set(&rd.dominant_chamber()).map_err(s)? {
        Ok(())
    } else {
        Err("enumerated cone is not the dominant chamber".into())
    }
}

fn hermitian(t: &str) -> Result<(), String> {
    match hermitian_center_check(&rd(t)?).map_err(s)? {
        true => Ok(()),
        false => Err("C_K(T) and C_K(Z_K) differ".into()),
    }
}

/// Every catalog module with nonzero support fails against `T^s`.
fn tmult(mode: CatalogMode) -> Result<(), String> {
    let opts = ConeOptions::default();
    for t in SHIPPED_TYPES {
        let rd = rd(t)?;
        if !rd.is_semisimple() {
            continue;
        }
        for entry in mode.catalog(&rd).entries() {
            let support = as_support(&rd, &entry.module, &opts).map_err(s)?;
            if support.union.is_zero() {
                continue;
            }
            let v = decide_module(&rd, &entry.module, &SubgroupSpec::DerivedMaximalTorus, &opts).map_err(s)?;
            if v.status() != Status::NotAdmissible {
                return Err(format!("{t}/{}: verdict {:?}", entry.name, v.status()));
            }
        }
    }
    Ok(())
}

pub fn cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            name: "so44-qcapk-cone",
            description: "SO(4,4): C_K(SO(3)xSO(3)) = {(a,0;b,0)}",
            check: |_| c_std("D2xD2", qk_blocks, &std_cone(&axis_pair(2))?),
        },
        GoldenCase {
            name: "so44-kprime-cone",
            description: "SO(4,4): C_K(U(2)xU(2)) is the paired-coordinate cone",
            check: |_| {
                let want = std_cone(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]])?;
                c_std("D2xD2", |r| SubgroupSpec::symmetric(r, &[Block::UnitaryInSoEven; 2]), &want)
            },
        },
        GoldenCase {
            name: "so44-q-series-verdict",
            description: "SO(4,4) restricted to U(2,2): Q-series is admissible",
            check: |m| verdict_case("D2xD2", &[Block::UnitaryInSoEven; 2], m),
        },
        GoldenCase {
            name: "so88-qcapk-cone",
            description: "SO(8,8): C_K(SO(7)xSO(7)) = {(a,0,0,0;b,0,0,0)}",
            check: |_| c_std("D4xD4", qk_blocks, &std_cone(&axis_pair(4))?),
        },
        GoldenCase {
            name: "so88-triality-cone",
            description: "SO(8,8): C_K(K') for Spin(1,8) is the zeta-twisted cone",
            check: |_| c_std("D4xD4", |r| SubgroupSpec::general(r, &[Block::Triality]), &triality_cone()),
        },
        GoldenCase {
            name: "so88-q-series-verdict",
            description: "SO(8,8) restricted to Spin(1,8): Q-series is admissible",
            check: |m| verdict_case("D4xD4", &[Block::Triality], m),
        },
        GoldenCase {
            name: "d4-torus-chamber",
            description: "D4: C_K(T) = {x1>=x2>=x3>=|x4|}",
            check: |_| {
                let rd = rd("D4")?;
                let c = c_cone(&rd, &SubgroupSpec::MaximalTorus, &ConeOptions::default()).map_err(s)?;
                let facets = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]];
                let want = Cone::from_facets(4, facets.iter().map(|f| RatVec::from_ints(f)).collect()).map_err(s)?;
                expect_std(&rd, &c.cone, &want)
            },
        },
        GoldenCase {
            name: "a2-enumerated-torus",
            description: "A2: enumerated C_K(T) is the dominant chamber",
            check: |_| enumerated_torus("A2"),
        },
        GoldenCase {
            name: "b2-enumerated-torus",
            description: "B2: enumerated C_K(T) is the dominant chamber",
            check: |_| enumerated_torus("B2"),
        },
        GoldenCase {
            name: "d4-enumerated-torus",
            description: "D4: enumerated C_K(T) is the dominant chamber",
            check: |_| enumerated_torus("D4"),
        },
        GoldenCase {
            name: "u2-hermitian",
            description: "U(2): C_K(T) = C_K(Z_K)",
            check: |_| hermitian("U2"),
        },
        GoldenCase {
            name: "u3-hermitian",
            description: "U(3): C_K(T) = C_K(Z_K)",
            check: |_| hermitian("U3"),
        },
        GoldenCase {
            name: "derived-torus-not-admissible",
            description: "semisimple K: every module with infinite support fails for T^s",
            check: tmult,
        },
    ]
}

impl GoldenCase {
    pub fn run(&self, mode: CatalogMode) -> GoldenOutcome {
        let r = (self.check)(mode);
        GoldenOutcome { name: self.name, passed: r.is_ok(), detail: r.err().unwrap_or_default() }
    }
}

/// Runs all cases in parallel; outcomes keep the case order.
pub fn run_suite(mode: CatalogMode) -> Vec<GoldenOutcome> {
    cases().par_iter().map(|c| c.run(mode)).collect()
}
