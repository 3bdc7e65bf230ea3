//! TOML job files and module catalogs.
//!
//! ```toml
//! [group]
//! type = "D2xD2"
//!
//! [subgroup]
//! kind = "symmetric"
//! blocks = ["u(n)-in-so(2n)", "u(n)-in-so(2n)"]
//!
//! [module]
//! kind = "catalog"
//! name = "q-series"
//!
//! [options]
//! bound = 4
//! ```

use serde::Deserialize;

use crate::branching::{Block, Embedding};
use crate::conecalc::catalog::{Catalog, CatalogEntry};
use crate::conecalc::{ConeOptions, InvolutionData, KModuleSpec, SubgroupSpec};
use crate::error::{Error, Result};
use crate::ratcone::{parse_q, RatVec, Q};
use crate::rootdata::{Lattice, RootDatum};

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn to_q(&self) -> Result<Q> {
        match self {
            Num::Int(n) => Ok(Q::from_integer((*n).into())),
            Num::Str(s) => parse_q(s),
        }
    }
}

fn row(xs: &[Num]) -> Result<Vec<Q>> {
    xs.iter().map(Num::to_q).collect()
}

fn matrix(rows: &[Vec<Num>]) -> Result<Vec<Vec<Q>>> {
    rows.iter().map(|r| row(r)).collect()
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Coords {
    /// Fundamental-weight coefficients, then central coordinates.
    #[default]
    Fundamental,
    Standard,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupToml {
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(default)]
    pub lattice: Option<Lattice>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupToml {
    pub kind: String,
    #[serde(default)]
    pub blocks: Vec<String>,
    /// Involution on standard coordinates.
    #[serde(default)]
    pub sigma: Option<Vec<Vec<Num>>>,
    /// Target type for a raw restriction matrix.
    #[serde(default)]
    pub target: Option<String>,
    /// Restriction matrix, `target x source`.
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Num>>>,
    #[serde(default)]
    pub coords: Coords,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolicToml {
    /// `q-series` or `all-irreps`.
    pub mode: String,
    pub levi: SubgroupToml,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleToml {
    pub kind: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
    #[serde(default)]
    pub coords: Coords,
    #[serde(default)]
    pub generators: Vec<Vec<Num>>,
    #[serde(default)]
    pub components: Vec<Vec<Vec<Num>>>,
    #[serde(default)]
    pub qcapk: Option<SubgroupToml>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsToml {
    pub bound: Option<u32>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobToml {
    pub group: GroupToml,
    #[serde(default)]
    pub subgroup: Option<SubgroupToml>,
    #[serde(default)]
    pub module: Option<ModuleToml>,
    #[serde(default)]
    pub parabolic: Option<ParabolicToml>,
    #[serde(default)]
    pub catalog: Vec<ModuleToml>,
    #[serde(default)]
    pub options: OptionsToml,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogToml {
    #[serde(default)]
    entry: Vec<ModuleToml>,
}

/// What the subgroup is tested against.
#[derive(Clone, Debug)]
pub enum JobTarget {
    Module(KModuleSpec),
    QSeries(SubgroupSpec),
    AllIrreps(SubgroupSpec),
}

#[derive(Clone, Debug)]
pub struct Job {
    pub rd: RootDatum,
    pub subgroup: Option<SubgroupSpec>,
    pub target: Option<JobTarget>,
    pub catalog: Catalog,
    pub options: OptionsToml,
}

impl Job {
    pub fn cone_options(&self) -> ConeOptions {
        ConeOptions { bound: self.options.bound.unwrap_or(ConeOptions::default().bound) }
    }
}

fn spec_err(msg: impl Into<String>) -> Error {
    Error::Spec(msg.into())
}

pub fn parse_group(g: &GroupToml) -> Result<RootDatum> {
    let rd = RootDatum::parse(&g.cartan_type)?;
    Ok(match g.lattice {
        Some(l) => rd.with_lattice(l),
        None => rd,
    })
}

fn blocks(names: &[String]) -> Result<Vec<Block>> {
    if names.is_empty() {
        return Err(spec_err("subgroup needs a nonempty `blocks` list"));
    }
    names.iter().map(|n| n.parse()).collect()
}

pub fn parse_subgroup(rd: &RootDatum, s: &SubgroupToml) -> Result<SubgroupSpec> {
    let no_payload = s.blocks.is_empty() && s.sigma.is_none() && s.matrix.is_none() && s.target.is_none();
    let plain = |spec: SubgroupSpec| {
        if no_payload {
            Ok(spec)
        } else {
            Err(spec_err(format!("subgroup kind {:?} takes no blocks or matrices", s.kind)))
        }
    };
    match s.kind.as_str() {
        "maximal-torus" => plain(SubgroupSpec::MaximalTorus),
        "derived-torus" => plain(SubgroupSpec::DerivedMaximalTorus),
        "center" => plain(SubgroupSpec::CentralTorus),
        "trivial" => plain(SubgroupSpec::Trivial),
        "whole" => plain(SubgroupSpec::Whole),
        "symmetric" => match &s.sigma {
            Some(m) => {
                let m = matrix(m)?;
                let inv = match s.coords {
                    Coords::Standard => InvolutionData::from_standard(rd, &m)?,
                    Coords::Fundamental => InvolutionData::new(rd, m)?,
                };
                Ok(SubgroupSpec::SymmetricPair(inv))
            }
            None => SubgroupSpec::symmetric(rd, &blocks(&s.blocks)?),
        },
        "general" => match (&s.target, &s.matrix) {
            (Some(t), Some(m)) => {
                let target = RootDatum::parse(t)?;
                let m = matrix(m)?;
                let e = match s.coords {
                    Coords::Standard => Embedding::from_standard(rd.clone(), target, &m)?,
                    Coords::Fundamental => Embedding::new(rd.clone(), target, m)?,
                };
                Ok(SubgroupSpec::General(e))
            }
            (None, None) => SubgroupSpec::general(rd, &blocks(&s.blocks)?),
            _ => Err(spec_err("a raw embedding needs both `target` and `matrix`")),
        },
        // Symmetric when every block is, so the closed form is used.
        "preset" => {
            let b = blocks(&s.blocks)?;
            if b.iter().all(|x| x.is_symmetric()) {
                SubgroupSpec::symmetric(rd, &b)
            } else {
                SubgroupSpec::general(rd, &b)
            }
        }
        other => Err(spec_err(format!("unknown subgroup kind {other:?}"))),
    }
}

fn weight(rd: &RootDatum, xs: &[Num], coords: Coords) -> Result<RatVec> {
    let v = RatVec::new(row(xs)?);
    match coords {
        Coords::Fundamental => {
            rd.check_dim(&v)?;
            Ok(v)
        }
        Coords::Standard => {
            if v.dim() != rd.std_dim() {
                return Err(Error::DimensionMismatch { expected: rd.std_dim(), found: v.dim() });
            }
            rd.from_standard(&v)
        }
    }
}

pub fn parse_module(rd: &RootDatum, m: &ModuleToml, catalog: &Catalog) -> Result<KModuleSpec> {
    let ws = |list: &[Vec<Num>]| list.iter().map(|x| weight(rd, x, m.coords)).collect::<Result<Vec<_>>>();
    match m.kind.as_str() {
        "finite-dimensional" => Ok(KModuleSpec::FiniteDimensional),
        "monoid" => Ok(KModuleSpec::MonoidSupport(ws(&m.generators)?)),
        "orbit-components" => {
            Ok(KModuleSpec::OrbitComponents(m.components.iter().map(|c| ws(c)).collect::<Result<Vec<_>>>()?))
        }
        "parabolic-induced" => {
            let q = m.qcapk.as_ref().ok_or_else(|| spec_err("parabolic-induced module needs `qcapk`"))?;
            Ok(KModuleSpec::ParabolicInduced(parse_subgroup(rd, q)?))
        }
        "catalog" => {
            let name = m.name.as_deref().ok_or_else(|| spec_err("catalog module needs `name`"))?;
            Ok(catalog.get(name)?.module.clone())
        }
        other => Err(spec_err(format!("unknown module kind {other:?}"))),
    }
}

fn entries(rd: &RootDatum, list: &[ModuleToml], base: &Catalog) -> Result<Catalog> {
    let mut out = Vec::with_capacity(list.len());
    for m in list {
        if m.kind == "catalog" {
            return Err(spec_err("catalog entries cannot refer to other entries"));
        }
        let name = m.name.clone().ok_or_else(|| spec_err("catalog entry needs `name`"))?;
        out.push(CatalogEntry { name, module: parse_module(rd, m, base)?, note: m.note.clone().unwrap_or_default() });
    }
    Ok(Catalog::new(out))
}

/// Reads `[[entry]]` tables into catalog entries for `rd`.
pub fn parse_catalog(rd: &RootDatum, text: &str) -> Result<Catalog> {
    let c: CatalogToml = toml::from_str(text).map_err(|e| spec_err(e.to_string()))?;
    entries(rd, &c.entry, &Catalog::default())
}

/// Parses a job file. Extra catalog files are merged after the built-in
/// catalog and before the job's own `[[catalog]]` entries.
pub fn parse_job(text: &str, extra_catalogs: &[String]) -> Result<Job> {
    let t: JobToml = toml::from_str(text).map_err(|e| spec_err(e.to_string()))?;
    let rd = parse_group(&t.group)?;
    let mut catalog = Catalog::builtin(&rd);
    for c in extra_catalogs {
        catalog.extend(parse_catalog(&rd, c)?);
    }
    let own = entries(&rd, &t.catalog, &catalog)?;
    catalog.extend(own);
    if t.module.is_some() && t.parabolic.is_some() {
        return Err(spec_err("give either [module] or [parabolic], not both"));
    }
    let subgroup = t.subgroup.as_ref().map(|s| parse_subgroup(&rd, s)).transpose()?;
    let target = match (&t.module, &t.parabolic) {
        (Some(m), None) => Some(JobTarget::Module(parse_module(&rd, m, &catalog)?)),
        (None, Some(p)) => {
            let levi = parse_subgroup(&rd, &p.levi)?;
            Some(match p.mode.as_str() {
                "q-series" => JobTarget::QSeries(levi),
                "all-irreps" => JobTarget::AllIrreps(levi),
                other => return Err(spec_err(format!("unknown parabolic mode {other:?}"))),
            })
        }
        _ => None,
    };
    if t.options.bound == Some(0) {
        return Err(spec_err("bound must be positive"));
    }
    Ok(Job { rd, subgroup, target, catalog, options: t.options })
}
