//! Named `K`-modules whose support data are known inputs.

use crate::branching::Block;
use crate::error::{Error, Result};
use crate::ratcone::{q, RatVec};
use crate::rootdata::{Family, FactorKind, RootDatum};

use super::{KModuleSpec, SubgroupSpec};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub module: KModuleSpec,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// Smallest positive multiple of `v` lying in the lattice of `rd`.
fn lattice_multiple(rd: &RootDatum, v: &RatVec) -> RatVec {
    (1..=24).map(|k| v.scale(&q(k))).find(|w| rd.in_lattice(w)).unwrap_or_else(|| v.scale(&q(24)))
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Catalog {
        Catalog { entries }
    }

    /// Generic entries available for every root datum, plus the `Q`-series
    /// entry for products of even orthogonal groups.
    pub fn builtin(rd: &RootDatum) -> Catalog {
        let mut entries = vec![CatalogEntry {
            name: "finite-dimensional".into(),
            module: KModuleSpec::FiniteDimensional,
            note: "any finite-dimensional K-module".into(),
        }];
        let fw = rd.fundamental_weights();
        if let (Some(first), Some(last)) = (fw.first(), fw.last()) {
            let a = lattice_multiple(rd, first);
            let b = lattice_multiple(rd, last);
            entries.push(CatalogEntry {
                name: "ladder".into(),
                module: KModuleSpec::MonoidSupport(vec![a.clone()]),
                note: "K-types along a single fundamental-weight ray".into(),
            });
            entries.push(CatalogEntry {
                name: "two-orbit".into(),
                module: KModuleSpec::OrbitComponents(vec![vec![a], vec![b]]),
                note: "associated variety with two components, one ray each".into(),
            });
        }
        entries.push(CatalogEntry {
            name: "principal-series".into(),
            module: KModuleSpec::ParabolicInduced(SubgroupSpec::Trivial),
            note: "induced from a minimal parabolic with trivial compact Levi part".into(),
        });
        let all_d = rd
            .factors()
            .iter()
            .all(|f| matches!(f.kind, FactorKind::Simple(t) if t.family == Family::D));
        if all_d {
            let blocks = vec![Block::SoOddInSoEven; rd.factors().len()];
            if let Ok(sub) = SubgroupSpec::general(rd, &blocks) {
                entries.push(CatalogEntry {
                    name: "q-series".into(),
                    module: KModuleSpec::ParabolicInduced(sub),
                    note: "induced from Q with Q ∩ K = SO(2p-1) x SO(2q-1)".into(),
                });
            }
        }
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Spec(format!("no catalog entry named {name:?}")))
    }

    /// Later entries replace earlier ones of the same name.
    pub fn extend(&mut self, other: Catalog) {
        for e in other.entries {
            self.entries.retain(|x| x.name != e.name);
            self.entries.push(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_entries() {
        let rd = RootDatum::parse("D2xD2").unwrap();
        let c = Catalog::builtin(&rd);
        let names: Vec<&str> = c.entries().iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["finite-dimensional", "ladder", "two-orbit", "principal-series", "q-series"]);
        assert!(c.get("nope").is_err());
        let t = Catalog::builtin(&RootDatum::parse("T2").unwrap());
        assert_eq!(t.entries().len(), 2);
    }

    #[test]
    fn lattice_multiples() {
        let rd = RootDatum::parse("A2").unwrap().with_lattice(crate::rootdata::Lattice::Root);
        assert_eq!(lattice_multiple(&rd, &RatVec::from_ints(&[1, 0])), RatVec::from_ints(&[3, 0]));
    }
}
