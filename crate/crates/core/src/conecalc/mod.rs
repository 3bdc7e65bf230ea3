//! The two cones of the admissibility criterion: `C_K(K′)` for a subgroup
//! and the asymptotic `K`-support `AS_K(X)` of a module.

pub mod catalog;
mod kostant;
mod symmetric;

use crate::branching::{spherical_monoid, Block, Embedding, SphericalMonoid};
use crate::error::{Error, Result};
use crate::ratcone::{limit_cone, Cone, ConeUnion, SupportDescription};
use crate::rootdata::{RootDatum, Weight};

pub use kostant::{kostant_projection_check, KostantReport};
pub use symmetric::{restricted_chamber, InvolutionData, RestrictedRootData};

/// A closed connected subgroup `K′ ⊂ K`.
#[derive(Clone, Debug)]
pub enum SubgroupSpec {
    /// `T`.
    MaximalTorus,
    /// `T^s`, the maximal torus of the derived group.
    DerivedMaximalTorus,
    /// `Z_K`, the identity component of the center.
    CentralTorus,
    /// `{e}`.
    Trivial,
    /// `K` itself.
    Whole,
    SymmetricPair(InvolutionData),
    General(Embedding),
}

impl SubgroupSpec {
    pub fn symmetric(rd: &RootDatum, blocks: &[Block]) -> Result<SubgroupSpec> {
        Ok(SubgroupSpec::SymmetricPair(InvolutionData::from_blocks(rd, blocks)?))
    }

    pub fn general(rd: &RootDatum, blocks: &[Block]) -> Result<SubgroupSpec> {
        Ok(SubgroupSpec::General(Embedding::from_blocks(rd, blocks)?))
    }

    /// The subgroup as a restriction map, for enumeration. Symmetric pairs
    /// given only by an involution have no such map.
    pub fn to_embedding(&self, rd: &RootDatum) -> Result<Embedding> {
        let all = |b: Block| Embedding::from_blocks(rd, &vec![b; rd.factors().len()]);
        match self {
            SubgroupSpec::MaximalTorus => all(Block::Torus),
            SubgroupSpec::DerivedMaximalTorus => all(Block::DerivedTorus),
            SubgroupSpec::CentralTorus => all(Block::Center),
            SubgroupSpec::Trivial => all(Block::Trivial),
            SubgroupSpec::Whole => Ok(Embedding::identity(rd)),
            SubgroupSpec::General(e) => Ok(e.clone()),
            SubgroupSpec::SymmetricPair(_) => {
                Err(Error::Unsupported("a symmetric pair given by its involution has no restriction map".into()))
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SubgroupSpec::MaximalTorus => "maximal-torus",
            SubgroupSpec::DerivedMaximalTorus => "derived-torus",
            SubgroupSpec::CentralTorus => "center",
            SubgroupSpec::Trivial => "trivial",
            SubgroupSpec::Whole => "whole",
            SubgroupSpec::SymmetricPair(_) => "symmetric",
            SubgroupSpec::General(_) => "general",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConeOptions {
    /// Height bound for spherical-monoid enumeration.
    pub bound: u32,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions { bound: 4 }
    }
}

/// `C_K(K′)` with provenance.
#[derive(Clone, Debug)]
pub struct CCone {
    pub cone: Cone,
    pub method: &'static str,
    /// False only for enumeration that may have missed generators.
    pub saturated: bool,
    pub monoid: Option<SphericalMonoid>,
}

fn exact(cone: Cone, method: &'static str) -> CCone {
    CCone { cone, method, saturated: true, monoid: None }
}

/// Computes `C_K(K′)` by the most direct method available for the spec.
pub fn c_cone(rd: &RootDatum, sub: &SubgroupSpec, opts: &ConeOptions) -> Result<CCone> {
    Ok(match sub {
        SubgroupSpec::MaximalTorus => exact(rd.semisimple_chamber(), "toral"),
        SubgroupSpec::DerivedMaximalTorus => exact(rd.dominant_chamber(), "toral"),
        SubgroupSpec::CentralTorus => exact(rd.semisimple_chamber(), "central"),
        SubgroupSpec::Trivial => exact(rd.dominant_chamber(), "trivial"),
        SubgroupSpec::Whole => exact(Cone::zero(rd.dim()), "whole"),
        SubgroupSpec::SymmetricPair(inv) => {
            if inv.sigma_on_t.len() != rd.dim() {
                return Err(Error::DimensionMismatch { expected: rd.dim(), found: inv.sigma_on_t.len() });
            }
            exact(restricted_chamber(rd, inv)?.chamber, "symmetric-pair")
        }
        SubgroupSpec::General(e) => {
            if e.source().dim() != rd.dim() {
                return Err(Error::DimensionMismatch { expected: rd.dim(), found: e.source().dim() });
            }
            let m = spherical_monoid(e, opts.bound)?;
            let cone = if m.generators.is_empty() {
                Cone::zero(rd.dim())
            } else {
                limit_cone(&SupportDescription::MonoidGenerators(m.generators.clone()))?
            };
            CCone { cone, method: "enumeration", saturated: m.saturated, monoid: Some(m) }
        }
    })
}

/// Finite description of the `K`-support of a module.
#[derive(Clone, Debug)]
pub enum KModuleSpec {
    FiniteDimensional,
    MonoidSupport(Vec<Weight>),
    /// Monoid generators `S_j`, one list per component of the associated variety.
    OrbitComponents(Vec<Vec<Weight>>),
    /// Induced from a parabolic `Q` with the given `Q ∩ K`.
    ParabolicInduced(SubgroupSpec),
}

/// `AS_K(X)` with provenance.
#[derive(Clone, Debug)]
pub struct AsSupport {
    pub union: ConeUnion,
    pub saturated: bool,
    pub method_tags: Vec<String>,
}

fn check_weights(rd: &RootDatum, ws: &[Weight]) -> Result<()> {
    if ws.is_empty() {
        return Err(Error::Empty("monoid generators"));
    }
    for w in ws {
        rd.check_dim(w)?;
        if !rd.is_dominant(w) {
            return Err(Error::NotDominant(w.to_string()));
        }
        if !rd.in_lattice(w) {
            return Err(Error::NotInLattice(w.to_string()));
        }
    }
    Ok(())
}

/// Computes `AS_K(X)` as a finite union of cones.
pub fn as_support(rd: &RootDatum, x: &KModuleSpec, opts: &ConeOptions) -> Result<AsSupport> {
    let single = |c: Cone, tag: &str, saturated: bool| AsSupport {
        union: ConeUnion::single(c),
        saturated,
        method_tags: vec![tag.to_string()],
    };
    Ok(match x {
        KModuleSpec::FiniteDimensional => single(Cone::zero(rd.dim()), "finite", true),
        KModuleSpec::MonoidSupport(gens) => {
            check_weights(rd, gens)?;
            single(limit_cone(&SupportDescription::MonoidGenerators(gens.clone()))?, "monoid", true)
        }
        KModuleSpec::OrbitComponents(parts) => {
            if parts.is_empty() {
                return Err(Error::Empty("associated variety components"));
            }
            let mut comps = Vec::with_capacity(parts.len());
            for s in parts {
                check_weights(rd, s)?;
                comps.push(limit_cone(&SupportDescription::MonoidGenerators(s.clone()))?);
            }
            AsSupport { union: ConeUnion::new(comps)?, saturated: true, method_tags: vec!["orbit-components".into()] }
        }
        KModuleSpec::ParabolicInduced(qk) => {
            let c = c_cone(rd, qk, opts)?;
            single(c.cone, &format!("induced:{}", c.method), c.saturated)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcone::RatVec;

    fn w(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    fn std_cone(rd: &RootDatum, c: &Cone) -> Cone {
        rd.cone_to_standard(c).unwrap()
    }

    #[test]
    fn swap_gives_diagonal_ray() {
        let rd = RootDatum::parse("A1xA1").unwrap();
        let sub = SubgroupSpec::symmetric(&rd, &[Block::Diagonal]).unwrap();
        let c = c_cone(&rd, &sub, &ConeOptions::default()).unwrap();
        assert_eq!(c.method, "symmetric-pair");
        assert!(c.cone.same_set(&Cone::from_generators(2, vec![w(&[1, 1])]).unwrap()).unwrap());
    }

    #[test]
    fn unitary_in_orthogonal_is_paired() {
        let rd = RootDatum::parse("D2xD2").unwrap();
        let sub = SubgroupSpec::symmetric(&rd, &[Block::UnitaryInSoEven, Block::UnitaryInSoEven]).unwrap();
        let c = c_cone(&rd, &sub, &ConeOptions::default()).unwrap();
        let expected = Cone::from_generators(4, vec![w(&[1, 1, 0, 0]), w(&[0, 0, 1, 1])]).unwrap();
        assert!(std_cone(&rd, &c.cone).same_set(&expected).unwrap());
    }

    #[test]
    fn identity_involution_gives_zero_cone() {
        let rd = RootDatum::parse("B2").unwrap();
        let sub = SubgroupSpec::symmetric(&rd, &[Block::Whole]).unwrap();
        assert!(c_cone(&rd, &sub, &ConeOptions::default()).unwrap().cone.is_zero());
    }

    #[test]
    fn toral_and_central_cones() {
        let u3 = RootDatum::parse("U3").unwrap();
        let z = c_cone(&u3, &SubgroupSpec::CentralTorus, &ConeOptions::default()).unwrap();
        assert!(z.cone.same_set(&u3.semisimple_chamber()).unwrap());
        // Σλ_i = 0 on every generator.
        for g in z.cone.generators() {
            let s = u3.to_standard(g);
            assert!(s.coords().iter().sum::<crate::ratcone::Q>() == crate::ratcone::q(0));
        }
        let t = c_cone(&u3, &SubgroupSpec::DerivedMaximalTorus, &ConeOptions::default()).unwrap();
        assert!(t.cone.same_set(&u3.dominant_chamber()).unwrap());
    }

    #[test]
    fn enumeration_matches_symmetric_for_small_pairs() {
        let rd = RootDatum::parse("A2").unwrap();
        for b in [Block::SoInSu, Block::SUxUInSU] {
            let sym = c_cone(&rd, &SubgroupSpec::symmetric(&rd, &[b]).unwrap(), &ConeOptions::default()).unwrap();
            let gen = c_cone(&rd, &SubgroupSpec::general(&rd, &[b]).unwrap(), &ConeOptions::default()).unwrap();
            assert!(gen.saturated, "{b}");
            assert!(sym.cone.same_set(&gen.cone).unwrap(), "{b}");
        }
    }

    #[test]
    fn as_support_kinds() {
        let rd = RootDatum::parse("A2").unwrap();
        let o = ConeOptions::default();
        assert!(as_support(&rd, &KModuleSpec::FiniteDimensional, &o).unwrap().union.is_zero());
        let u = as_support(&rd, &KModuleSpec::OrbitComponents(vec![vec![w(&[1, 0])], vec![w(&[1, 1])]]), &o).unwrap();
        assert_eq!(u.union.components().len(), 2);
        assert!(u.union.contains(&w(&[2, 2])).unwrap());
        assert!(!u.union.contains(&w(&[2, 1])).unwrap());
        assert!(as_support(&rd, &KModuleSpec::MonoidSupport(vec![w(&[-1, 0])]), &o).is_err());
        assert!(as_support(&rd, &KModuleSpec::MonoidSupport(vec![]), &o).is_err());
    }
}
