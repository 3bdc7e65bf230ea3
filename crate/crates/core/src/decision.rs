//! Admissibility verdicts from the two cones.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::branching::Block;
use crate::conecalc::{as_support, c_cone, AsSupport, CCone, ConeOptions, KModuleSpec, SubgroupSpec};
use crate::error::{Error, Result};
use crate::ratcone::{is_trivial_intersection, Cone, ConeUnion, RatVec, TrivialityCertificate};
use crate::rootdata::RootDatum;

pub const CRITERION_MODULE: &str = "AS_K(X) ∩ C_K(K') = {0}";
pub const CRITERION_Q_SERIES: &str = "C_K(Q∩K) ∩ C_K(K') = {0}";
pub const CRITERION_ALL_IRREPS: &str = "C_K(M) ∩ C_K(K') = {0}";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Admissible,
    NotAdmissible,
    /// No common ray was found, but some input cone is only a lower bound.
    ProvisionalAdmissible,
}

impl Status {
    /// Process exit code for this outcome.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Admissible => 0,
            Status::NotAdmissible => 1,
            Status::ProvisionalAdmissible => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCertificate {
    pub component: usize,
    #[serde(flatten)]
    pub certificate: TrivialityCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub admissible: bool,
    pub provisional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RatVec>,
    pub certificates: Vec<ComponentCertificate>,
    pub inputs_digest: String,
    pub method_tags: Vec<String>,
    pub criterion: String,
}

impl Verdict {
    pub fn status(&self) -> Status {
        match (self.admissible, self.provisional) {
            (false, _) => Status::NotAdmissible,
            (true, false) => Status::Admissible,
            (true, true) => Status::ProvisionalAdmissible,
        }
    }

    /// Re-checks every certificate against the given inputs, including the
    /// digest.
    pub fn verify(&self, as_k: &ConeUnion, c: &Cone) -> Result<()> {
        if self.inputs_digest != inputs_digest(as_k, c) {
            return Err(Error::Internal("inputs digest does not match".into()));
        }
        if self.certificates.len() != as_k.components().len() {
            return Err(Error::Internal("one certificate per component expected".into()));
        }
        for cc in &self.certificates {
            let comp = as_k
                .components()
                .get(cc.component)
                .ok_or_else(|| Error::Internal(format!("no component {}", cc.component)))?;
            cc.certificate.verify(comp, c)?;
        }
        let all_trivial = self.certificates.iter().all(|cc| cc.certificate.is_trivial());
        if all_trivial != self.admissible {
            return Err(Error::Internal("verdict disagrees with its certificates".into()));
        }
        if !self.admissible {
            let w = self.certificates.iter().find_map(|cc| cc.certificate.witness());
            if w != self.witness.as_ref() {
                return Err(Error::Internal("witness is not the first certified one".into()));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct DigestInput<'a> {
    dim: usize,
    as_components: Vec<&'a [RatVec]>,
    c: &'a [RatVec],
}

/// SHA-256 of the canonical JSON of both inputs' generator lists.
pub fn inputs_digest(as_k: &ConeUnion, c: &Cone) -> String {
    let input = DigestInput {
        dim: c.dim(),
        as_components: as_k.components().iter().map(|k| k.generators()).collect(),
        c: c.generators(),
    };
    let json = serde_json::to_vec(&input).expect("digest input serializes");
    hex::encode(Sha256::digest(&json))
}

fn decide(as_k: &ConeUnion, c: &Cone, lower_bound: bool, method_tags: Vec<String>, criterion: &str) -> Result<Verdict> {
    if as_k.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: as_k.dim(), found: c.dim() });
    }
    let mut certificates = Vec::with_capacity(as_k.components().len());
    for (i, comp) in as_k.components().iter().enumerate() {
        let (_, cert) = is_trivial_intersection(comp, c)?;
        cert.verify(comp, c)?;
        certificates.push(ComponentCertificate { component: i, certificate: cert });
    }
    let witness = certificates.iter().find_map(|cc| cc.certificate.witness().cloned());
    let admissible = witness.is_none();
    Ok(Verdict {
        admissible,
        // A ray common to lower-bound cones is common to the true cones too.
        provisional: admissible && lower_bound,
        witness,
        certificates,
        inputs_digest: inputs_digest(as_k, c),
        method_tags,
        criterion: criterion.to_string(),
    })
}

/// Decides `AS_K(X) ∩ C = {0}` componentwise for exact input cones.
pub fn decide_admissible(as_k: &ConeUnion, c: &Cone) -> Result<Verdict> {
    decide(as_k, c, false, Vec::new(), CRITERION_MODULE)
}

fn tags(prefix: &str, method: &str) -> String {
    format!("{prefix}:{method}")
}

fn decide_pair(first: &CCone, second: &CCone, first_tag: &str, criterion: &str) -> Result<Verdict> {
    decide(
        &ConeUnion::single(first.cone.clone()),
        &second.cone,
        !(first.saturated && second.saturated),
        vec![tags(first_tag, first.method), tags("subgroup", second.method)],
        criterion,
    )
}

/// Q-series criterion `C_K(Q∩K) ∩ C_K(K′) = {0}`.
pub fn decide_q_series(rd: &RootDatum, qcapk: &SubgroupSpec, sub: &SubgroupSpec, opts: &ConeOptions) -> Result<Verdict> {
    let a = c_cone(rd, qcapk, opts)?;
    let b = c_cone(rd, sub, opts)?;
    decide_pair(&a, &b, "qcapk", CRITERION_Q_SERIES)
}

/// Criterion for every irreducible representation: `C_K(M) ∩ C_K(K′) = {0}`
/// with `M` the compact part of a minimal parabolic's Levi.
pub fn decide_all_irreps(rd: &RootDatum, m: &SubgroupSpec, sub: &SubgroupSpec, opts: &ConeOptions) -> Result<Verdict> {
    let a = c_cone(rd, m, opts)?;
    let b = c_cone(rd, sub, opts)?;
    decide_pair(&a, &b, "m", CRITERION_ALL_IRREPS)
}

/// Criterion for a catalogued module against a subgroup.
pub fn decide_module(rd: &RootDatum, x: &KModuleSpec, sub: &SubgroupSpec, opts: &ConeOptions) -> Result<Verdict> {
    let a: AsSupport = as_support(rd, x, opts)?;
    let b = c_cone(rd, sub, opts)?;
    let mut method_tags: Vec<String> = a.method_tags.iter().map(|t| tags("as", t)).collect();
    method_tags.push(tags("subgroup", b.method));
    decide(&a.union, &b.cone, !(a.saturated && b.saturated), method_tags, CRITERION_MODULE)
}

#[derive(Clone, Debug, Serialize)]
pub struct HermitianReport {
    pub equal: bool,
    /// Whether each enumeration saturated and so was compared too.
    pub toral_enumerated: bool,
    pub central_enumerated: bool,
}

/// Compares `C_K(T)` with `C_K(Z_K)` for a root datum with one-dimensional
/// center. The closed forms are compared exactly; each enumerated spherical
/// cone that saturates within `bound` must agree with its closed form.
pub fn hermitian_center_report(rd: &RootDatum, bound: u32) -> Result<HermitianReport> {
    if rd.center_dim() != 1 {
        return Err(Error::Spec(format!("{rd} has center of dimension {}, expected 1", rd.center_dim())));
    }
    let opts = ConeOptions { bound };
    let toral = c_cone(rd, &SubgroupSpec::MaximalTorus, &opts)?.cone;
    let central = c_cone(rd, &SubgroupSpec::CentralTorus, &opts)?.cone;
    let mut enumerated = [false, false];
    for (slot, (block, closed)) in [(Block::Torus, &toral), (Block::Center, &central)].into_iter().enumerate() {
        let blocks = vec![block; rd.factors().len()];
        let sub = SubgroupSpec::general(rd, &blocks)?;
        let e = c_cone(rd, &sub, &opts)?;
        let agrees = if e.saturated {
            e.cone.same_set(closed)?
        } else {
            // Lower bound only.
            closed.contains_cone(&e.cone)?
        };
        if !agrees {
            return Err(Error::Internal(format!("enumerated {block} cone disagrees with its closed form on {rd}")));
        }
        enumerated[slot] = e.saturated;
    }
    Ok(HermitianReport {
        equal: toral.same_set(&central)?,
        toral_enumerated: enumerated[0],
        central_enumerated: enumerated[1],
    })
}

/// Enumeration bound used by [`hermitian_center_check`]. The toral monoid of
/// `U(3)` has a generator of height 3, so 6 is the least saturating bound.
pub const HERMITIAN_BOUND: u32 = 6;

/// True iff `C_K(T) = C_K(Z_K)`.
pub fn hermitian_center_check(rd: &RootDatum) -> Result<bool> {
    Ok(hermitian_center_report(rd, HERMITIAN_BOUND)?.equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(dim, gens.iter().map(|g| v(g)).collect()).unwrap()
    }

    #[test]
    fn finite_dimensional_is_admissible() {
        let c = Cone::full(3);
        let verdict = decide_admissible(&ConeUnion::single(Cone::zero(3)), &c).unwrap();
        assert_eq!(verdict.status(), Status::Admissible);
        verdict.verify(&ConeUnion::single(Cone::zero(3)), &c).unwrap();
    }

    #[test]
    fn witness_is_reported_and_verified() {
        let a = ConeUnion::new(vec![cone(2, &[&[1, 0]]), cone(2, &[&[1, 0], &[0, 1]])]).unwrap();
        let c = cone(2, &[&[1, 1]]);
        let verdict = decide_admissible(&a, &c).unwrap();
        assert_eq!(verdict.status(), Status::NotAdmissible);
        assert!(verdict.certificates[0].certificate.is_trivial());
        assert_eq!(verdict.witness, Some(v(&[1, 1])));
        verdict.verify(&a, &c).unwrap();
        assert!(verdict.verify(&a, &cone(2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = ConeUnion::single(cone(2, &[&[1, 0]]));
        let d1 = inputs_digest(&a, &cone(2, &[&[0, 1]]));
        assert_eq!(d1, inputs_digest(&a, &cone(2, &[&[0, 1]])));
        assert_ne!(d1, inputs_digest(&a, &cone(2, &[&[0, 2]])));
        assert_eq!(d1.len(), 64);
    }

    #[test]
    fn same_torus_cone_is_not_admissible() {
        let rd = RootDatum::parse("B2").unwrap();
        let o = ConeOptions::default();
        let verdict = decide_q_series(&rd, &SubgroupSpec::MaximalTorus, &SubgroupSpec::MaximalTorus, &o).unwrap();
        assert_eq!(verdict.status(), Status::NotAdmissible);
        let verdict = decide_all_irreps(&rd, &SubgroupSpec::Whole, &SubgroupSpec::Trivial, &o).unwrap();
        assert_eq!(verdict.status(), Status::Admissible);
    }

    #[test]
    fn unsaturated_enumeration_is_provisional() {
        let rd = RootDatum::parse("A1xA1").unwrap();
        let sub = SubgroupSpec::general(&rd, &[Block::Diagonal]).unwrap();
        // Bound 1 never reaches (1,1).
        let x = KModuleSpec::MonoidSupport(vec![v(&[1, 0])]);
        let verdict = decide_module(&rd, &x, &sub, &ConeOptions { bound: 1 }).unwrap();
        assert_eq!(verdict.status(), Status::ProvisionalAdmissible);
        let verdict = decide_module(&rd, &x, &sub, &ConeOptions { bound: 4 }).unwrap();
        assert_eq!(verdict.status(), Status::Admissible);
    }

    #[test]
    fn hermitian_checks() {
        for t in ["U2", "U3", "T1", "A1xT1"] {
            assert!(hermitian_center_check(&RootDatum::parse(t).unwrap()).unwrap(), "{t}");
        }
        assert!(hermitian_center_check(&RootDatum::parse("A2").unwrap()).is_err());
        assert!(hermitian_center_check(&RootDatum::parse("T2").unwrap()).is_err());
        let r = hermitian_center_report(&RootDatum::parse("U3").unwrap(), HERMITIAN_BOUND).unwrap();
        assert!(r.toral_enumerated && r.central_enumerated);
    }
}
