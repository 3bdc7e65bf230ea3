//! Exact rational polyhedral cones.
//!
//! A [`Cone`] is the nonnegative span of finitely many rational generators,
//! optionally carrying an inner-normal facet list `<f, x> >= 0`. All
//! decisions (membership, intersection, triviality) are made exactly, either
//! by the phase-one simplex in [`lp`] or by double description in [`dd`].

pub mod dd;
pub mod linalg;
pub mod lp;
mod vector;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use vector::{dot, fmt_q, parse_q, primitive, q, qf, ser_qs, RatVec, Q};

use crate::error::{Error, Result};
use lp::Feasibility;

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Finitely generated convex polyhedral cone in `Q^dim`.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<RatVec>,
    facets: Option<Vec<RatVec>>,
}

impl Cone {
    /// Nonnegative span of `generators`; zero vectors are dropped.
    pub fn from_generators(dim: usize, generators: Vec<RatVec>) -> Result<Cone> {
        for g in &generators {
            check_dim(dim, g.dim())?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Cone { dim, generators, facets: None })
    }

    /// `{x : <f, x> >= 0 for every f}`, converted to generators immediately.
    pub fn from_facets(dim: usize, facets: Vec<RatVec>) -> Result<Cone> {
        for f in &facets {
            check_dim(dim, f.dim())?;
        }
        let rows: Vec<Vec<Q>> = facets.iter().map(|f| f.coords().to_vec()).collect();
        let generators = generators_of(dim, &dd::hrep_to_vrep(dim, &rows));
        Ok(Cone { dim, generators, facets: Some(facets) })
    }

    pub fn zero(dim: usize) -> Cone {
        Cone { dim, generators: Vec::new(), facets: None }
    }

    pub fn full(dim: usize) -> Cone {
        let mut gens = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = RatVec::unit(dim, i);
            gens.push(-&e);
            gens.push(e);
        }
        Cone { dim, generators: gens, facets: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    pub fn facets(&self) -> Option<&[RatVec]> {
        self.facets.as_deref()
    }

    /// The cone is `{0}` exactly when no nonzero generator remains.
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Facet list, computing it by double description when absent.
    pub fn facet_list(&self) -> Vec<RatVec> {
        match &self.facets {
            Some(f) => f.clone(),
            None => facets_of(self.dim, &self.generators),
        }
    }

    pub fn contains(&self, v: &RatVec) -> Result<bool> {
        Ok(membership(v, self)?.is_some())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Set equality by mutual generator membership.
    pub fn same_set(&self, other: &Cone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }

    /// Applies a linear map given as rows (`out_dim x dim`).
    pub fn map_linear(&self, rows: &[Vec<Q>]) -> Result<Cone> {
        let out_dim = rows.len();
        for r in rows {
            check_dim(self.dim, r.len())?;
        }
        let gens = self
            .generators
            .iter()
            .map(|g| RatVec::new(linalg::mat_vec(rows, g.coords())))
            .collect();
        Cone::from_generators(out_dim, gens)
    }

    /// Multiplies every generator by a positive rational.
    pub fn rescaled(&self, factors: &[Q]) -> Cone {
        let gens = self
            .generators
            .iter()
            .zip(factors.iter().cycle())
            .map(|(g, c)| g.scale(c))
            .collect();
        Cone { dim: self.dim, generators: gens, facets: self.facets.clone() }
    }
}

fn generators_of(dim: usize, out: &dd::DdOutput) -> Vec<RatVec> {
    let mut gens: Vec<RatVec> = out.rays.iter().map(|r| RatVec::from_bigints(r)).collect();
    for l in &out.lineality {
        let v = RatVec::from_bigints(l);
        gens.push(-&v);
        gens.push(v);
    }
    debug_assert!(gens.iter().all(|g| g.dim() == dim));
    gens
}

fn facets_of(dim: usize, generators: &[RatVec]) -> Vec<RatVec> {
    let rows: Vec<Vec<Q>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    let mut facets = generators_of(dim, &dd::hrep_to_vrep(dim, &rows));
    facets.sort();
    facets
}

/// Cone membership with exact nonnegative coefficients `a`, `sum a_j s_j = v`.
pub fn membership(v: &RatVec, c: &Cone) -> Result<Option<Vec<Q>>> {
    check_dim(c.dim, v.dim())?;
    let n = c.generators.len();
    if n == 0 {
        return Ok(v.is_zero().then(Vec::new));
    }
    let rows: Vec<Vec<Q>> = (0..c.dim)
        .map(|i| c.generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    Ok(lp::solve_nonneg(&rows, v.coords(), n).solution())
}

/// Returns a cone carrying both representations, in canonical order.
pub fn dd_convert(c: &Cone) -> Cone {
    let facets = c.facet_list();
    let rows: Vec<Vec<Q>> = facets.iter().map(|f| f.coords().to_vec()).collect();
    let mut generators = generators_of(c.dim, &dd::hrep_to_vrep(c.dim, &rows));
    generators.sort();
    // Canonical facets are recomputed from the canonical generators.
    let facets = facets_of(c.dim, &generators);
    Cone { dim: c.dim, generators, facets: Some(facets) }
}

/// Set intersection via concatenated H-representations.
pub fn intersect(c1: &Cone, c2: &Cone) -> Result<Cone> {
    check_dim(c1.dim, c2.dim)?;
    let mut facets = c1.facet_list();
    facets.extend(c2.facet_list());
    Ok(dd_convert(&Cone::from_facets(c1.dim, facets)?))
}

/// Outcome evidence for [`is_trivial_intersection`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrivialityCertificate {
    /// A nonzero vector in both cones with its two coefficient vectors.
    Witness {
        witness: RatVec,
        #[serde(serialize_with = "ser_qs")]
        first: Vec<Q>,
        #[serde(serialize_with = "ser_qs")]
        second: Vec<Q>,
    },
    /// Combined facet system whose solution set is `{0}`, with strictly
    /// positive multipliers `y` such that `Hᵀy = 0` and `rank H = dim`.
    EmptyIntersection {
        hrep_evidence: Vec<RatVec>,
        #[serde(serialize_with = "ser_qs")]
        multipliers: Vec<Q>,
    },
}

impl TrivialityCertificate {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityCertificate::EmptyIntersection { .. })
    }

    pub fn witness(&self) -> Option<&RatVec> {
        match self {
            TrivialityCertificate::Witness { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Independent check against the two generator lists.
    ///
    /// A witness must be reproduced by both coefficient vectors. An
    /// emptiness claim is accepted when every facet is valid on its cone's
    /// generators and the combined system passes Gordan's alternative.
    pub fn verify(&self, c1: &Cone, c2: &Cone) -> Result<()> {
        check_dim(c1.dim, c2.dim)?;
        let fail = |m: &str| Err(Error::Internal(format!("certificate rejected: {m}")));
        match self {
            TrivialityCertificate::Witness { witness, first, second } => {
                if witness.is_zero() {
                    return fail("zero witness");
                }
                for (c, coeffs) in [(c1, first), (c2, second)] {
                    if coeffs.len() != c.generators.len() || coeffs.iter().any(Signed::is_negative) {
                        return fail("bad coefficient vector");
                    }
                    let mut sum = RatVec::zeros(c.dim);
                    for (a, g) in coeffs.iter().zip(&c.generators) {
                        sum = &sum + &g.scale(a);
                    }
                    if &sum != witness {
                        return fail("combination does not reproduce the witness");
                    }
                }
                Ok(())
            }
            TrivialityCertificate::EmptyIntersection { hrep_evidence, multipliers } => {
                if hrep_evidence.len() != multipliers.len() {
                    return fail("multiplier count");
                }
                if multipliers.iter().any(|y| !y.is_positive()) {
                    return fail("multipliers must be strictly positive");
                }
                // Each facet must hold on all generators of at least one cone.
                for f in hrep_evidence {
                    let valid_on = |c: &Cone| c.generators.iter().all(|g| !f.dot(g).is_negative());
                    if !valid_on(c1) && !valid_on(c2) {
                        return fail("facet not valid on either cone");
                    }
                }
                let rows: Vec<Vec<Q>> = hrep_evidence.iter().map(|f| f.coords().to_vec()).collect();
                if linalg::rank(&rows, c1.dim) != c1.dim {
                    return fail("facet system is rank deficient");
                }
                let mut comb = vec![Q::zero(); c1.dim];
                for (f, y) in hrep_evidence.iter().zip(multipliers) {
                    for (x, fi) in comb.iter_mut().zip(f.coords()) {
                        *x += y * fi;
                    }
                }
                if comb.iter().any(|x| !x.is_zero()) {
                    return fail("multipliers do not annihilate the facet system");
                }
                Ok(())
            }
        }
    }
}

/// Decides `c1 ∩ c2 = {0}` and returns a certificate either way.
///
/// The intersection is computed by double description; a nonzero generator
/// becomes the witness. Otherwise strictly positive Gordan multipliers are
/// found by linear programming, so the "trivial" answer is backed by a
/// second, independent computation.
pub fn is_trivial_intersection(c1: &Cone, c2: &Cone) -> Result<(bool, TrivialityCertificate)> {
    check_dim(c1.dim, c2.dim)?;
    let dim = c1.dim;
    let inter = intersect(c1, c2)?;
    if let Some(w) = inter.generators.first() {
        let first = membership(w, c1)?
            .ok_or_else(|| Error::Internal(format!("witness {w} not in first cone")))?;
        let second = membership(w, c2)?
            .ok_or_else(|| Error::Internal(format!("witness {w} not in second cone")))?;
        let cert = TrivialityCertificate::Witness { witness: w.clone(), first, second };
        return Ok((false, cert));
    }

    let mut hrep = c1.facet_list();
    hrep.extend(c2.facet_list());
    if dim == 0 {
        return Ok((true, TrivialityCertificate::EmptyIntersection { hrep_evidence: hrep, multipliers: Vec::new() }));
    }
    // y = 1 + u with u >= 0 and Hᵀ(1 + u) = 0.
    let m = hrep.len();
    let rows: Vec<Vec<Q>> = (0..dim)
        .map(|i| hrep.iter().map(|f| f[i].clone()).collect())
        .collect();
    let rhs: Vec<Q> = rows.iter().map(|r| -r.iter().fold(Q::zero(), |a, x| a + x)).collect();
    let multipliers = match lp::solve_nonneg(&rows, &rhs, m) {
        Feasibility::Feasible(u) => u.into_iter().map(|x| x + Q::one()).collect(),
        Feasibility::Infeasible(_) => {
            return Err(Error::Internal(
                "double description found no common ray but Gordan multipliers do not exist".into(),
            ))
        }
    };
    let cert = TrivialityCertificate::EmptyIntersection { hrep_evidence: hrep, multipliers };
    Ok((true, cert))
}

/// Finite description of a subset of the weight lattice.
#[derive(Clone, Debug)]
pub enum SupportDescription {
    FiniteSet(Vec<RatVec>),
    /// Generators of a `Z>=0`-span.
    MonoidGenerators(Vec<RatVec>),
}

/// Limit cone: bounded sets collapse to `{0}`, a monoid to its real span.
pub fn limit_cone(spec: &SupportDescription) -> Result<Cone> {
    match spec {
        SupportDescription::FiniteSet(pts) => {
            let first = pts.first().ok_or(Error::Empty("finite weight set"))?;
            for p in pts {
                check_dim(first.dim(), p.dim())?;
            }
            Ok(Cone::zero(first.dim()))
        }
        SupportDescription::MonoidGenerators(gens) => {
            let first = gens.first().ok_or(Error::Empty("monoid generators"))?;
            Cone::from_generators(first.dim(), gens.clone())
        }
    }
}

/// Convex hull membership by exact feasibility of a convex combination.
pub fn hull_membership(z: &RatVec, points: &[RatVec]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::Empty("point list"));
    }
    for p in points {
        check_dim(z.dim(), p.dim())?;
    }
    let n = points.len();
    let mut rows: Vec<Vec<Q>> = (0..z.dim())
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    rows.push(vec![Q::one(); n]);
    let mut rhs = z.coords().to_vec();
    rhs.push(Q::one());
    Ok(matches!(lp::solve_nonneg(&rows, &rhs, n), Feasibility::Feasible(_)))
}

/// Finite union of cones of a common dimension.
#[derive(Clone, Debug)]
pub struct ConeUnion {
    components: Vec<Cone>,
}

impl ConeUnion {
    pub fn new(components: Vec<Cone>) -> Result<ConeUnion> {
        let first = components.first().ok_or(Error::Empty("cone union"))?;
        let dim = first.dim;
        for c in &components {
            check_dim(dim, c.dim)?;
        }
        Ok(ConeUnion { components })
    }

    pub fn single(c: Cone) -> ConeUnion {
        ConeUnion { components: vec![c] }
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim
    }

    pub fn components(&self) -> &[Cone] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cone::is_zero)
    }

    pub fn contains(&self, v: &RatVec) -> Result<bool> {
        for c in &self.components {
            if c.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// JSON shape for cones: generators plus facets, rationals as strings.
#[derive(Clone, Debug, Serialize)]
pub struct ConeJson {
    pub dim: usize,
    pub generators: Vec<RatVec>,
    pub facets: Vec<RatVec>,
}

impl From<&Cone> for ConeJson {
    fn from(c: &Cone) -> Self {
        let c = dd_convert(c);
        ConeJson {
            dim: c.dim,
            generators: c.generators.clone(),
            facets: c.facets.clone().unwrap_or_default(),
        }
    }
}
