//! Numerical sanity check of Kostant convexity for `SU(n)`: diagonals of
//! `U diag(y) U*` lie in the convex hull of the permutations of `y`.
//!
//! This is the only floating-point code in the crate. It never feeds a
//! verdict.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::ratcone::{dd::hrep_to_vrep, RatVec, Q};
use crate::rootdata::{Family, FactorKind, RootDatum};

#[derive(Clone, Debug)]
pub struct KostantReport {
    pub samples: usize,
    /// Largest normalized facet violation seen (0 when every sample is inside).
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub const KOSTANT_TOLERANCE: f64 = 1e-9;

fn haar_unitary(n: usize, rng: &mut StdRng) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for j in 0..k {
            let proj: Complex64 = (0..n).map(|i| cols[j][i].conj() * cols[k][i]).sum();
            for i in 0..n {
                let sub = proj * cols[j][i];
                cols[k][i] -= sub;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[k].iter_mut().for_each(|z| *z /= norm);
    }
    cols
}

type Facet = (Vec<f64>, f64, f64);

/// Hull of the Weyl orbit in standard coordinates, as `a·z + b >= 0` with `|a|`.
fn orbit_hull(rd: &RootDatum, y: &RatVec, n: usize) -> Result<Vec<Facet>> {
    let orbit = rd.weyl_orbit(y)?;
    let rows: Vec<Vec<Q>> = orbit
        .iter()
        .map(|p| {
            let mut v = rd.to_standard(p).into_coords();
            v.push(Q::from_integer(1.into()));
            v
        })
        .collect();
    let dual = hrep_to_vrep(n + 1, &rows);
    let mut facets: Vec<Vec<f64>> = dual.rays.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    for l in &dual.lineality {
        let f: Vec<f64> = l.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        facets.push(f.iter().map(|x| -x).collect());
        facets.push(f);
    }
    Ok(facets
        .into_iter()
        .filter_map(|f| {
            let norm = f[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
            (norm > 0.0).then(|| (f[..n].to_vec(), f[n], norm))
        })
        .collect())
}

/// Largest normalized deficit of `z` over the facets.
fn violation(facets: &[Facet], z: &[f64]) -> f64 {
    facets
        .iter()
        .map(|(a, b, norm)| -(a.iter().zip(z).map(|(x, y)| x * y).sum::<f64>() + b) / norm)
        .fold(0.0, f64::max)
}

/// Samples `samples` conjugations of `Y` (internal coordinates of an `A_n`
/// root datum) and measures how far their projections leave `Conv(W Y)`.
pub fn kostant_projection_check(rd: &RootDatum, y: &RatVec, samples: usize, seed: u64) -> Result<KostantReport> {
    let n = match rd.factors() {
        [f] => match f.kind {
            FactorKind::Simple(t) if t.family == Family::A => t.rank + 1,
            _ => return Err(Error::Unsupported(format!("matrix sampling is implemented for SU(n) only, not {rd}"))),
        },
        _ => return Err(Error::Unsupported(format!("matrix sampling is implemented for SU(n) only, not {rd}"))),
    };
    rd.check_dim(y)?;

    let facets = orbit_hull(rd, y, n)?;
    let ys = rd.to_standard(y).to_f64();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let u = haar_unitary(n, &mut rng);
        // diag(U diag(y) U*)_i = Σ_j |U_ij|² y_j, with U stored by columns.
        let z: Vec<f64> = (0..n).map(|i| (0..n).map(|j| u[j][i].norm_sqr() * ys[j]).sum()).collect();
        worst = worst.max(violation(&facets, &z));
    }
    Ok(KostantReport { samples, max_violation: worst, tolerance: KOSTANT_TOLERANCE, passed: worst <= KOSTANT_TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_and_a2_samples_stay_inside() {
        let a1 = RootDatum::parse("A1").unwrap();
        let r = kostant_projection_check(&a1, &RatVec::from_ints(&[3]), 200, 1).unwrap();
        assert!(r.passed, "{r:?}");
        let a2 = RootDatum::parse("A2").unwrap();
        let r = kostant_projection_check(&a2, &RatVec::from_ints(&[2, 1]), 200, 2).unwrap();
        assert!(r.passed, "{r:?}");
        let r = kostant_projection_check(&a2, &RatVec::from_ints(&[0, 0]), 10, 3).unwrap();
        assert!(r.passed && r.max_violation.abs() < 1e-12);
        assert!(kostant_projection_check(&RootDatum::parse("B2").unwrap(), &RatVec::from_ints(&[1, 0]), 1, 0).is_err());
    }

    #[test]
    fn outside_points_are_detected() {
        let a2 = RootDatum::parse("A2").unwrap();
        let y = RatVec::from_ints(&[1, 1]);
        let facets = orbit_hull(&a2, &y, 3).unwrap();
        let ys = a2.to_standard(&y).to_f64();
        assert!(violation(&facets, &ys) < 1e-12);
        let doubled: Vec<f64> = ys.iter().map(|x| 2.0 * x).collect();
        assert!(violation(&facets, &doubled) > 0.1);
    }
}
