use rayon::prelude::*;

use super::{Method, Metrics, Parameters, Verdict, VerificationReport, Witness};
use crate::constructions::{s_perp, u_generators, z_vector, ProductVector, VandermondePoint};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldTag, Fp, Rational};
use crate::graded_index::Dims;
use crate::linalg::{reduce_mod_p, StateVector, Subspace};

/// Default ceiling on the number of product tuples enumerated.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `{5, 7, 11}` restricted to primes above `N`, topped up with the next
/// primes above `N` so that at least two remain.
pub fn default_primes(dims: &Dims) -> Vec<u64> {
    let n = dims.n_max() as u64;
    let mut out: Vec<u64> = [5, 7, 11].into_iter().filter(|&p| p > n).collect();
    let mut p = out.last().copied().unwrap_or(n) + 1;
    while out.len() < 2 {
        if is_prime(p) {
            out.push(p);
        }
        p += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FfSearch {
    pub prime: u64,
    /// Dimension over `F_p` of the span of the reduced generators.
    pub dim: usize,
    pub enumerated: u128,
    /// Every projective product vector in the subspace, in enumeration order.
    pub found: Vec<ProductVector<Fp>>,
}

/// Projective representatives of `F_p^d \ {0}`: first nonzero coordinate 1.
fn projective_points(d: usize, p: u64) -> Vec<Vec<Fp>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - 1 - lead;
        let count = p.pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![Fp::new(0, p); d];
            v[lead] = Fp::new(1, p);
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Fp::new((code % p) as i128, p);
                code /= p;
            }
            out.push(v);
        }
    }
    out
}

fn projective_count(d: usize, p: u64) -> u128 {
    (0..d).map(|j| (p as u128).pow(j as u32)).sum()
}

/// Exhaustive search for product vectors in the `F_p`-span of integer
/// generators. Requires `p > N`, the range where the Vandermonde counting
/// argument carries over to `F_p`.
pub fn ff_product_vectors(
    dims: &Dims,
    generators: &[StateVector<Rational>],
    p: u64,
    budget: u128,
) -> Result<FfSearch> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p as usize <= dims.n_max() {
        return Err(Error::PrimeTooSmall { p, n: dims.n_max() });
    }
    let required: u128 = dims
        .as_slice()
        .iter()
        .map(|&d| projective_count(d, p))
        .product();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let space = reduce_mod_p(dims, generators, p)?;
    let sites: Vec<Vec<Vec<Fp>>> = dims
        .as_slice()
        .iter()
        .map(|&d| projective_points(d, p))
        .collect();

    // Split on the first site; each chunk walks the remaining sites in
    // lexicographic order, so the concatenation is the sequential order.
    let found: Vec<ProductVector<Fp>> = sites[0]
        .par_iter()
        .map(|first| search_rest(dims, &space, &sites, first))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    Ok(FfSearch {
        prime: p,
        dim: space.dim(),
        enumerated: required,
        found,
    })
}

fn search_rest(
    dims: &Dims,
    space: &Subspace<Fp>,
    sites: &[Vec<Vec<Fp>>],
    first: &[Fp],
) -> Vec<ProductVector<Fp>> {
    let k = sites.len();
    let mut choice = vec![0usize; k];
    let mut out = Vec::new();
    loop {
        let mut factors = Vec::with_capacity(k);
        factors.push(first.to_vec());
        for r in 1..k {
            factors.push(sites[r][choice[r]].clone());
        }
        let pv = ProductVector::new(dims, factors).expect("projective factors are nonzero");
        if space.member(&pv.expand()).expect("same dims") {
            out.push(pv);
        }
        // odometer over sites 1..k, last site fastest
        let mut r = k - 1;
        loop {
            if r == 0 {
                return out;
            }
            choice[r] += 1;
            if choice[r] < sites[r].len() {
                break;
            }
            choice[r] = 0;
            r -= 1;
        }
    }
}

pub(crate) fn ff_report(
    dims: &Dims,
    generators: &[StateVector<Rational>],
    rational_dim: usize,
    p: u64,
    budget: u128,
) -> Result<VerificationReport> {
    let search = ff_product_vectors(dims, generators, p, budget)?;
    let verdict = if search.found.is_empty() {
        Verdict::NoProductVectorFound
    } else {
        Verdict::WitnessFound
    };
    Ok(VerificationReport {
        method: Method::FiniteField,
        parameters: Parameters::FiniteField { prime: p, budget },
        verdict,
        witnesses: search.found.into_iter().map(Witness::Exact).collect(),
        metrics: Metrics::FiniteField {
            enumerated: search.enumerated,
        },
        certified_dims: vec![(FieldTag::Rational, rational_dim), (FieldTag::Fp(p), search.dim)],
    })
}

/// Result of comparing the product vectors of `S⊥` over `F_p` with the
/// Vandermonde family `{z^λ : λ ∈ F_p ∪ {∞}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyReport {
    pub prime: u64,
    pub found: Vec<ProductVector<Fp>>,
    pub missing: Vec<VandermondePoint<Fp>>,
    pub extraneous: Vec<ProductVector<Fp>>,
}

impl ClassifyReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extraneous.is_empty()
    }
}

pub fn classify_sperp(dims: &Dims, p: u64, budget: u128) -> Result<ClassifyReport> {
    let search = ff_product_vectors(dims, &u_generators(dims, &()), p, budget)?;
    debug_assert_eq!(search.dim, s_perp::<Fp>(dims, &p).dim());
    let mut points: Vec<VandermondePoint<Fp>> =
        (0..p).map(|l| VandermondePoint::Finite(Fp::new(l as i128, p))).collect();
    points.push(VandermondePoint::Infinity);
    let expected: Vec<ProductVector<Fp>> = points
        .iter()
        .map(|pt| z_vector(dims, pt, &p).projective_normal_form())
        .collect();
    let missing = points
        .iter()
        .zip(&expected)
        .filter(|(_, z)| !search.found.contains(z))
        .map(|(pt, _)| pt.clone())
        .collect();
    let extraneous = search
        .found
        .iter()
        .filter(|v| !expected.contains(v))
        .cloned()
        .collect();
    Ok(ClassifyReport {
        prime: p,
        found: search.found,
        missing,
        extraneous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_point_counts() {
        for (d, p) in [(2, 5), (3, 5), (4, 7), (2, 3)] {
            let pts = projective_points(d, p);
            assert_eq!(pts.len() as u128, projective_count(d, p));
            assert_eq!(pts.len() as u64, (p.pow(d as u32) - 1) / (p - 1));
        }
    }

    #[test]
    fn default_prime_choice() {
        let primes = |d: &[usize]| default_primes(&Dims::new(d.to_vec()).unwrap());
        assert_eq!(primes(&[2, 3]), [5, 7, 11]);
        assert_eq!(primes(&[4, 4]), [7, 11]);
        assert_eq!(primes(&[5, 5]), [11, 13]);
        assert_eq!(primes(&[8, 8]), [17, 19]);
    }

    #[test]
    fn preconditions() {
        let d = Dims::new(vec![3, 3]).unwrap();
        assert_eq!(
            ff_product_vectors(&d, &[], 3, DEFAULT_BUDGET),
            Err(Error::PrimeTooSmall { p: 3, n: 4 })
        );
        assert_eq!(ff_product_vectors(&d, &[], 9, DEFAULT_BUDGET), Err(Error::NotPrime(9)));
        assert!(matches!(
            ff_product_vectors(&d, &[], 7, 100),
            Err(Error::BudgetExceeded { required: 3249, budget: 100 })
        ));
    }
}
