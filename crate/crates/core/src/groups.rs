//! Finite abelian groups given as products of cyclic groups, their primary
//! decomposition, Chinese remainder isomorphisms, and the variable
//! splitting and wavelength results for periodic polyfracts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::calculus::hrycaj_periodicity;
use crate::error::{Error, Result};
use crate::exactnum::{ext_gcd, factorize, gcd_u64, pow_u64, valuation_u64, Residue};
use crate::multi::MultiPolyfract;
use crate::uni::UniPolyfract;

/// `Z_{q_1} x ... x Z_{q_n}`. A modulus 0 denotes `Z` and is rejected by
/// operations that need a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Self {
        GroupSpec { moduli }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn is_finite(&self) -> bool {
        !self.moduli.contains(&0)
    }

    /// Group order, or [`Error::InfiniteGroup`].
    pub fn order(&self) -> Result<BigInt> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.moduli.iter().map(|&q| BigInt::from(q)).product())
    }

    /// Primes dividing some modulus, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> =
            self.moduli.iter().filter(|&&q| q > 1).flat_map(|&q| factorize(q).into_iter().map(|(p, _)| p)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

/// One cyclic factor `Z_{p^e}` of the primary decomposition; `e` may be 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryFactor {
    pub prime: u64,
    pub exponent: u32,
    pub power: u64,
    /// Index of the original cyclic factor it came from.
    pub source: usize,
    /// `q_source / power`.
    pub cofactor: u64,
}

/// Cyclic factors grouped by prime (ascending), each group in source order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryDecomposition {
    pub primes: Vec<u64>,
    pub factors: Vec<PrimaryFactor>,
}

impl PrimaryDecomposition {
    /// Factors belonging to `p`.
    pub fn block(&self, p: u64) -> impl Iterator<Item = &PrimaryFactor> {
        self.factors.iter().filter(move |f| f.prime == p)
    }

    /// Moduli of the `p`-block.
    pub fn block_moduli(&self, p: u64) -> Vec<u64> {
        self.block(p).map(|f| f.power).collect()
    }

    /// Order of the `p`-primary component.
    pub fn block_order(&self, p: u64) -> BigInt {
        self.block(p).map(|f| BigInt::from(f.power)).product()
    }
}

/// Primary decomposition over the primes of `g` itself.
pub fn primary_decompose(g: &GroupSpec) -> Result<PrimaryDecomposition> {
    primary_decompose_with(g, &g.primes())
}

/// Primary decomposition with one (possibly trivial) factor per original
/// modulus and per prime of `primes`, which must contain every prime of `g`.
pub fn primary_decompose_with(g: &GroupSpec, primes: &[u64]) -> Result<PrimaryDecomposition> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(p) = g.primes().into_iter().find(|p| !primes.contains(p)) {
        return Err(Error::PreconditionFailed(format!("prime {p} missing from the prime list")));
    }
    let mut factors = Vec::new();
    for &p in &primes {
        for (source, &q) in g.moduli.iter().enumerate() {
            let exponent = valuation_u64(q, p);
            let power = pow_u64(p, exponent);
            factors.push(PrimaryFactor { prime: p, exponent, power, source, cofactor: q / power });
        }
    }
    Ok(PrimaryDecomposition { primes, factors })
}

/// Chinese remainder isomorphism `Z_r -> Z_{r_1} x ... x Z_{r_t}` for
/// pairwise coprime prime powers `r_i`, with Bezout multipliers `s_i`
/// satisfying `sum s_i (r / r_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrtMap {
    modulus: u64,
    primes: Vec<u64>,
    factors: Vec<u64>,
    multipliers: Vec<BigInt>,
}

impl CrtMap {
    /// Splits `r` along its own prime factors.
    pub fn new(r: u64) -> Result<Self> {
        let primes: Vec<u64> = factorize(r).into_iter().map(|(p, _)| p).collect();
        CrtMap::with_primes(r, &primes)
    }

    /// Splits `r` along `primes`, giving a factor `Z_1` to each listed prime
    /// not dividing `r`.
    pub fn with_primes(r: u64, primes: &[u64]) -> Result<Self> {
        if r == 0 {
            return Err(Error::InfiniteGroup);
        }
        let missing = factorize(r).into_iter().find(|(p, _)| !primes.contains(p));
        if let Some((p, _)) = missing {
            return Err(Error::PreconditionFailed(format!("prime {p} of {r} missing from the prime list")));
        }
        let factors: Vec<u64> = primes.iter().map(|&p| pow_u64(p, valuation_u64(r, p))).collect();
        let mut multipliers: Vec<BigInt> = Vec::with_capacity(factors.len());
        let mut g = BigInt::zero();
        for &ri in &factors {
            let m = BigInt::from(r / ri);
            if multipliers.is_empty() {
                g = m;
                multipliers.push(BigInt::one());
                continue;
            }
            let (ng, u, v) = ext_gcd(&g, &m);
            for s in multipliers.iter_mut() {
                *s *= &u;
            }
            multipliers.push(v);
            g = ng;
        }
        if factors.is_empty() {
            g = BigInt::one();
        }
        debug_assert!(g.is_one());
        Ok(CrtMap { modulus: r, primes: primes.to_vec(), factors, multipliers })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn multipliers(&self) -> &[BigInt] {
        &self.multipliers
    }

    pub fn forward(&self, x: &Residue) -> Result<Vec<Residue>> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, x.modulus()));
        }
        Ok(self.factors.iter().map(|&ri| Residue::new(x.value().clone(), ri)).collect())
    }

    /// `x_1 s_1 (r / r_1) + ... + x_t s_t (r / r_t)` mod `r`.
    pub fn inverse(&self, parts: &[Residue]) -> Result<Residue> {
        if parts.len() != self.factors.len() {
            return Err(Error::ArityMismatch { expected: self.factors.len(), found: parts.len() });
        }
        let mut acc = BigInt::zero();
        for ((x, &ri), s) in parts.iter().zip(&self.factors).zip(&self.multipliers) {
            if x.modulus() != ri {
                return Err(Error::ModulusMismatch(ri, x.modulus()));
            }
            acc += x.value() * s * BigInt::from(self.modulus / ri);
        }
        Ok(Residue::new(acc, self.modulus))
    }

    /// [`CrtMap::inverse`] on raw integer representatives.
    pub fn inverse_ints(&self, parts: &[BigInt]) -> BigInt {
        let acc: BigInt = parts
            .iter()
            .zip(&self.factors)
            .zip(&self.multipliers)
            .map(|((x, &ri), s)| x * s * BigInt::from(self.modulus / ri))
            .sum();
        crate::exactnum::reduce(&acc, self.modulus)
    }
}

fn uni_slot(p: &MultiPolyfract, i: usize) -> Result<UniPolyfract> {
    p.slot(i).to_uni()
}

/// Splits a one-variable polyfract into `Z_{r_1} x Z_{r_2}` into a
/// two-variable one, slot 1 in `X_1` and slot 2 in `X_2`.
///
/// Requires `gcd(q_1, r_2) = gcd(q_2, r_1) = 1` and `q_1 q_2`-periodicity of
/// every slot.
pub fn split_variable(p: &MultiPolyfract, q1: u64, q2: u64) -> Result<MultiPolyfract> {
    if p.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: p.nvars() });
    }
    let [r1, r2] = p.codomain()[..] else {
        return Err(Error::ArityMismatch { expected: 2, found: p.codomain().len() });
    };
    if q1 == 0 || q2 == 0 {
        return Err(Error::InfiniteGroup);
    }
    if gcd_u64(q1, r2) != 1 {
        return Err(Error::CoprimalityViolation(format!("gcd({q1}, {r2}) != 1")));
    }
    if gcd_u64(q2, r1) != 1 {
        return Err(Error::CoprimalityViolation(format!("gcd({q2}, {r1}) != 1")));
    }
    let period = q1 * q2;
    for i in 0..2 {
        if !hrycaj_periodicity(&uni_slot(p, i)?, period) {
            return Err(Error::NotPeriodic { period });
        }
    }
    let terms = p.terms().iter().flat_map(|(e, c)| {
        let d = e[0];
        [(vec![d, 0], vec![c[0].clone(), BigInt::zero()]), (vec![0, d], vec![BigInt::zero(), c[1].clone()])]
    });
    MultiPolyfract::new(p.codomain().to_vec(), 2, terms)
}

/// Substitutes one variable `X` for all variables.
pub fn merge_variables(p: &MultiPolyfract) -> Result<MultiPolyfract> {
    p.substitute_variables(&vec![0; p.nvars()], 1)
}

/// Strips from `period` every prime factor coprime to `r` and returns the
/// remaining divisor `q`, after checking that `P` is `q`-periodic.
pub fn wavelength_reduce(p: &UniPolyfract, period: u64) -> Result<u64> {
    let r = p.modulus();
    if r == 0 {
        return Err(Error::InfiniteGroup);
    }
    if period == 0 {
        return Err(Error::PreconditionFailed("period must be at least 1".into()));
    }
    if !hrycaj_periodicity(p, period) {
        return Err(Error::NotPeriodic { period });
    }
    let q: u64 =
        factorize(period).into_iter().filter(|&(pr, _)| r.is_multiple_of(pr)).map(|(pr, e)| pow_u64(pr, e)).product();
    if !hrycaj_periodicity(p, q) {
        return Err(Error::NotPeriodic { period: q });
    }
    Ok(q)
}
