//! Deciding which maps between finite abelian groups are induced by
//! polyfracts, building a representing polyfract, and counting such maps.
//!
//! A map `f: A -> B` is transported along the primary decompositions of
//! both groups. It is polyfractal exactly when, for every prime `p`, the
//! `p`-part of the output depends only on the `p`-part of the input.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::calculus::{mixed_radix_index, mixed_radix_point, table_size, FiniteFn};
use crate::error::{Error, Result};
use crate::exactnum::{balanced, binom_row, factorize, reduce, valuation_u64};
use crate::groups::{merge_variables, primary_decompose_with, CrtMap, GroupSpec, PrimaryDecomposition};
use crate::lagrange::{interpolate_prime_power, lagrange_degree};
use crate::multi::MultiPolyfract;
use crate::uni::{RationalPolyUni, UniPolyfract};

/// A map given by its value table.
pub type MapTable = FiniteFn;

/// Two domain points with the same `prime`-block whose outputs differ in
/// the `prime`-component of the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub prime: u64,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub fx: Vec<BigInt>,
    pub fy: Vec<BigInt>,
}

/// A representing polyfract together with the coordinate changes that
/// relate it to the original map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    /// Variables: one per primary factor of the domain; codomain slots: one
    /// per primary factor of the codomain. Both ordered by prime, then by
    /// original factor.
    pub polyfract: MultiPolyfract,
    pub primes: Vec<u64>,
    pub domain: PrimaryDecomposition,
    pub codomain: PrimaryDecomposition,
    /// One Chinese remainder map per original domain factor.
    pub domain_crt: Vec<CrtMap>,
    /// One Chinese remainder map per original codomain factor.
    pub codomain_crt: Vec<CrtMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub polyfractal: bool,
    pub witness: Option<Representation>,
    pub counterexample: Option<Counterexample>,
}

/// Shared coordinate data for a map `A -> B`.
struct Layout {
    primes: Vec<u64>,
    dom: PrimaryDecomposition,
    cod: PrimaryDecomposition,
    dom_crt: Vec<CrtMap>,
    cod_crt: Vec<CrtMap>,
}

impl Layout {
    fn new(domain: &[u64], codomain: &[u64]) -> Result<Layout> {
        if domain.contains(&0) || codomain.contains(&0) {
            return Err(Error::InfiniteGroup);
        }
        let mut primes = GroupSpec::new(domain.to_vec()).primes();
        primes.extend(GroupSpec::new(codomain.to_vec()).primes());
        primes.sort_unstable();
        primes.dedup();
        let dom = primary_decompose_with(&GroupSpec::new(domain.to_vec()), &primes)?;
        let cod = primary_decompose_with(&GroupSpec::new(codomain.to_vec()), &primes)?;
        let dom_crt = domain.iter().map(|&q| CrtMap::with_primes(q, &primes)).collect::<Result<_>>()?;
        let cod_crt = codomain.iter().map(|&r| CrtMap::with_primes(r, &primes)).collect::<Result<_>>()?;
        Ok(Layout { primes, dom, cod, dom_crt, cod_crt })
    }

    fn prime_index(&self, p: u64) -> usize {
        self.primes.iter().position(|&q| q == p).expect("known prime")
    }

    /// `p`-block coordinates of a domain point.
    fn domain_block(&self, x: &[u64], k: usize) -> Vec<u64> {
        x.iter().zip(&self.dom_crt).map(|(&xj, m)| xj % m.factors()[k]).collect()
    }

    /// Domain point whose `p`-block is `block` and whose other blocks are 0.
    fn domain_point_from_block(&self, block: &[u64], k: usize) -> Vec<u64> {
        block
            .iter()
            .zip(&self.dom_crt)
            .map(|(&b, m)| {
                let mut parts = vec![BigInt::zero(); m.factors().len()];
                parts[k] = BigInt::from(b);
                u64::try_from(m.inverse_ints(&parts)).expect("fits")
            })
            .collect()
    }

    /// `p`-component of a codomain value.
    fn codomain_block(&self, v: &[BigInt], k: usize) -> Vec<BigInt> {
        v.iter().zip(&self.cod_crt).map(|(vi, m)| reduce(vi, m.factors()[k])).collect()
    }
}

/// Decides polyfractality; on failure returns the first violation, scanning
/// primes ascending and domain points in mixed-radix order.
pub fn is_polyfractal(f: &MapTable) -> Result<ClassificationResult> {
    let layout = Layout::new(f.domain(), f.codomain())?;
    let counterexample = find_violation(f, &layout);
    Ok(ClassificationResult { polyfractal: counterexample.is_none(), witness: None, counterexample })
}

fn find_violation(f: &MapTable, layout: &Layout) -> Option<Counterexample> {
    for (k, &p) in layout.primes.iter().enumerate() {
        for i in 0..f.len() {
            let x = mixed_radix_point(i, f.domain());
            let y = layout.domain_point_from_block(&layout.domain_block(&x, k), k);
            let fx = f.get(&x);
            let fy = f.get(&y);
            if layout.codomain_block(fx, k) != layout.codomain_block(fy, k) {
                return Some(Counterexample { prime: p, x, y, fx: fx.to_vec(), fy: fy.to_vec() });
            }
        }
    }
    None
}

/// Checks that a counterexample is genuine for `f`: the two points agree on
/// the `prime`-block and the `prime`-components of their images differ.
pub fn verify_counterexample(f: &MapTable, ce: &Counterexample) -> Result<bool> {
    let layout = Layout::new(f.domain(), f.codomain())?;
    if !layout.primes.contains(&ce.prime) {
        return Ok(false);
    }
    let k = layout.prime_index(ce.prime);
    let in_range = |x: &[u64]| x.len() == f.domain().len() && x.iter().zip(f.domain()).all(|(a, q)| a < q);
    if !in_range(&ce.x) || !in_range(&ce.y) {
        return Ok(false);
    }
    let same_block = layout.domain_block(&ce.x, k) == layout.domain_block(&ce.y, k);
    let fx = f.get(&ce.x);
    let fy = f.get(&ce.y);
    Ok(same_block
        && fx == ce.fx.as_slice()
        && fy == ce.fy.as_slice()
        && layout.codomain_block(fx, k) != layout.codomain_block(fy, k))
}

/// Decision plus, for polyfractal maps, a representation.
pub fn classify(f: &MapTable) -> Result<ClassificationResult> {
    let mut result = is_polyfractal(f)?;
    if result.polyfractal {
        result.witness = Some(represent(f)?);
    }
    Ok(result)
}

/// Builds a polyfract representing `f` blockwise, interpolating each
/// `p`-block map `A_p -> B_p`.
pub fn represent(f: &MapTable) -> Result<Representation> {
    let layout = Layout::new(f.domain(), f.codomain())?;
    if let Some(ce) = find_violation(f, &layout) {
        return Err(Error::NotPolyfractal(format!(
            "the {}-part of the value changes between {:?} and {:?}",
            ce.prime, ce.x, ce.y
        )));
    }
    let n_dom = f.domain().len();
    let n_cod = f.codomain().len();
    let nvars = layout.primes.len() * n_dom;
    let slots: Vec<u64> = layout.cod.factors.iter().map(|pf| pf.power).collect();
    let mut acc = MultiPolyfract::zero(slots.clone(), nvars);
    for k in 0..layout.primes.len() {
        let block_dom: Vec<u64> = layout.dom.factors[k * n_dom..(k + 1) * n_dom].iter().map(|pf| pf.power).collect();
        let block_cod: Vec<u64> = slots[k * n_cod..(k + 1) * n_cod].to_vec();
        let table = FiniteFn::from_fn(block_dom.clone(), block_cod.clone(), |y| {
            let x = layout.domain_point_from_block(y, k);
            layout.codomain_block(f.get(&x), k)
        })?;
        let block = interpolate_prime_power(&table)?;
        let var_map: Vec<usize> = (k * n_dom..(k + 1) * n_dom).collect();
        let slot_map: Vec<usize> = (k * n_cod..(k + 1) * n_cod).collect();
        acc = acc.add(&block.embed(nvars, &var_map, slots.clone(), &slot_map)?)?;
    }
    Ok(Representation {
        polyfract: acc,
        primes: layout.primes,
        domain: layout.dom,
        codomain: layout.cod,
        domain_crt: layout.dom_crt,
        codomain_crt: layout.cod_crt,
    })
}

impl Representation {
    /// The value at a point of the original domain, pulled back to the
    /// original codomain.
    pub fn evaluate(&self, x: &[u64]) -> Result<Vec<BigInt>> {
        let n_dom = self.domain_crt.len();
        if x.len() != n_dom {
            return Err(Error::ArityMismatch { expected: n_dom, found: x.len() });
        }
        let split: Vec<BigInt> = (0..self.primes.len())
            .flat_map(|k| x.iter().zip(&self.domain_crt).map(move |(&xj, m)| BigInt::from(xj % m.factors()[k])))
            .collect();
        let v = self.polyfract.eval(&split)?;
        let n_cod = self.codomain_crt.len();
        Ok((0..n_cod)
            .map(|i| {
                let parts: Vec<BigInt> = (0..self.primes.len()).map(|k| v[k * n_cod + i].value().clone()).collect();
                self.codomain_crt[i].inverse_ints(&parts)
            })
            .collect())
    }

    /// Whether every point of the domain evaluates to `f`.
    pub fn reproduces(&self, f: &MapTable) -> Result<bool> {
        for i in 0..f.len() {
            let x = mixed_radix_point(i, f.domain());
            if self.evaluate(&x)? != f.values()[i] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No monomial mixes variables of two primes, and variables of the
    /// `p`-block only carry coefficients in `p`-slots.
    pub fn is_block_pure(&self) -> bool {
        let n_dom = self.domain_crt.len();
        let n_cod = self.codomain_crt.len();
        self.polyfract.terms().iter().all(|(e, c)| {
            let blocks: HashSet<usize> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, _)| j / n_dom).collect();
            match blocks.len() {
                0 => true,
                1 => {
                    let k = *blocks.iter().next().expect("one block");
                    c.iter().enumerate().all(|(s, v)| v.is_zero() || s / n_cod == k)
                }
                _ => false,
            }
        })
    }
}

/// A polyfract over `Z_r` in one variable inducing a map `Z_q -> Z_r`, and a
/// rational polynomial with the same values.
///
/// The rational polynomial is built from the representatives of least
/// absolute value; any other lift induces the same map.
pub fn represent_univariate(f: &MapTable) -> Result<(UniPolyfract, RationalPolyUni)> {
    let ([_q], [r]) = (f.domain(), f.codomain()) else {
        return Err(Error::NotCyclic);
    };
    let r = *r;
    let rep = represent(f)?;
    let merged = merge_variables(&rep.polyfract)?;
    let crt = &rep.codomain_crt[0];
    let deg = merged.degrees().1[0].unwrap_or(0);
    let coeffs: Vec<BigInt> = (0..=deg)
        .map(|d| {
            let parts: Vec<BigInt> = merged.coeff(&[d]).into_iter().map(|c| c.value().clone()).collect();
            crt.inverse_ints(&parts)
        })
        .collect();
    let p = UniPolyfract::new(r, coeffs);
    let rational = p.to_rational();
    Ok((p, rational))
}

/// Number of polyfractal maps `A -> B`: the product over primes of
/// `|B_p|^{|A_p|}`.
pub fn count_polyfractal(a: &GroupSpec, b: &GroupSpec) -> Result<BigInt> {
    let layout = Layout::new(a.moduli(), b.moduli())?;
    let mut total = BigInt::one();
    for &p in &layout.primes {
        let ap = layout.dom.block_order(p);
        let bp = layout.cod.block_order(p);
        let e =
            usize::try_from(ap).map_err(|_| Error::TooLarge { size: "exponent".into(), limit: usize::MAX as u64 })?;
        total *= num_traits::pow(bp, e);
    }
    Ok(total)
}

/// Largest degree needed for a polyfract `Z -> Z_r` inducing a polyfractal
/// map `Z_q -> Z_r`: the maximum over `p | r` of the Lagrange degree.
pub fn univariate_search_degree(q: u64, r: u64) -> usize {
    factorize(r).into_iter().map(|(p, beta)| lagrange_degree(p, valuation_u64(q, p), beta)).max().unwrap_or(0)
}

/// All maps `Z_q -> Z_r` induced by some `q`-periodic polyfract of degree at
/// most [`univariate_search_degree`], found by enumerating every coefficient
/// sequence. Maps are value vectors `f(0..q)`.
pub fn polyfractal_maps_brute_force(q: u64, r: u64, max_search: u64) -> Result<HashSet<Vec<u64>>> {
    if q == 0 || r == 0 {
        return Err(Error::InfiniteGroup);
    }
    let d = univariate_search_degree(q, r);
    let space = BigInt::from(r).pow(d as u32 + 1);
    if space > BigInt::from(max_search) {
        return Err(Error::TooLarge { size: space.to_string(), limit: max_search });
    }
    // binomials mod r on the window 0..q+d
    let window = q as usize + d + 1;
    let table: Vec<Vec<u64>> = (0..window)
        .map(|x| binom_row(&BigInt::from(x), d).iter().map(|b| u64::try_from(reduce(b, r)).expect("small")).collect())
        .collect();
    let mut found = HashSet::new();
    let mut coeffs = vec![0u64; d + 1];
    let mut values = vec![0u64; window];
    loop {
        for (x, row) in table.iter().enumerate() {
            values[x] = row.iter().zip(&coeffs).fold(0u64, |acc, (b, c)| (acc + b * c) % r);
        }
        // q-periodic iff Δ_q P vanishes on 0..=d
        if (0..=d).all(|x| values[x] == values[x + q as usize]) {
            found.insert(values[..q as usize].to_vec());
        }
        if !advance(&mut coeffs, r) {
            break;
        }
    }
    Ok(found)
}

fn advance(digits: &mut [u64], base: u64) -> bool {
    for v in digits.iter_mut() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

/// Exhaustive-search oracle: is `f: Z_q -> Z_r` induced by some periodic
/// polyfract within the degree bound?
pub fn brute_force_polyfractal(f: &MapTable, max_search: u64) -> Result<bool> {
    let ([q], [r]) = (f.domain(), f.codomain()) else {
        return Err(Error::NotCyclic);
    };
    let target: Vec<u64> = f.values().iter().map(|v| u64::try_from(&v[0]).expect("canonical")).collect();
    Ok(polyfractal_maps_brute_force(*q, *r, max_search)?.contains(&target))
}

/// Every map `A -> B` in mixed-radix order of its value table; each value
/// is a mixed-radix code of a codomain tuple. Fails beyond `limit` maps.
pub fn all_maps(domain: &[u64], codomain: &[u64], limit: u64) -> Result<Vec<MapTable>> {
    let a = table_size(domain)?;
    let b = table_size(codomain)?;
    let total = BigInt::from(b).pow(a as u32);
    if total > BigInt::from(limit) {
        return Err(Error::TooLarge { size: total.to_string(), limit });
    }
    let mut out = Vec::new();
    let mut digits = vec![0u64; a];
    loop {
        let values = digits
            .iter()
            .map(|&c| mixed_radix_point(c as usize, codomain).into_iter().map(BigInt::from).collect())
            .collect();
        out.push(FiniteFn::new(domain.to_vec(), codomain.to_vec(), values)?);
        if !advance(&mut digits, b as u64) {
            break;
        }
    }
    Ok(out)
}

/// Mixed-radix code of a codomain tuple.
pub fn encode_value(v: &[BigInt], codomain: &[u64]) -> u64 {
    let digits: Vec<u64> = v.iter().map(|x| u64::try_from(x).expect("canonical")).collect();
    mixed_radix_index(&digits, codomain) as u64
}

/// Rational polynomial with the least nonnegative lift instead of the
/// balanced one; induces the same map.
pub fn least_nonnegative_rational(p: &UniPolyfract) -> RationalPolyUni {
    p.lift_rational(crate::uni::Lift::LeastNonnegative)
}

/// Balanced representatives of a coefficient list, as used for display.
pub fn balanced_coeffs(p: &UniPolyfract) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| balanced(c, p.modulus())).collect()
}
