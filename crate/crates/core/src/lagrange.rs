//! Co-monofracts, Lagrange polyfracts and interpolation of maps between
//! cyclic p-groups.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::calculus::{mixed_radix_point, FiniteFn};
use crate::error::{Error, Result};
use crate::exactnum::{binom_row, is_prime, pow_u64, prime_power, reduce, Residue};
use crate::multi::MultiPolyfract;
use crate::uni::UniPolyfract;

/// Co-monofract `(d choose x)_{q,r}`: the signed sum of `(-1)^x̂ C(d, x̂)` over
/// `0 <= x̂ <= d` with `x̂ ≡ x (mod q)`, reduced mod `r`.
///
/// ```
/// use polyfract::lagrange::cofract;
/// assert_eq!(cofract(4, 3, 0, 1).value(), &(-3).into());
/// ```
pub fn cofract(d: usize, q: u64, r: u64, x: i64) -> Residue {
    Residue::new(cofract_int(d, q, x), r)
}

/// Unreduced integer value of [`cofract`].
pub fn cofract_int(d: usize, q: u64, x: i64) -> BigInt {
    assert!(q >= 1, "cofract needs q >= 1");
    let row = binom_row(&BigInt::from(d), d);
    let start = x.rem_euclid(q as i64) as usize;
    (start..=d).step_by(q as usize).map(|k| if k % 2 == 0 { row[k].clone() } else { -row[k].clone() }).sum()
}

/// Degree of the Lagrange polyfract of a point of `Z_{p^α}` into `Z_{p^β}`:
/// `p^α - 1 + (β - 1)(p - 1) p^{α-1}`. Zero for `α = 0`.
pub fn lagrange_degree(p: u64, alpha: u32, beta: u32) -> usize {
    if alpha == 0 || beta == 0 {
        return 0;
    }
    let pa1 = pow_u64(p, alpha - 1);
    (pa1 * p - 1 + (beta as u64 - 1) * (p - 1) * pa1) as usize
}

/// First index from which `(δ choose x)_{p^α}` is divisible by `p^β`:
/// `(β(p - 1) + 1) p^{α-1}`.
pub fn vanishing_threshold(p: u64, alpha: u32, beta: u32) -> usize {
    ((beta as u64 * (p - 1) + 1) * pow_u64(p, alpha - 1)) as usize
}

fn check_params(p: u64, alpha: u32, beta: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha == 0 || beta == 0 {
        return Err(Error::PreconditionFailed("exponents must be at least 1".into()));
    }
    Ok(())
}

/// Polyfract mod `p^β` inducing the `p^α`-periodic indicator of `x0`.
pub fn lagrange_polyfract(p: u64, alpha: u32, beta: u32, x0: i64) -> Result<UniPolyfract> {
    check_params(p, alpha, beta)?;
    let q = pow_u64(p, alpha);
    let r = pow_u64(p, beta);
    let d = lagrange_degree(p, alpha, beta);
    let coeffs = (0..=d).map(|delta| cofract_int(delta, q, delta as i64 - x0)).collect();
    Ok(UniPolyfract::new(r, coeffs))
}

/// Upper bound on the total degree of a polyfract inducing a map
/// `Z_{p^{α_1}} x ... x Z_{p^{α_n}} -> Z_{p^β}`.
pub fn degree_bound(p: u64, beta: u32, alphas: &[u32]) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if beta == 0 || alphas.contains(&0) {
        return Err(Error::PreconditionFailed("exponents must be at least 1".into()));
    }
    let sum: u64 = alphas.iter().map(|&a| pow_u64(p, a)).sum();
    let tail = match alphas.iter().max() {
        Some(&amax) => (beta as u64 - 1) * (p - 1) * pow_u64(p, amax - 1),
        None => 0,
    };
    Ok((sum - alphas.len() as u64 + tail) as usize)
}

/// The common prime of a list of moduli, ignoring ones; `Ok(None)` if all are 1.
fn common_prime(moduli: &[u64]) -> std::result::Result<Option<u64>, ()> {
    let mut prime = None;
    for &m in moduli.iter().filter(|&&m| m != 1) {
        let (p, _) = prime_power(m).ok_or(())?;
        match prime {
            None => prime = Some(p),
            Some(q) if q != p => return Err(()),
            _ => {}
        }
    }
    Ok(prime)
}

/// Exponent `e` with `m = p^e`.
fn exponent_of(m: u64, p: u64) -> u32 {
    crate::exactnum::valuation_u64(m, p)
}

/// Interpolates a map between products of cyclic `p`-groups by the explicit
/// co-monofract sum. Codomain slots may have different powers of `p`
/// (or be trivial). Modulus-1 domain factors contribute no variable degree.
pub fn interpolate_prime_power(f: &FiniteFn) -> Result<MultiPolyfract> {
    let domain = f.domain();
    let codomain = f.codomain();
    if codomain.contains(&0) {
        return Err(Error::InfiniteGroup);
    }
    let dp = common_prime(domain).map_err(|_| Error::MixedPrimes)?;
    let cp =
        common_prime(codomain).map_err(|_| Error::BadCodomain("codomain moduli are not powers of one prime".into()))?;
    let p = match (dp, cp) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::BadCodomain(format!("codomain is not a power of {a}")));
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => 2,
    };
    let n = domain.len();
    let beta_max = codomain.iter().map(|&r| exponent_of(r, p)).max().unwrap_or(0);
    let alphas: Vec<u32> = domain.iter().map(|&q| exponent_of(q, p)).collect();
    let bounds: Vec<usize> = alphas.iter().map(|&a| lagrange_degree(p, a, beta_max)).collect();
    // weights[j][δ][x] = (δ choose δ - x)_{q_j}
    let weights: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|j| {
            (0..=bounds[j])
                .map(|delta| (0..domain[j]).map(|x| cofract_int(delta, domain[j], delta as i64 - x as i64)).collect())
                .collect()
        })
        .collect();
    let mut terms = Vec::new();
    for (slot, &r) in codomain.iter().enumerate() {
        if r == 1 {
            continue;
        }
        let mut data: Vec<BigInt> = f.values().iter().map(|v| v[slot].clone()).collect();
        let mut shape: Vec<usize> = domain.iter().map(|&q| q as usize).collect();
        for j in 0..n {
            data = transform_axis(&data, &shape, j, &weights[j]);
            shape[j] = bounds[j] + 1;
        }
        let width = codomain.len();
        for (i, v) in data.into_iter().enumerate() {
            let v = reduce(&v, r);
            if v.is_zero() {
                continue;
            }
            let shape64: Vec<u64> = shape.iter().map(|&s| s as u64).collect();
            let e = mixed_radix_point(i, &shape64).into_iter().map(|k| k as usize).collect();
            let mut c = vec![BigInt::zero(); width];
            c[slot] = v;
            terms.push((e, c));
        }
    }
    MultiPolyfract::new(codomain.to_vec(), n, terms)
}

/// Applies `matrix` (rows indexed by the new coordinate) along `axis` of a
/// dense tensor stored in mixed radix with the first axis most significant.
fn transform_axis(data: &[BigInt], shape: &[usize], axis: usize, matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let outer: usize = shape[..axis].iter().product();
    let inner: usize = shape[axis + 1..].iter().product();
    let old = shape[axis];
    let new = matrix.len();
    let mut out = vec![BigInt::zero(); outer * new * inner];
    for o in 0..outer {
        for (k, row) in matrix.iter().enumerate() {
            for i in 0..inner {
                let mut acc = BigInt::zero();
                for (x, w) in row.iter().enumerate().take(old) {
                    if !w.is_zero() {
                        acc += w * &data[(o * old + x) * inner + i];
                    }
                }
                out[(o * new + k) * inner + i] = acc;
            }
        }
    }
    out
}

/// Product of univariate Lagrange polyfracts in separate variables, formed
/// with polyfract multiplication: the indicator of the point `x0` of
/// `Z_{p^{α_1}} x ... x Z_{p^{α_n}}` into `Z_{p^β}`.
pub fn lagrange_multi(p: u64, alphas: &[u32], beta: u32, x0: &[i64]) -> Result<MultiPolyfract> {
    if alphas.len() != x0.len() {
        return Err(Error::ArityMismatch { expected: alphas.len(), found: x0.len() });
    }
    let n = alphas.len();
    let r = pow_u64(p, beta);
    let mut acc = MultiPolyfract::constant(vec![r], n, vec![BigInt::one()])?;
    for (j, (&a, &x)) in alphas.iter().zip(x0).enumerate() {
        let l = MultiPolyfract::from_uni(&lagrange_polyfract(p, a, beta, x)?);
        acc = acc.mul(&l.embed(n, &[j], vec![r], &[0])?)?;
    }
    Ok(acc)
}

/// Interpolation as `sum_x f(x) L_x`, with `L_x` from [`lagrange_multi`].
/// Single-slot codomain `Z_{p^β}` with `β >= 1` and all domain moduli
/// nontrivial powers of `p`.
pub fn interpolate_by_lagrange_sum(f: &FiniteFn) -> Result<MultiPolyfract> {
    let [r] = f.codomain()[..] else {
        return Err(Error::BadCodomain("expected a single codomain factor".into()));
    };
    let (p, beta) = prime_power(r).ok_or(Error::BadCodomain(format!("{r} is not a prime power")))?;
    let mut alphas = Vec::new();
    for &q in f.domain() {
        match prime_power(q) {
            Some((pq, a)) if pq == p => alphas.push(a),
            _ => return Err(Error::MixedPrimes),
        }
    }
    let n = alphas.len();
    let mut acc = MultiPolyfract::zero(vec![r], n);
    for i in 0..f.len() {
        let c = &f.values()[i][0];
        if c.is_zero() {
            continue;
        }
        let x: Vec<i64> = mixed_radix_point(i, f.domain()).into_iter().map(|v| v as i64).collect();
        let l = lagrange_multi(p, &alphas, beta, &x)?;
        let scaled = MultiPolyfract::new(vec![r], n, l.terms().iter().map(|(e, v)| (e.clone(), vec![&v[0] * c])))?;
        acc = acc.add(&scaled)?;
    }
    Ok(acc)
}

/// Extends information coefficients `P_0..P_{p^α-1}` in `Z_{p^β}` to the
/// unique `p^α`-periodic polyfract that starts with them.
pub fn extend_information_coeffs(info: &[Residue], p: u64, alpha: u32, beta: u32) -> Result<UniPolyfract> {
    check_params(p, alpha, beta)?;
    let q = pow_u64(p, alpha);
    let r = pow_u64(p, beta);
    if info.len() != q as usize {
        return Err(Error::LengthMismatch { expected: q as usize, found: info.len() });
    }
    if let Some(bad) = info.iter().find(|c| c.modulus() != r) {
        return Err(Error::ModulusMismatch(r, bad.modulus()));
    }
    let truncated = UniPolyfract::from_residues(r, info)?;
    let values: Vec<Vec<BigInt>> = (0..q as i64).map(|x| vec![truncated.eval_i64(x).value().clone()]).collect();
    let table = FiniteFn::new(vec![q], vec![r], values)?;
    interpolate_prime_power(&table)?.to_uni()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{taylor_expand, FiniteFn};
    use proptest::prelude::*;

    fn res(v: &[i64], r: u64) -> Vec<Residue> {
        v.iter().map(|&x| Residue::new(x, r)).collect()
    }

    #[test]
    fn cofract_examples() {
        assert_eq!(cofract(0, 3, 9, 0), Residue::new(1, 9));
        assert!(cofract(0, 3, 9, 1).is_zero());
        assert!(cofract(0, 3, 9, 2).is_zero());
        assert_eq!(cofract(4, 3, 0, 1), Residue::new(-3, 0));
        assert_eq!(cofract(2, 2, 0, 0), Residue::new(2, 0));
    }

    #[test]
    fn lagrange_examples() {
        let l = lagrange_polyfract(3, 1, 2, 0).unwrap();
        assert_eq!(l, UniPolyfract::from_i64(9, &[1, -1, 1, 0, -3]));
        assert_eq!(l.degree(), Some(4));
        assert_eq!(lagrange_polyfract(2, 1, 1, 0).unwrap(), UniPolyfract::from_i64(2, &[1, -1]));
        let l = lagrange_polyfract(2, 1, 1, 1).unwrap();
        assert_eq!(l, UniPolyfract::from_i64(2, &[0, 1]));
        assert_eq!(l.eval_i64(0), Residue::new(0, 2));
        assert_eq!(l.eval_i64(1), Residue::new(1, 2));
        assert_eq!(lagrange_polyfract(4, 1, 1, 0), Err(Error::NotPrime(4)));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(3, 2, &[1]), Ok(4));
        assert_eq!(degree_bound(2, 2, &[1, 1]), Ok(3));
        for p in [2, 3, 5] {
            for a in 1..3 {
                assert_eq!(degree_bound(p, 1, &[a]), Ok(pow_u64(p, a) as usize - 1));
            }
        }
        assert_eq!(degree_bound(6, 1, &[1]), Err(Error::NotPrime(6)));
    }

    #[test]
    fn interpolation_examples() {
        for a in 0..4i64 {
            for b in 0..4i64 {
                let g = FiniteFn::from_i64(vec![2], 4, &[b, b - a]).unwrap();
                let p = interpolate_prime_power(&g).unwrap().to_uni().unwrap();
                assert_eq!(p, UniPolyfract::from_i64(4, &[b, -a, 2 * a]));
            }
        }
        let c = FiniteFn::from_i64(vec![9], 27, &[5; 9]).unwrap();
        assert_eq!(interpolate_prime_power(&c).unwrap().to_uni().unwrap(), UniPolyfract::constant(5, 27));
        let ind = FiniteFn::from_i64(vec![2, 2], 2, &[1, 0, 0, 0]).unwrap();
        let p = interpolate_prime_power(&ind).unwrap();
        let one = |v| MultiPolyfract::new(vec![2], 2, [(v, vec![BigInt::one()])]).unwrap();
        let l1 = one(vec![0, 0]).sub(&one(vec![1, 0])).unwrap();
        let l2 = one(vec![0, 0]).sub(&one(vec![0, 1])).unwrap();
        assert_eq!(p, l1.mul(&l2).unwrap());
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn interpolation_errors() {
        let f = FiniteFn::from_i64(vec![2, 3], 4, &[0; 6]).unwrap();
        assert_eq!(interpolate_prime_power(&f), Err(Error::MixedPrimes));
        let f = FiniteFn::from_i64(vec![2], 9, &[0; 2]).unwrap();
        assert!(matches!(interpolate_prime_power(&f), Err(Error::BadCodomain(_))));
        let f = FiniteFn::from_i64(vec![2], 6, &[0; 2]).unwrap();
        assert!(matches!(interpolate_prime_power(&f), Err(Error::BadCodomain(_))));
    }

    #[test]
    fn information_coefficients() {
        for a in 0..4 {
            for b in 0..4 {
                let p = extend_information_coeffs(&res(&[b, -a], 4), 2, 1, 2).unwrap();
                assert_eq!(p, UniPolyfract::from_i64(4, &[b, -a, 2 * a]));
            }
        }
        assert!(extend_information_coeffs(&res(&[0, 0, 0], 9), 3, 1, 2).unwrap().is_zero());
        let p = extend_information_coeffs(&res(&[1, -1, 1], 9), 3, 1, 2).unwrap();
        assert_eq!(p, UniPolyfract::from_i64(9, &[1, -1, 1, 0, -3]));
        assert_eq!(
            extend_information_coeffs(&res(&[1], 9), 3, 1, 2),
            Err(Error::LengthMismatch { expected: 3, found: 1 })
        );
    }

    #[test]
    fn lagrange_indicator_and_leading_coefficient() {
        for (p, alpha, beta) in [(2u64, 1u32, 1u32), (2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2)] {
            let q = pow_u64(p, alpha) as i64;
            let r = pow_u64(p, beta);
            let d = lagrange_degree(p, alpha, beta);
            for x0 in 0..q {
                let l = lagrange_polyfract(p, alpha, beta, x0).unwrap();
                for x in 0..2 * q {
                    let want = if x % q == x0 { 1 } else { 0 };
                    assert_eq!(l.eval_i64(x), Residue::new(want, r));
                }
                let lead = cofract_int(d, q as u64, d as i64 - x0);
                assert!(!reduce(&lead, r).is_zero());
                let pb1 = num_traits::pow(BigInt::from(p), beta as usize - 1);
                assert!((&lead % &pb1).is_zero());
            }
        }
    }

    #[test]
    fn vanishing_tail() {
        for p in [2u64, 3, 5] {
            for alpha in 1..3 {
                for beta in 1..4 {
                    let q = pow_u64(p, alpha);
                    let t = vanishing_threshold(p, alpha, beta);
                    assert_eq!(t, lagrange_degree(p, alpha, beta) + 1);
                    for delta in t..2 * t {
                        for x in 0..q as i64 {
                            assert!(cofract(delta, q, pow_u64(p, beta), x).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_of_lagrange_coefficients() {
        for (p, alpha) in [(2u64, 1u32), (2, 2), (3, 1)] {
            for big in 2..=3u32 {
                for small in 1..big {
                    for x0 in 0..pow_u64(p, alpha) as i64 {
                        let hi = lagrange_polyfract(p, alpha, big, x0).unwrap();
                        let lo = lagrange_polyfract(p, alpha, small, x0).unwrap();
                        assert_eq!(hi.project(pow_u64(p, small)).unwrap(), lo);
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_sum_matches_lagrange_sum() {
        for (domain, r) in [(vec![2u64, 2], 4u64), (vec![4], 2), (vec![3], 9), (vec![2, 4], 2)] {
            let size: u64 = domain.iter().product();
            for seed in 0..20u64 {
                let values: Vec<i64> = (0..size).map(|i| ((i * 7 + seed * 13 + i * i * seed) % r) as i64).collect();
                let f = FiniteFn::from_i64(domain.clone(), r, &values).unwrap();
                assert_eq!(interpolate_prime_power(&f).unwrap(), interpolate_by_lagrange_sum(&f).unwrap());
            }
        }
    }

    #[test]
    fn taylor_agrees_with_interpolation() {
        for code in 0..81i64 {
            let v: Vec<i64> = (0..3).map(|i| (code / 9i64.pow(i)) % 9).collect();
            let f = FiniteFn::from_i64(vec![3], 9, &v[..3]).unwrap();
            let a = interpolate_prime_power(&f).unwrap().to_uni().unwrap();
            assert_eq!(taylor_expand(&f, lagrange_degree(3, 1, 2)).unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn interpolation_reproduces_map(
            (alphas, beta, values) in (prop::collection::vec(0u32..3, 1..3), 1u32..4)
                .prop_flat_map(|(alphas, beta)| {
                    let size: u64 = alphas.iter().map(|&a| 2u64.pow(a)).product();
                    (Just(alphas), Just(beta), prop::collection::vec(0i64..64, size as usize))
                })
        ) {
            let domain: Vec<u64> = alphas.iter().map(|&a| 2u64.pow(a)).collect();
            let r = 2u64.pow(beta);
            let f = FiniteFn::from_i64(domain.clone(), r, &values).unwrap();
            let p = interpolate_prime_power(&f).unwrap();
            let back = FiniteFn::from_polyfract(&p, domain).unwrap();
            prop_assert_eq!(back, f);
            let nontrivial: Vec<u32> = alphas.iter().copied().filter(|&a| a > 0).collect();
            if !nontrivial.is_empty() {
                let bound = degree_bound(2, beta, &nontrivial).unwrap();
                prop_assert!(p.total_degree().unwrap_or(0) <= bound);
            }
        }
    }
}
