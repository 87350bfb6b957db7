//! Exact integers, rationals, binomial coefficients and residue rings.
//!
//! Residue rings `Z_r` follow the conventions `Z_1 = {0}` and `Z_0 = Z`:
//! modulus zero means plain integer arithmetic. Representatives are the
//! least nonnegative ones for `r >= 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!`.
///
/// Defined for every integer `n`, including negative ones; `binom(n, 0) = 1`.
///
/// ```
/// use num_bigint::BigInt;
/// use polyfract::exactnum::binom;
/// assert_eq!(binom(&BigInt::from(-1), 3), BigInt::from(-1));
/// ```
pub fn binom(n: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `binom(x, 0), binom(x, 1), ..., binom(x, m)`.
pub fn binom_row(x: &BigInt, m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut cur = BigInt::one();
    row.push(cur.clone());
    for d in 0..m {
        // binom(x, d+1) = binom(x, d) (x - d) / (d + 1), exact at every step
        cur = cur * (x - BigInt::from(d)) / BigInt::from(d + 1);
        row.push(cur.clone());
    }
    row
}

/// `k!` as an unbounded integer.
pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Least nonnegative representative of `v` modulo `r` (`v` itself for `r = 0`).
pub fn reduce(v: &BigInt, r: u64) -> BigInt {
    if r == 0 {
        v.clone()
    } else {
        v.mod_floor(&BigInt::from(r))
    }
}

/// Representative of `v` modulo `r` of least absolute value, in `(-r/2, r/2]`.
pub fn balanced(v: &BigInt, r: u64) -> BigInt {
    if r == 0 {
        return v.clone();
    }
    let c = reduce(v, r);
    if c.clone() * 2 > BigInt::from(r) {
        c - BigInt::from(r)
    } else {
        c
    }
}

/// An element of `Z_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: u64,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: u64) -> Self {
        Residue { value: reduce(&value.into(), modulus), modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Residue::new(0, modulus)
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_ring(&self, other: &Residue) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(Residue::new(&self.value + &other.value, self.modulus))
    }

    pub fn checked_sub(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(Residue::new(&self.value - &other.value, self.modulus))
    }

    pub fn checked_mul(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(Residue::new(&self.value * &other.value, self.modulus))
    }

    pub fn neg(&self) -> Residue {
        Residue::new(-&self.value, self.modulus)
    }

    /// The reduction `Z_{r'} -> Z_r` for a divisor `r` of `r'`.
    ///
    /// Every `r` divides `0`, so residues modulo 0 project anywhere.
    pub fn project(&self, r: u64) -> Result<Residue> {
        if !divides(r, self.modulus) {
            return Err(Error::NotADivisor { divisor: r, modulus: self.modulus });
        }
        Ok(Residue::new(self.value.clone(), r))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Does `d` divide `n`, with `0` divisible by everything and `0 | n` only for `n = 0`.
pub fn divides(d: u64, n: u64) -> bool {
    if d == 0 {
        n == 0
    } else {
        n.is_multiple_of(d)
    }
}

/// Largest `e` with `p^e | n`.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` if `q = p^e` with `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Exponent of `p` in `n` for a positive machine integer.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Extended Euclid: `(g, u, v)` with `u a + v b = g = gcd(a, b)`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("prime power overflows u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&big(4), 2), big(6));
        assert_eq!(binom(&big(-1), 3), big(-1));
        assert_eq!(binom(&big(9), 3), big(84));
        assert_eq!(padic_valuation(&big(84), 3), Ok(1));
        assert_eq!(binom(&big(-7), 0), big(1));
    }

    #[test]
    fn binom_row_matches_binom() {
        for x in -6..10 {
            let row = binom_row(&big(x), 8);
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, binom(&big(x), k), "x={x} k={k}");
            }
        }
    }

    #[test]
    fn residue_examples() {
        let a = Residue::new(7, 12);
        let b = Residue::new(8, 12);
        assert_eq!(a.checked_add(&b).unwrap(), Residue::new(3, 12));
        let t = Residue::new(5, 1).checked_mul(&Residue::new(4, 1)).unwrap();
        assert_eq!(t, Residue::zero(1));
        let z = Residue::new(5, 0).checked_mul(&Residue::new(-3, 0)).unwrap();
        assert_eq!(z.value(), &big(-15));
        assert_eq!(a.checked_add(&Residue::new(1, 5)), Err(Error::ModulusMismatch(12, 5)));
    }

    #[test]
    fn projection() {
        assert_eq!(Residue::new(7, 12).project(3).unwrap(), Residue::new(1, 3));
        assert_eq!(Residue::new(7, 12).project(1).unwrap(), Residue::zero(1));
        assert_eq!(Residue::new(-4, 0).project(3).unwrap(), Residue::new(2, 3));
        assert!(matches!(Residue::new(7, 12).project(5), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&big(9), 3), Ok(2));
        assert_eq!(padic_valuation(&big(7), 3), Ok(0));
        assert_eq!(padic_valuation(&big(-24), 2), Ok(3));
        assert_eq!(padic_valuation(&big(0), 3), Err(Error::ZeroInput));
        assert_eq!(padic_valuation(&big(8), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(50), vec![(2, 1), (5, 2)]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(balanced(&big(8), 9), big(-1));
        assert_eq!(balanced(&big(6), 12), big(6));
    }

    #[test]
    fn binom_vanishes_below_k() {
        for k in 0..12 {
            for x in 0..k {
                assert!(binom(&big(x as i64), k).is_zero());
            }
        }
    }

    proptest! {
        #[test]
        fn pascal_rule(n in -40i64..40, k in 0usize..12) {
            let lhs = binom(&big(n), k) + binom(&big(n), k + 1);
            prop_assert_eq!(lhs, binom(&big(n + 1), k + 1));
        }

        #[test]
        fn modulus_zero_is_integer_arithmetic(a in any::<i32>(), b in any::<i32>()) {
            let (x, y) = (Residue::new(a, 0), Residue::new(b, 0));
            prop_assert_eq!(x.checked_add(&y).unwrap().value().clone(), big(a as i64) + big(b as i64));
            prop_assert_eq!(x.checked_mul(&y).unwrap().value().clone(), big(a as i64) * big(b as i64));
        }

        #[test]
        fn projection_is_ring_homomorphism(a in -500i64..500, b in -500i64..500,
                                           r in 1u64..30, m in 1u64..6) {
            let big_r = r * m;
            let (x, y) = (Residue::new(a, big_r), Residue::new(b, big_r));
            let sum = x.checked_add(&y).unwrap().project(r).unwrap();
            prop_assert_eq!(sum, x.project(r).unwrap().checked_add(&y.project(r).unwrap()).unwrap());
            let prod = x.checked_mul(&y).unwrap().project(r).unwrap();
            prop_assert_eq!(prod, x.project(r).unwrap().checked_mul(&y.project(r).unwrap()).unwrap());
        }
    }
}
