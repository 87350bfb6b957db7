//! Univariate polyfracts: `Z_r`-linear combinations of binomial monomials
//! `C(X, 0), C(X, 1), ...`, identified with the maps `Z -> Z_r` they induce.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{balanced, binom_row, factorial, reduce, Rational, Residue};

/// A rational polynomial in the monomial basis, `coeffs[k]` belonging to `X^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolyUni {
    coeffs: Vec<Rational>,
}

impl RationalPolyUni {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolyUni { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolyUni::default()
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(coeffs: &[(i64, i64)]) -> Self {
        RationalPolyUni::new(coeffs.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> Rational {
        let x = Rational::from_integer(x.clone());
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn add(&self, other: &RationalPolyUni) -> RationalPolyUni {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        RationalPolyUni::new(
            (0..n).map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> RationalPolyUni {
        RationalPolyUni::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RationalPolyUni) -> RationalPolyUni {
        if self.is_zero() || other.is_zero() {
            return RationalPolyUni::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolyUni::new(out)
    }
}

/// Monomial expansion of `C(X, d) = X (X-1) ... (X-d+1) / d!`.
pub fn monofract_expansion(d: usize) -> RationalPolyUni {
    // falling factorial, built one linear factor at a time
    let mut ff: Vec<BigInt> = vec![BigInt::one()];
    for i in 0..d {
        let shift = BigInt::from(i);
        let mut next = vec![BigInt::zero(); ff.len() + 1];
        for (k, c) in ff.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &shift;
        }
        ff = next;
    }
    let den = factorial(d);
    RationalPolyUni::new(ff.into_iter().map(|c| Rational::new(c, den.clone())).collect())
}

/// Re-express a rational polynomial in the binomial basis by repeatedly
/// dividing off the leading monofract. Fails as soon as an extracted
/// coefficient `m! * lead` is not an integer.
pub fn binomial_coefficients_of(poly: &RationalPolyUni) -> Result<Vec<BigInt>> {
    let Some(top) = poly.degree() else {
        return Ok(Vec::new());
    };
    let monos: Vec<RationalPolyUni> = (0..=top).map(monofract_expansion).collect();
    let mut out = vec![BigInt::zero(); top + 1];
    let mut rem = poly.clone();
    while let Some(m) = rem.degree() {
        let c = &rem.coeffs[m] * Rational::from_integer(factorial(m));
        if !c.is_integer() {
            return Err(Error::NotIntegerValued { degree: m });
        }
        rem = rem.add(&monos[m].scale(&-c.clone()));
        debug_assert!(rem.degree().is_none_or(|d| d < m));
        out[m] = c.to_integer();
    }
    Ok(out)
}

/// Which integer representatives to use when lifting residues to `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lift {
    /// `{0, ..., r-1}`
    LeastNonnegative,
    /// `(-r/2, r/2]`
    Balanced,
}

impl Lift {
    pub fn apply(self, v: &BigInt, r: u64) -> BigInt {
        match self {
            Lift::LeastNonnegative => reduce(v, r),
            Lift::Balanced => balanced(v, r),
        }
    }
}

/// A polyfract `P_0 C(X,0) + ... + P_m C(X,m)` over `Z_r`, in canonical form
/// (reduced coefficients, no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPolyfract {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl UniPolyfract {
    pub fn new(modulus: u64, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.iter().map(|c| reduce(c, modulus)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyfract { modulus, coeffs }
    }

    pub fn from_i64(modulus: u64, coeffs: &[i64]) -> Self {
        UniPolyfract::new(modulus, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(modulus: u64) -> Self {
        UniPolyfract::new(modulus, Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>, modulus: u64) -> Self {
        UniPolyfract::new(modulus, vec![c.into()])
    }

    /// The single monofract `C(X, d)`.
    pub fn monofract(d: usize, modulus: u64) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        UniPolyfract::new(modulus, coeffs)
    }

    pub fn from_residues(modulus: u64, coeffs: &[Residue]) -> Result<Self> {
        for c in coeffs {
            if c.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus, c.modulus()));
            }
        }
        Ok(UniPolyfract::new(modulus, coeffs.iter().map(|c| c.value().clone()).collect()))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical coefficient representatives, index = binomial degree.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Residue {
        Residue::new(self.coeffs.get(d).cloned().unwrap_or_default(), self.modulus)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> Residue {
        let Some(m) = self.degree() else {
            return Residue::zero(self.modulus);
        };
        let row = binom_row(x, m);
        let sum: BigInt = self.coeffs.iter().zip(&row).map(|(c, b)| c * b).sum();
        Residue::new(sum, self.modulus)
    }

    pub fn eval_i64(&self, x: i64) -> Residue {
        self.eval(&BigInt::from(x))
    }

    fn check(&self, other: &UniPolyfract) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &UniPolyfract) -> Result<UniPolyfract> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Ok(UniPolyfract::new(
            self.modulus,
            (0..n).map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)).collect(),
        ))
    }

    pub fn neg(&self) -> UniPolyfract {
        UniPolyfract::new(self.modulus, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &UniPolyfract) -> Result<UniPolyfract> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> UniPolyfract {
        UniPolyfract::new(self.modulus, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Ring product by lifting to integer representatives, multiplying the
    /// monomial expansions over `Q`, re-expanding into monofracts and
    /// reducing modulo `r`.
    pub fn mul(&self, other: &UniPolyfract) -> Result<UniPolyfract> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPolyfract::zero(self.modulus));
        }
        let a = self.lift_rational(Lift::LeastNonnegative);
        let b = other.lift_rational(Lift::LeastNonnegative);
        let product = a.mul(&b);
        let coeffs =
            binomial_coefficients_of(&product).expect("product of integer-valued polynomials is integer valued");
        Ok(UniPolyfract::new(self.modulus, coeffs))
    }

    /// The unique polyfract over `Z_r` inducing the same map as an
    /// integer-valued rational polynomial.
    pub fn from_rational(poly: &RationalPolyUni, modulus: u64) -> Result<UniPolyfract> {
        Ok(UniPolyfract::new(modulus, binomial_coefficients_of(poly)?))
    }

    /// Monomial expansion using balanced coefficient representatives.
    pub fn to_rational(&self) -> RationalPolyUni {
        self.lift_rational(Lift::Balanced)
    }

    pub fn lift_rational(&self, lift: Lift) -> RationalPolyUni {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(RationalPolyUni::zero(), |acc, (d, c)| {
            let c = Rational::from_integer(lift.apply(c, self.modulus));
            acc.add(&monofract_expansion(d).scale(&c))
        })
    }

    /// Interpolation from the values `f(0), ..., f(m)` via iterated differences.
    pub fn from_values(modulus: u64, values: &[Residue]) -> Result<UniPolyfract> {
        for v in values {
            if v.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus, v.modulus()));
            }
        }
        Ok(UniPolyfract::new(modulus, coeffs_from_values(values)?.into_iter().map(|r| r.value().clone()).collect()))
    }

    /// Discrete derivative `Δ`, acting on coefficients by `Δ C(X, l+1) = C(X, l)`.
    pub fn difference(&self) -> UniPolyfract {
        UniPolyfract::new(self.modulus, self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Stride difference `Δ_q = T^q - Id`, with new coefficient
    /// `sum_{j=1..q} C(q, j) P_{δ+j}` at index `δ`.
    pub fn stride_difference(&self, q: u64) -> UniPolyfract {
        let q_big = BigInt::from(q);
        let weights = binom_row(&q_big, q as usize);
        let coeffs = (0..self.coeffs.len())
            .map(|d| (1..=q as usize).filter_map(|j| self.coeffs.get(d + j).map(|c| c * &weights[j])).sum())
            .collect();
        UniPolyfract::new(self.modulus, coeffs)
    }

    /// Coefficientwise reduction to a divisor of the modulus.
    pub fn project(&self, r: u64) -> Result<UniPolyfract> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Residue::new(c.clone(), self.modulus).project(r).map(|p| p.value().clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPolyfract::new(r, coeffs))
    }
}

/// Binomial coefficients `P_δ = sum_{i<=δ} (-1)^(δ-i) C(δ, i) f(i)` from the
/// values `f(0), ..., f(m)`.
pub fn coeffs_from_values(values: &[Residue]) -> Result<Vec<Residue>> {
    let Some(first) = values.first() else {
        return Ok(Vec::new());
    };
    let r = first.modulus();
    if let Some(bad) = values.iter().find(|v| v.modulus() != r) {
        return Err(Error::ModulusMismatch(r, bad.modulus()));
    }
    Ok((0..values.len())
        .map(|d| {
            let row = binom_row(&BigInt::from(d), d);
            let sum: BigInt = (0..=d)
                .map(|i| {
                    let term = &row[i] * values[i].value();
                    if (d - i) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            Residue::new(sum, r)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn intro() -> UniPolyfract {
        UniPolyfract::from_i64(9, &[1, -1, 1, 0, -3])
    }

    fn eq1() -> RationalPolyUni {
        RationalPolyUni::from_fractions(&[(1, 1), (-3, 4), (-7, 8), (3, 4), (-1, 8)])
    }

    #[test]
    fn intro_evaluation() {
        let p = intro();
        assert_eq!(p.eval_i64(0), Residue::new(1, 9));
        assert_eq!(p.eval_i64(1), Residue::new(0, 9));
        assert_eq!(p.eval_i64(-1), Residue::new(0, 9));
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn addition() {
        let p = intro();
        assert_eq!(p.add(&UniPolyfract::zero(9)).unwrap(), p);
        assert!(p.add(&p.neg()).unwrap().is_zero());
        let s = UniPolyfract::from_i64(9, &[1, -1]).add(&UniPolyfract::from_i64(9, &[0, 1])).unwrap();
        assert_eq!(s, UniPolyfract::from_i64(9, &[1]));
        assert_eq!(p.add(&UniPolyfract::zero(3)), Err(Error::ModulusMismatch(9, 3)));
    }

    #[test]
    fn multiplication() {
        let x = UniPolyfract::monofract(1, 0);
        assert_eq!(x.mul(&x).unwrap(), UniPolyfract::from_i64(0, &[0, 1, 2]));
        let x2 = UniPolyfract::monofract(1, 2);
        assert_eq!(x2.mul(&x2).unwrap(), x2);
        let p = intro();
        assert_eq!(p.mul(&UniPolyfract::constant(1, 9)).unwrap(), p);
    }

    #[test]
    fn rational_conversions() {
        assert_eq!(UniPolyfract::from_rational(&eq1(), 9).unwrap(), intro());
        assert_eq!(intro().to_rational(), eq1());
        let x2_minus_x = RationalPolyUni::from_fractions(&[(0, 1), (-1, 1), (1, 1)]);
        assert!(UniPolyfract::from_rational(&x2_minus_x, 2).unwrap().is_zero());
        assert_eq!(UniPolyfract::from_i64(0, &[0, 0, 2]).to_rational(), x2_minus_x);
        let half_x = RationalPolyUni::from_fractions(&[(0, 1), (1, 2)]);
        assert_eq!(UniPolyfract::from_rational(&half_x, 5), Err(Error::NotIntegerValued { degree: 1 }));
        assert!(UniPolyfract::zero(9).to_rational().is_zero());
        assert!(UniPolyfract::from_rational(&RationalPolyUni::zero(), 7).unwrap().is_zero());
    }

    #[test]
    fn values_to_coefficients() {
        let vals: Vec<Residue> = [1, 0, 0, 1, 0].iter().map(|&v| Residue::new(v, 9)).collect();
        let c = coeffs_from_values(&vals).unwrap();
        let expect: Vec<Residue> = [1, -1, 1, 0, -3].iter().map(|&v| Residue::new(v, 9)).collect();
        assert_eq!(c, expect);

        let consts = vec![Residue::new(5, 7); 4];
        let c = coeffs_from_values(&consts).unwrap();
        assert_eq!(c[0], Residue::new(5, 7));
        assert!(c[1..].iter().all(Residue::is_zero));

        for a in 0..4 {
            for b in 0..4 {
                let c = coeffs_from_values(&[Residue::new(b, 4), Residue::new(b - a, 4)]).unwrap();
                assert_eq!(c, vec![Residue::new(b, 4), Residue::new(-a, 4)]);
            }
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(UniPolyfract::zero(4).degree(), None);
        assert_eq!(UniPolyfract::from_i64(4, &[0, 0, 2]).degree(), Some(2));
    }

    #[test]
    fn difference_views_agree() {
        // Δ C(X, l+1) = C(X, l)
        let p = UniPolyfract::monofract(3, 0);
        assert_eq!(p.difference(), UniPolyfract::monofract(2, 0));
        let p = intro();
        let dp = p.difference();
        for x in -5..10 {
            let lhs = p.eval_i64(x + 1).checked_sub(&p.eval_i64(x)).unwrap();
            assert_eq!(dp.eval_i64(x), lhs);
        }
        for q in 1..6u64 {
            let sp = p.stride_difference(q);
            for x in -5..10 {
                let lhs = p.eval_i64(x + q as i64).checked_sub(&p.eval_i64(x)).unwrap();
                assert_eq!(sp.eval_i64(x), lhs);
            }
        }
    }

    #[test]
    fn injectivity_exhaustive() {
        // Distinct polyfracts of degree <= m over Z_3 differ somewhere on 0..=m.
        let m = 3;
        let r = 3u64;
        let mut seen = std::collections::HashSet::new();
        for code in 0..r.pow(m as u32 + 1) {
            let coeffs: Vec<i64> = (0..=m).map(|i| ((code / r.pow(i as u32)) % r) as i64).collect();
            let p = UniPolyfract::from_i64(r, &coeffs);
            let vals: Vec<BigInt> = (0..=m as i64).map(|x| p.eval_i64(x).value().clone()).collect();
            assert!(seen.insert(vals));
        }
    }

    #[test]
    fn grid_vanishing_univariate() {
        let r = 4u64;
        for d in 0..3usize {
            for code in 0..r.pow(4) {
                let coeffs: Vec<i64> = (0..4).map(|i| ((code / r.pow(i)) % r) as i64).collect();
                let p = UniPolyfract::from_i64(r, &coeffs);
                let coeff_side = (0..=d).all(|k| p.coeff(k).is_zero());
                let value_side = (0..=d as i64).all(|x| p.eval_i64(x).is_zero());
                assert_eq!(coeff_side, value_side);
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = UniPolyfract> {
        (0u64..20, prop::collection::vec(-50i64..50, 0..8)).prop_map(|(r, c)| UniPolyfract::from_i64(r, &c))
    }

    proptest! {
        #[test]
        fn rational_round_trip(p in arb_poly()) {
            prop_assert_eq!(UniPolyfract::from_rational(&p.to_rational(), p.modulus()).unwrap(), p.clone());
            let lifted = p.lift_rational(Lift::LeastNonnegative);
            prop_assert_eq!(UniPolyfract::from_rational(&lifted, p.modulus()).unwrap(), p);
        }

        #[test]
        fn rational_expansion_agrees_pointwise(p in arb_poly(), x in -20i64..20) {
            let v = p.to_rational().eval(&BigInt::from(x));
            prop_assert!(v.is_integer());
            prop_assert_eq!(Residue::new(v.to_integer(), p.modulus()), p.eval_i64(x));
        }

        #[test]
        fn values_round_trip(p in arb_poly(), extra in 0usize..4) {
            let m = p.degree().unwrap_or(0) + extra;
            let vals: Vec<Residue> = (0..=m as i64).map(|x| p.eval_i64(x)).collect();
            prop_assert_eq!(UniPolyfract::from_values(p.modulus(), &vals).unwrap(), p);
        }

        #[test]
        fn product_is_pointwise((r, a, b) in (0u64..16, prop::collection::vec(-9i64..9, 0..6),
                                              prop::collection::vec(-9i64..9, 0..6))) {
            let p = UniPolyfract::from_i64(r, &a);
            let q = UniPolyfract::from_i64(r, &b);
            let pq = p.mul(&q).unwrap();
            for x in -6i64..12 {
                prop_assert_eq!(pq.eval_i64(x), p.eval_i64(x).checked_mul(&q.eval_i64(x)).unwrap());
            }
        }
    }
}
