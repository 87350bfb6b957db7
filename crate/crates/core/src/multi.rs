//! Multivariate polyfracts with tuple-valued coefficients.
//!
//! A [`MultiPolyfract`] over `B = Z_{r_1} x ... x Z_{r_t}` in `n` variables is a
//! finite sum `sum_δ P_δ C(X_1, δ_1) ... C(X_n, δ_n)` with `P_δ ∈ B`. It is the
//! same thing as a `t`-tuple of single-slot polyfracts, and all ring operations
//! act slot by slot.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binom_row, reduce, Rational, Residue};
use crate::uni::{binomial_coefficients_of, monofract_expansion, Lift, RationalPolyUni, UniPolyfract};

pub type Exponent = Vec<usize>;

/// Single-slot rational polynomial, monomial basis.
type RatPoly = BTreeMap<Exponent, Rational>;

/// Bounds `d = (d_1, ..., d_n)` of the grid `{0..=d_1} x ... x {0..=d_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub bounds: Vec<usize>,
}

impl GridSpec {
    pub fn new(bounds: Vec<usize>) -> Self {
        GridSpec { bounds }
    }

    /// All grid points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &d in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=d).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Rational polynomial with tuple coefficients in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolyMulti {
    nvars: usize,
    width: usize,
    terms: BTreeMap<Exponent, Vec<Rational>>,
}

impl RationalPolyMulti {
    pub fn new(nvars: usize, width: usize, terms: impl IntoIterator<Item = (Exponent, Vec<Rational>)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, Vec<Rational>> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.len() });
            }
            if c.len() != width {
                return Err(Error::ArityMismatch { expected: width, found: c.len() });
            }
            let slot = map.entry(e).or_insert_with(|| vec![Rational::zero(); width]);
            for (a, b) in slot.iter_mut().zip(c) {
                *a += b;
            }
        }
        map.retain(|_, c| c.iter().any(|v| !v.is_zero()));
        Ok(RationalPolyMulti { nvars, width, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Vec<Rational>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[BigInt]) -> Result<Vec<Rational>> {
        if x.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: x.len() });
        }
        let mut out = vec![Rational::zero(); self.width];
        for (e, c) in &self.terms {
            let mono = e.iter().zip(x).fold(BigInt::one(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k));
            let mono = Rational::from_integer(mono);
            for (o, ci) in out.iter_mut().zip(c) {
                *o += ci * &mono;
            }
        }
        Ok(out)
    }

    fn slot(&self, i: usize) -> RatPoly {
        self.terms.iter().filter(|(_, c)| !c[i].is_zero()).map(|(e, c)| (e.clone(), c[i].clone())).collect()
    }

    /// Univariate view of a one-variable, one-slot polynomial.
    pub fn to_uni(&self) -> Result<RationalPolyUni> {
        if self.nvars != 1 || self.width != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.nvars.max(self.width) });
        }
        let deg = self.terms.keys().map(|e| e[0]).max();
        let mut coeffs = vec![Rational::zero(); deg.map_or(0, |d| d + 1)];
        for (e, c) in &self.terms {
            coeffs[e[0]] = c[0].clone();
        }
        Ok(RationalPolyUni::new(coeffs))
    }

    pub fn from_uni(p: &RationalPolyUni) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(k, c)| (vec![k], vec![c.clone()]));
        RationalPolyMulti::new(1, 1, terms).expect("well-formed")
    }
}

/// Polyfract in `nvars` variables over the product of cyclic groups `codomain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPolyfract {
    codomain: Vec<u64>,
    nvars: usize,
    terms: BTreeMap<Exponent, Vec<BigInt>>,
}

impl MultiPolyfract {
    /// Builds a polyfract, summing repeated exponents and dropping zero coefficients.
    pub fn new(
        codomain: Vec<u64>,
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponent, Vec<BigInt>)>,
    ) -> Result<Self> {
        let width = codomain.len();
        let mut map: BTreeMap<Exponent, Vec<BigInt>> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.len() });
            }
            if c.len() != width {
                return Err(Error::ArityMismatch { expected: width, found: c.len() });
            }
            let slot = map.entry(e).or_insert_with(|| vec![BigInt::zero(); width]);
            for (a, b) in slot.iter_mut().zip(c) {
                *a += b;
            }
        }
        for c in map.values_mut() {
            for (v, &r) in c.iter_mut().zip(&codomain) {
                *v = reduce(v, r);
            }
        }
        map.retain(|_, c| c.iter().any(|v| !v.is_zero()));
        Ok(MultiPolyfract { codomain, nvars, terms: map })
    }

    pub fn zero(codomain: Vec<u64>, nvars: usize) -> Self {
        MultiPolyfract { codomain, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(codomain: Vec<u64>, nvars: usize, value: Vec<BigInt>) -> Result<Self> {
        MultiPolyfract::new(codomain, nvars, [(vec![0; nvars], value)])
    }

    /// One-slot polyfract in one variable.
    pub fn from_uni(p: &UniPolyfract) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(d, c)| (vec![d], vec![c.clone()]));
        MultiPolyfract::new(vec![p.modulus()], 1, terms).expect("well-formed")
    }

    /// One-variable, one-slot view.
    pub fn to_uni(&self) -> Result<UniPolyfract> {
        if self.nvars != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.nvars });
        }
        if self.codomain.len() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.codomain.len() });
        }
        let deg = self.terms.keys().map(|e| e[0]).max();
        let mut coeffs = vec![BigInt::zero(); deg.map_or(0, |d| d + 1)];
        for (e, c) in &self.terms {
            coeffs[e[0]] = c[0].clone();
        }
        Ok(UniPolyfract::new(self.codomain[0], coeffs))
    }

    /// One-variable polyfract with tuple coefficients, `coeffs[δ]` per degree.
    pub fn from_tuple_coeffs(codomain: Vec<u64>, coeffs: Vec<Vec<BigInt>>) -> Result<Self> {
        let terms = coeffs.into_iter().enumerate().map(|(d, c)| (vec![d], c));
        MultiPolyfract::new(codomain, 1, terms)
    }

    pub fn codomain(&self) -> &[u64] {
        &self.codomain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Vec<BigInt>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[usize]) -> Vec<Residue> {
        match self.terms.get(e) {
            Some(c) => c.iter().zip(&self.codomain).map(|(v, &r)| Residue::new(v.clone(), r)).collect(),
            None => self.codomain.iter().map(|&r| Residue::zero(r)).collect(),
        }
    }

    /// The `i`-th codomain slot as a one-slot polyfract.
    pub fn slot(&self, i: usize) -> MultiPolyfract {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), vec![c[i].clone()]));
        MultiPolyfract::new(vec![self.codomain[i]], self.nvars, terms).expect("well-formed")
    }

    /// Inverse of [`MultiPolyfract::slot`]: glue one-slot polyfracts side by side.
    pub fn from_slots(slots: &[MultiPolyfract]) -> Result<Self> {
        let nvars = slots.first().map_or(0, |s| s.nvars);
        let mut codomain = Vec::new();
        for s in slots {
            if s.nvars != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: s.nvars });
            }
            codomain.extend_from_slice(&s.codomain);
        }
        let width = codomain.len();
        let mut terms = Vec::new();
        let mut offset = 0;
        for s in slots {
            for (e, c) in &s.terms {
                let mut full = vec![BigInt::zero(); width];
                full[offset..offset + c.len()].clone_from_slice(c);
                terms.push((e.clone(), full));
            }
            offset += s.codomain.len();
        }
        MultiPolyfract::new(codomain, nvars, terms)
    }

    pub fn eval(&self, x: &[BigInt]) -> Result<Vec<Residue>> {
        if x.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: x.len() });
        }
        let (_, partial) = self.degrees();
        let rows: Vec<Vec<BigInt>> = x.iter().zip(&partial).map(|(xi, d)| binom_row(xi, d.unwrap_or(0))).collect();
        let mut out = vec![BigInt::zero(); self.codomain.len()];
        for (e, c) in &self.terms {
            let mono = e.iter().enumerate().fold(BigInt::one(), |acc, (j, &k)| acc * &rows[j][k]);
            if mono.is_zero() {
                continue;
            }
            for (o, ci) in out.iter_mut().zip(c) {
                *o += ci * &mono;
            }
        }
        Ok(out.into_iter().zip(&self.codomain).map(|(v, &r)| Residue::new(v, r)).collect())
    }

    pub fn eval_i64(&self, x: &[i64]) -> Result<Vec<Residue>> {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.eval(&x)
    }

    fn check(&self, other: &MultiPolyfract) -> Result<()> {
        if self.codomain != other.codomain {
            let a = self.codomain.iter().product::<u64>();
            let b = other.codomain.iter().product::<u64>();
            return Err(Error::ModulusMismatch(a, b));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPolyfract) -> Result<MultiPolyfract> {
        self.check(other)?;
        let terms = self.terms.iter().chain(&other.terms).map(|(e, c)| (e.clone(), c.clone()));
        MultiPolyfract::new(self.codomain.clone(), self.nvars, terms)
    }

    pub fn neg(&self) -> MultiPolyfract {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.iter().map(|v| -v).collect()));
        MultiPolyfract::new(self.codomain.clone(), self.nvars, terms).expect("well-formed")
    }

    pub fn sub(&self, other: &MultiPolyfract) -> Result<MultiPolyfract> {
        self.add(&other.neg())
    }

    /// Ring product, slot by slot: lift, expand over `Q`, multiply,
    /// re-expand into monofracts one variable at a time, reduce.
    pub fn mul(&self, other: &MultiPolyfract) -> Result<MultiPolyfract> {
        self.check(other)?;
        let mut cache = ConversionCache::default();
        let mut terms: Vec<(Exponent, Vec<BigInt>)> = Vec::new();
        let width = self.codomain.len();
        for (i, &r) in self.codomain.iter().enumerate() {
            let a = lift_slot(self, i, Lift::LeastNonnegative);
            let b = lift_slot(other, i, Lift::LeastNonnegative);
            let product = rat_mul(&a, &b);
            let binomial = cache
                .binomial_form(&product, self.nvars)
                .expect("product of integer-valued polynomials is integer valued");
            for (e, c) in binomial {
                let mut full = vec![BigInt::zero(); width];
                full[i] = reduce(&c, r);
                terms.push((e, full));
            }
        }
        MultiPolyfract::new(self.codomain.clone(), self.nvars, terms)
    }

    /// Monomial expansion with balanced coefficient representatives.
    pub fn to_rational(&self) -> RationalPolyMulti {
        self.lift_rational(Lift::Balanced)
    }

    pub fn lift_rational(&self, lift: Lift) -> RationalPolyMulti {
        let width = self.codomain.len();
        let mut terms = Vec::new();
        for i in 0..width {
            for (e, c) in lift_slot(self, i, lift) {
                let mut full = vec![Rational::zero(); width];
                full[i] = c;
                terms.push((e, full));
            }
        }
        RationalPolyMulti::new(self.nvars, width, terms).expect("well-formed")
    }

    /// The polyfract over `codomain` inducing the same map as an
    /// integer-valued rational polynomial.
    pub fn from_rational(poly: &RationalPolyMulti, codomain: Vec<u64>) -> Result<MultiPolyfract> {
        if codomain.len() != poly.width {
            return Err(Error::ArityMismatch { expected: poly.width, found: codomain.len() });
        }
        let mut cache = ConversionCache::default();
        let width = poly.width;
        let mut terms = Vec::new();
        for i in 0..width {
            for (e, c) in cache.binomial_form(&poly.slot(i), poly.nvars)? {
                let mut full = vec![BigInt::zero(); width];
                full[i] = c;
                terms.push((e, full));
            }
        }
        MultiPolyfract::new(codomain, poly.nvars, terms)
    }

    /// Total degree and partial degrees; `None` for the zero polyfract.
    pub fn degrees(&self) -> (Option<usize>, Vec<Option<usize>>) {
        let total = self.terms.keys().map(|e| e.iter().sum()).max();
        let partial = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max()).collect();
        (total, partial)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.degrees().0
    }

    /// Checks, independently, whether the coefficients vanish on the grid
    /// and whether the values vanish on the grid.
    pub fn grid_vanish_equiv(&self, grid: &GridSpec) -> Result<(bool, bool)> {
        if grid.bounds.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: grid.bounds.len() });
        }
        let coeffs_vanish = !self.terms.keys().any(|e| e.iter().zip(&grid.bounds).all(|(k, d)| k <= d));
        let mut values_vanish = true;
        for p in grid.points() {
            let x: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
            if self.eval(&x)?.iter().any(|v| !v.is_zero()) {
                values_vanish = false;
                break;
            }
        }
        Ok((coeffs_vanish, values_vanish))
    }

    /// Coefficient-level difference `Δ_i`, lowering `δ_i` by one.
    pub fn difference(&self, var: usize) -> Result<MultiPolyfract> {
        if var >= self.nvars {
            return Err(Error::BadVariableIndex { index: var, nvars: self.nvars });
        }
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut e = e.clone();
            e[var] -= 1;
            (e, c.clone())
        });
        MultiPolyfract::new(self.codomain.clone(), self.nvars, terms)
    }

    /// Substitution of variables: old variable `j` becomes new variable
    /// `target[j]`. Monofracts landing on the same new variable are multiplied
    /// out over `Z` and reduced.
    pub fn substitute_variables(&self, target: &[usize], new_nvars: usize) -> Result<MultiPolyfract> {
        if target.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: target.len() });
        }
        if let Some(&bad) = target.iter().find(|&&t| t >= new_nvars) {
            return Err(Error::BadVariableIndex { index: bad, nvars: new_nvars });
        }
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            // per new variable, the product of the univariate monofracts mapped to it
            let mut factors: Vec<UniPolyfract> = vec![UniPolyfract::constant(1, 0); new_nvars];
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    let t = target[j];
                    factors[t] = factors[t].mul(&UniPolyfract::monofract(k, 0)).expect("same modulus");
                }
            }
            // expand the tensor product of the per-variable factors
            let mut partial: Vec<(Exponent, BigInt)> = vec![(Vec::new(), BigInt::one())];
            for f in &factors {
                let mut next = Vec::new();
                for (pe, pc) in &partial {
                    for (d, fc) in f.coeffs().iter().enumerate() {
                        if fc.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne.push(d);
                        next.push((ne, pc * fc));
                    }
                }
                partial = next;
            }
            for (ne, scalar) in partial {
                terms.push((ne, c.iter().map(|v| v * &scalar).collect()));
            }
        }
        MultiPolyfract::new(self.codomain.clone(), new_nvars, terms)
    }

    /// Re-embed into a larger layout: variable `j` goes to `var_map[j]` of
    /// `nvars` variables, slot `i` goes to `slot_map[i]` of `codomain`.
    pub fn embed(
        &self,
        nvars: usize,
        var_map: &[usize],
        codomain: Vec<u64>,
        slot_map: &[usize],
    ) -> Result<MultiPolyfract> {
        if var_map.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: var_map.len() });
        }
        if slot_map.len() != self.codomain.len() {
            return Err(Error::ArityMismatch { expected: self.codomain.len(), found: slot_map.len() });
        }
        for (i, &s) in slot_map.iter().enumerate() {
            if codomain.get(s) != Some(&self.codomain[i]) {
                return Err(Error::ModulusMismatch(self.codomain[i], codomain.get(s).copied().unwrap_or(0)));
            }
        }
        let width = codomain.len();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; nvars];
            for (j, &k) in e.iter().enumerate() {
                ne[var_map[j]] = k;
            }
            let mut nc = vec![BigInt::zero(); width];
            for (i, v) in c.iter().enumerate() {
                nc[slot_map[i]] = v.clone();
            }
            (ne, nc)
        });
        MultiPolyfract::new(codomain, nvars, terms)
    }

    /// Coefficientwise reduction of every slot to the given divisors.
    pub fn project(&self, codomain: Vec<u64>) -> Result<MultiPolyfract> {
        if codomain.len() != self.codomain.len() {
            return Err(Error::ArityMismatch { expected: self.codomain.len(), found: codomain.len() });
        }
        for (&r, &big) in codomain.iter().zip(&self.codomain) {
            if !crate::exactnum::divides(r, big) {
                return Err(Error::NotADivisor { divisor: r, modulus: big });
            }
        }
        MultiPolyfract::new(codomain, self.nvars, self.terms.clone())
    }
}

/// Composition `Q(P)` of integer polyfracts.
///
/// For nonconstant `Q` and `P`, `deg Q(P) = deg Q * deg P`.
pub fn compose(q: &UniPolyfract, p: &MultiPolyfract) -> Result<MultiPolyfract> {
    if q.modulus() != 0 {
        return Err(Error::ModulusMismatch(0, q.modulus()));
    }
    match p.codomain() {
        [0] => {}
        [r] => return Err(Error::ModulusMismatch(0, *r)),
        other => return Err(Error::ArityMismatch { expected: 1, found: other.len() }),
    }
    let inner = lift_slot(p, 0, Lift::LeastNonnegative);
    let outer = q.to_rational();
    // Horner over Q[X_1..X_n]
    let mut acc: RatPoly = BTreeMap::new();
    for c in outer.coeffs().iter().rev() {
        acc = rat_mul(&acc, &inner);
        if !c.is_zero() {
            *acc.entry(vec![0; p.nvars()]).or_insert_with(Rational::zero) += c;
        }
        acc.retain(|_, v| !v.is_zero());
    }
    let mut cache = ConversionCache::default();
    let binomial = cache.binomial_form(&acc, p.nvars()).expect("composition of integer polyfracts is integer valued");
    MultiPolyfract::new(vec![0], p.nvars(), binomial.into_iter().map(|(e, c)| (e, vec![c])))
}

fn lift_slot(p: &MultiPolyfract, i: usize, lift: Lift) -> RatPoly {
    let r = p.codomain[i];
    let mut out: RatPoly = BTreeMap::new();
    let mut expansions: HashMap<usize, RationalPolyUni> = HashMap::new();
    for (e, c) in &p.terms {
        if c[i].is_zero() {
            continue;
        }
        let coeff = Rational::from_integer(lift.apply(&c[i], r));
        let mut term: RatPoly = BTreeMap::from([(vec![0; p.nvars], coeff)]);
        for (j, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let uni = expansions.entry(k).or_insert_with(|| monofract_expansion(k));
            let mut next: RatPoly = BTreeMap::new();
            for (te, tc) in &term {
                for (pow, uc) in uni.coeffs().iter().enumerate() {
                    if uc.is_zero() {
                        continue;
                    }
                    let mut ne = te.clone();
                    ne[j] += pow;
                    *next.entry(ne).or_insert_with(Rational::zero) += tc * uc;
                }
            }
            term = next;
        }
        for (te, tc) in term {
            *out.entry(te).or_insert_with(Rational::zero) += tc;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn rat_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut out: RatPoly = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Caches the binomial expansions of the pure powers `X^k`.
#[derive(Default)]
struct ConversionCache {
    powers: HashMap<usize, Vec<BigInt>>,
}

impl ConversionCache {
    fn power(&mut self, k: usize) -> &[BigInt] {
        self.powers.entry(k).or_insert_with(|| {
            let mut c = vec![Rational::zero(); k + 1];
            c[k] = Rational::one();
            binomial_coefficients_of(&RationalPolyUni::new(c)).expect("X^k is integer valued")
        })
    }

    /// Monomial basis to binomial basis, one variable at a time.
    fn binomial_form(&mut self, poly: &RatPoly, nvars: usize) -> Result<BTreeMap<Exponent, BigInt>> {
        let mut cur = poly.clone();
        for j in 0..nvars {
            let mut next: RatPoly = BTreeMap::new();
            for (e, c) in &cur {
                let conv = self.power(e[j]).to_vec();
                for (i, w) in conv.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    let mut ne = e.clone();
                    ne[j] = i;
                    *next.entry(ne).or_insert_with(Rational::zero) += c * Rational::from_integer(w.clone());
                }
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
        let mut out = BTreeMap::new();
        // report the failing monofract of largest total degree, as the
        // leading-term extraction would meet it first
        let mut bad: Option<usize> = None;
        for (e, c) in cur {
            if !c.is_integer() {
                let d: usize = e.iter().sum();
                bad = Some(bad.map_or(d, |b| b.max(d)));
                continue;
            }
            out.insert(e, c.to_integer());
        }
        match bad {
            Some(degree) => Err(Error::NotIntegerValued { degree }),
            None => Ok(out),
        }
    }
}
