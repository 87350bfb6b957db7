//! Finite difference calculus on maps between finite products of cyclic groups.
//!
//! A [`FiniteFn`] is a dense value table of a map
//! `Z_{q_1} x ... x Z_{q_n} -> Z_{r_1} x ... x Z_{r_t}`; differences wrap
//! around the cyclic domain. Codomain modulus 0 stands for `Z`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binom_row, factorize, pow_u64, prime_power, reduce, valuation_u64, Residue};
use crate::multi::MultiPolyfract;
use crate::uni::UniPolyfract;

/// Index of `x` in mixed radix with the first coordinate most significant.
pub fn mixed_radix_index(x: &[u64], moduli: &[u64]) -> usize {
    x.iter().zip(moduli).fold(0usize, |acc, (&xi, &q)| acc * q as usize + xi as usize)
}

/// Inverse of [`mixed_radix_index`].
pub fn mixed_radix_point(mut index: usize, moduli: &[u64]) -> Vec<u64> {
    let mut out = vec![0; moduli.len()];
    for (slot, &q) in out.iter_mut().zip(moduli).rev() {
        *slot = (index % q as usize) as u64;
        index /= q as usize;
    }
    out
}

/// Dense value table of a map between finite products of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFn {
    domain: Vec<u64>,
    codomain: Vec<u64>,
    values: Vec<Vec<BigInt>>,
}

impl FiniteFn {
    pub fn new(domain: Vec<u64>, codomain: Vec<u64>, values: Vec<Vec<BigInt>>) -> Result<Self> {
        if domain.contains(&0) {
            return Err(Error::BadDomain("domain moduli must be at least 1".into()));
        }
        let size = table_size(&domain)?;
        if values.len() != size {
            return Err(Error::LengthMismatch { expected: size, found: values.len() });
        }
        let values = values
            .into_iter()
            .map(|v| {
                if v.len() != codomain.len() {
                    return Err(Error::ArityMismatch { expected: codomain.len(), found: v.len() });
                }
                Ok(v.iter().zip(&codomain).map(|(x, &r)| reduce(x, r)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteFn { domain, codomain, values })
    }

    /// Tabulates `f` over the domain in mixed-radix order.
    pub fn from_fn(domain: Vec<u64>, codomain: Vec<u64>, mut f: impl FnMut(&[u64]) -> Vec<BigInt>) -> Result<Self> {
        let size = table_size(&domain)?;
        let values = (0..size).map(|i| f(&mixed_radix_point(i, &domain))).collect();
        FiniteFn::new(domain, codomain, values)
    }

    /// One-slot map given by its values.
    pub fn from_i64(domain: Vec<u64>, modulus: u64, values: &[i64]) -> Result<Self> {
        FiniteFn::new(domain, vec![modulus], values.iter().map(|&v| vec![BigInt::from(v)]).collect())
    }

    /// The map induced on `domain` by a polyfract that is periodic there.
    pub fn from_polyfract(p: &MultiPolyfract, domain: Vec<u64>) -> Result<Self> {
        if domain.len() != p.nvars() {
            return Err(Error::ArityMismatch { expected: p.nvars(), found: domain.len() });
        }
        let codomain = p.codomain().to_vec();
        let size = table_size(&domain)?;
        let values = (0..size)
            .map(|i| {
                let x: Vec<BigInt> = mixed_radix_point(i, &domain).into_iter().map(BigInt::from).collect();
                p.eval(&x).map(|v| v.into_iter().map(|r| r.value().clone()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteFn::new(domain, codomain, values)
    }

    pub fn domain(&self) -> &[u64] {
        &self.domain
    }

    pub fn codomain(&self) -> &[u64] {
        &self.codomain
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: &[u64]) -> &[BigInt] {
        let wrapped: Vec<u64> = x.iter().zip(&self.domain).map(|(v, q)| v % q).collect();
        &self.values[mixed_radix_index(&wrapped, &self.domain)]
    }

    pub fn get_residues(&self, x: &[u64]) -> Vec<Residue> {
        self.get(x).iter().zip(&self.codomain).map(|(v, &r)| Residue::new(v.clone(), r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// Pointwise combination `a f(x) + b g(x)`.
    pub fn combine(&self, other: &FiniteFn, a: i64, b: i64) -> Result<FiniteFn> {
        if self.domain != other.domain {
            return Err(Error::BadDomain("domains differ".into()));
        }
        if self.codomain != other.codomain {
            return Err(Error::BadCodomain("codomains differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| u.iter().zip(v).map(|(x, y)| x * a + y * b).collect())
            .collect();
        FiniteFn::new(self.domain.clone(), self.codomain.clone(), values)
    }

    /// Values of the single codomain slot `i`.
    pub fn slot(&self, i: usize) -> FiniteFn {
        FiniteFn {
            domain: self.domain.clone(),
            codomain: vec![self.codomain[i]],
            values: self.values.iter().map(|v| vec![v[i].clone()]).collect(),
        }
    }
}

pub(crate) fn table_size(domain: &[u64]) -> Result<usize> {
    domain.iter().try_fold(1usize, |acc, &q| {
        acc.checked_mul(q as usize).ok_or(Error::TooLarge { size: format!("{domain:?}"), limit: usize::MAX as u64 })
    })
}

/// Shift `T`, forward difference `Δ` or stride difference `Δ_q = T^q - Id`,
/// each acting in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOp {
    Shift { var: usize },
    Forward { var: usize },
    Stride { var: usize, stride: u64 },
}

impl DiffOp {
    fn var(&self) -> usize {
        match *self {
            DiffOp::Shift { var } | DiffOp::Forward { var } | DiffOp::Stride { var, .. } => var,
        }
    }
}

pub fn apply_diff(op: DiffOp, f: &FiniteFn) -> Result<FiniteFn> {
    let var = op.var();
    let n = f.domain.len();
    if var >= n {
        return Err(Error::BadVariableIndex { index: var, nvars: n });
    }
    let (step, subtract) = match op {
        DiffOp::Shift { .. } => (1, false),
        DiffOp::Forward { .. } => (1, true),
        DiffOp::Stride { stride, .. } => {
            if stride == 0 {
                return Err(Error::PreconditionFailed("stride must be at least 1".into()));
            }
            (stride, true)
        }
    };
    let q = f.domain[var];
    let values = (0..f.len())
        .map(|i| {
            let mut x = mixed_radix_point(i, &f.domain);
            x[var] = (x[var] + step % q) % q;
            let shifted = &f.values[mixed_radix_index(&x, &f.domain)];
            if subtract {
                shifted.iter().zip(&f.values[i]).map(|(a, b)| a - b).collect()
            } else {
                shifted.clone()
            }
        })
        .collect();
    FiniteFn::new(f.domain.clone(), f.codomain.clone(), values)
}

/// `op` applied `times` times.
pub fn apply_diff_pow(op: DiffOp, f: &FiniteFn, times: usize) -> Result<FiniteFn> {
    let mut g = f.clone();
    for _ in 0..times {
        g = apply_diff(op, &g)?;
    }
    Ok(g)
}

/// `sum_x f(x)`, slot by slot.
pub fn value_sum(f: &FiniteFn) -> Vec<Residue> {
    (0..f.codomain.len())
        .map(|i| {
            let s: BigInt = f.values.iter().map(|v| &v[i]).sum();
            Residue::new(s, f.codomain[i])
        })
        .collect()
}

/// Taylor expansion `f = sum_{δ<=d} Δ^δ f(0) C(X, δ)` of a one-variable,
/// one-slot map with `Δ^{d+1} f ≡ 0`.
pub fn taylor_expand(f: &FiniteFn, d: usize) -> Result<UniPolyfract> {
    if f.domain.len() != 1 || f.codomain.len() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: f.domain.len().max(f.codomain.len()) });
    }
    taylor_expand_multi(f, &[d])?.slot(0).to_uni()
}

/// Multivariate Taylor expansion with per-variable bounds `d_j`, requiring
/// `Δ_1^{d_1+1} ... Δ_n^{d_n+1} f ≡ 0`.
pub fn taylor_expand_multi(f: &FiniteFn, bounds: &[usize]) -> Result<MultiPolyfract> {
    let n = f.domain.len();
    if bounds.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: bounds.len() });
    }
    let mut top = f.clone();
    for (var, &d) in bounds.iter().enumerate() {
        top = apply_diff_pow(DiffOp::Forward { var }, &top, d + 1)?;
    }
    if !top.is_zero() {
        return Err(Error::PreconditionFailed(format!(
            "iterated difference with exponents {:?} does not vanish",
            bounds.iter().map(|d| d + 1).collect::<Vec<_>>()
        )));
    }
    let mut terms = Vec::new();
    let origin = vec![0u64; n];
    collect_taylor(f, bounds, 0, &mut Vec::new(), &origin, &mut terms)?;
    MultiPolyfract::new(f.codomain.clone(), n, terms)
}

fn collect_taylor(
    g: &FiniteFn,
    bounds: &[usize],
    var: usize,
    prefix: &mut Vec<usize>,
    origin: &[u64],
    out: &mut Vec<(Vec<usize>, Vec<BigInt>)>,
) -> Result<()> {
    if var == bounds.len() {
        out.push((prefix.clone(), g.get(origin).to_vec()));
        return Ok(());
    }
    let mut cur = g.clone();
    for k in 0..=bounds[var] {
        prefix.push(k);
        collect_taylor(&cur, bounds, var + 1, prefix, origin, out)?;
        prefix.pop();
        if k < bounds[var] {
            cur = apply_diff(DiffOp::Forward { var }, &cur)?;
        }
    }
    Ok(())
}

/// Largest partial degree a polyfractal map can have in a variable over
/// `Z_q`, given the codomain moduli.
pub fn partial_degree_bound(q: u64, codomain: &[u64]) -> usize {
    codomain
        .iter()
        .flat_map(|&r| factorize(r))
        .map(|(p, beta)| {
            let alpha = valuation_u64(q, p);
            if alpha == 0 {
                0
            } else {
                let pa1 = pow_u64(p, alpha - 1);
                (pa1 * p - 1 + (beta as u64 - 1) * (p - 1) * pa1) as usize
            }
        })
        .max()
        .unwrap_or(0)
}

/// Partial degree `deg_i(f) = min{δ : Δ_i^δ f ≡ 0} - 1`, or `None` for `f ≡ 0`.
///
/// The search stops one past the degree bound (or `bound_override`) and
/// reports [`Error::NotAnnihilated`] beyond it.
pub fn map_degree(f: &FiniteFn, var: usize, bound_override: Option<usize>) -> Result<Option<usize>> {
    let n = f.domain.len();
    if var >= n {
        return Err(Error::BadVariableIndex { index: var, nvars: n });
    }
    let limit = bound_override.unwrap_or_else(|| partial_degree_bound(f.domain[var], &f.codomain)) + 1;
    let mut g = f.clone();
    for delta in 0..=limit {
        if g.is_zero() {
            return Ok(delta.checked_sub(1));
        }
        g = apply_diff(DiffOp::Forward { var }, &g)?;
    }
    Err(Error::NotAnnihilated { bound: limit })
}

/// Periodicity criterion on coefficients: `P` is `q`-periodic iff
/// `sum_{j=1..q} C(q, j) P_{δ+j} = 0` for every `δ`.
pub fn hrycaj_periodicity(p: &UniPolyfract, q: u64) -> bool {
    let Some(deg) = p.degree() else {
        return true;
    };
    let weights = binom_row(&BigInt::from(q), q as usize);
    let coeffs = p.coeffs();
    (0..=deg).all(|delta| {
        let s: BigInt = (1..=q as usize).filter_map(|j| coeffs.get(delta + j).map(|c| c * &weights[j])).sum();
        reduce(&s, p.modulus()).is_zero()
    })
}

/// Direct check of `P(x + q) = P(x)` for `x` in `0..=deg(P) + q`.
pub fn periodic_on_window(p: &UniPolyfract, q: u64) -> bool {
    let top = p.degree().unwrap_or(0) as i64 + q as i64;
    (0..=top).all(|x| p.eval_i64(x + q as i64) == p.eval_i64(x))
}

/// Which divisibility statement [`divisibility_check`] certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisibilityMode {
    /// `p^β | Δ^{(β(p-1)+1) p^{α-1}} f`
    Sharp,
    /// `p^β | Δ^{β(p^α-1)+1} f`
    Iterated,
    /// `p | Δ^{p^α-1} f` for `f` with vanishing value sum; `β` is ignored.
    SingleStep,
}

/// Exponent of `Δ` used by `mode` for `Z_{p^α}` and `β`.
pub fn divisibility_exponent(p: u64, alpha: u32, beta: u32, mode: DivisibilityMode) -> usize {
    let pa = pow_u64(p, alpha);
    let b = beta as u64;
    (match mode {
        DivisibilityMode::Sharp => (b * (p - 1) + 1) * pow_u64(p, alpha - 1),
        DivisibilityMode::Iterated => b * (pa - 1) + 1,
        DivisibilityMode::SingleStep => pa - 1,
    }) as usize
}

/// Certifies a prime-power divisibility of iterated differences of an
/// integer-valued map on `Z_{p^α}`.
pub fn divisibility_check(f: &FiniteFn, beta: u32, mode: DivisibilityMode) -> Result<bool> {
    let [q] = f.domain[..] else {
        return Err(Error::BadDomain("expected a single cyclic factor".into()));
    };
    let Some((p, alpha)) = prime_power(q) else {
        return Err(Error::BadDomain(format!("{q} is not a prime power")));
    };
    if f.codomain != [0] {
        return Err(Error::BadCodomain("expected integer values (modulus 0)".into()));
    }
    let (exponent, divisor) = match mode {
        DivisibilityMode::SingleStep => {
            if !value_sum(f)[0].is_zero() {
                return Err(Error::PreconditionFailed("value sum does not vanish".into()));
            }
            (divisibility_exponent(p, alpha, beta, mode), BigInt::from(p))
        }
        _ => {
            if beta == 0 {
                return Ok(true);
            }
            (divisibility_exponent(p, alpha, beta, mode), num_traits::pow(BigInt::from(p), beta as usize))
        }
    };
    let g = apply_diff_pow(DiffOp::Forward { var: 0 }, f, exponent)?;
    Ok(g.values.iter().all(|v| (&v[0] % &divisor).is_zero()))
}

/// `Δ_1^{δ_1} ... Δ_n^{δ_n} f(0)` computed from values only, by the
/// alternating binomial sum.
pub fn iterated_difference_at_zero(f: &FiniteFn, delta: &[usize]) -> Result<Vec<BigInt>> {
    let n = f.domain.len();
    if delta.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: delta.len() });
    }
    let rows: Vec<Vec<BigInt>> = delta.iter().map(|&d| binom_row(&BigInt::from(d), d)).collect();
    let mut acc = vec![BigInt::zero(); f.codomain.len()];
    let grid = crate::multi::GridSpec::new(delta.to_vec());
    for i in grid.points() {
        let mut w = BigInt::one();
        let mut odd = false;
        for (j, &ij) in i.iter().enumerate() {
            w *= &rows[j][ij];
            odd ^= (delta[j] - ij) % 2 == 1;
        }
        let x: Vec<u64> = i.iter().map(|&v| v as u64).collect();
        for (a, v) in acc.iter_mut().zip(f.get(&x)) {
            if odd {
                *a -= &w * v;
            } else {
                *a += &w * v;
            }
        }
    }
    Ok(acc.iter().zip(&f.codomain).map(|(v, &r)| reduce(v, r)).collect())
}
