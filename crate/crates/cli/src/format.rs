//! Problem and polynomial files.
//!
//! A problem file lists a map `A -> B` by its values in mixed-radix order
//! of the domain (first coordinate most significant). With several
//! codomain factors each value is the mixed-radix code of the output tuple.
//!
//! ```json
//! {"domain": [3], "codomain": [9], "values": [1, 0, 0]}
//! ```
//!
//! A polynomial file lists `(exponent tuple, coefficient tuple)` pairs.
//! Binomial-basis coefficients are integer strings; monomial-basis
//! coefficients are rational strings such as `"-7/8"`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use polyfract::calculus::{mixed_radix_index, mixed_radix_point, FiniteFn};
use polyfract::exactnum::balanced;
use polyfract::{MultiPolyfract, Rational, RationalPolyMulti};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Num(i64),
    Text(String),
}

impl IntLiteral {
    fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            IntLiteral::Num(v) => Ok(BigInt::from(*v)),
            IntLiteral::Text(s) => s.trim().parse().map_err(|_| CliError::Validation(format!("not an integer: {s:?}"))),
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        match i64::try_from(v) {
            Ok(n) => IntLiteral::Num(n),
            Err(_) => IntLiteral::Text(v.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub domain: Vec<u64>,
    pub codomain: Vec<u64>,
    pub values: Vec<IntLiteral>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Binomial,
    Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    pub basis: Basis,
    pub vars: usize,
    pub codomain: Vec<u64>,
    pub terms: Vec<(Vec<usize>, Vec<String>)>,
}

/// A parsed polynomial file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polynomial {
    Binomial(MultiPolyfract),
    Monomial { poly: RationalPolyMulti, codomain: Vec<u64> },
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<FiniteFn, CliError> {
    let file: ProblemFile = parse_json(text)?;
    problem_to_table(&file)
}

pub fn problem_to_table(file: &ProblemFile) -> Result<FiniteFn, CliError> {
    if let Some(i) = file.domain.iter().position(|&q| q == 0) {
        return Err(CliError::Validation(format!("domain[{i}]: modulus must be at least 1")));
    }
    let size = file
        .domain
        .iter()
        .try_fold(1usize, |acc, &q| acc.checked_mul(q as usize))
        .ok_or_else(|| CliError::Validation("domain too large".into()))?;
    if file.values.len() != size {
        return Err(CliError::Validation(format!("values: expected {size} entries, found {}", file.values.len())));
    }
    let single_integer = file.codomain == [0];
    if !single_integer && file.codomain.contains(&0) {
        return Err(CliError::Validation("codomain: modulus 0 only allowed as the sole factor".into()));
    }
    let order: BigInt = file.codomain.iter().map(|&r| BigInt::from(r)).product();
    let mut values = Vec::with_capacity(size);
    for (i, lit) in file.values.iter().enumerate() {
        let v = lit.to_bigint().map_err(|e| CliError::Validation(format!("values[{i}]: {e}")))?;
        if single_integer {
            values.push(vec![v]);
            continue;
        }
        if v.is_negative() || v >= order {
            return Err(CliError::Validation(format!("values[{i}]: {v} is outside 0..{order}")));
        }
        let code = usize::try_from(&v).map_err(|_| CliError::Validation(format!("values[{i}]: too large")))?;
        values.push(mixed_radix_point(code, &file.codomain).into_iter().map(BigInt::from).collect());
    }
    FiniteFn::new(file.domain.clone(), file.codomain.clone(), values).map_err(CliError::from)
}

/// Problem file for a map.
pub fn table_to_problem(f: &FiniteFn) -> ProblemFile {
    let values = f
        .values()
        .iter()
        .map(|v| {
            if f.codomain() == [0] {
                IntLiteral::from_bigint(&v[0])
            } else {
                let digits: Vec<u64> = v.iter().map(|x| u64::try_from(x).expect("canonical")).collect();
                IntLiteral::Num(mixed_radix_index(&digits, f.codomain()) as i64)
            }
        })
        .collect();
    ProblemFile { domain: f.domain().to_vec(), codomain: f.codomain().to_vec(), values }
}

pub fn emit_problem(f: &FiniteFn) -> String {
    let file = table_to_problem(f);
    let mut out = serde_json::to_string(&file).expect("serializable");
    out.push('\n');
    out
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Validation(format!("not a rational number: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses and validates a polynomial file.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, CliError> {
    let file: PolynomialFile = parse_json(text)?;
    file_to_polynomial(&file)
}

pub fn file_to_polynomial(file: &PolynomialFile) -> Result<Polynomial, CliError> {
    let width = file.codomain.len();
    let mut seen = BTreeSet::new();
    for (i, (e, c)) in file.terms.iter().enumerate() {
        if e.len() != file.vars {
            return Err(CliError::Validation(format!(
                "terms[{i}]: exponent has {} entries, expected {}",
                e.len(),
                file.vars
            )));
        }
        if c.len() != width {
            return Err(CliError::Validation(format!(
                "terms[{i}]: coefficient has {} entries, expected {width}",
                c.len()
            )));
        }
        if !seen.insert(e.clone()) {
            return Err(CliError::Validation(format!("terms[{i}]: duplicate exponent {e:?}")));
        }
    }
    match file.basis {
        Basis::Binomial => {
            let mut terms = Vec::new();
            for (i, (e, c)) in file.terms.iter().enumerate() {
                let coeffs = c
                    .iter()
                    .map(|s| {
                        s.trim()
                            .parse::<BigInt>()
                            .map_err(|_| CliError::Validation(format!("terms[{i}]: not an integer: {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.iter().all(Zero::is_zero) {
                    return Err(CliError::Validation(format!("terms[{i}]: all-zero coefficient")));
                }
                terms.push((e.clone(), coeffs));
            }
            Ok(Polynomial::Binomial(MultiPolyfract::new(file.codomain.clone(), file.vars, terms)?))
        }
        Basis::Monomial => {
            let mut terms = Vec::new();
            for (i, (e, c)) in file.terms.iter().enumerate() {
                let coeffs = c
                    .iter()
                    .map(|s| parse_rational(s).map_err(|err| CliError::Validation(format!("terms[{i}]: {err}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.iter().all(Zero::is_zero) {
                    return Err(CliError::Validation(format!("terms[{i}]: all-zero coefficient")));
                }
                terms.push((e.clone(), coeffs));
            }
            let poly = RationalPolyMulti::new(file.vars, width, terms)?;
            Ok(Polynomial::Monomial { poly, codomain: file.codomain.clone() })
        }
    }
}

/// File form; binomial coefficients use representatives of least absolute
/// value.
pub fn polynomial_to_file(p: &Polynomial) -> PolynomialFile {
    match p {
        Polynomial::Binomial(m) => PolynomialFile {
            basis: Basis::Binomial,
            vars: m.nvars(),
            codomain: m.codomain().to_vec(),
            terms: m
                .terms()
                .iter()
                .map(|(e, c)| {
                    let s = c.iter().zip(m.codomain()).map(|(v, &r)| balanced(v, r).to_string()).collect();
                    (e.clone(), s)
                })
                .collect(),
        },
        Polynomial::Monomial { poly, codomain } => PolynomialFile {
            basis: Basis::Monomial,
            vars: poly.nvars(),
            codomain: codomain.clone(),
            terms: poly.terms().iter().map(|(e, c)| (e.clone(), c.iter().map(format_rational).collect())).collect(),
        },
    }
}

/// Deterministic text form, one term per line, lexicographic exponents.
pub fn emit_polynomial(p: &Polynomial) -> String {
    let file = polynomial_to_file(p);
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"basis\": {},", json(&file.basis));
    let _ = writeln!(out, "  \"vars\": {},", file.vars);
    let _ = writeln!(out, "  \"codomain\": {},", json(&file.codomain));
    if file.terms.is_empty() {
        out.push_str("  \"terms\": []\n");
    } else {
        out.push_str("  \"terms\": [\n");
        for (i, t) in file.terms.iter().enumerate() {
            let sep = if i + 1 == file.terms.len() { "" } else { "," };
            let _ = writeln!(out, "    {}{sep}", json(t));
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}
