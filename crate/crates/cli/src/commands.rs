//! Subcommand definitions and their implementations.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use polyfract::calculus::{map_degree, taylor_expand_multi, FiniteFn};
use polyfract::classify::{brute_force_polyfractal, classify, represent, represent_univariate, Counterexample};
use polyfract::groups::{GroupSpec, PrimaryDecomposition};
use polyfract::lagrange::{cofract, interpolate_prime_power, lagrange_polyfract};
use polyfract::{MultiPolyfract, RationalPolyMulti};

use crate::certify::default_battery;
use crate::format::{emit_polynomial, parse_polynomial, parse_problem, Basis, Polynomial};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "polyfract", version, about = "Polyfracts and polyfractal maps between finite abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Reduce results modulo this number (eval).
    #[arg(long, global = true)]
    pub modulus: Option<u64>,
    /// Replace the computed degree bound in Taylor expansion.
    #[arg(long, global = true)]
    pub degree_bound_override: Option<usize>,
    /// Largest exhaustive search to attempt.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_search: u64,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a map is polyfractal.
    Classify {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
        /// Cross-check against exhaustive search (cyclic groups only).
        #[arg(long)]
        oracle: bool,
    },
    /// Print a polyfract inducing a polyfractal map.
    Represent {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Basis::Binomial)]
        basis: Basis,
        /// Use a single variable over the cyclic domain.
        #[arg(long)]
        merge: bool,
    },
    /// Interpolate a map between p-groups.
    Interp {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Basis::Binomial)]
        basis: Basis,
    },
    /// Evaluate a polynomial file at a point.
    Eval {
        file: PathBuf,
        #[arg(allow_negative_numbers = true, required = true)]
        point: Vec<String>,
    },
    /// Lagrange polyfract of the point x0 on Z_{p^alpha} into Z_{p^beta}.
    Lagrange {
        p: u64,
        alpha: u32,
        beta: u32,
        #[arg(allow_negative_numbers = true)]
        x0: i64,
        #[arg(long, value_enum, default_value_t = Basis::Binomial)]
        basis: Basis,
    },
    /// Cofract (d choose x)_q reduced mod r.
    Cofract {
        d: usize,
        q: u64,
        r: u64,
        #[arg(allow_negative_numbers = true)]
        x: i64,
    },
    /// Taylor expansion of a map from its iterated differences at zero.
    Taylor {
        file: PathBuf,
        /// Expansion degree for every variable; detected when absent.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Number of polyfractal maps between two groups.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        domain: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        codomain: Vec<u64>,
    },
    /// Run the built-in verification battery.
    Certify,
}

/// Result of a successful run: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::Validation(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn in_basis(p: MultiPolyfract, basis: Basis) -> Polynomial {
    match basis {
        Basis::Binomial => Polynomial::Binomial(p),
        Basis::Monomial => {
            let codomain = p.codomain().to_vec();
            Polynomial::Monomial { poly: p.to_rational(), codomain }
        }
    }
}

fn layout_lines(out: &mut String, label: &str, d: &PrimaryDecomposition) {
    for (i, f) in d.factors.iter().enumerate() {
        let _ = writeln!(out, "{label} {i}: Z_{} (prime {}, factor {})", f.power, f.prime, f.source);
    }
}

fn counterexample_lines(out: &mut String, ce: &Counterexample) {
    let show = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let point = |v: &[u64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "counterexample: prime {}", ce.prime);
    let _ = writeln!(out, "x: ({}) -> ({})", point(&ce.x), show(&ce.fx));
    let _ = writeln!(out, "y: ({}) -> ({})", point(&ce.y), show(&ce.fy));
}

fn run_classify(f: &FiniteFn, oracle: bool, max_search: u64) -> Result<Outcome, CliError> {
    let res = classify(f)?;
    let mut out = String::new();
    let _ = writeln!(out, "polyfractal: {}", if res.polyfractal { "yes" } else { "no" });
    if let Some(ce) = &res.counterexample {
        counterexample_lines(&mut out, ce);
    }
    if let Some(w) = &res.witness {
        let primes = w.primes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "primes: {primes}");
        layout_lines(&mut out, "variable", &w.domain);
        layout_lines(&mut out, "slot", &w.codomain);
        out.push_str(&emit_polynomial(&Polynomial::Binomial(w.polyfract.clone())));
    }
    let mut code = 0;
    if oracle {
        let agrees = brute_force_polyfractal(f, max_search)? == res.polyfractal;
        let _ = writeln!(out, "oracle: {}", if agrees { "agrees" } else { "disagrees" });
        if !agrees {
            code = 3;
        }
    }
    Ok(Outcome { stdout: out, code })
}

fn run_represent(f: &FiniteFn, basis: Basis, merge: bool) -> Result<Outcome, CliError> {
    let poly = if merge { MultiPolyfract::from_uni(&represent_univariate(f)?.0) } else { represent(f)?.polyfract };
    Ok(Outcome::ok(emit_polynomial(&in_basis(poly, basis))))
}

fn parse_point(point: &[String]) -> Result<Vec<BigInt>, CliError> {
    point
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| CliError::Validation(format!("not an integer: {s:?}"))))
        .collect()
}

fn run_eval(poly: &Polynomial, x: &[BigInt], modulus: Option<u64>) -> Result<Outcome, CliError> {
    let values: Vec<String> = match poly {
        Polynomial::Binomial(p) => {
            let p = match modulus {
                Some(m) => p.project(vec![m; p.codomain().len()])?,
                None => p.clone(),
            };
            p.eval(x)?.iter().map(|r| r.value().to_string()).collect()
        }
        Polynomial::Monomial { poly, codomain } => eval_monomial(poly, codomain, x, modulus)?,
    };
    Ok(Outcome::ok(format!("{}\n", values.join(" "))))
}

fn eval_monomial(
    poly: &RationalPolyMulti,
    codomain: &[u64],
    x: &[BigInt],
    modulus: Option<u64>,
) -> Result<Vec<String>, CliError> {
    let raw = poly.eval(x)?;
    raw.iter()
        .zip(codomain)
        .map(|(v, &r)| {
            let r = modulus.unwrap_or(r);
            if r == 0 {
                return Ok(crate::format::format_rational(v));
            }
            if !v.is_integer() {
                return Err(CliError::Precondition(format!(
                    "value {v} is not an integer and cannot be reduced mod {r}"
                )));
            }
            Ok(polyfract::exactnum::reduce(&v.to_integer(), r).to_string())
        })
        .collect()
}

fn run_taylor(f: &FiniteFn, degree: Option<usize>, bound_override: Option<usize>) -> Result<Outcome, CliError> {
    let bounds = (0..f.domain().len())
        .map(|i| match degree {
            Some(d) => Ok(d),
            None => map_degree(f, i, bound_override).map(|d| d.unwrap_or(0)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = taylor_expand_multi(f, &bounds)?;
    Ok(Outcome::ok(emit_polynomial(&Polynomial::Binomial(p))))
}

fn run_count(domain: &[u64], codomain: &[u64]) -> Result<Outcome, CliError> {
    let (a, b) = (GroupSpec::new(domain.to_vec()), GroupSpec::new(codomain.to_vec()));
    if !a.is_finite() || !b.is_finite() {
        return Err(CliError::Validation("count needs finite groups".into()));
    }
    Ok(Outcome::ok(format!("{}\n", polyfract::classify::count_polyfractal(&a, &b)?)))
}

fn run_certify(seed: u64, max_search: u64) -> Outcome {
    let reports = default_battery(seed, max_search);
    let mut out = String::new();
    for r in &reports {
        let _ = writeln!(out, "{}", r.line());
    }
    let ok = reports.iter().all(|r| r.ok());
    let _ = writeln!(out, "certify: {}", if ok { "PASS" } else { "FAIL" });
    Outcome { stdout: out, code: if ok { 0 } else { 3 } }
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify { file, oracle } => {
            run_classify(&parse_problem(&read_input(file)?)?, *oracle, cli.max_search)
        }
        Command::Represent { file, basis, merge } => run_represent(&parse_problem(&read_input(file)?)?, *basis, *merge),
        Command::Interp { file, basis } => {
            let p = interpolate_prime_power(&parse_problem(&read_input(file)?)?)?;
            Ok(Outcome::ok(emit_polynomial(&in_basis(p, *basis))))
        }
        Command::Eval { file, point } => {
            let poly = parse_polynomial(&read_input(file)?)?;
            run_eval(&poly, &parse_point(point)?, cli.modulus)
        }
        Command::Lagrange { p, alpha, beta, x0, basis } => {
            let l = lagrange_polyfract(*p, *alpha, *beta, *x0)?;
            Ok(Outcome::ok(emit_polynomial(&in_basis(MultiPolyfract::from_uni(&l), *basis))))
        }
        Command::Cofract { d, q, r, x } => {
            let c = cofract(*d, *q, *r, *x);
            Ok(Outcome::ok(format!("{}\n", c.value())))
        }
        Command::Taylor { file, degree } => {
            run_taylor(&parse_problem(&read_input(file)?)?, *degree, cli.degree_bound_override)
        }
        Command::Count { domain, codomain } => run_count(domain, codomain),
        Command::Certify => Ok(run_certify(cli.seed, cli.max_search)),
    }
}

/// Parses arguments, runs, and returns text for stdout, text for stderr and
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (e.to_string(), String::new(), 0) } else { (String::new(), e.to_string(), 2) };
        }
    };
    match run(&cli) {
        Ok(o) => (o.stdout, String::new(), o.code),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
