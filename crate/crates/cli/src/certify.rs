//! Verification sweeps over small parameter ranges. Each sweep returns a
//! [`Report`] counting checked cases and recording the first failures.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use polyfract::calculus::{
    divisibility_check, hrycaj_periodicity, periodic_on_window, taylor_expand, DivisibilityMode, FiniteFn,
};
use polyfract::classify::{
    all_maps, count_polyfractal, is_polyfractal, polyfractal_maps_brute_force, represent_univariate,
};
use polyfract::exactnum::{factorize, pow_u64, valuation_u64, Residue};
use polyfract::groups::{merge_variables, split_variable, CrtMap, GroupSpec};
use polyfract::lagrange::{
    cofract, degree_bound, extend_information_coeffs, interpolate_prime_power, lagrange_degree, lagrange_polyfract,
    vanishing_threshold,
};
use polyfract::uni::coeffs_from_values;
use polyfract::{MultiPolyfract, UniPolyfract};

const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report { name: name.to_string(), ..Default::default() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn line(&self) -> String {
        if self.ok() {
            format!("{}: ok ({} cases)", self.name, self.cases)
        } else {
            format!("{}: FAILED ({} of {} cases): {}", self.name, self.failed, self.cases, self.failures.join("; "))
        }
    }
}

/// Values `0..base` in every position, as an odometer.
fn advance(digits: &mut [i64], base: i64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Sharp divisibility for integer lifts of maps `Z_{p^α} -> {0..p^β-1}`;
/// exhaustive up to `max_exhaustive` maps, otherwise `samples` random maps.
pub fn divisibility_sweep(params: &[(u64, u32, u32)], max_exhaustive: u64, samples: usize, seed: u64) -> Report {
    let mut report = Report::new("divisibility");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &(p, alpha, beta) in params {
        let q = pow_u64(p, alpha) as usize;
        let top = pow_u64(p, beta) as i64;
        let total = BigInt::from(top).pow(q as u32);
        let check = |v: &[i64], report: &mut Report| {
            let f = FiniteFn::from_i64(vec![q as u64], 0, v).expect("valid table");
            let ok = divisibility_check(&f, beta, DivisibilityMode::Sharp) == Ok(true);
            report.check(ok, || format!("p={p} alpha={alpha} beta={beta} f={v:?}"));
        };
        if total <= BigInt::from(max_exhaustive) {
            let mut v = vec![0i64; q];
            loop {
                check(&v, &mut report);
                if !advance(&mut v, top) {
                    break;
                }
            }
        } else {
            for _ in 0..samples {
                let v: Vec<i64> = (0..q).map(|_| rng.gen_range(0..top)).collect();
                check(&v, &mut report);
            }
        }
    }
    report
}

/// `p^β | (δ choose x)_{p^α}` for `δ` from the threshold up to twice it.
pub fn cofract_tail_sweep(params: &[(u64, u32, u32)]) -> Report {
    let mut report = Report::new("cofract tail");
    for &(p, alpha, beta) in params {
        let q = pow_u64(p, alpha);
        let r = pow_u64(p, beta);
        let t = vanishing_threshold(p, alpha, beta);
        for delta in t..=2 * t {
            for x in 0..q as i64 {
                report.check(cofract(delta, q, r, x).is_zero(), || {
                    format!("p={p} alpha={alpha} beta={beta} delta={delta} x={x}")
                });
            }
        }
    }
    report
}

/// A map `Z_q -> Z_r` assembled from independent random `p`-block maps, so
/// it is always polyfractal.
pub fn random_polyfractal_map(q: u64, r: u64, rng: &mut impl Rng) -> FiniteFn {
    let crt = CrtMap::new(r).expect("finite modulus");
    let blocks: Vec<(u64, Vec<u64>)> = factorize(r)
        .into_iter()
        .map(|(p, beta)| {
            let qa = pow_u64(p, valuation_u64(q, p));
            let rb = pow_u64(p, beta);
            (qa, (0..qa).map(|_| rng.gen_range(0..rb)).collect())
        })
        .collect();
    FiniteFn::from_fn(vec![q], vec![r], |x| {
        let parts: Vec<BigInt> = blocks.iter().map(|(qa, g)| BigInt::from(g[(x[0] % qa) as usize])).collect();
        vec![crt.inverse_ints(&parts)]
    })
    .expect("valid table")
}

/// A random `q`-periodic polyfract over `Z_r`.
pub fn random_periodic_polyfract(q: u64, r: u64, rng: &mut impl Rng) -> UniPolyfract {
    if r == 1 {
        return UniPolyfract::zero(1);
    }
    let f = random_polyfractal_map(q, r, rng);
    represent_univariate(&f).expect("blockwise maps are polyfractal").0
}

/// Coefficient criterion against direct periodicity for random polyfracts
/// with `r <= max_r`, degree `<= max_deg`, `q <= max_q`. Half of the samples
/// are periodic by construction (truncated to the degree cap).
pub fn hrycaj_sweep(samples: usize, max_r: u64, max_deg: usize, max_q: u64, seed: u64) -> (Report, u64) {
    let mut report = Report::new("periodicity criterion");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut periodic = 0;
    for i in 0..samples {
        let r = rng.gen_range(1..=max_r);
        let q = rng.gen_range(1..=max_q);
        let p = if i % 2 == 0 {
            let deg = rng.gen_range(0..=max_deg);
            let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..r as i64)).collect();
            UniPolyfract::from_i64(r, &c)
        } else {
            let full = random_periodic_polyfract(q, r, &mut rng);
            let keep = full.coeffs().len().min(max_deg + 1);
            UniPolyfract::new(r, full.coeffs()[..keep].to_vec())
        };
        let criterion = hrycaj_periodicity(&p, q);
        let direct = periodic_on_window(&p, q);
        periodic += direct as u64;
        report.check(criterion == direct, || format!("r={r} q={q} P={:?}", p.coeffs()));
    }
    (report, periodic)
}

/// Decision against the exhaustive oracle and the closed-form count for
/// every map `Z_q -> Z_r`, `q <= max_q`, `r <= max_r`.
pub fn classification_sweep(max_q: u64, max_r: u64, max_search: u64) -> Report {
    let pairs: Vec<(u64, u64)> = (1..=max_q).flat_map(|q| (1..=max_r).map(move |r| (q, r))).collect();
    let reports: Vec<Report> = pairs
        .par_iter()
        .map(|&(q, r)| {
            let mut report = Report::new("classification");
            let oracle = match polyfractal_maps_brute_force(q, r, max_search) {
                Ok(set) => set,
                Err(e) => {
                    report.check(false, || format!("q={q} r={r}: oracle {e}"));
                    return report;
                }
            };
            let maps = all_maps(&[q], &[r], u64::MAX).expect("small");
            let mut count = 0u64;
            for f in &maps {
                let key: Vec<u64> = f.values().iter().map(|v| u64::try_from(&v[0]).expect("canonical")).collect();
                let verdict = is_polyfractal(f).expect("finite").polyfractal;
                count += verdict as u64;
                report.check(verdict == oracle.contains(&key), || format!("q={q} r={r} f={key:?}"));
            }
            let expected = count_polyfractal(&GroupSpec::new(vec![q]), &GroupSpec::new(vec![r])).expect("finite");
            report.check(BigInt::from(count) == expected && oracle.len() as u64 == count, || {
                format!("q={q} r={r}: counted {count}, oracle {}, formula {expected}", oracle.len())
            });
            report
        })
        .collect();
    let mut total = Report::new("classification");
    for r in reports {
        total.merge(r);
    }
    total
}

/// Every map `Z_{p^{α_1}} x ... -> Z_{p^β}` interpolates within the total
/// degree bound, and some map attains it.
pub fn degree_bound_sweep(cases: &[(u64, Vec<u32>, u32)]) -> Report {
    let mut report = Report::new("degree bound");
    for (p, alphas, beta) in cases {
        let domain: Vec<u64> = alphas.iter().map(|&a| pow_u64(*p, a)).collect();
        let r = pow_u64(*p, *beta);
        let bound = degree_bound(*p, *beta, alphas).expect("valid parameters");
        let mut attained = false;
        for f in all_maps(&domain, &[r], 1 << 22).expect("small") {
            let deg = interpolate_prime_power(&f).expect("p-groups").total_degree().unwrap_or(0);
            attained |= deg == bound;
            report.check(deg <= bound, || format!("p={p} alphas={alphas:?} beta={beta}: degree {deg} > {bound}"));
        }
        report.check(attained, || format!("p={p} alphas={alphas:?} beta={beta}: bound {bound} never attained"));
    }
    report
}

/// Taylor expansion equals interpolation; information coefficients extend
/// back to the same polyfract.
pub fn taylor_interpolation_sweep(params: &[(u64, u32, u32)]) -> Report {
    let mut report = Report::new("taylor/interpolation");
    for &(p, alpha, beta) in params {
        let q = pow_u64(p, alpha);
        let r = pow_u64(p, beta);
        let d = lagrange_degree(p, alpha, beta);
        for f in all_maps(&[q], &[r], 1 << 22).expect("small") {
            let interp = interpolate_prime_power(&f).expect("p-groups").to_uni().expect("one variable");
            let taylor = taylor_expand(&f, d);
            report.check(taylor.as_ref() == Ok(&interp), || format!("p={p} alpha={alpha} beta={beta} {f:?}"));
            let values: Vec<Residue> = f.values().iter().map(|v| Residue::new(v[0].clone(), r)).collect();
            let info = coeffs_from_values(&values).expect("one modulus");
            let extended = extend_information_coeffs(&info, p, alpha, beta);
            report.check(extended.as_ref() == Ok(&interp), || {
                format!("p={p} alpha={alpha} beta={beta}: extension of {info:?}")
            });
        }
    }
    report
}

/// Split-then-merge is the identity and evaluation commutes with the
/// Chinese remainder coordinates, for random admissible polyfracts.
pub fn split_sweep(samples: usize, seed: u64) -> Report {
    let mut report = Report::new("splitting");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let q1 = rng.gen_range(1..=9u64);
        let q2 = rng.gen_range(1..=9u64);
        let r1 = rng.gen_range(2..=9u64);
        let r2 = rng.gen_range(2..=9u64);
        if polyfract::exactnum::gcd_u64(q1, r2) != 1 || polyfract::exactnum::gcd_u64(q2, r1) != 1 {
            continue;
        }
        done += 1;
        let s1 = random_periodic_polyfract(q1 * q2, r1, &mut rng);
        let s2 = random_periodic_polyfract(q1 * q2, r2, &mut rng);
        let p = MultiPolyfract::from_slots(&[MultiPolyfract::from_uni(&s1), MultiPolyfract::from_uni(&s2)])
            .expect("same arity");
        let split = match split_variable(&p, q1, q2) {
            Ok(s) => s,
            Err(e) => {
                report.check(false, || format!("q=({q1},{q2}) r=({r1},{r2}): {e}"));
                continue;
            }
        };
        report.check(merge_variables(&split).as_ref() == Ok(&p), || format!("merge q=({q1},{q2}) r=({r1},{r2})"));
        for x in 0..(q1 * q2) as i64 {
            let lhs = split.eval_i64(&[x % q1 as i64, x % q2 as i64]).expect("arity");
            let rhs = p.eval_i64(&[x]).expect("arity");
            report.check(lhs == rhs, || format!("eval x={x} q=({q1},{q2}) r=({r1},{r2})"));
        }
    }
    report
}

fn random_uni(rng: &mut impl Rng, r: u64, max_deg: usize) -> UniPolyfract {
    let deg = rng.gen_range(0..=max_deg);
    let c: Vec<i64> =
        (0..=deg).map(|_| if r == 0 { rng.gen_range(-30..30) } else { rng.gen_range(0..r as i64) }).collect();
    UniPolyfract::from_i64(r, &c)
}

/// Ring axioms for addition and multiplication, as polyfracts and pointwise.
pub fn ring_law_sweep(samples: usize, seed: u64) -> Report {
    let mut report = Report::new("ring laws");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let r = rng.gen_range(0..=16u64);
        let (a, b, c) = (random_uni(&mut rng, r, 6), random_uni(&mut rng, r, 6), random_uni(&mut rng, r, 6));
        let add = |x: &UniPolyfract, y: &UniPolyfract| x.add(y).expect("same modulus");
        let mul = |x: &UniPolyfract, y: &UniPolyfract| x.mul(y).expect("same modulus");
        let tag = || format!("r={r} a={:?} b={:?} c={:?}", a.coeffs(), b.coeffs(), c.coeffs());
        report.check(add(&add(&a, &b), &c) == add(&a, &add(&b, &c)), tag);
        report.check(add(&a, &b) == add(&b, &a), tag);
        report.check(mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)), tag);
        report.check(mul(&a, &b) == mul(&b, &a), tag);
        report.check(mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c)), tag);
        let ab = mul(&a, &b);
        let bc = add(&b, &c);
        let pointwise = (-8..20i64).all(|x| {
            let (va, vb, vc) = (a.eval_i64(x), b.eval_i64(x), c.eval_i64(x));
            ab.eval_i64(x) == va.checked_mul(&vb).expect("same modulus")
                && bc.eval_i64(x) == vb.checked_add(&vc).expect("same modulus")
        });
        report.check(pointwise, tag);
    }
    report
}

/// Reducing Lagrange coefficients from `p^{β'}` to `p^β` gives the Lagrange
/// polyfract mod `p^β`, for `β < β' <= max_beta`; reduction respects products.
pub fn projection_sweep(max_beta: u32, seed: u64) -> Report {
    let mut report = Report::new("projection");
    for p in [2u64, 3, 5] {
        for alpha in 1..=2u32 {
            for big in 2..=max_beta {
                for small in 1..big {
                    for x0 in 0..pow_u64(p, alpha) as i64 {
                        let hi = lagrange_polyfract(p, alpha, big, x0).expect("prime");
                        let lo = lagrange_polyfract(p, alpha, small, x0).expect("prime");
                        report.check(hi.project(pow_u64(p, small)).as_ref() == Ok(&lo), || {
                            format!("p={p} alpha={alpha} beta'={big} beta={small} x0={x0}")
                        });
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let small = rng.gen_range(1..=6u64);
        let big = small * rng.gen_range(1..=4u64);
        let (a, b) = (random_uni(&mut rng, big, 5), random_uni(&mut rng, big, 5));
        let lhs = a.mul(&b).expect("same modulus").project(small).expect("divisor");
        let rhs = a.project(small).expect("divisor").mul(&b.project(small).expect("divisor")).expect("same modulus");
        report.check(lhs == rhs, || format!("{big} -> {small}"));
    }
    report
}

/// The default battery run by the `certify` command.
pub fn default_battery(seed: u64, max_search: u64) -> Vec<Report> {
    vec![
        divisibility_sweep(&[(2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 1, 2)], max_search, 1000, seed),
        cofract_tail_sweep(&[(2, 1, 1), (2, 2, 2), (3, 1, 2), (3, 2, 1)]),
        hrycaj_sweep(1000, 16, 12, 8, seed).0,
        classification_sweep(4, 4, max_search),
        degree_bound_sweep(&[(2, vec![1], 2), (3, vec![1], 2), (2, vec![1, 1], 1)]),
        taylor_interpolation_sweep(&[(2, 1, 2), (3, 1, 2)]),
        split_sweep(100, seed),
        ring_law_sweep(100, seed),
        projection_sweep(3, seed),
    ]
}
