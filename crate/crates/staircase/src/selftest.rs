//! Seeded randomized property suites, runnable from the command line.
//!
//! Every case draws fresh random ideals and factorizations and runs all
//! suites on them. A failing input is shrunk greedily before it is reported.

use std::time::Duration;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staircase_core::{
    truncate_factorization, ClosureOracle, Factorization, LatticePoint, MonomialIdeal, Slope,
};

use crate::json::{from_json, to_json};
use crate::text::{format_factorization, format_generators, parse_factorization, parse_ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub cases: u32,
    /// Depth of the sumset oracle.
    pub r_max: u32,
    /// Replace the closure under test by a broken one, to check that the
    /// suites notice.
    pub inject_fault: bool,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 1,
            cases: 200,
            r_max: 128,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: u32,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: u32,
    pub suite: &'static str,
    /// Shrunk input together with what went wrong on it.
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub suites: Vec<SuiteOutcome>,
    /// Cases on which every suite passed.
    pub passed: u32,
    pub failure: Option<Failure>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.passed == self.config.cases
    }

    /// Deterministic summary: depends only on the configuration.
    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut out = format!("seed {}, cases {}, rmax {}\n", c.seed, c.cases, c.r_max);
        for s in &self.suites {
            out.push_str(&format!("  {:<16} {}/{}\n", s.name, s.passed, c.cases));
        }
        if let Some(f) = &self.failure {
            out.push_str(&format!(
                "first failure: case {}, suite {}: {}\n",
                f.case, f.suite, f.counterexample
            ));
        }
        let verdict = if self.ok() { "OK" } else { "FAILED" };
        out.push_str(&format!("{verdict}, {}/{}\n", self.passed, c.cases));
        out
    }

    pub fn timings(&self) -> String {
        self.suites
            .iter()
            .map(|s| format!("  {:<16} {:.3} ms\n", s.name, s.elapsed.as_secs_f64() * 1e3))
            .collect()
    }
}

type Check = Result<(), String>;

fn random_ideal(rng: &mut ChaCha8Rng) -> Vec<LatticePoint> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| LatticePoint::new(rng.gen_range(0..=8), rng.gen_range(0..=8)))
        .collect()
}

fn random_factorization(rng: &mut ChaCha8Rng) -> Factorization {
    let anchor = LatticePoint::new(rng.gen_range(0..=3), rng.gen_range(0..=3));
    let n = rng.gen_range(0..=4);
    let factors: Vec<(Slope, u64)> = (0..n)
        .map(|_| {
            let s = Slope::new(rng.gen_range(1..=12), rng.gen_range(1..=12)).expect("positive");
            (s, rng.gen_range(1..=4))
        })
        .collect();
    Factorization::from_factors(anchor, factors).expect("small factorization")
}

fn ideal(points: &[LatticePoint]) -> MonomialIdeal {
    MonomialIdeal::minimize(points).expect("nonempty points in N²")
}

fn closure_under_test(i: &MonomialIdeal, fault: bool) -> Result<MonomialIdeal, String> {
    let c = i.integral_closure().map_err(|e| e.to_string())?;
    if fault && c.generators().len() > 1 {
        let mut gens = c.into_generators();
        gens.pop();
        return Ok(ideal(&gens));
    }
    Ok(c)
}

fn oracle_suite(points: &[LatticePoint], r_max: u32, fault: bool) -> Check {
    let i = ideal(points);
    let closure = closure_under_test(&i, fault)?;
    let oracle = ClosureOracle::new(&i, r_max).map_err(|e| e.to_string())?;
    let w = i.generators().last().expect("nonempty").x;
    let h = i.generators()[0].y;
    for x in 0..=w {
        for y in 0..=h {
            let p = LatticePoint::new(x, y);
            let hull = closure.contains(p);
            let brute = oracle.contains(p).map_err(|e| e.to_string())?;
            if hull != brute {
                return Err(format!("at {p}: hull {hull}, sumset oracle {brute}"));
            }
        }
    }
    Ok(())
}

fn closure_laws_suite(a: &[LatticePoint], b: &[LatticePoint], fault: bool) -> Check {
    let (i, j) = (ideal(a), ideal(b));
    let ci = closure_under_test(&i, fault)?;
    let cj = closure_under_test(&j, fault)?;
    if closure_under_test(&ci, fault)? != ci {
        return Err("closure is not idempotent".into());
    }
    if let Some(g) = i.generators().iter().find(|g| !ci.contains(**g)) {
        return Err(format!("generator {g} outside the closure"));
    }
    let prod = |x: &MonomialIdeal, y: &MonomialIdeal| -> Result<MonomialIdeal, String> {
        closure_under_test(&x.multiply(y).map_err(|e| e.to_string())?, fault)
    };
    if prod(&i, &j)? != prod(&ci, &cj)? {
        return Err("closure of IJ differs from closure of closed factors".into());
    }
    Ok(())
}

fn monoid_suite(f: &Factorization, g: &Factorization, fault: bool) -> Check {
    let run = || -> Result<Check, staircase_core::Error> {
        let i = f.expand()?;
        let j = g.expand()?;
        if i.factor()? != *f {
            return Ok(Err("factor(expand(f)) != f".into()));
        }
        let product = match closure_under_test(&i.multiply(&j)?, fault) {
            Ok(p) => p,
            Err(e) => return Ok(Err(e)),
        };
        let lhs = match product.factor() {
            Ok(l) => l,
            Err(e) => return Ok(Err(format!("closed product does not factor: {e}"))),
        };
        if lhs != f.multiply(g)? {
            return Ok(Err("factor(close(IJ)) != f + g".into()));
        }
        Ok(Ok(()))
    };
    run().map_err(|e| e.to_string())?
}

fn inverse_system_suite(f: &Factorization, n: u64, n_big: u64) -> Check {
    let direct = truncate_factorization(f, n);
    if truncate_factorization(&truncate_factorization(f, n_big), n) != direct {
        return Err(format!("rho_{n} != rho_{n} o rho_{n_big}"));
    }
    if truncate_factorization(&direct, n_big) != direct {
        return Err(format!("rho_{n_big} moves the image of rho_{n}"));
    }
    Ok(())
}

fn round_trip_suite(points: &[LatticePoint], f: &Factorization) -> Check {
    let i = ideal(points);
    let reparsed = parse_ideal(&format_generators(i.generators())).map_err(|e| e.to_string())?;
    if reparsed.generators() != i.generators() {
        return Err("ideal text round trip".into());
    }
    if parse_factorization(&format_factorization(f)).map_err(|e| e.to_string())? != *f {
        return Err("factor text round trip".into());
    }
    if from_json::<MonomialIdeal>(&to_json(&i)).map_err(|e| e.to_string())? != i {
        return Err("ideal JSON round trip".into());
    }
    if from_json::<Factorization>(&to_json(f)).map_err(|e| e.to_string())? != *f {
        return Err("factorization JSON round trip".into());
    }
    Ok(())
}

/// Repeatedly takes the first smaller candidate that still fails.
fn shrink<T: Clone>(start: T, smaller: impl Fn(&T) -> Vec<T>, fails: impl Fn(&T) -> bool) -> T {
    let mut cur = start;
    'outer: loop {
        for c in smaller(&cur) {
            if fails(&c) {
                cur = c;
                continue 'outer;
            }
        }
        return cur;
    }
}

fn smaller_points(v: &[LatticePoint]) -> Vec<Vec<LatticePoint>> {
    let mut out = Vec::new();
    if v.len() > 1 {
        for i in 0..v.len() {
            let mut w = v.to_vec();
            w.remove(i);
            out.push(w);
        }
    }
    for i in 0..v.len() {
        for d in [LatticePoint::new(1, 0), LatticePoint::new(0, 1)] {
            let p = LatticePoint::new(v[i].x - d.x, v[i].y - d.y);
            if p.in_positive_quadrant() {
                let mut w = v.to_vec();
                w[i] = p;
                out.push(w);
            }
        }
    }
    out
}

fn smaller_factorizations(f: &Factorization) -> Vec<Factorization> {
    let mut out = Vec::new();
    if f.anchor != LatticePoint::ORIGIN {
        out.push(Factorization::from_factors(LatticePoint::ORIGIN, f.factors()).expect("subset"));
    }
    for (slope, b) in f.factors() {
        out.push(f.retain(|s| s != slope));
        if b > 1 {
            let reduced = f
                .factors()
                .map(|(s, m)| if s == slope { (s, m - 1) } else { (s, m) });
            out.push(Factorization::from_factors(f.anchor, reduced).expect("subset"));
        }
    }
    out
}

fn describe_points(v: &[LatticePoint]) -> String {
    format!("[{}]", format_generators(&ideal(v).into_generators()))
}

pub fn run_selftest(config: SelftestConfig) -> SelftestReport {
    const NAMES: [&str; 5] = [
        "closure-oracle",
        "closure-laws",
        "monoid-laws",
        "inverse-system",
        "round-trip",
    ];
    let mut suites: Vec<SuiteOutcome> = NAMES
        .iter()
        .map(|&name| SuiteOutcome {
            name,
            passed: 0,
            elapsed: Duration::ZERO,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut passed = 0;
    let mut failure = None;
    let fault = config.inject_fault;
    let r_max = config.r_max;

    for case in 0..config.cases {
        let a = random_ideal(&mut rng);
        let b = random_ideal(&mut rng);
        let f = random_factorization(&mut rng);
        let g = random_factorization(&mut rng);
        let n = rng.gen_range(0..=40u64);
        let n_big = n + rng.gen_range(0..=40u64);

        let mut results: Vec<(usize, Check)> = Vec::with_capacity(NAMES.len());
        let mut timed = |k: usize, check: &dyn Fn() -> Check| {
            let started = Instant::now();
            let r = check();
            suites[k].elapsed += started.elapsed();
            if r.is_ok() {
                suites[k].passed += 1;
            }
            results.push((k, r));
        };
        timed(0, &|| oracle_suite(&a, r_max, fault));
        timed(1, &|| closure_laws_suite(&a, &b, fault));
        timed(2, &|| monoid_suite(&f, &g, fault));
        timed(3, &|| inverse_system_suite(&f, n, n_big));
        timed(4, &|| round_trip_suite(&a, &f));

        let first_error = results.into_iter().find(|(_, r)| r.is_err());
        match first_error {
            None => passed += 1,
            Some((k, _)) if failure.is_none() => {
                let counterexample = match k {
                    0 => {
                        let v = shrink(
                            a.clone(),
                            |v| smaller_points(v),
                            |v| oracle_suite(v, r_max, fault).is_err(),
                        );
                        let why = oracle_suite(&v, r_max, fault).unwrap_err();
                        format!("I = {}: {why}", describe_points(&v))
                    }
                    1 => {
                        let fails = |p: &(Vec<LatticePoint>, Vec<LatticePoint>)| {
                            closure_laws_suite(&p.0, &p.1, fault).is_err()
                        };
                        let smaller = |p: &(Vec<LatticePoint>, Vec<LatticePoint>)| {
                            let mut out: Vec<_> = smaller_points(&p.0)
                                .into_iter()
                                .map(|x| (x, p.1.clone()))
                                .collect();
                            out.extend(smaller_points(&p.1).into_iter().map(|y| (p.0.clone(), y)));
                            out
                        };
                        let (x, y) = shrink((a.clone(), b.clone()), smaller, fails);
                        let why = closure_laws_suite(&x, &y, fault).unwrap_err();
                        format!(
                            "I = {}, J = {}: {why}",
                            describe_points(&x),
                            describe_points(&y)
                        )
                    }
                    2 => {
                        let smaller = |p: &(Factorization, Factorization)| {
                            let mut out: Vec<_> = smaller_factorizations(&p.0)
                                .into_iter()
                                .map(|x| (x, p.1.clone()))
                                .collect();
                            out.extend(
                                smaller_factorizations(&p.1)
                                    .into_iter()
                                    .map(|y| (p.0.clone(), y)),
                            );
                            out
                        };
                        let (x, y) = shrink((f.clone(), g.clone()), smaller, |p| {
                            monoid_suite(&p.0, &p.1, fault).is_err()
                        });
                        let why = monoid_suite(&x, &y, fault).unwrap_err();
                        format!(
                            "f = {}, g = {}: {why}",
                            format_factorization(&x),
                            format_factorization(&y)
                        )
                    }
                    3 => {
                        let x = shrink(f.clone(), smaller_factorizations, |x| {
                            inverse_system_suite(x, n, n_big).is_err()
                        });
                        let why = inverse_system_suite(&x, n, n_big).unwrap_err();
                        format!("f = {}: {why}", format_factorization(&x))
                    }
                    _ => {
                        let why = round_trip_suite(&a, &f).unwrap_err();
                        format!(
                            "I = {}, f = {}: {why}",
                            describe_points(&a),
                            format_factorization(&f)
                        )
                    }
                };
                failure = Some(Failure {
                    case,
                    suite: NAMES[k],
                    counterexample,
                });
            }
            Some(_) => {}
        }
    }

    SelftestReport {
        config,
        suites,
        passed,
        failure,
    }
}
