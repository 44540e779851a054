//! Acceptance criteria, one check per criterion.
//!
//! Each check returns `Ok(())` or a description of the first failure; the
//! runner prints one PASS/FAIL line per criterion with its runtime and then
//! fails the test if anything failed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use staircase_core::{
    admit_module, check_convergence, closure_contains_oracle, simple_ideal, truncate_factorization,
    Admitted, ClosureOracle, Error, Factorization, LatticePoint, ModuleDescription, MonomialIdeal,
    MonomialModule, NamedFamily, Rect, Slope, Violation, Window,
};

type Check = Result<(), String>;

/// Name, check and runtime budget.
type Criterion = (&'static str, fn() -> Check, Duration);

/// Oracle depth used throughout the randomized suites.
const R_MAX: u32 = 128;

fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
    v.iter().map(|&p| p.into()).collect()
}

fn ideal(v: &[(i64, i64)]) -> MonomialIdeal {
    MonomialIdeal::minimize(&pts(v)).unwrap()
}

fn slope(r: i64, s: i64) -> Slope {
    Slope::reduced(r, s).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn closure_of_two_squares() -> Check {
    let i = ideal(&[(2, 0), (0, 2)]);
    let closure = i.integral_closure().map_err(err)?;
    ensure!(
        closure.generators() == pts(&[(0, 2), (1, 1), (2, 0)]),
        "closure = {:?}",
        closure.generators()
    );
    let p = LatticePoint::new(1, 1);
    ensure!(!i.contains(p), "(1,1) in I");
    ensure!(closure.contains(p), "(1,1) not in closure");
    Ok(())
}

fn product_of_simple_ideals() -> Check {
    let e43 = simple_ideal(slope(4, 3));
    let e52 = simple_ideal(slope(5, 2));
    ensure!(
        e43.generators() == pts(&[(0, 3), (2, 2), (3, 1), (4, 0)]),
        "E_4/3 = {:?}",
        e43
    );
    ensure!(
        e52.generators() == pts(&[(0, 2), (3, 1), (5, 0)]),
        "E_5/2 = {:?}",
        e52
    );
    let product = e43
        .multiply(&e52)
        .and_then(|p| p.integral_closure())
        .map_err(err)?;
    ensure!(
        product.generators() == pts(&[(0, 5), (2, 4), (3, 3), (4, 2), (7, 1), (9, 0)]),
        "product = {:?}",
        product.generators()
    );
    let f = product.factor().map_err(err)?;
    let expected =
        Factorization::from_factors(LatticePoint::ORIGIN, [(slope(4, 3), 1), (slope(5, 2), 1)])
            .unwrap();
    ensure!(f == expected, "factor = {f:?}");
    Ok(())
}

fn triangular_partial_sum() -> Check {
    let Admitted::Stream(stream) =
        admit_module(ModuleDescription::Family(NamedFamily::Triangular)).map_err(err)?
    else {
        return Err("triangular family not admitted as a stream".into());
    };
    let path = stream.partial_path(0, 4).map_err(err)?;
    let expected = pts(&[(0, 0), (1, -1), (3, -2), (6, -3), (10, -4)]);
    ensure!(
        path.vertices() == expected,
        "vertices = {:?}",
        path.vertices()
    );
    let partial = stream.partial_sum(0, 4).map_err(err)?;
    let raw = MonomialModule::from_generators(&expected).map_err(err)?;
    let closed = raw.closure().map_err(err)?;
    ensure!(
        closed == partial,
        "closure {closed:?} != partial sum {partial:?}"
    );
    Ok(())
}

fn maximal_ideal_truncation() -> Check {
    for a in 1..=4i64 {
        let prefix = NamedFamily::Antidiagonal.prefix(a as u64).map_err(err)?;
        let module = MonomialModule::from_generators(&prefix).map_err(err)?;
        let truncated = module
            .quadrant_truncation(a as u64)
            .and_then(|t| t.integral_closure())
            .map_err(err)?;
        let power =
            Factorization::from_factors(LatticePoint::ORIGIN, [(slope(1, 1), 2 * a as u64)])
                .and_then(|f| f.expand())
                .map_err(err)?;
        ensure!(truncated == power, "a = {a}: {truncated:?} != {power:?}");
        // the exponent 2a, checked against the sumset oracle on the raw
        // shifted generators
        let raw = module.quadrant_truncation(a as u64).map_err(err)?;
        let oracle = ClosureOracle::new(&raw, R_MAX).map_err(err)?;
        for x in 0..=2 * a + 1 {
            for y in 0..=2 * a + 1 {
                let p = LatticePoint::new(x, y);
                let in_power = x + y >= 2 * a;
                ensure!(
                    oracle.contains(p).map_err(err)? == in_power,
                    "a = {a}: oracle disagrees with x+y >= 2a at {p}"
                );
            }
        }
    }
    Ok(())
}

fn random_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let n = rng.gen_range(1..=4);
    let gens: Vec<LatticePoint> = (0..n)
        .map(|_| LatticePoint::new(rng.gen_range(0..=8), rng.gen_range(0..=8)))
        .collect();
    MonomialIdeal::minimize(&gens).unwrap()
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked_points = 0usize;
    for case in 0..200 {
        let i = random_ideal(&mut rng);
        let closure = i.integral_closure().map_err(err)?;
        let oracle = ClosureOracle::new(&i, R_MAX).map_err(err)?;
        let w = i.generators().last().unwrap().x;
        let h = i.generators()[0].y;
        for x in 0..=w {
            for y in 0..=h {
                let p = LatticePoint::new(x, y);
                let hull_says = closure.contains(p);
                let oracle_says = oracle.contains(p).map_err(err)?;
                ensure!(
                    hull_says == oracle_says,
                    "case {case}: {:?} at {p}: hull {hull_says}, oracle {oracle_says}",
                    i.generators()
                );
                checked_points += 1;
            }
        }
    }
    // the one-shot entry point agrees with the precomputed table
    let i = ideal(&[(0, 2), (3, 0)]);
    ensure!(
        closure_contains_oracle(&i, LatticePoint::new(2, 1), R_MAX).map_err(err)?,
        "one-shot oracle"
    );
    ensure!(checked_points > 200, "too few points checked");
    Ok(())
}

fn random_factorization(rng: &mut ChaCha8Rng) -> Factorization {
    let anchor = LatticePoint::new(rng.gen_range(0..=3), rng.gen_range(0..=3));
    let n = rng.gen_range(0..=4);
    let factors: Vec<(Slope, u64)> = (0..n)
        .map(|_| {
            let s = Slope::new(rng.gen_range(1..=12), rng.gen_range(1..=12)).unwrap();
            (s, rng.gen_range(1..=4))
        })
        .collect();
    Factorization::from_factors(anchor, factors).unwrap()
}

fn free_monoid_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..500 {
        let f = random_factorization(&mut rng);
        let g = random_factorization(&mut rng);
        let i = f.expand().map_err(err)?;
        let j = g.expand().map_err(err)?;
        ensure!(
            i.is_integrally_closed().map_err(err)?,
            "case {case}: expand not closed"
        );
        let product = i
            .multiply(&j)
            .and_then(|p| p.integral_closure())
            .map_err(err)?;
        let lhs = product.factor().map_err(err)?;
        let rhs = f.multiply(&g).map_err(err)?;
        ensure!(
            lhs == rhs,
            "case {case}: factor(close(IJ)) = {lhs:?}, sum = {rhs:?}"
        );
        ensure!(
            i.factor().and_then(|x| x.expand()).map_err(err)? == i,
            "case {case}: expand∘factor"
        );
        ensure!(i.factor().map_err(err)? == f, "case {case}: factor∘expand");
        ensure!(
            product.integral_closure().map_err(err)? == product,
            "case {case}: closure idempotence"
        );
    }
    Ok(())
}

fn inverse_system() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let f = random_factorization(&mut rng);
        for n_big in 0..=40u64 {
            let outer = truncate_factorization(&f, n_big);
            for n in 0..=n_big {
                let composed = truncate_factorization(&outer, n);
                let direct = truncate_factorization(&f, n);
                ensure!(composed == direct, "case {case}: N = {n}, N' = {n_big}");
            }
        }
    }
    Ok(())
}

fn convergence() -> Check {
    let Admitted::Stream(stream) =
        admit_module(ModuleDescription::Family(NamedFamily::Triangular)).map_err(err)?
    else {
        return Err("triangular family not admitted as a stream".into());
    };
    let rect = Rect::new(0, 10, -5, 1).map_err(err)?;
    let report = check_convergence(&stream, rect, 1, 12).map_err(err)?;
    ensure!(
        report.stabilized_at == Some(4),
        "stabilized at {:?}",
        report.stabilized_at
    );
    let at_12 = Window::of_path(&stream.partial_path(12, 12).map_err(err)?, rect).map_err(err)?;
    ensure!(report.window == at_12, "stable window differs from n = 12");
    match admit_module(ModuleDescription::Family(NamedFamily::Antidiagonal)) {
        Err(Error::NonAdmissibleModule(Violation::UnboundedSkewFace { .. })) => Ok(()),
        other => Err(format!("antidiagonal admitted: {other:?}")),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        (
            "1 closure of (x^2, y^2)",
            closure_of_two_squares,
            Duration::from_millis(1),
        ),
        (
            "2 E_4/3 * E_5/2 product and factorization",
            product_of_simple_ideals,
            Duration::from_millis(10),
        ),
        (
            "3 triangular partial sum",
            triangular_partial_sum,
            Duration::from_millis(10),
        ),
        (
            "4 antidiagonal truncations are powers of (x,y)",
            maximal_ideal_truncation,
            Duration::from_millis(50),
        ),
        (
            "5 hull closure agrees with sumset oracle",
            oracle_equivalence,
            Duration::from_secs(30),
        ),
        (
            "6 free monoid laws",
            free_monoid_laws,
            Duration::from_secs(30),
        ),
        (
            "7 truncation maps form an inverse system",
            inverse_system,
            Duration::from_secs(5),
        ),
        (
            "8 window convergence and admissibility",
            convergence,
            Duration::from_secs(1),
        ),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let verdict = match (&outcome, elapsed <= budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget {budget:?})"),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("[{verdict}] criterion {name} in {elapsed:?}");
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
