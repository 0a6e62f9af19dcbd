//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lambertq_core::catalog::{self, Case, Status};
use lambertq_core::lambert::{self as lq, Params};
use lambertq_core::partitions::{self, enumerate, kappa_sum};
use lambertq_core::series::rat;
use lambertq_core::{Exponent, TruncatedSeries};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn verify_at(id: &str, order: Exponent) -> Outcome {
    let r = catalog::verify(id, order).map_err(|e| format!("{id}: {e}"))?;
    match r.first_mismatch {
        None => Ok(format!("{id}@{order}")),
        Some(e) => Err(format!(
            "{id}@{order} mismatch at q^{e} in [{}]: lhs {} rhs {}",
            r.case.unwrap_or_default(),
            r.lhs.unwrap_or_default(),
            r.rhs.unwrap_or_default()
        )),
    }
}

/// Runs every check and joins the failures, so one bad item does not hide the rest.
fn all(items: Vec<Outcome>) -> Outcome {
    let (ok, bad): (Vec<_>, Vec<_>) = items.into_iter().partition(Result::is_ok);
    if bad.is_empty() {
        Ok(ok.into_iter().map(Result::unwrap).collect::<Vec<_>>().join(", "))
    } else {
        Err(bad.into_iter().map(|r| r.unwrap_err()).collect::<Vec<_>>().join("; "))
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, actual: T, expected: T) -> Outcome {
    if actual == expected {
        Ok(format!("{what} = {actual:?}"))
    } else {
        Err(format!("{what}: expected {expected:?}, got {actual:?}"))
    }
}

fn within(what: &str, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed < limit {
        Ok(format!("{what} {:.2}s < {}s", elapsed.as_secs_f64(), limit.as_secs()))
    } else {
        Err(format!("{what} took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

fn coeff(s: &TruncatedSeries, e: Exponent) -> i64 {
    let c = s.coeff(e).expect("in window");
    assert!(c.is_integer());
    i64::try_from(c.to_integer()).expect("small coefficient")
}

// f-series
fn criterion1() -> Outcome {
    let start = Instant::now();
    let verified = all(["thm-3.2", "thm-3.4", "lem-3.1"].iter().map(|id| verify_at(id, 300)).collect());
    let elapsed = start.elapsed();
    // divisor-sum oracle for [q^n] f1
    let f1_oracle = |n: i64| -> i64 { (1..=n).filter(|d| n % d == 0).map(|d| d * d + d - 2 * n).sum() };
    let f1 = lq::f1(6).map_err(|e| e.to_string())?;
    all(vec![
        verified,
        within("runtime", elapsed, Duration::from_secs(10)),
        expect_eq("[q^6]f1 vs divisor oracle", coeff(&f1, 6), f1_oracle(6)),
        expect_eq("[q^6]f1", coeff(&f1, 6), 14),
        expect_eq("c(6)", partitions::stat_twosize_c(6), 7),
        expect_eq("d(6)", partitions::stat_twosize_d(6), 7),
    ])
}

// Liouville chain
fn criterion2() -> Outcome {
    let start = Instant::now();
    let quintuple = verify_at("lem-3.3-quintuple", 40);
    let elapsed = start.elapsed();
    all(vec![
        verify_at("lem-3.3", 300),
        verify_at("identity-3.3-reduced", 300),
        quintuple,
        within("quintuple runtime", elapsed, Duration::from_secs(5)),
    ])
}

// kappa suite
fn criterion3() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=25 {
        for p in enumerate(n) {
            let k = p.kappa_direct();
            if k != p.kappa_frobenius() {
                return Err(format!("kappa direct/Frobenius differ on {p}"));
            }
            if k != -p.conjugate().kappa_direct() {
                return Err(format!("kappa not odd under conjugation on {p}"));
            }
            checked += 1;
        }
    }
    if let Some(n) = (1..=35).find(|&n| kappa_sum(n) != 0) {
        return Err(format!("sum of kappa over partitions of {n} is {}", kappa_sum(n)));
    }
    Ok(format!("{checked} partitions of n <= 25, vanishing sums n <= 35"))
}

// mod-5 identities
fn criterion4() -> Outcome {
    let rhs = lq::thm41_rhs(20).map_err(|e| e.to_string())?;
    all(vec![
        verify_at("thm-4.1", 200),
        verify_at("thm-4.1-sumrep", 200),
        verify_at("lem-4.4", 200),
        expect_eq("c5(4)", coeff(&rhs, 4), 1),
        expect_eq("c5(5)", coeff(&rhs, 5), 1),
        expect_eq("c5(11)", coeff(&rhs, 11), 2),
    ])
}

// WZ machinery
fn criterion5() -> Outcome {
    all(["lem-4.2", "wz-recurrence", "cor-4.3"].iter().map(|id| verify_at(id, 120)).collect())
}

/// `a(k)` with `(q;q)_inf = sum a(k) q^k`, by multiplying out the product over integers.
fn euler_product_oracle(max: usize) -> Vec<i64> {
    let mut a = vec![0i64; max + 1];
    a[0] = 1;
    for k in 1..=max {
        for e in (k..=max).rev() {
            a[e] -= a[e - k];
        }
    }
    a
}

// pentagonal identity
fn criterion6() -> Outcome {
    let order = 150;
    let a = euler_product_oracle(7 * order as usize);
    let oracle = TruncatedSeries::from_fn(0, order, |m| {
        let v = a[7 * m as usize].abs();
        rat(if m % 2 == 0 { v } else { -v })
    });
    let lhs = lq::thm46_lhs(order).map_err(|e| e.to_string())?;
    let rep = lq::thm46_sumrep(order).map_err(|e| e.to_string())?;
    let against_oracle = catalog::compare_cases(
        "thm-4.6 vs euler_a oracle",
        order,
        &[Case::new("lhs = oracle", lhs, oracle.clone()), Case::new("sum representation = oracle", rep, oracle)],
    )
    .map_err(|e| e.to_string())?;
    let oracle_outcome = match against_oracle.first_mismatch {
        None => Ok("oracle agrees".to_string()),
        Some(e) => Err(format!(
            "oracle disagrees at q^{e} in [{}]: engine {} oracle {}",
            against_oracle.case.unwrap_or_default(),
            against_oracle.lhs.unwrap_or_default(),
            against_oracle.rhs.unwrap_or_default()
        )),
    };
    all(vec![verify_at("thm-4.6", order), verify_at("thm-4.6-sumrep", order), oracle_outcome, verify_at("bailey-AC", order)])
}

fn triangular_pairs_oracle(s: u64) -> i64 {
    let t = |k: u64| k * (k + 1) / 2;
    let mut count = 0;
    for i in 0..=s {
        for j in 0..=s {
            if t(i) + t(j) == s {
                count += 1;
            }
        }
    }
    count
}

// identities on Y and theta functions
fn criterion7() -> Outcome {
    let p510 = lq::prop510_lhs(200).map_err(|e| e.to_string())?;
    let law = match (1..=100).find(|&r| coeff(&p510, 2 * r - 1) != triangular_pairs_oracle(r as u64 - 1)) {
        None => Ok("triangular-pair law r <= 100".to_string()),
        Some(r) => Err(format!("triangular-pair law fails at r = {r}")),
    };
    all(vec![
        verify_at("prop-5.3", 200),
        verify_at("lem-5.7-id1", 200),
        verify_at("lem-5.7-id2", 200),
        verify_at("altY", 200),
        verify_at("thm-5.8", 200),
        verify_at("cor-5.9", 300),
        verify_at("theta-pythagoras", 500),
        verify_at("prop-5.10", 200),
        law,
        verify_at("prop-5.11", 150),
        verify_at("thm-5.4", 30),
    ])
}

fn scan_at(id: &str, order: Exponent, params: &[(&str, i64)]) -> Outcome {
    let params: Params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let r = catalog::scan(id, order, &params).map_err(|e| format!("{id}: {e}"))?;
    match r.counterexample {
        None => Ok(format!("{id}@{order} {:?}", params)),
        Some(c) => Err(format!("{id}@{order}: counterexample at q^{} expected {} found {}", c.exponent, c.expected, c.actual)),
    }
}

// conjecture scans
fn criterion8() -> Outcome {
    all(vec![
        scan_at("adsy", 400, &[]),
        scan_at("prop-5.2-bound", 600, &[("m", 25), ("n", 25)]),
        scan_at("kick3", 200, &[("a", 1)]),
        scan_at("kick3", 200, &[("a", 2)]),
        scan_at("kick3", 200, &[("a", 3)]),
        scan_at("kick4", 200, &[]),
    ])
}

// mutation soundness
fn criterion9() -> Outcome {
    let ids = ["thm-4.1", "lem-3.1", "altY", "prop-5.10", "intro-mod3"];
    let order = 80;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..20 {
        let id = ids[rng.random_range(0..ids.len())];
        let mut cases = catalog::build_cases(id, order).map_err(|e| e.to_string())?;
        let k = rng.random_range(0..cases.len());
        let e = rng.random_range(0..=order);
        let delta = if rng.random_bool(0.5) { 1 } else { -3 };
        *cases[k].rhs.coeff_mut(e).map_err(|e| e.to_string())? += rat(delta);
        let r = catalog::compare_cases(id, order, &cases).map_err(|e| e.to_string())?;
        // an earlier case may hide the mutation only if it already fails; all of these pass unmutated
        if r.status != Status::Fail || r.first_mismatch != Some(e) {
            return Err(format!("trial {trial}: {id} case {k} mutated at q^{e}, report {:?} at {:?}", r.status, r.first_mismatch));
        }
    }
    Ok("20 mutations detected at the mutated exponent".into())
}

// performance
fn criterion10() -> Outcome {
    let start = Instant::now();
    let suite = catalog::verify_all(200).map_err(|e| e.to_string())?;
    let suite_time = start.elapsed();
    let n = 2000;
    let a = TruncatedSeries::from_fn(0, n, |e| rat((e * 7919 % 201) - 100));
    let b = TruncatedSeries::from_fn(0, n, |e| rat((e * 104729 % 301) - 150));
    let start = Instant::now();
    let product = a.mul(&b);
    let mul_time = start.elapsed();
    all(vec![
        within(&format!("verify --all (order 200, {} entries)", suite.checked.len() + suite.exploratory.len()), suite_time, Duration::from_secs(60)),
        within("multiplication at order 2000", mul_time, Duration::from_secs(5)),
        expect_eq("product order", product.order(), n),
    ])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("f-series equalities", criterion1),
        ("Liouville-type chain", criterion2),
        ("kappa suite", criterion3),
        ("mod-5 identities", criterion4),
        ("WZ machinery", criterion5),
        ("pentagonal identity", criterion6),
        ("Y and theta identities", criterion7),
        ("conjecture scans", criterion8),
        ("harness soundness", criterion9),
        ("performance", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({ms} ms): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({ms} ms): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
