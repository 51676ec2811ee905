//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::tamper::{all_leaves, derived_leaves, mutate};
use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use selmergen::arith::PrimeModulus;
use selmergen::cubic::TernaryCubic;
use selmergen::curve::{count_points, PointCounting, ShortWeierstrass};
use selmergen::pipeline::validate_external;
use selmergen::quartic::BinaryQuartic;
use selmergen::stream::{SeedContext, StreamLabel};
use selmergen::transcript::{self, verify, VerifyOptions};
use selmergen::validate::Policy;
use selmergen::DEMO_SEED_HEX;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_selmergen");
const P: u64 = 100_003;
const ELLS: [u64; 4] = [3, 5, 7, 11];

type Outcome = Result<String, String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn modulus(p: u64) -> PrimeModulus {
    PrimeModulus::from_u64(p).unwrap()
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn hex(v: &Value) -> u64 {
    u64::from_str_radix(v.as_str().expect("hex string"), 16).expect("hex")
}

fn table_replay() -> Outcome {
    let start = Instant::now();
    let o = cli(&["validate", "--prime", "100003", "--c4", "82765", "--c6", "79541", "--policy", "demo", "--json"]);
    let elapsed = start.elapsed();
    check(o.status.code() == Some(0), || format!("exit {:?}", o.status.code()))?;
    let v: Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let (curve, order, val) = (&v["curve"], &v["order"], &v["validation"]);
    let factors: Vec<(u64, u64)> = order["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (hex(&f[0]), hex(&f[1])))
        .collect();
    check(hex(&curve["delta"]) == 53954, || format!("delta {}", hex(&curve["delta"])))?;
    check(hex(&order["n"]) == 99711, || format!("#E {}", hex(&order["n"])))?;
    check(factors == [(3, 4), (1231, 1)], || format!("factors {factors:?}"))?;
    check(hex(&order["h"]) == 81 && hex(&order["r"]) == 1231, || "h, r".into())?;
    check(hex(&order["n_twist"]) == 100297, || format!("#E' {}", hex(&order["n_twist"])))?;
    check(is_prime_naive(100297) && hex(&order["h_twist"]) == 1, || "twist not prime".into())?;
    check(val["embedding"]["passed"] == true && val["embedding_k_found"].is_null(), || {
        "embedding degree found".into()
    })?;
    check(elapsed < Duration::from_secs(5), || format!("took {elapsed:.2?}"))?;
    Ok(format!("delta 53954, #E 3^4*1231, #E' 100297 prime, no k <= 20 ({elapsed:.2?})"))
}

fn generate_demo(out: &Path) -> Result<Duration, String> {
    let start = Instant::now();
    let o = cli(&[
        "generate", "--prime", "100003", "--ds", "SelmerGen-v1", "--seed", DEMO_SEED_HEX, "--policy", "demo",
        "--max-trials", "10000", "--out", out.to_str().unwrap(),
    ]);
    check(o.status.code() == Some(0), || {
        format!("generate exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr))
    })?;
    Ok(start.elapsed())
}

fn end_to_end(dir: &Path) -> Outcome {
    let path = dir.join("run1.json");
    let elapsed = generate_demo(&path)?;
    let tr = transcript::parse(std::fs::read(&path).unwrap().trim_ascii_end()).map_err(|e| e.to_string())?;
    check(tr.trial_index < 10_000, || format!("trial_index {}", tr.trial_index))?;
    let v = cli(&["verify", path.to_str().unwrap()]);
    check(v.status.code() == Some(0), || String::from_utf8_lossy(&v.stdout).into_owned())?;
    let failing: Vec<&str> = tr
        .validation
        .checks()
        .iter()
        .filter(|(_, c)| !c.passed)
        .map(|(n, _)| *n)
        .collect();
    check(failing.is_empty() && tr.validation.checks().len() == 5, || format!("failing checks {failing:?}"))?;
    check(elapsed < Duration::from_secs(120), || format!("took {elapsed:.2?}"))?;
    Ok(format!(
        "trial_index {}, verify ok, 5/5 checks, c4 {}, c6 {} ({elapsed:.2?})",
        tr.trial_index, tr.reconciliation.c4, tr.reconciliation.c6
    ))
}

fn determinism(dir: &Path) -> Outcome {
    let second = dir.join("run2.json");
    generate_demo(&second)?;
    let a = std::fs::read(dir.join("run1.json")).unwrap();
    let b = std::fs::read(&second).unwrap();
    check(a == b, || "transcripts differ".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn invariance() -> Outcome {
    let sl2 = prop::array::uniform2(prop::array::uniform2(0..P)).prop_filter_map("det 0", |m| to_sl2(m, P));
    let quartics = prop::array::uniform5(0..P);
    runner(200)
        .run(&(quartics, sl2), |(c, m)| {
            let f = modulus(P);
            let before = BinaryQuartic::from_u64(&f, c).invariants();
            let after = BinaryQuartic::from_u64(&f, substitute_quartic(c, m, P)).invariants();
            prop_assert_eq!(before.i, after.i);
            prop_assert_eq!(before.j, after.j);
            Ok(())
        })
        .map_err(|e| format!("SL2: {e}"))?;

    let sl3 = prop::array::uniform3(prop::array::uniform3(0..P)).prop_filter_map("det 0", |m| to_sl3(m, P));
    let cubics = prop::array::uniform10(0..P);
    runner(200)
        .run(&(cubics, sl3), |(c, m)| {
            let f = modulus(P);
            let before = TernaryCubic::from_u64(&f, c);
            let after = TernaryCubic::from_u64(&f, substitute_cubic(c, m, P));
            prop_assert_eq!(before.s_invariant(), after.s_invariant());
            prop_assert_eq!(before.t_invariant(), after.t_invariant());
            Ok(())
        })
        .map_err(|e| format!("SL3: {e}"))?;
    Ok("200 SL2 and 200 SL3 substitutions, 0 failures".into())
}

fn calibration() -> Outcome {
    runner(50)
        .run(&(0..P, 0..P), |(a, b)| {
            let f = modulus(P);
            let c4 = f.elem(mulm(neg(48, P), a, P));
            let c6 = f.elem(mulm(neg(864, P), b, P));
            let q = BinaryQuartic::from_u64(&f, [0, 1, 0, a, b]).invariants();
            prop_assert_eq!(&q.c4, &c4);
            prop_assert_eq!(&q.c6, &c6);
            let cubic = [neg(1, P), 0, 0, 0, 0, neg(a, P), 0, 1, 0, neg(b, P)];
            let c = TernaryCubic::from_u64(&f, cubic).invariants();
            prop_assert_eq!(&c.c4, &c4);
            prop_assert_eq!(&c.c6, &c6);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("50 (A, B): quartic and cubic both give (-48A, -864B)".into())
}

fn nonsingular(p: u64, a: u64, b: u64) -> bool {
    let d = (4 * mulm(mulm(a, a, p), a, p) + 27 * mulm(b, b, p)) % p;
    d != 0
}

fn hasse(p: u64, n: u64) -> bool {
    let t = (p + 1).abs_diff(n);
    t * t <= 4 * p
}

fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&d| powm(d, (p - 1) / 2, p) == p - 1).unwrap()
}

fn counting() -> Outcome {
    let small = (prop::sample::select(SMALL_PRIMES.to_vec()), 0u64..251, 0u64..251)
        .prop_map(|(p, a, b)| (p, a % p, b % p))
        .prop_filter("singular", |&(p, a, b)| nonsingular(p, a, b));
    runner(50)
        .run(&small, |(p, a, b)| {
            let f = modulus(p);
            let od = count_points(&ShortWeierstrass::new(f.elem(a), f.elem(b))).unwrap();
            let n = u64::try_from(od.n.clone()).unwrap();
            prop_assert_eq!(n, brute_count(p, a, b));
            let d = smallest_nonresidue(p);
            let twist = brute_count(p, mulm(a, mulm(d, d, p), p), mulm(b, mulm(d, mulm(d, d, p), p), p));
            prop_assert_eq!(u64::try_from(od.n_twist.clone()).unwrap(), twist);
            prop_assert_eq!(n + twist, 2 * p + 2);
            prop_assert!(hasse(p, n) && hasse(p, twist));
            Ok(())
        })
        .map_err(|e| format!("small primes: {e}"))?;

    let ctx = SeedContext::new(modulus(P), "acceptance", [0x42; 32]).unwrap();
    let u = std::cell::RefCell::new(ctx.stream(StreamLabel::U));
    let curves = (0..P, 0..P).prop_filter("singular", |&(a, b)| nonsingular(P, a, b));
    runner(25)
        .run(&curves, |(a, b)| {
            let f = modulus(P);
            let e = ShortWeierstrass::new(f.elem(a), f.elem(b));
            let od = count_points(&e).unwrap();
            let n = u64::try_from(od.n.clone()).unwrap();
            prop_assert_eq!(n + u64::try_from(od.n_twist.clone()).unwrap(), 2 * P + 2);
            prop_assert!(hasse(P, n));
            for _ in 0..10 {
                let pt = e.random_point(&mut *u.borrow_mut()).expect("point found");
                prop_assert!(e.contains(&pt));
                prop_assert!(e.mul(&BigUint::from(n), &pt).is_infinity());
            }
            Ok(())
        })
        .map_err(|e| format!("p = {P}: {e}"))?;
    Ok("50 small-prime curves match enumeration; 250 points killed by N at 100003".into())
}

fn solubility() -> Outcome {
    runner(500)
        .run(&prop::array::uniform5(0..P), |c| {
            let f = BinaryQuartic::from_u64(&modulus(P), c);
            for l in ELLS {
                prop_assert_eq!(f.soluble_mod_ell(l), quartic_soluble_brute(c.map(|v| v % l), l), "ell {}", l);
            }
            Ok(())
        })
        .map_err(|e| format!("quartics: {e}"))?;
    runner(500)
        .run(&prop::array::uniform10(0..P), |c| {
            let f = TernaryCubic::from_u64(&modulus(P), c);
            for l in ELLS {
                prop_assert_eq!(f.soluble_mod_ell(l), cubic_soluble_brute(c.map(|v| v % l), l), "ell {}", l);
            }
            Ok(())
        })
        .map_err(|e| format!("cubics: {e}"))?;
    Ok("500 quartics and 500 cubics per ell in {3, 5, 7, 11}".into())
}

fn tamper(dir: &Path) -> Outcome {
    let bytes = std::fs::read(dir.join("run1.json")).unwrap();
    let base: Value = serde_json::from_slice(bytes.trim_ascii_end()).unwrap();
    let detected = |v: &Value, reseal: bool| match transcript::parse(&serde_json::to_vec(v).unwrap()) {
        Err(_) => true,
        Ok(mut tr) => {
            if reseal {
                tr.seal();
            }
            !verify(&tr, &VerifyOptions::default()).passed()
        }
    };
    for (paths, reseal) in [(all_leaves(&base), false), (derived_leaves(&base), true)] {
        let strategy = (prop::sample::select(paths), any::<Index>(), 0u8..16);
        runner(100)
            .run(&strategy, |(path, pos, digit)| {
                let mut v = base.clone();
                mutate(v.pointer_mut(&path).unwrap(), &pos, digit);
                prop_assert!(detected(&v, reseal), "mutation at {} verified", path);
                Ok(())
            })
            .map_err(|e| e.to_string())?;
    }
    Ok("100 mutations rejected; 100 resealed mutations of derived fields rejected".into())
}

fn structural() -> Outcome {
    let f = modulus(P);
    let c4 = (&f.from_i64(-1) * &f.elem(27).inv().unwrap()).value().clone();
    let (params, _, report) =
        validate_external(&f, &c4, &BigUint::from(0u32), &Policy::demo(), &PointCounting::default())
            .map_err(|e| e.to_string())?;
    check(params.a() == &f.elem(1) && params.b() == &f.elem(0), || "not y^2 = x^3 + x".into())?;
    let k = report.embedding_k_found;
    check(!report.embedding.passed && k.is_some_and(|k| k <= 2), || format!("embedding k {k:?}"))?;

    let (p, a, b) = SMALL_PRIMES
        .iter()
        .filter(|&&p| p > 100)
        .flat_map(|&p| (0..p).flat_map(move |a| (0..p).map(move |b| (p, a, b))))
        .find(|&(p, a, b)| nonsingular(p, a, b) && brute_count(p, a, b) == p)
        .ok_or("no trace-1 curve found")?;
    let g = modulus(p);
    let c4 = mulm(neg(a, p), invm(27, p), p);
    let c6 = mulm(neg(b, p), invm(54, p), p);
    let (_, od, report) = validate_external(
        &g,
        &BigUint::from(c4),
        &BigUint::from(c6),
        &Policy::demo(),
        &PointCounting::default(),
    )
    .map_err(|e| e.to_string())?;
    check(od.n == BigUint::from(p), || format!("#E {} at p {p}", od.n))?;
    check(!report.anomalous.passed, || "anomalous filter passed".into())?;
    Ok(format!(
        "y^2 = x^3 + x at {P}: embedding degree {}; trace 1 at p = {p} (A = {a}, B = {b}) rejected as anomalous",
        k.unwrap()
    ))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let d = dir.path();
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(table_replay)),
        (2, Box::new(|| end_to_end(d))),
        (3, Box::new(|| determinism(d))),
        (4, Box::new(invariance)),
        (5, Box::new(calibration)),
        (6, Box::new(counting)),
        (7, Box::new(solubility)),
        (8, Box::new(|| tamper(d))),
        (9, Box::new(structural)),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
