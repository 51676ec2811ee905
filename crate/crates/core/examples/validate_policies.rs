//! One curve under both policy profiles, and two curves the filters reject.

use num_bigint::BigUint;
use selmergen::curve::PointCounting;
use selmergen::pipeline::validate_external;
use selmergen::validate::Policy;

fn show(label: &str, c4: &BigUint, c6: &BigUint, policy: &Policy) {
    let m = selmergen::demo_context().modulus().clone();
    let (_, od, report) = validate_external(&m, c4, c6, policy, &PointCounting::default()).unwrap();
    println!("{label} [{}] #E = {}", policy.profile.as_str(), od.n);
    for (name, check) in report.checks() {
        let mark = if check.passed { "ok  " } else { "FAIL" };
        println!("  {mark} {name:<10} {}", check.detail);
    }
}

fn main() {
    let m = selmergen::demo_context().modulus().clone();
    let (c4, c6) = (BigUint::from(82765u32), BigUint::from(79541u32));
    show("reference curve", &c4, &c6, &Policy::demo());
    show("reference curve", &c4, &c6, &Policy::strict(&m));

    // y^2 = x^3 + x is supersingular when p = 3 mod 4.
    let c4 = (&m.from_i64(-1) * &m.elem(27).inv().unwrap()).value().clone();
    show("y^2 = x^3 + x", &c4, &BigUint::from(0u32), &Policy::demo());
}
