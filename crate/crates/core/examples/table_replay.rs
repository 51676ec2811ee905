//! Count and validate the reference curve at p = 100003.

use num_bigint::BigUint;
use selmergen::curve::PointCounting;
use selmergen::pipeline::validate_external;
use selmergen::validate::Policy;

fn main() {
    let m = selmergen::demo_context().modulus().clone();
    let policy = Policy::demo();
    let (params, od, report) = validate_external(
        &m,
        &BigUint::from(82765u32),
        &BigUint::from(79541u32),
        &policy,
        &PointCounting::default(),
    )
    .expect("non-singular");

    println!("y^2 = x^3 + {} x + {} over F_{}", params.a(), params.b(), m.p());
    print!("{}", selmergen::cli::validation_rows(&params, &od, &report, policy.k_max));
    println!("passed: {}", report.passed);
}
