//! S and T of a ternary cubic, checked against the Weierstrass cubic.

use selmergen::arith::PrimeModulus;
use selmergen::cubic::{TernaryCubic, MONOMIALS};

fn main() {
    let p = 100_003u64;
    let m = PrimeModulus::from_u64(p).unwrap();
    let (a, b) = (11u64, 29u64);

    // y^2 z - x^3 - A x z^2 - B z^3
    let c = TernaryCubic::from_u64(&m, [p - 1, 0, 0, 0, 0, p - a, 0, 1, 0, p - b]);
    for (coeff, (i, j, k)) in c.coeffs.iter().zip(MONOMIALS) {
        if !coeff.is_zero() {
            println!("  {coeff} * x^{i} y^{j} z^{k}");
        }
    }
    let inv = c.invariants();
    println!("S = {}, T = {}", inv.s, inv.t);
    println!("c4 = {} (-48A = {})", inv.c4, m.from_i64(-48 * a as i64));
    println!("c6 = {} (-864B = {})", inv.c6, m.from_i64(-864 * b as i64));
}
