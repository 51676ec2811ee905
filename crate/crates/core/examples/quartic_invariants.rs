//! Invariants and local solubility of a binary quartic.

use selmergen::arith::PrimeModulus;
use selmergen::quartic::BinaryQuartic;

fn main() {
    let m = PrimeModulus::from_u64(100_003).unwrap();
    // x^4 + 2x^3 z - 3x^2 z^2 + 5x z^3 + 7z^4
    let f = BinaryQuartic::from_u64(&m, [1, 2, 100_000, 5, 7]);
    let inv = f.invariants();
    println!("I = {}, J = {}", inv.i, inv.j);
    println!("c4 = 16I = {}, c6 = 32J = {}", inv.c4, inv.c6);
    println!("singular: {}", inv.is_singular());

    // Substituting x -> x + z leaves I and J unchanged.
    let g = BinaryQuartic::from_u64(&m, [1, 6, 9, 9, 12]);
    let moved = g.invariants();
    println!("after x -> x + z: I = {}, J = {}", moved.i, moved.j);

    for ell in [3, 5, 7, 11] {
        println!("soluble mod {ell}: {}", f.soluble_mod_ell(ell));
    }
}
