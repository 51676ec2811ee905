//! Plug in a point counter for primes beyond the built-in one.
//!
//! With a command line as arguments, that program is used through the
//! subprocess protocol (p, A, B on stdin; N on stdout). Otherwise an
//! in-process counter stands in for it.

use std::sync::Arc;

use num_bigint::BigUint;
use selmergen::curve::{count_points_with, ExternalCounter, PointCounter, PointCounting, ShortWeierstrass};
use selmergen::error::CountError;

struct Enumerate;

impl PointCounter for Enumerate {
    fn count(&self, p: &BigUint, a: &BigUint, b: &BigUint) -> Result<BigUint, CountError> {
        let small = |v: &BigUint| u64::try_from(v.clone()).map_err(|e| CountError::External(e.to_string()));
        let (p, a, b) = (small(p)?, small(a)?, small(b)?);
        let squares: Vec<u64> = (0..p).map(|y| y * y % p).collect();
        let mut roots = vec![0u64; p as usize];
        squares.iter().for_each(|&s| roots[s as usize] += 1);
        let n = 1 + (0..p)
            .map(|x| roots[((x * x % p * x + a * x + b) % p) as usize])
            .sum::<u64>();
        Ok(n.into())
    }

    fn describe(&self) -> String {
        "enumerate".into()
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let counter: Arc<dyn PointCounter> = match args.split_first() {
        Some((program, rest)) => Arc::new(ExternalCounter::new(program.clone(), rest.to_vec())),
        None => Arc::new(Enumerate),
    };
    let counting = PointCounting {
        builtin_max_bits: 0,
        external: Some(counter),
    };

    let m = selmergen::demo_context().modulus().clone();
    let curve = ShortWeierstrass::new(m.elem(3), m.elem(7));
    println!("counter: {}", counting.source_for(m.bit_len()));
    match count_points_with(&curve, &counting) {
        Ok(od) => println!("#E = {}, #E' = {}, trace {}", od.n, od.n_twist, od.trace),
        Err(e) => println!("error: {e}"),
    }
}
