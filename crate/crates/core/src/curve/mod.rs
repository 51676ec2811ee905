//! Short Weierstrass curves over `F_p`: group law, random points, twists and
//! point counting.

mod count;

use num_bigint::BigUint;

use crate::arith::{Fe, PrimeModulus};
use crate::stream::FieldStream;

pub use count::{
    count_points, count_points_with, hasse_holds, legendre_sum_count, order_data, ExternalCounter, OrderData,
    PointCounter, PointCounting, DEFAULT_BUILTIN_MAX_BITS,
};

/// Draws allowed before [`ShortWeierstrass::random_point`] gives up.
pub const RANDOM_POINT_BUDGET: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine { x: Fe, y: Fe },
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// `y^2 = x^3 + a x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortWeierstrass {
    pub a: Fe,
    pub b: Fe,
}

impl ShortWeierstrass {
    pub fn new(a: Fe, b: Fe) -> Self {
        assert!(a.modulus() == b.modulus(), "coefficients from different fields");
        Self { a, b }
    }

    pub fn modulus(&self) -> &PrimeModulus {
        self.a.modulus()
    }

    /// `4a^3 + 27b^2 = 0`.
    pub fn is_singular(&self) -> bool {
        let m = self.modulus();
        (&(&m.elem(4) * &self.a.pow_u64(3)) + &(&m.elem(27) * &self.b.square())).is_zero()
    }

    /// Right-hand side `x^3 + a x + b`.
    pub fn rhs(&self, x: &Fe) -> Fe {
        &(&x.pow_u64(3) + &(&self.a * x)) + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    pub fn double(&self, p: &Point) -> Point {
        let Point::Affine { x, y } = p else {
            return Point::Infinity;
        };
        if y.is_zero() {
            return Point::Infinity;
        }
        let m = self.modulus();
        let num = &(&m.elem(3) * &x.square()) + &self.a;
        let lambda = &num * &(&m.elem(2) * y).inv().expect("y is non-zero");
        let x3 = &(&lambda.square() - x) - x;
        let y3 = &(&lambda * &(x - &x3)) - y;
        Point::Affine { x: x3, y: y3 }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                if x1 == x2 {
                    if (y1 + y2).is_zero() {
                        return Point::Infinity;
                    }
                    return self.double(p);
                }
                let lambda = &(y2 - y1) * &(x2 - x1).inv().expect("x1 != x2");
                let x3 = &(&lambda.square() - x1) - x2;
                let y3 = &(&lambda * &(x1 - &x3)) - y1;
                Point::Affine { x: x3, y: y3 }
            }
        }
    }

    /// `k · P` by left-to-right double-and-add.
    pub fn mul(&self, k: &BigUint, p: &Point) -> Point {
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    /// Draw abscissae from `u` until `x^3 + a x + b` is a square and return
    /// the point with the smaller of the two ordinates.
    pub fn random_point<S: FieldStream>(&self, u: &mut S) -> Option<Point> {
        for _ in 0..RANDOM_POINT_BUDGET {
            let x = u.next_element();
            if let Some(y) = self.rhs(&x).sqrt() {
                let neg = -&y;
                let y = if neg.value() < y.value() { neg } else { y };
                return Some(Point::Affine { x, y });
            }
        }
        None
    }

    /// Quadratic twist `y^2 = x^3 + a g^2 x + b g^3` by the smallest
    /// non-residue `g >= 2`.
    pub fn quadratic_twist(&self) -> (ShortWeierstrass, Fe) {
        let g = smallest_nonresidue(self.modulus());
        let twist = ShortWeierstrass::new(&self.a * &g.square(), &self.b * &g.pow_u64(3));
        (twist, g)
    }
}

pub fn smallest_nonresidue(m: &PrimeModulus) -> Fe {
    let mut g = m.elem(2);
    while g.legendre() != -1 {
        g = &g + &m.one();
    }
    g
}
