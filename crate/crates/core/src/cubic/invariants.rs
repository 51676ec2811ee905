//! Integer polynomials for the degree-4 and degree-6 invariants of a
//! ternary cubic, in the coefficient order of [`MONOMIALS`](super::MONOMIALS).
//!
//! Both are the primitive integral generators of their invariant spaces.
//! They were obtained as the kernel of the `sl_3` raising and lowering
//! operators acting on weight-zero monomials, and are checked in the test
//! suite by brute-force `SL_3` substitution. On `y^2 z - x^3 - A x z^2 - B z^3`
//! they evaluate to `S = -48A`, `T = 864B`.

/// `(coefficient, exponent of each of the ten cubic coefficients)`.
pub type Term = (i64, [u8; 10]);

pub const DEGREE_4: [Term; 25] = [
    (144, [1, 0, 0, 1, 0, 0, 0, 1, 0, 1]),
    (-48, [1, 0, 0, 1, 0, 0, 0, 0, 2, 0]),
    (-216, [1, 0, 0, 0, 1, 0, 1, 0, 0, 1]),
    (24, [1, 0, 0, 0, 1, 0, 0, 1, 1, 0]),
    (144, [1, 0, 0, 0, 0, 1, 1, 0, 1, 0]),
    (-48, [1, 0, 0, 0, 0, 1, 0, 2, 0, 0]),
    (-48, [0, 2, 0, 0, 0, 0, 0, 1, 0, 1]),
    (16, [0, 2, 0, 0, 0, 0, 0, 0, 2, 0]),
    (144, [0, 1, 1, 0, 0, 0, 1, 0, 0, 1]),
    (-16, [0, 1, 1, 0, 0, 0, 0, 1, 1, 0]),
    (24, [0, 1, 0, 1, 1, 0, 0, 0, 0, 1]),
    (-16, [0, 1, 0, 1, 0, 1, 0, 0, 1, 0]),
    (-8, [0, 1, 0, 0, 2, 0, 0, 0, 1, 0]),
    (24, [0, 1, 0, 0, 1, 1, 0, 1, 0, 0]),
    (-48, [0, 1, 0, 0, 0, 2, 1, 0, 0, 0]),
    (-48, [0, 0, 2, 0, 0, 0, 1, 0, 1, 0]),
    (16, [0, 0, 2, 0, 0, 0, 0, 2, 0, 0]),
    (-48, [0, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (24, [0, 0, 1, 1, 1, 0, 0, 0, 1, 0]),
    (-16, [0, 0, 1, 1, 0, 1, 0, 1, 0, 0]),
    (-8, [0, 0, 1, 0, 2, 0, 0, 1, 0, 0]),
    (24, [0, 0, 1, 0, 1, 1, 1, 0, 0, 0]),
    (16, [0, 0, 0, 2, 0, 2, 0, 0, 0, 0]),
    (-8, [0, 0, 0, 1, 2, 1, 0, 0, 0, 0]),
    (1, [0, 0, 0, 0, 4, 0, 0, 0, 0, 0]),
];

pub const DEGREE_6: [Term; 103] = [
    (-5832, [2, 0, 0, 0, 0, 0, 2, 0, 0, 2]),
    (3888, [2, 0, 0, 0, 0, 0, 1, 1, 1, 1]),
    (-864, [2, 0, 0, 0, 0, 0, 1, 0, 3, 0]),
    (-864, [2, 0, 0, 0, 0, 0, 0, 3, 0, 1]),
    (216, [2, 0, 0, 0, 0, 0, 0, 2, 2, 0]),
    (3888, [1, 1, 0, 1, 0, 0, 1, 0, 0, 2]),
    (-1296, [1, 1, 0, 1, 0, 0, 0, 1, 1, 1]),
    (288, [1, 1, 0, 1, 0, 0, 0, 0, 3, 0]),
    (-1296, [1, 1, 0, 0, 1, 0, 1, 0, 1, 1]),
    (864, [1, 1, 0, 0, 1, 0, 0, 2, 0, 1]),
    (-144, [1, 1, 0, 0, 1, 0, 0, 1, 2, 0]),
    (-1296, [1, 1, 0, 0, 0, 1, 1, 1, 0, 1]),
    (864, [1, 1, 0, 0, 0, 1, 1, 0, 2, 0]),
    (-144, [1, 1, 0, 0, 0, 1, 0, 2, 1, 0]),
    (-1296, [1, 0, 1, 1, 0, 0, 1, 0, 1, 1]),
    (864, [1, 0, 1, 1, 0, 0, 0, 2, 0, 1]),
    (-144, [1, 0, 1, 1, 0, 0, 0, 1, 2, 0]),
    (-1296, [1, 0, 1, 0, 1, 0, 1, 1, 0, 1]),
    (864, [1, 0, 1, 0, 1, 0, 1, 0, 2, 0]),
    (-144, [1, 0, 1, 0, 1, 0, 0, 2, 1, 0]),
    (3888, [1, 0, 1, 0, 0, 1, 2, 0, 0, 1]),
    (-1296, [1, 0, 1, 0, 0, 1, 1, 1, 1, 0]),
    (288, [1, 0, 1, 0, 0, 1, 0, 3, 0, 0]),
    (-864, [1, 0, 0, 3, 0, 0, 0, 0, 0, 2]),
    (864, [1, 0, 0, 2, 1, 0, 0, 0, 1, 1]),
    (864, [1, 0, 0, 2, 0, 1, 0, 1, 0, 1]),
    (-576, [1, 0, 0, 2, 0, 1, 0, 0, 2, 0]),
    (-648, [1, 0, 0, 1, 2, 0, 0, 1, 0, 1]),
    (-72, [1, 0, 0, 1, 2, 0, 0, 0, 2, 0]),
    (-1296, [1, 0, 0, 1, 1, 1, 1, 0, 0, 1]),
    (720, [1, 0, 0, 1, 1, 1, 0, 1, 1, 0]),
    (864, [1, 0, 0, 1, 0, 2, 1, 0, 1, 0]),
    (-576, [1, 0, 0, 1, 0, 2, 0, 2, 0, 0]),
    (540, [1, 0, 0, 0, 3, 0, 1, 0, 0, 1]),
    (36, [1, 0, 0, 0, 3, 0, 0, 1, 1, 0]),
    (-648, [1, 0, 0, 0, 2, 1, 1, 0, 1, 0]),
    (-72, [1, 0, 0, 0, 2, 1, 0, 2, 0, 0]),
    (864, [1, 0, 0, 0, 1, 2, 1, 1, 0, 0]),
    (-864, [1, 0, 0, 0, 0, 3, 2, 0, 0, 0]),
    (-864, [0, 3, 0, 0, 0, 0, 1, 0, 0, 2]),
    (288, [0, 3, 0, 0, 0, 0, 0, 1, 1, 1]),
    (-64, [0, 3, 0, 0, 0, 0, 0, 0, 3, 0]),
    (864, [0, 2, 1, 0, 0, 0, 1, 0, 1, 1]),
    (-576, [0, 2, 1, 0, 0, 0, 0, 2, 0, 1]),
    (96, [0, 2, 1, 0, 0, 0, 0, 1, 2, 0]),
    (216, [0, 2, 0, 2, 0, 0, 0, 0, 0, 2]),
    (-144, [0, 2, 0, 1, 1, 0, 0, 0, 1, 1]),
    (-144, [0, 2, 0, 1, 0, 1, 0, 1, 0, 1]),
    (96, [0, 2, 0, 1, 0, 1, 0, 0, 2, 0]),
    (-72, [0, 2, 0, 0, 2, 0, 0, 1, 0, 1]),
    (48, [0, 2, 0, 0, 2, 0, 0, 0, 2, 0]),
    (864, [0, 2, 0, 0, 1, 1, 1, 0, 0, 1]),
    (-144, [0, 2, 0, 0, 1, 1, 0, 1, 1, 0]),
    (-576, [0, 2, 0, 0, 0, 2, 1, 0, 1, 0]),
    (216, [0, 2, 0, 0, 0, 2, 0, 2, 0, 0]),
    (864, [0, 1, 2, 0, 0, 0, 1, 1, 0, 1]),
    (-576, [0, 1, 2, 0, 0, 0, 1, 0, 2, 0]),
    (96, [0, 1, 2, 0, 0, 0, 0, 2, 1, 0]),
    (-144, [0, 1, 1, 2, 0, 0, 0, 0, 1, 1]),
    (720, [0, 1, 1, 1, 1, 0, 0, 1, 0, 1]),
    (-144, [0, 1, 1, 1, 1, 0, 0, 0, 2, 0]),
    (-1296, [0, 1, 1, 1, 0, 1, 1, 0, 0, 1]),
    (48, [0, 1, 1, 1, 0, 1, 0, 1, 1, 0]),
    (-648, [0, 1, 1, 0, 2, 0, 1, 0, 0, 1]),
    (24, [0, 1, 1, 0, 2, 0, 0, 1, 1, 0]),
    (720, [0, 1, 1, 0, 1, 1, 1, 0, 1, 0]),
    (-144, [0, 1, 1, 0, 1, 1, 0, 2, 0, 0]),
    (-144, [0, 1, 1, 0, 0, 2, 1, 1, 0, 0]),
    (-144, [0, 1, 0, 2, 1, 1, 0, 0, 0, 1]),
    (96, [0, 1, 0, 2, 0, 2, 0, 0, 1, 0]),
    (36, [0, 1, 0, 1, 3, 0, 0, 0, 0, 1]),
    (24, [0, 1, 0, 1, 2, 1, 0, 0, 1, 0]),
    (-144, [0, 1, 0, 1, 1, 2, 0, 1, 0, 0]),
    (288, [0, 1, 0, 1, 0, 3, 1, 0, 0, 0]),
    (-12, [0, 1, 0, 0, 4, 0, 0, 0, 1, 0]),
    (36, [0, 1, 0, 0, 3, 1, 0, 1, 0, 0]),
    (-72, [0, 1, 0, 0, 2, 2, 1, 0, 0, 0]),
    (-864, [0, 0, 3, 0, 0, 0, 2, 0, 0, 1]),
    (288, [0, 0, 3, 0, 0, 0, 1, 1, 1, 0]),
    (-64, [0, 0, 3, 0, 0, 0, 0, 3, 0, 0]),
    (-576, [0, 0, 2, 2, 0, 0, 0, 1, 0, 1]),
    (216, [0, 0, 2, 2, 0, 0, 0, 0, 2, 0]),
    (864, [0, 0, 2, 1, 1, 0, 1, 0, 0, 1]),
    (-144, [0, 0, 2, 1, 1, 0, 0, 1, 1, 0]),
    (-144, [0, 0, 2, 1, 0, 1, 1, 0, 1, 0]),
    (96, [0, 0, 2, 1, 0, 1, 0, 2, 0, 0]),
    (-72, [0, 0, 2, 0, 2, 0, 1, 0, 1, 0]),
    (48, [0, 0, 2, 0, 2, 0, 0, 2, 0, 0]),
    (-144, [0, 0, 2, 0, 1, 1, 1, 1, 0, 0]),
    (216, [0, 0, 2, 0, 0, 2, 2, 0, 0, 0]),
    (288, [0, 0, 1, 3, 0, 1, 0, 0, 0, 1]),
    (-72, [0, 0, 1, 2, 2, 0, 0, 0, 0, 1]),
    (-144, [0, 0, 1, 2, 1, 1, 0, 0, 1, 0]),
    (96, [0, 0, 1, 2, 0, 2, 0, 1, 0, 0]),
    (36, [0, 0, 1, 1, 3, 0, 0, 0, 1, 0]),
    (24, [0, 0, 1, 1, 2, 1, 0, 1, 0, 0]),
    (-144, [0, 0, 1, 1, 1, 2, 1, 0, 0, 0]),
    (-12, [0, 0, 1, 0, 4, 0, 0, 1, 0, 0]),
    (36, [0, 0, 1, 0, 3, 1, 1, 0, 0, 0]),
    (-64, [0, 0, 0, 3, 0, 3, 0, 0, 0, 0]),
    (48, [0, 0, 0, 2, 2, 2, 0, 0, 0, 0]),
    (-12, [0, 0, 0, 1, 4, 1, 0, 0, 0, 0]),
    (1, [0, 0, 0, 0, 6, 0, 0, 0, 0, 0]),
];
