// Frozen values from an independent script (Newton differences of explicit
// value lists, symbolic expansion). Do not edit by hand.

// (p, alpha, beta, x0, coefficients)
pub const LAGRANGE: &[(u64, u32, u32, i64, &[i64])] = &[
    (2, 1, 2, 0, &[1, 3, 2]),
    (2, 1, 2, 1, &[0, 1, 2]),
    (2, 2, 2, 0, &[1, 3, 1, 3, 2, 2]),
    (2, 2, 2, 1, &[0, 1, 2, 3, 0, 2]),
    (2, 2, 2, 2, &[0, 0, 1, 1, 2, 2]),
    (2, 2, 2, 3, &[0, 0, 0, 1, 0, 2]),
    (3, 1, 2, 0, &[1, 8, 1, 0, 6]),
    (3, 1, 2, 1, &[0, 1, 7, 3, 6]),
    (3, 1, 2, 2, &[0, 0, 1, 6, 6]),
    (2, 1, 3, 0, &[1, 7, 2, 4]),
    (2, 1, 3, 1, &[0, 1, 6, 4]),
    (5, 1, 2, 0, &[1, 24, 1, 24, 1, 0, 20, 20, 20]),
    (5, 1, 2, 1, &[0, 1, 23, 3, 21, 5, 20, 0, 20]),
    (5, 1, 2, 2, &[0, 0, 1, 22, 6, 15, 15, 5, 20]),
    (5, 1, 2, 3, &[0, 0, 0, 1, 21, 10, 5, 10, 20]),
    (5, 1, 2, 4, &[0, 0, 0, 0, 1, 20, 15, 15, 20]),
    (3, 2, 2, 0, &[1, 8, 1, 8, 1, 8, 1, 8, 1, 0, 0, 0, 6, 3, 6]),
    (3, 2, 2, 1, &[0, 1, 7, 3, 5, 5, 3, 7, 1, 0, 0, 0, 0, 6, 6]),
    (3, 2, 2, 2, &[0, 0, 1, 6, 6, 8, 6, 6, 1, 0, 0, 0, 0, 0, 6]),
    (3, 2, 2, 3, &[0, 0, 0, 1, 5, 1, 7, 8, 7, 3, 6, 3, 6, 3, 6]),
    (3, 2, 2, 4, &[0, 0, 0, 0, 1, 4, 6, 1, 7, 0, 3, 3, 0, 6, 6]),
    (3, 2, 2, 5, &[0, 0, 0, 0, 0, 1, 3, 3, 7, 0, 0, 3, 0, 0, 6]),
    (3, 2, 2, 6, &[0, 0, 0, 0, 0, 0, 1, 2, 1, 6, 3, 6, 6, 3, 6]),
    (3, 2, 2, 7, &[0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 6, 6, 0, 6, 6]),
    (3, 2, 2, 8, &[0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 6, 0, 0, 6]),
    (2, 3, 1, 0, &[1, 1, 1, 1, 1, 1, 1, 1]),
    (2, 3, 1, 1, &[0, 1, 0, 1, 0, 1, 0, 1]),
    (2, 3, 1, 2, &[0, 0, 1, 1, 0, 0, 1, 1]),
    (2, 3, 1, 3, &[0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 3, 1, 4, &[0, 0, 0, 0, 1, 1, 1, 1]),
    (2, 3, 1, 5, &[0, 0, 0, 0, 0, 1, 0, 1]),
    (2, 3, 1, 6, &[0, 0, 0, 0, 0, 0, 1, 1]),
    (2, 3, 1, 7, &[0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 2, 3, 0, &[1, 7, 1, 7, 2, 2, 0, 4]),
    (2, 2, 3, 1, &[0, 1, 6, 3, 4, 6, 4, 4]),
    (2, 2, 3, 2, &[0, 0, 1, 5, 6, 6, 0, 4]),
    (2, 2, 3, 3, &[0, 0, 0, 1, 4, 2, 4, 4]),
];
// (a, b, coefficients of C(X,a) C(X,b) over Z)
pub const PRODUCTS: &[(usize, usize, &[i64])] = &[
    (0, 0, &[1]),
    (0, 1, &[0, 1]),
    (0, 2, &[0, 0, 1]),
    (0, 3, &[0, 0, 0, 1]),
    (0, 4, &[0, 0, 0, 0, 1]),
    (1, 1, &[0, 1, 2]),
    (1, 2, &[0, 0, 2, 3]),
    (1, 3, &[0, 0, 0, 3, 4]),
    (1, 4, &[0, 0, 0, 0, 4, 5]),
    (2, 2, &[0, 0, 1, 6, 6]),
    (2, 3, &[0, 0, 0, 3, 12, 10]),
    (2, 4, &[0, 0, 0, 0, 6, 20, 15]),
    (3, 3, &[0, 0, 0, 1, 12, 30, 20]),
    (3, 4, &[0, 0, 0, 0, 4, 30, 60, 35]),
    (4, 4, &[0, 0, 0, 0, 1, 20, 90, 140, 70]),
];
// (modulus, binomial coefficients, monomial coefficients as (num, den), balanced lift)
/// (modulus, binomial coefficients, monomial coefficients as (num, den))
pub type RationalCase = (u64, &'static [i64], &'static [(i64, i64)]);
pub const RATIONAL: &[RationalCase] = &[
    (9, &[1, -1, 1, 0, -3], &[(1, 1), (-3, 4), (-7, 8), (3, 4), (-1, 8)]),
    (4, &[1, 3, 2, 1], &[(1, 1), (-5, 3), (1, 2), (1, 6)]),
    (12, &[5, 3, 6], &[(5, 1), (0, 1), (3, 1)]),
    (8, &[0, 0, 0, 0, 0, 7], &[(0, 1), (-1, 5), (5, 12), (-7, 24), (1, 12), (-1, 120)]),
    (6, &[2, 5, 4, 3], &[(2, 1), (1, 1), (-5, 2), (1, 2)]),
];
