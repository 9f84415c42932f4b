#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use toric::buchberger::{buchberger, GroebnerBasis};
use toric::orders::{TermOrder, TieBreak};
use toric::toric::{lawrence, toric_generators, ConfigMatrix};
use toric::exactmath::IntMatrix;

pub fn cm(rows: &[&[i64]]) -> ConfigMatrix {
    ConfigMatrix::from_rows(rows).unwrap()
}

pub fn rat(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn twisted_cubic() -> ConfigMatrix {
    cm(&[&[1, 1, 1, 1], &[0, 1, 2, 3]])
}

pub const B: [[i64; 5]; 2] = [[1, 3, 4, 6, 0], [0, 0, 0, -5, 1]];

pub fn lawrence_b() -> ConfigMatrix {
    ConfigMatrix::new(lawrence(&IntMatrix::from_rows(&B).unwrap())).unwrap()
}

/// x-parts of the sixteen Graver binomials `x^u y^v - x^v y^u` of the
/// Lawrence lifting of `B`; the first six are the circuits.
pub const LAMBDA_B: [[i64; 5]; 16] = [
    [-3, 1, 0, 0, 0],
    [-4, 0, 1, 0, 0],
    [0, -4, 3, 0, 0],
    [0, -2, 0, 1, 5],
    [-6, 0, 0, 1, 5],
    [0, 0, -3, 2, 10],
    [-2, 0, -1, 1, 5],
    [-3, -1, 0, 1, 5],
    [-1, -1, 1, 0, 0],
    [1, -1, -1, 1, 5],
    [0, 2, -3, 1, 5],
    [1, -3, 2, 0, 0],
    [2, -2, 1, 0, 0],
    [-1, 1, -2, 1, 5],
    [2, 0, -2, 1, 5],
    [-1, -1, -2, 2, 10],
];

pub fn sign_normal(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// `(u, -u)`, sign-normalized.
pub fn lifted(u: &[i64]) -> Vec<i64> {
    sign_normal(u.iter().copied().chain(u.iter().map(|x| -x)).collect())
}

/// A random pointed configuration with `d <= 3`, `n <= 6` and entries in `[0, 5]`,
/// of full row rank and without zero columns.
pub fn random_config(rng: &mut ChaCha8Rng) -> ConfigMatrix {
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d + 1..=6);
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..=5)).collect()).collect();
        let Ok(a) = ConfigMatrix::from_rows(&rows) else { continue };
        if a.d() == d && a.is_pointed() && !a.has_zero_column() {
            return a;
        }
    }
}

/// A random weight for which the reduced basis does not depend on the
/// tie-break, with that basis.
pub fn generic_weight(a: &ConfigMatrix, rng: &mut ChaCha8Rng, range: i64) -> (Vec<i64>, GroebnerBasis) {
    let gens = toric_generators(a).unwrap();
    loop {
        let w: Vec<i64> = (0..a.n()).map(|_| rng.gen_range(0..=range)).collect();
        let pos = a.positive_weight(&rat(&w)).unwrap();
        let ord = TermOrder::from_integer_weight(pos.clone(), TieBreak::DegRevLex, (0..a.n()).collect()).unwrap();
        let gb = buchberger(&gens, &ord).unwrap();
        if gb.weight_is_interior(&pos) {
            return (w, gb);
        }
    }
}
