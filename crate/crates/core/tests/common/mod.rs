//! Random small configurations shared by the integration suites.

#![allow(dead_code)]

use mustafin::algebra::linalg::rank;
use mustafin::algebra::Rational;
use mustafin::building::{Configuration, Laurent, Matrix, Vertex};
use mustafin::degeneration::FlagType;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every flag type in dimension `d`.
pub fn flag_types(d: usize) -> Vec<FlagType> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << (d - 1)) {
        let ranks: Vec<usize> = (1..d).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        out.push(FlagType::new(d, &ranks).unwrap());
    }
    out
}

/// `n` distinct diagonal lattices with exponents in `[0, spread]`.
pub fn diagonal_config(d: usize, n: usize, spread: i64, rng: &mut ChaCha8Rng) -> Configuration {
    loop {
        let exps: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..=spread)).collect())
            .collect();
        if let Ok(c) = Configuration::from_diagonals(&exps) {
            return c;
        }
    }
}

/// The standard lattice and `U·diag(t^e)` with `U` random, invertible at 0.
pub fn sheared_pair(d: usize, spread: i64, rng: &mut ChaCha8Rng) -> Configuration {
    let e: Vec<i64> = loop {
        let e: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=spread)).collect();
        if e.iter().any(|&x| x != e[0]) {
            break e;
        }
    };
    loop {
        let entries: Vec<Laurent> = (0..d * d)
            .map(|_| Laurent::from_coeffs(0, vec![rng.gen_range(-2i64..=2).into(), rng.gen_range(-2i64..=2).into()]))
            .collect();
        let u = Matrix::new(d, d, entries).unwrap();
        if rank(&u.eval(&Rational::zero())) < d {
            continue;
        }
        let v = Vertex::from_matrix(u.mul(&Matrix::diag_t(&e)).unwrap()).unwrap();
        return Configuration::new(vec![Vertex::diagonal(&vec![0; d]).unwrap(), v]).unwrap();
    }
}
