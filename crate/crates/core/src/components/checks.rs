//! Structural invariants of a decomposed fiber and the n = 2 experiment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{block_vars, decompose, saturate_blocks, Decomposed, Options};
use crate::algebra::linalg::rank;
use crate::algebra::Rational;
use crate::building::{Configuration, Laurent, Matrix, Vertex};
use crate::degeneration::{build_degeneration_with, FlagType};
use crate::error::Result;

/// `(n, multinomial)` for two vertices, `(n, None)` otherwise. The
/// multinomial counts the Schubert cells of the flag variety.
pub fn count_bounds(flag: &FlagType, n: usize) -> (usize, Option<u64>) {
    if n != 2 {
        return (n, None);
    }
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    let mut parts = Vec::new();
    let mut prev = 0;
    for &k in flag.ranks() {
        parts.push(k - prev);
        prev = k;
    }
    parts.push(flag.dim() - prev);
    let denom: u64 = parts.into_iter().map(fact).product();
    (n, Some(fact(flag.dim()) / denom))
}

/// Pairs of components meeting in the multiprojective sense.
pub fn dual_graph(dec: &Decomposed) -> Vec<(usize, usize)> {
    let blocks = block_vars(dec.deg.fiber_blocks());
    let mut edges = Vec::new();
    for i in 0..dec.len() {
        for j in i + 1..dec.len() {
            let sum = dec.ideal(i).sum(dec.ideal(j)).expect("same ring");
            if !saturate_blocks(&sum, &blocks).is_unit() {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == i { b } else if b == i { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether reducedness of the fiber is expected for this flag type and
/// number of vertices.
pub fn reducedness_expected(flag: &FlagType, n: usize) -> bool {
    n <= 2 || flag.ranks() == [1] || (flag.ranks() == [1, 2] && flag.dim() == 3)
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuralReport {
    pub components: usize,
    pub expected_dimension: i64,
    pub dimensions: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub lower_bound: usize,
    pub upper_bound: Option<u64>,
    /// `Some` when reducedness is expected for this case.
    pub reduced: Option<bool>,
    pub failures: Vec<String>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Equidimensionality, connectedness, count bounds and, where expected,
/// reducedness.
pub fn structural_checks(dec: &Decomposed) -> StructuralReport {
    let flag = dec.deg.flag();
    let n = dec.deg.config().len();
    let expected = flag.variety_dimension() as i64;
    let dimensions: Vec<i64> = (0..dec.len()).map(|i| dec.dimension(i)).collect();
    let edges = dual_graph(dec);
    let connected = connected(dec.len(), &edges);
    let (lower, upper) = count_bounds(flag, n);
    let reduced = reducedness_expected(flag, n).then(|| dec.deg.fiber_ideal().equals(&dec.intersection));
    let mut failures = Vec::new();
    for (i, &d) in dimensions.iter().enumerate() {
        if d != expected {
            failures.push(format!("component {i} has dimension {d}, expected {expected}"));
        }
    }
    if !connected {
        failures.push(format!("dual graph with edges {edges:?} is disconnected"));
    }
    if dec.len() < lower {
        failures.push(format!("{} components, fewer than {lower}", dec.len()));
    }
    if let Some(u) = upper {
        if dec.len() as u64 > u {
            failures.push(format!("{} components, more than {u}", dec.len()));
        }
    }
    if reduced == Some(false) {
        failures.push("fiber ideal differs from the intersection of its components".into());
    }
    StructuralReport {
        components: dec.len(),
        expected_dimension: expected,
        dimensions,
        edges,
        connected,
        lower_bound: lower,
        upper_bound: upper,
        reduced,
        failures,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub lattice: String,
    pub components: usize,
    pub bound: u64,
    pub attained: bool,
    pub structural_failures: Vec<String>,
}

/// `U·diag(t^e)` with `U` a random matrix over Q[t] of degree at most 1
/// that is invertible at `t = 0`, and `e ∈ [0, d]^d` not constant. Any two
/// lattices share an apartment, so the pair is determined up to symmetry by
/// `e`; the random `U` exercises the non-diagonal code path.
fn random_lattice(d: usize, rng: &mut ChaCha8Rng) -> Result<Vertex> {
    let e: Vec<i64> = loop {
        let e: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=d as i64)).collect();
        if e.iter().any(|&x| x != e[0]) {
            break e;
        }
    };
    loop {
        let entries: Vec<Laurent> = (0..d * d)
            .map(|_| Laurent::from_coeffs(0, vec![rng.gen_range(-3i64..=3).into(), rng.gen_range(-3i64..=3).into()]))
            .collect();
        let u = Matrix::new(d, d, entries)?;
        if rank(&u.eval(&Rational::zero())) < d {
            continue;
        }
        return Vertex::from_matrix(u.mul(&Matrix::diag_t(&e))?);
    }
}

/// Two vertices, the standard lattice and a random one, counted against
/// the Schubert-cell bound.
pub fn general_position_experiment(
    flag: &FlagType,
    trials: usize,
    opts: &Options,
) -> Result<Vec<ExperimentRow>> {
    let d = flag.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bound = count_bounds(flag, 2).1.expect("two vertices");
    let mut rows = Vec::with_capacity(trials);
    for _ in 0..trials {
        let v = random_lattice(d, &mut rng)?;
        let config = Configuration::new(vec![Vertex::diagonal(&vec![0; d])?, v.clone()])?;
        let deg = build_degeneration_with(&config, flag, opts.convention)?;
        let dec = decompose(&deg)?;
        let report = structural_checks(&dec);
        rows.push(ExperimentRow {
            lattice: v.basis().to_string(),
            components: dec.len(),
            bound,
            attained: dec.len() as u64 == bound,
            structural_failures: report.failures,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let f = FlagType::new(3, &[1, 2]).unwrap();
        assert_eq!(count_bounds(&f, 2), (2, Some(6)));
        assert_eq!(count_bounds(&f, 3), (3, None));
        assert_eq!(count_bounds(&FlagType::projective(4).unwrap(), 2), (2, Some(4)));
        assert_eq!(count_bounds(&FlagType::new(4, &[2]).unwrap(), 2), (2, Some(6)));
    }

    #[test]
    fn connectivity() {
        assert!(connected(3, &[(0, 1), (1, 2)]));
        assert!(!connected(3, &[(0, 1)]));
        assert!(connected(1, &[]));
    }
}
