//! Minimal primes by recursive factor splitting, with primality
//! certification for the shapes that occur in practice.

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{factor, saturate, saturate_by_variable_ideal, Ideal, Polynomial, Rational};
use crate::algebra::factor::gcd;
use crate::error::{Error, Result};

/// Saturation by each block's irrelevant ideal in turn.
pub fn saturate_blocks(ideal: &Ideal, blocks: &[Vec<usize>]) -> Ideal {
    let mut acc = ideal.clone();
    for b in blocks {
        acc = saturate_by_variable_ideal(&acc, b);
    }
    acc.reduced()
}

/// A leaf of the splitting tree.
#[derive(Clone, Debug)]
pub struct PrimeCandidate {
    pub ideal: Ideal,
    pub certified: bool,
}

/// Minimal primes of a multihomogeneous ideal whose irrelevant components
/// are discarded. Leaves are sorted by their generator text.
pub fn minimal_primes(ideal: &Ideal, blocks: &[Vec<usize>]) -> Result<Vec<PrimeCandidate>> {
    let start = saturate_blocks(ideal, blocks);
    if start.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut found: Vec<Ideal> = Vec::new();
    let mut stack = vec![start];
    while let Some(cur) = stack.pop() {
        if cur.is_unit() || found.iter().any(|p| p.is_subset_of(&cur)) {
            continue;
        }
        match split_element(&cur) {
            None => {
                found.retain(|p| !cur.is_subset_of(p));
                debug!("leaf with {} generators", cur.generators().len());
                found.push(cur);
            }
            Some(factors) => {
                let mut branches = Vec::with_capacity(factors.len());
                let mut prev = Polynomial::one(cur.ring());
                for f in &factors {
                    let mut b = cur.with_generators(std::slice::from_ref(f))?;
                    if !prev.is_constant() {
                        b = saturate(&b, &prev);
                    }
                    branches.push(saturate_blocks(&b, blocks));
                    prev = &prev * f;
                }
                // depth-first on the first factor keeps early leaves small
                stack.extend(branches.into_iter().rev());
            }
        }
    }
    let mut out: Vec<PrimeCandidate> = found
        .into_iter()
        .map(|p| {
            let certified = certify_prime(&p);
            PrimeCandidate { ideal: p, certified }
        })
        .collect();
    out.sort_by_key(|c| c.ideal.to_strings());
    Ok(out)
}

/// Distinct irreducible factors of the simplest reducible basis element.
fn split_element(ideal: &Ideal) -> Option<Vec<Polynomial>> {
    let gb = ideal.gb();
    let mut order: Vec<&Polynomial> = gb.iter().collect();
    order.sort_by_key(|g| (g.total_degree(), g.len()));
    for g in order {
        if g.total_degree() < 2 {
            continue;
        }
        let fac = factor(g);
        if fac.factors.len() >= 2 || fac.factors.iter().any(|(_, e)| *e > 1) {
            return Some(fac.factors.into_iter().map(|(f, _)| f).collect());
        }
    }
    None
}

/// Whether `P` is provably prime. Handles variables, linear forms with a
/// constant coefficient, and then groups in disjoint variables that are
/// either one polynomial linear in some variable with coprime coefficients,
/// or binomials forming a saturated lattice ideal.
pub fn certify_prime(p: &Ideal) -> bool {
    if p.is_unit() {
        return false;
    }
    let ring = p.ring().clone();
    let mut gens: Vec<Polynomial> = p.gb().to_vec();
    loop {
        let pos = gens.iter().position(|g| linear_pivot(g).is_some());
        let Some(i) = pos else { break };
        let g = gens.swap_remove(i);
        let (x, c) = linear_pivot(&g).unwrap();
        let xv = Polynomial::var(&ring, x);
        let rest = &g - &xv.scale(&c);
        let value = rest.scale(&(-&c.recip()));
        gens = gens
            .into_iter()
            .map(|h| h.substitute(x, &value))
            .filter(|h| !h.is_zero())
            .collect();
        if gens.iter().any(|h| h.is_constant()) {
            return false;
        }
    }
    if gens.is_empty() {
        return true;
    }
    for group in variable_groups(&gens) {
        let ok = if group.len() == 1 {
            absolutely_irreducible(group[0])
        } else if group.iter().all(|g| g.len() == 2 && !g.is_monomial()) {
            binomial_prime(&ring, &group)
        } else {
            false
        };
        if !ok {
            return false;
        }
    }
    true
}

/// A variable occurring only linearly in one term with a constant coefficient.
fn linear_pivot(g: &Polynomial) -> Option<(usize, Rational)> {
    for x in g.support() {
        if g.degree_in(x) != 1 {
            continue;
        }
        let with_x: Vec<_> = g.terms().iter().filter(|(m, _)| m.0[x] > 0).collect();
        if with_x.len() == 1 && with_x[0].0.degree() == 1 {
            return Some((x, with_x[0].1.clone()));
        }
    }
    None
}

fn variable_groups(gens: &[Polynomial]) -> Vec<Vec<&Polynomial>> {
    let supports: Vec<Vec<usize>> = gens.iter().map(|g| g.support()).collect();
    let mut group_of: Vec<usize> = (0..gens.len()).collect();
    fn find(g: &mut Vec<usize>, i: usize) -> usize {
        if g[i] != i {
            let r = find(g, g[i]);
            g[i] = r;
        }
        g[i]
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if supports[i].iter().any(|v| supports[j].contains(v)) {
                let (a, b) = (find(&mut group_of, i), find(&mut group_of, j));
                group_of[a] = b;
            }
        }
    }
    let mut out: Vec<(usize, Vec<&Polynomial>)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let r = find(&mut group_of, i);
        match out.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(g),
            None => out.push((r, vec![g])),
        }
    }
    out.into_iter().map(|(_, v)| v).collect()
}

/// `f = a·x + b` with `gcd(a, b) = 1` is irreducible over every field.
fn absolutely_irreducible(f: &Polynomial) -> bool {
    if f.is_monomial() {
        return f.total_degree() == 1;
    }
    for x in f.support() {
        if f.degree_in(x) != 1 {
            continue;
        }
        let x_var = Polynomial::var(f.ring(), x);
        let mut a = Polynomial::zero(f.ring());
        let mut b = Polynomial::zero(f.ring());
        for (m, c) in f.terms() {
            let t = Polynomial::monomial(f.ring(), m.clone(), c.clone());
            if m.0[x] > 0 {
                a = &a + &t.exact_div(&x_var).unwrap();
            } else {
                b = &b + &t;
            }
        }
        if b.is_zero() {
            return a.is_constant();
        }
        if gcd(&a, &b).is_constant() {
            return true;
        }
    }
    false
}

/// A binomial ideal saturated by its variables with a saturated lattice of
/// exponent differences is prime in characteristic zero.
fn binomial_prime(ring: &crate::algebra::RingRef, group: &[&Polynomial]) -> bool {
    let ideal = Ideal::new(ring, group.iter().map(|g| (*g).clone()).collect()).unwrap();
    let vars: Vec<usize> = {
        let mut v: Vec<usize> = group.iter().flat_map(|g| g.support()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut prod = Polynomial::one(ring);
    for &v in &vars {
        prod = &prod * &Polynomial::var(ring, v);
    }
    if !saturate(&ideal, &prod).is_subset_of(&ideal) {
        return false;
    }
    let rows: Vec<Vec<BigInt>> = group
        .iter()
        .map(|g| {
            let (a, b) = (&g.terms()[0].0, &g.terms()[1].0);
            vars.iter()
                .map(|&v| BigInt::from(a.0[v] as i64 - b.0[v] as i64))
                .collect()
        })
        .collect();
    invariant_factors(rows).iter().all(|d| d == &BigInt::from(1))
}

/// Nonzero invariant factors (Smith normal form) of an integer matrix.
pub fn invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        let mut clean = true;
        for i in r0 + 1..rows {
            let q = m[i][c0].div_floor(&m[r0][c0]);
            if !q.is_zero() {
                for j in c0..cols {
                    let v = &m[i][j] - &q * &m[r0][j];
                    m[i][j] = v;
                }
            }
            clean &= m[i][c0].is_zero();
        }
        for j in c0 + 1..cols {
            let q = m[r0][j].div_floor(&m[r0][c0]);
            if !q.is_zero() {
                for i in r0..rows {
                    let v = &m[i][j] - &q * &m[i][c0];
                    m[i][j] = v;
                }
            }
            clean &= m[r0][j].is_zero();
        }
        if !clean {
            continue;
        }
        let p = m[r0][c0].abs();
        let mut divides_all = true;
        'outer: for i in r0 + 1..rows {
            for j in c0 + 1..cols {
                if !(&m[i][j] % &p).is_zero() {
                    for k in c0..cols {
                        let v = &m[r0][k] + &m[i][k];
                        m[r0][k] = v;
                    }
                    divides_all = false;
                    break 'outer;
                }
            }
        }
        if divides_all {
            out.push(p);
            r0 += 1;
            c0 += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ideal::{ideal_from_strs, ring_of};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_form() {
        let f = invariant_factors(ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let f = invariant_factors(ints(&[&[1, -1, 0], &[0, 1, -1]]));
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(1)]);
        let f = invariant_factors(ints(&[&[2, -2]]));
        assert_eq!(f, vec![BigInt::from(2)]);
    }

    #[test]
    fn split_simple_products() {
        let r = ring_of(&["x", "y"]);
        let p = minimal_primes(&ideal_from_strs(&r, &["x*y"]).unwrap(), &[]).unwrap();
        let s: Vec<Vec<String>> = p.iter().map(|c| c.ideal.to_strings()).collect();
        assert_eq!(s, vec![vec!["x".to_string()], vec!["y".to_string()]]);
        assert!(p.iter().all(|c| c.certified));
    }

    #[test]
    fn drops_embedded_and_irrelevant() {
        let r = ring_of(&["x", "y", "z"]);
        let i = ideal_from_strs(&r, &["x^2", "x*y"]).unwrap();
        let p = minimal_primes(&i, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].ideal.to_strings(), vec!["x"]);
        let j = ideal_from_strs(&r, &["x*z", "y*z"]).unwrap();
        // empty in the multiprojective sense
        assert!(matches!(minimal_primes(&j, &[vec![0, 1], vec![2]]), Err(Error::UnitIdeal)));
    }

    #[test]
    fn certification() {
        let r = ring_of(&["a", "b", "c", "d"]);
        let twisted = ideal_from_strs(&r, &["a*c - b^2", "b*d - c^2", "a*d - b*c"]).unwrap();
        assert!(certify_prime(&twisted));
        let non = ideal_from_strs(&r, &["a^2 - b^2"]).unwrap();
        assert!(!certify_prime(&non));
        let lin = ideal_from_strs(&r, &["a - b", "c", "a*d - b*c + d^2"]).unwrap();
        assert!(!certify_prime(&lin));
        let plane = ideal_from_strs(&r, &["a - b", "c"]).unwrap();
        assert!(certify_prime(&plane));
        let quad = ideal_from_strs(&r, &["a*d - b*c"]).unwrap();
        assert!(certify_prime(&quad));
        let even = ideal_from_strs(&r, &["a^2 - b^2*c^2"]).unwrap();
        assert!(!certify_prime(&even));
    }
}
