use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::rational::Rational;
use super::ring::{Monomial, RingRef};
use crate::error::{Error, Result};

/// Canonical storage order: degrevlex along ring order, descending.
pub(crate) fn canon_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for i in (0..a.0.len()).rev() {
            if a.0[i] != b.0[i] {
                return b.0[i].cmp(&a.0[i]);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial over Q in the variables of `ring`.
///
/// Terms are unique, carry nonzero coefficients, and are kept sorted
/// descending in the ring's default degrevlex order.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), Rational::one())],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Combines like terms and sorts.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            let e = map.entry(m).or_insert_with(Rational::zero);
            *e += &c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canon_cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRing(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Scales so the canonical leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, other: &Polynomial, sign: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match canon_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { b[j].1.clone() } else { -&b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { -&t.1 };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let mut cache: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while cache.len() <= e {
                let next = cache.last().unwrap() * value;
                cache.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            let t = cache[e].mul_monomial(&rest).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// Simultaneous substitution `x_i ↦ images[i]` into the ring of the images.
    pub fn compose(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[v].pow(e as u32);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Sets variable `var` to the constant `value`.
    pub fn eval_var(&self, var: usize, value: &Rational) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 && value.is_zero() {
                continue;
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            terms.push((rest, c * &value.pow(e as u32)));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v = &v * &point[i].pow(e as u32);
                }
            }
            acc += &v;
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `map[i]`. Fails if a used variable has no image.
    pub fn map_to(&self, target: &RingRef, map: &[Option<usize>]) -> Result<Polynomial> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(n);
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    match map[i] {
                        Some(j) => e.0[j] += x,
                        None => {
                            return Err(Error::UnknownVariable(self.ring.name(i).to_string()))
                        }
                    }
                }
            }
            terms.push((e, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves into `target` matching variables by name.
    pub fn map_by_name(&self, target: &RingRef) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .ring
            .variables()
            .iter()
            .map(|v| target.index_of(&v.name))
            .collect();
        self.map_to(target, &map)
    }

    /// Weighted degree if every term has the same weight.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d: u64 = m.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Whether the polynomial is homogeneous separately in each listed
    /// group of variables.
    pub fn is_multihomogeneous(&self, groups: &[Vec<usize>]) -> bool {
        groups.iter().all(|g| {
            let mut deg = None;
            self.terms.iter().all(|(m, _)| {
                let d: u32 = g.iter().map(|&i| m.0[i] as u32).sum();
                match deg {
                    None => {
                        deg = Some(d);
                        true
                    }
                    Some(x) => x == d,
                }
            })
        })
    }

    /// Exact division by a polynomial known to divide `self`.
    ///
    /// Returns `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let (lm, lc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(&lm)?;
            let qc = &c / &lc;
            rem = &rem - &divisor.mul_monomial(&q).scale(&qc);
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    pub fn to_string_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring.clone();
        f.write_str(&self.to_string_with(&|i| ring.name(i).to_string()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(self.ring.same_as(&rhs.ring));
        self.merge(rhs, true)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(self.ring.same_as(&rhs.ring));
        self.merge(rhs, false)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(self.ring.same_as(&rhs.ring));
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                terms.push((a.mul(b), c * d));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::PolyRing;

    #[test]
    fn arithmetic_and_display() {
        let r = PolyRing::with_names(&["x", "y", "z"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x * &x) - &y;
        assert_eq!(f.to_string(), "x^2 - y");
        let g = &f * &f;
        assert_eq!(g.to_string(), "x^4 - 2*x^2*y + y^2");
        assert!((&f - &f).is_zero());
        assert_eq!(g.exact_div(&f).unwrap(), f);
        assert!(g.exact_div(&x).is_none());
    }

    #[test]
    fn substitution_and_eval() {
        let r = PolyRing::with_names(&["x", "t"]);
        let x = Polynomial::var(&r, 0);
        let t = Polynomial::var(&r, 1);
        let f = &(&x * &t) + &Polynomial::constant(&r, Rational::from_int(3));
        let g = f.substitute(0, &t);
        assert_eq!(g.to_string(), "t^2 + 3");
        assert_eq!(f.eval_var(1, &Rational::zero()).to_string(), "3");
        assert_eq!(
            f.evaluate(&[Rational::from_int(2), Rational::from_int(5)]),
            Rational::from_int(13)
        );
    }
}
