//! Buchberger's algorithm over Q.
//!
//! Polynomials are converted into an order-specific representation whose
//! monomials cache their weight-row keys and a divisibility mask, reduced
//! with the Gebauer–Möller pair update (product and chain criteria), and
//! selected by sugar degree.

use std::cmp::Ordering;

use log::debug;
use smallvec::SmallVec;

use super::order::{CompiledOrder, MonomialOrder};
use super::poly::Polynomial;
use super::rational::Rational;
use super::ring::{Exps, Monomial, RingRef};
use crate::error::Result;

#[derive(Clone, Debug)]
pub(crate) struct Mono {
    pub(crate) e: Exps,
    keys: SmallVec<[i64; 2]>,
    mask: u64,
}

fn mask_of(e: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

impl Mono {
    #[inline]
    fn divides(&self, other: &Mono) -> bool {
        self.mask & !other.mask == 0 && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct EPoly {
    pub(crate) terms: Vec<(Mono, Rational)>,
    sugar: i64,
}

impl EPoly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        !self.terms.is_empty() && self.terms[0].0.e.iter().all(|&x| x == 0)
    }
}

/// Arithmetic in the representation of one compiled order.
pub(crate) struct Engine {
    ord: CompiledOrder,
    sugar_w: Vec<i64>,
}

impl Engine {
    pub(crate) fn new(order: &MonomialOrder, n: usize) -> Self {
        let ord = order.compile(n);
        let sugar_w = ord.rows.last().cloned().unwrap_or_else(|| vec![1; n]);
        Engine { ord, sugar_w }
    }

    fn mono(&self, e: Exps) -> Mono {
        let keys = self.ord.keys(&e);
        let mask = mask_of(&e);
        Mono { e, keys, mask }
    }

    #[inline]
    fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for (x, y) in a.keys.iter().zip(&b.keys) {
            if x != y {
                return x.cmp(y);
            }
        }
        self.ord.tie_cmp(&a.e, &b.e)
    }

    #[inline]
    fn mul(&self, a: &Mono, b: &Mono) -> Mono {
        Mono {
            e: a.e.iter().zip(&b.e).map(|(x, y)| x + y).collect(),
            keys: a.keys.iter().zip(&b.keys).map(|(x, y)| x + y).collect(),
            mask: a.mask | b.mask,
        }
    }

    fn div(&self, a: &Mono, b: &Mono) -> Mono {
        let e: Exps = a.e.iter().zip(&b.e).map(|(x, y)| x - y).collect();
        let mask = mask_of(&e);
        Mono {
            e,
            keys: a.keys.iter().zip(&b.keys).map(|(x, y)| x - y).collect(),
            mask,
        }
    }

    fn lcm(&self, a: &Mono, b: &Mono) -> Mono {
        self.mono(a.e.iter().zip(&b.e).map(|(x, y)| *x.max(y)).collect())
    }

    fn weight(&self, m: &Mono) -> i64 {
        m.e.iter().zip(&self.sugar_w).map(|(&x, w)| x as i64 * w).sum()
    }

    pub(crate) fn from_poly(&self, p: &Polynomial) -> EPoly {
        let mut terms: Vec<(Mono, Rational)> = p
            .terms()
            .iter()
            .map(|(m, c)| (self.mono(m.0.clone()), c.clone()))
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(m, _)| self.weight(m)).max().unwrap_or(0);
        EPoly { terms, sugar }
    }

    pub(crate) fn to_poly(&self, ring: &RingRef, p: &EPoly) -> Polynomial {
        Polynomial::from_terms(
            ring,
            p.terms
                .iter()
                .map(|(m, c)| (Monomial(m.e.clone()), c.clone()))
                .collect(),
        )
    }

    fn make_monic(&self, p: &mut EPoly) {
        if let Some((_, c)) = p.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut p.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    /// `a - c*m*b`, both sorted descending.
    fn sub_scaled(
        &self,
        a: &[(Mono, Rational)],
        c: &Rational,
        m: &Mono,
        b: &[(Mono, Rational)],
    ) -> Vec<(Mono, Rational)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Mono> = b.first().map(|t| self.mul(m, &t.0));
        while i < a.len() {
            let Some(mb) = bj.as_ref() else { break };
            match self.cmp(&a[i].0, mb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bj.take().unwrap(), -&(c * &b[j].1)));
                    j += 1;
                    bj = b.get(j).map(|t| self.mul(m, &t.0));
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &(c * &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| self.mul(m, &t.0));
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(mb) = bj {
            out.push((mb, -&(c * &b[j].1)));
            for t in &b[j + 1..] {
                out.push((self.mul(m, &t.0), -&(c * &t.1)));
            }
        }
        out
    }

    /// Full reduction of `p` by monic `basis` elements.
    fn reduce(&self, p: EPoly, basis: &[&EPoly]) -> EPoly {
        let sugar = p.sugar;
        let mut rem = p.terms;
        let mut idx = 0;
        while idx < rem.len() {
            let reducer = basis.iter().find(|g| g.lm().divides(&rem[idx].0));
            match reducer {
                None => idx += 1,
                Some(g) => {
                    let m = self.div(&rem[idx].0, g.lm());
                    let c = rem[idx].1.clone();
                    let tail = self.sub_scaled(&rem[idx + 1..], &c, &m, &g.terms[1..]);
                    rem.truncate(idx);
                    rem.extend(tail);
                }
            }
        }
        EPoly { terms: rem, sugar }
    }

    fn spoly(&self, f: &EPoly, g: &EPoly, lcm: &Mono) -> EPoly {
        let mf = self.div(lcm, f.lm());
        let mg = self.div(lcm, g.lm());
        let scaled_f: Vec<(Mono, Rational)> = f.terms[1..]
            .iter()
            .map(|(m, c)| (self.mul(&mf, m), c.clone()))
            .collect();
        let terms = self.sub_scaled(&scaled_f, &Rational::one(), &mg, &g.terms[1..]);
        let sugar = (f.sugar + self.weight(&mf)).max(g.sugar + self.weight(&mg));
        EPoly { terms, sugar }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: i64,
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    a.e.iter().zip(&b.e).all(|(x, y)| *x == 0 || *y == 0)
}

struct State<'a> {
    eng: &'a Engine,
    polys: Vec<EPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> State<'a> {
    fn pair(&self, i: usize, k: usize) -> Pair {
        let lcm = self.eng.lcm(self.polys[i].lm(), self.polys[k].lm());
        let (fi, fk) = (&self.polys[i], &self.polys[k]);
        let sugar = (fi.sugar + self.eng.weight(&lcm) - self.eng.weight(fi.lm()))
            .max(fk.sugar + self.eng.weight(&lcm) - self.eng.weight(fk.lm()));
        Pair { i, j: k, lcm, sugar }
    }

    /// Gebauer–Möller update after appending polynomial `k`.
    fn update(&mut self, k: usize) {
        let hk = self.polys[k].lm().clone();
        let mut c: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| self.pair(i, k))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let other = self.polys[p.i].lm();
            let keep = coprime(&hk, other)
                || !c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if keep {
                d.push(p);
            }
        }
        let new_pairs: Vec<Pair> = d
            .into_iter()
            .filter(|p| !coprime(&hk, self.polys[p.i].lm()))
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hk.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().e.iter().zip(&hk.e).map(|(a, b)| *a.max(b));
            let lj = polys[p.j].lm().e.iter().zip(&hk.e).map(|(a, b)| *a.max(b));
            let same_i = li.eq(p.lcm.e.iter().copied());
            let same_j = lj.eq(p.lcm.e.iter().copied());
            same_i || same_j
        });
        self.pairs.extend(new_pairs);
        for i in 0..k {
            if self.active[i] && hk.divides(self.polys[i].lm()) {
                self.active[i] = false;
            }
        }
        self.active[k] = true;
    }

    fn reducers(&self) -> Vec<&EPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn add(&mut self, mut h: EPoly) {
        self.eng.make_monic(&mut h);
        self.polys.push(h);
        self.active.push(false);
        let k = self.polys.len() - 1;
        self.update(k);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let eng = self.eng;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                p.sugar.cmp(&q.sugar).then_with(|| eng.cmp(&p.lcm, &q.lcm))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis in engine representation, sorted by leading
/// monomial descending. A unit ideal yields `[1]`.
pub(crate) fn groebner_engine(eng: &Engine, gens: Vec<EPoly>) -> Vec<EPoly> {
    let mut st = State {
        eng,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut gens: Vec<EPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| eng.cmp(a.lm(), b.lm()));
    for g in gens {
        let h = eng.reduce(g, &st.reducers());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![unit(eng, h)];
        }
        st.add(h);
    }
    let mut processed = 0usize;
    while let Some(p) = st.next_pair() {
        processed += 1;
        let s = eng.spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm);
        let h = eng.reduce(s, &st.reducers());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![unit(eng, h)];
        }
        st.add(h);
    }
    debug!(
        "buchberger: {} pairs reduced, {} polynomials generated",
        processed,
        st.polys.len()
    );
    interreduce(eng, st.reducers().into_iter().cloned().collect())
}

fn unit(eng: &Engine, h: EPoly) -> EPoly {
    let mut h = h;
    h.terms.truncate(1);
    eng.make_monic(&mut h);
    h
}

/// Turns a Gröbner basis into the reduced one.
fn interreduce(eng: &Engine, mut g: Vec<EPoly>) -> Vec<EPoly> {
    g.sort_by(|a, b| eng.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<EPoly> = Vec::with_capacity(g.len());
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&EPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let p = &minimal[i];
        let head = vec![p.terms[0].clone()];
        let tail = eng.reduce(
            EPoly {
                terms: p.terms[1..].to_vec(),
                sugar: p.sugar,
            },
            &others,
        );
        let mut terms = head;
        terms.extend(tail.terms);
        let mut q = EPoly {
            terms,
            sugar: p.sugar,
        };
        eng.make_monic(&mut q);
        out.push(q);
    }
    out.sort_by(|a, b| eng.cmp(b.lm(), a.lm()));
    out
}

/// Checks that every generator lives in one ring.
pub(crate) fn common_ring(gens: &[Polynomial]) -> Result<()> {
    if let Some(first) = gens.first() {
        for g in &gens[1..] {
            first.check_ring(g)?;
        }
    }
    Ok(())
}

/// The reduced Gröbner basis of `gens` for `order`, leading terms first
/// within each element and elements sorted by leading monomial descending.
///
/// Elements are monic for `order`; output polynomials are stored in
/// canonical term order, so use [`leading_monomial`] to read the leading
/// term with respect to `order`.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    common_ring(gens)?;
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let eng = Engine::new(order, ring.nvars());
    let basis = groebner_engine(&eng, gens.iter().map(|g| eng.from_poly(g)).collect());
    Ok(basis.iter().map(|p| eng.to_poly(&ring, p)).collect())
}

/// Leading monomial and coefficient of `f` with respect to `order`.
pub fn leading_term(f: &Polynomial, order: &MonomialOrder) -> Option<(Monomial, Rational)> {
    let c = order.compile(f.ring().nvars());
    f.terms()
        .iter()
        .max_by(|a, b| c.cmp_exps(&a.0 .0, &b.0 .0))
        .cloned()
}

pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Option<Monomial> {
    leading_term(f, order).map(|t| t.0)
}

/// Remainder of `f` on full division by the Gröbner basis `gb`.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    for g in gb {
        f.check_ring(g)?;
    }
    let eng = Engine::new(order, f.ring().nvars());
    let basis: Vec<EPoly> = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut p = eng.from_poly(g);
            eng.make_monic(&mut p);
            p
        })
        .collect();
    let refs: Vec<&EPoly> = basis.iter().collect();
    let r = eng.reduce(eng.from_poly(f), &refs);
    Ok(eng.to_poly(f.ring(), &r))
}

/// Buchberger's criterion checked directly: every S-polynomial of a pair of
/// basis elements reduces to zero.
pub fn is_groebner_basis(gb: &[Polynomial], order: &MonomialOrder) -> bool {
    let Some(first) = gb.first() else {
        return true;
    };
    let eng = Engine::new(order, first.ring().nvars());
    let basis: Vec<EPoly> = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut p = eng.from_poly(g);
            eng.make_monic(&mut p);
            p
        })
        .collect();
    let refs: Vec<&EPoly> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let l = eng.lcm(basis[i].lm(), basis[j].lm());
            let s = eng.spoly(&basis[i], &basis[j], &l);
            if !eng.reduce(s, &refs).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::PolyRing;

    fn p(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let r = PolyRing::with_names(&["x", "y"]);
        let gb = buchberger(&[p(&r, "x"), p(&r, "y")], &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(gb, vec![p(&r, "x"), p(&r, "y")]);
    }

    #[test]
    fn empty_input() {
        assert!(buchberger(&[], &MonomialOrder::lex()).unwrap().is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        // x^2 - y, x^3 - z under lex x > y > z contains y^3 - z^2
        let r = PolyRing::with_names(&["x", "y", "z"]);
        let gens = [p(&r, "x^2 - y"), p(&r, "x^3 - z")];
        let gb = buchberger(&gens, &MonomialOrder::lex()).unwrap();
        assert!(gb.contains(&p(&r, "y^3 - z^2")), "{gb:?}");
        assert!(is_groebner_basis(&gb, &MonomialOrder::lex()));
        for g in &gens {
            assert!(normal_form(g, &gb, &MonomialOrder::lex()).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_ideal() {
        let r = PolyRing::with_names(&["x", "y"]);
        let gb = buchberger(&[p(&r, "x*y - 1"), p(&r, "x")], &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(gb, vec![p(&r, "1")]);
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::with_names(&["x", "y"]);
        let o = MonomialOrder::degrevlex();
        assert!(normal_form(&p(&r, "x - y"), &[p(&r, "x - y")], &o).unwrap().is_zero());
        assert!(normal_form(&p(&r, "x*y^2"), &[p(&r, "y")], &o).unwrap().is_zero());
        let nf = normal_form(&p(&r, "x^2 + y"), &[p(&r, "x^2 - y")], &o).unwrap();
        assert_eq!(nf, p(&r, "2*y"));
        // f - nf is the quotient times the divisor
        assert_eq!(&p(&r, "x^2 + y") - &nf, p(&r, "x^2 - y"));
    }

    #[test]
    fn mixed_rings_rejected() {
        let r = PolyRing::with_names(&["x"]);
        let s = PolyRing::with_names(&["y"]);
        assert!(buchberger(&[p(&r, "x"), p(&s, "y")], &MonomialOrder::lex()).is_err());
    }
}
