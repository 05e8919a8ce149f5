//! Multivariate gcd over Q (recursive primitive PRS) and the partial
//! factorization used to split ideals.
//!
//! The factorization is exact for what the splitter needs: monomial
//! content, and polynomials that are linear in some variable (then the
//! content with respect to that variable decides irreducibility). Anything
//! else is reported as a single factor without an irreducibility
//! certificate.

use super::poly::Polynomial;
use super::rational::Rational;
use super::ring::Monomial;

fn coeffs_in(p: &Polynomial, x: usize) -> Vec<Polynomial> {
    let d = p.degree_in(x) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
    for (m, c) in p.terms() {
        let mut m2 = m.clone();
        let e = m2.0[x] as usize;
        m2.0[x] = 0;
        buckets[e].push((m2, c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| Polynomial::from_terms(p.ring(), t))
        .collect()
}

fn x_pow(p: &Polynomial, x: usize, e: u16) -> Polynomial {
    let mut m = Monomial::one(p.ring().nvars());
    m.0[x] = e;
    p.mul_monomial(&m)
}

fn normalize(p: Polynomial) -> Polynomial {
    p.monic()
}

/// Greatest common divisor, monic in canonical term order. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    normalize(gcd_rec(a, b))
}

fn content_in(p: &Polynomial, x: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.ring());
    for c in coeffs_in(p, x) {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c } else { gcd_rec(&acc, &c) };
        if acc.is_constant() {
            return Polynomial::one(p.ring());
        }
    }
    acc
}

fn primitive_in(p: &Polynomial, x: usize) -> Polynomial {
    let c = content_in(p, x);
    if c.is_constant() {
        return p.clone();
    }
    p.exact_div(&c).expect("content divides")
}

fn prem(f: &Polynomial, g: &Polynomial, x: usize) -> Polynomial {
    let m = g.degree_in(x);
    let lg = coeffs_in(g, x).pop().unwrap();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(x) >= m {
        let dr = r.degree_in(x);
        let lr = coeffs_in(&r, x).pop().unwrap();
        r = &(&lg * &r) - &x_pow(&(&lr * g), x, dr - m);
    }
    r
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let sa = a.support();
    let sb = b.support();
    let x = *sa.iter().chain(sb.iter()).min().unwrap();
    let in_a = sa.contains(&x);
    let in_b = sb.contains(&x);
    if !in_a {
        return gcd_rec(a, &content_in(b, x));
    }
    if !in_b {
        return gcd_rec(&content_in(a, x), b);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        if g.degree_in(x) == 0 {
            // g is a nonzero x-free multiple of the primitive remainder chain
            f = Polynomial::one(a.ring());
            break;
        }
        let r = prem(&f, &g, x);
        f = g;
        g = if r.is_zero() { r } else { primitive_in(&r, x) };
    }
    let f = primitive_in(&f, x);
    &c * &f
}

/// Factors with multiplicities; `certified` is false when some factor
/// could not be proven irreducible.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
    pub certified: bool,
}

impl Factorization {
    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn distinct(&self) -> Vec<&Polynomial> {
        self.factors.iter().map(|(f, _)| f).collect()
    }
}

/// Partial factorization over Q; see the module docs.
pub fn factor(f: &Polynomial) -> Factorization {
    assert!(!f.is_zero(), "factor of zero");
    let ring = f.ring().clone();
    let n = ring.nvars();
    let mut content = f.terms()[0].0.clone();
    for (m, _) in f.terms() {
        content = content.gcd(m);
    }
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    for (i, &e) in content.0.iter().enumerate() {
        if e > 0 {
            out.push((Polynomial::var(&ring, i), e as u32));
        }
    }
    let mut rest = f.clone();
    if !content.is_one() {
        let terms = f
            .terms()
            .iter()
            .map(|(m, c)| (m.div(&content).unwrap(), c.clone()))
            .collect();
        rest = Polynomial::from_terms(&ring, terms);
    }
    let mut certified = true;
    let unit = rest.terms()[0].1.clone();
    let mut pieces = Vec::new();
    if !rest.is_constant() {
        split(&rest.monic(), &mut pieces, &mut certified);
    }
    for p in pieces {
        let p = p.monic();
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    debug_assert_eq!(n, ring.nvars());
    Factorization {
        unit,
        factors: out,
        certified,
    }
}

fn split(p: &Polynomial, out: &mut Vec<Polynomial>, certified: &mut bool) {
    if p.is_constant() {
        return;
    }
    let support = p.support();
    if let Some(&x) = support.iter().find(|&&x| p.degree_in(x) == 1) {
        let cs = coeffs_in(p, x);
        let g = gcd(&cs[1], &cs[0]);
        if g.is_constant() {
            out.push(p.clone());
        } else {
            let q = p.exact_div(&g).expect("gcd divides");
            split(&g, out, certified);
            split(&q, out, certified);
        }
        return;
    }
    for &x in &support {
        let d = derivative(p, x);
        let g = gcd(p, &d);
        if !g.is_constant() {
            let q = p.exact_div(&g).expect("gcd divides");
            split(&g, out, certified);
            split(&q, out, certified);
            return;
        }
    }
    *certified = false;
    out.push(p.clone());
}

/// Partial derivative.
pub fn derivative(p: &Polynomial, x: usize) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.0[x] > 0)
        .map(|(m, c)| {
            let mut m2 = m.clone();
            let e = m2.0[x];
            m2.0[x] -= 1;
            (m2, c * &Rational::from_int(e as i64))
        })
        .collect();
    Polynomial::from_terms(p.ring(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{PolyRing, RingRef};

    fn r() -> RingRef {
        PolyRing::with_names(&["x", "y", "z", "w"])
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(&r(), s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x*z + y*z")), p("x + y"));
        assert_eq!(gcd(&p("x*y"), &p("x*z")), p("x"));
        assert_eq!(gcd(&p("x + 1"), &p("y")), p("1"));
        assert_eq!(gcd(&p("2*x*y - 2*x*z"), &p("3*y*w - 3*z*w")), p("y - z"));
    }

    #[test]
    fn factor_examples() {
        let f = factor(&p("x^2*y - x^2*z"));
        assert!(f.certified);
        assert_eq!(f.count(), 3);
        let ds: Vec<String> = f.distinct().iter().map(|q| q.to_string()).collect();
        assert!(ds.contains(&"x".to_string()) && ds.contains(&"y - z".to_string()));

        let g = factor(&p("x*y - z*w"));
        assert!(g.certified);
        assert_eq!(g.count(), 1);

        let h = factor(&p("x*y + x*z + w*y + w*z"));
        assert_eq!(h.count(), 2);

        let sq = factor(&p("x^2 + 2*x*y + y^2"));
        assert_eq!(sq.factors, vec![(p("x + y"), 2)]);
    }

    #[test]
    fn product_recovers_input() {
        let f = p("3*x*y^2*z - 3*x*z*w^2");
        let fac = factor(&f);
        let mut prod = Polynomial::constant(&r(), fac.unit.clone());
        for (q, e) in &fac.factors {
            prod = &prod * &q.pow(*e);
        }
        assert_eq!(prod, f);
    }
}
