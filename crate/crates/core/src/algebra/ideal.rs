use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::groebner::{buchberger, leading_monomial, normal_form};
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::rational::Rational;
use super::ring::{Monomial, PolyRing, RingRef, VarTag, Variable};
use crate::error::{Error, Result};

/// An ideal given by generators, with lazily computed reduced Gröbner bases
/// cached per monomial order.
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    grading: OnceLock<Option<Vec<u32>>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.read().unwrap().clone();
        let grading = OnceLock::new();
        if let Some(g) = self.grading.get() {
            let _ = grading.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            grading,
            cache: RwLock::new(cache),
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !g.ring().same_as(ring) {
                return Err(Error::MixedRing(ring.to_string(), g.ring().to_string()));
            }
        }
        let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        gens.dedup();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            grading: OnceLock::new(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &RingRef) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// Attaches a strictly positive grading for which all generators are
    /// homogeneous. Enables the divide-out saturation path.
    pub fn with_grading(self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.ring.nvars() || weights.contains(&0) {
            return Err(Error::NotHomogeneous("weights must be positive, one per variable".into()));
        }
        if let Some(g) = self.gens.iter().find(|g| g.homogeneous_degree(&weights).is_none()) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        let grading = OnceLock::new();
        let _ = grading.set(Some(weights));
        Ok(Ideal { grading, ..self })
    }

    /// A positive grading making every generator homogeneous: the attached
    /// one, or the standard grading when it works.
    pub fn grading(&self) -> Option<&Vec<u32>> {
        self.grading
            .get_or_init(|| {
                let ones = vec![1u32; self.ring.nvars()];
                self.gens
                    .iter()
                    .all(|g| g.homogeneous_degree(&ones).is_some())
                    .then_some(ones)
            })
            .as_ref()
    }

    fn inherit_grading(self, weights: Option<&Vec<u32>>) -> Self {
        match weights {
            Some(w) if self.gens.iter().all(|g| g.homogeneous_degree(w).is_some()) => {
                let _ = self.grading.set(Some(w.clone()));
                self
            }
            _ => self,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Degrevlex in ring order, weighted by the ideal's grading when that
    /// grading is not the standard one.
    pub fn default_order(&self) -> MonomialOrder {
        match self.grading() {
            Some(w) if w.iter().any(|&x| x != 1) => MonomialOrder::DegRevLex {
                weights: Some(w.clone()),
                ranking: None,
            },
            _ => MonomialOrder::degrevlex(),
        }
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(gb) = self.cache.read().unwrap().get(order) {
            return gb.clone();
        }
        let gb = Arc::new(buchberger(&self.gens, order).expect("generators share the ring"));
        self.cache
            .write()
            .unwrap()
            .entry(order.clone())
            .or_insert(gb)
            .clone()
    }

    pub fn gb(&self) -> Arc<Vec<Polynomial>> {
        self.groebner(&self.default_order())
    }

    /// Replaces the generators by the default reduced Gröbner basis.
    pub fn reduced(&self) -> Ideal {
        let gb = self.gb();
        let mut out = Ideal::new(&self.ring, gb.to_vec()).unwrap();
        out.cache
            .get_mut()
            .unwrap()
            .insert(self.default_order(), gb);
        out.inherit_grading(self.grading())
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        let order = self.default_order();
        let gb = self.groebner(&order);
        normal_form(f, &gb, &order)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let order = self.default_order();
        let gb = self.groebner(&order);
        normal_form(f, &gb, &order).expect("same ring")
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring.same_as(&other.ring) && self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            self.gens.first().map_or(Ok(()), |f| f.check_ring(g))?;
            gens.push(g.clone());
        }
        let grading = self.grading().cloned();
        Ok(Ideal::new(&self.ring, gens)?.inherit_grading(grading.as_ref()))
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let other = Ideal::new(&self.ring, extra.to_vec())?;
        self.sum(&other)
    }

    /// Moves generators into `target` by variable name.
    pub fn map_by_name(&self, target: &RingRef) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_by_name(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Generators as text, one per entry.
    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

/// `I ∩ Q[remaining variables]`, returned in the same ring.
pub fn eliminate(ideal: &Ideal, front: &[usize]) -> Ideal {
    if front.is_empty() {
        return ideal.clone();
    }
    let inner = ideal.default_order();
    let order = MonomialOrder::elimination(front.to_vec(), inner);
    let gb = ideal.groebner(&order);
    let gens: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.support().iter().all(|v| !front.contains(v)))
        .cloned()
        .collect();
    Ideal::new(ideal.ring(), gens)
        .unwrap()
        .inherit_grading(ideal.grading())
}

/// Elimination followed by a move into the subring of the kept variables.
pub fn eliminate_to_subring(ideal: &Ideal, front: &[usize]) -> Ideal {
    let keep: Vec<usize> = (0..ideal.ring().nvars())
        .filter(|i| !front.contains(i))
        .collect();
    let sub = ideal.ring().subring(&keep);
    let e = eliminate(ideal, front);
    let grading = ideal
        .grading()
        .map(|w| keep.iter().map(|&i| w[i]).collect::<Vec<_>>());
    e.map_by_name(&sub)
        .expect("eliminated generators avoid front variables")
        .inherit_grading(grading.as_ref())
}

fn aux_ring(ring: &RingRef, stem: &str) -> RingRef {
    ring.extend(vec![Variable {
        name: ring.fresh_name(stem),
        tag: VarTag::Aux,
    }])
    .expect("fresh name")
}

fn embed(ideal_ring: &RingRef, big: &RingRef, f: &Polynomial) -> Polynomial {
    let map: Vec<Option<usize>> = (0..ideal_ring.nvars()).map(Some).collect();
    f.map_to(big, &map).expect("prefix embedding")
}

fn restrict(big: &RingRef, small: &RingRef, f: &Polynomial) -> Polynomial {
    let map: Vec<Option<usize>> = (0..big.nvars())
        .map(|i| (i < small.nvars()).then_some(i))
        .collect();
    f.map_to(small, &map).expect("auxiliary variable eliminated")
}

/// Divides out the largest power of `v` from each element.
fn divide_out(f: &Polynomial, v: usize) -> Polynomial {
    let k = f.terms().iter().map(|(m, _)| m.0[v]).min().unwrap_or(0);
    if k == 0 {
        return f.clone();
    }
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut m = m.clone();
            m.0[v] -= k;
            (m, c.clone())
        })
        .collect();
    Polynomial::from_terms(f.ring(), terms)
}

fn saturate_var_graded(ideal: &Ideal, v: usize, w: &[u32]) -> Ideal {
    let n = ideal.ring().nvars();
    let order = MonomialOrder::degrevlex_last(n, v, Some(w.to_vec()));
    let gb = ideal.groebner(&order);
    let gens: Vec<Polynomial> = gb.iter().map(|g| divide_out(g, v)).collect();
    Ideal::new(ideal.ring(), gens)
        .unwrap()
        .inherit_grading(Some(&w.to_vec()))
}

fn saturate_aux(ideal: &Ideal, f: &Polynomial) -> Ideal {
    let ring = ideal.ring();
    let big = aux_ring(ring, "y");
    let y = big.nvars() - 1;
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|g| embed(ring, &big, g)).collect();
    let fy = &Polynomial::var(&big, y) * &embed(ring, &big, f);
    gens.push(&Polynomial::one(&big) - &fy);
    let aux = Ideal::new(&big, gens).unwrap();
    let order = MonomialOrder::elimination(vec![y], MonomialOrder::degrevlex());
    let gb = aux.groebner(&order);
    let out: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.degree_in(y) == 0)
        .map(|g| restrict(&big, ring, g))
        .collect();
    Ideal::new(ring, out).unwrap().inherit_grading(ideal.grading())
}

/// `I : f^∞`.
///
/// When `I` carries a positive grading and `f` is homogeneous, `f` is
/// turned into a last-ranked variable (`y - f` with `y` of weight `deg f`)
/// and saturated by dividing out powers of `y` from a degrevlex basis;
/// otherwise the auxiliary-variable construction `I + (1 - y f)` is used.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Ideal {
    assert!(!f.is_zero(), "saturation by zero");
    if f.is_constant() || ideal.is_zero() {
        return ideal.clone();
    }
    let Some(w) = ideal.grading().cloned() else {
        return saturate_aux(ideal, f);
    };
    if f.is_monomial() {
        let mut acc = ideal.clone();
        for (v, &e) in f.terms()[0].0 .0.iter().enumerate() {
            if e > 0 {
                acc = saturate_var_graded(&acc, v, &w);
            }
        }
        return acc;
    }
    let Some(deg) = f.homogeneous_degree(&w) else {
        return saturate_aux(ideal, f);
    };
    let ring = ideal.ring();
    let big = aux_ring(ring, "y");
    let y = big.nvars() - 1;
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|g| embed(ring, &big, g)).collect();
    gens.push(&Polynomial::var(&big, y) - &embed(ring, &big, f));
    let mut wy = w.clone();
    wy.push(deg as u32);
    let lifted = Ideal::new(&big, gens).unwrap();
    let sat = saturate_var_graded(&lifted, y, &wy);
    let fb = embed(ring, &big, f);
    let out: Vec<Polynomial> = sat
        .gens
        .iter()
        .map(|g| restrict(&big, ring, &g.substitute(y, &fb)))
        .collect();
    Ideal::new(ring, out).unwrap().inherit_grading(Some(&w))
}

/// `I : v^∞` for a single variable.
pub fn saturate_var(ideal: &Ideal, v: usize) -> Ideal {
    saturate(ideal, &Polynomial::var(ideal.ring(), v))
}

/// `I : (vars)^∞ = ⋂_{v ∈ vars} I : v^∞`.
///
/// Short-circuits as soon as one variable is already a nonzerodivisor
/// modulo `I`, since then the whole intersection equals `I`.
pub fn saturate_by_variable_ideal(ideal: &Ideal, vars: &[usize]) -> Ideal {
    assert!(!vars.is_empty(), "saturation by the empty variable set");
    let mut parts = Vec::with_capacity(vars.len());
    for &v in vars {
        let s = saturate_var(ideal, v);
        if s.is_subset_of(ideal) {
            return ideal.clone();
        }
        parts.push(s);
    }
    let mut acc = parts.pop().unwrap();
    while let Some(p) = parts.pop() {
        acc = intersect(&acc, &p).expect("same ring");
    }
    acc
}

/// `I ∩ J` by eliminating `s` from `s·I + (1 - s)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !i.ring().same_as(j.ring()) {
        return Err(Error::MixedRing(i.ring().to_string(), j.ring().to_string()));
    }
    if i.is_unit() {
        return Ok(j.clone());
    }
    if j.is_unit() {
        return Ok(i.clone());
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(i.ring()));
    }
    let ring = i.ring();
    let big = aux_ring(ring, "s");
    let s = big.nvars() - 1;
    let sv = Polynomial::var(&big, s);
    let one_minus = &Polynomial::one(&big) - &sv;
    let mut gens = Vec::new();
    for g in i.gb().iter() {
        gens.push(&sv * &embed(ring, &big, g));
    }
    for g in j.gb().iter() {
        gens.push(&one_minus * &embed(ring, &big, g));
    }
    let inner = match i.grading().or(j.grading()) {
        Some(w) => {
            let mut w = w.clone();
            w.push(1);
            MonomialOrder::DegRevLex {
                weights: Some(w),
                ranking: None,
            }
        }
        None => MonomialOrder::degrevlex(),
    };
    let order = MonomialOrder::elimination(vec![s], inner);
    let gb = buchberger(&gens, &order)?;
    let out: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.degree_in(s) == 0)
        .map(|g| restrict(&big, ring, g))
        .collect();
    let grading = i.grading().cloned();
    Ok(Ideal::new(ring, out)?.inherit_grading(grading.as_ref()))
}

/// Whether some power of `f` lies in `I` (Rabinowitsch).
pub fn radical_contains(ideal: &Ideal, f: &Polynomial) -> bool {
    if ideal.contains(f) {
        return true;
    }
    let ring = ideal.ring();
    let big = aux_ring(ring, "y");
    let y = big.nvars() - 1;
    let mut gens: Vec<Polynomial> = ideal.gb().iter().map(|g| embed(ring, &big, g)).collect();
    gens.push(&Polynomial::one(&big) - &(&Polynomial::var(&big, y) * &embed(ring, &big, f)));
    let gb = buchberger(&gens, &MonomialOrder::degrevlex()).expect("same ring");
    gb.len() == 1 && gb[0].is_unit()
}

/// `√I = √J`.
pub fn ideal_equal_radical(i: &Ideal, j: &Ideal) -> bool {
    i.ring().same_as(j.ring())
        && j.generators().iter().all(|g| radical_contains(i, g))
        && i.generators().iter().all(|g| radical_contains(j, g))
}

/// Leading monomials of the default Gröbner basis.
pub fn leading_monomials(ideal: &Ideal) -> Vec<Monomial> {
    let order = ideal.default_order();
    ideal
        .groebner(&order)
        .iter()
        .filter_map(|g| leading_monomial(g, &order))
        .collect()
}

/// Krull dimension of `ring / I`; `-1` for the unit ideal.
///
/// The largest variable set containing the support of no leading monomial,
/// i.e. `n` minus a minimum hitting set of the leading supports.
pub fn dimension(ideal: &Ideal) -> i64 {
    let n = ideal.ring().nvars();
    assert!(n <= 128, "dimension supports at most 128 variables");
    let lms = leading_monomials(ideal);
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    let mut sets: Vec<u128> = lms
        .iter()
        .map(|m| m.support().fold(0u128, |acc, i| acc | (1 << i)))
        .collect();
    sets.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = n as u32;
    hitting_set(&minimal, 0, &mut best);
    n as i64 - best as i64
}

fn hitting_set(sets: &[u128], chosen: u128, best: &mut u32) {
    let size = chosen.count_ones();
    if size >= *best {
        return;
    }
    let open = sets
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    match open {
        None => *best = size,
        Some(&s) => {
            if size + 1 >= *best {
                return;
            }
            let mut bits = s;
            while bits != 0 {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                hitting_set(sets, chosen | (1 << i), best);
            }
        }
    }
}

/// Values of the multigraded Hilbert function of `ring / I` for every
/// multidegree with all entries at most `bound`, by counting standard
/// monomials. `blocks` must partition the variables.
pub fn multigraded_hilbert(
    ideal: &Ideal,
    blocks: &[Vec<usize>],
    bound: u32,
) -> Result<Vec<(Vec<u32>, u64)>> {
    let n = ideal.ring().nvars();
    let mut seen = vec![false; n];
    for b in blocks {
        for &v in b {
            if v >= n || seen[v] {
                return Err(Error::DimensionMismatch("blocks must partition the variables".into()));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::DimensionMismatch("blocks must partition the variables".into()));
    }
    if let Some(g) = ideal
        .generators()
        .iter()
        .find(|g| !g.is_multihomogeneous(blocks))
    {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let lms = leading_monomials(ideal);
    let mut out = Vec::new();
    let mut degs = vec![0u32; blocks.len()];
    loop {
        let mut count = 0u64;
        let mut m = Monomial::one(n);
        enumerate_block(blocks, &degs, 0, 0, &mut m, &mut |m| {
            if !lms.iter().any(|l| l.divides(m)) {
                count += 1;
            }
        });
        out.push((degs.clone(), count));
        let mut k = 0;
        loop {
            if k == degs.len() {
                return Ok(out);
            }
            degs[k] += 1;
            if degs[k] <= bound {
                break;
            }
            degs[k] = 0;
            k += 1;
        }
    }
}

fn enumerate_block(
    blocks: &[Vec<usize>],
    degs: &[u32],
    b: usize,
    pos: usize,
    m: &mut Monomial,
    f: &mut dyn FnMut(&Monomial),
) {
    if b == blocks.len() {
        f(m);
        return;
    }
    let block = &blocks[b];
    let used: u32 = block[..pos].iter().map(|&v| m.0[v] as u32).sum();
    let left = degs[b] - used;
    if pos + 1 == block.len() {
        m.0[block[pos]] = left as u16;
        enumerate_block(blocks, degs, b + 1, 0, m, f);
        m.0[block[pos]] = 0;
        return;
    }
    for e in 0..=left {
        m.0[block[pos]] = e as u16;
        enumerate_block(blocks, degs, b, pos + 1, m, f);
    }
    m.0[block[pos]] = 0;
}

/// Convenience: an ideal from text generators in a ring of named variables.
pub fn ideal_from_strs(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
    let gens = gens
        .iter()
        .map(|s| Polynomial::parse(ring, s).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `f` with variable `v` set to `c` in every generator.
pub fn specialize(ideal: &Ideal, v: usize, c: &Rational) -> Ideal {
    let gens = ideal.gens.iter().map(|g| g.eval_var(v, c)).collect();
    Ideal::new(ideal.ring(), gens).unwrap()
}

/// Ring of `names`, handy in tests and examples.
pub fn ring_of(names: &[&str]) -> RingRef {
    PolyRing::with_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn id(r: &RingRef, gens: &[&str]) -> Ideal {
        ideal_from_strs(r, gens).unwrap()
    }

    #[test]
    fn eliminate_examples() {
        let r = ring_of(&["x", "y", "z", "t"]);
        let e = eliminate(&id(&r, &["x - y", "y - z"]), &[1]);
        assert!(e.equals(&id(&r, &["x - z"])));
        let e = eliminate(&id(&r, &["x^2 - t"]), &[0]);
        assert!(e.is_zero());
        let e = eliminate(&id(&r, &["x - t*y", "x - t*z"]), &[0]);
        assert!(e.equals(&id(&r, &["t*y - t*z"])));
    }

    #[test]
    fn saturate_examples() {
        let r = ring_of(&["x", "y", "t"]);
        let t = p(&r, "t");
        assert!(saturate(&id(&r, &["t*x"]), &t).equals(&id(&r, &["x"])));
        assert!(saturate(&id(&r, &["x - t", "t^2"]), &t).is_unit());
        assert!(saturate(&id(&r, &["t*x - t*y"]), &t).equals(&id(&r, &["x - y"])));
    }

    #[test]
    fn graded_and_aux_saturation_agree() {
        let r = ring_of(&["x", "y", "z", "w"]);
        let i = id(&r, &["x*y - z*w", "x*z^2 - y^2*w", "x^2*z - y*w^2"]);
        let f = p(&r, "x + y");
        let fast = saturate(&i, &f);
        let slow = saturate_aux(&i, &f);
        assert!(fast.equals(&slow));
        let v = saturate_var(&i, 3);
        assert!(v.equals(&saturate_aux(&i, &p(&r, "w"))));
    }

    #[test]
    fn variable_ideal_saturation_examples() {
        let r = ring_of(&["x", "y", "z"]);
        let s = saturate_by_variable_ideal(&id(&r, &["x*y", "x*z"]), &[1, 2]);
        assert!(s.equals(&id(&r, &["x"])));
        assert!(saturate_by_variable_ideal(&id(&r, &["x"]), &[0]).is_unit());
        let s = saturate_by_variable_ideal(&id(&r, &["y"]), &[0]);
        assert!(s.equals(&id(&r, &["y"])));
    }

    #[test]
    fn intersect_examples() {
        let r = ring_of(&["x", "y", "z"]);
        let i = intersect(&id(&r, &["x"]), &id(&r, &["y"])).unwrap();
        assert!(i.equals(&id(&r, &["x*y"])));
        let j = id(&r, &["x^2 - y", "y*z"]);
        assert!(intersect(&j, &j).unwrap().equals(&j));
        let k = intersect(&id(&r, &["x", "y"]), &id(&r, &["z"])).unwrap();
        assert!(k.equals(&id(&r, &["x*z", "y*z"])));
    }

    #[test]
    fn radical_examples() {
        let r = ring_of(&["x", "y"]);
        assert!(radical_contains(&id(&r, &["x^2"]), &p(&r, "x")));
        assert!(!radical_contains(&id(&r, &["x^2"]), &p(&r, "y")));
        let i = id(&r, &["x*y", "x - y"]);
        assert!(!i.contains(&p(&r, "x")));
        assert!(i.contains(&p(&r, "x^2")));
        assert!(radical_contains(&i, &p(&r, "x")));
        assert!(ideal_equal_radical(&id(&r, &["x^2"]), &id(&r, &["x"])));
        assert!(!ideal_equal_radical(&id(&r, &["x"]), &id(&r, &["y"])));
    }

    #[test]
    fn dimension_examples() {
        let r = ring_of(&["x", "y", "z"]);
        assert_eq!(dimension(&id(&r, &["x"])), 2);
        let r5 = ring_of(&["a", "b", "c", "d", "e"]);
        assert_eq!(dimension(&Ideal::zero(&r5)), 5);
        assert_eq!(dimension(&Ideal::unit(&r5)), -1);
        assert_eq!(dimension(&id(&r, &["x*y", "x*z"])), 2);
        assert_eq!(dimension(&id(&r, &["x*y", "x*z", "y*z"])), 1);
    }

    #[test]
    fn hilbert_examples() {
        let r = ring_of(&["x", "y"]);
        let h = multigraded_hilbert(&Ideal::zero(&r), &[vec![0, 1]], 5).unwrap();
        for (d, v) in h {
            assert_eq!(v, d[0] as u64 + 1);
        }
        let h = multigraded_hilbert(&id(&r, &["x*y"]), &[vec![0, 1]], 5).unwrap();
        for (d, v) in h {
            assert_eq!(v, if d[0] == 0 { 1 } else { 2 });
        }
        assert!(multigraded_hilbert(&id(&r, &["x*y - x"]), &[vec![0, 1]], 2).is_err());
    }
}
