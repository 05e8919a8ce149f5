use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Role of a ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// Plücker coordinate of vertex `vertex` at flag level `level` (both 1-based).
    Block { vertex: usize, level: usize },
    /// The uniformizer `t`.
    Param,
    /// Helper variable introduced by an algorithm (saturation, intersection).
    Aux,
    /// Untagged variable of a user-built ring.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub tag: VarTag,
}

/// An ordered list of named variables. Variable order is the default ranking
/// used by the monomial orders (first variable largest).
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Vec<Variable>,
    index: HashMap<String, usize>,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(vars: Vec<Variable>) -> Result<RingRef> {
        let mut index = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::InvalidConfiguration(format!(
                    "duplicate variable name `{}`",
                    v.name
                )));
            }
        }
        if vars.iter().filter(|v| v.tag == VarTag::Param).count() > 1 {
            return Err(Error::InvalidConfiguration(
                "more than one parameter variable".into(),
            ));
        }
        Ok(Arc::new(PolyRing { vars, index }))
    }

    /// A ring of untagged variables.
    pub fn with_names<S: AsRef<str>>(names: &[S]) -> RingRef {
        let vars = names
            .iter()
            .map(|n| Variable {
                name: n.as_ref().to_string(),
                tag: VarTag::Free,
            })
            .collect();
        PolyRing::new(vars).expect("distinct names")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn tag(&self, i: usize) -> &VarTag {
        &self.vars[i].tag
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn param(&self) -> Option<usize> {
        self.vars.iter().position(|v| v.tag == VarTag::Param)
    }

    /// Variable blocks keyed by `(vertex, level)` in order of first appearance.
    pub fn blocks(&self) -> Vec<((usize, usize), Vec<usize>)> {
        let mut out: Vec<((usize, usize), Vec<usize>)> = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if let VarTag::Block { vertex, level } = v.tag {
                match out.iter_mut().find(|(k, _)| *k == (vertex, level)) {
                    Some((_, idx)) => idx.push(i),
                    None => out.push(((vertex, level), vec![i])),
                }
            }
        }
        out
    }

    /// Variables of one vertex, all levels.
    pub fn vertex_vars(&self, vertex: usize) -> Vec<usize> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| matches!(v.tag, VarTag::Block { vertex: j, .. } if j == vertex))
            .map(|(i, _)| i)
            .collect()
    }

    /// Structural equality: same names and tags in the same order.
    pub fn same_as(&self, other: &PolyRing) -> bool {
        self.vars == other.vars
    }

    /// This ring with extra variables appended.
    pub fn extend(&self, extra: Vec<Variable>) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(extra);
        PolyRing::new(vars)
    }

    /// A fresh auxiliary variable name not present in the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0usize;
        loop {
            let cand = format!("_{stem}{k}");
            if !self.index.contains_key(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// The subring on the listed variables (kept in their current order).
    pub fn subring(&self, keep: &[usize]) -> RingRef {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        PolyRing::new(keep.iter().map(|&i| self.vars[i].clone()).collect())
            .expect("subring of a valid ring")
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.name)?;
        }
        write!(f, "]")
    }
}

pub type Exps = SmallVec<[u16; 32]>;

/// Exponent vector aligned with a ring's variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Exps);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}
