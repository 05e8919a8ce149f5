//! Vertices of the Bruhat–Tits building of PGL_d over Q(t): homothety
//! classes of lattices over the valuation ring Q[t]_(t).
//!
//! A lattice is given by a basis matrix whose columns span it. Two lattices
//! are compared through the elementary divisors of their transition matrix,
//! computed from determinantal divisors: the valuation of the k-th invariant
//! factor is `δ_k − δ_{k−1}` where `δ_k` is the least valuation of a k×k
//! minor.

pub mod frame;
pub mod laurent;
pub mod matrix;

use std::collections::BTreeSet;
use std::fmt;

pub use frame::{common_apartment, CommonFrame};
pub use laurent::Laurent;
pub use matrix::{subsets, Matrix};

use crate::error::{Error, Result};

/// Valuations of the invariant factors of `m` over Q[t]_(t), ascending.
pub fn elementary_divisor_exponents(m: &Matrix) -> Result<Vec<i64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("square matrix expected".into()));
    }
    let n = m.rows();
    let minors = m.all_minors();
    let mut delta = vec![0i64; n + 1];
    for (k, slot) in delta.iter_mut().enumerate().skip(1) {
        *slot = minors
            .iter()
            .filter(|((r, _), v)| r.count_ones() as usize == k && !v.is_zero())
            .map(|(_, v)| v.valuation().unwrap())
            .min()
            .ok_or(Error::SingularMatrix)?;
    }
    let mut e: Vec<i64> = (1..=n).map(|k| delta[k] - delta[k - 1]).collect();
    e.sort_unstable();
    Ok(e)
}

/// Shifts an exponent vector so that its minimum is zero.
pub fn normalize(a: &[i64]) -> Vec<i64> {
    let m = a.iter().copied().min().unwrap_or(0);
    a.iter().map(|x| x - m).collect()
}

/// A vertex of the standard apartment: the class of `⊕ R t^{a_i} e_i`,
/// stored with minimum exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApartmentVertex(Vec<i64>);

impl ApartmentVertex {
    pub fn new(a: &[i64]) -> Self {
        ApartmentVertex(normalize(a))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Building distance between apartment vertices: spread of the difference.
    pub fn distance(&self, other: &ApartmentVertex) -> i64 {
        let diff: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        diff.iter().max().unwrap() - diff.iter().min().unwrap()
    }
}

impl fmt::Display for ApartmentVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ApartmentVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A homothety class of lattices, kept with a representative basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    basis: Matrix,
    apartment: Option<ApartmentVertex>,
}

impl Vertex {
    pub fn from_matrix(basis: Matrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch("lattice basis must be square".into()));
        }
        if basis.rows() < 2 {
            return Err(Error::InvalidConfiguration("lattices need d >= 2".into()));
        }
        if basis.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let apartment = basis
            .diagonal_exponents()
            .map(|a| ApartmentVertex::new(&a));
        Ok(Vertex { basis, apartment })
    }

    pub fn diagonal(a: &[i64]) -> Result<Self> {
        Vertex::from_matrix(Matrix::diag_t(a))
    }

    pub fn from_apartment(a: &ApartmentVertex) -> Self {
        Vertex::diagonal(a.exponents()).expect("diagonal lattices are regular")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The apartment coordinates, when the basis is diagonal with monomial entries.
    pub fn apartment(&self) -> Option<&ApartmentVertex> {
        self.apartment.as_ref()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.apartment {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "{}", self.basis),
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `adj(B₁)·B₂`, a scalar multiple of `B₁⁻¹B₂`.
pub fn transition(v1: &Vertex, v2: &Vertex) -> Result<Matrix> {
    v1.basis.adjugate().mul(&v2.basis)
}

fn relative_exponents(v1: &Vertex, v2: &Vertex) -> Result<Vec<i64>> {
    if v1.dim() != v2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vertices of dimension {} and {}",
            v1.dim(),
            v2.dim()
        )));
    }
    if let (Some(a), Some(b)) = (&v1.apartment, &v2.apartment) {
        let mut e: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| y - x).collect();
        e.sort_unstable();
        return Ok(e);
    }
    elementary_divisor_exponents(&transition(v1, v2)?)
}

pub fn vertex_equal(v1: &Vertex, v2: &Vertex) -> bool {
    relative_exponents(v1, v2).is_ok_and(|e| e.iter().all(|&x| x == e[0]))
}

/// `(adjacent, distance)`; a vertex is at distance 0 from itself and not
/// adjacent to it.
pub fn adjacency_and_distance(v1: &Vertex, v2: &Vertex) -> Result<(bool, i64)> {
    let e = relative_exponents(v1, v2)?;
    let dist = e[e.len() - 1] - e[0];
    Ok((dist == 1, dist))
}

/// A finite set of pairwise distinct vertices of one dimension.
#[derive(Clone, Debug)]
pub struct Configuration {
    d: usize,
    vertices: Vec<Vertex>,
}

impl Configuration {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidConfiguration("no vertices".into()));
        };
        let d = first.dim();
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != d {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {} has dimension {}, expected {d}",
                    i + 1,
                    v.dim()
                )));
            }
            for (j, w) in vertices[..i].iter().enumerate() {
                if vertex_equal(v, w) {
                    return Err(Error::InvalidConfiguration(format!(
                        "vertices {} and {} are homothetic",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Configuration { d, vertices })
    }

    pub fn from_diagonals(exps: &[Vec<i64>]) -> Result<Self> {
        Configuration::new(
            exps.iter()
                .map(|a| Vertex::diagonal(a))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> &Vertex {
        &self.vertices[j]
    }

    pub fn is_apartment(&self) -> bool {
        self.vertices.iter().all(|v| v.apartment.is_some())
    }

    pub fn apartment_vertices(&self) -> Option<Vec<ApartmentVertex>> {
        self.vertices.iter().map(|v| v.apartment.clone()).collect()
    }

    /// Index of a vertex homothetic to `v`.
    pub fn position(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|w| vertex_equal(v, w))
    }

    pub fn with_vertex(&self, v: Vertex) -> Result<Configuration> {
        let mut vs = self.vertices.clone();
        vs.push(v);
        Configuration::new(vs)
    }

    /// The sub-configuration on the given (0-based) indices, in that order.
    pub fn subset(&self, idx: &[usize]) -> Result<Configuration> {
        Configuration::new(idx.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// Least distance from `v` to a vertex of the configuration.
    pub fn distance_to(&self, v: &Vertex) -> Result<i64> {
        let mut best = i64::MAX;
        for w in &self.vertices {
            best = best.min(adjacency_and_distance(v, w)?.1);
        }
        Ok(best)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "L{}={v}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Orientation of tropical convexity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HullVariant {
    Min,
    Max,
}

/// Integer points of the tropical convex hull: all normalized
/// `min_j(λ_j + a_j)` (or `max`). A hull point `x` is attained by the
/// canonical offsets `λ_j = max_i(x_i − a_ji)` (dually `min` for `max`),
/// which are integers within the coordinate spread, so scanning that window
/// is exhaustive.
pub fn tropical_hull(
    config: &[ApartmentVertex],
    variant: HullVariant,
) -> Result<BTreeSet<ApartmentVertex>> {
    let Some(first) = config.first() else {
        return Ok(BTreeSet::new());
    };
    let d = first.dim();
    if config.iter().any(|a| a.dim() != d) {
        return Err(Error::DimensionMismatch("apartment vertices of mixed dimension".into()));
    }
    let spread = config
        .iter()
        .flat_map(|a| a.0.iter())
        .copied()
        .max()
        .unwrap_or(0);
    let w = spread + 1;
    let n = config.len();
    let mut out = BTreeSet::new();
    let mut lambda = vec![-w; n];
    lambda[0] = 0;
    loop {
        let mut x = vec![None::<i64>; d];
        for (j, a) in config.iter().enumerate() {
            for i in 0..d {
                let v = lambda[j] + a.0[i];
                x[i] = Some(match (x[i], variant) {
                    (None, _) => v,
                    (Some(u), HullVariant::Min) => u.min(v),
                    (Some(u), HullVariant::Max) => u.max(v),
                });
            }
        }
        let x: Vec<i64> = x.into_iter().map(Option::unwrap).collect();
        out.insert(ApartmentVertex::new(&x));
        // odometer over λ_2..λ_n ∈ [-w, w]; λ_1 = 0 fixes the translation
        let mut k = 1;
        while k < n {
            if lambda[k] < w {
                lambda[k] += 1;
                break;
            }
            lambda[k] = -w;
            k += 1;
        }
        if k >= n {
            break;
        }
    }
    Ok(out)
}

/// Vertices at distance `1..=radius` from `v` in the apartment of its basis.
fn neighborhood(v: &Vertex, radius: i64) -> Vec<Vertex> {
    let d = v.dim();
    let mut out = Vec::new();
    let mut e = vec![0i64; d];
    loop {
        if e.contains(&0) && e.iter().any(|&x| x != 0) {
            let m = v.basis.mul(&Matrix::diag_t(&e)).expect("square");
            out.push(match &v.apartment {
                Some(a) => {
                    let s: Vec<i64> = a.0.iter().zip(&e).map(|(x, y)| x + y).collect();
                    Vertex::diagonal(&s).expect("regular")
                }
                None => Vertex::from_matrix(m).expect("regular"),
            });
        }
        let mut k = 0;
        while k < d {
            if e[k] < radius {
                e[k] += 1;
                break;
            }
            e[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    out
}

/// Candidate vertices for secondary components: hull members before
/// neighbors, then by distance to Γ, then lexicographically.
///
/// For apartment configurations: both tropical hulls, plus apartment
/// vertices within `radius` of a hull member. Otherwise: apartment-style
/// neighbors within `radius` of each vertex in the frame of its own basis.
/// Members of Γ are excluded.
pub fn secondary_candidates(config: &Configuration, radius: i64) -> Result<Vec<Vertex>> {
    let mut pool: Vec<(bool, Vertex)> = Vec::new();
    let mut seen: BTreeSet<ApartmentVertex> = BTreeSet::new();
    let mut push = |v: Vertex, in_hull: bool, pool: &mut Vec<(bool, Vertex)>| {
        if config.position(&v).is_some() {
            return;
        }
        if let Some(a) = v.apartment() {
            if !seen.insert(a.clone()) {
                return;
            }
        } else if pool.iter().any(|(_, w)| vertex_equal(w, &v)) {
            return;
        }
        pool.push((in_hull, v));
    };
    if let Some(aps) = config.apartment_vertices() {
        let mut hull = tropical_hull(&aps, HullVariant::Min)?;
        hull.extend(tropical_hull(&aps, HullVariant::Max)?);
        for h in &hull {
            push(Vertex::from_apartment(h), true, &mut pool);
        }
        for h in &hull {
            for n in neighborhood(&Vertex::from_apartment(h), radius) {
                push(n, false, &mut pool);
            }
        }
    } else {
        for v in config.vertices() {
            for n in neighborhood(v, radius) {
                push(n, false, &mut pool);
            }
        }
    }
    let mut keyed: Vec<(bool, i64, Option<ApartmentVertex>, usize, Vertex)> = pool
        .into_iter()
        .enumerate()
        .map(|(i, (h, v))| {
            let dist = config.distance_to(&v)?;
            Ok((!h, dist, v.apartment().cloned(), i, v))
        })
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (a.0, a.1, &a.2, a.3).cmp(&(b.0, b.1, &b.2, b.3)));
    Ok(keyed.into_iter().map(|k| k.4).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn av(a: &[i64]) -> ApartmentVertex {
        ApartmentVertex::new(a)
    }

    fn dv(a: &[i64]) -> Vertex {
        Vertex::diagonal(a).unwrap()
    }

    #[test]
    fn elementary_divisors() {
        let e = elementary_divisor_exponents(&Matrix::diag_t(&[0, 1, 3])).unwrap();
        assert_eq!(e, vec![0, 1, 3]);
        let e = elementary_divisor_exponents(&Matrix::identity(3)).unwrap();
        assert_eq!(e, vec![0, 0, 0]);
        let m = Matrix::parse("[[1, 1], [1, 1 + t]]").unwrap();
        assert_eq!(elementary_divisor_exponents(&m).unwrap(), vec![0, 1]);
        let s = Matrix::parse("[[1, t], [1, t]]").unwrap();
        assert!(elementary_divisor_exponents(&s).is_err());
    }

    #[test]
    fn equality_and_distance() {
        let l = dv(&[0, 0, 0]);
        let tl = Vertex::from_matrix(Matrix::diag_t(&[1, 1, 1])).unwrap();
        assert!(vertex_equal(&l, &tl));
        assert!(!vertex_equal(&l, &dv(&[1, 0, 0])));
        let perm = Vertex::from_matrix(Matrix::parse("[[0,1,0],[1,0,0],[0,0,1]]").unwrap()).unwrap();
        assert!(vertex_equal(&l, &perm));
        assert_eq!(adjacency_and_distance(&l, &dv(&[1, 0, 0])).unwrap(), (true, 1));
        assert_eq!(adjacency_and_distance(&l, &dv(&[2, 0, 0])).unwrap(), (false, 2));
        assert_eq!(adjacency_and_distance(&l, &l).unwrap(), (false, 0));
        let sheared = Vertex::from_matrix(Matrix::parse("[[1,1,0],[0,t,0],[0,0,1]]").unwrap()).unwrap();
        assert_eq!(adjacency_and_distance(&l, &sheared).unwrap(), (true, 1));
    }

    #[test]
    fn hull_examples() {
        let single = vec![av(&[0, 2, 1])];
        for v in [HullVariant::Min, HullVariant::Max] {
            assert_eq!(tropical_hull(&single, v).unwrap().into_iter().collect::<Vec<_>>(), single);
        }
        let gamma = vec![av(&[0, 0, 0]), av(&[1, 0, 0]), av(&[0, 0, 1])];
        let min: Vec<_> = tropical_hull(&gamma, HullVariant::Min).unwrap().into_iter().collect();
        let max: Vec<_> = tropical_hull(&gamma, HullVariant::Max).unwrap().into_iter().collect();
        let mut g = gamma.clone();
        g.sort();
        assert_eq!(min, g);
        let mut g4 = gamma.clone();
        g4.push(av(&[1, 0, 1]));
        g4.sort();
        assert_eq!(max, g4);
        let seg = vec![av(&[0, 0]), av(&[3, 0])];
        let want: Vec<_> = (0..=3).map(|i| av(&[i, 0])).collect();
        for v in [HullVariant::Min, HullVariant::Max] {
            assert_eq!(tropical_hull(&seg, v).unwrap().into_iter().collect::<Vec<_>>(), want);
        }
    }

    #[test]
    fn candidate_examples() {
        let gamma = Configuration::from_diagonals(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let c = secondary_candidates(&gamma, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].apartment().unwrap(), &av(&[1, 0, 1]));
        let single = Configuration::from_diagonals(&[vec![0, 0]]).unwrap();
        assert!(secondary_candidates(&single, 0).unwrap().is_empty());
        let g2 = Configuration::from_diagonals(&[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let c2: Vec<_> = secondary_candidates(&g2, 0)
            .unwrap()
            .iter()
            .map(|v| v.apartment().unwrap().clone())
            .collect();
        assert!(c2.contains(&av(&[0, 0, 0])) && c2.contains(&av(&[1, 0, 1])));
        let r1 = secondary_candidates(&gamma, 1).unwrap();
        assert!(r1.len() > 1);
        assert_eq!(r1[0].apartment().unwrap(), &av(&[1, 0, 1]));
    }

    #[test]
    fn duplicate_vertices_rejected() {
        assert!(Configuration::from_diagonals(&[vec![0, 0], vec![1, 1]]).is_err());
    }
}
