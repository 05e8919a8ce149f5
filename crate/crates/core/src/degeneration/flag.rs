//! Flag types, Plücker coordinate blocks and the equations of flag varieties.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{rank, QMatrix};
use crate::algebra::{PolyRing, Polynomial, Rational, RingRef, VarTag, Variable};
use crate::building::{subsets, Matrix};
use crate::error::{Error, Result};

/// Ascending ranks `k_1 < … < k_r` inside `1..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    d: usize,
    ranks: Vec<usize>,
}

impl FlagType {
    pub fn new(d: usize, ranks: &[usize]) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidFlagType(format!("d = {d} < 2")));
        }
        if ranks.is_empty() {
            return Err(Error::InvalidFlagType("no ranks".into()));
        }
        if ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFlagType(format!("{ranks:?} is not strictly ascending")));
        }
        if ranks[0] < 1 || ranks[ranks.len() - 1] > d - 1 {
            return Err(Error::InvalidFlagType(format!("{ranks:?} not within 1..{}", d - 1)));
        }
        Ok(FlagType {
            d,
            ranks: ranks.to_vec(),
        })
    }

    /// The type `(1)`.
    pub fn projective(d: usize) -> Result<Self> {
        FlagType::new(d, &[1])
    }

    /// The type `(d-1)`.
    pub fn dual_projective(d: usize) -> Result<Self> {
        FlagType::new(d, &[d - 1])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn levels(&self) -> usize {
        self.ranks.len()
    }

    /// Dimension of the flag variety: `Σ k_t (k_{t+1} − k_t)` with `k_{r+1} = d`.
    pub fn variety_dimension(&self) -> usize {
        let mut next = self.ranks[1..].to_vec();
        next.push(self.d);
        self.ranks.iter().zip(next).map(|(&k, n)| k * (n - k)).sum()
    }

    /// The sub-type on the given 0-based level indices.
    pub fn sub(&self, levels: &[usize]) -> Result<FlagType> {
        FlagType::new(self.d, &levels.iter().map(|&l| self.ranks[l]).collect::<Vec<_>>())
    }

    /// Proper nonempty sub-types, smallest first, as level index lists.
    pub fn proper_sublevels(&self) -> Vec<Vec<usize>> {
        let r = self.levels();
        let mut out = Vec::new();
        for size in 1..r {
            out.extend(subsets(r, size));
        }
        out
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join("<"))
    }
}

/// Label of a subset in variable names: 1-based digits, comma separated
/// when `d > 9`.
pub fn subset_label(s: &[usize], d: usize) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    parts.join(if d > 9 { "," } else { "" })
}

pub fn var_name(vertex: usize, level: usize, s: &[usize], d: usize) -> String {
    format!("p{vertex}_{level}_{}", subset_label(s, d))
}

/// One block of Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// 1-based vertex index.
    pub vertex: usize,
    /// 1-based level index.
    pub level: usize,
    pub k: usize,
    /// `k`-subsets of `0..d`, lexicographic.
    pub subsets: Vec<Vec<usize>>,
    /// Ring indices aligned with `subsets`.
    pub vars: Vec<usize>,
}

impl Block {
    pub fn index_of_subset(&self, s: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }
}

/// Block variables for `n` vertices, optionally followed by the parameter `t`.
pub fn block_ring(n: usize, flag: &FlagType, with_t: bool) -> (RingRef, Vec<Block>) {
    let d = flag.dim();
    let mut vars = Vec::new();
    let mut blocks = Vec::new();
    for j in 1..=n {
        for (l, &k) in flag.ranks().iter().enumerate() {
            let subs = subsets(d, k);
            let start = vars.len();
            for s in &subs {
                vars.push(Variable {
                    name: var_name(j, l + 1, s, d),
                    tag: VarTag::Block {
                        vertex: j,
                        level: l + 1,
                    },
                });
            }
            blocks.push(Block {
                vertex: j,
                level: l + 1,
                k,
                vars: (start..vars.len()).collect(),
                subsets: subs,
            });
        }
    }
    if with_t {
        vars.push(Variable {
            name: "t".into(),
            tag: VarTag::Param,
        });
    }
    (PolyRing::new(vars).expect("distinct names"), blocks)
}

/// Sign and sorted form of the sequence `s ++ [x]`; `None` if `x ∈ s`.
fn insert_sorted(s: &[usize], x: usize) -> Option<(bool, Vec<usize>)> {
    if s.contains(&x) {
        return None;
    }
    let above = s.iter().filter(|&&y| y > x).count();
    let mut v = s.to_vec();
    let pos = v.len() - above;
    v.insert(pos, x);
    Some((above % 2 == 0, v))
}

/// Plücker and incidence relations of one vertex: for levels `a ≤ b` with
/// ranks `k ≤ k'`, every `(k−1)`-subset `α` and `(k'+1)`-subset `β` give
/// `Σ_l (−1)^l p_{α ∪ β_l} q_{β ∖ β_l} = 0`.
pub fn flag_relations(ring: &RingRef, blocks: &[&Block], d: usize) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for (a, ba) in blocks.iter().enumerate() {
        for bb in &blocks[a..] {
            let (k, k2) = (ba.k, bb.k);
            if k2 + 1 > d {
                continue;
            }
            for alpha in subsets(d, k - 1) {
                for beta in subsets(d, k2 + 1) {
                    let mut f = Polynomial::zero(ring);
                    for l in 0..beta.len() {
                        let Some((sign, s)) = insert_sorted(&alpha, beta[l]) else {
                            continue;
                        };
                        let mut rest = beta.clone();
                        rest.remove(l);
                        let p = Polynomial::var(ring, ba.vars[ba.index_of_subset(&s).unwrap()]);
                        let q = Polynomial::var(ring, bb.vars[bb.index_of_subset(&rest).unwrap()]);
                        let term = &p * &q;
                        f = if sign == (l % 2 == 0) { &f + &term } else { &f - &term };
                    }
                    if !f.is_zero() {
                        let f = f.monic();
                        if !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
            }
        }
    }
    out
}

/// One Plücker vector per level.
pub type FlagPoint = Vec<Vec<Rational>>;

/// Plücker vectors of the row spans of the first `k_t` rows of `m`.
pub fn flag_point_from_matrix(m: &QMatrix, flag: &FlagType) -> FlagPoint {
    let lm = Matrix::from_rational_rows(m).expect("rectangular");
    let d = flag.dim();
    flag.ranks()
        .iter()
        .map(|&k| {
            let rows: Vec<usize> = (0..k).collect();
            subsets(d, k)
                .iter()
                .map(|s| lm.minor(&rows, s).eval(&Rational::zero()))
                .collect()
        })
        .collect()
}

/// Random invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_matrix(d: usize, bound: i64, rng: &mut ChaCha8Rng) -> Result<QMatrix> {
    for _ in 0..100 {
        let m: QMatrix = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| Rational::from_int(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        if rank(&m) == d {
            return Ok(m);
        }
    }
    Err(Error::Sampling("no invertible matrix after 100 draws".into()))
}

/// A random flag point of type `flag`; deterministic in `seed`.
pub fn random_flag_point(flag: &FlagType, seed: u64) -> Result<FlagPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_matrix(flag.dim(), 9, &mut rng)?;
    Ok(flag_point_from_matrix(&m, flag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dimension, Ideal};

    fn relations(d: usize, ranks: &[usize]) -> (RingRef, Vec<Block>, Vec<Polynomial>) {
        let f = FlagType::new(d, ranks).unwrap();
        let (ring, blocks) = block_ring(1, &f, false);
        let refs: Vec<&Block> = blocks.iter().collect();
        let rel = flag_relations(&ring, &refs, d);
        (ring, blocks, rel)
    }

    fn point_vector(blocks: &[Block], p: &FlagPoint, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (b, x) in blocks.iter().zip(p) {
            for (&i, c) in b.vars.iter().zip(x) {
                v[i] = c.clone();
            }
        }
        v
    }

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(3, &[2, 1]).is_err());
        assert!(FlagType::new(3, &[0]).is_err());
        assert!(FlagType::new(3, &[3]).is_err());
        let f = FlagType::new(3, &[1, 2]).unwrap();
        assert_eq!(f.variety_dimension(), 3);
        assert_eq!(f.to_string(), "(1<2)");
        assert_eq!(FlagType::new(4, &[2]).unwrap().variety_dimension(), 4);
    }

    #[test]
    fn projective_space_has_no_relations() {
        assert!(relations(3, &[1]).2.is_empty());
        assert!(relations(5, &[1]).2.is_empty());
    }

    #[test]
    fn grassmannian_2_4_is_the_classical_quadric() {
        let (ring, _, rel) = relations(4, &[2]);
        assert_eq!(rel.len(), 1);
        let want = Polynomial::parse(&ring, "p1_1_12*p1_1_34 - p1_1_13*p1_1_24 + p1_1_14*p1_1_23").unwrap();
        assert_eq!(rel[0], want.monic());
    }

    #[test]
    fn relations_vanish_on_random_flags() {
        for (d, ranks) in [(3, vec![1, 2]), (4, vec![2]), (4, vec![1, 3]), (4, vec![1, 2, 3]), (5, vec![2, 3])] {
            let f = FlagType::new(d, &ranks).unwrap();
            let (ring, blocks, rel) = relations(d, &ranks);
            for seed in 0..100 {
                let p = random_flag_point(&f, seed).unwrap();
                let v = point_vector(&blocks, &p, ring.nvars());
                for g in &rel {
                    assert!(g.evaluate(&v).is_zero(), "{g} at seed {seed}");
                }
            }
        }
    }

    #[test]
    fn flag_ideal_dimensions() {
        for (d, ranks) in [(3, vec![1, 2]), (4, vec![2]), (4, vec![1, 3]), (3, vec![1])] {
            let f = FlagType::new(d, &ranks).unwrap();
            let (ring, _, rel) = relations(d, &ranks);
            let dim = dimension(&Ideal::new(&ring, rel).unwrap());
            assert_eq!(dim, (f.variety_dimension() + f.levels()) as i64, "{f}");
        }
    }

    #[test]
    fn identity_points() {
        let id: QMatrix = (0..4)
            .map(|i| (0..4).map(|j| Rational::from_int((i == j) as i64)).collect())
            .collect();
        let p = flag_point_from_matrix(&id, &FlagType::new(4, &[2]).unwrap());
        assert!(p[0][0].is_one() && p[0][1..].iter().all(|x| x.is_zero()));
        let id3: QMatrix = id[..3].iter().map(|r| r[..3].to_vec()).collect();
        let p = flag_point_from_matrix(&id3, &FlagType::projective(3).unwrap());
        assert_eq!(p[0], vec![Rational::one(), Rational::zero(), Rational::zero()]);
    }
}
