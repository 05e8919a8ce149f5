//! Mustafin degenerations of flag varieties.
//!
//! For a configuration `Γ = {[L_1], …, [L_n]}` and a flag type `F`, each
//! vertex contributes one block of Plücker variables per level. In the
//! coordinates of `L_1`, the point of `F(L_j)` with coordinates `p^{(j)}`
//! sits at `C_k(T_j)·p^{(j)}`, where `T_j = adj(B_1)·B_j` is the transition
//! matrix and `C_k` the k-th compound. The join is cut out by all 2×2
//! minors of the matrix with these columns together with the flag equations
//! of each block. Its flat closure over Q[t] near `t = 0` is the saturation
//! by `t`. Setting `t = 0` and saturating by each block's irrelevant ideal
//! gives the special fiber; saturating the flat model by the irrelevant
//! ideals first would not change it.
//!
//! The saturation by `t` takes one of three routes. Configurations in a
//! common apartment carry a positive grading making `t` homogeneous. Two
//! arbitrary lattices are moved into a shared apartment by a change of
//! basis over Q[t]_(t). Everything else is homogenized in `t`.

pub mod flag;

use std::fmt;

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use flag::{
    block_ring, flag_point_from_matrix, flag_relations, random_flag_point, random_matrix,
    subset_label, var_name, Block, FlagPoint, FlagType,
};

use crate::algebra::ideal::specialize;
use crate::algebra::linalg::solve;
use crate::algebra::{
    saturate, saturate_by_variable_ideal, Ideal, Monomial, Polynomial, Rational, RingRef, VarTag,
    Variable,
};
use crate::building::{common_apartment, transition, Configuration, Laurent, Matrix, Vertex};
use crate::error::{Error, Result};

/// `C_k(B)`: minors of `B` on lexicographically ordered `k`-subsets.
pub fn compound_matrix(b: &Matrix, k: usize) -> Matrix {
    b.compound(k)
}

/// The flag ideal of one vertex's blocks.
pub fn flag_ideal(ring: &RingRef, blocks: &[&Block], d: usize) -> Ideal {
    Ideal::new(ring, flag_relations(ring, blocks, d)).expect("same ring")
}

/// One cleared column: `entries[S] = Σ_T coeff[S][T] · p_T`, where the
/// coefficient matrix is `C_k(T_j)` divided by the gcd of its entries
/// (a unit of Q[t]_(t) times a power of `t`).
#[derive(Clone, Debug)]
pub struct Column {
    pub vertex: usize,
    pub level: usize,
    pub coeffs: Matrix,
}

impl Column {
    fn new(vertex: usize, level: usize, c: Matrix) -> Self {
        let mut g = Laurent::zero();
        let mut low = i64::MAX;
        for x in c.entries() {
            if let Some(v) = x.valuation() {
                g = Laurent::gcd(&g, x);
                low = low.min(v);
            }
        }
        let divisor = g.shift(low);
        let entries: Vec<Laurent> = c
            .entries()
            .iter()
            .map(|x| x.div_exact(&divisor).expect("gcd divides"))
            .collect();
        Column {
            vertex,
            level,
            coeffs: Matrix::new(c.rows(), c.cols(), entries).unwrap(),
        }
    }

    /// Entry polynomials in a ring containing the block and `t`.
    pub fn polynomials(&self, ring: &RingRef, block: &Block, t: usize) -> Vec<Polynomial> {
        linear_images(&self.coeffs, ring, block, t)
    }

    /// `t`-exponent of each diagonal entry when the column is diagonal with
    /// monomial entries.
    fn diagonal_shifts(&self) -> Option<Vec<i64>> {
        self.coeffs.diagonal_exponents()
    }
}

/// How a block's coordinates are carried into the frame of `L_1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Column `C_k(T_j)·p`.
    #[default]
    Direct,
    /// Column `C_k(T_j^{-1})·p`, up to the scalar `det T_j^k`. Exchanges
    /// the roles of the two tropical hull orientations.
    Inverse,
}

/// `(Σ_T m[S][T]·p_T)_S` for a matrix over Q[t] acting on one block.
fn linear_images(m: &Matrix, ring: &RingRef, block: &Block, t: usize) -> Vec<Polynomial> {
    let tv = Polynomial::var(ring, t);
    (0..m.rows())
        .map(|s| {
            let mut acc = Polynomial::zero(ring);
            for (c, &v) in block.vars.iter().enumerate() {
                for (e, a) in m.get(s, c).terms() {
                    let e = u32::try_from(e).expect("coefficients are polynomials in t");
                    let term = (&tv.pow(e) * &Polynomial::var(ring, v)).scale(a);
                    acc = &acc + &term;
                }
            }
            acc
        })
        .collect()
}

/// Cleared columns for every vertex and level, indexed `[j][level]`.
pub fn columns(vertices: &[Vertex], flag: &FlagType, conv: Convention) -> Result<Vec<Vec<Column>>> {
    let v1 = &vertices[0];
    let mut out = Vec::with_capacity(vertices.len());
    for (j, v) in vertices.iter().enumerate() {
        let t = if j == 0 {
            Matrix::identity(v1.dim())
        } else {
            transition(v1, v)?
        };
        if t.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let t = match conv {
            Convention::Direct => t,
            Convention::Inverse => t.adjugate().transpose(),
        };
        out.push(
            flag.ranks()
                .iter()
                .enumerate()
                .map(|(l, &k)| Column::new(j + 1, l + 1, t.compound(k)))
                .collect(),
        );
    }
    Ok(out)
}

fn column_polys(
    cols: &[Vec<Column>],
    ring: &RingRef,
    blocks: &[Block],
    levels: usize,
) -> Vec<Vec<Vec<Polynomial>>> {
    let t = ring.param().expect("ring has t");
    cols.iter()
        .enumerate()
        .map(|(j, per)| {
            per.iter()
                .enumerate()
                .map(|(l, c)| c.polynomials(ring, &blocks[j * levels + l], t))
                .collect()
        })
        .collect()
}

/// All 2×2 minors of the cleared column matrices, level by level. The
/// vertex list need not be pairwise distinct.
pub fn cross_minor_generators(
    vertices: &[Vertex],
    flag: &FlagType,
    ring: &RingRef,
    blocks: &[Block],
    conv: Convention,
) -> Result<Vec<Polynomial>> {
    let cols = columns(vertices, flag, conv)?;
    let polys = column_polys(&cols, ring, blocks, flag.levels());
    let mut out: Vec<Polynomial> = Vec::new();
    for l in 0..flag.levels() {
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                let (x, y) = (&polys[a][l], &polys[b][l]);
                for s in 0..x.len() {
                    for u in s + 1..x.len() {
                        let m = &(&x[s] * &y[u]) - &(&x[u] * &y[s]);
                        if !m.is_zero() {
                            let m = m.monic();
                            if !out.contains(&m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A positive grading making every generator homogeneous, available when
/// all cleared columns are diagonal: `w(p) = K − shift(p)`, `w(t) = 1`.
fn apartment_grading(cols: &[Vec<Column>], ring: &RingRef, blocks: &[Block], levels: usize) -> Option<Vec<u32>> {
    let mut shifts = vec![0i64; ring.nvars()];
    for (j, per) in cols.iter().enumerate() {
        for (l, c) in per.iter().enumerate() {
            let s = c.diagonal_shifts()?;
            for (&v, e) in blocks[j * levels + l].vars.iter().zip(s) {
                shifts[v] = e;
            }
        }
    }
    let t = ring.param()?;
    let k = 1 + shifts.iter().copied().max().unwrap_or(0);
    Some(
        (0..ring.nvars())
            .map(|i| if i == t { 1 } else { (k - shifts[i]) as u32 })
            .collect(),
    )
}

/// Two lattices always share an apartment. The flat model of the diagonal
/// pair is pulled back along the block-wise linear change of coordinates
/// between the two frames. That change is invertible over Q[t]_(t), so the
/// result agrees with `I : t^∞` after localizing at `t` and has the same
/// special fiber.
fn flat_through_apartment(
    config: &Configuration,
    flag: &FlagType,
    conv: Convention,
    ring: &RingRef,
    blocks: &[Block],
) -> Result<Ideal> {
    let frame = common_apartment(config.vertex(0), config.vertex(1))?;
    let d = flag.dim();
    let diag = Configuration::from_diagonals(&[vec![0; d], frame.exponents.clone()])?;
    let inner = build_degeneration_with(&diag, flag, conv)?;
    let t = ring.param().expect("ring has t");
    let mut images: Vec<Polynomial> = (0..ring.nvars()).map(|v| Polynomial::var(ring, v)).collect();
    for b in blocks {
        let w = &frame.w[b.vertex - 1];
        let m = match conv {
            Convention::Direct => w.compound(b.k),
            Convention::Inverse => w.adjugate().transpose().compound(b.k),
        };
        for (&v, img) in b.vars.iter().zip(linear_images(&m, ring, b, t)) {
            images[v] = img;
        }
    }
    let gens = inner
        .flat_ideal()
        .generators()
        .iter()
        .map(|g| g.compose(ring, &images))
        .collect();
    Ideal::new(ring, gens)
}

/// `I : t^∞` for an ideal that is only multihomogeneous in the block
/// variables. Generators are homogenized in `t` with a new variable `h`, so
/// the saturation takes the graded path; setting `h = 1` afterwards gives
/// `I : t^∞` because dehomogenization commutes with saturating by `t`.
fn flat_by_homogenization(j0: &Ideal, t: usize) -> Result<Ideal> {
    let ring = j0.ring();
    let big = ring.extend(vec![Variable {
        name: ring.fresh_name("h"),
        tag: VarTag::Aux,
    }])?;
    let h = big.nvars() - 1;
    let prefix: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    let gens = j0
        .generators()
        .iter()
        .map(|f| {
            let e = f.degree_in(t);
            let terms = f
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut m2 = Monomial::one(big.nvars());
                    m2.0[..ring.nvars()].copy_from_slice(&m.0);
                    m2.0[h] = e - m.0[t];
                    (m2, c.clone())
                })
                .collect();
            Polynomial::from_terms(&big, terms)
        })
        .collect();
    let mut acc = Ideal::new(&big, gens)?;
    acc = saturate(&acc, &Polynomial::var(&big, t));
    let back: Vec<Option<usize>> = prefix.into_iter().chain([None]).collect();
    let one = Rational::one();
    let out = acc
        .generators()
        .iter()
        .map(|g| g.eval_var(h, &one).map_to(ring, &back))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, out)?.reduced())
}

/// The flat model over Q[t] near `t = 0` and its special fiber.
#[derive(Clone)]
pub struct Degeneration {
    config: Configuration,
    flag: FlagType,
    ring: RingRef,
    blocks: Vec<Block>,
    columns: Vec<Vec<Column>>,
    flat: Ideal,
    fiber_ring: RingRef,
    fiber_blocks: Vec<Block>,
    fiber: Ideal,
    convention: Convention,
    audit: Vec<String>,
}

impl fmt::Debug for Degeneration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Degeneration")
            .field("config", &self.config.to_string())
            .field("flag", &self.flag.to_string())
            .field("fiber", &self.fiber)
            .finish()
    }
}

/// Builds the degeneration of `F(V)` along `config`.
pub fn build_degeneration(config: &Configuration, flag: &FlagType) -> Result<Degeneration> {
    build_degeneration_with(config, flag, Convention::default())
}

pub fn build_degeneration_with(
    config: &Configuration,
    flag: &FlagType,
    conv: Convention,
) -> Result<Degeneration> {
    if config.dim() != flag.dim() {
        return Err(Error::DimensionMismatch(format!(
            "configuration in dimension {}, flag type in dimension {}",
            config.dim(),
            flag.dim()
        )));
    }
    let n = config.len();
    let d = flag.dim();
    let levels = flag.levels();
    let (ring, blocks) = block_ring(n, flag, true);
    let t = ring.param().unwrap();
    let mut audit = Vec::new();

    let cols = columns(config.vertices(), flag, conv)?;
    let mut gens = cross_minor_generators(config.vertices(), flag, &ring, &blocks, conv)?;
    audit.push(format!("{} cross minors", gens.len()));
    for j in 0..n {
        let per: Vec<&Block> = blocks[j * levels..(j + 1) * levels].iter().collect();
        let rel = flag_relations(&ring, &per, d);
        audit.push(format!("vertex {}: {} flag relations", j + 1, rel.len()));
        gens.extend(rel);
    }
    let j0 = Ideal::new(&ring, gens)?;
    let flat = match apartment_grading(&cols, &ring, &blocks, levels) {
        Some(w) => {
            audit.push("apartment grading attached".into());
            saturate(&j0.with_grading(w)?, &Polynomial::var(&ring, t)).reduced()
        }
        None if n == 2 => {
            audit.push("flat model through a common apartment".into());
            flat_through_apartment(config, flag, conv, &ring, &blocks)?
        }
        None => {
            debug!("no grading; homogenizing {} generators in t", j0.generators().len());
            audit.push("saturating through t-homogenization".into());
            flat_by_homogenization(&j0, t)?
        }
    };
    audit.push(format!("t-saturated: {} generators", flat.generators().len()));

    let (fiber_ring, fiber_blocks) = block_ring(n, flag, false);
    let zero = Rational::zero();
    let at_zero = specialize(&flat, t, &zero).map_by_name(&fiber_ring)?;
    let mut fiber = at_zero.reduced();
    for b in &fiber_blocks {
        fiber = saturate_by_variable_ideal(&fiber, &b.vars).reduced();
    }
    audit.push(format!("special fiber: {} generators", fiber.generators().len()));
    Ok(Degeneration {
        config: config.clone(),
        flag: flag.clone(),
        ring,
        blocks,
        columns: cols,
        flat,
        fiber_ring,
        fiber_blocks,
        fiber,
        convention: conv,
        audit,
    })
}

impl Degeneration {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn flag(&self) -> &FlagType {
        &self.flag
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Ring of the flat model: all blocks, then `t`.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn columns(&self) -> &[Vec<Column>] {
        &self.columns
    }

    pub fn flat_ideal(&self) -> &Ideal {
        &self.flat
    }

    /// Ring of the special fiber: all blocks, no `t`.
    pub fn fiber_ring(&self) -> &RingRef {
        &self.fiber_ring
    }

    pub fn fiber_blocks(&self) -> &[Block] {
        &self.fiber_blocks
    }

    pub fn fiber_ideal(&self) -> &Ideal {
        &self.fiber
    }

    /// Blocks of vertex `j` (1-based) in the fiber ring.
    pub fn vertex_blocks(&self, j: usize) -> &[Block] {
        let l = self.flag.levels();
        &self.fiber_blocks[(j - 1) * l..j * l]
    }

    pub fn audit(&self) -> &[String] {
        &self.audit
    }

    /// The flag ideal of vertex `j` in the fiber ring.
    pub fn vertex_flag_ideal(&self, j: usize) -> Ideal {
        let refs: Vec<&Block> = self.vertex_blocks(j).iter().collect();
        flag_ideal(&self.fiber_ring, &refs, self.flag.dim())
    }

    /// The point of vertex `j`'s blocks whose column at `t = c` is
    /// proportional to `q`, one vector per level.
    pub fn transport(&self, j: usize, q: &FlagPoint, c: &Rational) -> Option<FlagPoint> {
        self.columns[j - 1]
            .iter()
            .zip(q)
            .map(|(col, ql)| solve(&col.coeffs.eval(c), ql))
            .collect()
    }
}

/// Outcome of the generic-fiber test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheck {
    pub passed: bool,
    pub parameter: Rational,
    pub witness: Option<String>,
}

/// Proportionality of a block to a fixed vector: all `p_S x_T − p_T x_S`.
pub fn proportionality(ring: &RingRef, block: &Block, x: &[Rational]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for s in 0..x.len() {
        for u in s + 1..x.len() {
            let f = &Polynomial::var(ring, block.vars[s]).scale(&x[u])
                - &Polynomial::var(ring, block.vars[u]).scale(&x[s]);
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    out
}

/// Checks that at a random `t = c ≠ 0` the flat model is the twisted
/// diagonal: fixing block 1 at a random flag point forces every other
/// block to the transported point, and the result is nonempty.
pub fn generic_fiber_check(deg: &Degeneration, seed: u64) -> Result<FiberCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_flag_point(&deg.flag, rng.gen())?;
    let n = deg.config.len();
    let (c, points) = loop {
        let c = Rational::from_int(rng.gen_range(2..=100));
        let pts: Option<Vec<FlagPoint>> = (1..=n).map(|j| deg.transport(j, &q, &c)).collect();
        if let Some(p) = pts {
            break (c, p);
        }
    };
    let t = deg.ring.param().unwrap();
    let fr = &deg.fiber_ring;
    let mut ideal = specialize(&deg.flat, t, &c).map_by_name(fr)?;
    let mut extra = Vec::new();
    for (b, x) in deg.vertex_blocks(1).iter().zip(&q) {
        extra.extend(proportionality(fr, b, x));
    }
    ideal = ideal.with_generators(&extra)?;
    for b in &deg.fiber_blocks {
        ideal = saturate_by_variable_ideal(&ideal, &b.vars);
    }
    if ideal.is_unit() {
        return Ok(FiberCheck {
            passed: false,
            parameter: c,
            witness: Some("the fiber over the sampled point is empty".into()),
        });
    }
    for j in 1..=n {
        for (b, x) in deg.vertex_blocks(j).iter().zip(&points[j - 1]) {
            for f in proportionality(fr, b, x) {
                if !ideal.contains(&f) {
                    return Ok(FiberCheck {
                        passed: false,
                        parameter: c,
                        witness: Some(format!("vertex {j}, level {}: {f} not forced", b.level)),
                    });
                }
            }
        }
    }
    Ok(FiberCheck {
        passed: true,
        parameter: c,
        witness: None,
    })
}
