//! Irreducible components of the special fiber and their labels.
//!
//! A component is primary for a vertex when its projection to that
//! vertex's flag variety is birational, secondary when it is the image of a
//! primary component after adding a vertex to the configuration, and mixed
//! when its projections to two sub-flag types land on components labeled by
//! different vertices.

pub mod checks;
pub mod primes;

pub use checks::{
    count_bounds, dual_graph, general_position_experiment, structural_checks, ExperimentRow,
    StructuralReport,
};
pub use primes::{certify_prime, invariant_factors, minimal_primes, saturate_blocks, PrimeCandidate};

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use log::{debug, info};
use serde::Serialize;

use crate::algebra::linalg::nullspace;
use crate::algebra::{dimension, eliminate, ideal_equal_radical, intersect, Ideal, Polynomial, Rational};
use crate::building::{secondary_candidates, vertex_equal, Configuration, Vertex};
use crate::degeneration::{
    build_degeneration_with, proportionality, random_flag_point, Block, Convention, Degeneration,
    FlagType,
};
use crate::error::{Error, Result};

/// Knobs for the randomized and search parts of classification.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub radius: i64,
    pub max_candidates: usize,
    pub convention: Convention,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            radius: 1,
            max_candidates: 12,
            convention: Convention::default(),
        }
    }
}

/// The fiber of a degeneration split into validated minimal primes.
#[derive(Clone, Debug)]
pub struct Decomposed {
    pub deg: Degeneration,
    pub primes: Vec<PrimeCandidate>,
    /// Intersection of the primes.
    pub intersection: Ideal,
}

impl Decomposed {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn ideal(&self, i: usize) -> &Ideal {
        &self.primes[i].ideal
    }

    /// Projective dimension of component `i`.
    pub fn dimension(&self, i: usize) -> i64 {
        dimension(self.ideal(i)) - self.deg.fiber_blocks().len() as i64
    }
}

pub fn block_vars(blocks: &[Block]) -> Vec<Vec<usize>> {
    blocks.iter().map(|b| b.vars.clone()).collect()
}

/// Minimal primes of the special fiber, validated by comparing radicals.
pub fn decompose(deg: &Degeneration) -> Result<Decomposed> {
    let blocks = block_vars(deg.fiber_blocks());
    let primes = minimal_primes(deg.fiber_ideal(), &blocks)?;
    let fiber = deg.fiber_ideal();
    if let Some(p) = primes.iter().find(|p| !fiber.is_subset_of(&p.ideal)) {
        return Err(Error::Validation(format!(
            "component {:?} does not contain the fiber",
            p.ideal.to_strings()
        )));
    }
    let mut acc = primes[0].ideal.clone();
    for p in &primes[1..] {
        acc = intersect(&acc, &p.ideal)?;
    }
    if !ideal_equal_radical(&acc, fiber) {
        return Err(Error::Validation(
            "the intersection of the components differs from the radical of the fiber".into(),
        ));
    }
    info!("{} components, {} certified", primes.len(), primes.iter().filter(|p| p.certified).count());
    Ok(Decomposed {
        deg: deg.clone(),
        primes,
        intersection: acc,
    })
}

/// Outcome of fixing some blocks and solving for the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberPoint {
    Empty,
    /// One vector per block, in block order.
    Point(Vec<Vec<Rational>>),
    Other,
}

/// Fixes block `i` proportional to `x` for each `(i, x)` in `fixed` and
/// checks whether a unique point of the multiprojective variety remains.
pub fn forced_point(ideal: &Ideal, blocks: &[Block], fixed: &[(usize, &[Rational])]) -> FiberPoint {
    let ring = ideal.ring();
    let mut gens: Vec<Polynomial> = ideal.gb().to_vec();
    for (i, x) in fixed {
        gens.extend(proportionality(ring, &blocks[*i], x));
    }
    let base = Ideal::new(ring, gens).expect("same ring");
    let sat = saturate_blocks(&base, &block_vars(blocks));
    if sat.is_unit() {
        return FiberPoint::Empty;
    }
    let gb = sat.gb();
    let mut point = Vec::with_capacity(blocks.len());
    for b in blocks {
        let rows: Vec<Vec<Rational>> = gb
            .iter()
            .filter(|g| g.total_degree() == 1 && g.support().iter().all(|v| b.vars.contains(v)))
            .map(|g| {
                b.vars
                    .iter()
                    .map(|&v| {
                        let m = Polynomial::var(ring, v);
                        let lm = &m.terms()[0].0;
                        g.terms()
                            .iter()
                            .find(|(mm, _)| mm == lm)
                            .map_or_else(Rational::zero, |(_, c)| c.clone())
                    })
                    .collect()
            })
            .collect();
        let ker = nullspace(&rows, b.vars.len());
        if ker.len() != 1 {
            return FiberPoint::Other;
        }
        point.push(ker.into_iter().next().unwrap());
    }
    FiberPoint::Point(point)
}

/// Seeds for the three randomized repetitions.
fn trial_seeds(seed: u64, salt: u64) -> [u64; 3] {
    let base = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt;
    [base, base.wrapping_add(1), base.wrapping_add(2)]
}

/// Outcome of a 3-trial randomized test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vote {
    pub passed: u8,
    pub trials: u8,
}

impl Vote {
    pub fn verdict(&self) -> bool {
        2 * self.passed > self.trials
    }

    pub fn unanimous(&self) -> bool {
        self.passed == 0 || self.passed == self.trials
    }
}

/// Primary test for vertex `j` (1-based): the projection to vertex `j`'s
/// blocks is onto its flag variety and a random fiber is a single point.
/// `None` when the projection is not dominant.
pub fn primary_vote(deg: &Degeneration, c: &Ideal, j: usize, seed: u64) -> Result<Option<Vote>> {
    let levels = deg.flag().levels();
    let others: Vec<usize> = deg
        .fiber_blocks()
        .iter()
        .filter(|b| b.vertex != j)
        .flat_map(|b| b.vars.iter().copied())
        .collect();
    if !eliminate(c, &others).equals(&deg.vertex_flag_ideal(j)) {
        return Ok(None);
    }
    let mut passed = 0;
    for s in trial_seeds(seed, j as u64) {
        let q = random_flag_point(deg.flag(), s)?;
        let fixed: Vec<(usize, &[Rational])> = q
            .iter()
            .enumerate()
            .map(|(l, x)| ((j - 1) * levels + l, x.as_slice()))
            .collect();
        if matches!(forced_point(c, deg.fiber_blocks(), &fixed), FiberPoint::Point(_)) {
            passed += 1;
        }
    }
    Ok(Some(Vote { passed, trials: 3 }))
}

pub fn is_primary_for(deg: &Degeneration, c: &Ideal, j: usize, seed: u64) -> Result<bool> {
    Ok(primary_vote(deg, c, j, seed)?.is_some_and(|v| v.verdict()))
}

/// Component `c` of a degeneration on `Γ′` pushed to the vertices
/// `0..keep` of `Γ′`, expressed in the fiber ring of `target`.
fn push_to_prefix(source: &Degeneration, c: &Ideal, keep: usize, target: &Degeneration) -> Result<Ideal> {
    let drop: Vec<usize> = source
        .fiber_blocks()
        .iter()
        .filter(|b| b.vertex > keep)
        .flat_map(|b| b.vars.iter().copied())
        .collect();
    eliminate(c, &drop).map_by_name(target.fiber_ring())
}

/// Matching of a component of a larger configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMatch {
    pub component: usize,
    pub birational: Vote,
}

/// Pushes component `c` of `larger` (whose first vertices are those of
/// `target`) down to `target` and looks for the component it lands on.
/// Birationality is tested at points of `c` sampled through vertex
/// `sample_vertex`, for which `c` must be primary.
pub fn match_under_vertex_projection(
    larger: &Decomposed,
    c: usize,
    target: &Decomposed,
    sample_vertex: usize,
    seed: u64,
) -> Result<Option<VertexMatch>> {
    let n = target.deg.config().len();
    let image = push_to_prefix(&larger.deg, larger.ideal(c), n, &target.deg)?;
    let Some(component) = (0..target.len()).find(|&i| target.ideal(i).equals(&image)) else {
        return Ok(None);
    };
    let birational = birational_vote(&larger.deg, larger.ideal(c), sample_vertex, n, seed)?;
    Ok(Some(VertexMatch {
        component,
        birational,
    }))
}

/// Samples points of `c` through vertex `via` and checks that fixing the
/// blocks of vertices `1..=keep` at the sample forces the rest.
fn birational_vote(deg: &Degeneration, c: &Ideal, via: usize, keep: usize, seed: u64) -> Result<Vote> {
    let levels = deg.flag().levels();
    let blocks = deg.fiber_blocks();
    let mut passed = 0;
    for s in trial_seeds(seed, 0xB1 + via as u64) {
        let q = random_flag_point(deg.flag(), s)?;
        let fixed: Vec<(usize, &[Rational])> = q
            .iter()
            .enumerate()
            .map(|(l, x)| ((via - 1) * levels + l, x.as_slice()))
            .collect();
        let FiberPoint::Point(p) = forced_point(c, blocks, &fixed) else {
            continue;
        };
        let fixed: Vec<(usize, &[Rational])> = (0..keep * levels).map(|i| (i, p[i].as_slice())).collect();
        if matches!(forced_point(c, blocks, &fixed), FiberPoint::Point(_)) {
            passed += 1;
        }
    }
    Ok(Vote { passed, trials: 3 })
}

/// One sub-flag projection of a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub flag: String,
    /// Index of the component hit in the sub-flag decomposition.
    pub component: usize,
    pub vertex: String,
    pub label: String,
}

/// Component label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    Primary { vertex: usize },
    Secondary { vertex: String, name: String },
    Mixed { first: Projection, second: Projection },
    TertiaryUnresolved,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Primary { vertex } => write!(f, "primary(L{vertex})"),
            Label::Secondary { vertex, name } => write!(f, "secondary({name}={vertex})"),
            Label::Mixed { first, second } => write!(
                f,
                "mixed({}:{}, {}:{})",
                first.flag, first.vertex, second.flag, second.vertex
            ),
            Label::TertiaryUnresolved => write!(f, "tertiary(unresolved)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Certified,
    Heuristic,
}

/// Classification of one component.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub generators: Vec<String>,
    pub dimension: i64,
    pub label: Label,
    pub evidence: Vec<String>,
    pub confidence: Confidence,
    /// The vertex the label points at, if any.
    #[serde(skip)]
    pub vertex: Option<Vertex>,
}

/// Labeled decomposition of a special fiber.
#[derive(Clone, Debug)]
pub struct Classification {
    pub decomposed: Decomposed,
    pub components: Vec<ComponentReport>,
    /// Distinct secondary vertices in naming order.
    pub secondaries: Vec<Vertex>,
    /// Classified sub-flag degenerations keyed by 0-based level lists.
    pub subflags: HashMap<Vec<usize>, Rc<Classification>>,
}

impl Classification {
    pub fn count(&self, pred: impl Fn(&Label) -> bool) -> usize {
        self.components.iter().filter(|c| pred(&c.label)).count()
    }

    pub fn primaries(&self) -> usize {
        self.count(|l| matches!(l, Label::Primary { .. }))
    }

    pub fn secondary_count(&self) -> usize {
        self.count(|l| matches!(l, Label::Secondary { .. }))
    }

    pub fn mixed(&self) -> usize {
        self.count(|l| matches!(l, Label::Mixed { .. }))
    }

    pub fn unresolved(&self) -> usize {
        self.count(|l| matches!(l, Label::TertiaryUnresolved))
    }

    /// One-line count summary such as `8 components: 3 primary, ...`.
    pub fn summary(&self) -> String {
        let names: Vec<String> = (0..self.secondaries.len())
            .map(|k| format!("L{}", self.decomposed.deg.config().len() + k + 1))
            .collect();
        let sec = if names.is_empty() {
            "0 secondary".to_string()
        } else {
            format!("{} secondary({})", self.secondary_count(), names.join(","))
        };
        let mut s = format!(
            "{} components: {} primary, {sec}, {} mixed",
            self.components.len(),
            self.primaries(),
            self.mixed()
        );
        if self.unresolved() > 0 {
            s.push_str(&format!(", {} unresolved", self.unresolved()));
        }
        s
    }
}

/// An extension of the configuration by one candidate vertex, reduced to
/// the image of its new primary component.
struct Extension {
    vertex: Vertex,
    larger: Decomposed,
    primary: Option<usize>,
}

/// Caches shared by the classification of one fiber.
struct Classifier<'a> {
    dec: &'a Decomposed,
    opts: &'a Options,
    extensions: Option<Vec<Rc<Extension>>>,
    subflags: HashMap<Vec<usize>, Rc<Classification>>,
}

impl<'a> Classifier<'a> {
    fn deg(&self) -> &Degeneration {
        &self.dec.deg
    }

    fn extensions(&mut self) -> Result<Vec<Rc<Extension>>> {
        if let Some(e) = &self.extensions {
            return Ok(e.clone());
        }
        let config = self.deg().config();
        let n = config.len();
        let mut cands = secondary_candidates(config, self.opts.radius)?;
        cands.truncate(self.opts.max_candidates);
        let mut out = Vec::with_capacity(cands.len());
        for v in cands {
            let larger_config = config.with_vertex(v.clone())?;
            let deg = build_degeneration_with(&larger_config, self.deg().flag(), self.opts.convention)?;
            let larger = decompose(&deg)?;
            let mut primary = None;
            for i in 0..larger.len() {
                if is_primary_for(&larger.deg, larger.ideal(i), n + 1, self.opts.seed)? {
                    if primary.is_some() {
                        return Err(Error::Classification(format!(
                            "two components primary for the added vertex {v}"
                        )));
                    }
                    primary = Some(i);
                }
            }
            debug!("candidate {v}: primary component {primary:?}");
            out.push(Rc::new(Extension {
                vertex: v,
                larger,
                primary,
            }));
        }
        self.extensions = Some(out.clone());
        Ok(out)
    }

    fn subflag(&mut self, levels: &[usize]) -> Result<Rc<Classification>> {
        if let Some(c) = self.subflags.get(levels) {
            return Ok(c.clone());
        }
        let sub = self.deg().flag().sub(levels)?;
        let deg = build_degeneration_with(self.deg().config(), &sub, self.opts.convention)?;
        let dec = decompose(&deg)?;
        let cls = Rc::new(classify_decomposed(dec, self.opts)?);
        self.subflags.insert(levels.to_vec(), cls.clone());
        Ok(cls)
    }

    /// Secondary vertices whose new primary component lands on `c`.
    fn secondary_hits(&mut self, c: usize, evidence: &mut Vec<String>) -> Result<Vec<Vertex>> {
        let n = self.deg().config().len();
        let mut hits = Vec::new();
        for ext in self.extensions()? {
            let Some(p) = ext.primary else { continue };
            let m = match_under_vertex_projection(&ext.larger, p, self.dec, n + 1, self.opts.seed)?;
            if let Some(m) = m.filter(|m| m.component == c) {
                evidence.push(format!(
                    "primary component of Γ ∪ {{{}}} maps onto it, birational {}/{}",
                    ext.vertex, m.birational.passed, m.birational.trials
                ));
                if !m.birational.unanimous() {
                    evidence.push("birationality trials disagree".into());
                }
                if m.birational.verdict() {
                    hits.push(ext.vertex.clone());
                }
            }
        }
        Ok(hits)
    }

    /// The sub-flag component `c` maps onto, with its vertex.
    fn project(&mut self, c: usize, levels: &[usize]) -> Result<Option<(Projection, Vertex)>> {
        let sub = self.subflag(levels)?;
        let image = project_to_subflag(self.deg(), self.dec.ideal(c), levels, &sub.decomposed.deg)?;
        let Some(i) = (0..sub.decomposed.len()).find(|&i| sub.decomposed.ideal(i).equals(&image)) else {
            return Ok(None);
        };
        let report = &sub.components[i];
        Ok(report.vertex.clone().map(|v| {
            (
                Projection {
                    flag: sub.decomposed.deg.flag().to_string(),
                    component: i,
                    vertex: vertex_text(&v),
                    label: report.label.to_string(),
                },
                v,
            )
        }))
    }
}

fn vertex_text(v: &Vertex) -> String {
    match v.apartment() {
        Some(a) => a.to_string(),
        None => v.basis().to_string(),
    }
}

/// Image of a component under forgetting the levels outside `levels`,
/// written in the fiber ring of the sub-flag degeneration `target`.
pub fn project_to_subflag(deg: &Degeneration, c: &Ideal, levels: &[usize], target: &Degeneration) -> Result<Ideal> {
    let dropped: Vec<usize> = deg
        .fiber_blocks()
        .iter()
        .filter(|b| !levels.contains(&(b.level - 1)))
        .flat_map(|b| b.vars.iter().copied())
        .collect();
    let image = eliminate(c, &dropped);
    let mut map = vec![None; deg.fiber_ring().nvars()];
    for b in deg.fiber_blocks() {
        let Some(pos) = levels.iter().position(|&l| l == b.level - 1) else {
            continue;
        };
        let tb = target
            .fiber_blocks()
            .iter()
            .find(|t| t.vertex == b.vertex && t.level == pos + 1)
            .ok_or_else(|| Error::DimensionMismatch("sub-flag blocks do not line up".into()))?;
        for (&v, &w) in b.vars.iter().zip(&tb.vars) {
            map[v] = Some(w);
        }
    }
    let gens = image
        .generators()
        .iter()
        .map(|g| g.map_to(target.fiber_ring(), &map))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(target.fiber_ring(), gens)
}

/// Labels every component of a decomposed fiber.
pub fn classify_decomposed(dec: Decomposed, opts: &Options) -> Result<Classification> {
    let deg = dec.deg.clone();
    let n = deg.config().len();
    let mut cl = Classifier {
        dec: &dec,
        opts,
        extensions: None,
        subflags: HashMap::new(),
    };
    let mut reports = Vec::with_capacity(dec.len());
    let mut secondaries: Vec<Vertex> = Vec::new();
    for c in 0..dec.len() {
        let mut evidence = Vec::new();
        let mut label = None;
        let mut vertex = None;
        for j in 1..=n {
            if let Some(v) = primary_vote(&deg, dec.ideal(c), j, opts.seed)? {
                evidence.push(format!(
                    "projection onto the flag variety of L{j} is dominant, fiber trials {}/{}",
                    v.passed, v.trials
                ));
                if !v.unanimous() {
                    evidence.push("fiber trials disagree".into());
                }
                if v.verdict() {
                    if label.is_some() {
                        return Err(Error::Classification(format!("component {c} is primary for two vertices")));
                    }
                    label = Some(Label::Primary { vertex: j });
                    vertex = Some(deg.config().vertex(j - 1).clone());
                }
            }
        }
        if label.is_none() && n > 1 {
            let hits = cl.secondary_hits(c, &mut evidence)?;
            if let Some(first) = hits.first() {
                if hits.iter().any(|h| !vertex_equal(h, first)) {
                    return Err(Error::Classification(format!(
                        "component {c} is secondary for two different vertices"
                    )));
                }
                let k = match secondaries.iter().position(|s| vertex_equal(s, first)) {
                    Some(k) => k,
                    None => {
                        secondaries.push(first.clone());
                        secondaries.len() - 1
                    }
                };
                label = Some(Label::Secondary {
                    vertex: vertex_text(first),
                    name: format!("L{}", n + k + 1),
                });
                vertex = Some(first.clone());
            }
        }
        if label.is_none() {
            label = mixed_label(&mut cl, c, &mut evidence)?;
        }
        let label = label.unwrap_or(Label::TertiaryUnresolved);
        let p = &dec.primes[c];
        reports.push(ComponentReport {
            generators: p.ideal.to_strings(),
            dimension: dec.dimension(c),
            label,
            evidence,
            confidence: if p.certified {
                Confidence::Certified
            } else {
                Confidence::Heuristic
            },
            vertex,
        });
    }
    let subflags = std::mem::take(&mut cl.subflags);
    drop(cl);
    let mut seen = Vec::new();
    for r in &reports {
        if let Label::Primary { vertex } = r.label {
            if seen.contains(&vertex) {
                return Err(Error::Classification(format!("two components primary for L{vertex}")));
            }
            seen.push(vertex);
        }
    }
    Ok(Classification {
        decomposed: dec,
        components: reports,
        secondaries,
        subflags,
    })
}

/// Singleton sub-flags first, then pairs when there are more than two
/// levels; the first two projections with different vertices win.
fn mixed_label(cl: &mut Classifier<'_>, c: usize, evidence: &mut Vec<String>) -> Result<Option<Label>> {
    let r = cl.deg().flag().levels();
    if r < 2 {
        return Ok(None);
    }
    let mut subs: Vec<Vec<usize>> = (0..r).map(|l| vec![l]).collect();
    if r > 2 {
        subs.extend(cl.deg().flag().proper_sublevels().into_iter().filter(|s| s.len() == 2));
    }
    let mut seen: Vec<(Projection, Vertex)> = Vec::new();
    for levels in subs {
        match cl.project(c, &levels)? {
            None => evidence.push(format!(
                "projection to {} is not onto a labeled component",
                cl.deg().flag().sub(&levels)?
            )),
            Some((proj, v)) => {
                evidence.push(format!("projection to {} lands on {}", proj.flag, proj.label));
                if let Some((first, _)) = seen.iter().find(|(_, w)| !vertex_equal(w, &v)) {
                    return Ok(Some(Label::Mixed {
                        first: first.clone(),
                        second: proj,
                    }));
                }
                seen.push((proj, v));
            }
        }
    }
    Ok(None)
}

/// Builds, decomposes and classifies in one go.
pub fn classify(config: &Configuration, flag: &FlagType, opts: &Options) -> Result<Classification> {
    let deg = build_degeneration_with(config, flag, opts.convention)?;
    classify_decomposed(decompose(&deg)?, opts)
}

/// The labeled sub-flag component that component `c` maps onto, if its
/// image is a component at all.
pub fn flag_project_component(
    cls: &Classification,
    c: usize,
    levels: &[usize],
    opts: &Options,
) -> Result<Option<Projection>> {
    let mut cl = Classifier {
        dec: &cls.decomposed,
        opts,
        extensions: None,
        subflags: cls.subflags.clone(),
    };
    Ok(cl.project(c, levels)?.map(|(p, _)| p))
}
