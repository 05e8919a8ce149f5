use std::cmp::Ordering;

use super::ring::Monomial;

/// A monomial order on a ring with `n` variables.
///
/// `ranking`, when present, lists every variable index from largest to
/// smallest; otherwise ring order is used. Weighted degrevlex requires
/// strictly positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex {
        weights: Option<Vec<u32>>,
        ranking: Option<Vec<usize>>,
    },
    Lex {
        ranking: Option<Vec<usize>>,
    },
    /// Any monomial with positive total degree in `front` beats every
    /// monomial free of `front`; ties go to `inner`.
    Elimination {
        front: Vec<usize>,
        inner: Box<MonomialOrder>,
    },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder::DegRevLex {
            weights: None,
            ranking: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder::Lex { ranking: None }
    }

    /// Degrevlex (optionally weighted) with variable `last` ranked smallest
    /// and every other variable in ring order.
    pub fn degrevlex_last(n: usize, last: usize, weights: Option<Vec<u32>>) -> Self {
        let mut ranking: Vec<usize> = (0..n).filter(|&i| i != last).collect();
        ranking.push(last);
        MonomialOrder::DegRevLex {
            weights,
            ranking: Some(ranking),
        }
    }

    pub fn elimination(front: Vec<usize>, inner: MonomialOrder) -> Self {
        let mut front = front;
        front.sort_unstable();
        front.dedup();
        MonomialOrder::Elimination {
            front,
            inner: Box::new(inner),
        }
    }

    pub fn compile(&self, n: usize) -> CompiledOrder {
        match self {
            MonomialOrder::DegRevLex { weights, ranking } => {
                let row = match weights {
                    Some(w) => {
                        assert_eq!(w.len(), n, "weight vector length");
                        assert!(w.iter().all(|&x| x > 0), "weights must be positive");
                        w.iter().map(|&x| x as i64).collect()
                    }
                    None => vec![1; n],
                };
                CompiledOrder {
                    rows: vec![row],
                    tie: Tie::RevLex,
                    perm: ranking.clone().unwrap_or_else(|| (0..n).collect()),
                }
            }
            MonomialOrder::Lex { ranking } => CompiledOrder {
                rows: vec![],
                tie: Tie::Lex,
                perm: ranking.clone().unwrap_or_else(|| (0..n).collect()),
            },
            MonomialOrder::Elimination { front, inner } => {
                let mut c = inner.compile(n);
                let mut row = vec![0i64; n];
                for &i in front {
                    row[i] = 1;
                }
                c.rows.insert(0, row);
                c
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compile(a.len()).cmp_exps(&a.0, &b.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tie {
    Lex,
    RevLex,
}

/// Weight-matrix form of a [`MonomialOrder`]: compare weight rows in turn,
/// then break ties lexicographically (or reverse-lexicographically) along
/// `perm`.
#[derive(Clone, Debug)]
pub struct CompiledOrder {
    pub(crate) rows: Vec<Vec<i64>>,
    pub(crate) tie: Tie,
    pub(crate) perm: Vec<usize>,
}

impl CompiledOrder {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn keys(&self, e: &[u16]) -> smallvec::SmallVec<[i64; 2]> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(e).map(|(w, &x)| w * x as i64).sum())
            .collect()
    }

    /// Tie-break only; callers compare keys first.
    #[inline]
    pub fn tie_cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self.tie {
            Tie::Lex => {
                for &i in &self.perm {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            Tie::RevLex => {
                for &i in self.perm.iter().rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn cmp_exps(&self, a: &[u16], b: &[u16]) -> Ordering {
        let ka = self.keys(a);
        let kb = self.keys(b);
        ka.cmp(&kb).then_with(|| self.tie_cmp(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_slice(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::degrevlex();
        // x^2 > xy > y^2 > xz > yz > z^2 in degree 2
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in seq.windows(2) {
            assert_eq!(o.compare(&m(&w[0]), &m(&w[1])), Ordering::Greater);
        }
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::lex();
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn elimination_ranks_front_first() {
        let o = MonomialOrder::elimination(vec![1], MonomialOrder::degrevlex());
        assert_eq!(o.compare(&m(&[0, 1, 0]), &m(&[9, 0, 9])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_last_moves_variable() {
        let o = MonomialOrder::degrevlex_last(3, 0, None);
        // with x ranked last: y*z > x*y
        assert_eq!(o.compare(&m(&[0, 1, 1]), &m(&[1, 1, 0])), Ordering::Greater);
    }
}
