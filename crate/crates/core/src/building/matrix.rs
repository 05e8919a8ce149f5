//! Dense matrices over Q[t, t⁻¹] with minors, compounds and adjugates.

use std::collections::HashMap;
use std::fmt;

use super::laurent::Laurent;
use crate::algebra::Rational;
use crate::error::{Error, ParseError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Laurent>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &i| m | (1 << i))
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Laurent>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_rational_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Laurent::constant).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Matrix::diag_t(&vec![0; n])
    }

    /// `diag(t^{a_1}, …, t^{a_n})`.
    pub fn diag_t(exps: &[i64]) -> Self {
        let n = exps.len();
        let mut data = vec![Laurent::zero(); n * n];
        for (i, &a) in exps.iter().enumerate() {
            data[i * n + i] = Laurent::t_pow(a);
        }
        Matrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Laurent] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Laurent::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(k, j));
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Laurent) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Every square minor, keyed by (row mask, column mask). Built bottom-up
    /// by Laplace expansion along the first row of each subset.
    pub fn all_minors(&self) -> HashMap<(u64, u64), Laurent> {
        assert!(self.rows <= 63 && self.cols <= 63);
        let kmax = self.rows.min(self.cols);
        let mut table: HashMap<(u64, u64), Laurent> = HashMap::new();
        table.insert((0, 0), Laurent::one());
        for k in 1..=kmax {
            for rs in subsets(self.rows, k) {
                let rest = mask(&rs[1..]);
                let r0 = rs[0];
                for cs in subsets(self.cols, k) {
                    let mut acc = Laurent::zero();
                    for (pos, &c) in cs.iter().enumerate() {
                        let a = self.get(r0, c);
                        if a.is_zero() {
                            continue;
                        }
                        let sub = &table[&(rest, mask(&cs) & !(1 << c))];
                        if sub.is_zero() {
                            continue;
                        }
                        let term = a * sub;
                        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    table.insert((mask(&rs), mask(&cs)), acc);
                }
            }
        }
        table
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Laurent {
        let sub = Matrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
        .expect("rectangular");
        sub.det()
    }

    pub fn det(&self) -> Laurent {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let full = (1u64 << self.rows) - 1;
        self.all_minors().remove(&(full, full)).unwrap()
    }

    /// The `k`-th compound: minors on lexicographically ordered row and
    /// column subsets.
    pub fn compound(&self, k: usize) -> Matrix {
        assert!(k >= 1 && k <= self.rows.min(self.cols));
        let minors = self.all_minors();
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        let mut data = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                data.push(minors[&(mask(r), mask(c))].clone());
            }
        }
        Matrix {
            rows: rs.len(),
            cols: cs.len(),
            data,
        }
    }

    /// `adj(M)` with `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        let minors = self.all_minors();
        let full = (1u64 << n) - 1;
        let mut out = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let m = &minors[&(full & !(1 << j), full & !(1 << i))];
                out.set(i, j, if (i + j) % 2 == 0 { m.clone() } else { -m });
            }
        }
        out
    }

    /// Entries evaluated at `t = c`.
    pub fn eval(&self, c: &Rational) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(c)).collect())
            .collect()
    }

    /// Diagonal with monomial entries: returns the exponents.
    pub fn diagonal_exponents(&self) -> Option<Vec<i64>> {
        if !self.is_square() {
            return None;
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
            out.push(self.get(i, i).as_monomial()?.1);
        }
        Some(out)
    }

    /// Parses `[[a, b], [c, d]]` with entries in the polynomial syntax over `t`.
    pub fn parse(text: &str) -> Result<Matrix, ParseError> {
        let s = text.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(0, "matrix must be enclosed in [ ]"))?;
        let mut rows = Vec::new();
        let mut rest = inner.trim();
        let mut offset = s.len() - s.trim_start_matches('[').len();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| ParseError::new(offset, "expected `[` opening a row"))?;
            let end = body
                .find(']')
                .ok_or_else(|| ParseError::new(offset, "unterminated row"))?;
            let mut row = Vec::new();
            for cell in body[..end].split(',') {
                row.push(
                    Laurent::parse(cell)
                        .map_err(|e| ParseError::new(offset + 1 + e.position, e.message))?,
                );
            }
            rows.push(row);
            let after = body[end + 1..].trim_start();
            offset += rest.len() - after.len();
            rest = after
                .strip_prefix(',')
                .map(|x| x.trim_start())
                .unwrap_or(after);
            if !after.is_empty() && !after.starts_with(',') {
                return Err(ParseError::new(offset, "expected `,` between rows"));
            }
        }
        Matrix::from_rows(rows).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        Matrix::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let a = m("[[1, 0], [0, t]]");
        assert_eq!(a, Matrix::diag_t(&[0, 1]));
        assert_eq!(a.to_string(), "[[1,0],[0,t]]");
        assert_eq!(m(&a.to_string()), a);
        assert!(Matrix::parse("[[1,0],[0]]").is_err());
        assert!(Matrix::parse("[[1,q]]").is_err());
    }

    #[test]
    fn det_and_adjugate() {
        let a = m("[[1, 1], [1, 1 + t]]");
        assert_eq!(a.det().to_string(), "t");
        let prod = a.mul(&a.adjugate()).unwrap();
        assert_eq!(prod, Matrix::identity(2).scale(&a.det()));
        let b = m("[[2, t, 0], [1, 0, t^-1], [0, 3, 1]]");
        assert_eq!(b.mul(&b.adjugate()).unwrap(), Matrix::identity(3).scale(&b.det()));
    }

    #[test]
    fn compounds() {
        let a = Matrix::diag_t(&[0, 0, 1]);
        assert_eq!(a.compound(1), a);
        assert_eq!(a.compound(2), Matrix::diag_t(&[0, 1, 1]));
        assert_eq!(a.compound(3), Matrix::diag_t(&[1]));
        let b = m("[[1, 2, t], [0, 1, 1], [t, 0, 1]]");
        let c = m("[[1, 0, 1], [t, 1, 0], [2, 0, t]]");
        let bc = b.mul(&c).unwrap();
        for k in 1..=3 {
            assert_eq!(bc.compound(k), b.compound(k).mul(&c.compound(k)).unwrap());
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = subsets(4, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[5], vec![2, 3]);
    }
}
