//! A common apartment for two lattices.

use super::{transition, Laurent, Matrix, Vertex};
use crate::error::{Error, Result};

/// Two lattices written in one apartment: in the basis `B_1·U`, the first
/// lattice is standard and the second is `diag(t^e)`. `w[j]` relates the
/// given basis of lattice `j` to the apartment basis, `B_j ∝ B'_j·w[j]`,
/// and is invertible over Q[t]_(t).
#[derive(Clone, Debug)]
pub struct CommonFrame {
    pub exponents: Vec<i64>,
    pub w: [Matrix; 2],
}

/// Diagonalizes the transition matrix by unimodular row and column
/// operations over Q[t].
pub fn common_apartment(v1: &Vertex, v2: &Vertex) -> Result<CommonFrame> {
    let mut a = transition(v1, v2)?;
    let d = a.rows();
    let low = a.entries().iter().filter_map(Laurent::valuation).min().ok_or(Error::SingularMatrix)?;
    a = a.scale(&Laurent::t_pow(-low));
    let mut p = Matrix::identity(d);
    let mut q = Matrix::identity(d);
    for k in 0..d {
        loop {
            let pivot = (k..d)
                .flat_map(|i| (k..d).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by_key(|&(i, j)| a.get(i, j).degree().unwrap());
            let Some((pi, pj)) = pivot else {
                return Err(Error::SingularMatrix);
            };
            swap_rows(&mut a, k, pi);
            swap_rows(&mut p, k, pi);
            swap_cols(&mut a, k, pj);
            swap_cols(&mut q, k, pj);
            let piv = a.get(k, k).clone();
            let mut done = true;
            for i in k + 1..d {
                let (f, r) = a.get(i, k).div_rem(&piv);
                add_row(&mut a, i, k, &f);
                add_row(&mut p, i, k, &f);
                done &= r.is_zero();
            }
            for j in k + 1..d {
                let (f, r) = a.get(k, j).div_rem(&piv);
                add_col(&mut a, j, k, &f);
                add_col(&mut q, j, k, &f);
                done &= r.is_zero();
            }
            if done {
                break;
            }
        }
    }
    // p·T·q = diag(t^e·u); B_1 ∝ B'_1·p and B_2 ∝ B'_2·diag(u)·q⁻¹.
    let mut exponents = Vec::with_capacity(d);
    let mut units = Matrix::identity(d);
    for i in 0..d {
        let f = a.get(i, i);
        let e = f.valuation().unwrap();
        exponents.push(e);
        units.set(i, i, f.shift(-e));
    }
    let w2 = units.mul(&q.adjugate())?;
    Ok(CommonFrame {
        exponents,
        w: [p, w2],
    })
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// Row `i` -= `f`·row `k`.
fn add_row(m: &mut Matrix, i: usize, k: usize, f: &Laurent) {
    if f.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m.get(i, j) - &(f * m.get(k, j));
        m.set(i, j, v);
    }
}

/// Column `j` -= `f`·column `k`.
fn add_col(m: &mut Matrix, j: usize, k: usize, f: &Laurent) {
    if f.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let v = m.get(i, j) - &(f * m.get(i, k));
        m.set(i, j, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::{elementary_divisor_exponents, vertex_equal};

    #[test]
    fn diagonalizes() {
        let v1 = Vertex::diagonal(&[0, 0, 0]).unwrap();
        let m = Matrix::parse("[[t+t^2,2,-t^3],[t,-1+t,0],[2*t,1,t^2-t^3]]").unwrap();
        let v2 = Vertex::from_matrix(m.clone()).unwrap();
        let f = common_apartment(&v1, &v2).unwrap();
        let mut e = f.exponents.clone();
        e.sort_unstable();
        assert_eq!(e, elementary_divisor_exponents(&m).unwrap());
        // the apartment bases reproduce the given lattices
        let b1 = f.w[0].adjugate();
        assert!(vertex_equal(&Vertex::from_matrix(b1.clone()).unwrap(), &v1));
        let b2 = b1.mul(&Matrix::diag_t(&f.exponents)).unwrap().mul(&f.w[1]).unwrap();
        assert!(vertex_equal(&Vertex::from_matrix(b2).unwrap(), &v2));
    }
}
