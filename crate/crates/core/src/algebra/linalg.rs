//! Dense linear algebra over Q.

use super::rational::Rational;

pub type QMatrix = Vec<Vec<Rational>>;

/// Row echelon form in place; returns the pivot columns.
pub fn row_reduce(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let v = &m[i][k] - &(&f * &m[r][k]);
                    m[i][k] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a).len()
}

/// The unique solution of `A x = b` for square invertible `A`.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = row_reduce(&mut aug);
    if piv.len() != n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace(a: &QMatrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let piv = row_reduce(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !piv.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = -&m[r][free];
        }
        out.push(x);
    }
    out
}

pub fn mat_vec(a: &QMatrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (p, q)| &acc + &(p * q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_solve() {
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[1, 2, 3], &[0, 1, 1], &[1, 0, 0]])), 3);
        let a = q(&[&[2, 1], &[1, 3]]);
        let b = vec![Rational::from_int(3), Rational::from_int(5)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(mat_vec(&a, &x), b);
        assert!(solve(&q(&[&[1, 1], &[1, 1]]), &b).is_none());
        let k = nullspace(&q(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&q(&[&[1, 1, 0], &[0, 1, 1]]), &k[0]).iter().all(|x| x.is_zero()));
    }
}
