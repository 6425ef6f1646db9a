//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Reduced row echelon form; returns the pivot column of each nonzero row.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of `{x : M x = 0}`, one vector per free column, in column order.
pub fn kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[row][fc].clone();
            }
            v
        })
        .collect()
}

/// Determinant by fraction-exact elimination; `None` for non-square input.
pub fn determinant(m: &[Vec<Rational>]) -> Option<Rational> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Some(Rational::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &factor * p;
            }
        }
    }
    Some(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])), Some(int(-2)));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), Some(int(-1)));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), Some(int(0)));
        assert_eq!(determinant(&m(&[&[1, 2, 3]])), None);
    }

    #[test]
    fn kernel_basis() {
        assert!(kernel(&m(&[&[1, 0], &[0, 1]])).is_empty());
        let k = kernel(&m(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Rational = v.iter().zip([1, 2, 3]).map(|(x, c)| x * int(c)).sum();
            assert!(dot.is_zero());
        }
    }
}
