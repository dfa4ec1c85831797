//! Dense linear algebra over a field: determinants, row reduction, kernels.

use crate::fields::Field;

pub fn determinant<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = field.neg(&det);
        }
        let p = m[col][col].clone();
        det = field.mul(&det, &p);
        let p_inv = field.inv(&p).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &p_inv);
            for c in col..n {
                let v = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &v);
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(piv, r);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let v = field.mul(&factor, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}` for an `rows x cols` matrix, in reduced form
/// (each basis vector has a 1 in one free column and 0 in the others).
pub fn kernel<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.to_vec();
    let pivots = rref(field, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = field.neg(&row[f]);
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a = m.to_vec();
    rref(field, &mut a).len()
}
