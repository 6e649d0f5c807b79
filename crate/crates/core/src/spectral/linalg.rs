//! Small dense matrices over a [`FieldDescriptor`].

use crate::algebra::{Elem, FieldDescriptor};

pub type Matrix = Vec<Vec<Elem>>;

pub fn identity(field: &FieldDescriptor, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(field: &FieldDescriptor, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_pow(field: &FieldDescriptor, a: &Matrix, e: u64) -> Matrix {
    let mut acc = identity(field, a.len());
    for _ in 0..e {
        acc = mat_mul(field, &acc, a);
    }
    acc
}

/// `a - λ I`.
pub fn shift(field: &FieldDescriptor, a: &Matrix, lambda: &Elem) -> Matrix {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = field.sub(&row[i], lambda);
    }
    out
}

/// `m[i][k] -= factor * m[r][k]` for `k >= from`.
fn sub_scaled_row(field: &FieldDescriptor, m: &mut Matrix, i: usize, r: usize, factor: &Elem, from: usize) {
    let pivot = m[r][from..].to_vec();
    for (x, y) in m[i][from..].iter_mut().zip(&pivot) {
        *x = field.sub(x, &field.mul(factor, y));
    }
}

pub fn rank(field: &FieldDescriptor, a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = field.mul(&m[i][c], &inv);
                sub_scaled_row(field, &mut m, i, r, &factor, c);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn determinant(field: &FieldDescriptor, a: &Matrix) -> Elem {
    let mut m = a.clone();
    let n = m.len();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = field.mul(&m[i][c], &inv);
            sub_scaled_row(field, &mut m, i, c, &factor, c);
        }
    }
    det
}

/// Characteristic polynomial `det(xI - A)`, coefficients low degree first
/// (monic, length `n + 1`), via reduction to Hessenberg form.
pub fn charpoly(field: &FieldDescriptor, a: &Matrix) -> Vec<Elem> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !field.is_zero(&h[i][m - 1])) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = field.inv(&h[m][m - 1]).expect("nonzero pivot");
        for j in m + 1..n {
            let u = field.mul(&h[j][m - 1], &inv);
            if field.is_zero(&u) {
                continue;
            }
            sub_scaled_row(field, &mut h, j, m, &u, 0);
            for row in h.iter_mut() {
                let v = field.mul(&u, &row[j]);
                row[m] = field.add(&row[m], &v);
            }
        }
    }
    // p_k is the characteristic polynomial of the leading k x k block
    let mut polys: Vec<Vec<Elem>> = vec![vec![field.one()]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![field.zero(); m + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            let v = field.mul(&h[m - 1][m - 1], c);
            next[i] = field.sub(&next[i], &v);
        }
        let mut t = field.one();
        for i in (1..m).rev() {
            t = field.mul(&t, &h[i][i - 1]);
            let coef = field.mul(&h[i - 1][m - 1], &t);
            for (k, c) in polys[i - 1].iter().enumerate() {
                let v = field.mul(&coef, c);
                next[k] = field.sub(&next[k], &v);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 entries")
}

pub fn eval_poly(field: &FieldDescriptor, coeffs: &[Elem], x: &Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Quotient of `coeffs` by `(x - root)`, assuming `root` is a root.
pub fn deflate(field: &FieldDescriptor, coeffs: &[Elem], root: &Elem) -> Vec<Elem> {
    let n = coeffs.len() - 1;
    let mut out = vec![field.zero(); n];
    let mut carry = field.zero();
    for i in (0..n).rev() {
        carry = field.add(&coeffs[i + 1], &field.mul(&carry, root));
        out[i] = carry.clone();
    }
    out
}

pub fn map_matrix(a: &Matrix, g: impl Fn(&Elem) -> Elem) -> Matrix {
    a.iter().map(|row| row.iter().map(&g).collect()).collect()
}
