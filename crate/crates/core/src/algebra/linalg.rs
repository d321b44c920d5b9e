//! Dense linear algebra over a field: echelon forms, kernels, inverses.

use super::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row-echelon form, dropping zero rows. Returns the rows and the
/// pivot column of each.
pub fn rref<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a: Matrix<F::Elem> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..nrows {
            if i == r || f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..ncols {
                let t = f.mul(&factor, &a[r][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    rref(f, m).1.len()
}

/// A basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], ncols: usize) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(f.zero(), |acc, (x, brow)| f.add(&acc, &f.mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| dot(f, row, v)).collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Matrix<E> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let aug: Matrix<F::Elem> = m
        .iter()
        .zip(identity(f, n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}
