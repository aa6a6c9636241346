//! Dense exact linear algebra over a `Scalar` field, plus fraction-free
//! (Bareiss) rank over the integers.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub type Mat<F> = Vec<Vec<F>>;

pub fn zeros<F: Scalar>(r: usize, c: usize) -> Mat<F> {
    vec![vec![F::nil(); c]; r]
}

pub fn identity<F: Scalar>(n: usize) -> Mat<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::unit();
    }
    m
}

pub fn transpose<F: Scalar>(m: &[Vec<F>]) -> Mat<F> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn matmul<F: Scalar>(a: &[Vec<F>], b: &[Vec<F>]) -> Mat<F> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![F::nil(); n];
            for (k, x) in row.iter().enumerate() {
                if x.is_nil() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_nil() {
                        out[j] = out[j].clone() + x.clone() * y.clone();
                    }
                }
            }
            out
        })
        .collect()
}

pub fn matvec<F: Scalar>(a: &[Vec<F>], v: &[F]) -> Vec<F> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    let mut s = F::nil();
    for (x, y) in a.iter().zip(b) {
        if !x.is_nil() && !y.is_nil() {
            s = s + x.clone() * y.clone();
        }
    }
    s
}

/// Bilinear form value uᵀ G v.
pub fn form<F: Scalar>(g: &[Vec<F>], u: &[F], v: &[F]) -> F {
    dot(u, &matvec(g, v))
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<F: Scalar>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_nil()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_nil() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_nil() {
                        let t = f.clone() * m[r][j].clone();
                        m[i][j] = m[i][j].clone() - t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0}.
pub fn kernel<F: Scalar>(m: &[Vec<F>], cols: usize) -> Mat<F> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::nil(); cols];
            v[f] = F::unit();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// A basis (subset of the input) of the span of `vectors`.
pub fn span_basis<F: Scalar>(vectors: &[Vec<F>]) -> Mat<F> {
    let Some(first) = vectors.first() else {
        return vec![];
    };
    let mut span = Span::new(first.len());
    vectors.iter().filter(|v| span.insert(v)).cloned().collect()
}

/// Incremental span tracker: cheap membership tests for many candidate vectors.
#[derive(Clone, Debug)]
pub struct Span<F: Scalar> {
    rows: Mat<F>,
    pivots: Vec<usize>,
    dim: usize,
}

impl<F: Scalar> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span { rows: vec![], pivots: vec![], dim }
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_nil() {
                let f = w[p].clone();
                for j in 0..self.dim {
                    if !row[j].is_nil() {
                        w[j] = w[j].clone() - f.clone() * row[j].clone();
                    }
                }
            }
        }
        w
    }
    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_nil())
    }
    /// Adds v; returns true when the span grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_nil()) else {
            return false;
        };
        let inv = w[p].inverse().unwrap();
        let w: Vec<F> = w.into_iter().map(|x| x * inv.clone()).collect();
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[p].is_nil() {
                let f = row[p].clone();
                for j in 0..self.dim {
                    if !w[j].is_nil() {
                        row[j] = row[j].clone() - f.clone() * w[j].clone();
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

pub fn inverse<F: Scalar>(m: &[Vec<F>]) -> Option<Mat<F>> {
    let n = m.len();
    let mut a: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::unit() } else { F::nil() }));
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve m x = b for some x, if solvable.
pub fn solve<F: Scalar>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Mat<F> = m.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let piv = rref(&mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::nil(); cols];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = a[i][cols].clone();
    }
    Some(x)
}

/// Rank over Q of an integer matrix, by Bareiss elimination.
/// Runs in i128 and restarts in BigInt if an intermediate overflows.
pub fn int_rank(m: &[Vec<i64>]) -> usize {
    let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(wide) {
        Some(r) => r,
        None => {
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_big(big)
        }
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = a[0].len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // sparsest usable pivot keeps entries small
        let Some(p) = (r..rows)
            .filter(|&i| a[i][c] != 0)
            .min_by_key(|&i| (a[i].iter().filter(|x| **x != 0).count(), a[i][c].unsigned_abs()))
        else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c];
        for i in r + 1..rows {
            let f = a[i][c];
            if f == 0 {
                if piv != prev {
                    for j in c + 1..cols {
                        if a[i][j] != 0 {
                            a[i][j] = a[i][j].checked_mul(piv)? / prev;
                        }
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let t = a[i][j].checked_mul(piv)?.checked_sub(a[r][j].checked_mul(f)?)?;
                a[i][j] = t / prev;
            }
            a[i][c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let t = &a[i][j] * &piv - &a[r][j] * &f;
                a[i][j] = t / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Determinant of a small integer matrix (Bareiss, BigInt).
pub fn int_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut sign = 1i64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = &a[i][j] * &a[c][c] - &a[i][c] * &a[c][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[c][c].clone();
    }
    prev * sign
}

pub fn big_to_i64(b: &BigInt) -> Option<i64> {
    b.to_i64()
}
