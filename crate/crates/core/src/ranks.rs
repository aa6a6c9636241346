//! Rank functions for the tame families: matrices, quadratic forms, skew forms,
//! quadrics, half-spinors of Spin₁₀ and coforms of Sp₂ₙ. Also the Λ³F⁶ rank
//! criterion built on the quartic invariant J and the Sp₆ witness.

use crate::error::{Error, Result};
use crate::linalg::{kernel, matmul, matvec, rank, span_basis, transpose, Mat};
use crate::scalar::{q, q_from_str, q_to_string, Scalar, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Coordinate layouts. Wedge and skew coordinates use lexicographic index tuples;
/// symmetric ones use i ≤ j; spinors use even subsets of {0..4} by size, then lex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Matrix(usize, usize),
    Symmetric(usize),
    Skew(usize),
    Wedge3,
    Spinor16,
    /// Skew 2-vectors on F^{2n} for the symplectic form Σ z_i ∧ z_{2n+1−i}.
    Coform(usize),
    /// A vector of F^n with the split form of [`split_form`].
    Quadric(usize),
    Tensor3(usize, usize, usize),
}

impl Shape {
    pub fn len(&self) -> usize {
        match *self {
            Shape::Matrix(m, n) => m * n,
            Shape::Symmetric(n) => n * (n + 1) / 2,
            Shape::Skew(n) => n * (n.saturating_sub(1)) / 2,
            Shape::Wedge3 => 20,
            Shape::Spinor16 => 16,
            Shape::Coform(n) => n * (2 * n - 1),
            Shape::Quadric(n) => n,
            Shape::Tensor3(a, b, c) => a * b * c,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Shape::Matrix(..) => "matrix",
            Shape::Symmetric(_) => "symmetric",
            Shape::Skew(_) => "skew",
            Shape::Wedge3 => "wedge3",
            Shape::Spinor16 => "spinor16",
            Shape::Coform(_) => "coform",
            Shape::Quadric(_) => "quadric",
            Shape::Tensor3(..) => "tensor3",
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match *self {
            Shape::Matrix(m, n) => vec![m, n],
            Shape::Symmetric(n) | Shape::Skew(n) | Shape::Coform(n) | Shape::Quadric(n) => vec![n],
            Shape::Wedge3 | Shape::Spinor16 => vec![],
            Shape::Tensor3(a, b, c) => vec![a, b, c],
        }
    }

    pub fn from_parts(tag: &str, dims: &[usize]) -> Result<Shape> {
        let bad = || Error::Parse(format!("shape {tag} does not take dims {dims:?}"));
        Ok(match (tag, dims) {
            ("matrix", [m, n]) => Shape::Matrix(*m, *n),
            ("symmetric", [n]) => Shape::Symmetric(*n),
            ("skew", [n]) => Shape::Skew(*n),
            ("wedge3", []) => Shape::Wedge3,
            ("spinor16", []) => Shape::Spinor16,
            ("coform", [n]) if *n > 0 => Shape::Coform(*n),
            ("quadric", [n]) if *n > 0 => Shape::Quadric(*n),
            ("tensor3", [a, b, c]) => Shape::Tensor3(*a, *b, *c),
            ("matrix" | "symmetric" | "skew" | "wedge3" | "spinor16" | "coform" | "quadric" | "tensor3", _) => {
                return Err(bad())
            }
            _ => return Err(Error::Parse(format!("unknown shape '{tag}'"))),
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dims().iter().map(|x| x.to_string()).collect();
        if d.is_empty() {
            write!(f, "{}", self.tag())
        } else {
            write!(f, "{}[{}]", self.tag(), d.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub shape: Shape,
    pub coords: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    shape: String,
    #[serde(default)]
    dims: Vec<usize>,
    coords: Vec<String>,
}

impl Tensor {
    pub fn new(shape: Shape, coords: Vec<Q>) -> Result<Tensor> {
        if coords.len() != shape.len() {
            return Err(Error::Domain(format!("{shape} needs {} coordinates, got {}", shape.len(), coords.len())));
        }
        Ok(Tensor { shape, coords })
    }

    pub fn from_json(s: &str) -> Result<Tensor> {
        let j: TensorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let shape = Shape::from_parts(&j.shape, &j.dims)?;
        let coords = j.coords.iter().map(|c| q_from_str(c).map_err(Error::Parse)).collect::<Result<Vec<_>>>()?;
        Tensor::new(shape, coords)
    }

    pub fn to_json(&self) -> String {
        let j = TensorJson {
            shape: self.shape.tag().into(),
            dims: self.shape.dims(),
            coords: self.coords.iter().map(q_to_string).collect(),
        };
        serde_json::to_string(&j).expect("tensor serializes")
    }

    /// Dense matrix for matrix, symmetric, skew and coform shapes.
    pub fn to_matrix(&self) -> Result<Mat<Q>> {
        match self.shape {
            Shape::Matrix(m, n) => Ok((0..m).map(|i| self.coords[i * n..(i + 1) * n].to_vec()).collect()),
            Shape::Symmetric(n) => {
                let mut a = vec![vec![q(0); n]; n];
                for (k, (i, j)) in sym_pairs(n).into_iter().enumerate() {
                    a[i][j] = self.coords[k].clone();
                    a[j][i] = self.coords[k].clone();
                }
                Ok(a)
            }
            Shape::Skew(n) => Ok(skew_from_coords(n, &self.coords)),
            Shape::Coform(n) => Ok(skew_from_coords(2 * n, &self.coords)),
            s => Err(Error::Domain(format!("{s} has no matrix form"))),
        }
    }
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = vec![];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

pub fn skew_from_coords<F: Scalar>(n: usize, c: &[F]) -> Mat<F> {
    let mut a = vec![vec![F::nil(); n]; n];
    for (k, (i, j)) in pairs(n).into_iter().enumerate() {
        a[i][j] = c[k].clone();
        a[j][i] = -c[k].clone();
    }
    a
}

pub fn skew_to_coords<F: Scalar>(a: &[Vec<F>]) -> Vec<F> {
    pairs(a.len()).into_iter().map(|(i, j)| a[i][j].clone()).collect()
}

/// x∧y as the skew matrix x yᵀ − y xᵀ.
pub fn wedge_pair<F: Scalar>(x: &[F], y: &[F]) -> Mat<F> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| x[i].clone() * y[j].clone() - y[i].clone() * x[j].clone()).collect()).collect()
}

pub fn segre_rank<F: Scalar>(m: &[Vec<F>]) -> usize {
    rank(m)
}

pub fn veronese2_rank<F: Scalar>(s: &[Vec<F>]) -> Result<usize> {
    for i in 0..s.len() {
        for j in 0..i {
            if s[i][j] != s[j][i] {
                return Err(Error::Domain("matrix is not symmetric".into()));
            }
        }
    }
    Ok(rank(s))
}

pub fn gr2_rank<F: Scalar>(a: &[Vec<F>]) -> Result<usize> {
    let n = a.len();
    for i in 0..n {
        for j in 0..=i {
            if a[i][j] != -a[j][i].clone() {
                return Err(Error::Domain("matrix is not skew".into()));
            }
        }
    }
    let r = rank(a);
    if r % 2 == 1 {
        return Err(Error::Domain(format!("skew matrix of odd rank {r}")));
    }
    Ok(r / 2)
}

/// Split form on F^n: Σ x_i x_{n−1−i} over i < n/2, plus x_m² in the middle when n is odd.
pub fn split_form<F: Scalar>(n: usize) -> Mat<F> {
    let mut g = vec![vec![F::nil(); n]; n];
    let half = F::unit().ratio(&F::from_int(2));
    for i in 0..n / 2 {
        let h = half.clone().unwrap_or_else(F::unit);
        g[i][n - 1 - i] = h.clone();
        g[n - 1 - i][i] = h;
    }
    if n % 2 == 1 {
        g[n / 2][n / 2] = F::unit();
    }
    g
}

/// Value of the split quadratic form, without halving (valid in every characteristic).
pub fn split_quadric<F: Scalar>(v: &[F]) -> F {
    let n = v.len();
    let mut s = F::nil();
    for i in 0..n / 2 {
        s = s + v[i].clone() * v[n - 1 - i].clone();
    }
    if n % 2 == 1 {
        s = s + v[n / 2].clone() * v[n / 2].clone();
    }
    s
}

pub fn quadric_rank<F: Scalar>(v: &[F], g: &[Vec<F>]) -> Result<usize> {
    if v.iter().all(|c| c.is_nil()) {
        return Err(Error::Domain("zero vector has no point in P(V)".into()));
    }
    Ok(if crate::linalg::form(g, v, v).is_nil() { 1 } else { 2 })
}

/// Two isotropic vectors summing to v, for q(v) ≠ 0. Looks for an isotropic n ∈ v^⊥
/// on lines through pairs of basis vectors of v^⊥, then solves linearly.
pub fn quadric_split(v: &[Q], g: &[Vec<Q>]) -> Option<(Vec<Q>, Vec<Q>)> {
    let f = |a: &[Q], b: &[Q]| crate::linalg::form(g, a, b);
    let qv = f(v, v);
    if qv == q(0) {
        return None;
    }
    let gv = matvec(g, v);
    let perp = kernel(&[gv], v.len());
    let mut iso = None;
    'outer: for a in &perp {
        if f(a, a) == q(0) {
            iso = Some(a.clone());
            break;
        }
        for b in &perp {
            // q(a + t b) = qa + 2t·bab + t²·qb
            let (qa, bab, qb) = (f(a, a), f(a, b), f(b, b));
            if qb == q(0) {
                continue;
            }
            let disc = bab.clone() * bab.clone() - qa.clone() * qb.clone();
            if let Some(r) = q_sqrt(&disc) {
                let t = (-bab - r) / qb;
                iso = Some(a.iter().zip(b).map(|(x, y)| x.clone() + t.clone() * y.clone()).collect());
                break 'outer;
            }
        }
    }
    let n = iso?;
    let m = perp.iter().find(|m| f(&n, m) != q(0))?;
    // z = a·n + m with q(z) = −q(v): 2a·(n,m) + q(m) = −q(v)
    let a = (-qv.clone() - f(m, m)) / (q(2) * f(&n, m));
    let z: Vec<Q> = n.iter().zip(m).map(|(x, y)| a.clone() * x.clone() + y.clone()).collect();
    let half = crate::scalar::qf(1, 2);
    let u1: Vec<Q> = v.iter().zip(&z).map(|(x, y)| half.clone() * (x.clone() + y.clone())).collect();
    let u2: Vec<Q> = v.iter().zip(&z).map(|(x, y)| half.clone() * (x.clone() - y.clone())).collect();
    debug_assert!(f(&u1, &u1) == q(0) && f(&u2, &u2) == q(0));
    Some((u1, u2))
}

fn q_sqrt(x: &Q) -> Option<Q> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    if &(n.clone() * n.clone()) == x.numer() && &(d.clone() * d.clone()) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

// ---------- half-spinors of Spin₁₀ ----------

/// Even subsets of {0..4} as bitmasks, by size then lexicographically.
pub fn spinor_basis() -> Vec<u8> {
    let mut v: Vec<u8> = (0u8..32).filter(|m| m.count_ones() % 2 == 0).collect();
    v.sort_by_key(|&m| (m.count_ones(), subset_key(m)));
    v
}

fn subset_key(m: u8) -> Vec<u8> {
    (0..5).filter(|i| m >> i & 1 == 1).collect()
}

/// e_i ∧ e_S: sign from moving e_i past the elements of S below i.
fn wedge_sign(i: usize, s: u8) -> i64 {
    if (s & ((1u8 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Clifford generator v on a basis element: v < 5 is e_v∧, v ≥ 5 is the contraction ι_{v−5}.
fn clifford(v: usize, s: u8) -> Option<(i64, u8)> {
    let i = v % 5;
    let present = s >> i & 1 == 1;
    match (v < 5, present) {
        (true, false) => Some((wedge_sign(i, s), s | 1 << i)),
        (false, true) => Some((wedge_sign(i, s), s & !(1 << i))),
        _ => None,
    }
}

/// β(a, b): top coefficient of reverse(e_A) ∧ e_B.
fn mukai(a: u8, b: u8) -> i64 {
    if a & b != 0 || (a | b) != 31 {
        return 0;
    }
    let k = a.count_ones() as i64;
    let rev = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    // sign of e_A ∧ e_B: inversions between A and B
    let mut inv = 0;
    for i in 0..5 {
        if a >> i & 1 == 1 {
            inv += (b & ((1u8 << i) - 1)).count_ones();
        }
    }
    rev * if inv % 2 == 0 { 1 } else { -1 }
}

/// The ten purity quadrics as lists of (coefficient, a, b) over spinor coordinates a < b.
/// Each is half of β(γ_v s, s); the halving keeps them integral.
pub fn purity_quadrics() -> &'static Vec<Vec<(i64, usize, usize)>> {
    static Q: OnceLock<Vec<Vec<(i64, usize, usize)>>> = OnceLock::new();
    Q.get_or_init(|| {
        let basis = spinor_basis();
        let mut out = vec![];
        for v in 0..10 {
            let mut m = vec![vec![0i64; 16]; 16];
            for (a, &sa) in basis.iter().enumerate() {
                if let Some((sign, img)) = clifford(v, sa) {
                    for (b, &sb) in basis.iter().enumerate() {
                        m[a][b] += sign * mukai(img, sb);
                    }
                }
            }
            let mut terms = vec![];
            for a in 0..16 {
                assert_eq!(m[a][a], 0);
                for b in a + 1..16 {
                    let c = m[a][b] + m[b][a];
                    assert!(c % 2 == 0, "spinor pairing is not symmetric");
                    if c != 0 {
                        terms.push((c / 2, a, b));
                    }
                }
            }
            out.push(terms);
        }
        out
    })
}

pub fn purity_values<F: Scalar>(s: &[F]) -> Vec<F> {
    purity_quadrics()
        .iter()
        .map(|terms| {
            terms.iter().fold(F::nil(), |acc, &(c, a, b)| acc + F::from_int(c) * s[a].clone() * s[b].clone())
        })
        .collect()
}

pub fn is_pure<F: Scalar>(s: &[F]) -> bool {
    purity_values(s).iter().all(|x| x.is_nil())
}

pub fn spinor10_rank<F: Scalar>(s: &[F]) -> Result<usize> {
    if s.len() != 16 {
        return Err(Error::Domain(format!("half-spinor needs 16 coordinates, got {}", s.len())));
    }
    if s.iter().all(|c| c.is_nil()) {
        return Err(Error::Domain("zero spinor".into()));
    }
    Ok(if is_pure(s) { 1 } else { 2 })
}

/// exp(ω)·1 = 1 + ω + ω∧ω/2 with ω∧ω/2 written through 4×4 Pfaffians (integral).
pub fn exp_vacuum<F: Scalar>(omega: &[Vec<F>]) -> Vec<F> {
    spinor_basis()
        .iter()
        .map(|&m| {
            let idx = subset_key(m);
            match idx.len() {
                0 => F::unit(),
                2 => omega[idx[0] as usize][idx[1] as usize].clone(),
                4 => {
                    let w = |a: usize, b: usize| omega[idx[a] as usize][idx[b] as usize].clone();
                    w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2)
                }
                _ => unreachable!(),
            }
        })
        .collect()
}

/// Action of e_i + ι_i on a half-spinor, for an even set J applied in order: an element
/// of Spin₁₀ (up to sign) moving the chart s_∅ ≠ 0 onto s_J ≠ 0.
pub fn flip<F: Scalar>(s: &[F], set: u8) -> Vec<F> {
    let basis = spinor_basis();
    let mut all: BTreeMap<u8, F> = basis.iter().zip(s).map(|(&m, c)| (m, c.clone())).collect();
    for i in 0..5 {
        if set >> i & 1 == 0 {
            continue;
        }
        let mut next: BTreeMap<u8, F> = BTreeMap::new();
        for (m, c) in &all {
            for v in [i, i + 5] {
                if let Some((sign, img)) = clifford(v, *m) {
                    let e = next.entry(img).or_insert_with(F::nil);
                    *e = e.clone() + F::from_int(sign) * c.clone();
                }
            }
        }
        all = next;
    }
    basis.iter().map(|m| all.get(m).cloned().unwrap_or_else(F::nil)).collect()
}

// ---------- coforms of Sp₂ₙ ----------

/// ω(z_i, z_{2n+1−i}) = 1 for i ≤ n.
pub fn symplectic_form<F: Scalar>(n: usize) -> Mat<F> {
    let mut g = vec![vec![F::nil(); 2 * n]; 2 * n];
    for i in 0..n {
        g[i][2 * n - 1 - i] = F::unit();
        g[2 * n - 1 - i][i] = -F::unit();
    }
    g
}

/// Contraction of a skew 2-vector (as a matrix) with the symplectic form.
pub fn coform_contraction<F: Scalar>(w: &[Vec<F>]) -> F {
    let m = w.len();
    (0..m / 2).fold(F::nil(), |acc, i| acc + w[i][m - 1 - i].clone())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoformDecomposition {
    pub n: usize,
    pub pairs: Vec<(Vec<String>, Vec<String>)>,
}

pub fn coform_rank_decompose(w: &[Vec<Q>]) -> Result<Vec<(Vec<Q>, Vec<Q>)>> {
    let m = w.len();
    if m % 2 == 1 || w.iter().any(|r| r.len() != m) {
        return Err(Error::Domain("coform must be a 2n×2n matrix".into()));
    }
    let n = m / 2;
    for i in 0..m {
        for j in 0..=i {
            if w[i][j] != -w[j][i].clone() {
                return Err(Error::Domain("coform is not skew".into()));
            }
        }
    }
    if coform_contraction(w) != q(0) {
        return Err(Error::Domain("input is not annihilated by the symplectic form".into()));
    }
    let omega = symplectic_form::<Q>(n);
    let mut cur: Mat<Q> = w.to_vec();
    let mut out = vec![];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eca);
    let mut r = rank(&cur);
    while r > 0 {
        let col = |a: &[Q], c: &Mat<Q>| matvec(c, a);
        let unit = |i: usize| -> Vec<Q> { (0..m).map(|k| if k == i { q(1) } else { q(0) }).collect() };
        let try_pair = |a: &[Q], b: &[Q], c: &Mat<Q>| -> Option<(Vec<Q>, Vec<Q>, Q)> {
            let (x, y) = (col(a, c), col(b, c));
            let beta = crate::linalg::dot(a, &matvec(c, b));
            if beta == q(0) || crate::linalg::form(&omega, &x, &y) != q(0) {
                return None;
            }
            Some((x, y, beta))
        };
        // on coordinate pairs, β = W_ij and ω(x, y) = (Wᵀ Ω W)_ij
        let gram = matmul(&transpose(&cur), &matmul(&omega, &cur));
        let mut found = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| cur[i][j] != q(0) && gram[i][j] == q(0))
            .and_then(|(i, j)| try_pair(&unit(i), &unit(j), &cur));
        // a = e_i, b = e_j − (f_j/f_k) e_k on the hyperplane f·b = 0 with f = gram row i
        'row: for i in 0..m {
            if found.is_some() {
                break;
            }
            let f = &gram[i];
            let Some(k) = f.iter().position(|c| *c != q(0)) else { continue };
            for j in (0..m).filter(|&j| j != k) {
                let t = f[j].clone() / f[k].clone();
                if cur[i][j].clone() - t.clone() * cur[i][k].clone() != q(0) {
                    let mut b = unit(j);
                    b[k] = -t;
                    found = try_pair(&unit(i), &b, &cur);
                    if found.is_some() {
                        break 'row;
                    }
                }
            }
        }
        // last resort: random a, then b from the hyperplane ω(Wa, Wb) = 0
        let mut tries = 0;
        while found.is_none() && tries < 200 {
            tries += 1;
            let a: Vec<Q> = (0..m).map(|_| q(rng.gen_range(-3..4))).collect();
            let wa = col(&a, &cur);
            let f = matvec(&transpose(&cur), &matvec(&transpose(&omega), &wa));
            let hyper = kernel(&[f], m);
            let mut comb = vec![q(0); m];
            for h in &hyper {
                let c = q(rng.gen_range(-3..4));
                for k in 0..m {
                    comb[k] = comb[k].clone() + c.clone() * h[k].clone();
                }
            }
            found = hyper.iter().chain(std::iter::once(&comb)).find_map(|b| try_pair(&a, b, &cur));
        }
        let (x, y, beta) = found.ok_or_else(|| Error::Domain("no admissible pivot pair found".into()))?;
        let x: Vec<Q> = x.into_iter().map(|c| c / beta.clone()).collect();
        let piece = wedge_pair(&x, &y);
        for i in 0..m {
            for j in 0..m {
                cur[i][j] = cur[i][j].clone() - piece[i][j].clone();
            }
        }
        // a pivot with β ≠ 0 drops the skew rank by exactly 2
        r -= 2;
        out.push((x, y));
    }
    verify_coform_decomposition(w, &out)?;
    Ok(out)
}

pub fn verify_coform_decomposition(w: &[Vec<Q>], pairs: &[(Vec<Q>, Vec<Q>)]) -> Result<()> {
    let m = w.len();
    let omega = symplectic_form::<Q>(m / 2);
    let mut sum = vec![vec![q(0); m]; m];
    for (x, y) in pairs {
        if crate::linalg::form(&omega, x, y) != q(0) {
            return Err(Error::Domain("pair is not isotropic".into()));
        }
        let p = wedge_pair(x, y);
        for i in 0..m {
            for j in 0..m {
                sum[i][j] = sum[i][j].clone() + p[i][j].clone();
            }
        }
    }
    if sum != w {
        return Err(Error::Domain("pairs do not reassemble the coform".into()));
    }
    Ok(())
}

/// Random integral skew 2-vector on F^{2n} with zero contraction.
pub fn random_coform(n: usize, rng: &mut impl Rng) -> Mat<Q> {
    let m = 2 * n;
    let mut w = vec![vec![q(0); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let c = q(rng.gen_range(-5..6));
            w[i][j] = c.clone();
            w[j][i] = -c;
        }
    }
    let c = coform_contraction(&w);
    w[0][m - 1] = w[0][m - 1].clone() - c.clone();
    w[m - 1][0] = w[m - 1][0].clone() + c;
    w
}

// ---------- three-factor flattenings ----------

pub fn flattening_images<F: Scalar>(t: &[F], dims: (usize, usize, usize)) -> [Mat<F>; 3] {
    let (a, b, c) = dims;
    let at = |i: usize, j: usize, k: usize| t[(i * b + j) * c + k].clone();
    let m1: Mat<F> = (0..a).map(|i| (0..b * c).map(|jk| at(i, jk / c, jk % c)).collect()).collect();
    let m2: Mat<F> = (0..b).map(|j| (0..a * c).map(|ik| at(ik / c, j, ik % c)).collect()).collect();
    let m3: Mat<F> = (0..c).map(|k| (0..a * b).map(|ij| at(ij / b, ij % b, k)).collect()).collect();
    [m1, m2, m3].map(|m| span_basis(&transpose(&m)))
}

pub fn outer3<F: Scalar>(u: &[F], v: &[F], w: &[F]) -> Vec<F> {
    let mut out = vec![];
    for a in u {
        for b in v {
            for c in w {
                out.push(a.clone() * b.clone() * c.clone());
            }
        }
    }
    out
}

/// x₁⊗x₂⊗x₃ + y₁⊗x₂⊗x₃ + x₁⊗y₂⊗x₃ + x₁⊗x₂⊗y₃ on (F²)^{⊗3} with x = e₀, y = e₁.
pub fn tangent_tensor_222<F: Scalar>() -> Vec<F> {
    let (x, y) = (vec![F::unit(), F::nil()], vec![F::nil(), F::unit()]);
    let mut t = vec![F::nil(); 8];
    for term in [outer3(&x, &x, &x), outer3(&y, &x, &x), outer3(&x, &y, &x), outer3(&x, &x, &y)] {
        for (a, b) in t.iter_mut().zip(term) {
            *a = a.clone() + b;
        }
    }
    t
}

// ---------- Λ³F⁶ ----------

/// Bitmask of each wedge3 coordinate, in lexicographic order.
pub fn wedge3_masks() -> Vec<u8> {
    triples(6).into_iter().map(|(i, j, k)| (1u8 << i) | (1 << j) | (1 << k)).collect()
}

fn sign_wedge(a: u8, b: u8) -> i64 {
    let mut inv = 0;
    for i in 0..8 {
        if a >> i & 1 == 1 {
            inv += (b & ((1u16 << i) - 1) as u8).count_ones();
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

type Poly = BTreeMap<Vec<u8>, i64>;

fn padd(a: &mut Poly, mono: Vec<u8>, c: i64) {
    let e = a.entry(mono).or_insert(0);
    *e += c;
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m: Vec<u8> = ma.iter().chain(mb).copied().collect();
            m.sort();
            padd(&mut out, m, ca * cb);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// J as an integral quartic in the 20 wedge3 coordinates: tr(K²) over its value at
/// e₁₂₃ + e₄₅₆, where K_i^j = (e_j ∧ ι_i ψ ∧ ψ)/vol.
pub fn j_polynomial() -> &'static Vec<(i64, [u8; 4])> {
    static J: OnceLock<Vec<(i64, [u8; 4])>> = OnceLock::new();
    J.get_or_init(|| {
        let masks = wedge3_masks();
        let mut k: Vec<Vec<Poly>> = vec![vec![Poly::new(); 6]; 6];
        for i in 0..6 {
            for (va, &ma) in masks.iter().enumerate() {
                if ma >> i & 1 == 0 {
                    continue;
                }
                // ι_i e_A = sign · e_{A∖i}
                let rest = ma & !(1 << i);
                let s1 = sign_wedge(1 << i, rest);
                for (vb, &mb) in masks.iter().enumerate() {
                    if rest & mb != 0 {
                        continue;
                    }
                    let five = rest | mb;
                    let s2 = sign_wedge(rest, mb);
                    let j = (0..6).find(|&j| five >> j & 1 == 0).unwrap();
                    let s3 = sign_wedge(1 << j, five);
                    let mut mono = vec![va as u8, vb as u8];
                    mono.sort();
                    padd(&mut k[i][j], mono, s1 * s2 * s3);
                }
            }
        }
        let mut tr = Poly::new();
        for i in 0..6 {
            for j in 0..6 {
                for (m, c) in pmul(&k[i][j], &k[j][i]) {
                    padd(&mut tr, m, c);
                }
            }
        }
        tr.retain(|_, c| *c != 0);
        let mut psi = vec![0i64; 20];
        psi[0] = 1;
        psi[19] = 1;
        let v: i64 = tr.iter().map(|(m, c)| c * m.iter().map(|&x| psi[x as usize]).product::<i64>()).sum();
        assert!(v != 0, "trace form vanishes on the generic orbit");
        tr.into_iter()
            .map(|(m, c)| {
                assert!(c % v == 0, "J is not integral after normalization");
                (c / v, [m[0], m[1], m[2], m[3]])
            })
            .collect()
    })
}

pub fn j_invariant<F: Scalar>(psi: &[F]) -> F {
    j_polynomial().iter().fold(F::nil(), |acc, (c, m)| {
        acc + F::from_int(*c) * psi[m[0] as usize].clone() * psi[m[1] as usize].clone() * psi[m[2] as usize].clone() * psi[m[3] as usize].clone()
    })
}

/// Matrix of v ↦ v∧ψ, F⁶ → Λ⁴F⁶ (columns indexed by v).
pub fn wedge_map<F: Scalar>(psi: &[F]) -> Mat<F> {
    let masks = wedge3_masks();
    let quads: Vec<u8> = (0u8..64).filter(|m| m.count_ones() == 4).collect();
    let mut m = vec![vec![F::nil(); 6]; quads.len()];
    for v in 0..6 {
        for (t, &mt) in masks.iter().enumerate() {
            if mt >> v & 1 == 1 || psi[t].is_nil() {
                continue;
            }
            let r = quads.iter().position(|&x| x == mt | 1 << v).unwrap();
            m[r][v] = m[r][v].clone() + F::from_int(sign_wedge(1 << v, mt)) * psi[t].clone();
        }
    }
    m
}

/// Dimension of {v : v∧ψ = 0}.
pub fn divisor_dim<F: Scalar>(psi: &[F]) -> usize {
    6 - rank(&wedge_map(psi))
}

pub fn wedge3_c6_rank<F: Scalar>(psi: &[F]) -> Result<usize> {
    if psi.len() != 20 {
        return Err(Error::Domain(format!("Λ³F⁶ needs 20 coordinates, got {}", psi.len())));
    }
    if psi.iter().all(|c| c.is_nil()) {
        return Err(Error::Domain("zero 3-vector".into()));
    }
    let k = divisor_dim(psi);
    Ok(if k == 3 {
        1
    } else if k > 0 || !j_invariant(psi).is_nil() {
        2
    } else {
        3
    })
}

/// 3-vector from (coefficient, i, j, k) terms with 1-based, possibly unsorted indices.
pub fn wedge3_from_terms<F: Scalar>(terms: &[(i64, usize, usize, usize)]) -> Vec<F> {
    let masks = wedge3_masks();
    let mut psi = vec![F::nil(); 20];
    for &(c, i, j, k) in terms {
        let idx = [i - 1, j - 1, k - 1];
        let mut sorted = idx;
        sorted.sort();
        let mut perm_sign = 1;
        for a in 0..3 {
            for b in a + 1..3 {
                if idx[a] > idx[b] {
                    perm_sign = -perm_sign;
                }
            }
        }
        let m = (1u8 << sorted[0]) | (1 << sorted[1]) | (1 << sorted[2]);
        let t = masks.iter().position(|&x| x == m).expect("distinct indices");
        psi[t] = psi[t].clone() + F::from_int(c * perm_sign);
    }
    psi
}

/// e₁∧e₂∧e₄ + e₁∧e₅∧e₃ + e₆∧e₂∧e₃.
pub fn lambda3<F: Scalar>() -> Vec<F> {
    wedge3_from_terms(&[(1, 1, 2, 4), (1, 1, 5, 3), (1, 6, 2, 3)])
}

/// Contraction of ψ ∈ Λ³F⁶ with z₁∧z₆ + z₂∧z₅ + z₃∧z₄, as a vector of F⁶.
pub fn sp6_contraction<F: Scalar>(psi: &[F]) -> Vec<F> {
    let masks = wedge3_masks();
    let mut out = vec![F::nil(); 6];
    for (a, b) in [(0usize, 5usize), (1, 4), (2, 3)] {
        for k in 0..6 {
            if k == a || k == b {
                continue;
            }
            let m = (1u8 << a) | (1 << b) | (1 << k);
            let t = masks.iter().position(|&x| x == m).unwrap();
            // ψ(z_a, z_b, ·) with ψ stored on sorted indices
            let mut idx = [a, b, k];
            let mut sign = 1;
            for i in 0..3 {
                for j in 0..2 - i {
                    if idx[j] > idx[j + 1] {
                        idx.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            out[k] = out[k].clone() + F::from_int(sign) * psi[t].clone();
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sp6WitnessReport {
    pub tensor: Vec<String>,
    pub contraction_zero: bool,
    pub summands_isotropic: bool,
    pub divisor_dim: usize,
    pub j_invariant: String,
    pub rank: usize,
}

pub fn sp6_wedge3_witness() -> (Vec<Q>, Sp6WitnessReport) {
    let psi = lambda3::<Q>();
    let omega = symplectic_form::<Q>(3);
    let unit = |i: usize| -> Vec<Q> { (0..6).map(|k| if k + 1 == i { q(1) } else { q(0) }).collect() };
    let summands = [[1, 2, 4], [1, 5, 3], [6, 2, 3]];
    let summands_isotropic = summands.iter().all(|s| {
        (0..3).all(|a| (a + 1..3).all(|b| crate::linalg::form(&omega, &unit(s[a]), &unit(s[b])) == q(0)))
    });
    let report = Sp6WitnessReport {
        tensor: psi.iter().map(q_to_string).collect(),
        contraction_zero: sp6_contraction(&psi).iter().all(|c| c.is_nil()),
        summands_isotropic,
        divisor_dim: divisor_dim(&psi),
        j_invariant: q_to_string(&j_invariant(&psi)),
        rank: wedge3_c6_rank(&psi).expect("nonzero"),
    };
    (psi, report)
}

/// Rank of a tensor of any supported shape. Tensor3 is supported only through its
/// flattening bound and returns the maximal flattening rank as a lower bound.
pub fn tensor_rank(t: &Tensor) -> Result<usize> {
    match t.shape {
        Shape::Matrix(..) => Ok(segre_rank(&t.to_matrix()?)),
        Shape::Symmetric(_) => veronese2_rank(&t.to_matrix()?),
        Shape::Skew(_) => gr2_rank(&t.to_matrix()?),
        Shape::Coform(_) => {
            let w = t.to_matrix()?;
            Ok(coform_rank_decompose(&w)?.len())
        }
        Shape::Wedge3 => wedge3_c6_rank(&t.coords),
        Shape::Spinor16 => spinor10_rank(&t.coords),
        Shape::Quadric(n) => quadric_rank(&t.coords, &split_form::<Q>(n)),
        Shape::Tensor3(a, b, c) => {
            Ok(flattening_images(&t.coords, (a, b, c)).iter().map(|m| m.len()).max().unwrap_or(0))
        }
    }
}
