//! Chevalley bases with exact structure constants, gradings, orbit dimensions,
//! and Im-statistics of skew coforms on a quadratic space.

use crate::error::{Error, Result};
use crate::linalg::{int_rank, rank, span_basis, transpose};
use crate::rootsys::{build_root_system, identify_diagram, weyl_orbit_capped, Family, RootSystem, SimpleType, Weight};
use crate::scalar::{q, Scalar, Q};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Basis: h_1..h_ℓ (simple coroots), then e_α for α in `RootSystem::roots()` order.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub system: RootSystem,
    pub roots: Vec<Vec<i64>>,
    /// ⟨α, α_i∨⟩ for every root.
    pub marks: Vec<Vec<i64>>,
    /// α∨ in the basis of simple coroots.
    pub coroots: Vec<Vec<i64>>,
    neg: Vec<usize>,
    /// (index of α+β, N_{α,β}) for root pairs whose sum is a root.
    table: Vec<Vec<Option<(usize, i64)>>>,
}

impl ChevalleyAlgebra {
    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn root_basis_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.system.root_index(coeffs).map(|i| i + self.rank())
    }

    /// N_{α,β} by root indices; 0 when α+β is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.table[a][b].map_or(0, |(_, n)| n)
    }

    /// [b_i, b_j] as a sparse integer combination.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let l = self.rank();
        match (i < l, j < l) {
            (true, true) => vec![],
            (true, false) => {
                let c = self.marks[j - l][i];
                if c == 0 {
                    vec![]
                } else {
                    vec![(j, c)]
                }
            }
            (false, true) => {
                let c = self.marks[i - l][j];
                if c == 0 {
                    vec![]
                } else {
                    vec![(i, -c)]
                }
            }
            (false, false) => {
                let (a, b) = (i - l, j - l);
                if self.neg[a] == b {
                    self.coroots[a].iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect()
                } else {
                    match self.table[a][b] {
                        Some((s, n)) => vec![(s + l, n)],
                        None => vec![],
                    }
                }
            }
        }
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += xi * yj * q(c);
                }
            }
        }
        out
    }

    fn bracket_sparse(&self, x: &HashMap<usize, i64>, y: &HashMap<usize, i64>) -> HashMap<usize, i64> {
        let mut out = HashMap::new();
        for (&i, &a) in x {
            for (&j, &b) in y {
                for (k, c) in self.bracket_basis(i, j) {
                    *out.entry(k).or_insert(0) += a * b * c;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Jacobi identity on one basis triple.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let e = |t: usize| HashMap::from([(t, 1i64)]);
        let mut total: HashMap<usize, i64> = HashMap::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket_sparse(&e(b), &e(c));
            for (t, v) in self.bracket_sparse(&e(a), &inner) {
                *total.entry(t).or_insert(0) += v;
            }
        }
        total.values().all(|&v| v == 0)
    }

    /// Matrix of ad(x) (columns indexed by basis), entries scaled to integers.
    fn ad_matrix_int(&self, x: &[Q]) -> Vec<Vec<i64>> {
        let den = x.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let xi: Vec<i64> = x.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer().to_i64().expect("small")).collect();
        let n = self.dim();
        let mut m = vec![vec![0i64; n]; n];
        for t in 0..n {
            for (k, &c) in xi.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (r, v) in self.bracket_basis(t, k) {
                    m[r][t] += c * v;
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn root_vector(&self, coeffs: &[i64]) -> Result<Vec<Q>> {
        let i = self
            .root_basis_index(coeffs)
            .ok_or_else(|| Error::Domain(format!("{coeffs:?} is not a root of {}", self.system.ty)))?;
        Ok(self.basis_vector(i))
    }

    /// exp(t·ad e_α)(x); ad e_α is nilpotent so the series is finite.
    pub fn exp_ad(&self, root: usize, t: &Q, x: &[Q]) -> Vec<Q> {
        let e = self.basis_vector(root + self.rank());
        let mut out = x.to_vec();
        let mut term = x.to_vec();
        let mut k = 1i64;
        loop {
            term = self.bracket(&e, &term).into_iter().map(|c| c * t / q(k)).collect();
            if term.iter().all(|c| c.is_zero()) {
                break;
            }
            for (o, c) in out.iter_mut().zip(&term) {
                *o += c;
            }
            k += 1;
        }
        out
    }
}

pub fn build_chevalley(ty: SimpleType) -> Result<ChevalleyAlgebra> {
    build_chevalley_with_sign(ty, 1)
}

/// `sign` is the sign given to every extraspecial pair: N = sign·(p+1).
pub fn build_chevalley_with_sign(ty: SimpleType, sign: i64) -> Result<ChevalleyAlgebra> {
    let system = build_root_system(ty)?;
    let roots = system.roots();
    let np = system.positive.len();
    let nr = roots.len();
    let neg: Vec<usize> = (0..nr).map(|i| if i < np { i + np } else { i - np }).collect();
    let norms: Vec<Q> = roots.iter().map(|r| system.norm(r)).collect();
    let mut sum: Vec<Vec<Option<usize>>> = vec![vec![None; nr]; nr];
    for a in 0..nr {
        for b in 0..nr {
            let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
            sum[a][b] = system.root_index(&s);
        }
    }
    let mut ctx = Ctx { np, neg: &neg, norms: &norms, sum: &sum, memo: HashMap::new(), sign };
    let mut table = vec![vec![None; nr]; nr];
    for a in 0..nr {
        for b in 0..nr {
            if let Some(s) = sum[a][b] {
                table[a][b] = Some((s, ctx.n(a, b)));
            }
        }
    }
    Ok(assemble(system, table))
}

fn assemble(system: RootSystem, table: Vec<Vec<Option<(usize, i64)>>>) -> ChevalleyAlgebra {
    let roots = system.roots();
    let np = system.positive.len();
    let nr = roots.len();
    let neg: Vec<usize> = (0..nr).map(|i| if i < np { i + np } else { i - np }).collect();
    let norms: Vec<Q> = roots.iter().map(|r| system.norm(r)).collect();
    let marks: Vec<Vec<i64>> = roots.iter().map(|r| system.root_marks(r)).collect();
    let coroots: Vec<Vec<i64>> = roots
        .iter()
        .zip(&norms)
        .map(|(r, nrm)| {
            (0..system.rank())
                .map(|i| {
                    let c = q(r[i]) * system.gram[i][i].clone() / nrm.clone();
                    assert!(c.is_integer());
                    c.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    ChevalleyAlgebra { system, roots, marks, coroots, neg, table }
}

impl ChevalleyAlgebra {
    /// Nonzero structure constants as (α, β, α+β, N_{α,β}) over root indices.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = vec![];
        for (a, row) in self.table.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                if let Some((s, n)) = e {
                    out.push((a, b, *s, *n));
                }
            }
        }
        out
    }

    /// Rebuilds an algebra from cached structure constants; the root-sum pattern is
    /// recomputed and must match the entries exactly.
    pub fn from_entries(ty: SimpleType, entries: &[(usize, usize, usize, i64)]) -> Result<ChevalleyAlgebra> {
        let system = build_root_system(ty)?;
        let roots = system.roots();
        let nr = roots.len();
        let mut table = vec![vec![None; nr]; nr];
        for &(a, b, s, n) in entries {
            if a >= nr || b >= nr || s >= nr || n == 0 {
                return Err(Error::Parse("structure constant out of range".into()));
            }
            table[a][b] = Some((s, n));
        }
        for a in 0..nr {
            for b in 0..nr {
                let sum: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if system.root_index(&sum) != table[a][b].map(|e| e.0) {
                    return Err(Error::Parse(format!("cached table for {ty} disagrees with its root system")));
                }
            }
        }
        Ok(assemble(system, table))
    }
}

struct Ctx<'a> {
    np: usize,
    neg: &'a [usize],
    norms: &'a [Q],
    sum: &'a [Vec<Option<usize>>],
    memo: HashMap<(usize, usize), i64>,
    sign: i64,
}

impl Ctx<'_> {
    fn is_pos(&self, a: usize) -> bool {
        a < self.np
    }

    /// Largest p with β − pα a root.
    fn p(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut cur = b;
        while let Some(s) = self.sum[self.neg[a]][cur] {
            p += 1;
            cur = s;
        }
        p
    }

    fn n(&mut self, a: usize, b: usize) -> i64 {
        let Some(s) = self.sum[a][b] else { return 0 };
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let v = match (self.is_pos(a), self.is_pos(b)) {
            (true, true) => {
                if a < b {
                    self.special(a, b)
                } else {
                    -self.special(b, a)
                }
            }
            (false, false) => -self.n(self.neg[a], self.neg[b]),
            _ => {
                // a + b + c = 0: rotate onto the pair sharing a sign
                let c = self.neg[s];
                let r = if self.is_pos(b) == self.is_pos(c) {
                    self.norms[c].clone() / self.norms[a].clone() * q(self.n(b, c))
                } else {
                    self.norms[c].clone() / self.norms[b].clone() * q(self.n(c, a))
                };
                to_int(&r)
            }
        };
        self.memo.insert((a, b), v);
        v
    }

    /// N for positive α < β with α+β a root.
    fn special(&mut self, a: usize, b: usize) -> i64 {
        let xi = self.sum[a][b].unwrap();
        let a1 = (0..self.np)
            .find(|&c| {
                let d = self.sum[self.neg[c]].get(xi).copied().flatten();
                matches!(d, Some(d) if d < self.np && c < d)
            })
            .unwrap();
        let b1 = self.sum[self.neg[a1]][xi].unwrap();
        if a1 == a {
            return self.sign * (self.p(a, b) + 1);
        }
        let n11 = self.n(a1, b1);
        let (ma1, mb1) = (self.neg[a1], self.neg[b1]);
        let mut acc = Q::zero();
        if let Some(s) = self.sum[b][ma1] {
            acc += q(self.n(b, ma1) * self.n(a, mb1)) / self.norms[s].clone();
        }
        if let Some(s) = self.sum[a][ma1] {
            acc += q(self.n(ma1, a) * self.n(b, mb1)) / self.norms[s].clone();
        }
        to_int(&(self.norms[xi].clone() / q(n11) * acc))
    }
}

fn to_int(r: &Q) -> i64 {
    assert!(r.is_integer(), "non-integral structure constant {r}");
    r.to_integer().to_i64().unwrap()
}

/// rank of t ↦ [t, x], i.e. dim G·x.
pub fn orbit_dim(alg: &ChevalleyAlgebra, x: &[Q]) -> usize {
    if x.iter().all(|c| c.is_zero()) {
        return 0;
    }
    int_rank(&alg.ad_matrix_int(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub components: BTreeMap<Q, Vec<usize>>,
}

impl GradedDecomposition {
    pub fn dims(&self) -> Vec<(Q, usize)> {
        self.components.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }
}

/// Eigenvalue of basis vectors under pairing with π_i: (π_i, α) for e_α, 0 on the Cartan part.
pub fn grade_by_fundamental(alg: &ChevalleyAlgebra, i: usize) -> Result<GradedDecomposition> {
    let l = alg.rank();
    if i == 0 || i > l {
        return Err(Error::Domain(format!("vertex {i} out of range for {}", alg.system.ty)));
    }
    let w = Weight::fundamental(l, i);
    let mut components: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    components.entry(Q::zero()).or_default().extend(0..l);
    for (k, r) in alg.roots.iter().enumerate() {
        components.entry(alg.system.weight_root_pairing(&w.marks, r)).or_default().push(k + l);
    }
    Ok(GradedDecomposition { components })
}

/// Inner product of weights given by marks: (π_i, π_j) = (A⁻¹)_{ij} |α_j|²/2.
pub fn weight_inner(sys: &RootSystem, a: &[i64], b: &[i64]) -> Q {
    let l = sys.rank();
    let cart: Vec<Vec<Q>> = sys.cartan.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let inv = crate::linalg::inverse(&cart).expect("Cartan matrix is invertible");
    let mut s = Q::zero();
    for i in 0..l {
        for j in 0..l {
            if a[i] != 0 && b[j] != 0 {
                s += q(a[i] * b[j]) * inv[i][j].clone() * sys.gram[j][j].clone() / q(2);
            }
        }
    }
    s
}

/// One v^λ + v^{wλ} representative per value of (λ, wλ), largest value first.
pub fn secant_orbit_reps(w: &Weight, sys: &RootSystem, cap: usize) -> Result<Vec<(Q, Weight)>> {
    let orbit = weyl_orbit_capped(w, sys, cap)?;
    let mut reps: BTreeMap<Q, Weight> = BTreeMap::new();
    for mu in orbit {
        let v = weight_inner(sys, &w.marks, &mu.marks);
        reps.entry(v).or_insert(mu);
    }
    Ok(reps.into_iter().rev().collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct E7Witness {
    /// −θ, α₁, α₂, α₃ in simple-root coordinates.
    pub quadruple: Vec<Vec<i64>>,
    /// Basis indices with coefficient 1.
    pub element: Vec<usize>,
    pub grading: Vec<(String, usize)>,
    pub root_vector_dim: usize,
    /// (inner product (α₁,α₂), set of orbit dims) over all α₂ in g₁.
    pub pair_dims: Vec<(String, Vec<usize>)>,
    pub witness_dim: usize,
    pub outside_secant: bool,
}

/// The 3A₁ element of the (E8, π₁) grading's degree-1 part.
pub fn e7_wild_witness(alg: &ChevalleyAlgebra) -> Result<E7Witness> {
    let sys = &alg.system;
    if sys.ty != SimpleType::e(8) {
        return Err(Error::Domain("the E7 witness lives in e8".into()));
    }
    let theta = sys.highest_root();
    let pi1 = Weight::fundamental(8, 1);
    if sys.root_marks(&theta) != pi1.marks {
        return Err(Error::Domain("highest root of E8 is not π₁ in this numbering".into()));
    }
    let grading = grade_by_fundamental(alg, 1)?;
    let g1: Vec<Vec<i64>> = sys.positive.iter().filter(|r| sys.inner(r, &theta) == q(1)).cloned().collect();
    let mut triple = None;
    'outer: for i in 0..g1.len() {
        for j in i + 1..g1.len() {
            if !sys.inner(&g1[i], &g1[j]).is_zero() {
                continue;
            }
            for k in j + 1..g1.len() {
                if sys.inner(&g1[i], &g1[k]).is_zero() && sys.inner(&g1[j], &g1[k]).is_zero() {
                    triple = Some([g1[i].clone(), g1[j].clone(), g1[k].clone()]);
                    break 'outer;
                }
            }
        }
    }
    let [a1, a2, a3] = triple.ok_or_else(|| Error::Domain("no orthogonal triple in g₁: root table bug".into()))?;
    let mtheta: Vec<i64> = theta.iter().map(|x| -x).collect();
    let quad = vec![mtheta, a1.clone(), a2.clone(), a3.clone()];
    let cartan: Vec<Vec<i64>> = quad
        .iter()
        .map(|x| quad.iter().map(|y| to_int(&(q(2) * sys.inner(x, y) / sys.norm(y)))).collect())
        .collect();
    match identify_diagram(&cartan) {
        Some((t, _)) if t.family == Family::D && t.rank == 4 => {}
        _ => return Err(Error::Domain("(−θ, α₁, α₂, α₃) is not a D4 simple system".into())),
    }
    let single = orbit_dim(alg, &alg.root_vector(&a1)?);
    let mut by_ip: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    let x1 = alg.root_vector(&a1)?;
    for b in &g1 {
        let ip = sys.inner(&a1, b);
        let x: Vec<Q> = x1.iter().zip(alg.root_vector(b)?).map(|(u, v)| u + v).collect();
        let d = if b == &a1 { orbit_dim(alg, &x1) } else { orbit_dim(alg, &x) };
        let e = by_ip.entry(ip).or_default();
        if !e.contains(&d) {
            e.push(d);
        }
    }
    let element: Vec<usize> = [&a1, &a2, &a3].iter().map(|r| alg.root_basis_index(r).unwrap()).collect();
    let mut x = vec![Q::zero(); alg.dim()];
    for &i in &element {
        x[i] = Q::one();
    }
    let witness_dim = orbit_dim(alg, &x);
    let mut seen: Vec<usize> = by_ip.values().flatten().copied().collect();
    seen.push(single);
    Ok(E7Witness {
        quadruple: quad,
        element,
        grading: grading.dims().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        root_vector_dim: single,
        pair_dims: by_ip.into_iter().rev().map(|(k, v)| (k.to_string(), v)).collect(),
        witness_dim,
        outside_secant: !seen.contains(&witness_dim),
    })
}

/// Parse `e(1,0,...)`, `-2*e(0,1,...)`, `3/2*h4` terms joined by `+`.
pub fn parse_element(alg: &ChevalleyAlgebra, s: &str) -> Result<Vec<Q>> {
    let mut x = vec![Q::zero(); alg.dim()];
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, body) = match term.split_once('*') {
            Some((c, b)) => (crate::scalar::q_from_str(c).map_err(Error::Parse)?, b.trim()),
            None if term.starts_with('-') => (q(-1), term[1..].trim()),
            None => (q(1), term),
        };
        let idx = if let Some(rest) = body.strip_prefix('h') {
            let i: usize = rest.trim().parse().map_err(|_| Error::Parse(format!("bad Cartan index in '{term}'")))?;
            if i == 0 || i > alg.rank() {
                return Err(Error::Domain(format!("h{i} out of range")));
            }
            i - 1
        } else if let Some(rest) = body.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
            let c: Vec<i64> = rest
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad root in '{term}'"))))
                .collect::<Result<_>>()?;
            if c.len() != alg.rank() {
                return Err(Error::Parse(format!("root in '{term}' needs {} coefficients", alg.rank())));
            }
            alg.root_basis_index(&c).ok_or_else(|| Error::Domain(format!("{c:?} is not a root")))?
        } else {
            return Err(Error::Parse(format!("cannot parse term '{term}'")));
        };
        x[idx] += coef;
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentPartition {
    pub parts: Vec<usize>,
}

impl NilpotentPartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        NilpotentPartition { parts }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Orthogonal partitions: even parts occur with even multiplicity.
    pub fn is_orthogonal(&self) -> bool {
        self.parts.iter().filter(|p| *p % 2 == 0).all(|p| self.parts.iter().filter(|x| *x == p).count() % 2 == 0)
    }
}

pub fn partition_im_stats(p: &NilpotentPartition) -> (usize, usize) {
    let dim = p.parts.iter().map(|&d| d.saturating_sub(1)).sum();
    let rk = p.parts.iter().map(|&d| d.saturating_sub(2)).sum();
    (dim, rk)
}

/// (dim Im ω, rk Im ω) for a skew matrix ω read as a map V* → V, with `g` the form on V.
pub fn skew_im_stats<F: Scalar>(omega: &[Vec<F>], g: &[Vec<F>]) -> (usize, usize) {
    let cols = transpose(omega);
    let basis = span_basis(&cols);
    let gram: Vec<Vec<F>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| crate::linalg::form(g, u, v)).collect())
        .collect();
    (basis.len(), if basis.is_empty() { 0 } else { rank(&gram) })
}

/// Nilpotent x ∈ so(n) with the given partition, its form G, and the coform W = x·G⁻¹.
/// Odd parts d get a basis e₁..e_d with B(e_i, e_j) = (−1)^i δ_{i+j,d+1};
/// equal even parts d, d get e's and f's with B(e_i, f_j) = (−1)^i δ_{i+j,d+1}; x e_i = e_{i+1}.
pub fn nilpotent_realization(p: &NilpotentPartition) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>, Vec<Vec<Q>>)> {
    if !p.is_orthogonal() {
        return Err(Error::Domain(format!("{:?} is not an orthogonal partition", p.parts)));
    }
    let n = p.size();
    let mut g = vec![vec![Q::zero(); n]; n];
    let mut x = vec![vec![Q::zero(); n]; n];
    let sgn = |i: usize| if i % 2 == 0 { q(1) } else { q(-1) };
    let mut off = 0;
    let mut k = 0;
    while k < p.parts.len() {
        let d = p.parts[k];
        if d % 2 == 1 {
            for i in 1..=d {
                g[off + i - 1][off + d - i] = sgn(i);
                if i < d {
                    x[off + i][off + i - 1] = q(1);
                }
            }
            off += d;
            k += 1;
        } else {
            let (e, f) = (off, off + d);
            for i in 1..=d {
                g[e + i - 1][f + d - i] = sgn(i);
                g[f + d - i][e + i - 1] = sgn(i);
                if i < d {
                    x[e + i][e + i - 1] = q(1);
                    x[f + i][f + i - 1] = q(1);
                }
            }
            off += 2 * d;
            k += 2;
        }
    }
    let ginv = crate::linalg::inverse(&g).expect("nondegenerate");
    let w = crate::linalg::matmul(&x, &ginv);
    Ok((x, g, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairCase {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl PairCase {
    pub fn from_stats(s: (usize, usize)) -> Option<PairCase> {
        Some(match s {
            (4, 4) => PairCase::A,
            (4, 2) => PairCase::B,
            (4, 0) => PairCase::C,
            (2, 1) => PairCase::D,
            (2, 0) => PairCase::E,
            (0, 0) => PairCase::F,
            _ => return None,
        })
    }

    pub fn label(self) -> char {
        match self {
            PairCase::A => 'a',
            PairCase::B => 'b',
            PairCase::C => 'c',
            PairCase::D => 'd',
            PairCase::E => 'e',
            PairCase::F => 'f',
        }
    }
}

/// u∧v as a skew matrix: u vᵀ − v uᵀ.
pub fn wedge2<F: Scalar>(u: &[F], v: &[F]) -> Vec<Vec<F>> {
    (0..u.len())
        .map(|i| (0..u.len()).map(|j| u[i].clone() * v[j].clone() - v[i].clone() * u[j].clone()).collect())
        .collect()
}

/// Case of x₁∧x₂ + y₁∧y₂ in the table of isotropic-plane pairs.
pub fn isotropic_pair_case<F: Scalar>(x1: &[F], x2: &[F], y1: &[F], y2: &[F], g: &[Vec<F>]) -> Result<PairCase> {
    use crate::linalg::form;
    for (a, b) in [(x1, x2), (y1, y2)] {
        if rank(&[a.to_vec(), b.to_vec()]) != 2 {
            return Err(Error::Domain("plane is not 2-dimensional".into()));
        }
        if !form(g, a, a).is_nil() || !form(g, b, b).is_nil() || !form(g, a, b).is_nil() {
            return Err(Error::Domain("plane is not isotropic".into()));
        }
    }
    let w1 = wedge2(x1, x2);
    let w2 = wedge2(y1, y2);
    let w: Vec<Vec<F>> =
        w1.iter().zip(&w2).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.clone() + b.clone()).collect()).collect();
    let stats = skew_im_stats(&w, g);
    PairCase::from_stats(stats).ok_or_else(|| Error::Domain(format!("stats {stats:?} outside the pair table")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sl2_relations() {
        let a = build_chevalley(SimpleType::a(1)).unwrap();
        assert_eq!(a.dim(), 3);
        // basis: h, e, f
        assert_eq!(a.bracket_basis(1, 2), vec![(0, 1)]);
        assert_eq!(a.bracket_basis(0, 1), vec![(1, 2)]);
        assert_eq!(a.bracket_basis(0, 2), vec![(2, -2)]);
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for ty in [SimpleType::a(3), SimpleType::b(3), SimpleType::c(3), SimpleType::g2(), SimpleType::d(4)] {
            let a = build_chevalley(ty).unwrap();
            let n = a.dim();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        assert!(a.jacobi_holds(i, j, k), "{ty} {i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn constants_are_p_plus_one() {
        let a = build_chevalley(SimpleType::g2()).unwrap();
        assert_eq!(a.dim(), 14);
        let vals: std::collections::BTreeSet<i64> =
            (0..12).flat_map(|i| (0..12).map(move |j| (i, j))).map(|(i, j)| a.structure_constant(i, j).abs()).collect();
        assert_eq!(vals.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn sign_convention_independence() {
        let a = build_chevalley(SimpleType::a(3)).unwrap();
        let b = build_chevalley_with_sign(SimpleType::a(3), -1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let x: Vec<Q> = (0..a.dim()).map(|_| if rng.gen_bool(0.3) { q(rng.gen_range(-2..3)) } else { q(0) }).collect();
            assert_eq!(orbit_dim(&a, &x), orbit_dim(&b, &x));
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                for k in 0..b.dim() {
                    assert!(b.jacobi_holds(i, j, k));
                }
            }
        }
    }

    #[test]
    fn gradings() {
        let a = build_chevalley(SimpleType::a(2)).unwrap();
        let g = grade_by_fundamental(&a, 1).unwrap();
        assert_eq!(g.dims(), vec![(q(-1), 2), (q(0), 4), (q(1), 2)]);
        assert!(grade_by_fundamental(&a, 3).is_err());
    }

    #[test]
    fn orbit_dims_small() {
        let a = build_chevalley(SimpleType::a(2)).unwrap();
        // minimal nilpotent orbit of sl3 has dim 4, regular nilpotent 6
        let e = a.root_vector(&[1, 1]).unwrap();
        assert_eq!(orbit_dim(&a, &e), 4);
        let reg: Vec<Q> = a.root_vector(&[1, 0]).unwrap().iter().zip(a.root_vector(&[0, 1]).unwrap()).map(|(x, y)| x + y).collect();
        assert_eq!(orbit_dim(&a, &reg), 6);
        assert_eq!(orbit_dim(&a, &vec![q(0); 8]), 0);
    }

    #[test]
    fn conjugation_invariance() {
        let a = build_chevalley(SimpleType::b(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x: Vec<Q> = (0..a.dim()).map(|_| if rng.gen_bool(0.2) { q(rng.gen_range(-2..3)) } else { q(0) }).collect();
            let r = rng.gen_range(0..a.roots.len());
            let y = a.exp_ad(r, &q(rng.gen_range(1..4)), &x);
            assert_eq!(orbit_dim(&a, &x), orbit_dim(&a, &y));
        }
    }

    #[test]
    fn parse_elements() {
        let a = build_chevalley(SimpleType::a(2)).unwrap();
        let x = parse_element(&a, "e(1,0) + -2*e(0,1) + 1/2*h1").unwrap();
        assert_eq!(x[0], crate::scalar::qf(1, 2));
        assert!(parse_element(&a, "e(2,0)").is_err());
        assert!(parse_element(&a, "x7").is_err());
    }

    #[test]
    fn partition_stats() {
        let p = |v: Vec<usize>| partition_im_stats(&NilpotentPartition::new(v));
        assert_eq!(p(vec![3, 3, 1, 1, 1]), (4, 2));
        assert_eq!(p(vec![2, 2, 1, 1]), (2, 0));
        assert_eq!(p(vec![1; 6]), (0, 0));
    }

    #[test]
    fn realizations_match_formula() {
        for parts in [vec![3, 1, 1, 1], vec![5, 3, 3, 2, 2, 1], vec![2, 2, 2, 2, 1], vec![4, 4, 1], vec![7]] {
            let p = NilpotentPartition::new(parts);
            let (x, g, w) = nilpotent_realization(&p).unwrap();
            let n = p.size();
            // x is skew for g and w is skew
            let xt = transpose(&x);
            let lhs = crate::linalg::matmul(&xt, &g);
            let rhs = crate::linalg::matmul(&g, &x);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(lhs[i][j].clone() + rhs[i][j].clone(), q(0));
                    assert_eq!(w[i][j].clone(), -w[j][i].clone());
                }
            }
            assert_eq!(skew_im_stats(&w, &g), partition_im_stats(&p));
        }
        assert!(nilpotent_realization(&NilpotentPartition::new(vec![2, 1])).is_err());
    }

    #[test]
    fn pair_cases() {
        // split form on F^4: (e1,f1,e2,f2)
        let g: Vec<Vec<Q>> = (0..4).map(|i| (0..4).map(|j| if i ^ 1 == j { q(1) } else { q(0) }).collect()).collect();
        let v = |a: [i64; 4]| a.iter().map(|&t| q(t)).collect::<Vec<Q>>();
        let (e1, f1, e2, f2) = (v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([0, 0, 1, 0]), v([0, 0, 0, 1]));
        assert_eq!(isotropic_pair_case(&e1, &e2, &e1, &e2, &g).unwrap(), PairCase::E);
        let m: Vec<Q> = e2.iter().map(|x| -x.clone()).collect();
        assert_eq!(isotropic_pair_case(&e1, &e2, &e1, &m, &g).unwrap(), PairCase::F);
        assert_eq!(isotropic_pair_case(&e1, &e2, &f1, &f2, &g).unwrap(), PairCase::A);
        assert!(isotropic_pair_case(&e1, &f1, &e2, &f2, &g).is_err());
        assert_eq!(skew_im_stats(&wedge2(&e1, &e2), &g), (2, 0));
    }

    #[test]
    fn e8_numerology() {
        let a = build_chevalley(SimpleType::e(8)).unwrap();
        assert_eq!(a.dim(), 248);
        let g = grade_by_fundamental(&a, 1).unwrap();
        assert_eq!(g.dims().iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 56, 134, 56, 1]);
        let w = e7_wild_witness(&a).unwrap();
        assert_eq!(w.root_vector_dim, 58);
        assert_eq!(w.witness_dim, 112);
        assert!(w.outside_secant);
        let dims: Vec<(String, Vec<usize>)> = w.pair_dims.clone();
        assert_eq!(
            dims,
            vec![("2".into(), vec![58]), ("1".into(), vec![58]), ("0".into(), vec![92]), ("-1".into(), vec![114])]
        );
    }

    #[test]
    fn orbit_reps() {
        let sys = build_root_system(SimpleType::a(1)).unwrap();
        let r = secant_orbit_reps(&Weight::fundamental(1, 1), &sys, 100).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].1.marks, vec![-1]);
        let sys = build_root_system(SimpleType::b(2)).unwrap();
        let r = secant_orbit_reps(&Weight::fundamental(2, 1), &sys, 100).unwrap();
        assert_eq!(r.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), vec![q(1), q(0), q(-1)]);
    }
}
