//! Root systems, Dynkin diagrams and weights, numbered in the VO convention.
//!
//! A, B, C, D agree with Bourbaki. For the exceptional types the VO labels are:
//!
//! | type | VO diagram                         | VO i -> Bourbaki |
//! |------|------------------------------------|------------------|
//! | E6   | chain 1-2-3-4-5, 6 attached to 3   | 1 3 4 5 6 2      |
//! | E7   | chain 1-...-6, 7 attached to 4     | 7 6 5 4 3 1 2    |
//! | E8   | chain 1-...-7, 8 attached to 5     | 8 7 6 5 4 3 1 2  |
//! | F4   | 1 = 2 => 3 = 4, vertices 1,2 short | 4 3 2 1          |
//! | G2   | vertex 1 short                     | 1 2              |
//!
//! So E6 π₁, π₅ are the 27-dim weights, E7 π₁ is the 56-dim one, E8 π₁ and
//! F4 π₄ are adjoint, F4 π₁ is 26-dim and G2 π₁ is 7-dim.

use crate::error::{Error, Result};
use crate::scalar::{q, qf, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Domain(format!("unsupported rank {rank} for family {family:?}")));
        }
        Ok(SimpleType { family, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).unwrap()
    }
    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).unwrap()
    }
    pub fn c(n: usize) -> Self {
        Self::new(Family::C, n).unwrap()
    }
    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).unwrap()
    }
    pub fn e(n: usize) -> Self {
        Self::new(Family::E, n).unwrap()
    }
    pub fn f4() -> Self {
        Self::new(Family::F, 4).unwrap()
    }
    pub fn g2() -> Self {
        Self::new(Family::G, 2).unwrap()
    }

    /// Simple types up to isomorphism with rank ≤ max (B2 = C2 and D3 = A3 skipped).
    pub fn all_up_to(max: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for n in 1..=max {
            out.push(Self::a(n));
        }
        for n in 3..=max {
            out.push(Self::b(n));
        }
        for n in 2..=max {
            out.push(Self::c(n));
        }
        for n in 4..=max {
            out.push(Self::d(n));
        }
        for n in 6..=max.min(8) {
            out.push(Self::e(n));
        }
        if max >= 4 {
            out.push(Self::f4());
        }
        if max >= 2 {
            out.push(Self::g2());
        }
        out
    }

    /// Simple roots in ε-coordinates, VO order, and the factor s with (x,y) = s·x·y.
    pub fn simple_roots_eps(&self) -> (Vec<Vec<Q>>, Q) {
        let n = self.rank;
        let unit = |dim: usize, pairs: &[(usize, i64)]| -> Vec<Q> {
            let mut v = vec![Q::zero(); dim];
            for &(i, c) in pairs {
                v[i] = q(c);
            }
            v
        };
        let chain = |dim: usize, k: usize| -> Vec<Vec<Q>> { (0..k).map(|i| unit(dim, &[(i, 1), (i + 1, -1)])).collect() };
        match self.family {
            Family::A => (chain(n + 1, n), Q::one()),
            Family::B => {
                let mut r = chain(n, n - 1);
                r.push(unit(n, &[(n - 1, 1)]));
                (r, Q::one())
            }
            Family::C => {
                let mut r = chain(n, n - 1);
                r.push(unit(n, &[(n - 1, 2)]));
                (r, qf(1, 2))
            }
            Family::D => {
                let mut r = chain(n, n - 1);
                r.push(unit(n, &[(n - 2, 1), (n - 1, 1)]));
                (r, Q::one())
            }
            Family::E => {
                let h = qf(1, 2);
                let mut b1 = vec![-h.clone(); 8];
                b1[0] = h.clone();
                b1[7] = h;
                let bourbaki = [
                    b1,
                    unit(8, &[(0, 1), (1, 1)]),
                    unit(8, &[(1, 1), (0, -1)]),
                    unit(8, &[(2, 1), (1, -1)]),
                    unit(8, &[(3, 1), (2, -1)]),
                    unit(8, &[(4, 1), (3, -1)]),
                    unit(8, &[(5, 1), (4, -1)]),
                    unit(8, &[(6, 1), (5, -1)]),
                ];
                let order = self.bourbaki_labels();
                (order.iter().map(|&b| bourbaki[b - 1].clone()).collect(), Q::one())
            }
            Family::F => {
                let h = qf(1, 2);
                let bourbaki = [
                    unit(4, &[(1, 1), (2, -1)]),
                    unit(4, &[(2, 1), (3, -1)]),
                    unit(4, &[(3, 1)]),
                    vec![h.clone(), -h.clone(), -h.clone(), -h],
                ];
                (self.bourbaki_labels().iter().map(|&b| bourbaki[b - 1].clone()).collect(), Q::one())
            }
            Family::G => (vec![unit(3, &[(0, 1), (1, -1)]), unit(3, &[(0, -2), (1, 1), (2, 1)])], qf(1, 3)),
        }
    }

    /// VO vertex i (1-based position) -> Bourbaki label.
    pub fn bourbaki_labels(&self) -> Vec<usize> {
        match (self.family, self.rank) {
            (Family::E, 6) => vec![1, 3, 4, 5, 6, 2],
            (Family::E, 7) => vec![7, 6, 5, 4, 3, 1, 2],
            (Family::E, 8) => vec![8, 7, 6, 5, 4, 3, 1, 2],
            (Family::F, 4) => vec![4, 3, 2, 1],
            _ => (1..=self.rank).collect(),
        }
    }

    /// Cartan matrix A[i][j] = ⟨α_i, α_j∨⟩.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let (s, scale) = self.simple_roots_eps();
        let g: Vec<Vec<Q>> = s.iter().map(|a| s.iter().map(|b| eps_dot(a, b) * scale.clone()).collect()).collect();
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        let v = q(2) * g[i][j].clone() / g[j][j].clone();
                        assert!(v.is_integer());
                        v.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn weyl_group_order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        let n = self.rank;
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Diagram automorphisms as vertex permutations (0-based images).
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let id: Vec<usize> = (0..n).collect();
        let mut out = vec![id.clone()];
        match self.family {
            Family::A if n > 1 => out.push((0..n).rev().collect()),
            Family::D if n == 4 => {
                // triality permutes the three leaves 0, 2, 3 around vertex 1
                let leaves = [0usize, 2, 3];
                for p in permutations(&leaves) {
                    if p == leaves {
                        continue;
                    }
                    let mut m = id.clone();
                    for (k, &l) in leaves.iter().enumerate() {
                        m[l] = p[k];
                    }
                    out.push(m);
                }
            }
            Family::D if n > 4 => {
                let mut m = id.clone();
                m.swap(n - 2, n - 1);
                out.push(m);
            }
            Family::E if n == 6 => out.push(vec![4, 3, 2, 1, 0, 5]),
            _ => {}
        }
        out
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

fn eps_dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: SimpleType,
    pub simple_eps: Vec<Vec<Q>>,
    pub scale: Q,
    /// (α_i, α_j) for simple roots.
    pub gram: Vec<Vec<Q>>,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    pub positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

pub fn build_root_system(ty: SimpleType) -> Result<RootSystem> {
    let ty = SimpleType::new(ty.family, ty.rank)?;
    let (simple_eps, scale) = ty.simple_roots_eps();
    let n = ty.rank;
    let gram: Vec<Vec<Q>> =
        simple_eps.iter().map(|a| simple_eps.iter().map(|b| eps_dot(a, b) * scale.clone()).collect()).collect();
    let cartan = ty.cartan();

    // positive roots by height, using root strings
    let mut positive: Vec<Vec<i64>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let mut known: HashSet<Vec<i64>> = positive.iter().cloned().collect();
    let mut layer = positive.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut qdown = 0;
                let mut b = beta.clone();
                loop {
                    b[i] -= 1;
                    if known.contains(&b) {
                        qdown += 1;
                    } else {
                        break;
                    }
                }
                if qdown - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        positive.extend(next.iter().cloned());
        layer = next;
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then(a.cmp(b))
    });
    let mut sys = RootSystem { ty, simple_eps, scale, gram, cartan, positive, index: HashMap::new() };
    let all = sys.roots();
    sys.index = all.into_iter().enumerate().map(|(i, r)| (r, i)).collect();
    Ok(sys)
}

fn unit_vec(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// All roots: positives followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut r = self.positive.clone();
        r.extend(self.positive.iter().map(|a| a.iter().map(|x| -x).collect::<Vec<_>>()));
        r
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Index into `roots()`.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.index.contains_key(coeffs)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    s += &self.gram[i][j] * q(a[i] * b[j]);
                }
            }
        }
        s
    }

    pub fn norm(&self, a: &[i64]) -> Q {
        self.inner(a, a)
    }

    pub fn to_eps(&self, coeffs: &[i64]) -> Vec<Q> {
        let dim = self.simple_eps[0].len();
        let mut v = vec![Q::zero(); dim];
        for (c, s) in coeffs.iter().zip(&self.simple_eps) {
            if *c != 0 {
                for k in 0..dim {
                    v[k] += q(*c) * &s[k];
                }
            }
        }
        v
    }

    /// ⟨β, α_i∨⟩ for every i: the fundamental-weight marks of β.
    pub fn root_marks(&self, coeffs: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| coeffs[j] * self.cartan[j][i]).sum()).collect()
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.positive.last().unwrap().clone()
    }

    pub fn is_long(&self, coeffs: &[i64]) -> bool {
        self.norm(coeffs) == q(2)
    }

    /// (λ, α) for λ given by marks: Σ λ_i (π_i, α) with (π_i, α_j) = δ_ij |α_j|²/2.
    pub fn weight_root_pairing(&self, marks: &[i64], coeffs: &[i64]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank() {
            s += q(marks[i] * coeffs[i]) * self.gram[i][i].clone() / q(2);
        }
        s
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, marks: &[i64]) -> Q {
        let mut num = Q::one();
        let mut den = Q::one();
        for a in &self.positive {
            let na = self.norm(a);
            let mut x = Q::zero();
            let mut r = Q::zero();
            for i in 0..self.rank() {
                let w = q(a[i]) * self.gram[i][i].clone() / na.clone();
                x += w.clone() * q(marks[i] + 1);
                r += w;
            }
            num *= x;
            den *= r;
        }
        num / den
    }

    pub fn reflect_weight(&self, marks: &[i64], i: usize) -> Vec<i64> {
        let li = marks[i];
        (0..self.rank()).map(|j| marks[j] - li * self.cartan[i][j]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub marks: Vec<i64>,
}

impl Weight {
    pub fn new(marks: Vec<i64>) -> Self {
        Weight { marks }
    }
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut m = vec![0; rank];
        m[i - 1] = 1;
        Weight { marks: m }
    }
    pub fn is_dominant(&self) -> bool {
        self.marks.iter().all(|&m| m >= 0)
    }
    pub fn is_zero(&self) -> bool {
        self.marks.iter().all(|&m| m == 0)
    }
    pub fn height(&self) -> i64 {
        self.marks.iter().sum()
    }
    /// Some(i) (1-based) when this is π_i.
    pub fn fundamental_index(&self) -> Option<usize> {
        if self.height() == 1 && self.is_dominant() {
            self.marks.iter().position(|&m| m == 1).map(|i| i + 1)
        } else {
            None
        }
    }
}

pub fn height(w: &Weight) -> i64 {
    w.height()
}

pub fn weyl_orbit(w: &Weight, sys: &RootSystem) -> Result<Vec<Weight>> {
    weyl_orbit_capped(w, sys, DEFAULT_ORBIT_CAP)
}

pub fn weyl_orbit_capped(w: &Weight, sys: &RootSystem, cap: usize) -> Result<Vec<Weight>> {
    if w.marks.len() != sys.rank() {
        return Err(Error::Domain(format!("weight has {} marks, {} expects {}", w.marks.len(), sys.ty, sys.rank())));
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(w.marks.clone());
    queue.push_back(w.marks.clone());
    while let Some(m) = queue.pop_front() {
        order.push(Weight::new(m.clone()));
        for i in 0..sys.rank() {
            if m[i] == 0 {
                continue;
            }
            let r = sys.reflect_weight(&m, i);
            if seen.insert(r.clone()) {
                if seen.len() > cap {
                    return Err(Error::Resource(format!("Weyl orbit exceeds cap {cap}")));
                }
                queue.push_back(r);
            }
        }
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub ty: SimpleType,
    pub weight: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub factors: Vec<Factor>,
}

impl GroupDescriptor {
    pub fn simple(ty: SimpleType, marks: Vec<i64>) -> Self {
        GroupDescriptor { factors: vec![Factor { ty, weight: Weight::new(marks) }] }
    }

    pub fn fundamental(ty: SimpleType, i: usize) -> Self {
        GroupDescriptor { factors: vec![Factor { ty, weight: Weight::fundamental(ty.rank, i) }] }
    }

    pub fn height(&self) -> i64 {
        self.factors.iter().map(|f| f.weight.height()).sum()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |m: &str| Error::Parse(format!("{m} in descriptor '{s}'"));
        let open = s.find('[').ok_or_else(|| bad("missing '['"))?;
        if !s.ends_with(']') {
            return Err(bad("missing trailing ']'"));
        }
        let types: Vec<&str> = s[..open].split(['x', '×']).collect();
        let marks: Vec<&str> = s[open + 1..s.len() - 1].split('|').collect();
        if types.len() != marks.len() {
            return Err(bad(&format!("{} factors but {} mark groups", types.len(), marks.len())));
        }
        let mut factors = Vec::new();
        for (t, m) in types.iter().zip(marks) {
            let ty = parse_type(t)?;
            let ms: Vec<i64> = if m.is_empty() {
                vec![]
            } else {
                m.split(',').map(|x| x.parse::<i64>().map_err(|_| bad(&format!("bad mark '{x}'")))).collect::<Result<_>>()?
            };
            if ms.len() != ty.rank {
                return Err(bad(&format!("{ty} needs {} marks, got {}", ty.rank, ms.len())));
            }
            if ms.iter().any(|&x| x < 0) {
                return Err(bad("negative mark (weights must be dominant)"));
            }
            factors.push(Factor { ty, weight: Weight::new(ms) });
        }
        Ok(GroupDescriptor { factors })
    }
}

pub fn parse_type(t: &str) -> Result<SimpleType> {
    let mut chars = t.chars();
    let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        Some('D') => Family::D,
        Some('E') => Family::E,
        Some('F') => Family::F,
        Some('G') => Family::G,
        _ => return Err(Error::Parse(format!("unknown family in '{t}'"))),
    };
    let n: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in '{t}'")))?;
    SimpleType::new(fam, n).map_err(|e| Error::Parse(e.to_string()))
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let types: Vec<String> = self.factors.iter().map(|x| x.ty.to_string()).collect();
        let marks: Vec<String> = self
            .factors
            .iter()
            .map(|x| x.weight.marks.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}[{}]", types.join("x"), marks.join("|"))
    }
}

/// Low-rank coincidences and removal of trivially acting factors.
pub fn canonicalize(g: &GroupDescriptor) -> GroupDescriptor {
    let mut out = Vec::new();
    for fac in &g.factors {
        let m = &fac.weight.marks;
        let push = |out: &mut Vec<Factor>, ty: SimpleType, marks: Vec<i64>| {
            out.push(Factor { ty, weight: Weight::new(marks) });
        };
        match (fac.ty.family, fac.ty.rank) {
            (Family::B, 1) | (Family::C, 1) => push(&mut out, SimpleType::a(1), m.clone()),
            (Family::D, 2) => {
                push(&mut out, SimpleType::a(1), vec![m[0]]);
                push(&mut out, SimpleType::a(1), vec![m[1]]);
            }
            // D3: the vector vertex 1 sits between the spins 2 and 3
            (Family::D, 3) => push(&mut out, SimpleType::a(3), vec![m[1], m[0], m[2]]),
            (Family::B, 2) => push(&mut out, SimpleType::c(2), vec![m[1], m[0]]),
            _ => push(&mut out, fac.ty, m.clone()),
        }
    }
    out.retain(|f| !f.weight.is_zero());
    GroupDescriptor { factors: out }
}

/// Build a GroupDescriptor admitting the low-rank types that SimpleType::new rejects.
pub fn descriptor_with_low_rank(family: Family, rank: usize, marks: Vec<i64>) -> GroupDescriptor {
    GroupDescriptor { factors: vec![Factor { ty: SimpleType { family, rank }, weight: Weight::new(marks) }] }
}

/// Identify a connected Cartan matrix; returns the type and a map sub-vertex -> VO vertex (0-based).
pub fn identify_diagram(cartan: &[Vec<i64>]) -> Option<(SimpleType, Vec<usize>)> {
    let r = cartan.len();
    let mut candidates = vec![SimpleType::a(r)];
    if r >= 2 {
        candidates.push(SimpleType::c(r));
    }
    if r >= 3 {
        candidates.push(SimpleType::b(r));
    }
    if r >= 4 {
        candidates.push(SimpleType::d(r));
    }
    if (6..=8).contains(&r) {
        candidates.push(SimpleType::e(r));
    }
    if r == 4 {
        candidates.push(SimpleType::f4());
    }
    if r == 2 {
        candidates.push(SimpleType::g2());
    }
    for ty in candidates {
        let target = ty.cartan();
        let mut map = vec![usize::MAX; r];
        let mut used = vec![false; r];
        if match_cartan(cartan, &target, 0, &mut map, &mut used) {
            return Some((ty, map));
        }
    }
    None
}

fn match_cartan(a: &[Vec<i64>], t: &[Vec<i64>], i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let r = a.len();
    if i == r {
        return true;
    }
    for cand in 0..r {
        if used[cand] || a[i][i] != t[cand][cand] {
            continue;
        }
        let ok = (0..i).all(|j| a[i][j] == t[cand][map[j]] && a[j][i] == t[map[j]][cand]);
        if ok {
            map[i] = cand;
            used[cand] = true;
            if match_cartan(a, t, i + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

/// Equality of single-factor descriptors up to diagram automorphisms.
pub fn same_up_to_automorphism(ty: SimpleType, a: &[i64], b: &[i64]) -> bool {
    ty.automorphisms().iter().any(|p| (0..ty.rank).all(|i| a[i] == b[p[i]]))
}
