//! Octonions over any scalar field, from an integer multiplication table.

use crate::scalar::Scalar;

pub type Oct<F> = [F; 8];

/// e_i e_j = sign · e_k, stored as (sign, k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctTable {
    pub name: &'static str,
    pub mul: [[(i8, u8); 8]; 8],
    /// n(e_k) = e_k ē_k.
    pub norm: [i8; 8],
}

fn cd_conj(a: &[i64]) -> Vec<i64> {
    let mut c: Vec<i64> = a.iter().map(|x| -x).collect();
    c[0] = a[0];
    c
}

/// Cayley–Dickson: (a,b)(c,d) = (ac + γ d̄b, da + b c̄).
fn cd_mul(a: &[i64], b: &[i64], gammas: &[i64]) -> Vec<i64> {
    if a.len() == 1 {
        return vec![a[0] * b[0]];
    }
    let h = a.len() / 2;
    let g = gammas[gammas.len() - 1];
    let sub = &gammas[..gammas.len() - 1];
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    let t1 = cd_mul(a1, b1, sub);
    let t2 = cd_mul(&cd_conj(b2), a2, sub);
    let t3 = cd_mul(b2, a1, sub);
    let t4 = cd_mul(a2, &cd_conj(b1), sub);
    let mut out: Vec<i64> = t1.iter().zip(&t2).map(|(x, y)| x + g * y).collect();
    out.extend(t3.iter().zip(&t4).map(|(x, y)| x + y));
    out
}

fn table_from(name: &'static str, f: impl Fn(usize, usize) -> Vec<i64>) -> OctTable {
    let mut mul = [[(0i8, 0u8); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let p = f(i, j);
            let k = p.iter().position(|&x| x != 0).expect("basis product is nonzero");
            assert!(p.iter().filter(|&&x| x != 0).count() == 1 && p[k].abs() == 1);
            mul[i][j] = (p[k] as i8, k as u8);
        }
    }
    let mut norm = [0i8; 8];
    for k in 0..8 {
        // e_k ē_k: ē_0 = e_0, ē_k = −e_k
        let (s, idx) = mul[k][k];
        assert_eq!(idx, 0);
        norm[k] = if k == 0 { s } else { -s };
    }
    OctTable { name, mul, norm }
}

fn unit(i: usize) -> Vec<i64> {
    let mut v = vec![0; 8];
    v[i] = 1;
    v
}

impl OctTable {
    /// Split octonions: Cayley–Dickson with γ = (−1, −1, +1). Norm signature (4,4).
    pub fn split() -> Self {
        table_from("split", |i, j| cd_mul(&unit(i), &unit(j), &[-1, -1, 1]))
    }

    /// Cayley octonions from the Fano plane: e_i e_{i+1} = e_{i+3} (indices mod 7, from 1).
    pub fn cayley() -> Self {
        let mut prod = vec![vec![vec![0i64; 8]; 8]; 8];
        for i in 0..8 {
            prod[0][i][i] = 1;
            prod[i][0][i] = 1;
        }
        for i in 1..8 {
            prod[i][i][0] = -1;
        }
        let m = |k: usize| (k - 1) % 7 + 1;
        for i in 1..8 {
            let (a, b, c) = (i, m(i + 1), m(i + 3));
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                prod[x][y][z] = 1;
                prod[y][x][z] = -1;
            }
        }
        table_from("cayley", |i, j| prod[i][j].clone())
    }

    pub fn mul<F: Scalar>(&self, u: &Oct<F>, v: &Oct<F>) -> Oct<F> {
        let mut out: Oct<F> = std::array::from_fn(|_| F::nil());
        for i in 0..8 {
            if u[i].is_nil() {
                continue;
            }
            for j in 0..8 {
                if v[j].is_nil() {
                    continue;
                }
                let (s, k) = self.mul[i][j];
                let t = u[i].clone() * v[j].clone();
                out[k as usize] = if s > 0 { out[k as usize].clone() + t } else { out[k as usize].clone() - t };
            }
        }
        out
    }

    /// ⟨u, v⟩ with ⟨u, u⟩ = n(u).
    pub fn ndot<F: Scalar>(&self, u: &Oct<F>, v: &Oct<F>) -> F {
        let mut s = F::nil();
        for k in 0..8 {
            let t = u[k].clone() * v[k].clone();
            s = if self.norm[k] > 0 { s + t } else { s - t };
        }
        s
    }

    pub fn n<F: Scalar>(&self, u: &Oct<F>) -> F {
        self.ndot(u, u)
    }

    /// Index of a basis unit with n(e_k) = −1, if the table is split.
    pub fn null_partner(&self) -> Option<usize> {
        (1..8).find(|&k| self.norm[k] < 0)
    }
}

pub fn conj<F: Scalar>(u: &Oct<F>) -> Oct<F> {
    std::array::from_fn(|k| if k == 0 { u[0].clone() } else { -u[k].clone() })
}

pub fn oadd<F: Scalar>(u: &Oct<F>, v: &Oct<F>) -> Oct<F> {
    std::array::from_fn(|k| u[k].clone() + v[k].clone())
}

pub fn osub<F: Scalar>(u: &Oct<F>, v: &Oct<F>) -> Oct<F> {
    std::array::from_fn(|k| u[k].clone() - v[k].clone())
}

pub fn oscale<F: Scalar>(c: &F, u: &Oct<F>) -> Oct<F> {
    std::array::from_fn(|k| c.clone() * u[k].clone())
}

pub fn ozero<F: Scalar>() -> Oct<F> {
    std::array::from_fn(|_| F::nil())
}

/// Trace t(u) = u + ū.
pub fn otrace<F: Scalar>(u: &Oct<F>) -> F {
    u[0].clone() + u[0].clone()
}
