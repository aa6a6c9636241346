//! Derivations of the Albert algebra (a copy of f₄) and the tangent-line witness
//! for the 2-wildness of F4 on V(π₂) ⊂ Λ²V₂₆, searched over a prime field.

use super::{AlbertAlgebra, AlbertElement};
use crate::chevalley::{skew_im_stats, wedge2, PairCase};
use crate::error::{Error, Result};
use crate::linalg::{kernel, matmul, matvec, rank, Mat, Span};
use crate::scalar::{Fp, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Basis of span{[L_u, L_v]} as 27×27 matrices.
pub fn f4_derivations<F: Scalar>(alg: &AlbertAlgebra) -> Vec<Mat<F>> {
    let ops: Vec<Mat<F>> = (0..27).map(|i| alg.mult_operator(&AlbertElement::<F>::basis(i))).collect();
    let mut span = Span::new(27 * 27);
    let mut out = Vec::new();
    for i in 0..27 {
        for j in i + 1..27 {
            let (a, b) = (matmul(&ops[i], &ops[j]), matmul(&ops[j], &ops[i]));
            let c: Mat<F> = a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() - y.clone()).collect()).collect();
            let flat: Vec<F> = c.iter().flatten().cloned().collect();
            if span.insert(&flat) {
                out.push(c);
            }
        }
    }
    out
}

fn apply<F: Scalar>(d: &Mat<F>, x: &AlbertElement<F>) -> AlbertElement<F> {
    AlbertElement::from_slice(&matvec(d, &x.to_vec()))
}

/// Primes accepted by the witness search.
pub const WITNESS_PRIMES: &[u64] = &[53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct F4Witness {
    pub prime: u64,
    pub seed: u64,
    /// 27 residues each.
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    /// Coefficients of t in the derivation basis.
    pub t: Vec<u64>,
    pub stats: (usize, usize),
    /// rank of {D(x∧y)} over the derivation basis, and whether x∧y lies in it.
    pub tangent_rank: usize,
    pub omega_in_tangent: bool,
    pub derivations: usize,
    pub trials: usize,
    pub lines_tried: usize,
    pub outside_pair_table: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct F4SearchExhausted {
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub lines_tried: usize,
    pub stats_seen: Vec<((usize, usize), usize)>,
}

pub enum F4SearchOutcome {
    Found(F4Witness),
    Exhausted(F4SearchExhausted),
}

pub fn f4_pi2_witness_search(prime: u64, seed: u64, budget: usize) -> Result<F4SearchOutcome> {
    macro_rules! dispatch {
        ($($p:literal),*) => {
            match prime {
                $($p => search::<$p>(seed, budget),)*
                _ => Err(Error::Domain(format!(
                    "prime {prime} unsupported; choose an odd prime > 50 from {WITNESS_PRIMES:?}"
                ))),
            }
        };
    }
    dispatch!(53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127)
}

fn to_u64<const P: u64>(v: &[Fp<P>]) -> Vec<u64> {
    v.iter().map(|x| x.0).collect()
}

/// Isotropic pair x, y spanning a line of trace-zero rank-1 elements with x∧y ⊥ f₄.
/// x = (v, u, 0) in the frame of E₃ with u null and x# = 0; y = x + (w, 0, 0) with w null
/// and cut out linearly by x × (w,0,0) = 0 and ⟨Dx, (w,0,0)⟩ = 0 for every derivation D.
fn line_pair<const P: u64>(
    alg: &AlbertAlgebra,
    ders: &[Mat<Fp<P>>],
) -> Result<(AlbertElement<Fp<P>>, AlbertElement<Fp<P>>)> {
    let s = alg.table.null_partner().ok_or_else(|| Error::Domain("witness needs split octonions".into()))?;
    let mut u = [Fp::<P>(0); 8];
    u[0] = Fp(1);
    u[s] = Fp(1);
    let elem = |v: &[Fp<P>]| {
        let mut e = AlbertElement::<Fp<P>>::zero();
        e.o[0] = std::array::from_fn(|k| v[k]);
        e.o[1] = u;
        e
    };
    // v ↦ z-slot of elem(v)#: linear since the other slots of elem(v) are fixed
    let base = alg.sharp(&elem(&[Fp(0); 8])).o[2];
    let cols: Vec<Vec<Fp<P>>> = (0..8)
        .map(|k| {
            let mut v = [Fp(0); 8];
            v[k] = Fp(1);
            let z = alg.sharp(&elem(&v)).o[2];
            (0..8).map(|i| z[i] - base[i]).collect()
        })
        .collect();
    let ann = kernel(&crate::linalg::transpose(&cols), 8);
    let x = ann
        .iter()
        .map(|v| elem(v))
        .find(|e| alg.sharp(e).is_zero())
        .ok_or_else(|| Error::Domain("no rank-one point in the annihilator".into()))?;
    let dx: Vec<AlbertElement<Fp<P>>> = ders.iter().map(|d| apply(d, &x)).collect();
    let slot = |w: &[Fp<P>]| {
        let mut e = AlbertElement::<Fp<P>>::zero();
        e.o[0] = std::array::from_fn(|k| w[k]);
        e
    };
    let cols: Vec<Vec<Fp<P>>> = (0..8)
        .map(|k| {
            let mut w = [Fp(0); 8];
            w[k] = Fp(1);
            let e = slot(&w);
            let mut c = alg.cross(&x, &e).to_vec();
            c.extend(dx.iter().map(|d| alg.tform(d, &e)));
            c
        })
        .collect();
    let lin = kernel(&crate::linalg::transpose(&cols), 8);
    let null = |w: &[Fp<P>]| alg.table.n(&std::array::from_fn::<_, 8, _>(|k| w[k])).is_nil();
    let mut tries: Vec<Vec<Fp<P>>> = lin.clone();
    for a in &lin {
        for b in &lin {
            for c in 1..P {
                tries.push(a.iter().zip(b).map(|(p, q)| *p + Fp::<P>(c) * *q).collect());
            }
        }
    }
    for w in tries {
        if w.iter().all(|c| c.is_nil()) || !null(&w) {
            continue;
        }
        let y = x.add(&slot(&w));
        if alg.sharp(&y).is_zero() && rank(&[x.to_vec(), y.to_vec()]) == 2 {
            return Ok((x, y));
        }
    }
    Err(Error::Domain("no isotropic line orthogonal to f4 found".into()))
}

fn search<const P: u64>(seed: u64, budget: usize) -> Result<F4SearchOutcome> {
    let alg = AlbertAlgebra::split();
    let ders = f4_derivations::<Fp<P>>(&alg);
    let (x, y) = line_pair::<P>(&alg, &ders)?;
    let g = alg.tform_gram::<Fp<P>>();
    let ip = |a: &AlbertElement<Fp<P>>, b: &AlbertElement<Fp<P>>| alg.tform(a, b);

    // x, y isotropic, orthogonal, trace zero; x∧y orthogonal to the adjoint copy
    let checks = x.trace().is_nil()
        && y.trace().is_nil()
        && ip(&x, &x).is_nil()
        && ip(&y, &y).is_nil()
        && ip(&x, &y).is_nil()
        && ders.iter().all(|d| ip(&apply(d, &x), &y).is_nil());
    if !checks {
        return Err(Error::Domain("x∧y failed the V(π₂) membership checks".into()));
    }
    let xv = x.to_vec();
    let yv = y.to_vec();
    let omega = wedge2(&xv, &yv);
    let flat = |m: &Mat<Fp<P>>| -> Vec<Fp<P>> { (0..27).flat_map(|i| (i + 1..27).map(move |j| (i, j))).map(|(i, j)| m[i][j]).collect() };
    let mut tan = Span::new(351);
    for d in &ders {
        let dx = matvec(d, &xv);
        let dy = matvec(d, &yv);
        let m: Mat<Fp<P>> = wedge2(&dx, &yv).iter().zip(wedge2(&xv, &dy)).map(|(r, s)| r.iter().zip(s).map(|(a, b)| *a + b).collect()).collect();
        tan.insert(&flat(&m));
    }
    let tangent_rank = tan.len();
    let omega_in_tangent = tan.contains(&flat(&omega));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand_der = |rng: &mut ChaCha8Rng| -> (Vec<Fp<P>>, Mat<Fp<P>>) {
        let c: Vec<Fp<P>> = (0..ders.len()).map(|_| Fp::new(rng.gen_range(0..P as i64))).collect();
        let mut m = vec![vec![Fp::<P>(0); 27]; 27];
        for (k, d) in ders.iter().enumerate() {
            for i in 0..27 {
                for j in 0..27 {
                    m[i][j] = m[i][j] + c[k] * d[i][j];
                }
            }
        }
        (c, m)
    };
    let mut stats_seen: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    let mut lines = 0;
    for trial in 1..=budget {
        let (c1, t1) = rand_der(&mut rng);
        let (c0, t0) = rand_der(&mut rng);
        let (x1, y1) = (matvec(&t1, &xv), matvec(&t1, &yv));
        let (x0, y0) = (matvec(&t0, &xv), matvec(&t0, &yv));
        lines += 1;
        for lam in 0..P {
            let l = Fp::<P>(lam);
            let tx: Vec<Fp<P>> = x1.iter().zip(&x0).map(|(a, b)| *a + l * *b).collect();
            let ty: Vec<Fp<P>> = y1.iter().zip(&y0).map(|(a, b)| *a + l * *b).collect();
            let f = |a: &[Fp<P>], b: &[Fp<P>]| crate::linalg::form(&g, a, b);
            // quartic P(t) = (tx,tx)(ty,ty) − (tx,ty)²
            let p = f(&tx, &tx) * f(&ty, &ty) - f(&tx, &ty) * f(&tx, &ty);
            if !p.is_nil() {
                continue;
            }
            let w: Mat<Fp<P>> = (0..27)
                .map(|i| (0..27).map(|j| omega[i][j] + tx[i] * yv[j] - yv[i] * tx[j] + xv[i] * ty[j] - ty[i] * xv[j]).collect())
                .collect();
            let stats = skew_im_stats(&w, &g);
            *stats_seen.entry(stats).or_default() += 1;
            if stats == (4, 1) {
                let t: Vec<u64> = c1.iter().zip(&c0).map(|(a, b)| (*a + l * *b).0).collect();
                return Ok(F4SearchOutcome::Found(F4Witness {
                    prime: P,
                    seed,
                    x: to_u64(&xv),
                    y: to_u64(&yv),
                    t,
                    stats,
                    tangent_rank,
                    omega_in_tangent,
                    derivations: ders.len(),
                    trials: trial,
                    lines_tried: lines,
                    outside_pair_table: PairCase::from_stats(stats).is_none(),
                }));
            }
        }
    }
    Ok(F4SearchOutcome::Exhausted(F4SearchExhausted {
        prime: P,
        seed,
        trials: budget,
        lines_tried: lines,
        stats_seen: stats_seen.into_iter().collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn derivation_algebra() {
        let alg = AlbertAlgebra::split();
        let ders = f4_derivations::<Fp<101>>(&alg);
        assert_eq!(ders.len(), 52);
        let one = AlbertElement::<Fp<101>>::identity().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rnd = |rng: &mut ChaCha8Rng| AlbertElement::<Fp<101>>::from_slice(&(0..27).map(|_| Fp::new(rng.gen_range(0..101))).collect::<Vec<_>>());
        for d in &ders {
            assert!(matvec(d, &one).iter().all(|c| c.is_nil()));
            let (x, y) = (rnd(&mut rng), rnd(&mut rng));
            assert!((alg.tform(&apply(d, &x), &y) + alg.tform(&x, &apply(d, &y))).is_nil());
            // d/dt det(x + t Dx) at 0 is ⟨x#, Dx⟩ = 0
            assert!(alg.tform(&alg.sharp(&x), &apply(d, &x)).is_nil());
        }
    }

    #[test]
    fn derivations_over_rationals() {
        let alg = AlbertAlgebra::split();
        let ders = f4_derivations::<Q>(&alg);
        assert_eq!(ders.len(), 52);
        let x = super::super::random_element(&mut ChaCha8Rng::seed_from_u64(3), 0.6);
        for d in ders.iter().take(10) {
            assert_eq!(alg.tform(&alg.sharp(&x), &apply(d, &x)), q(0));
        }
    }

    #[test]
    fn witness_over_f101() {
        match f4_pi2_witness_search(101, 1, 200).unwrap() {
            F4SearchOutcome::Found(w) => {
                assert_eq!(w.stats, (4, 1));
                assert!(w.outside_pair_table);
                assert_eq!(w.tangent_rank, 21);
                assert!(w.omega_in_tangent);
            }
            F4SearchOutcome::Exhausted(e) => panic!("exhausted: {:?}", e.stats_seen),
        }
        assert!(f4_pi2_witness_search(7, 1, 1).is_err());
    }
}
