//! Dynkin-diagram chopping and the search for wildness certificates.
//!
//! Chopping a representation at a set of vertices restricts it to the Levi
//! subgroup of the kept subdiagram; the kept marks label the result. Wildness
//! is inherited upwards, so a chain of choppings ending at a registered wild
//! base case certifies the start.

use crate::error::{Error, Result};
use crate::rootsys::{
    build_root_system, canonicalize, identify_diagram, same_up_to_automorphism, Factor, Family, GroupDescriptor,
    SimpleType, Weight,
};
use serde::{Deserialize, Serialize};

/// One vertex removal, in the labeling of the descriptor it applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChopStep {
    /// 0-based factor index.
    pub factor: usize,
    /// 1-based vertex within that factor.
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chopping {
    pub parent: String,
    pub removed: Vec<ChopStep>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub start: String,
    pub chain: Vec<Chopping>,
    pub base_case: String,
    pub citation: String,
}

#[derive(Clone, Copy, Debug)]
pub enum BasePattern {
    Fixed(Family, usize, &'static [i64]),
    /// Fundamental π_i of the given family, any rank ≥ min.
    Fundamental(Family, usize, usize),
    /// Adjoint module of a simple type of the given family with rank ≥ min.
    Adjoint(Family, usize),
    HeightAtLeast3,
    HeightTwoOutsideList,
}

#[derive(Clone, Copy, Debug)]
pub struct BaseCase {
    pub id: &'static str,
    pub citation: &'static str,
    pub pattern: BasePattern,
}

pub const BASE_CASES: &[BaseCase] = &[
    BaseCase {
        id: "A5-pi3",
        citation: "SL6 on Λ³C⁶ is 2-wild: e124+e153+e623 has rank 3 on a tangent line to the Grassmannian",
        pattern: BasePattern::Fixed(Family::A, 5, &[0, 0, 1, 0, 0]),
    },
    BaseCase {
        id: "C-pi3",
        citation: "Sp_2n on Λ³₀C^2n (n ≥ 3) is 2-wild: e124+e153+e623 with Lagrangian planes has rank 3 and border rank 2",
        pattern: BasePattern::Fundamental(Family::C, 3, 3),
    },
    BaseCase {
        id: "D6-halfspin",
        citation: "half-spin modules of Spin12: σ₂ of the spinor variety contains points of rank 3",
        pattern: BasePattern::Fixed(Family::D, 6, &[0, 0, 0, 0, 1, 0]),
    },
    BaseCase {
        id: "B5-spin",
        citation: "spin module of Spin11: restriction of a Spin12 half-spin module, irreducible and transitive on the closed orbit, so wild with it",
        pattern: BasePattern::Fixed(Family::B, 5, &[0, 0, 0, 0, 1]),
    },
    BaseCase {
        id: "adjoint-B",
        citation: "adjoint modules are tame only for types A and C (σ₂ of the adjoint variety has extra points)",
        pattern: BasePattern::Adjoint(Family::B, 3),
    },
    BaseCase {
        id: "adjoint-D",
        citation: "adjoint modules are tame only for types A and C (σ₂ of the adjoint variety has extra points)",
        pattern: BasePattern::Adjoint(Family::D, 4),
    },
    BaseCase {
        id: "adjoint-E",
        citation: "adjoint modules are tame only for types A and C (σ₂ of the adjoint variety has extra points)",
        pattern: BasePattern::Adjoint(Family::E, 6),
    },
    BaseCase {
        id: "adjoint-F4",
        citation: "adjoint modules are tame only for types A and C (σ₂ of the adjoint variety has extra points)",
        pattern: BasePattern::Adjoint(Family::F, 4),
    },
    BaseCase {
        id: "adjoint-G2",
        citation: "adjoint modules are tame only for types A and C (σ₂ of the adjoint variety has extra points)",
        pattern: BasePattern::Adjoint(Family::G, 2),
    },
    BaseCase {
        id: "F4-pi2",
        citation: "F4 on V(π₂) ⊂ Λ²V(π₁) is 2-wild: a tangent vector with Im-statistics (4,1) is not a sum of two cone points",
        pattern: BasePattern::Fixed(Family::F, 4, &[0, 1, 0, 0]),
    },
    BaseCase {
        id: "E7-pi1",
        citation: "E7 on the 56-dim module is 2-wild: inside e8, e_a1+e_a2+e_a3 (3A1) has orbit dimension 112, outside {58, 92, 114}",
        pattern: BasePattern::Fixed(Family::E, 7, &[1, 0, 0, 0, 0, 0, 0]),
    },
    BaseCase {
        id: "height>=3",
        citation: "h(λ) ≥ 3 forces wildness: a three-factor Segre configuration gives a border-rank-2 tensor of rank 3",
        pattern: BasePattern::HeightAtLeast3,
    },
    BaseCase {
        id: "height=2-not-dense",
        citation: "h(λ) = 2 is tame only when λ = λ₁+λ₂ with both V(λᵢ) HW-dense (natural SL or Sp modules)",
        pattern: BasePattern::HeightTwoOutsideList,
    },
];

pub fn is_adjoint(ty: SimpleType, marks: &[i64]) -> bool {
    let sys = build_root_system(ty).expect("valid type");
    sys.root_marks(&sys.highest_root()) == marks
}

/// HW-dense fundamental pairs: (A_n, π₁), (A_n, π_n), (C_n, π₁).
pub fn hw_dense(ty: SimpleType, w: &Weight) -> Result<bool> {
    let i = w
        .fundamental_index()
        .ok_or_else(|| Error::Domain(format!("hw_dense needs a fundamental weight, got {:?}", w.marks)))?;
    Ok(match ty.family {
        Family::A => i == 1 || i == ty.rank,
        Family::C => i == 1,
        _ => false,
    })
}

/// The h = 2 tameness rule: λ splits as λ₁+λ₂ with both summands HW-dense.
pub fn height_two_tame(g: &GroupDescriptor) -> bool {
    let g = canonicalize(g);
    if g.height() != 2 {
        return false;
    }
    let mut parts: Vec<(SimpleType, Weight)> = Vec::new();
    for f in &g.factors {
        for (i, &m) in f.weight.marks.iter().enumerate() {
            for _ in 0..m {
                parts.push((f.ty, Weight::fundamental(f.ty.rank, i + 1)));
            }
        }
    }
    parts.iter().all(|(t, w)| hw_dense(*t, w).unwrap_or(false))
}

fn matches_base(g: &GroupDescriptor, pat: &BasePattern) -> bool {
    match *pat {
        BasePattern::HeightAtLeast3 => g.height() >= 3,
        BasePattern::HeightTwoOutsideList => g.height() == 2 && !height_two_tame(g),
        BasePattern::Fixed(fam, rank, marks) => {
            g.factors.len() == 1
                && g.factors[0].ty.family == fam
                && g.factors[0].ty.rank == rank
                && same_up_to_automorphism(g.factors[0].ty, marks, &g.factors[0].weight.marks)
        }
        BasePattern::Fundamental(fam, min, i) => {
            g.factors.len() == 1
                && g.factors[0].ty.family == fam
                && g.factors[0].ty.rank >= min
                && g.factors[0].weight.fundamental_index() == Some(i)
        }
        BasePattern::Adjoint(fam, min) => {
            g.factors.len() == 1
                && g.factors[0].ty.family == fam
                && g.factors[0].ty.rank >= min
                && is_adjoint(g.factors[0].ty, &g.factors[0].weight.marks)
        }
    }
}

pub fn base_case_of(g: &GroupDescriptor) -> Option<&'static BaseCase> {
    BASE_CASES.iter().find(|b| matches_base(g, &b.pattern))
}

/// Chop with bookkeeping: also returns, per old (factor, vertex), its new position if kept.
fn chop_with_map(g: &GroupDescriptor, removed: &[ChopStep]) -> Result<(GroupDescriptor, Vec<Vec<Option<(usize, usize)>>>)> {
    for s in removed {
        let ok = s.factor < g.factors.len() && s.vertex >= 1 && s.vertex <= g.factors[s.factor].ty.rank;
        if !ok {
            return Err(Error::Domain(format!("vertex {} of factor {} out of range for {g}", s.vertex, s.factor)));
        }
    }
    let mut factors = Vec::new();
    let mut map: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    for (fi, f) in g.factors.iter().enumerate() {
        let n = f.ty.rank;
        let mut fmap = vec![None; n];
        let cartan = f.ty.cartan();
        let kept: Vec<usize> =
            (0..n).filter(|&v| !removed.iter().any(|s| s.factor == fi && s.vertex == v + 1)).collect();
        let mut seen = vec![false; n];
        for &start in &kept {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for &u in &kept {
                    if !seen[u] && cartan[v][u] != 0 {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort();
            let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| cartan[i][j]).collect()).collect();
            let (ty, m) = identify_diagram(&sub).ok_or_else(|| Error::Domain("unrecognized subdiagram".into()))?;
            let mut marks = vec![0; ty.rank];
            for (k, &v) in comp.iter().enumerate() {
                marks[m[k]] = f.weight.marks[v];
                fmap[v] = Some((factors.len(), m[k] + 1));
            }
            factors.push(Factor { ty, weight: Weight::new(marks) });
        }
        map.push(fmap);
    }
    // drop trivially acting factors and renumber
    let keep: Vec<bool> = factors.iter().map(|f| !f.weight.is_zero()).collect();
    let mut renum = vec![None; factors.len()];
    let mut next = 0;
    for (i, &k) in keep.iter().enumerate() {
        if k {
            renum[i] = Some(next);
            next += 1;
        }
    }
    for fmap in map.iter_mut() {
        for slot in fmap.iter_mut() {
            *slot = slot.and_then(|(f, v)| renum[f].map(|nf| (nf, v)));
        }
    }
    let result = GroupDescriptor { factors: factors.into_iter().filter(|f| !f.weight.is_zero()).collect() };
    Ok((result, map))
}

pub fn chop(g: &GroupDescriptor, removed: &[ChopStep]) -> Result<GroupDescriptor> {
    Ok(chop_with_map(g, removed)?.0)
}

/// Chop a single-factor descriptor at the given 1-based vertices.
pub fn chop_vertices(g: &GroupDescriptor, vertices: &[usize]) -> Result<GroupDescriptor> {
    let steps: Vec<ChopStep> = vertices.iter().map(|&v| ChopStep { factor: 0, vertex: v }).collect();
    chop(g, &steps)
}

/// Turn a removal set into a chain of single-vertex choppings.
fn chain_for(g: &GroupDescriptor, removed: &[ChopStep]) -> Result<(Vec<Chopping>, GroupDescriptor)> {
    let mut cur = g.clone();
    let mut pending: Vec<(usize, usize)> = removed.iter().map(|s| (s.factor, s.vertex)).collect();
    let mut chain = Vec::new();
    while let Some((f, v)) = pending.first().copied() {
        pending.remove(0);
        let step = ChopStep { factor: f, vertex: v };
        let (next, map) = chop_with_map(&cur, &[step])?;
        let mut moved = Vec::new();
        for (pf, pv) in pending {
            if let Some((nf, nv)) = map[pf][pv - 1] {
                moved.push((nf, nv));
            }
        }
        pending = moved;
        chain.push(Chopping { parent: cur.to_string(), removed: vec![step], result: next.to_string() });
        cur = next;
    }
    Ok((chain, cur))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut vec![], &mut out);
    out
}

/// Shortest chopping chain reaching a registered wild base case.
pub fn find_wild_certificate(g: &GroupDescriptor) -> Option<Certificate> {
    let g = canonicalize(g);
    let h = g.height();
    let cert = |chain: Vec<Chopping>, b: &BaseCase| Certificate {
        start: g.to_string(),
        chain,
        base_case: b.id.to_string(),
        citation: b.citation.to_string(),
    };
    if h >= 2 {
        return base_case_of(&g).map(|b| cert(vec![], b));
    }
    if h == 0 {
        return None;
    }
    let verts: Vec<(usize, usize)> = g
        .factors
        .iter()
        .enumerate()
        .flat_map(|(fi, f)| (1..=f.ty.rank).map(move |v| (fi, v)))
        .collect();
    for k in 0..verts.len() {
        for s in subsets(verts.len(), k) {
            let steps: Vec<ChopStep> = s.iter().map(|&i| ChopStep { factor: verts[i].0, vertex: verts[i].1 }).collect();
            let Ok(res) = chop(&g, &steps) else { continue };
            if res.height() == 0 {
                continue;
            }
            if let Some(b) = base_case_of(&res) {
                let (chain, end) = chain_for(&g, &steps).ok()?;
                debug_assert_eq!(end, res);
                return Some(cert(chain, b));
            }
        }
    }
    None
}

/// Replay a certificate from its start descriptor; true when it ends at its base case.
pub fn replay(c: &Certificate) -> Result<bool> {
    let mut cur = GroupDescriptor::parse(&c.start)?;
    for step in &c.chain {
        if cur.to_string() != step.parent {
            return Ok(false);
        }
        cur = chop(&cur, &step.removed)?;
        if cur.to_string() != step.result {
            return Ok(false);
        }
    }
    Ok(base_case_of(&cur).map(|b| b.id) == Some(c.base_case.as_str()))
}

/// Every vertex subset of a single-factor descriptor with its chopping; used by `chop-tree`.
pub fn chop_tree(g: &GroupDescriptor) -> Result<Vec<(Vec<usize>, GroupDescriptor)>> {
    let g = canonicalize(g);
    if g.factors.len() != 1 {
        return Err(Error::Domain("chop-tree takes a single simple factor".into()));
    }
    let n = g.factors[0].ty.rank;
    let mut out = Vec::new();
    for k in 1..n {
        for s in subsets(n, k) {
            let vs: Vec<usize> = s.iter().map(|i| i + 1).collect();
            let r = chop_vertices(&g, &vs)?;
            if r.height() > 0 {
                out.push((vs, r));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GroupDescriptor {
        GroupDescriptor::parse(s).unwrap()
    }

    #[test]
    fn chop_examples() {
        assert_eq!(chop_vertices(&d("C5[0,0,0,1,0]"), &[1]).unwrap(), d("C4[0,0,1,0]"));
        assert_eq!(chop_vertices(&d("E8[0,0,0,0,0,0,1,0]"), &[1]).unwrap(), d("E7[0,0,0,0,0,1,0]"));
        assert_eq!(chop_vertices(&d("E8[0,0,0,0,0,0,1,0]"), &[7]).unwrap().height(), 0);
        assert!(chop_vertices(&d("A2[1,0]"), &[3]).is_err());
    }

    #[test]
    fn chop_of_fundamental_is_fundamental_or_trivial() {
        for ty in SimpleType::all_up_to(6) {
            for i in 1..=ty.rank {
                let g = GroupDescriptor::fundamental(ty, i);
                for (_, r) in chop_tree(&g).unwrap() {
                    assert!(r.height() <= 1);
                }
            }
        }
    }

    #[test]
    fn functorial() {
        let g = d("E8[0,0,0,0,0,0,1,0]");
        let both = chop_vertices(&g, &[1, 4]).unwrap();
        let (chain, end) = chain_for(&g, &[ChopStep { factor: 0, vertex: 1 }, ChopStep { factor: 0, vertex: 4 }]).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(end, both);
    }

    #[test]
    fn certificate_examples() {
        let c = find_wild_certificate(&d("A5[0,0,1,0,0]")).unwrap();
        assert!(c.chain.is_empty());
        let c = find_wild_certificate(&d("C7[0,0,0,0,1,0,0]")).unwrap();
        assert_eq!(c.base_case, "C-pi3");
        assert!(replay(&c).unwrap());
        assert!(find_wild_certificate(&d("A4[0,1,0,0]")).is_none());
        let e7 = find_wild_certificate(&d("E8[0,0,0,0,0,0,0,1]")).unwrap();
        assert!(replay(&e7).unwrap());
    }

    #[test]
    fn every_wild_fundamental_is_certified() {
        for ty in SimpleType::all_up_to(9) {
            for i in 1..=ty.rank {
                let g = GroupDescriptor::fundamental(ty, i);
                let tame = crate::classifier::classify(&g).unwrap().status == crate::classifier::Status::Tame;
                let cert = find_wild_certificate(&g);
                assert_eq!(cert.is_none(), tame, "{g}");
                if let Some(c) = cert {
                    assert!(replay(&c).unwrap(), "{g}");
                }
            }
        }
    }

    #[test]
    fn hw_density() {
        assert!(hw_dense(SimpleType::a(3), &Weight::fundamental(3, 1)).unwrap());
        assert!(hw_dense(SimpleType::a(3), &Weight::fundamental(3, 3)).unwrap());
        assert!(hw_dense(SimpleType::c(3), &Weight::fundamental(3, 1)).unwrap());
        assert!(!hw_dense(SimpleType::b(3), &Weight::fundamental(3, 1)).unwrap());
        assert!(hw_dense(SimpleType::a(3), &Weight::new(vec![2, 0, 0])).is_err());
    }

    #[test]
    fn spin11_needs_its_own_base_case() {
        let g = d("B5[0,0,0,0,1]");
        let c = find_wild_certificate(&g).unwrap();
        assert_eq!(c.base_case, "B5-spin");
        for (_, r) in chop_tree(&g).unwrap() {
            assert!(base_case_of(&r).is_none(), "{r}");
        }
    }
}
