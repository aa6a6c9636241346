//! The tame/wild decision procedure and the max-rank column for tame modules.

use crate::chopping::{find_wild_certificate, height_two_tame, hw_dense, Certificate};
use crate::error::{Error, Result};
use crate::rootsys::{canonicalize, Factor, Family, GroupDescriptor, SimpleType, Weight};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Tame,
    Wild,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "h>=3")]
    HeightAtLeast3,
    #[serde(rename = "h2-list")]
    H2List,
    #[serde(rename = "h2-fail")]
    H2Fail,
    #[serde(rename = "fundamental-table")]
    FundamentalTable,
    #[serde(rename = "certificate")]
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamenessVerdict {
    pub status: Status,
    pub reason: Reason,
    pub certificate: Option<Certificate>,
    pub citation: String,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Tame => "tame",
            Status::Wild => "wild",
        })
    }
}

/// One row of the fundamental tame table.
pub struct TameRow {
    pub family: Family,
    pub module: &'static str,
    pub citation: &'static str,
    pub holds: fn(usize, usize) -> bool,
}

pub const FUNDAMENTAL_TAME: &[TameRow] = &[
    TameRow {
        family: Family::A,
        module: "F^n, (F^n)*, Λ²F^n, (Λ²F^n)*",
        citation: "SL_n: natural modules and their second exterior powers (ranks of matrices and skew matrices)",
        holds: |n, i| i == 1 || i == 2 || i + 1 == n || i == n,
    },
    TameRow {
        family: Family::B,
        module: "F^(2n+1); spin for 2n+1 ≤ 10",
        citation: "Spin_(2n+1): quadric (natural module) and subcominuscule spin modules up to ambient dimension 10",
        holds: |n, i| i == 1 || (i == n && 2 * n + 1 <= 10),
    },
    TameRow {
        family: Family::C,
        module: "F^(2n), Λ²₀F^(2n)",
        citation: "Sp_2n: natural module and Λ²₀ (isotropic coform decomposition)",
        holds: |_, i| i == 1 || i == 2,
    },
    TameRow {
        family: Family::D,
        module: "F^(2n); half-spins for 2n ≤ 10",
        citation: "Spin_2n: quadric (natural module) and half-spin modules up to ambient dimension 10",
        holds: |n, i| i == 1 || ((i == n || i + 1 == n) && 2 * n <= 10),
    },
    TameRow {
        family: Family::E,
        module: "E6: F^27, (F^27)*",
        citation: "E6 on the 27-dim modules: Cayley plane E¹⁶, ranks given by the Jordan cubic norm",
        holds: |n, i| n == 6 && (i == 1 || i == 5),
    },
    TameRow {
        family: Family::F,
        module: "F^26",
        citation: "F4 on the 26-dim module: hyperplane section F¹⁵ of the Cayley plane",
        holds: |_, i| i == 1,
    },
    TameRow {
        family: Family::G,
        module: "F^7",
        citation: "G2 on the 7-dim module: closed orbit is a 5-dim quadric",
        holds: |_, i| i == 1,
    },
];

fn fundamental_row(ty: SimpleType, i: usize) -> Option<&'static TameRow> {
    FUNDAMENTAL_TAME.iter().find(|r| r.family == ty.family && (r.holds)(ty.rank, i))
}

pub fn classify(g: &GroupDescriptor) -> Result<TamenessVerdict> {
    let g = canonicalize(g);
    let h = g.height();
    if h == 0 {
        return Err(Error::Domain(format!("{g}: height 0 means dim V = 1; classification needs dim V ≥ 2")));
    }
    if h >= 3 {
        return Ok(TamenessVerdict {
            status: Status::Wild,
            reason: Reason::HeightAtLeast3,
            certificate: find_wild_certificate(&g),
            citation: format!("h(λ) = {h} ≥ 3: wild"),
        });
    }
    if h == 2 {
        if height_two_tame(&g) {
            return Ok(TamenessVerdict {
                status: Status::Tame,
                reason: Reason::H2List,
                certificate: None,
                citation: "h(λ) = 2 with λ = λ₁+λ₂, both V(λᵢ) HW-dense (natural SL or Sp modules)".into(),
            });
        }
        let offender = g
            .factors
            .iter()
            .find(|f| {
                f.weight.marks.iter().enumerate().any(|(i, &m)| {
                    m > 0 && !hw_dense(f.ty, &Weight::fundamental(f.ty.rank, i + 1)).unwrap_or(false)
                })
            })
            .map(|f| f.ty.to_string())
            .unwrap_or_default();
        return Ok(TamenessVerdict {
            status: Status::Wild,
            reason: Reason::H2Fail,
            certificate: find_wild_certificate(&g),
            citation: format!("h(λ) = 2 but the summand on {offender} is not HW-dense"),
        });
    }
    let f = &g.factors[0];
    let i = f.weight.fundamental_index().expect("height one");
    if let Some(row) = fundamental_row(f.ty, i) {
        return Ok(TamenessVerdict {
            status: Status::Tame,
            reason: Reason::FundamentalTable,
            certificate: None,
            citation: row.citation.to_string(),
        });
    }
    let cert = find_wild_certificate(&g);
    Ok(TamenessVerdict {
        status: Status::Wild,
        reason: if cert.is_some() { Reason::Certificate } else { Reason::FundamentalTable },
        citation: match &cert {
            Some(c) => c.citation.clone(),
            None => format!("{} π{i} is absent from the fundamental tame table", f.ty),
        },
        certificate: cert,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub max_rank: u64,
    pub formula: String,
    pub variety: String,
}

fn profile(max_rank: u64, formula: &str, variety: String) -> RankProfile {
    RankProfile { max_rank, formula: formula.into(), variety }
}

pub fn max_typical_rank(g: &GroupDescriptor) -> Result<RankProfile> {
    let v = classify(g)?;
    if v.status == Status::Wild {
        return Err(Error::Domain(format!("{g} is wild; no max-rank row")));
    }
    let g = canonicalize(g);
    let natural_dim = |f: &Factor| -> u64 {
        match f.ty.family {
            Family::A => f.ty.rank as u64 + 1,
            _ => 2 * f.ty.rank as u64,
        }
    };
    if g.factors.len() == 2 {
        let (a, b) = (natural_dim(&g.factors[0]), natural_dim(&g.factors[1]));
        return Ok(profile(a.min(b), "min(m,n)", format!("Segre P^{}×P^{}", a - 1, b - 1)));
    }
    let f = &g.factors[0];
    let n = f.ty.rank;
    let m = &f.weight.marks;
    let h = f.weight.height();
    let nn = n as u64 + 1;
    match f.ty.family {
        Family::A => {
            if h == 2 {
                if m[0] == 2 || m[n - 1] == 2 {
                    return Ok(profile(nn, "n", format!("Ver₂(P^{n})")));
                }
                return Ok(profile(nn, "n", format!("Fl(1,{n}; F^{nn})")));
            }
            let i = f.weight.fundamental_index().unwrap();
            if n == 1 || i == 1 || i == n {
                Ok(profile(1, "1", format!("P^{n}")))
            } else {
                Ok(profile(nn / 2, "floor(n/2)", format!("Gr₂(F^{nn})")))
            }
        }
        Family::C => {
            if h == 2 {
                return Ok(profile(2 * n as u64, "n", format!("Ver₂(P^{})", 2 * n - 1)));
            }
            if m[0] == 1 {
                Ok(profile(1, "1", format!("P^{}", 2 * n - 1)))
            } else {
                Ok(profile(n as u64, "n", format!("Gr_ω(2,{})", 2 * n)))
            }
        }
        Family::B | Family::D => {
            let amb = if f.ty.family == Family::B { 2 * n + 1 } else { 2 * n };
            if m[0] == 1 {
                return Ok(profile(2, "2", format!("Q^{}", amb - 2)));
            }
            match amb {
                7 | 8 => Ok(profile(2, "2", "Q⁶".into())),
                9 | 10 => Ok(profile(2, "2", "S¹⁰".into())),
                _ => Err(Error::Domain(format!("no max-rank row for {g}"))),
            }
        }
        Family::E => Ok(profile(3, "3", "E¹⁶".into())),
        Family::F => Ok(profile(3, "3", "F¹⁵".into())),
        Family::G => Ok(profile(2, "2", "Q⁵".into())),
    }
}

fn dominant_weights(rank: usize, max_h: i64) -> Vec<Vec<i64>> {
    fn go(i: usize, rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == rank {
            out.push(cur.clone());
            return;
        }
        for m in 0..=left {
            cur.push(m);
            go(i + 1, rank, left - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, rank, max_h, &mut vec![], &mut out);
    out.retain(|w| w.iter().sum::<i64>() >= 1);
    out
}

/// All tame pairs: simple types of rank ≤ max_rank with 1 ≤ h ≤ 3, and two-factor products with h = 2.
pub fn generate_table(max_rank: usize) -> Vec<(GroupDescriptor, TamenessVerdict)> {
    let types = SimpleType::all_up_to(max_rank);
    let mut cands: Vec<GroupDescriptor> = Vec::new();
    for &ty in &types {
        for w in dominant_weights(ty.rank, 3) {
            cands.push(GroupDescriptor::simple(ty, w));
        }
    }
    let funds: Vec<(SimpleType, usize)> = types.iter().flat_map(|&t| (1..=t.rank).map(move |i| (t, i))).collect();
    for a in 0..funds.len() {
        for b in a..funds.len() {
            let mut fs = vec![
                Factor { ty: funds[a].0, weight: Weight::fundamental(funds[a].0.rank, funds[a].1) },
                Factor { ty: funds[b].0, weight: Weight::fundamental(funds[b].0.rank, funds[b].1) },
            ];
            fs.sort();
            cands.push(GroupDescriptor { factors: fs });
        }
    }
    let mut out: Vec<(GroupDescriptor, TamenessVerdict)> = cands
        .into_par_iter()
        .filter_map(|g| {
            let v = classify(&g).ok()?;
            (v.status == Status::Tame).then_some((g, v))
        })
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(s: &str) -> Status {
        classify(&GroupDescriptor::parse(s).unwrap()).unwrap().status
    }

    #[test]
    fn classify_examples() {
        assert_eq!(verdict("A5[0,0,1,0,0]"), Status::Wild);
        assert_eq!(verdict("C4[0,1,0,0]"), Status::Tame);
        assert_eq!(verdict("D5[0,0,0,0,1]"), Status::Tame);
        assert_eq!(verdict("A1[3]"), Status::Wild);
        assert_eq!(verdict("A2xA3[1,0|1,0,0]"), Status::Tame);
        assert_eq!(verdict("F4[0,1,0,0]"), Status::Wild);
        assert_eq!(verdict("G2[1,0]"), Status::Tame);
        assert!(classify(&GroupDescriptor::parse("A2[0,0]").unwrap()).is_err());
    }

    #[test]
    fn height_two_cases() {
        assert_eq!(verdict("A3[2,0,0]"), Status::Tame);
        assert_eq!(verdict("A3[1,0,1]"), Status::Tame);
        assert_eq!(verdict("A3[1,1,0]"), Status::Wild);
        assert_eq!(verdict("C3[2,0,0]"), Status::Tame);
        assert_eq!(verdict("C3xA2[1,0,0|0,1]"), Status::Tame);
        let v = classify(&GroupDescriptor::parse("B3xA2[1,0,0|1,0]").unwrap()).unwrap();
        assert_eq!(v.reason, Reason::H2Fail);
        assert!(v.citation.contains("B3"));
    }

    #[test]
    fn max_ranks() {
        let p = |s: &str| max_typical_rank(&GroupDescriptor::parse(s).unwrap()).unwrap().max_rank;
        assert_eq!(p("A5[0,1,0,0,0]"), 3);
        assert_eq!(p("E6[1,0,0,0,0,0]"), 3);
        assert_eq!(p("D5[0,0,0,0,1]"), 2);
        assert_eq!(p("B4[0,0,0,1]"), 2);
        assert_eq!(p("F4[1,0,0,0]"), 3);
        assert_eq!(p("C4[0,1,0,0]"), 4);
        assert_eq!(p("A2xC3[1,0|1,0,0]"), 3);
        assert!(max_typical_rank(&GroupDescriptor::parse("E7[1,0,0,0,0,0,0]").unwrap()).is_err());
    }

    #[test]
    fn small_table() {
        let t = generate_table(2);
        let a: Vec<String> = t
            .iter()
            .filter(|(g, _)| g.factors.len() == 1 && g.factors[0].ty.family == Family::A)
            .map(|(g, _)| g.to_string())
            .collect();
        assert_eq!(a, vec!["A1[1]", "A1[2]", "A2[0,1]", "A2[0,2]", "A2[1,0]", "A2[1,1]", "A2[2,0]"]);
    }

    #[test]
    fn e8_all_wild() {
        for i in 1..=8 {
            let g = GroupDescriptor::fundamental(SimpleType::e(8), i);
            assert_eq!(classify(&g).unwrap().status, Status::Wild);
        }
    }

    #[test]
    fn duality_symmetry() {
        for n in 1..=8 {
            for k in 1..=n {
                let a = classify(&GroupDescriptor::fundamental(SimpleType::a(n), k)).unwrap().status;
                let b = classify(&GroupDescriptor::fundamental(SimpleType::a(n), n + 1 - k)).unwrap().status;
                assert_eq!(a, b);
            }
        }
    }
}
