//! The 22 families of braidings with finite dimensional Nichols algebra:
//! condition matching, per-type scalar tables, fixtures and the full report.

use rayon::prelude::*;
use serde::Serialize;

use crate::admissibility::{is_admissible, lambda_of, p_table, reconstruct_tree, AdmissibilityReport};
use crate::braidedalg::Braiding;
use crate::cyclotomic::{root_of_unity, CycNum};
use crate::error::{Error, Result};
use crate::fbtree::{appendix, serialize_tree, FullBinaryTree};
use crate::nicholscore::{
    check_relations_vanish, count_by_degree, dimension, hilbert_prefix, pbw_generators, pbw_monomials,
    relation_set, top_degree, verify_type,
};

/// The quantities the conditions are stated in.
#[derive(Clone, Debug)]
pub struct Params {
    pub q11: CycNum,
    /// `q12 q21`
    pub c: CycNum,
    pub q22: CycNum,
    /// `q11 q12 q21`
    pub q0: CycNum,
    pub q21: CycNum,
}

impl Params {
    pub fn of(b: &Braiding) -> Params {
        let c = b.q12q21();
        Params {
            q0: b.q11() * &c,
            q11: b.q11().clone(),
            c,
            q22: b.q22().clone(),
            q21: b.q21().clone(),
        }
    }
}

fn pw(x: &CycNum, k: i64) -> CycNum {
    x.powi(k).expect("braiding entries are nonzero")
}

fn neg(x: CycNum) -> CycNum {
    -x
}

fn m1() -> CycNum {
    CycNum::from_int(-1)
}

fn one() -> CycNum {
    CycNum::one()
}

/// `x` is a primitive `n`-th root of unity.
pub fn in_r(x: &CycNum, n: u32) -> bool {
    x.order() == Some(n)
}

/// `x` is a primitive `n`-th root of unity for some `n >= k`.
pub fn in_r_from(x: &CycNum, k: u32) -> bool {
    x.order().is_some_and(|o| o >= k)
}

/// Where a listed `λ` value lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum At {
    /// `a_i` (1-based) in the ascending `<_Q` order of `N2(T)`.
    N2(usize),
    /// Path from the root, `l` and `r` for the children.
    Path(&'static str),
}

impl At {
    pub fn locate(self, t: &FullBinaryTree) -> Option<usize> {
        match self {
            At::N2(i) => t.node_sets().n2.get(i.checked_sub(1)?).copied(),
            At::Path(p) => p.chars().try_fold(t.root(), |a, ch| match ch {
                'l' => t.lch(a),
                'r' => t.rch(a),
                _ => None,
            }),
        }
    }
}

type Pred = fn(&Params) -> bool;
type Table = fn(&Params) -> Vec<CycNum>;
type LambdaTable = fn(&Params) -> Vec<(At, CycNum)>;

/// One disjunct of a type condition.
pub struct Case {
    pub predicate: Pred,
    pub p_table: Table,
    pub lambdas: LambdaTable,
    /// Fixture braidings `(q11, q12, q22)` with `q21 = 1`.
    pub fixtures: &'static [(&'static str, &'static str, &'static str)],
}

pub trait TypeCondition: Send + Sync {
    fn type_id(&self) -> u8;
    fn cases(&self) -> &[Case];

    fn tree(&self) -> FullBinaryTree {
        appendix(self.type_id() as usize)
    }

    /// 1-based indices of the matching cases.
    fn matching_cases(&self, p: &Params) -> Vec<u8> {
        self.cases()
            .iter()
            .enumerate()
            .filter(|(_, c)| (c.predicate)(p))
            .map(|(i, _)| i as u8 + 1)
            .collect()
    }
}

struct Family {
    id: u8,
    cases: &'static [Case],
}

impl TypeCondition for Family {
    fn type_id(&self) -> u8 {
        self.id
    }

    fn cases(&self) -> &[Case] {
        self.cases
    }
}

fn none(_: &Params) -> Vec<(At, CycNum)> {
    Vec::new()
}

// p_i lists of the form sign * base^k, -1 written as (true, 0)
fn signed(base: &CycNum, list: &[(bool, i64)]) -> Vec<CycNum> {
    list.iter()
        .map(|&(negated, k)| {
            let v = pw(base, k);
            if negated {
                neg(v)
            } else {
                v
            }
        })
        .collect()
}

const MINUS: (bool, i64) = (true, 0);

macro_rules! case {
    ($pred:expr, $table:expr, $lam:expr, [$($fx:expr),* $(,)?]) => {
        Case { predicate: $pred, p_table: $table, lambdas: $lam, fixtures: &[$($fx),*] }
    };
}

static T1: [Case; 1] = [case!(
    |p| in_r_from(&p.q11, 2) && in_r_from(&p.q22, 2) && p.c.is_one(),
    |_| Vec::new(),
    none,
    [("1/2", "0/1", "1/2")]
)];

static T2: [Case; 1] = [case!(
    |p| {
        (&(&one() - &p.q0) * &(&one() + &p.q11)).is_zero()
            && (&(&one() - &(&p.c * &p.q22)) * &(&one() + &p.q22)).is_zero()
            && in_r_from(&p.c, 2)
    },
    |p| vec![pw(&(&p.q0 * &p.q22), -1)],
    |p| {
        let q22i = pw(&p.q22, -1);
        let v = &(&one() + &q22i) * &(&pw(&p.q21, -1) - &(&(&p.c * &pw(&p.q21, -1)) * &p.q22));
        vec![(At::Path("l"), v)]
    },
    [("1/3", "2/3", "1/3")]
)];

static T3: [Case; 3] = [
    case!(
        |p| p.c == pw(&p.q11, -2) && (p.q22 == pw(&p.q11, 2) || p.q22 == m1()) && in_r_from(&p.q11, 3),
        |p| vec![&p.q11 * &pw(&p.q22, -1), pw(&p.q22, -1)],
        none,
        [("1/3", "1/3", "2/3"), ("1/3", "1/3", "1/2")]
    ),
    case!(
        |p| in_r(&p.q11, 3) && (&p.c * &p.q22).is_one() && (in_r(&p.q22, 2) || in_r_from(&p.q22, 4)),
        |p| vec![pw(&p.q11, -1), &p.q22 * &pw(&p.q11, -1)],
        none,
        [("1/3", "1/2", "1/2")]
    ),
    case!(
        |p| in_r(&p.q11, 3) && p.c == neg(p.q11.clone()) && p.q22 == m1(),
        |p| vec![p.q11.clone(), m1()],
        none,
        [("1/3", "-1/3", "1/2")]
    ),
];

static T4: [Case; 2] = [
    case!(
        |p| in_r(&p.q0, 12) && p.q11 == pw(&p.q0, 4) && p.q22 == neg(pw(&p.q0, 2)),
        |p| vec![m1(), pw(&p.q0, 3), m1()],
        none,
        [("4/12", "9/12", "-2/12")]
    ),
    case!(
        |p| in_r(&p.c, 12) && p.q11 == neg(pw(&p.c, 2)) && p.q22 == p.q11,
        |p| vec![m1(), neg(p.c.clone()), m1()],
        none,
        [("-2/12", "1/12", "-2/12")]
    ),
];

static T5: [Case; 2] = [
    case!(
        |p| in_r(&p.c, 12) && p.q11 == neg(pw(&p.c, 2)) && p.q22 == m1(),
        |p| signed(&p.c, &[(true, 3), MINUS, (true, 2)]),
        none,
        [("-2/12", "1/12", "1/2")]
    ),
    case!(
        |p| in_r(&p.q0, 12) && p.q11 == pw(&p.q0, 4) && p.q22 == m1(),
        |p| signed(&p.q0, &[(false, 5), MINUS, (true, 2)]),
        none,
        [("4/12", "9/12", "1/2")]
    ),
];

static T6: [Case; 1] = [case!(
    |p| in_r(&p.q11, 18) && p.c == pw(&p.q11, -2) && p.q22 == neg(pw(&p.q11, 3)),
    |p| signed(&p.q11, &[MINUS, (true, -2), MINUS, (true, -3)]),
    none,
    [("1/18", "16/18", "-3/18")]
)];

static T7: [Case; 2] = [
    case!(
        |p| in_r(&p.q11, 12) && p.c == pw(&p.q11, -3) && p.q22 == m1(),
        |p| signed(&p.q11, &[(true, 2), (true, 2), MINUS]),
        none,
        [("1/12", "9/12", "1/2")]
    ),
    case!(
        |p| in_r(&p.c, 12) && p.q11 == pw(&p.c, -3) && p.q22 == m1(),
        |p| signed(&p.c, &[(true, 2), (false, 4), MINUS]),
        none,
        [("9/12", "1/12", "1/2")]
    ),
];

fn c4_minus_one(p: &Params) -> bool {
    pw(&p.c, 4) == m1()
}

static T8: [Case; 4] = [
    case!(
        |p| p.c == pw(&p.q11, -3) && p.q22 == pw(&p.q11, 3) && in_r_from(&p.q11, 4),
        |p| signed(&p.q11, &[(false, -1), (false, -3), (false, -1), (false, -3)]),
        none,
        [("1/4", "1/4", "3/4")]
    ),
    case!(
        |p| c4_minus_one(p) && p.q22 == m1() && p.q11 == neg(p.c.clone()),
        |p| signed(&p.c, &[(true, 2), (true, 1), (true, 2), MINUS]),
        none,
        [("-1/8", "1/8", "1/2")]
    ),
    case!(
        |p| c4_minus_one(p) && p.q22 == m1() && p.q11 == pw(&p.c, -2),
        |p| signed(&p.c, &[(true, 1), MINUS, (false, 2), (false, 3)]),
        none,
        [("6/8", "1/8", "1/2")]
    ),
    case!(
        |p| c4_minus_one(p) && p.q11 == pw(&p.c, 2) && p.q22 == pw(&p.c, -1),
        |p| signed(&p.c, &[(true, 2), MINUS, (true, 3), MINUS]),
        none,
        [("2/8", "1/8", "7/8")]
    ),
];

static T9: [Case; 1] = [case!(
    |p| in_r(&p.c, 9) && p.q11 == pw(&p.c, -3) && p.q22 == m1(),
    |p| signed(&p.c, &[(true, 2), MINUS, (false, 3), (true, 1)]),
    none,
    [("6/9", "1/9", "1/2")]
)];

static T10: [Case; 1] = [case!(
    |p| in_r(&p.c, 24) && p.q11 == pw(&p.c, -6) && p.q22 == pw(&p.c, -8),
    |p| signed(&p.c, &[MINUS, (true, 1), MINUS, (false, 8), (false, 6), (true, -1)]),
    none,
    [("18/24", "1/24", "16/24")]
)];

static T11: [Case; 1] = [case!(
    |p| (in_r(&p.q11, 5) || in_r(&p.q11, 20)) && p.c == pw(&p.q11, -3) && p.q22 == m1(),
    |p| signed(&p.q11, &[(true, 2), MINUS, (false, 9), MINUS, (true, 2), MINUS]),
    |p| {
        let q = &p.q11;
        let r = pw(&p.q21, -1);
        let a3 = &(&r * &(&(&one() - &pw(q, -2)) + &pw(q, -4))) * &(&one() - q);
        let a4 = &(&(&r * &(&one() - &pw(q, -2))) * &(&one() + &pw(q, -4))) * &(&one() + &pw(q, 3));
        vec![(At::N2(3), a3), (At::N2(4), a4)]
    },
    [("1/5", "2/5", "1/2"), ("1/20", "17/20", "1/2")]
)];

static T12: [Case; 1] = [case!(
    |p| in_r(&p.q11, 30) && p.c == pw(&p.q11, -3) && p.q22 == neg(pw(&p.q11, 5)),
    |p| signed(&p.q11, &[MINUS, (true, -3), (true, 4), (true, -3), MINUS, (true, -5)]),
    none,
    [("1/30", "27/30", "-5/30")]
)];

static T13: [Case; 1] = [case!(
    |p| in_r(&p.c, 24) && p.q11 == pw(&p.c, 6) && p.q22 == pw(&p.c, -1),
    |p| signed(&p.c, &[(true, 6), (true, 4), MINUS, (false, -1), MINUS, (true, 4)]),
    none,
    [("6/24", "1/24", "23/24")]
)];

static T14: [Case; 1] = [case!(
    |p| in_r(&p.q11, 18) && p.c == pw(&p.q11, -4) && p.q22 == m1(),
    |p| signed(&p.q11, &[(true, 3), (true, 4), (true, 3), MINUS]),
    none,
    [("1/18", "14/18", "1/2")]
)];

static T15: [Case; 1] = [case!(
    |p| in_r(&p.c, 30) && p.q11 == neg(pw(&p.c, -3)) && p.q22 == pw(&p.c, -1),
    |p| signed(&p.c, &[(true, 3), MINUS, (false, 10), (false, 11), (false, 10), MINUS]),
    none,
    [("-27/30", "1/30", "29/30")]
)];

static T16: [Case; 2] = [
    case!(
        |p| in_r(&p.q11, 10) && p.c == pw(&p.q11, -4) && p.q22 == m1(),
        |p| signed(&p.q11, &[(true, 3), MINUS, (true, 4), MINUS, (true, 3), MINUS]),
        none,
        [("1/10", "6/10", "1/2")]
    ),
    case!(
        |p| in_r(&p.c, 20) && p.q11 == pw(&p.c, -4) && p.q22 == m1(),
        |p| signed(&p.c, &[(true, 3), MINUS, (false, 4), MINUS, (false, 3), MINUS]),
        none,
        [("16/20", "1/20", "1/2")]
    ),
];

static T17: [Case; 1] = [case!(
    |p| in_r(&p.c, 24) && p.q11 == neg(pw(&p.c, 4)) && p.q22 == m1(),
    |p| signed(&p.c, &[(true, 7), MINUS, (false, 8), (true, 6), (false, 5), (true, 6)]),
    none,
    [("-4/24", "1/24", "1/2")]
)];

static T18: [Case; 1] = [case!(
    |p| in_r(&p.c, 30) && p.q11 == neg(pw(&p.c, 5)) && p.q22 == m1(),
    |p| signed(&p.c, &[(true, 9), (true, -2), (true, 9), MINUS, (false, 10), (true, 8)]),
    |p| {
        let c = &p.c;
        let r = pw(&p.q21, -1);
        let a3 = &(&r * &(&one() + c)) * &(&pw(c, 4) + &pw(c, 11));
        // the unnamed q of this entry read as q12 q21
        let a5 = &r * &(&pw(c, 5) - &pw(c, -4));
        vec![(At::N2(3), a3), (At::N2(5), a5)]
    },
    [("-5/30", "1/30", "1/2")]
)];

static T19: [Case; 1] = [case!(
    |p| in_r(&p.q11, 14) && p.c == pw(&p.q11, -3) && p.q22 == m1(),
    |p| {
        signed(
            &p.q11,
            &[(true, 2), MINUS, (false, -1), MINUS, (true, 2), MINUS, (false, -1), MINUS, (true, 2), MINUS],
        )
    },
    |p| {
        let q = &p.q11;
        let r = pw(&p.q21, -1);
        let a5 = &(&r * &(&one() - q)) * &(&(&one() - &pw(q, -2)) + &pw(q, -4));
        let a37 = &(&r * &(&one() + &pw(q, -1))) * &(&one() - &pw(q, -2));
        let a48 = &r * &(&one() - &pw(q, -3));
        vec![
            (At::N2(5), a5),
            (At::N2(3), a37.clone()),
            (At::N2(7), a37),
            (At::N2(4), a48.clone()),
            (At::N2(8), a48),
        ]
    },
    [("1/14", "11/14", "1/2")]
)];

static T20: [Case; 1] = [case!(
    |p| in_r(&p.c, 30) && p.q11 == pw(&p.c, -6) && p.q22 == m1(),
    |p| signed(&p.c, &[(true, 5), (false, 7), (true, 5), MINUS, (false, 6), (true, 2)]),
    none,
    [("24/30", "1/30", "1/2")]
)];

static T21: [Case; 1] = [case!(
    |p| in_r(&p.q11, 24) && p.c == pw(&p.q11, -5) && p.q22 == m1(),
    |p| signed(&p.q11, &[(true, 4), (true, 6), (false, 1), (true, 6), (true, 4), MINUS]),
    none,
    [("1/24", "19/24", "1/2")]
)];

static T22: [Case; 1] = [case!(
    |p| in_r(&p.q11, 14) && p.c == pw(&p.q11, -5) && p.q22 == m1(),
    |p| {
        signed(
            &p.q11,
            &[(true, 4), MINUS, (false, -1), MINUS, (true, 4), MINUS, (false, -1), MINUS, (true, 4), MINUS],
        )
    },
    |p| {
        let q = &p.q11;
        let r = pw(&p.q21, -1);
        let a59 = &(&r * &(&one() + &pw(q, -1))) * &(&one() - &pw(q, -4));
        let a6 = &r * &(&one() - &pw(q, -5));
        vec![
            (At::N2(5), a59.clone()),
            (At::N2(9), a59),
            (At::N2(6), a6.clone()),
            (At::N2(8), a6.clone()),
            (At::N2(10), a6),
        ]
    },
    [("1/14", "9/14", "1/2")]
)];

static FAMILIES: [Family; 22] = [
    Family { id: 1, cases: &T1 },
    Family { id: 2, cases: &T2 },
    Family { id: 3, cases: &T3 },
    Family { id: 4, cases: &T4 },
    Family { id: 5, cases: &T5 },
    Family { id: 6, cases: &T6 },
    Family { id: 7, cases: &T7 },
    Family { id: 8, cases: &T8 },
    Family { id: 9, cases: &T9 },
    Family { id: 10, cases: &T10 },
    Family { id: 11, cases: &T11 },
    Family { id: 12, cases: &T12 },
    Family { id: 13, cases: &T13 },
    Family { id: 14, cases: &T14 },
    Family { id: 15, cases: &T15 },
    Family { id: 16, cases: &T16 },
    Family { id: 17, cases: &T17 },
    Family { id: 18, cases: &T18 },
    Family { id: 19, cases: &T19 },
    Family { id: 20, cases: &T20 },
    Family { id: 21, cases: &T21 },
    Family { id: 22, cases: &T22 },
];

static REGISTRY: [&dyn TypeCondition; 22] = [
    &FAMILIES[0], &FAMILIES[1], &FAMILIES[2], &FAMILIES[3], &FAMILIES[4], &FAMILIES[5],
    &FAMILIES[6], &FAMILIES[7], &FAMILIES[8], &FAMILIES[9], &FAMILIES[10], &FAMILIES[11],
    &FAMILIES[12], &FAMILIES[13], &FAMILIES[14], &FAMILIES[15], &FAMILIES[16], &FAMILIES[17],
    &FAMILIES[18], &FAMILIES[19], &FAMILIES[20], &FAMILIES[21],
];

/// All type conditions, indexed by `type_id - 1`.
pub fn type_conditions() -> &'static [&'static dyn TypeCondition] {
    &REGISTRY
}

pub fn type_condition(id: u8) -> Result<&'static dyn TypeCondition> {
    REGISTRY.get((id as usize).wrapping_sub(1)).copied().ok_or_else(|| Error::Unknown {
        kind: "type",
        name: id.to_string(),
        available: "1..22".into(),
    })
}

/// Every `(type, case)` whose condition holds; cases are 1-based.
pub fn match_condition(b: &Braiding) -> Vec<(u8, u8)> {
    let p = Params::of(b);
    REGISTRY
        .par_iter()
        .map(|t| t.matching_cases(&p).into_iter().map(|c| (t.type_id(), c)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .concat()
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub type_id: u8,
    pub case_id: u8,
    pub braiding: Braiding,
}

/// One sample braiding per case (two for `T3` case 1 and `T11`).
pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for t in REGISTRY {
        for (ci, case) in t.cases().iter().enumerate() {
            for (fi, (q11, q12, q22)) in case.fixtures.iter().enumerate() {
                let mut name = format!("T{}", t.type_id());
                if t.cases().len() > 1 {
                    name.push_str(&format!(".{}", ci + 1));
                }
                if case.fixtures.len() > 1 {
                    name.push((b'a' + fi as u8) as char);
                }
                out.push(Fixture {
                    name,
                    type_id: t.type_id(),
                    case_id: ci as u8 + 1,
                    braiding: Braiding::from_strings(q11, q12, "0/1", q22).expect("fixture scalars parse"),
                });
            }
        }
    }
    out
}

/// The closed-form `p_i` of a case compared with the computed ones.
pub fn p_table_mismatches(type_id: u8, case_id: u8, b: &Braiding) -> Result<Vec<String>> {
    let tc = type_condition(type_id)?;
    let case = tc
        .cases()
        .get(case_id as usize - 1)
        .ok_or_else(|| Error::Domain(format!("type {type_id} has no case {case_id}")))?;
    let params = Params::of(b);
    let t = tc.tree();
    let computed = p_table(&t, b);
    let expected = (case.p_table)(&params);
    let mut out = Vec::new();
    if computed.len() != expected.len() {
        out.push(format!("{} nodes in N2 but {} listed values", computed.len(), expected.len()));
    }
    for (i, (c, e)) in computed.iter().zip(&expected).enumerate() {
        if c != e {
            out.push(format!("p_{}: computed {c}, listed {e}", i + 1));
        }
    }
    for (at, e) in (case.lambdas)(&params) {
        let Some(a) = at.locate(&t) else {
            out.push(format!("{at:?} does not exist"));
            continue;
        };
        let c = lambda_of(&t, b, a);
        if c != e {
            out.push(format!("lambda at {at:?}: computed {c}, listed {e}"));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub degree_cap: u32,
    pub weight_cap: u32,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { degree_cap: 8, weight_cap: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Dimension {
    Finite(u64),
    Infinite(&'static str),
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwEntry {
    pub node: String,
    pub weight: u64,
    pub height: u32,
}

/// Verification of one candidate tree.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub type_id: u8,
    pub tree: String,
    pub verified: bool,
    pub verified_up_to: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    #[serde(rename = "type")]
    pub matches: Vec<(u8, u8)>,
    pub condition_match: bool,
    pub tree: Option<String>,
    pub pbw: Vec<PbwEntry>,
    pub dimension: Dimension,
    pub relations: Vec<String>,
    pub relations_beyond_cap: Vec<String>,
    pub verified_up_to: u32,
    pub admissibility: Option<AdmissibilityReport>,
    pub candidates: Vec<Candidate>,
    pub notes: Vec<String>,
}

fn verify_candidate(t: &FullBinaryTree, b: &Braiding, cap: u32) -> Result<(bool, u32)> {
    let Ok(top) = top_degree(t, b) else { return Ok((false, 0)) };
    let d = cap.min(top);
    let v = verify_type(t, b, d)?;
    Ok(match v.failed_at {
        None => (true, d),
        Some(m) => (false, m.saturating_sub(1)),
    })
}

pub fn classify_full(b: &Braiding, caps: Caps) -> Result<ClassificationReport> {
    if caps.degree_cap == 0 || caps.weight_cap == 0 {
        return Err(Error::Domain("caps must be positive".into()));
    }
    let matches = match_condition(b);
    let mut notes = Vec::new();
    if matches.is_empty() {
        notes.push("no match among the 22 type conditions".to_string());
    }
    let mut candidates = Vec::new();
    let mut seen = Vec::new();
    for &(id, _) in &matches {
        if seen.contains(&id) {
            continue;
        }
        seen.push(id);
        let t = appendix(id as usize);
        let (verified, up_to) = verify_candidate(&t, b, caps.degree_cap)?;
        candidates.push(Candidate {
            type_id: id,
            tree: serialize_tree(&t),
            verified,
            verified_up_to: up_to,
        });
    }
    let tree = match reconstruct_tree(b, caps.weight_cap.max(2)) {
        Ok(r) => {
            notes.extend(r.non_root_nodes.iter().map(|n| format!("branching node {n} has p not a root of unity")));
            notes.extend(r.min_formula_mismatches.iter().cloned());
            Some(r.tree)
        }
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let mut report = ClassificationReport {
        matches,
        condition_match: !candidates.is_empty(),
        tree: tree.as_ref().map(serialize_tree),
        pbw: Vec::new(),
        dimension: Dimension::Infinite("not finite by this method"),
        relations: Vec::new(),
        relations_beyond_cap: Vec::new(),
        verified_up_to: 0,
        admissibility: None,
        candidates,
        notes,
    };
    let Some(t) = tree else { return Ok(report) };
    match pbw_generators(&t, b) {
        Ok(g) => {
            report.pbw = g
                .nodes
                .iter()
                .zip(&g.degrees)
                .zip(&g.heights)
                .map(|((a, d), &h)| PbwEntry {
                    node: a.to_string(),
                    weight: d.total() as u64,
                    height: h,
                })
                .collect();
        }
        Err(e) => {
            report.notes.push(e.to_string());
            return Ok(report);
        }
    }
    if let Ok(d) = dimension(&t, b) {
        report.dimension = Dimension::Finite(d);
    }
    let (_, up_to) = verify_candidate(&t, b, caps.degree_cap)?;
    report.verified_up_to = up_to;
    let top = top_degree(&t, b)?;
    match is_admissible(&t, b, top.max(caps.degree_cap)) {
        Ok(a) => report.admissibility = Some(a),
        Err(e) => report.notes.push(e.to_string()),
    }
    match relation_set(&t, b, up_to) {
        Ok(rels) => {
            for r in rels {
                match r.poly {
                    Some(p) => report.relations.push(p.to_string()),
                    None => report.relations_beyond_cap.push(format!(
                        "{:?} at {}, multidegree ({}, {})",
                        r.family, r.node, r.degree.d1, r.degree.d2
                    )),
                }
            }
        }
        Err(e) => report.notes.push(e.to_string()),
    }
    Ok(report)
}

/// One line of the fixture matrix.
#[derive(Clone, Debug, Serialize)]
pub struct AcceptanceRow {
    pub name: String,
    pub degree: u32,
    pub checks: Vec<(String, bool)>,
    pub passed: bool,
    pub details: Vec<String>,
}

/// Runs every per-fixture check at degree `min(degree_cap, top degree)`.
pub fn acceptance_row(f: &Fixture, caps: Caps) -> AcceptanceRow {
    let b = &f.braiding;
    let t = appendix(f.type_id as usize);
    let mut checks = Vec::new();
    let mut details = Vec::new();
    let mut check = |name: &str, ok: bool, why: Option<String>| {
        checks.push((name.to_string(), ok));
        if let (false, Some(w)) = (ok, why) {
            details.push(format!("{name}: {w}"));
        }
    };
    let m = match_condition(b);
    check("condition", m == vec![(f.type_id, f.case_id)], Some(format!("matches {m:?}")));
    match reconstruct_tree(b, caps.weight_cap) {
        Ok(r) => check(
            "tree",
            r.tree == t && r.min_formula_mismatches.is_empty(),
            Some(format!("{} {:?}", r.tree, r.min_formula_mismatches)),
        ),
        Err(e) => check("tree", false, Some(e.to_string())),
    }
    match p_table_mismatches(f.type_id, f.case_id, b) {
        Ok(v) => check("tables", v.is_empty(), Some(v.join("; "))),
        Err(e) => check("tables", false, Some(e.to_string())),
    }
    let d = match top_degree(&t, b) {
        Ok(top) => top.min(caps.degree_cap),
        Err(e) => {
            check("pbw", false, Some(e.to_string()));
            return finish(f, 0, checks, details);
        }
    };
    match is_admissible(&t, b, d) {
        Ok(r) => check("admissible", r.admissible, Some(format!("{:?}", r.failures))),
        Err(e) => check("admissible", false, Some(e.to_string())),
    }
    let h = hilbert_prefix(b, d);
    match pbw_monomials(&t, b, d) {
        Ok(ms) => {
            let c = count_by_degree(&ms, d);
            check("hilbert", h == c, Some(format!("oracle {:?}, pbw {:?}", h.dims, c.dims)));
        }
        Err(e) => check("hilbert", false, Some(e.to_string())),
    }
    match verify_type(&t, b, d) {
        Ok(v) => check("basis", v.holds, v.diagnostic),
        Err(e) => check("basis", false, Some(e.to_string())),
    }
    match check_relations_vanish(&t, b, d) {
        Ok(ok) => check("relations", ok, Some("a relation survives".into())),
        Err(e) => check("relations", false, Some(e.to_string())),
    }
    finish(f, d, checks, details)
}

fn finish(f: &Fixture, degree: u32, checks: Vec<(String, bool)>, details: Vec<String>) -> AcceptanceRow {
    AcceptanceRow {
        name: f.name.clone(),
        degree,
        passed: checks.iter().all(|c| c.1),
        checks,
        details,
    }
}

/// The acceptance row of every fixture, in fixture order.
pub fn acceptance_matrix(caps: Caps) -> Vec<AcceptanceRow> {
    fixtures().par_iter().map(|f| acceptance_row(f, caps)).collect()
}

/// A random root of unity `zeta_n^k` with `n` among the conductors of the
/// classification.
pub fn sample_root<R: rand::Rng + ?Sized>(rng: &mut R) -> CycNum {
    const ORDERS: [u32; 10] = [1, 2, 3, 4, 5, 6, 8, 9, 10, 12];
    let n = ORDERS[rng.gen_range(0..ORDERS.len())];
    root_of_unity(rng.gen_range(0..n as i64), n)
}
