//! The scalars `λ`, `μ`, `ν`, `p_a` attached to tree nodes, the admissibility
//! predicate, and reconstruction of the tree from a braiding.

use std::collections::VecDeque;

use serde::Serialize;

use crate::braidedalg::{chi, chi_inv, Braiding, Multidegree};
use crate::cyclotomic::{qfact, qnum, CycNum};
use crate::error::{Error, Result};
use crate::fbtree::{ExtNode, FullBinaryTree, NodeId};

/// Per-node scalars of one (tree, braiding) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeScalars {
    pub lambda: CycNum,
    pub p: CycNum,
    pub mu: Option<CycNum>,
    pub nu: Option<CycNum>,
}

/// Memoized `λ` and `p` for every node of a tree.
pub struct Scalars<'a> {
    tree: &'a FullBinaryTree,
    braiding: &'a Braiding,
    lambda: Vec<CycNum>,
    p: Vec<CycNum>,
    p_lgh: CycNum,
    p_rgh: CycNum,
}

fn deg(t: &FullBinaryTree, a: ExtNode) -> Multidegree {
    t.stern_brocot(a).into()
}

impl<'a> Scalars<'a> {
    pub fn new(tree: &'a FullBinaryTree, braiding: &'a Braiding) -> Self {
        let b = braiding;
        let mut lambda = Vec::with_capacity(tree.len());
        for a in tree.nodes() {
            let (l, r) = (deg(tree, tree.lgf(a)), deg(tree, tree.rgf(a)));
            let step = &chi_inv(b, l, r) - &chi(b, r, l);
            let v = match tree.parent(a) {
                None => step,
                Some(parent) => &step + &lambda[parent],
            };
            lambda.push(v);
        }
        let p = tree
            .nodes()
            .map(|a| {
                let d = deg(tree, ExtNode::Node(a));
                chi_inv(b, d, d)
            })
            .collect();
        Scalars {
            tree,
            braiding,
            lambda,
            p,
            p_lgh: b.q_inv(2, 2).clone(),
            p_rgh: b.q_inv(1, 1).clone(),
        }
    }

    pub fn tree(&self) -> &FullBinaryTree {
        self.tree
    }

    pub fn lambda(&self, a: NodeId) -> &CycNum {
        &self.lambda[a]
    }

    /// `p_a = chi(a, a)^-1`.
    pub fn p(&self, a: ExtNode) -> &CycNum {
        match a {
            ExtNode::Lgh => &self.p_lgh,
            ExtNode::Rgh => &self.p_rgh,
            ExtNode::Node(id) => &self.p[id],
        }
    }

    /// `μ(b)`, defined when `lgf(b)` is a node.
    pub fn mu(&self, b: NodeId) -> Option<CycNum> {
        let t = self.tree;
        let c = t.lgf(b).node()?;
        if t.rch(c) == Some(b) {
            Some(self.lambda[b].clone())
        } else {
            let up = t.rgf(b).node().expect("a left child has a node as right godfather");
            Some(&self.lambda[b] * &self.mu(up)?)
        }
    }

    /// `ν(b)`, defined when `c = lgf(b)` is a node and `rgfl(b) <= 2`.
    ///
    /// `Ok(None)` when the precondition fails; an error when a denominator
    /// vanishes.
    pub fn nu(&self, b: NodeId) -> Result<Option<CycNum>> {
        let t = self.tree;
        let br = self.braiding;
        let Some(c) = t.lgf(b).node() else { return Ok(None) };
        let rgfl = t.branch_lengths(b).rgfl;
        if rgfl > 2 {
            return Ok(None);
        }
        let f = t.rgf(c);
        let pc = self.p(ExtNode::Node(c));
        let inv = |v: CycNum, what: &str| {
            v.inv().map_err(|_| Error::Inadmissible {
                node: ExtNode::Node(b).to_string(),
                reason: format!("denominator {what} of nu vanishes"),
            })
        };
        let two_f = inv(qnum(2, self.p(f)), "[2]_{p_f}")?;
        let two_c = inv(qnum(2, pc), "[2]_{p_c}")?;
        let lc = &self.lambda[c];
        let value = if rgfl == 1 {
            let lgf_c = deg(t, t.lgf(c));
            let db = deg(t, ExtNode::Node(b));
            let twist = &chi_inv(br, lgf_c, db) - &chi(br, db, lgf_c);
            &twist + &(&(&self.lambda[b] * lc) * &(&two_f - &two_c))
        } else {
            let three_c = inv(qnum(3, pc), "[3]_{p_c}")?;
            let rc = t.rch(c).expect("c has children");
            let twist = chi_inv(br, deg(t, t.lgf(c)), deg(t, ExtNode::Node(rc)));
            let tail = &(&(lc * &self.lambda[rc]) * &two_c) * &(&two_f - &three_c);
            &twist + &tail
        };
        Ok(Some(value))
    }

    pub fn node_scalars(&self, a: NodeId) -> NodeScalars {
        NodeScalars {
            lambda: self.lambda[a].clone(),
            p: self.p[a].clone(),
            mu: self.mu(a),
            nu: self.nu(a).ok().flatten(),
        }
    }
}

pub fn lambda_of(t: &FullBinaryTree, b: &Braiding, a: NodeId) -> CycNum {
    Scalars::new(t, b).lambda(a).clone()
}

pub fn mu_of(t: &FullBinaryTree, b: &Braiding, a: NodeId) -> Result<CycNum> {
    Scalars::new(t, b)
        .mu(a)
        .ok_or_else(|| Error::Domain(format!("mu needs lgf({}) to be a node", ExtNode::Node(a))))
}

pub fn nu_of(t: &FullBinaryTree, b: &Braiding, a: NodeId) -> Result<CycNum> {
    Scalars::new(t, b).nu(a)?.ok_or_else(|| {
        Error::Domain(format!(
            "nu needs lgf({}) to be a node and rgfl <= 2",
            ExtNode::Node(a)
        ))
    })
}

/// `p_a` for the nodes of `N2(T)` in ascending `<_Q` order.
pub fn p_table(t: &FullBinaryTree, b: &Braiding) -> Vec<CycNum> {
    let s = Scalars::new(t, b);
    t.node_sets()
        .n2
        .iter()
        .map(|&a| s.p(ExtNode::Node(a)).clone())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Nodes with `rgf(a) = rgh`, parametrized by `lgfl(a)`.
    Right,
    /// Nodes with `lgf(a) = lgh`, parametrized by `rgfl(a)`.
    Left,
}

/// Closed forms of `λ` along the outer spines of the tree.
pub fn lambda_closed(t: &FullBinaryTree, b: &Braiding, a: NodeId, side: Side) -> Result<CycNum> {
    let q11 = b.q11();
    let q22 = b.q22();
    let pre = &(q11 * b.q12()) * q22;
    let root = Multidegree::new(1, 1);
    let p_root = chi_inv(b, root, root);
    let (k, own, other) = match side {
        Side::Right => {
            if t.rgf(a) != ExtNode::Rgh {
                return Err(Error::Domain("right closed form needs rgf(a) = rgh".into()));
            }
            (t.branch_lengths(a).lgfl, q11, q22)
        }
        Side::Left => {
            if t.lgf(a) != ExtNode::Lgh {
                return Err(Error::Domain("left closed form needs lgf(a) = lgh".into()));
            }
            (t.branch_lengths(a).rgfl, q22, q11)
        }
    };
    let own_inv = own.inv()?;
    let shifted = &other.inv()? * &own.powi(k as i64 - 2)?;
    Ok(&(&pre * &(&p_root - &shifted)) * &qnum(k, &own_inv))
}

/// `[m1 + m2]_{p_a} (p_{rgf a} - p_a^(m1 - m2) p_{lgf a})` evaluated at the
/// boundary leaves of the node `a`.
pub fn fin1_expression(s: &Scalars<'_>, a: NodeId) -> Option<(NodeId, NodeId, CycNum)> {
    let t = s.tree();
    let (l, r) = t.children(a)?;
    // b: rightmost descendant of lch(a); c: leftmost descendant of rch(a)
    let mut bl = l;
    while let Some(x) = t.rch(bl) {
        bl = x;
    }
    let mut cl = r;
    while let Some(x) = t.lch(cl) {
        cl = x;
    }
    let lb = t.branch_lengths(bl).lgfl as i64;
    let rc = t.branch_lengths(cl).rgfl as i64;
    let pa = s.p(ExtNode::Node(a));
    let inner = s.p(t.rgf(a)) - &(&pa.powi(lb - rc).ok()? * s.p(t.lgf(a)));
    Some((bl, cl, &qnum((lb + rc) as u32, pa) * &inner))
}

/// Checks `min(rchl(lch b), lchl(rch b)) <= 3` for all branching nodes.
pub fn check_inequality(t: &FullBinaryTree) -> Result<()> {
    for a in t.nodes() {
        if let Some((l, r)) = t.children(a) {
            let m = t.branch_lengths(l).rchl.min(t.branch_lengths(r).lchl);
            if m > 3 {
                return Err(Error::Structural {
                    node: ExtNode::Node(a).to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: u8,
    pub node: String,
    pub explanation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub degree: u32,
    pub failures: Vec<Failure>,
}

/// Evaluates the four admissibility conditions of `(T, V, n)`.
pub fn is_admissible(t: &FullBinaryTree, b: &Braiding, n: u32) -> Result<AdmissibilityReport> {
    check_inequality(t)?;
    let s = Scalars::new(t, b);
    let n = n as u64;
    let mut failures = Vec::new();
    let mut fail = |condition: u8, node: ExtNode, explanation: String| {
        failures.push(Failure {
            condition,
            node: node.to_string(),
            explanation,
        })
    };
    for a in t.nodes() {
        if t.weight(ExtNode::Node(a)) > n {
            continue;
        }
        let branching = !t.is_leaf(a);
        let nonzero = !s.lambda(a).is_zero();
        if branching != nonzero {
            let what = if branching {
                "branching node has lambda = 0"
            } else {
                "leaf has lambda != 0"
            };
            fail(1, ExtNode::Node(a), format!("{what} (lambda = {})", s.lambda(a)));
        }
    }
    for a in t.node_sets().nbar2 {
        if t.weight(a) > n {
            continue;
        }
        let p = s.p(a);
        match p.order() {
            None => fail(2, a, format!("p = {p} is not a root of unity")),
            Some(1) => fail(2, a, "p = 1".into()),
            Some(_) => {}
        }
    }
    let minus_one = CycNum::from_int(-1);
    for a in t.nodes() {
        let Some(l) = t.lch(a) else { continue };
        if t.is_leaf(l) || t.weight(ExtNode::Node(l)) > n {
            continue;
        }
        if *s.p(ExtNode::Node(a)) == minus_one {
            fail(3, ExtNode::Node(a), "p_a = -1 while lch(a) branches".into());
        }
        if *s.p(t.rgf(a)) == minus_one {
            fail(3, ExtNode::Node(a), format!("p_rgf(a) = -1 (rgf(a) = {})", t.rgf(a)));
        }
    }
    for bn in t.nodes() {
        if t.is_leaf(bn) {
            continue;
        }
        let Some(c) = t.lgf(bn).node() else { continue };
        if t.is_leaf(c) {
            continue;
        }
        if t.weight(ExtNode::Node(bn)) + t.weight(t.lgf(c)) > n {
            continue;
        }
        let rgfl = t.branch_lengths(bn).rgfl;
        let pc = s.p(ExtNode::Node(c));
        if qfact(rgfl + 1, pc).is_zero() {
            fail(4, ExtNode::Node(bn), format!("[{}]!_(p_c) = 0", rgfl + 1));
            continue;
        }
        let lc = t.lch(c).expect("c branches");
        if t.branch_lengths(lc).rchl <= rgfl {
            continue;
        }
        if rgfl > 2 {
            fail(4, ExtNode::Node(bn), "rchl(lch c) > rgfl(b) > 2".into());
            continue;
        }
        match s.nu(bn) {
            Ok(Some(nu)) if nu.is_zero() => {}
            Ok(Some(nu)) => fail(4, ExtNode::Node(bn), format!("nu(b) = {nu} != 0")),
            Ok(None) => unreachable!("nu is defined here"),
            Err(e) => fail(4, ExtNode::Node(bn), e.to_string()),
        }
    }
    Ok(AdmissibilityReport {
        admissible: failures.is_empty(),
        degree: n as u32,
        failures,
    })
}

/// Outcome of growing a tree from a braiding.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub tree: FullBinaryTree,
    /// Branching nodes whose `p_a` is not a root of unity.
    pub non_root_nodes: Vec<String>,
    /// Disagreements with the branch-length formulas; empty when consistent.
    pub min_formula_mismatches: Vec<String>,
}

/// Grows the tree from the root: a node gets two children iff `λ != 0`.
pub fn reconstruct_tree(b: &Braiding, max_weight: u32) -> Result<Reconstruction> {
    if max_weight < 2 {
        return Err(Error::Domain("weight cap must be at least 2".into()));
    }
    struct Pending {
        lgf: (Multidegree, Option<usize>),
        rgf: (Multidegree, Option<usize>),
        parent_lambda: Option<CycNum>,
    }
    let lgh = Multidegree::new(0, 1);
    let rgh = Multidegree::new(1, 0);
    let mut table: Vec<Option<(NodeId, NodeId)>> = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back((
        0usize,
        Pending {
            lgf: (lgh, None),
            rgf: (rgh, None),
            parent_lambda: None,
        },
    ));
    table.push(None);
    let mut non_root_nodes = Vec::new();
    while let Some((id, node)) = queue.pop_front() {
        let (dl, dr) = (node.lgf.0, node.rgf.0);
        let step = &chi_inv(b, dl, dr) - &chi(b, dr, dl);
        let lambda = match &node.parent_lambda {
            None => step,
            Some(pl) => &step + pl,
        };
        if lambda.is_zero() {
            continue;
        }
        let d = dl + dr;
        if d.total() > max_weight {
            return Err(Error::CapExceeded {
                cap: max_weight,
                node: format!("StBr ({}, {})", d.d1, d.d2),
            });
        }
        if chi_inv(b, d, d).order().is_none() {
            non_root_nodes.push(format!("StBr ({}, {})", d.d1, d.d2));
        }
        let l = table.len();
        let r = l + 1;
        table.push(None);
        table.push(None);
        table[id] = Some((l, r));
        queue.push_back((
            l,
            Pending {
                lgf: node.lgf,
                rgf: (d, Some(id)),
                parent_lambda: Some(lambda.clone()),
            },
        ));
        queue.push_back((
            r,
            Pending {
                lgf: (d, Some(id)),
                rgf: node.rgf,
                parent_lambda: Some(lambda),
            },
        ));
    }
    let tree = FullBinaryTree::from_child_table(&table, 0)?;
    let min_formula_mismatches = min_formula_check(&tree, b, max_weight);
    Ok(Reconstruction {
        tree,
        non_root_nodes,
        min_formula_mismatches,
    })
}

fn first_zero(limit: u32, f: impl Fn(u32) -> CycNum) -> Option<u32> {
    (1..=limit).find(|&m| f(m).is_zero())
}

/// Compares the branch lengths of `t` with the values predicted by the
/// braiding: `rchl(root)`, `lchl(root)` and `rchl(lch a)` for `a` in `N2`.
pub fn min_formula_check(t: &FullBinaryTree, b: &Braiding, limit: u32) -> Vec<String> {
    let s = Scalars::new(t, b);
    let mut out = Vec::new();
    let root = t.root();
    let p_root = s.p(ExtNode::Node(root)).clone();
    let q11 = b.q11();
    let q22 = b.q22();
    let q11i = b.q_inv(1, 1);
    let q22i = b.q_inv(2, 2);
    let both = q11i * q22i;
    let rchl_root = first_zero(limit, |m| {
        let shifted = &q11.powi(1 - m as i64).expect("nonzero") * &p_root;
        &qnum(m, q11i) * &(&shifted - &both)
    });
    let lchl_root = first_zero(limit, |m| {
        let shifted = &q22.powi(1 - m as i64).expect("nonzero") * &p_root;
        &qnum(m, q22i) * &(&shifted - &both)
    });
    let bl = t.branch_lengths(root);
    if rchl_root != Some(bl.rchl) {
        out.push(format!("rchl(root) = {} but formula gives {:?}", bl.rchl, rchl_root));
    }
    if lchl_root != Some(bl.lchl) {
        out.push(format!("lchl(root) = {} but formula gives {:?}", bl.lchl, lchl_root));
    }
    for a in t.nodes() {
        let Some((l, r)) = t.children(a) else { continue };
        let k = t.branch_lengths(r).lchl;
        let pa = s.p(ExtNode::Node(a));
        let lhs = &s.p(t.rgf(a)).clone() * &pa.pow(k as u64);
        let predicted = first_zero(limit, |m| {
            &qnum(m + k, pa) * &(&lhs - &(s.p(t.lgf(a)) * &pa.pow(m as u64)))
        });
        let actual = t.branch_lengths(l).rchl;
        if predicted != Some(actual) {
            out.push(format!(
                "rchl(lch {}) = {actual} but formula gives {predicted:?}",
                ExtNode::Node(a)
            ));
        }
    }
    out
}
