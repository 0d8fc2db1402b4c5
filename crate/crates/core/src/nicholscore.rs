//! Degree-truncated Nichols algebra: Hilbert function, PBW monomials, the
//! "type T in degree n" check and the defining relations of a tree.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::admissibility::Scalars;
use crate::braidedalg::{chi, is_zero_in_nichols, zero_tests, Braiding, Multidegree, NCPoly, SymBlock, Tau0};
use crate::cyclotomic::{qfact, CycNum};
use crate::error::{Error, Result};
use crate::fbtree::{ExtNode, FullBinaryTree, NodeId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPrefix {
    pub dims: Vec<u64>,
}

impl HilbertPrefix {
    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

fn blocks_up_to(n: u32) -> Vec<Multidegree> {
    (0..=n)
        .flat_map(|m| (0..=m).rev().map(move |d1| Multidegree::new(d1, m - d1)))
        .collect()
}

/// `dim B(V)_d` for every multidegree `d` of total degree `<= n`.
pub fn hilbert_blocks(b: &Braiding, n: u32) -> BTreeMap<Multidegree, u64> {
    blocks_up_to(n)
        .into_par_iter()
        .map(|d| (d, SymBlock::build(b, d).rank() as u64))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// `dim B(V)_m` for `m = 0..=n`.
pub fn hilbert_prefix(b: &Braiding, n: u32) -> HilbertPrefix {
    let mut dims = vec![0u64; n as usize + 1];
    for (d, r) in hilbert_blocks(b, n) {
        dims[d.total() as usize] += r;
    }
    HilbertPrefix { dims }
}

/// The PBW generators of a tree: nodes of `N̄2(T)` in ascending `<_Q` order
/// with their degrees and heights `ord p_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwGenerators {
    pub nodes: Vec<ExtNode>,
    pub degrees: Vec<Multidegree>,
    pub heights: Vec<u32>,
}

pub fn pbw_generators(t: &FullBinaryTree, b: &Braiding) -> Result<PbwGenerators> {
    let nodes = t.node_sets().nbar2;
    let mut degrees = Vec::with_capacity(nodes.len());
    let mut heights = Vec::with_capacity(nodes.len());
    for &a in &nodes {
        let d: Multidegree = t.stern_brocot(a).into();
        let p = crate::braidedalg::chi_inv(b, d, d);
        match p.order() {
            Some(1) => {
                return Err(Error::TreeBraidingMismatch {
                    node: a.to_string(),
                    reason: "chi(a,a) = 1".into(),
                })
            }
            Some(h) => heights.push(h),
            None => {
                return Err(Error::TreeBraidingMismatch {
                    node: a.to_string(),
                    reason: format!("chi(a,a)^-1 = {p} is not a root of unity"),
                })
            }
        }
        degrees.push(d);
    }
    Ok(PbwGenerators { nodes, degrees, heights })
}

/// Exponents `i_a` over `N̄2(T)`, listed in ascending `<_Q` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PBWMonomial {
    pub degree: Multidegree,
    pub exponents: Vec<(ExtNode, u32)>,
}

impl PBWMonomial {
    pub fn total_degree(&self) -> u32 {
        self.degree.total()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.iter().all(|&(_, e)| e == 0)
    }
}

/// All PBW monomials of weighted degree `<= up_to`, graded then lexicographic
/// in the exponent vector.
pub fn pbw_monomials(t: &FullBinaryTree, b: &Braiding, up_to: u32) -> Result<Vec<PBWMonomial>> {
    let g = pbw_generators(t, b)?;
    let mut raw: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut exps = vec![0u32; g.nodes.len()];
    fn rec(g: &PbwGenerators, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<(u32, Vec<u32>)>, used: u32) {
        if i == g.nodes.len() {
            out.push((used, exps.clone()));
            return;
        }
        let w = g.degrees[i].total();
        let mut e = 0;
        while e < g.heights[i] && e * w <= left {
            exps[i] = e;
            rec(g, i + 1, left - e * w, exps, out, used + e * w);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(&g, 0, up_to, &mut exps, &mut raw, 0);
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|(_, e)| {
            let degree = e
                .iter()
                .zip(&g.degrees)
                .fold(Multidegree::default(), |acc, (&k, &d)| acc + d.scaled(k));
            PBWMonomial {
                degree,
                exponents: g.nodes.iter().copied().zip(e).collect(),
            }
        })
        .collect())
}

/// Weighted-degree histogram of a monomial list, padded to `n + 1` entries.
pub fn count_by_degree(monomials: &[PBWMonomial], n: u32) -> HilbertPrefix {
    let mut dims = vec![0u64; n as usize + 1];
    for m in monomials {
        if let Some(slot) = dims.get_mut(m.total_degree() as usize) {
            *slot += 1;
        }
    }
    HilbertPrefix { dims }
}

/// Outcome of checking that the PBW monomials of a tree form a basis up to a
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub degree: u32,
    pub failed_at: Option<u32>,
    pub diagnostic: Option<String>,
    /// PBW generators of weight `<= degree`, which the check actually saw.
    pub exercised: Vec<String>,
    pub unexercised: Vec<String>,
}

struct BlockCheck {
    degree: Multidegree,
    dim: usize,
    count: usize,
    independent: usize,
}

/// The product `prod tau0(a)^(i_a)` in ascending `<_Q` order.
fn pbw_product(tau: &mut Tau0<'_>, powers: &mut HashMap<(ExtNode, u32), NCPoly>, m: &PBWMonomial) -> NCPoly {
    let mut out = NCPoly::one();
    for &(a, e) in &m.exponents {
        if e == 0 {
            continue;
        }
        let p = powers.entry((a, e)).or_insert_with(|| tau.get(a).pow(e)).clone();
        out = &out * &p;
    }
    out
}

pub fn verify_type(t: &FullBinaryTree, b: &Braiding, n: u32) -> Result<Verdict> {
    let monomials = pbw_monomials(t, b, n)?;
    let mut by_block: BTreeMap<Multidegree, Vec<NCPoly>> = BTreeMap::new();
    {
        let mut tau = Tau0::new(t, b);
        let mut powers = HashMap::new();
        for m in &monomials {
            let p = pbw_product(&mut tau, &mut powers, m);
            by_block.entry(m.degree).or_default().push(p);
        }
    }
    let checks: Vec<BlockCheck> = blocks_up_to(n)
        .into_par_iter()
        .map(|d| {
            let block = SymBlock::build(b, d);
            let polys = by_block.get(&d).map(Vec::as_slice).unwrap_or(&[]);
            let independent = if polys.is_empty() {
                0
            } else {
                block.image_rank(polys).expect("PBW products live over the braiding's field")
            };
            BlockCheck {
                degree: d,
                dim: block.rank(),
                count: polys.len(),
                independent,
            }
        })
        .collect();
    let mut failure = None;
    for c in &checks {
        if c.dim != c.count || c.independent != c.count {
            failure = Some((
                c.degree.total(),
                format!(
                    "multidegree ({}, {}): dim B(V) = {}, PBW monomials = {}, independent images = {}",
                    c.degree.d1, c.degree.d2, c.dim, c.count, c.independent
                ),
            ));
            break;
        }
    }
    let (exercised, unexercised): (Vec<ExtNode>, Vec<ExtNode>) = t
        .node_sets()
        .nbar2
        .into_iter()
        .partition(|&a| t.weight(a) <= n as u64);
    let names = |v: Vec<ExtNode>| v.into_iter().map(|a| a.to_string()).collect();
    Ok(Verdict {
        holds: failure.is_none(),
        degree: n,
        failed_at: failure.as_ref().map(|f| f.0),
        diagnostic: failure.map(|f| f.1),
        exercised: names(exercised),
        unexercised: names(unexercised),
    })
}

/// The three relation families attached to a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `tau0(a)` for leaves `a`.
    Leaf,
    /// `tau0(a)^(ord p_a)` for `a` in `N̄2(T)`.
    Power,
    /// The mixed relation for `b` with `lgf(b)` branching.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    pub node: ExtNode,
    pub degree: Multidegree,
    /// Present when the total degree is within the cap.
    pub poly: Option<NCPoly>,
}

/// The mixed relation at `bn`, with the `tau0(c)` power term scaled by `scale`.
///
/// `scale = 1` gives the defining relation; other values produce controls.
pub fn mixed_relation(t: &FullBinaryTree, b: &Braiding, bn: NodeId, scale: &CycNum) -> Result<NCPoly> {
    let s = Scalars::new(t, b);
    let c = t
        .lgf(bn)
        .node()
        .filter(|&c| !t.is_leaf(c))
        .ok_or_else(|| Error::Domain(format!("lgf({}) must branch", ExtNode::Node(bn))))?;
    let k = t.branch_lengths(bn).rgfl + 1;
    let f = qfact(k, s.p(ExtNode::Node(c)));
    let coeff = s
        .mu(bn)
        .expect("lgf(b) is a node")
        .checked_div(&f)
        .map_err(|_| Error::Inadmissible {
            node: ExtNode::Node(bn).to_string(),
            reason: format!("[{k}]!_(p_c) = 0"),
        })?;
    let lc = t.lgf(c);
    let mut tau = Tau0::new(t, b);
    let tb = tau.get(ExtNode::Node(bn));
    let tl = tau.get(lc);
    let tc = tau.get(ExtNode::Node(c)).pow(k);
    let twist = chi(b, tau.degree(ExtNode::Node(bn)), tau.degree(lc));
    Ok(&(&(&tb * &tl) - &(&tl * &tb).scale(&twist)) - &tc.scale(&(&coeff * scale)))
}

/// The defining relations of `B(V)` for the tree; polynomials are
/// materialized for total degree `<= cap`.
pub fn relation_set(t: &FullBinaryTree, b: &Braiding, cap: u32) -> Result<Vec<Relation>> {
    let sets = t.node_sets();
    let g = pbw_generators(t, b)?;
    let mut tau = Tau0::new(t, b);
    let mut out = Vec::new();
    let fits = |d: Multidegree| d.total() <= cap;
    for &a in &sets.n0 {
        let node = ExtNode::Node(a);
        let degree = tau.degree(node);
        let poly = fits(degree).then(|| tau.get(node));
        out.push(Relation { family: Family::Leaf, node, degree, poly });
    }
    for (i, &a) in g.nodes.iter().enumerate() {
        let degree = g.degrees[i].scaled(g.heights[i]);
        let poly = fits(degree).then(|| tau.get(a).pow(g.heights[i]));
        out.push(Relation { family: Family::Power, node: a, degree, poly });
    }
    for &bn in &sets.n2 {
        let Some(c) = t.lgf(bn).node() else { continue };
        if t.is_leaf(c) {
            continue;
        }
        let node = ExtNode::Node(bn);
        let degree = tau.degree(node) + tau.degree(t.lgf(c));
        let poly = if fits(degree) {
            Some(mixed_relation(t, b, bn, &CycNum::one())?)
        } else {
            // still reject a vanishing denominator
            let s = Scalars::new(t, b);
            let k = t.branch_lengths(bn).rgfl + 1;
            if qfact(k, s.p(ExtNode::Node(c))).is_zero() {
                return Err(Error::Inadmissible {
                    node: node.to_string(),
                    reason: format!("[{k}]!_(p_c) = 0"),
                });
            }
            None
        };
        out.push(Relation { family: Family::Mixed, node, degree, poly });
    }
    Ok(out)
}

/// Every materialized relation of degree `<= n` vanishes under every
/// registered zero test.
pub fn check_relations_vanish(t: &FullBinaryTree, b: &Braiding, n: u32) -> Result<bool> {
    let rels = relation_set(t, b, n)?;
    let polys: Vec<&NCPoly> = rels.iter().filter_map(|r| r.poly.as_ref()).collect();
    let results: Vec<Result<bool>> = polys
        .par_iter()
        .map(|p| {
            for z in zero_tests() {
                if !is_zero_in_nichols(b, p, z.name())? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `prod_{a in N̄2(T)} ord chi(a, a)`.
pub fn dimension(t: &FullBinaryTree, b: &Braiding) -> Result<u64> {
    let mut dim = 1u64;
    for a in t.node_sets().nbar2 {
        let d: Multidegree = t.stern_brocot(a).into();
        match chi(b, d, d).order() {
            None => return Err(Error::NotFiniteDimensional { node: a.to_string() }),
            Some(1) => {
                return Err(Error::TreeBraidingMismatch {
                    node: a.to_string(),
                    reason: "chi(a,a) = 1".into(),
                })
            }
            Some(o) => dim = dim.checked_mul(o as u64).expect("dimension fits in u64"),
        }
    }
    Ok(dim)
}

/// Highest degree of a nonzero PBW monomial: `sum (ord p_a - 1) |StBr|(a)`.
pub fn top_degree(t: &FullBinaryTree, b: &Braiding) -> Result<u32> {
    let g = pbw_generators(t, b)?;
    Ok(g.degrees.iter().zip(&g.heights).map(|(d, h)| d.total() * (h - 1)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbtree::appendix;

    fn ext() -> Braiding {
        Braiding::from_strings("1/2", "0/1", "0/1", "1/2").unwrap()
    }

    fn a2() -> Braiding {
        Braiding::from_strings("1/3", "2/3", "0/1", "1/3").unwrap()
    }

    #[test]
    fn exterior_pbw() {
        let m = pbw_monomials(&appendix(1), &ext(), 2).unwrap();
        let exps: Vec<Vec<u32>> = m.iter().map(|m| m.exponents.iter().map(|e| e.1).collect()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(count_by_degree(&m, 2).dims, vec![1, 2, 1]);
        assert_eq!(pbw_monomials(&appendix(2), &a2(), 0).unwrap().len(), 1);
    }

    #[test]
    fn a2_counts() {
        let m = pbw_monomials(&appendix(2), &a2(), 8).unwrap();
        assert_eq!(m.len(), 27);
        assert_eq!(count_by_degree(&m, 8).dims, vec![1, 2, 4, 4, 5, 4, 4, 2, 1]);
        assert_eq!(top_degree(&appendix(2), &a2()).unwrap(), 8);
    }

    #[test]
    fn mismatch_detected() {
        let b = Braiding::from_strings("0/1", "1/3", "0/1", "1/2").unwrap();
        assert!(matches!(
            pbw_monomials(&appendix(1), &b, 2),
            Err(Error::TreeBraidingMismatch { .. })
        ));
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&appendix(1), &ext()).unwrap(), 4);
        assert_eq!(dimension(&appendix(2), &a2()).unwrap(), 27);
        let b = Braiding::from_strings("1/5", "0/1", "0/1", "1/2").unwrap();
        assert_eq!(dimension(&appendix(1), &b).unwrap(), 10);
        let inf = Braiding::new(CycNum::from_int(2), CycNum::one(), CycNum::one(), CycNum::from_int(-1)).unwrap();
        assert!(matches!(dimension(&appendix(1), &inf), Err(Error::NotFiniteDimensional { .. })));
    }

    #[test]
    fn exterior_relations() {
        let rels = relation_set(&appendix(1), &ext(), 4).unwrap();
        let polys: Vec<String> = rels.iter().map(|r| r.poly.as_ref().unwrap().to_string()).collect();
        assert_eq!(polys, vec!["x1 x2 - x2 x1", "x2 x2", "x1 x1"]);
        assert!(rels.iter().all(|r| r.family != Family::Mixed));
        assert!(check_relations_vanish(&appendix(1), &ext(), 4).unwrap());
    }

    #[test]
    fn exterior_verifies() {
        let v = verify_type(&appendix(1), &ext(), 4).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(hilbert_prefix(&ext(), 3).dims, vec![1, 2, 1, 0]);
    }

    #[test]
    fn wrong_tree_fails_at_two() {
        let v = verify_type(&appendix(1), &a2(), 2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failed_at, Some(2));
    }
}
