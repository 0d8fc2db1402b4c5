//! Full binary trees with godfather maps, branch lengths and Stern-Brocot
//! labels.
//!
//! Nodes are numbered in preorder, the root is node 0. All derived maps are
//! computed once at construction.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// A node of the tree or one of the two virtual godfathers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNode {
    Lgh,
    Rgh,
    Node(NodeId),
}

impl ExtNode {
    pub fn node(self) -> Option<NodeId> {
        match self {
            ExtNode::Node(id) => Some(id),
            _ => None,
        }
    }
}

impl fmt::Display for ExtNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNode::Lgh => write!(f, "lgh"),
            ExtNode::Rgh => write!(f, "rgh"),
            ExtNode::Node(id) => write!(f, "#{id}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SBLabel {
    pub r: u64,
    pub s: u64,
}

impl SBLabel {
    pub fn weight(self) -> u64 {
        self.r + self.s
    }
}

impl std::ops::Add for SBLabel {
    type Output = SBLabel;
    fn add(self, o: SBLabel) -> SBLabel {
        SBLabel {
            r: self.r + o.r,
            s: self.s + o.s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchLengths {
    pub lgfl: u32,
    pub rgfl: u32,
    pub lchl: u32,
    pub rchl: u32,
}

#[derive(Clone, Debug)]
pub struct FullBinaryTree {
    children: Vec<Option<(NodeId, NodeId)>>,
    parent: Vec<Option<NodeId>>,
    lgf: Vec<ExtNode>,
    rgf: Vec<ExtNode>,
    labels: Vec<SBLabel>,
    lengths: Vec<BranchLengths>,
}

/// The trees of the 22 families, in the S-expression format.
pub const APPENDIX: [&str; 22] = [
    "L",
    "(L L)",
    "(L (L L))",
    "((L L) (L L))",
    "(L ((L L) L))",
    "((L L) ((L L) L))",
    "(L (L (L L)))",
    "(L ((L L) (L L)))",
    "(L (((L L) L) L))",
    "((L L) (((L L) L) (L L)))",
    "(L (((L L) (L L)) (L L)))",
    "((L L) ((L L) ((L L) L)))",
    "(L ((L (L L)) ((L L) L)))",
    "(L (L (L (L L))))",
    "(L (((L L) L) (L (L L))))",
    "(L ((L L) ((L L) (L L))))",
    "(L ((((L L) L) (L L)) L))",
    "(L (((L L) ((L L) L)) L))",
    "(L ((((L L) (L L)) ((L L) (L L))) (L L)))",
    "(L (L ((L (L L)) (L L))))",
    "(L (L ((L L) (L (L L)))))",
    "(L ((L L) (((L L) (L L)) ((L L) (L L)))))",
];

/// The tree of family `Tn`, `1 <= n <= 22`.
pub fn appendix(n: usize) -> FullBinaryTree {
    assert!((1..=22).contains(&n), "no appendix tree T{n}");
    parse_tree(APPENDIX[n - 1]).expect("appendix constants parse")
}

impl PartialEq for FullBinaryTree {
    fn eq(&self, other: &Self) -> bool {
        self.children == other.children
    }
}

impl Eq for FullBinaryTree {}

impl FullBinaryTree {
    /// Builds a tree from a child table rooted at `root`. Ids are renumbered
    /// to preorder.
    pub fn from_child_table(table: &[Option<(NodeId, NodeId)>], root: NodeId) -> Result<Self> {
        let bad = |m: &str| Error::Domain(format!("invalid child table: {m}"));
        let mut seen = vec![false; table.len()];
        let mut order = Vec::with_capacity(table.len());
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            if a >= table.len() {
                return Err(bad("node id out of range"));
            }
            if std::mem::replace(&mut seen[a], true) {
                return Err(bad("node reached twice"));
            }
            order.push(a);
            if let Some((l, r)) = table[a] {
                stack.push(r);
                stack.push(l);
            }
        }
        if order.len() != table.len() {
            return Err(bad("unreachable nodes"));
        }
        let mut new_id = vec![0; table.len()];
        for (i, &old) in order.iter().enumerate() {
            new_id[old] = i;
        }
        let children = order
            .iter()
            .map(|&old| table[old].map(|(l, r)| (new_id[l], new_id[r])))
            .collect();
        Ok(Self::build(children))
    }

    fn build(children: Vec<Option<(NodeId, NodeId)>>) -> Self {
        let n = children.len();
        let mut parent = vec![None; n];
        for (a, ch) in children.iter().enumerate() {
            if let Some((l, r)) = *ch {
                parent[l] = Some(a);
                parent[r] = Some(a);
            }
        }
        let mut lgf = vec![ExtNode::Lgh; n];
        let mut rgf = vec![ExtNode::Rgh; n];
        let mut labels = vec![SBLabel { r: 1, s: 1 }; n];
        let mut lengths = vec![
            BranchLengths {
                lgfl: 1,
                rgfl: 1,
                lchl: 1,
                rchl: 1
            };
            n
        ];
        // preorder: parents precede children
        for a in 0..n {
            if let Some((l, r)) = children[a] {
                lgf[l] = lgf[a];
                rgf[l] = ExtNode::Node(a);
                lgf[r] = ExtNode::Node(a);
                rgf[r] = rgf[a];
                lengths[l].rgfl = lengths[a].rgfl + 1;
                lengths[r].lgfl = lengths[a].lgfl + 1;
            }
        }
        let label = |e: ExtNode, labels: &[SBLabel]| match e {
            ExtNode::Lgh => SBLabel { r: 0, s: 1 },
            ExtNode::Rgh => SBLabel { r: 1, s: 0 },
            ExtNode::Node(id) => labels[id],
        };
        for a in 0..n {
            labels[a] = label(lgf[a], &labels) + label(rgf[a], &labels);
        }
        for a in (0..n).rev() {
            if let Some((l, r)) = children[a] {
                lengths[a].lchl = lengths[l].lchl + 1;
                lengths[a].rchl = lengths[r].rchl + 1;
            }
        }
        FullBinaryTree {
            children,
            parent,
            lgf,
            rgf,
            labels,
            lengths,
        }
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.len()
    }

    pub fn children(&self, a: NodeId) -> Option<(NodeId, NodeId)> {
        self.children[a]
    }

    pub fn lch(&self, a: NodeId) -> Option<NodeId> {
        self.children[a].map(|c| c.0)
    }

    pub fn rch(&self, a: NodeId) -> Option<NodeId> {
        self.children[a].map(|c| c.1)
    }

    pub fn parent(&self, a: NodeId) -> Option<NodeId> {
        self.parent[a]
    }

    pub fn is_leaf(&self, a: NodeId) -> bool {
        self.children[a].is_none()
    }

    pub fn lgf(&self, a: NodeId) -> ExtNode {
        self.lgf[a]
    }

    pub fn rgf(&self, a: NodeId) -> ExtNode {
        self.rgf[a]
    }

    pub fn branch_lengths(&self, a: NodeId) -> BranchLengths {
        self.lengths[a]
    }

    pub fn stern_brocot(&self, a: ExtNode) -> SBLabel {
        match a {
            ExtNode::Lgh => SBLabel { r: 0, s: 1 },
            ExtNode::Rgh => SBLabel { r: 1, s: 0 },
            ExtNode::Node(id) => self.labels[id],
        }
    }

    /// `|StBr|(a)`.
    pub fn weight(&self, a: ExtNode) -> u64 {
        self.stern_brocot(a).weight()
    }

    /// The order `<_Q` by the slope `r/s` of the labels.
    pub fn cmp_q(&self, a: ExtNode, b: ExtNode) -> Ordering {
        let x = self.stern_brocot(a);
        let y = self.stern_brocot(b);
        (x.r * y.s).cmp(&(y.r * x.s))
    }

    /// All nodes of `N(T)` in ascending `<_Q` order.
    pub fn sorted_nodes(&self) -> Vec<NodeId> {
        let mut v: Vec<NodeId> = self.nodes().collect();
        v.sort_by(|&a, &b| self.cmp_q(ExtNode::Node(a), ExtNode::Node(b)));
        v
    }

    pub fn node_sets(&self) -> NodeSets {
        let sorted = self.sorted_nodes();
        let n0 = sorted.iter().copied().filter(|&a| self.is_leaf(a)).collect();
        let n2: Vec<NodeId> = sorted.iter().copied().filter(|&a| !self.is_leaf(a)).collect();
        let mut nbar2 = vec![ExtNode::Lgh];
        nbar2.extend(n2.iter().map(|&a| ExtNode::Node(a)));
        nbar2.push(ExtNode::Rgh);
        NodeSets { n0, n2, nbar2 }
    }

    /// The node with the given godfathers, if any.
    pub fn find_by_godfathers(&self, lgf: ExtNode, rgf: ExtNode) -> Option<NodeId> {
        self.nodes().find(|&a| self.lgf[a] == lgf && self.rgf[a] == rgf)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(self.root(), &mut out);
        out
    }

    fn write_sexpr(&self, a: NodeId, out: &mut String) {
        match self.children[a] {
            None => out.push('L'),
            Some((l, r)) => {
                out.push('(');
                self.write_sexpr(l, out);
                out.push(' ');
                self.write_sexpr(r, out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for FullBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSets {
    pub n0: Vec<NodeId>,
    pub n2: Vec<NodeId>,
    /// `N2` together with the virtual nodes, ascending in `<_Q`.
    pub nbar2: Vec<ExtNode>,
}

pub fn serialize_tree(t: &FullBinaryTree) -> String {
    t.serialize()
}

/// Parses `tree := "L" | "(" tree " " tree ")"`.
pub fn parse_tree(text: &str) -> Result<FullBinaryTree> {
    struct P<'a> {
        s: &'a [u8],
        pos: usize,
        text: &'a str,
        children: Vec<Option<(NodeId, NodeId)>>,
    }
    impl P<'_> {
        fn err(&self, message: &str) -> Error {
            Error::Parse {
                what: "tree",
                input: self.text.to_string(),
                position: self.pos,
                message: message.to_string(),
            }
        }
        fn expect(&mut self, c: u8) -> Result<()> {
            if self.s.get(self.pos) == Some(&c) {
                self.pos += 1;
                Ok(())
            } else {
                Err(self.err(&format!("expected '{}'", c as char)))
            }
        }
        fn tree(&mut self, depth: usize) -> Result<NodeId> {
            if depth > 10_000 {
                return Err(self.err("nesting too deep"));
            }
            let id = self.children.len();
            self.children.push(None);
            match self.s.get(self.pos) {
                Some(b'L') => {
                    self.pos += 1;
                    Ok(id)
                }
                Some(b'(') => {
                    self.pos += 1;
                    let l = self.tree(depth + 1)?;
                    self.expect(b' ')?;
                    let r = self.tree(depth + 1)?;
                    self.expect(b')')?;
                    self.children[id] = Some((l, r));
                    Ok(id)
                }
                Some(_) => Err(self.err("expected 'L' or '('")),
                None => Err(self.err("unexpected end of input")),
            }
        }
    }
    let mut p = P {
        s: text.as_bytes(),
        pos: 0,
        text,
        children: Vec::new(),
    };
    p.tree(0)?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(FullBinaryTree::build(p.children))
}

/// A uniformly random full binary tree with `internal` internal nodes.
///
/// A random arrangement of `internal` branching symbols and `internal + 1`
/// leaf symbols has exactly one cyclic rotation that is a valid preorder
/// code; that rotation is uniform over all trees of this size.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, internal: usize) -> FullBinaryTree {
    use rand::seq::SliceRandom;
    let mut code: Vec<i32> = std::iter::repeat(1)
        .take(internal)
        .chain(std::iter::repeat(-1).take(internal + 1))
        .collect();
    code.shuffle(rng);
    // rotate to start just after the first minimum of the prefix sums
    let mut sum = 0;
    let mut min = i32::MAX;
    let mut start = 0;
    for (i, &c) in code.iter().enumerate() {
        sum += c;
        if sum < min {
            min = sum;
            start = i + 1;
        }
    }
    let len = code.len();
    code.rotate_left(start % len);
    let mut children: Vec<Option<(NodeId, NodeId)>> = vec![None; code.len()];
    let mut pos = 0;
    fn go(code: &[i32], pos: &mut usize, children: &mut [Option<(NodeId, NodeId)>]) -> NodeId {
        let id = *pos;
        *pos += 1;
        if code[id] == 1 {
            let l = go(code, pos, children);
            let r = go(code, pos, children);
            children[id] = Some((l, r));
        }
        id
    }
    go(&code, &mut pos, &mut children);
    debug_assert_eq!(pos, code.len());
    FullBinaryTree::build(children)
}

/// Checks the order properties of the Stern-Brocot labelling on `t` and
/// returns a description of each violation.
///
/// Covered: unimodularity of `(lgf a, a, rgf a)`, coprime labels, injectivity
/// of the slope, `lgf a < a < rgf a`, `a < rgf(lgf a)`, `lgf(rgf a) < a`,
/// minimality of `a` between its godfathers, and density of `N(T)` between
/// consecutive elements of `N̄2(T)`.
pub fn order_lemma_violations(t: &FullBinaryTree) -> Vec<String> {
    use num_integer::Integer;
    let mut out = Vec::new();
    let mut ext: Vec<ExtNode> = vec![ExtNode::Lgh, ExtNode::Rgh];
    ext.extend(t.nodes().map(ExtNode::Node));
    let lt = |a: ExtNode, b: ExtNode| t.cmp_q(a, b) == Ordering::Less;
    for a in t.nodes() {
        let an = ExtNode::Node(a);
        let x = t.stern_brocot(an);
        let l = t.stern_brocot(t.lgf(a));
        let r = t.stern_brocot(t.rgf(a));
        let dets = [
            x.r as i64 * l.s as i64 - l.r as i64 * x.s as i64,
            r.r as i64 * x.s as i64 - x.r as i64 * r.s as i64,
            r.r as i64 * l.s as i64 - l.r as i64 * r.s as i64,
        ];
        if dets != [1, 1, 1] {
            out.push(format!("{an}: determinants {dets:?}"));
        }
        if !(lt(t.lgf(a), an) && lt(an, t.rgf(a))) {
            out.push(format!("{an}: not between its godfathers"));
        }
        if let ExtNode::Node(g) = t.lgf(a) {
            if !lt(an, t.rgf(g)) {
                out.push(format!("{an}: not below rgf(lgf a)"));
            }
        }
        if let ExtNode::Node(g) = t.rgf(a) {
            if !lt(t.lgf(g), an) {
                out.push(format!("{an}: not above lgf(rgf a)"));
            }
        }
        for &b in &ext {
            if b != an && t.weight(b) <= t.weight(an) && lt(t.lgf(a), b) && lt(b, t.rgf(a)) {
                out.push(format!("{an}: {b} lies between the godfathers with smaller weight"));
            }
        }
    }
    for &a in &ext {
        let x = t.stern_brocot(a);
        if x.r.gcd(&x.s) != 1 {
            out.push(format!("{a}: label ({}, {}) not coprime", x.r, x.s));
        }
    }
    for (i, &a) in ext.iter().enumerate() {
        for &b in &ext[i + 1..] {
            if t.cmp_q(a, b) == Ordering::Equal {
                out.push(format!("{a} and {b} have the same slope"));
            }
        }
    }
    let nbar2 = t.node_sets().nbar2;
    for w in nbar2.windows(2) {
        if !t.nodes().any(|c| lt(w[0], ExtNode::Node(c)) && lt(ExtNode::Node(c), w[1])) {
            out.push(format!("no node between {} and {}", w[0], w[1]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t1 = parse_tree("L").unwrap();
        assert_eq!(t1.len(), 1);
        let t2 = parse_tree("(L L)").unwrap();
        assert_eq!(t2.children(0), Some((1, 2)));
        assert_eq!(parse_tree("(L (L L))").unwrap().node_sets().n2.len(), 2);
        assert_eq!(parse_tree("((L L) (L L))").unwrap().len(), 7);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_tree("(L L") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_tree("(L  L)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_tree("(L)").is_err());
        assert!(parse_tree("L L").is_err());
        assert!(parse_tree("").is_err());
    }

    #[test]
    fn godfathers_on_t2() {
        let t = appendix(2);
        let (l, r) = t.children(0).unwrap();
        assert_eq!(t.lgf(0), ExtNode::Lgh);
        assert_eq!(t.rgf(0), ExtNode::Rgh);
        assert_eq!(t.rgf(l), ExtNode::Node(0));
        assert_eq!(t.lgf(r), ExtNode::Node(0));
        let bl = t.branch_lengths(0);
        assert_eq!((bl.lgfl, bl.rgfl, bl.lchl, bl.rchl), (1, 1, 2, 2));
        assert_eq!(t.branch_lengths(l).lchl, 1);
        assert_eq!(t.branch_lengths(l).rchl, 1);
    }

    #[test]
    fn labels_and_order() {
        let t = appendix(4);
        let (l, r) = t.children(0).unwrap();
        assert_eq!(t.stern_brocot(ExtNode::Node(0)), SBLabel { r: 1, s: 1 });
        assert_eq!(t.stern_brocot(ExtNode::Node(l)), SBLabel { r: 1, s: 2 });
        assert_eq!(t.cmp_q(ExtNode::Node(l), ExtNode::Node(0)), Ordering::Less);
        assert_eq!(t.cmp_q(ExtNode::Node(0), ExtNode::Node(r)), Ordering::Less);
        assert_eq!(t.cmp_q(ExtNode::Lgh, ExtNode::Node(l)), Ordering::Less);
        assert_eq!(t.cmp_q(ExtNode::Node(r), ExtNode::Rgh), Ordering::Less);
    }

    #[test]
    fn node_sets_small() {
        let s1 = appendix(1).node_sets();
        assert_eq!(s1.n0, vec![0]);
        assert!(s1.n2.is_empty());
        assert_eq!(s1.nbar2, vec![ExtNode::Lgh, ExtNode::Rgh]);
        let s2 = appendix(2).node_sets();
        assert_eq!(s2.nbar2, vec![ExtNode::Lgh, ExtNode::Node(0), ExtNode::Rgh]);
    }

    #[test]
    fn appendix_round_trips() {
        for (i, s) in APPENDIX.iter().enumerate() {
            assert_eq!(&appendix(i + 1).serialize(), s);
        }
    }

    #[test]
    fn child_table_renumbers() {
        // root 2 with children 0 (leaf) and 1 (leaf)
        let t = FullBinaryTree::from_child_table(&[None, None, Some((0, 1))], 2).unwrap();
        assert_eq!(t, appendix(2));
        assert!(FullBinaryTree::from_child_table(&[Some((1, 1)), None], 0).is_err());
        assert!(FullBinaryTree::from_child_table(&[None, None], 0).is_err());
    }

    #[test]
    fn random_trees_have_requested_size() {
        let mut rng = rand::thread_rng();
        for k in 0..12 {
            let t = random_tree(&mut rng, k);
            assert_eq!(t.len(), 2 * k + 1);
            assert_eq!(parse_tree(&t.serialize()).unwrap(), t);
        }
    }
}
