use std::collections::HashMap;

use super::{chi, Braiding, Multidegree, NCPoly};
use crate::error::{Error, Result};
use crate::fbtree::{ExtNode, FullBinaryTree};
use crate::lyndon::{is_lyndon, shirshow, Letter, Word};

/// The q-commutator `u v - chi(deg u, deg v) v u`.
fn qcommutator(b: &Braiding, u: &NCPoly, du: Multidegree, v: &NCPoly, dv: Multidegree) -> NCPoly {
    &(u * v) - &(v * u).scale(&chi(b, du, dv))
}

/// Memoized evaluation of `tau0` on the nodes of one tree.
pub struct Tau0<'a> {
    tree: &'a FullBinaryTree,
    braiding: &'a Braiding,
    memo: HashMap<ExtNode, NCPoly>,
}

impl<'a> Tau0<'a> {
    pub fn new(tree: &'a FullBinaryTree, braiding: &'a Braiding) -> Self {
        let mut memo = HashMap::new();
        memo.insert(ExtNode::Lgh, NCPoly::var(2));
        memo.insert(ExtNode::Rgh, NCPoly::var(1));
        Tau0 { tree, braiding, memo }
    }

    pub fn degree(&self, a: ExtNode) -> Multidegree {
        self.tree.stern_brocot(a).into()
    }

    /// `tau0(a) = tau0(rgf a) tau0(lgf a) - chi(rgf a, lgf a) tau0(lgf a) tau0(rgf a)`.
    pub fn get(&mut self, a: ExtNode) -> NCPoly {
        if let Some(p) = self.memo.get(&a) {
            return p.clone();
        }
        let id = a.node().expect("virtual nodes are seeded");
        let (l, r) = (self.tree.lgf(id), self.tree.rgf(id));
        let tl = self.get(l);
        let tr = self.get(r);
        let p = qcommutator(self.braiding, &tr, self.degree(r), &tl, self.degree(l));
        self.memo.insert(a, p.clone());
        p
    }
}

pub fn tau0(t: &FullBinaryTree, b: &Braiding, a: ExtNode) -> NCPoly {
    Tau0::new(t, b).get(a)
}

fn word_degree(u: &Word) -> Multidegree {
    let beta = u.count_beta() as u32;
    Multidegree::new(beta, u.len() as u32 - beta)
}

/// The bracket `[u]` of a Lyndon word: `[α] = x2`, `[β] = x1`, and
/// `[u] = [w][v] - chi([w],[v]) [v][w]` for the Shirshow split `u = vw`.
pub fn bracket_word(b: &Braiding, u: &Word) -> Result<NCPoly> {
    fn go(b: &Braiding, u: &Word, memo: &mut HashMap<Word, NCPoly>) -> Result<NCPoly> {
        if let Some(p) = memo.get(u) {
            return Ok(p.clone());
        }
        let p = if u.len() == 1 {
            match u.get(0) {
                Letter::Alpha => NCPoly::var(2),
                Letter::Beta => NCPoly::var(1),
            }
        } else {
            let (v, w) = shirshow(u)?;
            let pv = go(b, &v, memo)?;
            let pw = go(b, &w, memo)?;
            qcommutator(b, &pw, word_degree(&w), &pv, word_degree(&v))
        };
        memo.insert(u.clone(), p.clone());
        Ok(p)
    }
    if !is_lyndon(u)? {
        return Err(Error::Domain(format!("{u} is not a Lyndon word")));
    }
    go(b, u, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;
    use crate::fbtree::appendix;

    fn generic() -> Braiding {
        Braiding::new(
            root_of_unity(1, 5),
            root_of_unity(1, 7),
            root_of_unity(2, 9),
            root_of_unity(1, 4),
        )
        .unwrap()
    }

    #[test]
    fn tau0_examples() {
        let b = generic();
        let t = appendix(2);
        let x1 = NCPoly::var(1);
        let x2 = NCPoly::var(2);
        assert_eq!(tau0(&t, &b, ExtNode::Lgh), x2);
        let root = &(&x1 * &x2) - &(&x2 * &x1).scale(b.q12());
        assert_eq!(tau0(&t, &b, ExtNode::Node(0)), root);
        let l = ExtNode::Node(t.lch(0).unwrap());
        let expect = &(&root * &x2) - &(&x2 * &root).scale(&(b.q12() * b.q22()));
        assert_eq!(tau0(&t, &b, l), expect);
    }

    #[test]
    fn bracket_examples() {
        let b = generic();
        let t = appendix(2);
        assert_eq!(bracket_word(&b, &Word::parse("a").unwrap()).unwrap(), NCPoly::var(2));
        assert_eq!(bracket_word(&b, &Word::parse("b").unwrap()).unwrap(), NCPoly::var(1));
        assert_eq!(
            bracket_word(&b, &Word::parse("ab").unwrap()).unwrap(),
            tau0(&t, &b, ExtNode::Node(0))
        );
        assert_eq!(
            bracket_word(&b, &Word::parse("aab").unwrap()).unwrap(),
            tau0(&t, &b, ExtNode::Node(t.lch(0).unwrap()))
        );
        assert!(bracket_word(&b, &Word::parse("ba").unwrap()).is_err());
    }
}
