//! Words over the ordered alphabet `α < β`, Lyndon words and the Shirshow
//! decomposition.
//!
//! In text, `a` stands for α and `b` for β.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fbtree::{ExtNode, FullBinaryTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Alpha,
    Beta,
}

/// A word stored as a packed bit sequence (`α` = 0, `β` = 1).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    len: usize,
    bits: Vec<u64>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: Letter) -> Word {
        Word::from_letters([l])
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut w = Word::empty();
        for (i, ch) in text.chars().enumerate() {
            match ch {
                'a' => w.push(Letter::Alpha),
                'b' => w.push(Letter::Beta),
                _ => {
                    return Err(Error::Parse {
                        what: "word",
                        input: text.to_string(),
                        position: i,
                        message: "expected 'a' or 'b'".into(),
                    })
                }
            }
        }
        Ok(w)
    }

    pub fn push(&mut self, l: Letter) {
        if self.len % 64 == 0 {
            self.bits.push(0);
        }
        if l == Letter::Beta {
            self.bits[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Letter {
        assert!(i < self.len);
        if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            Letter::Beta
        } else {
            Letter::Alpha
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    /// The subword on positions `from..to`.
    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word::from_letters((from..to).map(|i| self.get(i)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in other.letters() {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, h: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..h {
            w = w.concat(self);
        }
        w
    }

    /// Number of β letters.
    pub fn count_beta(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            f.write_str(if l == Letter::Alpha { "a" } else { "b" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Lexicographic order: a proper prefix is smaller.
pub fn lex_cmp(u: &Word, v: &Word) -> Ordering {
    for (a, b) in u.letters().zip(v.letters()) {
        match a.cmp(&b) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    u.len.cmp(&v.len)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lyndon test by the suffix criterion: `u` is smaller than each proper suffix.
pub fn is_lyndon(u: &Word) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::Domain("the empty word is not a Lyndon candidate".into()));
    }
    Ok((1..u.len()).all(|i| lex_cmp(u, &u.slice(i, u.len())) == Ordering::Less))
}

/// Lyndon test from the definition: `vw < wv` for every split with `v, w` nonempty.
pub fn is_lyndon_definitional(u: &Word) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::Domain("the empty word is not a Lyndon candidate".into()));
    }
    Ok((1..u.len()).all(|i| {
        let v = u.slice(0, i);
        let w = u.slice(i, u.len());
        lex_cmp(u, &w.concat(&v)) == Ordering::Less
    }))
}

/// The split `u = vw` into Lyndon words with `|v|` minimal.
pub fn shirshow(u: &Word) -> Result<(Word, Word)> {
    if !is_lyndon(u)? || u.len() < 2 {
        return Err(Error::Domain(format!(
            "Shirshow decomposition needs a Lyndon word of length >= 2, got {u}"
        )));
    }
    for i in 1..u.len() {
        let v = u.slice(0, i);
        let w = u.slice(i, u.len());
        if is_lyndon(&v)? && is_lyndon(&w)? {
            return Ok((v, w));
        }
    }
    unreachable!("a Lyndon word of length >= 2 always splits into Lyndon words")
}

/// The unique factorization into a nonincreasing sequence of Lyndon words.
pub fn lyndon_factorization(u: &Word) -> Vec<Word> {
    // Duval's algorithm
    let n = u.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && u.get(k) <= u.get(j) {
            if u.get(k) < u.get(j) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(u.slice(i, i + j - k));
            i += j - k;
        }
    }
    out
}

/// The map `γ`: `γ(lgh) = α`, `γ(rgh) = β`, `γ(a) = γ(lgf a) γ(rgf a)`.
pub fn gamma(t: &FullBinaryTree) -> BTreeMap<ExtNode, Word> {
    let mut map = BTreeMap::new();
    map.insert(ExtNode::Lgh, Word::letter(Letter::Alpha));
    map.insert(ExtNode::Rgh, Word::letter(Letter::Beta));
    // preorder numbering: godfathers precede the node
    for a in t.nodes() {
        let w = map[&t.lgf(a)].concat(&map[&t.rgf(a)]);
        map.insert(ExtNode::Node(a), w);
    }
    map
}
