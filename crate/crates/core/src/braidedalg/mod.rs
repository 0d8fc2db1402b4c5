//! The tensor algebra of a two-dimensional braided vector space of diagonal
//! type: the bicharacter, bracket elements, the quantum symmetrizer and
//! skew derivations.

mod brackets;
mod derivations;
mod poly;
pub mod symmetrizer;
mod zerotest;

pub use brackets::{bracket_word, tau0, Tau0};
pub use derivations::{pair, pair_scalar, skew_derivation};
pub use poly::{parse_ncpoly, Monomial, NCPoly};
pub use symmetrizer::{symmetrizer, SymBlock};
pub use zerotest::{
    is_zero_in_nichols, zero_test, zero_tests, TestByDerivations, TestBySymmetrizer, ZeroTest,
};

use std::fmt;

use num_integer::Integer;

use crate::cyclotomic::{parse_scalar, CycNum};
use crate::error::{Error, Result};

/// The braiding matrix `(q_ij)` with respect to a canonical basis `x1, x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    q: [[CycNum; 2]; 2],
    q_inv: [[CycNum; 2]; 2],
}

impl Braiding {
    pub fn new(q11: CycNum, q12: CycNum, q21: CycNum, q22: CycNum) -> Result<Braiding> {
        let q = [[q11, q12], [q21, q22]];
        let inv = |v: &CycNum| v.inv().map_err(|_| Error::Domain("braiding entries must be nonzero".into()));
        let q_inv = [
            [inv(&q[0][0])?, inv(&q[0][1])?],
            [inv(&q[1][0])?, inv(&q[1][1])?],
        ];
        Ok(Braiding { q, q_inv })
    }

    /// Builds a braiding from four scalars in the `[-]k/N` grammar.
    pub fn from_strings(q11: &str, q12: &str, q21: &str, q22: &str) -> Result<Braiding> {
        Braiding::new(
            parse_scalar(q11)?,
            parse_scalar(q12)?,
            parse_scalar(q21)?,
            parse_scalar(q22)?,
        )
    }

    /// `q_ij` for `i, j` in `{1, 2}`.
    pub fn q(&self, i: u8, j: u8) -> &CycNum {
        &self.q[i as usize - 1][j as usize - 1]
    }

    pub fn q_inv(&self, i: u8, j: u8) -> &CycNum {
        &self.q_inv[i as usize - 1][j as usize - 1]
    }

    pub fn q11(&self) -> &CycNum {
        self.q(1, 1)
    }
    pub fn q12(&self) -> &CycNum {
        self.q(1, 2)
    }
    pub fn q21(&self) -> &CycNum {
        self.q(2, 1)
    }
    pub fn q22(&self) -> &CycNum {
        self.q(2, 2)
    }

    /// `q12 q21`, the only off-diagonal datum the classification depends on.
    pub fn q12q21(&self) -> CycNum {
        self.q12() * self.q21()
    }

    /// A common conductor containing all four entries.
    pub fn conductor(&self) -> u32 {
        self.q
            .iter()
            .flatten()
            .map(|v| v.normalized().conductor())
            .fold(1, |a, b| a.lcm(&b))
    }

    /// If every entry is a root of unity: the lcm `N` of their orders and
    /// exponents `k_ij` with `q_ij = zeta_N^k_ij`.
    pub fn root_exponents(&self) -> Option<(u32, [[u32; 2]; 2])> {
        let orders: Vec<u32> = self.q.iter().flatten().map(|v| v.order()).collect::<Option<_>>()?;
        let n = orders.iter().fold(1u32, |a, &b| a.lcm(&b));
        let mut k = [[0u32; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                k[i][j] = (0..n).find(|&e| crate::cyclotomic::root_of_unity(e as i64, n) == self.q[i][j])?;
            }
        }
        Some((n, k))
    }

    /// The same braiding with `q12 -> c q12`, `q21 -> c^-1 q21`.
    pub fn rescaled(&self, c: &CycNum) -> Result<Braiding> {
        Braiding::new(
            self.q11().clone(),
            self.q12() * c,
            self.q21() * &c.inv()?,
            self.q22().clone(),
        )
    }
}

impl fmt::Display for Braiding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q11={} q12={} q21={} q22={}",
            self.q11(),
            self.q12(),
            self.q21(),
            self.q22()
        )
    }
}

/// An element of `N0^2`; `d1` counts `x1`, `d2` counts `x2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    pub d1: u32,
    pub d2: u32,
}

impl Multidegree {
    pub fn new(d1: u32, d2: u32) -> Multidegree {
        Multidegree { d1, d2 }
    }

    pub fn e(i: u8) -> Multidegree {
        if i == 1 {
            Multidegree::new(1, 0)
        } else {
            Multidegree::new(0, 1)
        }
    }

    pub fn total(self) -> u32 {
        self.d1 + self.d2
    }

    pub fn of_word(w: &[u8]) -> Multidegree {
        let d1 = w.iter().filter(|&&l| l == 1).count() as u32;
        Multidegree::new(d1, w.len() as u32 - d1)
    }

    pub fn scaled(self, k: u32) -> Multidegree {
        Multidegree::new(self.d1 * k, self.d2 * k)
    }
}

impl std::ops::Add for Multidegree {
    type Output = Multidegree;
    fn add(self, o: Multidegree) -> Multidegree {
        Multidegree::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl From<crate::fbtree::SBLabel> for Multidegree {
    fn from(l: crate::fbtree::SBLabel) -> Multidegree {
        Multidegree::new(l.r as u32, l.s as u32)
    }
}

/// `chi(d, e) = q11^(d1 e1) q12^(d1 e2) q21^(d2 e1) q22^(d2 e2)`.
pub fn chi(b: &Braiding, d: Multidegree, e: Multidegree) -> CycNum {
    let terms = [
        (b.q11(), d.d1 * e.d1),
        (b.q12(), d.d1 * e.d2),
        (b.q21(), d.d2 * e.d1),
        (b.q22(), d.d2 * e.d2),
    ];
    terms
        .iter()
        .filter(|(_, k)| *k > 0)
        .fold(CycNum::one(), |acc, (q, k)| &acc * &q.pow(*k as u64))
}

/// `chi(d, e)^-1`.
pub fn chi_inv(b: &Braiding, d: Multidegree, e: Multidegree) -> CycNum {
    let terms = [
        (b.q_inv(1, 1), d.d1 * e.d1),
        (b.q_inv(1, 2), d.d1 * e.d2),
        (b.q_inv(2, 1), d.d2 * e.d1),
        (b.q_inv(2, 2), d.d2 * e.d2),
    ];
    terms
        .iter()
        .filter(|(_, k)| *k > 0)
        .fold(CycNum::one(), |acc, (q, k)| &acc * &q.pow(*k as u64))
}
