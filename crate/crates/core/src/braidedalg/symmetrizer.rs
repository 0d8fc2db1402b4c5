//! The quantum symmetrizer `S_m = (id ⊗ S_{m-1}) ∘ S_{1,m-1}` on `V^{⊗m}`,
//! where `S_{1,m-1}` moves each letter to the front past the letters on its
//! left using `σ^-1(x_i ⊗ x_j) = q_ji^-1 x_j ⊗ x_i`.
//!
//! `S_m` preserves multidegree, so it is stored block by block.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Braiding, Monomial, Multidegree, NCPoly};
use crate::cyclotomic::tables::canonical_conductor;
use crate::cyclotomic::{root_of_unity, CycNum};
use crate::linalg::{integral_row, rank_integral, ZElem};

/// All words of multidegree `d`, in lexicographic order (`x1 < x2`).
pub fn words_of_degree(d: Multidegree) -> Vec<Monomial> {
    fn go(a: u32, b: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if a == 0 && b == 0 {
            out.push(cur.clone());
            return;
        }
        if a > 0 {
            cur.push(1);
            go(a - 1, b, cur, out);
            cur.pop();
        }
        if b > 0 {
            cur.push(2);
            go(a, b - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d.d1, d.d2, &mut Vec::new(), &mut out);
    out
}

fn word_index(w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &l| 2 * acc + (l as usize - 1))
}

/// Images `S_m(w)` of single words with general coefficients, memoized.
pub struct SymmetrizerCache<'a> {
    braiding: &'a Braiding,
    memo: HashMap<Monomial, BTreeMap<Monomial, CycNum>>,
}

impl<'a> SymmetrizerCache<'a> {
    pub fn new(braiding: &'a Braiding) -> Self {
        SymmetrizerCache {
            braiding,
            memo: HashMap::new(),
        }
    }

    pub fn image(&mut self, w: &[u8]) -> BTreeMap<Monomial, CycNum> {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let mut out: BTreeMap<Monomial, CycNum> = BTreeMap::new();
        if w.len() <= 1 {
            out.insert(w.to_vec(), CycNum::one());
        } else {
            for p in 0..w.len() {
                let jp = w[p];
                let coeff = w[..p]
                    .iter()
                    .fold(CycNum::one(), |acc, &jl| &acc * self.braiding.q_inv(jp, jl));
                let mut rest = Vec::with_capacity(w.len() - 1);
                rest.extend_from_slice(&w[..p]);
                rest.extend_from_slice(&w[p + 1..]);
                for (u, c) in self.image(&rest) {
                    let mut v = Vec::with_capacity(w.len());
                    v.push(jp);
                    v.extend_from_slice(&u);
                    let term = &coeff * &c;
                    let e = out.entry(v).or_insert_with(CycNum::zero);
                    *e += &term;
                }
            }
            out.retain(|_, c| !c.is_zero());
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    /// `S_m(rho)` for a polynomial all of whose terms have degree `m`.
    pub fn apply(&mut self, rho: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in rho.terms() {
            for (v, s) in self.image(w) {
                out.add_term(v, &(&s * c));
            }
        }
        out
    }
}

/// The `2^m x 2^m` matrix of `S_m` in the word basis (words ordered
/// lexicographically); column `w` holds the coordinates of `S_m(w)`.
pub fn symmetrizer(b: &Braiding, m: u32) -> Vec<Vec<CycNum>> {
    let size = 1usize << m;
    let mut mat = vec![vec![CycNum::zero(); size]; size];
    let mut cache = SymmetrizerCache::new(b);
    for d1 in 0..=m {
        for w in words_of_degree(Multidegree::new(d1, m - d1)) {
            let col = word_index(&w);
            for (v, c) in cache.image(&w) {
                mat[word_index(&v)][col] = c;
            }
        }
    }
    mat
}

/// One multidegree block of `S_m` over `Z[zeta_n]`, scaled by a common
/// denominator `den` so that all entries are integral.
#[derive(Clone, Debug)]
pub struct SymBlock {
    pub degree: Multidegree,
    n: u32,
    words: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `images[w][v]`: coordinate of `v` in `den * S_m(w)`.
    images: Vec<Vec<ZElem>>,
    den: BigInt,
}

impl SymBlock {
    /// The natural conductor over which the block is computed.
    pub fn natural_conductor(b: &Braiding) -> u32 {
        match b.root_exponents() {
            Some((n, _)) => canonical_conductor(n),
            None => b.conductor(),
        }
    }

    pub fn build(b: &Braiding, d: Multidegree) -> SymBlock {
        SymBlock::build_at(b, d, SymBlock::natural_conductor(b))
    }

    /// Builds the block over `Q(zeta_n)`; `n` must be a multiple of the
    /// natural conductor.
    pub fn build_at(b: &Braiding, d: Multidegree, n: u32) -> SymBlock {
        let n = canonical_conductor(n);
        assert_eq!(n % SymBlock::natural_conductor(b), 0, "conductor too small for this braiding");
        let words = words_of_degree(d);
        let index: HashMap<Monomial, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let (images, den) = match b.root_exponents() {
            Some((order, k)) => (images_by_exponents(order, k, d, n), BigInt::one()),
            None => images_general(b, &words, &index, n),
        };
        SymBlock {
            degree: d,
            n,
            words,
            index,
            images,
            den,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Monomial] {
        &self.words
    }

    /// Rank of the block, which is `dim B(V)_d`.
    pub fn rank(&self) -> usize {
        rank_integral(self.n, self.images.clone())
    }

    /// Coordinates of a nonzero multiple of `S_m(rho)`, or `None` when a
    /// coefficient of `rho` is outside `Q(zeta_n)` or has the wrong degree.
    pub fn image_row(&self, rho: &NCPoly) -> Option<Vec<ZElem>> {
        let t = crate::cyclotomic::tables::tables(self.n);
        let mut coeffs: Vec<(usize, CycNum)> = Vec::with_capacity(rho.len());
        for (w, c) in rho.terms() {
            let idx = *self.index.get(w)?;
            let c = c.normalized();
            if self.n % c.conductor() != 0 {
                return None;
            }
            coeffs.push((idx, c.embed(self.n)));
        }
        let row_vals: Vec<CycNum> = coeffs.iter().map(|(_, c)| c.clone()).collect();
        let int_coeffs = integral_row(&row_vals, self.n);
        let mut row = vec![vec![BigInt::zero(); t.phi]; self.size()];
        for ((w, _), c) in coeffs.iter().zip(&int_coeffs) {
            for (v, e) in self.images[*w].iter().enumerate() {
                if e.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let prod = crate::cyclotomic::mul_reduce(&t, c, e);
                for (acc, x) in row[v].iter_mut().zip(prod) {
                    *acc += x;
                }
            }
        }
        Some(row)
    }

    /// Whether `S_m(rho) = 0`; `None` if `rho` does not fit the block.
    pub fn annihilates(&self, rho: &NCPoly) -> Option<bool> {
        let row = self.image_row(rho)?;
        Some(row.iter().all(|e| e.iter().all(|x| x.is_zero())))
    }

    /// Rank of `{ S_m(p) }` for polynomials in this block.
    pub fn image_rank(&self, polys: &[NCPoly]) -> Option<usize> {
        let rows: Vec<Vec<ZElem>> = polys.iter().map(|p| self.image_row(p)).collect::<Option<_>>()?;
        Some(rank_integral(self.n, rows))
    }

    /// The block entries as field elements: `S_m(w)` for each word `w`.
    pub fn image(&self, w: &[u8]) -> Option<NCPoly> {
        let idx = *self.index.get(w)?;
        let mut out = NCPoly::zero();
        let den = CycNum::from_rational(&num_rational::BigRational::new(BigInt::one(), self.den.clone()));
        for (v, e) in self.images[idx].iter().enumerate() {
            if e.iter().all(|x| x.is_zero()) {
                continue;
            }
            let coeffs: Vec<num_rational::BigRational> =
                e.iter().map(|x| num_rational::BigRational::from_integer(x.clone())).collect();
            let c = CycNum::from_power_coeffs(self.n, &coeffs);
            out.add_term(self.words[v].clone(), &(&c * &den));
        }
        Some(out)
    }
}

/// Fast path for braidings of roots of unity: all entries are sums of powers
/// of one primitive root `g` of order `order`, tracked as exponent counts.
fn images_by_exponents(order: u32, k: [[u32; 2]; 2], d: Multidegree, n: u32) -> Vec<Vec<ZElem>> {
    let ord = order as usize;
    let kk = |i: u8, j: u8| k[i as usize - 1][j as usize - 1] as usize;
    // content (a, b) -> (words, index)
    let mut layers: HashMap<(u32, u32), (Vec<Monomial>, HashMap<Monomial, usize>)> = HashMap::new();
    for a in 0..=d.d1 {
        for b in 0..=d.d2 {
            let ws = words_of_degree(Multidegree::new(a, b));
            let idx = ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
            layers.insert((a, b), (ws, idx));
        }
    }
    // images[(a,b)][w][v] = exponent counts, length ord
    type Counts = Vec<i64>;
    let mut images: HashMap<(u32, u32), Vec<Vec<Counts>>> = HashMap::new();
    for total in 0..=d.total() {
        for a in 0..=d.d1.min(total) {
            let b = total - a;
            if b > d.d2 {
                continue;
            }
            let (ws, _) = &layers[&(a, b)];
            let size = ws.len();
            let mut block = vec![vec![vec![0i64; ord]; size]; size];
            if total <= 1 {
                for (i, row) in block.iter_mut().enumerate() {
                    row[i][0] = 1;
                }
            } else {
                for (wi, w) in ws.iter().enumerate() {
                    for p in 0..w.len() {
                        let jp = w[p];
                        let shift = w[..p].iter().map(|&jl| ord - kk(jp, jl) % ord).sum::<usize>() % ord;
                        let mut rest = Vec::with_capacity(w.len() - 1);
                        rest.extend_from_slice(&w[..p]);
                        rest.extend_from_slice(&w[p + 1..]);
                        let sub_key = if jp == 1 { (a - 1, b) } else { (a, b - 1) };
                        let (_, sub_idx) = &layers[&sub_key];
                        let ri = sub_idx[&rest];
                        let sub_row = &images[&sub_key][ri];
                        let (sub_words, _) = &layers[&sub_key];
                        let (_, idx) = &layers[&(a, b)];
                        for (ui, counts) in sub_row.iter().enumerate() {
                            if counts.iter().all(|&c| c == 0) {
                                continue;
                            }
                            let mut v = Vec::with_capacity(w.len());
                            v.push(jp);
                            v.extend_from_slice(&sub_words[ui]);
                            let vi = idx[&v];
                            let target = &mut block[wi][vi];
                            for (e, &c) in counts.iter().enumerate() {
                                if c != 0 {
                                    target[(e + shift) % ord] += c;
                                }
                            }
                        }
                    }
                }
            }
            images.insert((a, b), block);
        }
    }
    let basis: Vec<Vec<BigInt>> = (0..ord)
        .map(|e| root_of_unity(e as i64, order).embed(n).numerators().to_vec())
        .collect();
    let phi = basis[0].len();
    let top = images.remove(&(d.d1, d.d2)).expect("top block computed");
    top.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|counts| {
                    let mut out = vec![BigInt::zero(); phi];
                    for (e, c) in counts.into_iter().enumerate() {
                        if c != 0 {
                            for (o, bi) in out.iter_mut().zip(&basis[e]) {
                                if !bi.is_zero() {
                                    *o += bi * c;
                                }
                            }
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn images_general(
    b: &Braiding,
    words: &[Monomial],
    index: &HashMap<Monomial, usize>,
    n: u32,
) -> (Vec<Vec<ZElem>>, BigInt) {
    let mut cache = SymmetrizerCache::new(b);
    let rows: Vec<Vec<CycNum>> = words
        .iter()
        .map(|w| {
            let mut row = vec![CycNum::zero(); words.len()];
            for (v, c) in cache.image(w) {
                row[index[&v]] = c.embed(n);
            }
            row
        })
        .collect();
    let den = rows
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
    let images = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let f = &den / c.denominator();
                    c.numerators().iter().map(|x| x * &f).collect()
                })
                .collect()
        })
        .collect();
    (images, den)
}
