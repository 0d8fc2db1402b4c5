//! Exact rank computation over a cyclotomic field.
//!
//! Matrices are moved to a single conductor, rows are cleared of denominators
//! (which does not change the rank), and Bareiss fraction-free elimination is
//! run over `Z[zeta_N]`. The division by the previous pivot is exact in that
//! ring; it is carried out with the field inverse of the pivot.
//!
//! Reduction modulo a prime ideal of `Z[zeta_N]` can only lower the rank, so
//! a matrix that already has full rank modulo such a prime skips elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclotomic::tables::{tables, Tables};
use crate::cyclotomic::{bit_size, mul_reduce, CycNum};

/// An element of `Z[zeta_N]` for an externally fixed conductor.
pub(crate) type ZElem = Vec<BigInt>;

/// Common conductor of a collection of values.
pub(crate) fn common_conductor<'a>(vals: impl IntoIterator<Item = &'a CycNum>) -> u32 {
    vals.into_iter()
        .fold(1u32, |acc, v| acc / acc.gcd(&v.conductor()) * v.conductor())
}

/// Clears denominators of a row at conductor `n`.
pub(crate) fn integral_row(row: &[CycNum], n: u32) -> Vec<ZElem> {
    let embedded: Vec<CycNum> = row.iter().map(|v| v.embed(n)).collect();
    let den = embedded
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denominator()));
    embedded
        .iter()
        .map(|v| {
            let f = &den / v.denominator();
            v.numerators().iter().map(|c| c * &f).collect()
        })
        .collect()
}

/// Rank of a matrix given by rows of cyclotomic numbers.
pub fn rank(rows: &[Vec<CycNum>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = common_conductor(rows.iter().flatten());
    let int_rows: Vec<Vec<ZElem>> = rows.iter().map(|r| integral_row(r, n)).collect();
    rank_integral(n, int_rows)
}

fn is_zero(e: &ZElem) -> bool {
    e.iter().all(|c| c.is_zero())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// A prime `p = 1 (mod n)` below `2^31` and a root of `Phi_n` modulo `p`.
fn modular_point(n: u32) -> (u64, u64) {
    let n = n as u64;
    let mut k = (1u64 << 31) / n;
    let p = loop {
        if is_prime(k * n + 1) {
            break k * n + 1;
        }
        k -= 1;
    };
    let primes = crate::cyclotomic::tables::prime_divisors(n as u32);
    let w = (2..p)
        .map(|a| pow_mod(a, (p - 1) / n, p))
        .find(|&w| primes.iter().all(|&l| pow_mod(w, n / l as u64, p) != 1))
        .expect("the multiplicative group is cyclic");
    (p, w)
}

fn rank_mod(n: u32, m: &[Vec<ZElem>]) -> usize {
    let (p, w) = modular_point(n);
    let pb = BigInt::from(p);
    let reduce = |e: &ZElem| -> u64 {
        let mut acc = 0u64;
        let mut wk = 1u64;
        for c in e {
            let r = c.mod_floor(&pb);
            let r: u64 = r.try_into().expect("reduced below p");
            acc = (acc + r * wk) % p;
            wk = wk * w % p;
        }
        acc
    };
    let mut a: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(reduce).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for r in rank + 1..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let f = a[r][col] * inv % p;
            for j in col..cols {
                a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a matrix with entries in `Z[zeta_n]` by Bareiss elimination.
pub(crate) fn rank_integral(n: u32, mut m: Vec<Vec<ZElem>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let lower = rank_mod(n, &m);
    if lower == rows.min(cols) {
        return lower;
    }
    let t = tables(n);
    let mut rank = 0usize;
    let mut prev: Option<(ZElem, BigInt)> = None; // inverse of previous pivot
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows)
            .filter(|&r| !is_zero(&m[r][col]))
            .min_by_key(|&r| (bit_size(&m[r][col]), r));
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = &pivot_row[col];
        let prev_ref = prev.as_ref();
        tail.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[col]);
            let lead_zero = is_zero(&lead);
            for j in col + 1..cols {
                let mut v = mul_reduce(&t, pv, &row[j]);
                if !lead_zero && !is_zero(&pivot_row[j]) {
                    let w = mul_reduce(&t, &lead, &pivot_row[j]);
                    for (a, b) in v.iter_mut().zip(w) {
                        *a -= b;
                    }
                }
                if let Some((inv_num, inv_den)) = prev_ref {
                    if !is_zero(&v) {
                        v = exact_div(&t, &v, inv_num, inv_den);
                    }
                }
                row[j] = v;
            }
            row[col] = vec![BigInt::zero(); t.phi];
        });
        prev = Some(inverse_parts(n, pv));
        rank += 1;
    }
    rank
}

fn exact_div(t: &Tables, v: &ZElem, inv_num: &ZElem, inv_den: &BigInt) -> ZElem {
    let prod = mul_reduce(t, v, inv_num);
    prod.into_iter()
        .map(|c| {
            let (q, r) = c.div_rem(inv_den);
            assert!(r.is_zero(), "Bareiss division was not exact");
            q
        })
        .collect()
}

fn inverse_parts(n: u32, e: &ZElem) -> (ZElem, BigInt) {
    let v = crate::cyclotomic::CycNum::from_power_coeffs(
        n,
        &e.iter()
            .map(|c| num_rational::BigRational::from_integer(c.clone()))
            .collect::<Vec<_>>(),
    )
    .embed(n);
    let inv = v.inv().expect("pivot is nonzero").embed(n);
    (inv.numerators().to_vec(), inv.denominator().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    /// Plain Gaussian elimination with field operations; independent oracle.
    fn rank_by_field_elimination(rows: &[Vec<CycNum>]) -> usize {
        let mut m: Vec<Vec<CycNum>> = rows.to_vec();
        let mut rank = 0;
        let cols = m.first().map_or(0, |r| r.len());
        for col in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().unwrap();
            for r in rank + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for j in col..cols {
                    let t = &f * &m[rank][j];
                    m[r][j] -= &t;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_small() {
        let z = |k, n| root_of_unity(k, n);
        let rows = vec![
            vec![z(0, 1), z(1, 3)],
            vec![z(1, 3), z(2, 3)],
        ];
        assert_eq!(rank(&rows), 1);
        let rows2 = vec![vec![z(0, 1), z(1, 4)], vec![z(1, 3), z(2, 3)]];
        assert_eq!(rank(&rows2), 2);
        assert_eq!(rank(&[vec![CycNum::zero(); 3]]), 0);
    }

    #[test]
    fn bareiss_matches_field_elimination() {
        // deterministic pseudo-random matrices with low-rank structure
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for trial in 0..20 {
            let n = [3u32, 4, 5, 12, 8][trial % 5];
            let r = 2 + (next() % 4) as usize;
            let c = 2 + (next() % 5) as usize;
            let k = 1 + (next() % 3) as usize;
            let gen = |next: &mut dyn FnMut() -> i64| -> CycNum {
                let a = root_of_unity(next() % n as i64, n);
                let b = CycNum::from_int(next() % 5 - 2);
                &a * &b
            };
            let left: Vec<Vec<CycNum>> = (0..r).map(|_| (0..k).map(|_| gen(&mut next)).collect()).collect();
            let right: Vec<Vec<CycNum>> = (0..k).map(|_| (0..c).map(|_| gen(&mut next)).collect()).collect();
            let prod: Vec<Vec<CycNum>> = left
                .iter()
                .map(|lr| {
                    (0..c)
                        .map(|j| {
                            lr.iter().enumerate().fold(CycNum::zero(), |acc, (i, x)| &acc + &(x * &right[i][j]))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(rank(&prod), rank_by_field_elimination(&prod), "trial {trial}");
        }
    }
}
