//! Per-conductor lookup data: the cyclotomic polynomial, reduced powers of the
//! generator, and descent maps onto the maximal proper cyclotomic subfields.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Canonical conductor of `Q(zeta_n)`. For `n = 2 mod 4` the field equals
/// `Q(zeta_{n/2})`, so such conductors never appear in stored values.
pub fn canonical_conductor(n: u32) -> u32 {
    assert!(n >= 1, "conductor must be positive");
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

pub fn prime_divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d);
        num = divide_monic(&num, &den);
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

fn divide_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// A linear map identifying `Q(zeta_m)` with a subfield of `Q(zeta_n)`,
/// together with a left inverse on a set of pivot coordinates.
#[derive(Debug)]
pub struct Descent {
    pub m: u32,
    /// `embed[j]` is the image of `zeta_m^j`, a coefficient vector of length phi(n).
    pub embed: Vec<Vec<i64>>,
    pub pivot_rows: Vec<usize>,
    /// Inverse of the square submatrix of `embed` on `pivot_rows`.
    pub inverse: Vec<Vec<BigRational>>,
}

#[derive(Debug)]
pub struct Tables {
    pub n: u32,
    pub phi: usize,
    pub cyclo: Vec<i64>,
    /// `powers[k]` = x^k mod Phi_n, for k < max(n, 2 phi).
    pub powers: Vec<Vec<i64>>,
    descents: OnceLock<Vec<Descent>>,
}

impl Tables {
    fn build(n: u32) -> Tables {
        let cyclo = cyclotomic_polynomial(n);
        let phi = cyclo.len() - 1;
        let count = (n as usize).max(2 * phi).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        if phi == 0 {
            unreachable!("phi(n) >= 1");
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for j in (1..phi).rev() {
                next[j] = cur[j - 1];
            }
            if top != 0 {
                for j in 0..phi {
                    next[j] = next[j]
                        .checked_sub(top.checked_mul(cyclo[j]).expect("table overflow"))
                        .expect("table overflow");
                }
            }
            cur = next;
        }
        Tables {
            n,
            phi,
            cyclo,
            powers,
            descents: OnceLock::new(),
        }
    }

    /// x^k mod Phi_n for any k >= 0, using periodicity x^n = 1.
    pub fn power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.n as u64) as usize]
    }

    pub fn descents(&self) -> &[Descent] {
        self.descents.get_or_init(|| {
            let mut out = Vec::new();
            for p in prime_divisors(self.n) {
                let m = canonical_conductor(self.n / p);
                if euler_phi(m) >= self.phi {
                    continue;
                }
                out.push(build_descent(self, m));
            }
            out
        })
    }
}

fn build_descent(t: &Tables, m: u32) -> Descent {
    let step = (t.n / m) as u64;
    let phi_m = euler_phi(m);
    let embed: Vec<Vec<i64>> = (0..phi_m as u64)
        .map(|j| {
            if m == 1 {
                // Q(zeta_1) = Q; its basis element is 1.
                t.power(0).to_vec()
            } else {
                t.power(j * step).to_vec()
            }
        })
        .collect();
    // Select pivot rows by elimination on the transpose (rows of the phi_n x phi_m matrix).
    let rows: Vec<Vec<BigRational>> = (0..t.phi)
        .map(|r| {
            (0..phi_m)
                .map(|c| BigRational::from_integer(BigInt::from(embed[c][r])))
                .collect()
        })
        .collect();
    let pivot_rows = independent_rows(&rows, phi_m);
    let square: Vec<Vec<BigRational>> = pivot_rows.iter().map(|&r| rows[r].clone()).collect();
    let inverse = invert(&square).expect("descent submatrix is invertible");
    Descent {
        m,
        embed,
        pivot_rows,
        inverse,
    }
}

/// Indices of a maximal set of linearly independent rows (greedy, in order).
fn independent_rows(rows: &[Vec<BigRational>], want: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = &v[*pc] / &b[*pc];
                for k in 0..v.len() {
                    let t = &f * &b[k];
                    v[k] -= t;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            basis.push((pc, v));
            chosen.push(idx);
            if chosen.len() == want {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), want, "embedding must have full column rank");
    chosen
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..2 * n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Tables>>>> = OnceLock::new();

/// Shared tables for the canonical conductor `n`.
pub fn tables(n: u32) -> Arc<Tables> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(Tables::build(n));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(n).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(30).len() - 1, 8);
    }

    #[test]
    fn phi_matches_polynomial_degree() {
        for n in 1..=120 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn powers_are_periodic() {
        for n in [3u32, 4, 5, 12, 15, 24] {
            let t = tables(n);
            let mut one = vec![0; t.phi];
            one[0] = 1;
            assert_eq!(t.power(n as u64), &one[..]);
        }
    }
}
