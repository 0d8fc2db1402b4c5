//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are polynomials in an abstract primitive root `zeta_N`, reduced
//! modulo the cyclotomic polynomial `Phi_N`. No complex embedding is used.
//! Values of different conductors are combined in `Q(zeta_lcm)`.
//!
//! Arithmetic between values of the same conductor keeps that conductor;
//! [`CycNum::normalized`] descends to the smallest conductor containing the
//! value. Equality is independent of the representing conductor.

pub mod tables;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use tables::{canonical_conductor, divisors, tables, Tables};

pub type Rational = BigRational;

/// An element of `Q(zeta_n)`, stored as integer numerators over a common
/// positive denominator.
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

impl CycNum {
    fn from_raw(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), tables::euler_phi(n));
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycNum {
                n,
                num,
                den: BigInt::one(),
            };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CycNum { n, num, den }
    }

    pub fn zero() -> CycNum {
        CycNum {
            n: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(v: i64) -> CycNum {
        CycNum {
            n: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> CycNum {
        CycNum::from_raw(1, vec![r.numer().clone()], r.denom().clone())
    }

    /// Builds `sum_j coeffs[j] zeta_n^j`; `coeffs` may have any length.
    pub fn from_power_coeffs(n: u32, coeffs: &[Rational]) -> CycNum {
        let mut acc = CycNum::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(&root_of_unity(j as i64, n) * &CycNum::from_rational(c));
            }
        }
        acc
    }

    /// The conductor of the representing field (not necessarily minimal
    /// unless the value is [`normalized`](Self::normalized)).
    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Coordinates in the basis `1, zeta, ..., zeta^(phi-1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    fn tables(&self) -> Arc<Tables> {
        tables(self.n)
    }

    /// Re-expresses the value in `Q(zeta_target)`; `target` must be a
    /// multiple of the current conductor.
    pub fn embed(&self, target: u32) -> CycNum {
        let target = canonical_conductor(target);
        if target == self.n {
            return self.clone();
        }
        assert!(
            target % self.n == 0,
            "cannot embed Q(zeta_{}) into Q(zeta_{})",
            self.n,
            target
        );
        let t = tables(target);
        let step = (target / self.n) as u64;
        let mut out = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = if self.n == 1 { t.power(0) } else { t.power(j as u64 * step) };
            for (k, &e) in img.iter().enumerate() {
                if e != 0 {
                    out[k] += c * e;
                }
            }
        }
        CycNum {
            n: target,
            num: out,
            den: self.den.clone(),
        }
    }

    /// The same value at the smallest conductor whose field contains it.
    pub fn normalized(&self) -> CycNum {
        let mut cur = self.clone();
        if cur.is_zero() {
            return CycNum::zero();
        }
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            let t = cur.tables();
            for d in t.descents() {
                if let Some(v) = cur.descend(d) {
                    cur = v;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    fn descend(&self, d: &tables::Descent) -> Option<CycNum> {
        let x: Vec<BigRational> = d
            .pivot_rows
            .iter()
            .map(|&r| BigRational::from_integer(self.num[r].clone()))
            .collect();
        let y: Vec<BigRational> = d
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        // check embed * y == num exactly
        for r in 0..self.num.len() {
            let mut s = BigRational::zero();
            for (c, yc) in y.iter().enumerate() {
                let e = d.embed[c][r];
                if e != 0 {
                    s += yc * BigInt::from(e);
                }
            }
            if s != BigRational::from_integer(self.num[r].clone()) {
                return None;
            }
        }
        let den_l = y
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num: Vec<BigInt> = y
            .iter()
            .map(|v| v.numer() * (&den_l / v.denom()))
            .collect();
        Some(CycNum::from_raw(d.m, num, &self.den * den_l))
    }

    fn align(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let n = lcm(a.n, b.n);
        (a.embed(n), b.embed(n))
    }

    fn add_same(&self, other: &CycNum, negate: bool) -> CycNum {
        debug_assert_eq!(self.n, other.n);
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        CycNum::from_raw(self.n, num, den)
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.n, other.n);
        let t = self.tables();
        let num = mul_reduce(&t, &self.num, &other.num);
        CycNum::from_raw(self.n, num, &self.den * &other.den)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let t = self.tables();
        let phi = t.phi;
        // columns: self * zeta^j
        let mut mat = vec![vec![BigRational::zero(); phi]; phi];
        for j in 0..phi {
            let mut basis = vec![BigInt::zero(); phi];
            basis[j] = BigInt::one();
            let col = mul_reduce(&t, &self.num, &basis);
            for r in 0..phi {
                mat[r][j] = BigRational::new(col[r].clone(), self.den.clone());
            }
        }
        let inv = tables::invert(&mat).ok_or(Error::ZeroInverse)?;
        let y: Vec<BigRational> = inv.iter().map(|row| row[0].clone()).collect();
        let den_l = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num = y.iter().map(|v| v.numer() * (&den_l / v.denom())).collect();
        Ok(CycNum::from_raw(self.n, num, den_l))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one().embed(self.n);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Result<CycNum> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative order, if the value is a root of unity.
    pub fn order(&self) -> Option<u32> {
        let a = self.normalized();
        if a.is_zero() {
            return None;
        }
        let bound = lcm(2, a.n);
        if !a.pow(bound as u64).is_one() {
            return None;
        }
        divisors(bound).into_iter().find(|&d| a.pow(d as u64).is_one())
    }

    /// If the value equals `sign * zeta_N^k` with `N` its minimal conductor
    /// (`N = 1` for +-1), returns `(negated, k, N)` in lowest form.
    pub fn as_signed_root(&self) -> Option<(bool, u32, u32)> {
        let a = self.normalized();
        let ord = a.order()?;
        // a is a root of unity of order ord; find the presentation with the
        // smallest denominator among zeta_ord^k and -zeta_{ord'}^k.
        let pos = (ord, (0..ord).find(|&k| root_of_unity(k as i64, ord) == a)?);
        let neg_val = -&a;
        let neg_ord = neg_val.order()?;
        let neg = (0..neg_ord)
            .find(|&k| root_of_unity(k as i64, neg_ord) == neg_val)
            .map(|k| (neg_ord, k));
        match neg {
            Some((no, nk)) if pos.0 > 2 && (no, nk) < pos => Some((true, nk, no)),
            _ => Some((false, pos.1, pos.0)),
        }
    }
}

pub(crate) fn mul_reduce(t: &Tables, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let phi = t.phi;
    let mut conv = vec![BigInt::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                conv[i + j] += x * y;
            }
        }
    }
    reduce_conv(t, conv)
}

pub(crate) fn reduce_conv(t: &Tables, mut conv: Vec<BigInt>) -> Vec<BigInt> {
    let phi = t.phi;
    // x^phi = -sum_{j<phi} cyclo[j] x^j ; fold from the top down
    for k in (phi..conv.len()).rev() {
        if conv[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut conv[k]);
        for j in 0..phi {
            let cj = t.cyclo[j];
            if cj != 0 {
                conv[k - phi + j] -= &c * cj;
            }
        }
    }
    conv.truncate(phi);
    conv
}

/// `zeta_n^(k mod n)`, at the canonical conductor of the reduced fraction k/n.
pub fn root_of_unity(k: i64, n: u32) -> CycNum {
    assert!(n >= 1, "root_of_unity needs n >= 1");
    let k = k.rem_euclid(n as i64) as u64;
    let g = (k as u32).gcd(&n).max(1);
    let (k, n) = if k == 0 { (0, 1) } else { (k / g as u64, n / g) };
    if n % 4 == 2 {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        let m = n / 2;
        let e = k * ((m as u64 + 1) / 2);
        let base = root_of_unity(e as i64, m);
        return if k % 2 == 1 { -&base } else { base };
    }
    let t = tables(n);
    let num: Vec<BigInt> = t.power(k).iter().map(|&c| BigInt::from(c)).collect();
    CycNum {
        n,
        num,
        den: BigInt::one(),
    }
}

/// `[m]_p = 1 + p + ... + p^(m-1)`.
pub fn qnum(m: u32, p: &CycNum) -> CycNum {
    let mut acc = CycNum::zero();
    let mut pw = CycNum::one();
    for _ in 0..m {
        acc += &pw;
        pw = &pw * p;
    }
    acc
}

/// `[m]_p! = [1]_p [2]_p ... [m]_p`.
pub fn qfact(m: u32, p: &CycNum) -> CycNum {
    (1..=m).fold(CycNum::one(), |acc, j| &acc * &qnum(j, p))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.n == other.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = CycNum::align(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            self.add_same(rhs, false)
        } else {
            let (a, b) = CycNum::align(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            self.add_same(rhs, true)
        } else {
            let (a, b) = CycNum::align(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero().embed(lcm(self.n, rhs.n));
        }
        if self.n == rhs.n {
            self.mul_same(rhs)
        } else {
            let (a, b) = CycNum::align(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

/// Roots of unity print as `k/N` (optionally with a leading `-`); everything
/// else prints as its coordinate list `[c0, c1, ...]@N` in the power basis.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.normalized();
        if let Some((neg, k, n)) = a.as_signed_root() {
            return write!(f, "{}{}/{}", if neg { "-" } else { "" }, k, n);
        }
        write!(f, "[")?;
        for (i, c) in a.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]@{}", a.n)
    }
}

/// Parses the scalar grammar `[-] <int> "/" <posint>` denoting `+-zeta_N^k`.
pub fn parse_scalar(text: &str) -> Result<CycNum> {
    let s = text.trim();
    let err = |msg: &str| Error::Parse {
        what: "scalar",
        input: text.to_string(),
        position: 0,
        message: format!("{msg}; expected [-]<int>/<posint>"),
    };
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (k, n) = body.split_once('/').ok_or_else(|| err("missing '/'"))?;
    if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("exponent is not a nonnegative integer"));
    }
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("order is not a positive integer"));
    }
    let k: i64 = k.parse().map_err(|_| err("exponent out of range"))?;
    let n: u32 = n.parse().map_err(|_| err("order out of range"))?;
    if n == 0 {
        return Err(err("order must be positive"));
    }
    let z = root_of_unity(k, n);
    Ok(if neg { -z } else { z })
}

/// Parses either the root grammar or the coordinate form `[c0, ...]@N`.
pub fn parse_coefficient(text: &str) -> Result<CycNum> {
    let s = text.trim();
    if let Some(rest) = s.strip_prefix('[') {
        let err = |msg: &str| Error::Parse {
            what: "coefficient",
            input: text.to_string(),
            position: 0,
            message: msg.to_string(),
        };
        let (list, n) = rest.split_once("]@").ok_or_else(|| err("expected ']@N'"))?;
        let n: u32 = n.trim().parse().map_err(|_| err("bad conductor"))?;
        if n == 0 {
            return Err(err("conductor must be positive"));
        }
        let n = canonical_conductor(n);
        let coeffs: Vec<Rational> = list
            .split(',')
            .map(|c| c.trim().parse::<Rational>().map_err(|_| err("bad rational")))
            .collect::<Result<_>>()?;
        if coeffs.len() != tables::euler_phi(n) {
            return Err(err("coordinate count must equal phi(N)"));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        return Ok(CycNum::from_raw(n, num, den));
    }
    parse_scalar(s)
}

impl std::str::FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<CycNum> {
        parse_coefficient(s)
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A size measure used for pivot selection: total bit length of the numerators.
pub(crate) fn bit_size(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).sum()
}

impl PartialOrd for CycNum {
    /// Only rational values are ordered.
    fn partial_cmp(&self, other: &CycNum) -> Option<Ordering> {
        let a = self.normalized();
        let b = other.normalized();
        if a.n == 1 && b.n == 1 {
            a.coeffs()[0].partial_cmp(&b.coeffs()[0])
        } else if a == b {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}
