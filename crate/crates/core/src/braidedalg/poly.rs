use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Multidegree;
use crate::cyclotomic::{parse_coefficient, CycNum};
use crate::error::{Error, Result};

/// A word in the letters `1, 2` (standing for `x1, x2` or `y1, y2`).
pub type Monomial = Vec<u8>;

/// A noncommutative polynomial in two variables with cyclotomic coefficients.
///
/// The `dual` flag marks polynomials in `y1, y2`; `iota` flips it.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, CycNum>,
    dual: bool,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::monomial(Vec::new(), CycNum::one())
    }

    pub fn var(i: u8) -> NCPoly {
        assert!(i == 1 || i == 2, "variables are x1 and x2");
        NCPoly::monomial(vec![i], CycNum::one())
    }

    pub fn monomial(word: Monomial, coeff: CycNum) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(word, &coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, CycNum)>) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn with_dual(mut self, dual: bool) -> NCPoly {
        self.dual = dual;
        self
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The algebra map `x_i -> y_i` (and back).
    pub fn iota(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.clone(),
            dual: !self.dual,
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycNum> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn add_term(&mut self, word: Monomial, coeff: &CycNum) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &CycNum) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero().with_dual(self.dual);
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
            dual: self.dual,
        }
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut acc = NCPoly::one().with_dual(self.dual);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The multidegree if all terms share it; `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<Multidegree>> {
        let mut it = self.terms.keys().map(|w| Multidegree::of_word(w));
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    /// The total degree if all terms share it; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(|w| w.len() as u32);
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    /// Terms grouped by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Multidegree, NCPoly> {
        let mut out: BTreeMap<Multidegree, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(Multidegree::of_word(w))
                .or_insert_with(|| NCPoly::zero().with_dual(self.dual))
                .add_term(w.clone(), c);
        }
        out
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, o: NCPoly) -> NCPoly {
        &self + &o
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&CycNum::from_int(-1))
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero().with_dual(self.dual);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &CycNum, first: bool, has_word: bool) -> fmt::Result {
    let (neg, magnitude) = match c.as_signed_root() {
        Some((neg, 0, 1)) => (neg, None),
        Some((false, 1, 2)) => (true, None),
        Some((neg, k, n)) => (neg, Some(format!("{k}/{n}"))),
        None => (false, Some(c.to_string())),
    };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    match (magnitude, has_word) {
        (None, true) => Ok(()),
        (None, false) => f.write_str("1"),
        (Some(m), true) => write!(f, "({m}) "),
        (Some(m), false) => write!(f, "({m})"),
    }
}

/// Sums of coefficient-tagged words, e.g. `x1 x2 - (1/12) x2 x1`.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let var = if self.dual { 'y' } else { 'x' };
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_coeff(f, c, i == 0, !w.is_empty())?;
            for (j, l) in w.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{var}{l}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl serde::Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the format produced by `Display`.
pub fn parse_ncpoly(text: &str) -> Result<NCPoly> {
    let s = text.as_bytes();
    let err = |pos: usize, msg: &str| Error::Parse {
        what: "polynomial",
        input: text.to_string(),
        position: pos,
        message: msg.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < s.len() && s[*pos] == b' ' {
            *pos += 1;
        }
    };
    let mut pos = 0;
    skip_ws(&mut pos);
    if text.trim() == "0" {
        return Ok(NCPoly::zero());
    }
    let mut out = NCPoly::zero();
    let mut dual: Option<bool> = None;
    let mut first = true;
    while pos < s.len() {
        let mut negative = false;
        if s[pos] == b'-' || s[pos] == b'+' {
            negative = s[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-' between terms"));
        }
        first = false;
        let mut coeff = CycNum::one();
        let mut explicit = false;
        if pos < s.len() && s[pos] == b'(' {
            let mut depth = 0;
            let start = pos + 1;
            let mut end = None;
            for (i, &ch) in s.iter().enumerate().skip(pos) {
                match ch {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| err(pos, "unbalanced '('"))?;
            coeff = parse_coefficient(&text[start..end]).map_err(|_| err(start, "bad coefficient"))?;
            pos = end + 1;
            explicit = true;
            skip_ws(&mut pos);
        }
        let mut word = Vec::new();
        while pos < s.len() && (s[pos] == b'x' || s[pos] == b'y' || s[pos] == b'1') {
            if s[pos] == b'1' {
                if explicit || !word.is_empty() {
                    return Err(err(pos, "unexpected '1'"));
                }
                pos += 1;
                explicit = true;
                skip_ws(&mut pos);
                break;
            }
            let is_dual = s[pos] == b'y';
            if *dual.get_or_insert(is_dual) != is_dual {
                return Err(err(pos, "mixed x and y variables"));
            }
            match s.get(pos + 1) {
                Some(b'1') => word.push(1),
                Some(b'2') => word.push(2),
                _ => return Err(err(pos + 1, "expected variable index 1 or 2")),
            }
            pos += 2;
            if pos < s.len() && s[pos] != b' ' {
                return Err(err(pos, "expected a space after a variable"));
            }
            skip_ws(&mut pos);
        }
        if word.is_empty() && !explicit {
            return Err(err(pos, "empty term"));
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(word, &coeff);
    }
    Ok(out.with_dual(dual.unwrap_or(false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::root_of_unity;

    #[test]
    fn display_format() {
        let p = &NCPoly::monomial(vec![1, 2], CycNum::one())
            - &NCPoly::monomial(vec![2, 1], root_of_unity(1, 12));
        assert_eq!(p.to_string(), "x1 x2 - (1/12) x2 x1");
        assert_eq!(NCPoly::zero().to_string(), "0");
        assert_eq!(NCPoly::one().to_string(), "1");
        assert_eq!(NCPoly::var(2).iota().to_string(), "y2");
        let q = NCPoly::monomial(vec![], root_of_unity(1, 3)) + NCPoly::var(1);
        assert_eq!(q.to_string(), "(1/3) + x1");
    }

    #[test]
    fn parse_round_trip() {
        let p = NCPoly::from_terms([
            (vec![], CycNum::from_int(-1)),
            (vec![1, 1], CycNum::from_int(3)),
            (vec![1, 2], CycNum::one()),
            (vec![2, 1], -root_of_unity(5, 12)),
            (vec![2, 2], &CycNum::from_int(2) + &root_of_unity(1, 3)),
        ]);
        let text = p.to_string();
        assert_eq!(parse_ncpoly(&text).unwrap(), p, "{text}");
        let d = p.iota();
        assert_eq!(parse_ncpoly(&d.to_string()).unwrap(), d);
        assert!(parse_ncpoly("x1 x3").is_err());
        assert!(parse_ncpoly("x1 y2").is_err());
        assert!(parse_ncpoly("x1 x2 x1 (1/2)").is_err());
    }

    #[test]
    fn arithmetic_and_degrees() {
        let x1 = NCPoly::var(1);
        let x2 = NCPoly::var(2);
        let p = &(&x1 * &x2) - &(&x2 * &x1);
        assert_eq!(p.homogeneous_degree().unwrap(), Some(Multidegree::new(1, 1)));
        assert_eq!((&p - &p), NCPoly::zero());
        assert_eq!(p.pow(2).total_degree().unwrap(), Some(4));
        assert!((&x1 + &(&x1 * &x2)).total_degree().is_err());
        assert_eq!(NCPoly::zero().homogeneous_degree().unwrap(), None);
    }
}
