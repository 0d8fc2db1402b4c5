use super::{Braiding, NCPoly};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// `<y_i, rho>`: deletes one letter `x_i`, twisted by `chi(e_i, e_j)^-1` for
/// every letter `x_j` to its left.
pub fn skew_derivation(b: &Braiding, i: u8, rho: &NCPoly) -> NCPoly {
    assert!(i == 1 || i == 2, "skew derivations are indexed by 1 and 2");
    let mut out = NCPoly::zero();
    for (w, c) in rho.terms() {
        let mut twist = c.clone();
        for (p, &l) in w.iter().enumerate() {
            if l == i {
                let mut rest = Vec::with_capacity(w.len() - 1);
                rest.extend_from_slice(&w[..p]);
                rest.extend_from_slice(&w[p + 1..]);
                out.add_term(rest, &twist);
            }
            twist = &twist * b.q_inv(i, l);
        }
    }
    out
}

/// The pairing `<f, rho>` with `<y_i1 ... y_im, rho> = <y_i1, <y_i2, ... <y_im, rho>>>`.
pub fn pair(b: &Braiding, f: &NCPoly, rho: &NCPoly) -> Result<NCPoly> {
    if !f.is_dual() && !f.is_zero() {
        return Err(Error::Domain("the first argument of the pairing must be dual".into()));
    }
    if rho.is_dual() {
        return Err(Error::Domain("the second argument of the pairing must be primal".into()));
    }
    let mut out = NCPoly::zero();
    for (w, c) in f.terms() {
        let mut cur = rho.clone();
        for &i in w.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = skew_derivation(b, i, &cur);
        }
        out = &out + &cur.scale(c);
    }
    Ok(out)
}

/// The scalar part of `<f, rho>` (the coefficient of the empty word).
pub fn pair_scalar(b: &Braiding, f: &NCPoly, rho: &NCPoly) -> Result<CycNum> {
    Ok(pair(b, f, rho)?.coeff(&[]))
}
