//! Interchangeable tests for `rho = 0` in the Nichols algebra, selected by name.

use super::{skew_derivation, symmetrizer::SymBlock, Braiding, NCPoly};
use crate::error::{Error, Result};

pub trait ZeroTest: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether a homogeneous `rho` vanishes in `B(V)`.
    fn is_zero(&self, b: &Braiding, rho: &NCPoly) -> Result<bool>;
}

/// `rho` lies in the kernel of the quantum symmetrizer.
pub struct TestBySymmetrizer;

/// All iterated skew derivations of `rho` vanish.
pub struct TestByDerivations;

fn check_homogeneous(rho: &NCPoly) -> Result<()> {
    if rho.is_dual() {
        return Err(Error::Domain("zero tests apply to primal polynomials".into()));
    }
    rho.homogeneous_degree().map(|_| ())
}

impl ZeroTest for TestBySymmetrizer {
    fn name(&self) -> &'static str {
        "symmetrizer"
    }

    fn is_zero(&self, b: &Braiding, rho: &NCPoly) -> Result<bool> {
        check_homogeneous(rho)?;
        let Some(d) = rho.homogeneous_degree()? else { return Ok(true) };
        let natural = SymBlock::natural_conductor(b);
        let block = SymBlock::build(b, d);
        if let Some(z) = block.annihilates(rho) {
            return Ok(z);
        }
        // a coefficient lives outside the braiding's field
        let n = rho
            .terms()
            .values()
            .map(|c| c.normalized().conductor())
            .fold(natural, |a, c| num_integer::Integer::lcm(&a, &c));
        Ok(SymBlock::build_at(b, d, n)
            .annihilates(rho)
            .expect("block over the compositum holds every coefficient"))
    }
}

impl ZeroTest for TestByDerivations {
    fn name(&self) -> &'static str {
        "derivations"
    }

    fn is_zero(&self, b: &Braiding, rho: &NCPoly) -> Result<bool> {
        check_homogeneous(rho)?;
        let mut level = vec![rho.clone()];
        while let Some(p) = level.first() {
            if p.terms().keys().next().is_some_and(|w| w.is_empty()) {
                // degree zero: a nonzero scalar survives
                return Ok(level.iter().all(|p| p.is_zero()));
            }
            let mut next = Vec::with_capacity(2 * level.len());
            for p in &level {
                for i in [1u8, 2] {
                    let q = skew_derivation(b, i, p);
                    if !q.is_zero() {
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        Ok(true)
    }
}

static TESTS: [&dyn ZeroTest; 2] = [&TestBySymmetrizer, &TestByDerivations];

/// All registered zero tests.
pub fn zero_tests() -> &'static [&'static dyn ZeroTest] {
    &TESTS
}

pub fn zero_test(name: &str) -> Result<&'static dyn ZeroTest> {
    TESTS.iter().copied().find(|t| t.name() == name).ok_or_else(|| Error::Unknown {
        kind: "zero test",
        name: name.to_string(),
        available: TESTS.iter().map(|t| t.name()).collect::<Vec<_>>().join(", "),
    })
}

/// `rho = 0` in `B(V)`, decided by the named method.
pub fn is_zero_in_nichols(b: &Braiding, rho: &NCPoly, method: &str) -> Result<bool> {
    zero_test(method)?.is_zero(b, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycNum;

    #[test]
    fn examples_under_both_methods() {
        let ext = Braiding::from_strings("1/2", "1/5", "0/1", "1/3").unwrap();
        let x1sq = NCPoly::monomial(vec![1, 1], CycNum::one());
        let generic = Braiding::from_strings("1/5", "1/7", "0/1", "1/4").unwrap();
        let comm = &NCPoly::monomial(vec![1, 2], CycNum::one())
            - &NCPoly::monomial(vec![2, 1], generic.q12().clone());
        for t in zero_tests() {
            assert!(t.is_zero(&ext, &x1sq).unwrap(), "{}", t.name());
            assert!(!t.is_zero(&generic, &comm).unwrap(), "{}", t.name());
            assert!(t.is_zero(&generic, &NCPoly::zero()).unwrap(), "{}", t.name());
            let inhom = &x1sq + &NCPoly::var(1);
            assert_eq!(t.is_zero(&generic, &inhom), Err(Error::Inhomogeneous));
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(zero_test("derivations").unwrap().name(), "derivations");
        assert!(matches!(zero_test("gauss"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn foreign_coefficients_are_handled() {
        let b = Braiding::from_strings("1/2", "0/1", "0/1", "1/2").unwrap();
        let c = crate::cyclotomic::root_of_unity(1, 5);
        let rho = NCPoly::monomial(vec![1, 1], c);
        assert!(is_zero_in_nichols(&b, &rho, "symmetrizer").unwrap());
        let rho2 = NCPoly::monomial(vec![1, 2], crate::cyclotomic::root_of_unity(1, 7));
        assert!(!is_zero_in_nichols(&b, &rho2, "symmetrizer").unwrap());
    }
}
