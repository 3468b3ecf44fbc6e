//! Exact arithmetic in the field of rational functions with integer
//! coefficients over a registry of named variables. Exponents may be
//! negative.

mod factored;
mod json;
mod monomial;
mod poly;
mod rational;
mod var;

pub use factored::{rational, rational_one, FactoredRational, FactoredSum};
pub use json::{RationalJson, TermJson};
pub use monomial::Monomial;
pub use poly::LaurentPolynomial;
pub use rational::{RationalFunction, NEAR_POLE_RTOL};
pub use var::{abg, alpha_beta_gamma, Var};

/// Termwise sum of two polynomials.
pub fn poly_add(p: &LaurentPolynomial, q: &LaurentPolynomial) -> LaurentPolynomial {
    p + q
}

pub fn poly_mul(p: &LaurentPolynomial, q: &LaurentPolynomial) -> LaurentPolynomial {
    p * q
}

pub fn rat_add(r: &RationalFunction, s: &RationalFunction) -> RationalFunction {
    r.rat_add(s)
}

pub fn rat_mul(r: &RationalFunction, s: &RationalFunction) -> RationalFunction {
    r.rat_mul(s)
}

pub fn rat_neg(r: &RationalFunction) -> RationalFunction {
    r.rat_neg()
}

pub fn rat_inv(r: &RationalFunction) -> crate::Result<RationalFunction> {
    r.rat_inv()
}

pub fn rat_eq(r: &RationalFunction, s: &RationalFunction) -> bool {
    r.rat_eq(s)
}

pub fn expand(f: &FactoredRational) -> RationalFunction {
    f.expand()
}
