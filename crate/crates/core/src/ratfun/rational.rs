use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::LaurentPolynomial;
use super::var::Var;
use crate::error::{Error, Result};

/// Relative threshold under which a denominator counts as vanishing.
pub const NEAR_POLE_RTOL: f64 = 1e-12;

/// Quotient of two Laurent polynomials.
///
/// Normalized so that the leading coefficient of `den` is positive and the
/// joint content of `num` and `den` is 1. No polynomial gcd is cancelled,
/// so two equal functions may have different representations; use
/// [`RationalFunction::rat_eq`] (or `==`) to compare.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let mut r = RationalFunction { num, den };
        if r.den.leading_coefficient().is_some_and(|c| c.is_negative()) {
            r.num = -r.num;
            r.den = -r.den;
        }
        let r = r.with_content_removed();
        // a bare monomial denominator is moved into the numerator
        match r.den.as_term() {
            Some((m, c)) if c.is_one() => RationalFunction {
                num: r.num.mul_monomial(&m.inv()),
                den: LaurentPolynomial::one(),
            },
            _ => r,
        }
    }

    fn with_content_removed(self) -> Self {
        let c = self.num.content().gcd(&self.den.content());
        if c.is_one() || c.is_zero() {
            return self;
        }
        RationalFunction {
            num: self.num.div_scalar(&c),
            den: self.den.div_scalar(&c),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPolynomial::zero(),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolynomial::one())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_poly(LaurentPolynomial::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPolynomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPolynomial::monomial(m))
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        Self::normalized(p, LaurentPolynomial::one())
    }

    /// `1 / p`.
    pub fn recip_of(p: LaurentPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(LaurentPolynomial::one(), p))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPolynomial, LaurentPolynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a single Laurent monomial with coefficient 1, if it is one.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_monomial().cloned()
    }

    pub fn rat_add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        let num = &self.num * &other.den + &other.num * &self.den;
        Self::normalized(num, &self.den * &other.den)
    }

    pub fn rat_neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn rat_sub(&self, other: &Self) -> Self {
        self.rat_add(&other.rat_neg())
    }

    pub fn rat_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn rat_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn rat_div(&self, other: &Self) -> Result<Self> {
        Ok(self.rat_mul(&other.rat_inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.rat_inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(Self::normalized(base.num.pow(e), base.den.pow(e)))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::normalized(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Exact equality by cross-multiplication.
    pub fn rat_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    /// Evaluates numerator and denominator term by term, then divides.
    pub fn eval_complex(&self, point: &HashMap<Var, Complex64>) -> Result<Complex64> {
        let (n, _) = self.num.eval_complex_with_scale(point)?;
        let (d, scale) = self.den.eval_complex_with_scale(point)?;
        if d.norm() < NEAR_POLE_RTOL * scale {
            return Err(Error::NearPole);
        }
        Ok(n / d)
    }

    /// Replaces variables by Laurent monomials.
    pub fn substitute_monomials(&self, map: &HashMap<Var, LaurentPolynomial>) -> Result<Self> {
        Self::new(
            self.num.substitute_monomials(map),
            self.den.substitute_monomials(map),
        )
    }

    /// Cancels exact polynomial factors of `den` from both sides (trial
    /// division by the given candidates; no gcd computation).
    pub fn cancel_factors<'a, I>(&self, candidates: I) -> Self
    where
        I: IntoIterator<Item = &'a LaurentPolynomial>,
    {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for f in candidates {
            while let (Some(nq), Some(dq)) = (num.div_exact(f), den.div_exact(f)) {
                num = nq;
                den = dq;
                if den.as_term().is_some() {
                    break;
                }
            }
        }
        Self::normalized(num, den)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort();
        v.dedup();
        v
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

/// Mathematical equality (cross-multiplication), not representation
/// equality.
impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rat_eq(other)
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Var> for RationalFunction {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl From<Monomial> for RationalFunction {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_rat_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$inner(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$inner(rhs)
            }
        }
    };
}

forward_rat_binop!(Add, add, rat_add);
forward_rat_binop!(Sub, sub, rat_sub);
forward_rat_binop!(Mul, mul, rat_mul);

/// Panics on division by the zero function; use [`RationalFunction::rat_div`]
/// to handle that case.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.rat_div(rhs)
            .expect("division by zero rational function")
    }
}

impl Div<RationalFunction> for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        &self / &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.rat_neg()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.rat_neg()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &LaurentPolynomial| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::var::abg;

    fn v(x: Var) -> RationalFunction {
        RationalFunction::var(x)
    }

    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn add_to_bracket() {
        let (a, _, _) = abg();
        let bracket = (v(a) - one()).rat_inv().unwrap();
        let expected = &v(a) / &(v(a) - one());
        assert!((&bracket + &one()).rat_eq(&expected));
    }

    #[test]
    fn neg_normalizes_sign() {
        let (_, _, g) = abg();
        let r = (v(g) - one()).rat_inv().unwrap().rat_neg();
        let r = RationalFunction::new(r.num().clone(), r.den().clone()).unwrap();
        // -1/(g-1): leading coefficient of den (the g term) stays positive
        assert_eq!(r.num(), &LaurentPolynomial::constant(-1));
        assert!(r.rat_eq(&(one() - v(g)).rat_inv().unwrap()));
    }

    #[test]
    fn product_of_brackets() {
        let (a, b, _) = abg();
        let fa = (v(a) - one()).rat_inv().unwrap();
        let fb = (v(b) - one()).rat_inv().unwrap();
        let p = &fa * &fb;
        let den = (v(a) - one()) * (v(b) - one());
        assert_eq!(p.den(), den.num());
        assert!(p.num().is_one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(
            RationalFunction::zero().rat_inv().unwrap_err().to_string(),
            "division by zero rational function"
        );
    }

    #[test]
    fn rat_eq_examples() {
        let (a, _, g) = abg();
        let lhs = &(one() - v(g).pow(2).unwrap()) / &(one() - v(g));
        assert!(lhs.rat_eq(&(one() + v(g))));
        let x = &v(g) / &(v(g) + one());
        let y = &v(g).pow(2).unwrap() / &(v(g).pow(2).unwrap() + v(g));
        assert!(x.rat_eq(&y));
        let p = (v(a) - one()).rat_inv().unwrap();
        let q = (one() - v(a)).rat_inv().unwrap();
        assert!(!p.rat_eq(&q));
    }

    #[test]
    fn eval_examples() {
        let (a, b, g) = abg();
        let beta_case = &(one() - &v(a) * &v(b)) / &((one() - v(a)) * (one() - v(b)));
        let pt: HashMap<Var, Complex64> = [(a, -1.0), (b, -1.0)]
            .into_iter()
            .map(|(k, x)| (k, Complex64::new(x, 0.0)))
            .collect();
        assert!(beta_case.eval_complex(&pt).unwrap().norm() < 1e-15);

        let r = &v(g) / &(v(g) + one());
        let pt = HashMap::from([(g, Complex64::new(1.0, 0.0))]);
        assert!((r.eval_complex(&pt).unwrap() - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let pole = (v(g) - one()).rat_inv().unwrap();
        assert_eq!(pole.eval_complex(&pt), Err(Error::NearPole));
        let missing = HashMap::new();
        assert!(matches!(
            pole.eval_complex(&missing),
            Err(Error::UnassignedVariable(_))
        ));
    }

    #[test]
    fn monomial_denominator_moves_up() {
        let (_, _, g) = abg();
        let r = &one() / &v(g);
        assert!(r.den().is_one());
        assert_eq!(r.as_monomial(), Some(Monomial::pow_of(g, -1)));
    }

    #[test]
    fn cancel_known_factor() {
        let (_, _, g) = abg();
        let f = LaurentPolynomial::one() - LaurentPolynomial::var(g);
        let r = RationalFunction::new(
            &f * &(LaurentPolynomial::one() + LaurentPolynomial::var(g)),
            f.clone(),
        )
        .unwrap();
        let c = r.cancel_factors([&f]);
        assert!(c.den().is_one());
        assert!(c.rat_eq(&r));
    }
}
