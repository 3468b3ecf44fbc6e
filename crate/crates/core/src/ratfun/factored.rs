//! Product-form and factored-denominator representations.
//!
//! [`FactoredRational`] holds closed forms as `constant * prod f_i^{m_i}`.
//! [`FactoredSum`] is the accumulator used for large face sums: it keeps
//! its denominator as a multiset of polynomial factors, so that adding two
//! terms only multiplies by the factors the other side is missing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{bigint_to_f64, LaurentPolynomial};
use super::rational::{RationalFunction, NEAR_POLE_RTOL};
use super::var::Var;
use crate::error::{Error, Result};

/// `constant * prod factor^multiplicity`, multiplicities nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredRational {
    constant: BigRational,
    factors: Vec<(LaurentPolynomial, i32)>,
}

impl FactoredRational {
    /// Merges repeated factors and drops zero multiplicities; factor order
    /// follows first appearance.
    pub fn new<I>(constant: BigRational, factors: I) -> Self
    where
        I: IntoIterator<Item = (LaurentPolynomial, i32)>,
    {
        let mut merged: Vec<(LaurentPolynomial, i32)> = Vec::new();
        for (f, m) in factors {
            if let Some(slot) = merged.iter_mut().find(|(g, _)| *g == f) {
                slot.1 += m;
            } else {
                merged.push((f, m));
            }
        }
        merged.retain(|(f, m)| *m != 0 && !f.is_one());
        FactoredRational {
            constant,
            factors: merged,
        }
    }

    pub fn from_integer(c: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(c)), [])
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn factors(&self) -> &[(LaurentPolynomial, i32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.constant * &other.constant,
            self.factors.iter().chain(&other.factors).cloned(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.constant * c, self.factors.iter().cloned())
    }

    /// Positive multiplicities go to the numerator, negative to the
    /// denominator.
    pub fn expand(&self) -> RationalFunction {
        let num_factors: Vec<LaurentPolynomial> = self
            .factors
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(f, m)| f.pow(*m as u32))
            .collect();
        let den_factors: Vec<LaurentPolynomial> = self
            .factors
            .iter()
            .filter(|(_, m)| *m < 0)
            .map(|(f, m)| f.pow(m.unsigned_abs()))
            .collect();
        let num = LaurentPolynomial::product(&num_factors).scale(self.constant.numer());
        let den = LaurentPolynomial::product(&den_factors).scale(self.constant.denom());
        RationalFunction::new(num, den).expect("factored rational with a zero factor")
    }

    /// Factor-by-factor numeric evaluation (no expansion).
    pub fn eval_complex(&self, point: &HashMap<Var, Complex64>) -> Result<Complex64> {
        let mut value = Complex64::new(
            bigint_to_f64(self.constant.numer()) / bigint_to_f64(self.constant.denom()),
            0.0,
        );
        for (f, m) in &self.factors {
            let (v, scale) = f.eval_complex_with_scale(point)?;
            if *m < 0 && v.norm() < NEAR_POLE_RTOL * scale {
                return Err(Error::NearPole);
            }
            value *= v.powi(*m);
        }
        Ok(value)
    }

    pub fn substitute_monomials(&self, map: &HashMap<Var, LaurentPolynomial>) -> Self {
        Self::new(
            self.constant.clone(),
            self.factors
                .iter()
                .map(|(f, m)| (f.substitute_monomials(map), *m)),
        )
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (p, m) in &self.factors {
            if *m == 1 {
                write!(f, " * ({p})")?;
            } else {
                write!(f, " * ({p})^{m}")?;
            }
        }
        Ok(())
    }
}

/// Rational function with its denominator kept as a factor multiset.
///
/// Factors are stored sign-normalized (positive leading coefficient); unit
/// monomials never appear as factors since Laurent exponents absorb them.
#[derive(Clone, Debug, Default)]
pub struct FactoredSum {
    num: LaurentPolynomial,
    den: BTreeMap<LaurentPolynomial, u32>,
}

impl FactoredSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolynomial::one())
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        FactoredSum {
            num: p,
            den: BTreeMap::new(),
        }
    }

    /// `1 / factor`.
    pub fn recip(factor: &LaurentPolynomial) -> Result<Self> {
        let mut out = Self::one();
        out.divide_by(factor)?;
        Ok(out)
    }

    /// `num / den` with `den` kept as one factor.
    pub fn from_rational(r: &RationalFunction) -> Self {
        let mut out = Self::from_poly(r.num().clone());
        out.divide_by(r.den())
            .expect("normalized denominator is nonzero");
        out
    }

    /// Keeps the factors of a product form: positive multiplicities are
    /// multiplied out, negative ones become denominator factors.
    pub fn from_factored(f: &FactoredRational) -> Self {
        let ups: Vec<LaurentPolynomial> = f
            .factors
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(p, m)| p.pow(*m as u32))
            .collect();
        let num = LaurentPolynomial::product(&ups).scale(f.constant.numer());
        let mut out = Self::from_poly(num);
        if !f.constant.denom().is_one() {
            out.divide_by(&LaurentPolynomial::constant(f.constant.denom().clone()))
                .expect("nonzero denominator");
        }
        for (p, m) in f.factors.iter().filter(|(_, m)| *m < 0) {
            for _ in 0..m.unsigned_abs() {
                out.divide_by(p).expect("nonzero factor");
            }
        }
        out
    }

    /// `self / factor`.
    pub fn divided_by(mut self, factor: &LaurentPolynomial) -> Result<Self> {
        self.divide_by(factor)?;
        Ok(self)
    }

    fn divide_by(&mut self, factor: &LaurentPolynomial) -> Result<()> {
        if factor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((m, c)) = factor.as_term() {
            if c.abs().is_one() {
                self.num = self.num.mul_monomial(&m.inv()).scale(c);
                return Ok(());
            }
        }
        let key = if factor
            .leading_coefficient()
            .is_some_and(|c| c.is_negative())
        {
            self.num = -&self.num;
            -factor
        } else {
            factor.clone()
        };
        if !self.num.is_zero() {
            *self.den.entry(key).or_insert(0) += 1;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&LaurentPolynomial, u32)> {
        self.den.iter().map(|(f, m)| (f, *m))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        FactoredSum {
            num: &self.num * &other.num,
            den,
        }
    }

    pub fn neg(&self) -> Self {
        FactoredSum {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale_poly(&self, p: &LaurentPolynomial) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        FactoredSum {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact equality: the difference over the common denominator is zero.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Sum over the least common multiple of the two factor multisets.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (f, &m) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
        let lift = |side: &Self| -> LaurentPolynomial {
            let missing: Vec<LaurentPolynomial> = lcm
                .iter()
                .filter_map(|(f, &m)| {
                    let have = side.den.get(f).copied().unwrap_or(0);
                    (m > have).then(|| f.pow(m - have))
                })
                .collect();
            &side.num * &LaurentPolynomial::product(&missing)
        };
        let num = lift(self) + lift(other);
        if num.is_zero() {
            return Self::zero();
        }
        FactoredSum { num, den: lcm }
    }

    /// Sums many terms: terms with identical factor multisets are added
    /// numerator-wise first, then the groups are reduced pairwise.
    pub fn sum<I: IntoIterator<Item = FactoredSum>>(terms: I) -> Self {
        let mut groups: BTreeMap<Vec<(LaurentPolynomial, u32)>, LaurentPolynomial> =
            BTreeMap::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let key: Vec<(LaurentPolynomial, u32)> = t.den.into_iter().collect();
            let slot = groups.entry(key).or_default();
            *slot = &*slot + &t.num;
        }
        let mut level: Vec<FactoredSum> = groups
            .into_iter()
            .filter(|(_, num)| !num.is_zero())
            .map(|(den, num)| FactoredSum {
                num,
                den: den.into_iter().collect(),
            })
            .collect();
        if level.is_empty() {
            return Self::zero();
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(x) = it.next() {
                match it.next() {
                    Some(y) => next.push(x.add(&y)),
                    None => next.push(x),
                }
            }
            level = next;
        }
        level.pop().unwrap()
    }

    /// Divides out every denominator factor that divides the numerator
    /// exactly.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            let mut left = m;
            while left > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        FactoredSum { num, den }
    }

    pub fn to_rational(&self) -> RationalFunction {
        let den: Vec<LaurentPolynomial> = self.den.iter().map(|(f, &m)| f.pow(m)).collect();
        RationalFunction::new(self.num.clone(), LaurentPolynomial::product(&den))
            .expect("factors are nonzero")
    }

    /// Exact equality with a rational function by cross-multiplication.
    pub fn rat_eq(&self, other: &RationalFunction) -> bool {
        self.to_rational().rat_eq(other)
    }
}

impl From<RationalFunction> for FactoredSum {
    fn from(r: RationalFunction) -> Self {
        FactoredSum::from_rational(&r)
    }
}

impl From<&RationalFunction> for FactoredSum {
    fn from(r: &RationalFunction) -> Self {
        FactoredSum::from_rational(r)
    }
}

impl fmt::Display for FactoredSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Rational constant helper.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::monomial::Monomial;
    use crate::ratfun::var::abg;

    fn lp(v: Var) -> LaurentPolynomial {
        LaurentPolynomial::var(v)
    }

    #[test]
    fn expand_single_factor() {
        let (_, _, g) = abg();
        let one_minus_g = LaurentPolynomial::one() - lp(g);
        let f = FactoredRational::new(rational_one(), [(one_minus_g.clone(), 1)]);
        assert_eq!(f.expand().num(), &one_minus_g);
        let f = FactoredRational::new(rational_one(), [(one_minus_g.clone(), -1)]);
        let r = f.expand();
        assert!(r.rat_eq(&RationalFunction::recip_of(one_minus_g).unwrap()));
        assert!(r.den().leading_coefficient().unwrap().is_positive());
    }

    #[test]
    fn merge_repeats() {
        let (_, _, g) = abg();
        let p = LaurentPolynomial::one() - lp(g);
        let f = FactoredRational::new(rational(3, 2), [(p.clone(), 2), (p.clone(), -2)]);
        assert!(f.factors().is_empty());
        assert!(f.expand().rat_eq(
            &RationalFunction::new(
                LaurentPolynomial::constant(3),
                LaurentPolynomial::constant(2)
            )
            .unwrap()
        ));
    }

    #[test]
    fn sum_matches_plain_arithmetic() {
        let (a, b, g) = abg();
        let fa = LaurentPolynomial::minus_one(Monomial::var(a));
        let fb = LaurentPolynomial::minus_one(Monomial::var(b));
        let fg = LaurentPolynomial::one_minus(Monomial::pow_of(g, 2));
        let terms = vec![
            FactoredSum::one(),
            FactoredSum::recip(&fa).unwrap(),
            FactoredSum::recip(&fb).unwrap(),
            FactoredSum::recip(&fa)
                .unwrap()
                .mul(&FactoredSum::recip(&fb).unwrap()),
            FactoredSum::recip(&fg).unwrap().scale_poly(&lp(g)),
            FactoredSum::recip(&fa).unwrap(),
        ];
        let plain = terms
            .iter()
            .map(FactoredSum::to_rational)
            .fold(RationalFunction::zero(), |acc, t| acc + t);
        let total = FactoredSum::sum(terms.clone());
        assert!(total.rat_eq(&plain));
        assert!(total.reduce().rat_eq(&plain));
    }

    #[test]
    fn opposite_signs_share_a_key() {
        let (_, _, g) = abg();
        let x = FactoredSum::recip(&LaurentPolynomial::one_minus(Monomial::var(g))).unwrap();
        let y = FactoredSum::recip(&LaurentPolynomial::minus_one(Monomial::var(g))).unwrap();
        assert!(x.add(&y).is_zero());
    }
}
