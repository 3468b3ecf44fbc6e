use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::var::Var;
use crate::error::{Error, Result};

/// Multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients.
///
/// Terms are kept sorted ascending in graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    /// `1 - m`, the building block of every q-Pochhammer symbol.
    pub fn one_minus(m: Monomial) -> Self {
        Self::one() - Self::monomial(m)
    }

    /// `m - 1`, the denominator of a bracket.
    pub fn minus_one(m: Monomial) -> Self {
        Self::monomial(m) - Self::one()
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        LaurentPolynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// A single term `c * m`.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    /// A single term with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        self.as_term().filter(|(_, c)| c.is_one()).map(|(m, _)| m)
    }

    /// The greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.exponents().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    debug_assert!((k % c).is_zero());
                    (m.clone(), k / c)
                })
                .collect(),
        }
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPolynomial { terms: out }
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = other.as_term() {
            return self.mul_monomial(m).scale(c);
        }
        if let Some((m, c)) = self.as_term() {
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Product of a list of polynomials, multiplied pairwise to keep
    /// intermediate sizes balanced.
    pub fn product<'a, I: IntoIterator<Item = &'a LaurentPolynomial>>(factors: I) -> Self {
        let mut level: Vec<LaurentPolynomial> = factors.into_iter().cloned().collect();
        if level.is_empty() {
            return Self::one();
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(x) = it.next() {
                match it.next() {
                    Some(y) => next.push(x.mul_ref(&y)),
                    None => next.push(x),
                }
            }
            level = next;
        }
        level.pop().unwrap()
    }

    /// Monomial that moves every variable's minimum exponent to zero, so the
    /// shifted polynomial has no monomial factor.
    fn normalizing_shift(&self) -> Monomial {
        let mut mins: BTreeMap<Var, i32> = BTreeMap::new();
        for (m, _) in &self.terms {
            for &(v, e) in m.exponents() {
                let slot = mins.entry(v).or_insert(e);
                *slot = (*slot).min(e);
            }
        }
        // a variable missing from some term has minimum 0 there
        for (v, e) in mins.iter_mut() {
            if self.terms.iter().any(|(m, _)| m.exponent(*v) == 0) {
                *e = (*e).min(0);
            }
        }
        Monomial::from_pairs(mins.into_iter().map(|(v, e)| (v, -e)))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    ///
    /// Both operands are shifted by monomials into the ordinary polynomial
    /// ring, divided there by leading terms, and shifted back.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = divisor.as_term() {
            let rem_free = self.terms.iter().all(|(_, k)| (k % c).is_zero());
            return rem_free.then(|| self.mul_monomial(&m.inv()).div_scalar(c));
        }
        let shift_n = self.normalizing_shift();
        let shift_d = divisor.normalizing_shift();
        let num = self.mul_monomial(&shift_n);
        let den = divisor.mul_monomial(&shift_d);
        let (lead_m, lead_c) = den.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lead_inv = lead_m.inv();

        let mut rem: BTreeMap<Monomial, BigInt> = num.terms.into_iter().collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.pop_last() {
            if !rm.is_divisible_by(&lead_m) {
                return None;
            }
            let (qc, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.mul(&lead_inv);
            for (dm, dc) in den.terms.iter().rev().skip(1) {
                let delta = &qc * dc;
                match rem.entry(qm.mul(dm)) {
                    Entry::Occupied(mut slot) => {
                        *slot.get_mut() -= delta;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        let q = LaurentPolynomial::from_terms(quot);
        Some(q.mul_monomial(&shift_d.mul(&shift_n.inv())))
    }

    /// Replaces variables by Laurent monomials (e.g. `f -> g`, `a <-> b`,
    /// `alpha -> c*alpha`).
    pub fn substitute_monomials(&self, map: &HashMap<Var, LaurentPolynomial>) -> Self {
        let images: HashMap<Var, (&Monomial, &BigInt)> = map
            .iter()
            .map(|(v, p)| {
                let t = p
                    .as_term()
                    .expect("substitute_monomials: image must be a single term");
                (*v, t)
            })
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out_m = Monomial::one();
            let mut out_c = c.clone();
            for &(v, e) in m.exponents() {
                match images.get(&v) {
                    Some(&(im, ic)) => {
                        out_m = out_m.mul(&im.pow(e));
                        if e >= 0 {
                            out_c *= num_traits::pow(ic.clone(), e as usize);
                        } else {
                            assert!(
                                ic.abs().is_one(),
                                "negative power of a non-unit coefficient"
                            );
                            out_c *= num_traits::pow(ic.clone(), (-e) as usize);
                        }
                    }
                    None => out_m = out_m.mul(&Monomial::pow_of(v, e)),
                }
            }
            (out_m, out_c)
        });
        Self::from_terms(terms)
    }

    /// Evaluates at a complex point; returns the value and the sum of the
    /// absolute values of the individual terms (the conditioning scale).
    pub fn eval_complex_with_scale(
        &self,
        point: &HashMap<Var, Complex64>,
    ) -> Result<(Complex64, f64)> {
        let mut value = Complex64::zero();
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let mut t = Complex64::new(bigint_to_f64(c), 0.0);
            for &(v, e) in m.exponents() {
                let z = point
                    .get(&v)
                    .ok_or_else(|| Error::UnassignedVariable(v.name()))?;
                t *= z.powi(e);
            }
            scale += t.norm();
            value += t;
        }
        Ok((value, scale))
    }

    pub fn eval_complex(&self, point: &HashMap<Var, Complex64>) -> Result<Complex64> {
        self.eval_complex_with_scale(point).map(|(v, _)| v)
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl From<Var> for LaurentPolynomial {
    fn from(v: Var) -> Self {
        LaurentPolynomial::var(v)
    }
}

impl From<Monomial> for LaurentPolynomial {
    fn from(m: Monomial) -> Self {
        LaurentPolynomial::monomial(m)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        LaurentPolynomial::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$inner(rhs)
            }
        }
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                self.$inner(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.neg_ref()
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.neg_ref()
    }
}

/// `1 - a*b*g^2` style: ascending graded-lex order, `*` between factors.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::var::abg;

    fn g() -> LaurentPolynomial {
        LaurentPolynomial::var(abg().2)
    }

    fn one() -> LaurentPolynomial {
        LaurentPolynomial::one()
    }

    #[test]
    fn add_cancels() {
        let p = &one() + &g();
        let q = &g() - &one();
        assert_eq!(p + q, g().scale(&BigInt::from(2)));
    }

    #[test]
    fn add_zero_identity() {
        let p = &one() + &g();
        assert_eq!(&p + &LaurentPolynomial::zero(), p);
    }

    #[test]
    fn add_drops_top_term() {
        let g2 = g().pow(2);
        let p = &(&one() + &g()) + &g2;
        assert_eq!(p - g2, &one() + &g());
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = (&one() - &g()) * (&one() + &g());
        assert_eq!(p, &one() - &g().pow(2));
    }

    #[test]
    fn mul_laurent_inverse() {
        let (_, _, gv) = abg();
        let ginv = LaurentPolynomial::monomial(Monomial::pow_of(gv, -1));
        assert!((ginv * g()).is_one());
    }

    #[test]
    fn mul_pochhammer_two() {
        let (av, _, gv) = abg();
        let a = LaurentPolynomial::var(av);
        let ag = LaurentPolynomial::monomial(Monomial::from_pairs([(av, 1), (gv, 1)]));
        let lhs = (&one() - &a) * (&one() - &ag);
        let a2g = LaurentPolynomial::monomial(Monomial::from_pairs([(av, 2), (gv, 1)]));
        let rhs = &(&(&one() - &a) - &ag) + &a2g;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let p = &one() - &g().pow(6);
        let d = &one() - &g().pow(2);
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &(&one() + &g().pow(2)) + &g().pow(4));
        assert!(p.div_exact(&(&one() + &g().pow(4))).is_none());
    }

    #[test]
    fn exact_division_laurent() {
        let (av, _, gv) = abg();
        let ginv = LaurentPolynomial::monomial(Monomial::pow_of(gv, -3));
        let a = LaurentPolynomial::var(av);
        let f1 = &a - &ginv;
        let f2 = &one() + &g();
        let p = &f1 * &f2;
        assert_eq!(p.div_exact(&f1).unwrap(), f2);
        assert_eq!(p.div_exact(&f2).unwrap(), f1);
    }

    #[test]
    fn display_ascending() {
        let (av, bv, gv) = abg();
        let m = Monomial::from_pairs([(av, 1), (bv, 1), (gv, 2)]);
        let p = LaurentPolynomial::one_minus(m);
        assert_eq!(p.to_string(), "1 - a*b*g^2");
        assert_eq!(g().scale(&BigInt::from(-3)).to_string(), "-3*g");
    }
}
