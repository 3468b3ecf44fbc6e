//! q-analogues: Gauss brackets, q-factorials, q-binomials, q-Pochhammer
//! symbols, and exact finite checks of the basic hypergeometric identities
//! the closed forms rest on.
//!
//! Every `verify_*` function decides one identity for one fixed `n` by
//! expanding both sides exactly and comparing with cross-multiplication.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ratfun::{FactoredSum, LaurentPolynomial, Monomial, RationalFunction, Var};

/// The base of the q-analogues (`g` on the homology side, `q` in the
/// hypergeometric identities).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QContext {
    pub base: Var,
}

impl QContext {
    pub fn new(base: Var) -> Self {
        QContext { base }
    }

    /// Base `g`.
    pub fn g() -> Self {
        QContext::new(Var::named("g"))
    }

    /// Base `q`.
    pub fn q() -> Self {
        QContext::new(Var::named("q"))
    }

    pub fn power(&self, e: i32) -> Monomial {
        Monomial::pow_of(self.base, e)
    }

    fn power_poly(&self, e: i32) -> LaurentPolynomial {
        LaurentPolynomial::monomial(self.power(e))
    }
}

/// `[n] = 1 + g + ... + g^(n-1)`.
pub fn gauss_bracket(n: i64, ctx: QContext) -> Result<LaurentPolynomial> {
    if n <= 0 {
        return Err(Error::Domain(format!("gauss bracket [{n}] needs n >= 1")));
    }
    Ok(LaurentPolynomial::from_terms(
        (0..n as i32).map(|i| (ctx.power(i), BigInt::from(1))),
    ))
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial(n: u32, ctx: QContext) -> LaurentPolynomial {
    let brackets: Vec<LaurentPolynomial> = (1..=n as i64)
        .map(|j| gauss_bracket(j, ctx).expect("j >= 1"))
        .collect();
    LaurentPolynomial::product(&brackets)
}

/// Gaussian binomial `[n]! / ([m]! [n-m]!)` by exact polynomial division.
pub fn q_binom(n: u32, m: u32, ctx: QContext) -> Result<LaurentPolynomial> {
    if m > n {
        return Err(Error::Domain(format!(
            "q-binomial needs m <= n, got ({n}, {m})"
        )));
    }
    let den = &q_factorial(m, ctx) * &q_factorial(n - m, ctx);
    q_factorial(n, ctx)
        .div_exact(&den)
        .ok_or(Error::InexactDivision)
}

/// `(x; g)_k = (1 - x)(1 - x g) ... (1 - x g^(k-1))`.
pub fn q_pochhammer(x: &RationalFunction, k: u32, ctx: QContext) -> RationalFunction {
    (0..k as i32).fold(RationalFunction::one(), |acc, i| {
        let shifted = x * &RationalFunction::monomial(ctx.power(i));
        acc * (RationalFunction::one() - shifted)
    })
}

/// `(x; g)_k` with its factors kept apart: each `1 - x g^i` contributes
/// `den(x) - num(x) g^i` upstairs and `den(x)` downstairs.
pub(crate) fn q_pochhammer_factored(x: &RationalFunction, k: u32, ctx: QContext) -> FactoredSum {
    let mut out = FactoredSum::one();
    for i in 0..k as i32 {
        let up = x.den() - &(x.num() * &ctx.power_poly(i));
        out = out.scale_poly(&up);
        if !x.den().is_one() {
            out = out.divided_by(x.den()).expect("normalized denominator");
        }
    }
    out
}

/// `acc / (x; g)_k`, one factor `(den(x) - num(x) g^i) / den(x)` at a time.
fn divide_by_pochhammer(
    mut acc: FactoredSum,
    x: &RationalFunction,
    k: u32,
    ctx: QContext,
) -> FactoredSum {
    for i in 0..k as i32 {
        let down = x.den() - &(x.num() * &ctx.power_poly(i));
        acc = acc
            .scale_poly(x.den())
            .divided_by(&down)
            .expect("symbolic pochhammer factors are nonzero");
    }
    acc
}

fn binom2(k: i64) -> i32 {
    (k * (k - 1) / 2) as i32
}

/// `sum_k [n k] g^C(k,2) (-1)^k == 0` (the g-binomial theorem at x = 1).
pub fn verify_g_binomial_alternating(n: u32, ctx: QContext) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain(
            "alternating q-binomial sum needs n >= 1".into(),
        ));
    }
    let mut total = LaurentPolynomial::zero();
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = q_binom(n, k, ctx)?
            .mul_monomial(&ctx.power(binom2(k as i64)))
            .scale(&BigInt::from(sign));
        total = total + term;
    }
    Ok(total.is_zero())
}

/// `sum_{i=0}^{n} (q^-n; q)_i (b; q)_i / ((q; q)_i (c; q)_i) x^i` as a
/// factored sum.
fn phi21_factored(
    n: u32,
    b: &RationalFunction,
    c: &RationalFunction,
    x: &RationalFunction,
    ctx: QContext,
) -> FactoredSum {
    let q_minus_n = RationalFunction::monomial(ctx.power(-(n as i32)));
    let q = RationalFunction::monomial(ctx.power(1));
    let terms = (0..=n).map(|i| {
        let up = q_pochhammer_factored(&q_minus_n, i, ctx)
            .mul(&q_pochhammer_factored(b, i, ctx))
            .mul(&power_factored(x, i));
        let up = divide_by_pochhammer(up, &q, i, ctx);
        divide_by_pochhammer(up, c, i, ctx)
    });
    FactoredSum::sum(terms.collect::<Vec<_>>())
}

fn power_factored(x: &RationalFunction, i: u32) -> FactoredSum {
    let mut out = FactoredSum::from_poly(x.num().pow(i));
    for _ in 0..i {
        if !x.den().is_one() {
            out = out.divided_by(x.den()).expect("normalized denominator");
        }
    }
    out
}

/// Terminating basic hypergeometric series
/// `2phi1(q^-n, b; c; q, x) = sum_{i=0}^{n} (q^-n)_i (b)_i / ((q)_i (c)_i) x^i`.
pub fn phi21_finite(
    n: u32,
    b: &RationalFunction,
    c: &RationalFunction,
    x: &RationalFunction,
    ctx: QContext,
) -> RationalFunction {
    phi21_factored(n, b, c, x, ctx).reduce().to_rational()
}

fn symbols_bc() -> (RationalFunction, RationalFunction) {
    (
        RationalFunction::var(Var::named("b")),
        RationalFunction::var(Var::named("c")),
    )
}

/// Both terminating q-Chu-Vandermonde sums, in symbols `b`, `c` and the
/// context base:
///
/// * `2phi1(q^-n, b; c; q, q) = (c/b)_n b^n / (c)_n`
/// * `2phi1(q^-n, b; c; q, (c/b) q^n) = (c/b)_n / (c)_n`
pub fn verify_q_chu_vandermonde(n: u32, ctx: QContext) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("q-Chu-Vandermonde check needs n >= 1".into()));
    }
    let (b, c) = symbols_bc();
    let c_over_b = c.rat_div(&b)?;
    let c_poch = q_pochhammer(&c, n, ctx);
    let cb_poch = q_pochhammer(&c_over_b, n, ctx);
    let ratio = cb_poch.rat_div(&c_poch)?;

    let q = RationalFunction::monomial(ctx.power(1));
    let reversed = phi21_factored(n, &b, &c, &q, ctx);
    let reversed_rhs = &ratio * &b.pow(n as i32)?;
    if !reversed.rat_eq(&reversed_rhs) {
        return Ok(false);
    }

    let x = &c_over_b * &RationalFunction::monomial(ctx.power(n as i32));
    let forward = phi21_factored(n, &b, &c, &x, ctx);
    Ok(forward.rat_eq(&ratio))
}

/// Reversal of the terminating sum, in symbols `b`, `c`, `x`:
///
/// `2phi1(q^-n, b; c; q, x) = (-1)^n q^-C(n+1,2) (b)_n/(c)_n x^n
///   * 2phi1(q^-n, c^-1 q^(1-n); b^-1 q^(1-n); q, (c/b) q^(n+1) / x)`.
pub fn verify_reversal_identity(n: u32, ctx: QContext) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("reversal check needs n >= 1".into()));
    }
    let (b, c) = symbols_bc();
    let x = RationalFunction::var(Var::named("x"));
    let lhs = phi21_factored(n, &b, &c, &x, ctx);

    let shift = RationalFunction::monomial(ctx.power(1 - n as i32));
    let b2 = &c.rat_inv()? * &shift;
    let c2 = &b.rat_inv()? * &shift;
    let x2 =
        (&c.rat_div(&b)? * &RationalFunction::monomial(ctx.power(n as i32 + 1))).rat_div(&x)?;
    let inner = phi21_factored(n, &b2, &c2, &x2, ctx);

    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let exponent = -((n as i64 + 1) * n as i64 / 2) as i32;
    let prefactor = RationalFunction::monomial(ctx.power(exponent)).scale(sign)
        * q_pochhammer(&b, n, ctx).rat_div(&q_pochhammer(&c, n, ctx))?
        * x.pow(n as i32)?;
    let rhs = inner.mul(&FactoredSum::from_rational(&prefactor));
    Ok(lhs.add(&rhs.neg()).reduce().is_zero())
}

/// `(x)_n = x (x+1) ... (x+n-1)`.
pub fn rising_factorial(x: &RationalFunction, n: u32) -> RationalFunction {
    (0..n as i64).fold(RationalFunction::one(), |acc, i| {
        acc * (x + &RationalFunction::constant(i))
    })
}

/// `sum_k (-n)_k (beta)_k / (k! (gamma)_k) = (gamma - beta)_n / (gamma)_n`
/// as an identity in the symbols `beta`, `gamma`.
pub fn verify_classical_chu_vandermonde(n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("Chu-Vandermonde check needs n >= 1".into()));
    }
    let beta = RationalFunction::var(Var::named("beta"));
    let gamma = RationalFunction::var(Var::named("gamma"));
    let minus_n = RationalFunction::constant(-(n as i64));
    let mut terms = Vec::new();
    let mut k_factorial = 1i64;
    for k in 0..=n {
        if k > 0 {
            k_factorial *= k as i64;
        }
        let up = &rising_factorial(&minus_n, k) * &rising_factorial(&beta, k);
        let mut term = FactoredSum::from_rational(&up)
            .divided_by(&LaurentPolynomial::constant(k_factorial))?;
        for i in 0..k as i64 {
            let factor = (&gamma + &RationalFunction::constant(i)).num().clone();
            term = term.divided_by(&factor)?;
        }
        terms.push(term);
    }
    let lhs = FactoredSum::sum(terms);
    let rhs = rising_factorial(&(&gamma - &beta), n).rat_div(&rising_factorial(&gamma, n))?;
    Ok(lhs.rat_eq(&rhs))
}
