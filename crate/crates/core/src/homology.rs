//! Intersection numbers of twisted cycles on Terada-n chambers.
//!
//! `J_n / n!` is computed by enumerating laminar families in two ways
//! (pairwise chamber terms, and the angle-bracket monomial sum), by the
//! boundary/interior decomposition `sum A_i X_(n-i-j) B_j`, and in closed
//! product form. All routes are exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::{gauss_bracket, QContext};
use crate::ratfun::{
    FactoredRational, FactoredSum, LaurentPolynomial, Monomial, RationalFunction, RationalJson, Var,
};
use crate::terada::{
    all_intervals, laminar_families, laminar_families_by, ExponentAssignment, FamilyFilter,
    Interval, LaminarFamily,
};

fn ensure_rank(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("rank n must be at least 1".into()));
    }
    Ok(())
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn g_power(e: i32) -> Monomial {
    Monomial::pow_of(Var::named("g"), e)
}

fn bracket_fs(i: &Interval, assign: &ExponentAssignment) -> Result<FactoredSum> {
    let e = crate::terada::exponent_of(i, assign)?;
    FactoredSum::recip(&LaurentPolynomial::minus_one(e))
}

fn angle_fs(i: &Interval) -> FactoredSum {
    let q = (i.size() - 1) as i32;
    let den = LaurentPolynomial::one()
        - LaurentPolynomial::monomial(g_power(q * (q + 1) / 2)).scale(&sign(q % 2 == 1).into());
    FactoredSum::from_poly(LaurentPolynomial::constant(-1))
        .divided_by(&den)
        .expect("angle denominator is nonzero")
}

/// Per-interval weights, computed once per sum.
struct Weights(HashMap<Interval, FactoredSum>);

impl Weights {
    fn new<F: Fn(&Interval) -> Result<FactoredSum>>(n: u32, f: F) -> Result<Self> {
        all_intervals(n)
            .into_iter()
            .map(|i| Ok((i, f(&i)?)))
            .collect::<Result<_>>()
            .map(Weights)
    }

    fn product<'a, I: IntoIterator<Item = &'a Interval>>(&self, members: I) -> FactoredSum {
        members
            .into_iter()
            .fold(FactoredSum::one(), |acc, i| acc.mul(&self.0[i]))
    }
}

fn brackets(n: u32, assign: &ExponentAssignment) -> Result<Weights> {
    Weights::new(n, |i| bracket_fs(i, assign))
}

/// Boundary members get `[I]`, interior ones `<I>`.
fn monomial_weights(n: u32) -> Weights {
    let u = ExponentAssignment::uniform();
    Weights::new(n, |i| {
        if i.is_interior() {
            Ok(angle_fs(i))
        } else {
            bracket_fs(i, &u)
        }
    })
    .expect("uniform assignment is valid for every n")
}

/// `sum over all faces (empty included) of prod [I]`, uniform exponents.
pub fn self_intersection_unsigned(n: u32) -> Result<RationalFunction> {
    Ok(
        self_intersection_unsigned_with(n, &ExponentAssignment::uniform())?
            .reduce()
            .to_rational(),
    )
}

/// Same sum under an arbitrary exponent assignment.
pub fn self_intersection_unsigned_with(n: u32, assign: &ExponentAssignment) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let w = brackets(n, assign)?;
    Ok(FactoredSum::sum(
        laminar_families(n, FamilyFilter::All)
            .iter()
            .map(|f| w.product(f.members())),
    ))
}

/// Faces G sharing no member with F and laminar together with F.
fn complementary_families(f: &LaminarFamily) -> Vec<LaminarFamily> {
    laminar_families_by(f.n(), |i| {
        !f.contains(i) && f.members().iter().all(|m| m.is_compatible(i))
    })
}

fn pair_with(f: &LaminarFamily, w: &Weights) -> Result<FactoredSum> {
    if !f.is_interior() {
        return Err(Error::Domain(format!("{f} has a boundary member")));
    }
    let mut odd = f.n() % 2 == 1;
    let mut g_exp = 0;
    for i in f.members() {
        let q = (i.size() - 1) as i32;
        odd ^= q % 2 == 1;
        g_exp += q * (q + 1) / 2;
    }
    let f_dot_f = FactoredSum::sum(
        complementary_families(f)
            .iter()
            .map(|g| w.product(g.members())),
    );
    let prefactor = w
        .product(f.members())
        .scale_poly(&LaurentPolynomial::term(sign(odd), g_power(g_exp)));
    Ok(prefactor.mul(&f_dot_f))
}

/// Intersection of the identity chamber with the one touching it along
/// the interior face `f`: `(-1)^n prod (-1)^q g^C(q+1,2) [I] * (F.F)`.
pub fn pair_intersection(n: u32, f: &LaminarFamily) -> Result<RationalFunction> {
    Ok(pair_intersection_factored(n, f)?.reduce().to_rational())
}

pub fn pair_intersection_factored(n: u32, f: &LaminarFamily) -> Result<FactoredSum> {
    ensure_rank(n)?;
    if f.n() != n {
        return Err(Error::Domain(format!("{f} is not a face for n = {n}")));
    }
    pair_with(f, &brackets(n, &ExponentAssignment::uniform())?)
}

/// Sum of pairwise chamber terms over every interior face, the empty face
/// giving the signed self term.
pub fn jn_pairwise_route(n: u32) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let w = brackets(n, &ExponentAssignment::uniform())?;
    let terms = laminar_families(n, FamilyFilter::Interior)
        .iter()
        .map(|f| pair_with(f, &w))
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoredSum::sum(terms))
}

/// `(-1)^n` times the sum of all monomials: `[I]` on boundary members,
/// `<I>` on interior ones.
pub fn jn_monomial_route(n: u32) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let w = monomial_weights(n);
    let total = FactoredSum::sum(
        laminar_families(n, FamilyFilter::All)
            .iter()
            .map(|f| w.product(f.members())),
    );
    Ok(if n % 2 == 1 { total.neg() } else { total })
}

/// `J_n / n!` by enumeration. Both routes are computed and must agree.
pub fn jn_enumerated_factored(n: u32) -> Result<FactoredSum> {
    let monomials = jn_monomial_route(n)?;
    let pairwise = jn_pairwise_route(n)?;
    assert!(
        monomials.equals(&pairwise),
        "pairwise and monomial sums disagree for n = {n}"
    );
    Ok(monomials.reduce())
}

pub fn jn_enumerated(n: u32) -> Result<RationalFunction> {
    Ok(jn_enumerated_factored(n)?.to_rational())
}

fn check_k_n(k: u32, n: u32) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(())
}

fn interior_sum<P: Fn(&LaminarFamily) -> bool>(n: u32, keep: P) -> FactoredSum {
    let w = monomial_weights(n);
    FactoredSum::sum(
        laminar_families(n, FamilyFilter::Interior)
            .iter()
            .filter(|f| keep(f))
            .map(|f| w.product(f.members())),
    )
}

/// `X(k, n)`: monomials in the letters `1..n` of length at most `k`.
pub fn x_monomial_sum(k: u32, n: u32) -> Result<RationalFunction> {
    Ok(x_monomial_factored(k, n)?.reduce().to_rational())
}

fn x_monomial_factored(k: u32, n: u32) -> Result<FactoredSum> {
    check_k_n(k, n)?;
    Ok(interior_sum(n, |f| f.max_size() <= k))
}

/// `Y(k, n)`: monomials in the letters `1..n` of length exactly `k`; the
/// empty monomial has length 1.
pub fn y_monomial_sum(k: u32, n: u32) -> Result<RationalFunction> {
    check_k_n(k, n)?;
    Ok(interior_sum(n, |f| f.max_size().max(1) == k)
        .reduce()
        .to_rational())
}

fn q_factorial_factors(n: u32, m: i32) -> impl Iterator<Item = (LaurentPolynomial, i32)> {
    (2..=n as i64).map(move |j| (gauss_bracket(j, QContext::g()).expect("j >= 2"), m))
}

/// `X(n, n) = g^C(n,2) / [n]!`; `X_0 = 1`.
pub fn x_closed(n: u32) -> FactoredRational {
    let c = (n as i64 * (n as i64 - 1) / 2) as i32;
    FactoredRational::new(
        BigRational::from_integer(1.into()),
        std::iter::once((LaurentPolynomial::monomial(g_power(c)), 1))
            .chain(q_factorial_factors(n, -1)),
    )
}

/// `Y(n, n) = (-1)^(n+1) / [n]!`.
pub fn y_closed(n: u32) -> FactoredRational {
    FactoredRational::new(
        BigRational::from_integer(sign(n.is_multiple_of(2)).into()),
        q_factorial_factors(n, -1),
    )
}

/// Which end of the segment a boundary sum runs from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Faces through 0, variable `a`.
    Zero,
    /// Faces through n+1, variable `b`.
    Top,
}

impl Side {
    fn var(self) -> &'static str {
        match self {
            Side::Zero => "a",
            Side::Top => "b",
        }
    }

    /// The boundary face with `k + 1` letters, placed in rank `k`.
    fn face(self, k: u32) -> Interval {
        match self {
            Side::Zero => Interval::new(0, k, k),
            Side::Top => Interval::new(1, k + 1, k),
        }
        .expect("k >= 1")
    }
}

/// `A_k = [01..k] sum_{p<k} A_p X_(k-p)` with `A_0 = 1`, X enumerated.
pub fn boundary_recursive(k: u32, side: Side) -> Result<RationalFunction> {
    let u = ExponentAssignment::uniform();
    let mut table = vec![FactoredSum::one()];
    for m in 1..=k {
        let mut terms = Vec::new();
        for (p, a_p) in table.iter().enumerate() {
            let x = x_monomial_factored(m - p as u32, m - p as u32)?;
            terms.push(a_p.mul(&x));
        }
        let next = bracket_fs(&side.face(m), &u)?.mul(&FactoredSum::sum(terms));
        table.push(next.reduce());
    }
    Ok(table[k as usize].to_rational())
}

pub fn a_recursive(k: u32) -> Result<RationalFunction> {
    boundary_recursive(k, Side::Zero)
}

pub fn b_recursive(k: u32) -> Result<RationalFunction> {
    boundary_recursive(k, Side::Top)
}

fn one_minus(m: Monomial) -> LaurentPolynomial {
    LaurentPolynomial::one_minus(m)
}

/// `(x g^shift; g)_k` factors `1 - x g^(shift+i)`.
fn poch_factors(
    x: Option<Monomial>,
    shift: i32,
    k: u32,
    m: i32,
) -> impl Iterator<Item = (LaurentPolynomial, i32)> {
    (0..k as i32).map(move |i| {
        let base = x.clone().unwrap_or_default();
        (one_minus(base.mul(&g_power(shift + i))), m)
    })
}

fn boundary_var(side: Side) -> Monomial {
    Monomial::var(Var::named(side.var()))
}

/// `A_k = (-1)^k (1-g)^k / ((a)_k (g)_k)`; B the same in `b`.
pub fn boundary_closed(k: u32, side: Side) -> FactoredRational {
    FactoredRational::new(
        BigRational::from_integer(sign(k % 2 == 1).into()),
        std::iter::once((one_minus(g_power(1)), k as i32))
            .chain(poch_factors(Some(boundary_var(side)), 0, k, -1))
            .chain(poch_factors(None, 1, k, -1)),
    )
}

pub fn a_closed(k: u32) -> FactoredRational {
    boundary_closed(k, Side::Zero)
}

pub fn b_closed(k: u32) -> FactoredRational {
    boundary_closed(k, Side::Top)
}

/// `(-1)^n sum_{i+j<=n} A_i X_(n-i-j) B_j` from the closed pieces.
pub fn jn_decomposed(n: u32) -> Result<RationalFunction> {
    Ok(jn_decomposed_factored(n)?.reduce().to_rational())
}

pub fn jn_decomposed_factored(n: u32) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let a: Vec<FactoredSum> = (0..=n)
        .map(|i| FactoredSum::from_factored(&a_closed(i)))
        .collect();
    let b: Vec<FactoredSum> = (0..=n)
        .map(|j| FactoredSum::from_factored(&b_closed(j)))
        .collect();
    let x: Vec<FactoredSum> = (0..=n)
        .map(|m| FactoredSum::from_factored(&x_closed(m)))
        .collect();
    let mut terms = Vec::new();
    for i in 0..=n as usize {
        for j in 0..=(n as usize - i) {
            terms.push(a[i].mul(&x[n as usize - i - j]).mul(&b[j]));
        }
    }
    let total = FactoredSum::sum(terms);
    Ok(if n % 2 == 1 { total.neg() } else { total })
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).product::<u64>().into()
}

/// `J_n = n! prod_j (1 - a b g^(n+j-2)) / ((1 - a g^(j-1)) (1 - b g^(j-1)))
/// * (1 - g) / (1 - g^j)`.
pub fn jn_closed(n: u32) -> FactoredRational {
    let ab = boundary_var(Side::Zero).mul(&boundary_var(Side::Top));
    let mut factors = Vec::new();
    for j in 1..=n as i32 {
        factors.push((one_minus(ab.mul(&g_power(n as i32 + j - 2))), 1));
        factors.push((one_minus(boundary_var(Side::Zero).mul(&g_power(j - 1))), -1));
        factors.push((one_minus(boundary_var(Side::Top).mul(&g_power(j - 1))), -1));
        factors.push((one_minus(g_power(1)), 1));
        factors.push((one_minus(g_power(j)), -1));
    }
    FactoredRational::new(BigRational::from_integer(factorial(n)), factors)
}

/// The same number as `(-1)^n n! (g-1)^n (abg^(n-1))_n / ((a)_n (b)_n (g)_n)`.
pub fn jn_closed_pochhammer(n: u32) -> FactoredRational {
    let ab = boundary_var(Side::Zero).mul(&boundary_var(Side::Top));
    let g_minus_one = LaurentPolynomial::minus_one(g_power(1));
    FactoredRational::new(
        BigRational::from_integer(factorial(n) * sign(n % 2 == 1)),
        std::iter::once((g_minus_one, n as i32))
            .chain(poch_factors(Some(ab), n as i32 - 1, n, 1))
            .chain(poch_factors(Some(boundary_var(Side::Zero)), 0, n, -1))
            .chain(poch_factors(Some(boundary_var(Side::Top)), 0, n, -1))
            .chain(poch_factors(None, 1, n, -1)),
    )
}

fn f_fs(x: &RationalFunction) -> Result<FactoredSum> {
    FactoredSum::from_poly(x.den().clone()).divided_by(&(x.num() - x.den()))
}

fn s_fs(x: &RationalFunction, y: &RationalFunction) -> Result<FactoredSum> {
    Ok(FactoredSum::sum([FactoredSum::one(), f_fs(x)?, f_fs(y)?]))
}

fn p_fs(xs: &[RationalFunction; 5]) -> Result<FactoredSum> {
    let fs = xs.iter().map(f_fs).collect::<Result<Vec<_>>>()?;
    let mut terms = vec![FactoredSum::one()];
    terms.extend(fs.iter().cloned());
    terms.extend((0..5).map(|i| fs[i].mul(&fs[(i + 1) % 5])));
    Ok(FactoredSum::sum(terms))
}

fn q_fs(
    p: &[RationalFunction; 3],
    q: &[RationalFunction; 3],
    r: &[RationalFunction; 3],
) -> Result<FactoredSum> {
    let fp = p.iter().map(f_fs).collect::<Result<Vec<_>>>()?;
    let fq = q.iter().map(f_fs).collect::<Result<Vec<_>>>()?;
    let fr = r.iter().map(f_fs).collect::<Result<Vec<_>>>()?;
    let mut terms = vec![FactoredSum::one()];
    for i in 0..3 {
        let j = (i + 1) % 3;
        terms.push(fr[i].mul(&s_fs(&p[i], &q[j])?).mul(&s_fs(&p[j], &q[i])?));
        terms.push(fp[i].clone());
        terms.push(fq[i].clone());
        terms.push(fp[i].mul(&fp[j]));
        terms.push(fq[i].mul(&fq[j]));
        terms.push(fp[i].mul(&fq[i]));
    }
    terms.push(fp[0].mul(&fp[1]).mul(&fp[2]));
    terms.push(fq[0].mul(&fq[1]).mul(&fq[2]));
    Ok(FactoredSum::sum(terms))
}

/// `F(x) = 1 / (x - 1)`.
pub fn helper_f(x: &RationalFunction) -> Result<RationalFunction> {
    Ok(f_fs(x)?.to_rational())
}

/// `S(x, y) = 1 + F(x) + F(y)`.
pub fn helper_s(x: &RationalFunction, y: &RationalFunction) -> Result<RationalFunction> {
    Ok(s_fs(x, y)?.to_rational())
}

/// Pentagon sum: 1, the five `F(x_i)`, and the five cyclically adjacent
/// products.
pub fn helper_p(xs: &[RationalFunction; 5]) -> Result<RationalFunction> {
    Ok(p_fs(xs)?.to_rational())
}

/// The 45-term face sum of the three-parameter Terada-3, indices mod 3.
/// Arguments in the order `p1, q1, r1, p2, q2, r2, p3, q3, r3`.
pub fn helper_q(args: &[RationalFunction; 9]) -> Result<RationalFunction> {
    let (p, q, r) = split_q(args);
    Ok(q_fs(&p, &q, &r)?.to_rational())
}

fn split_q(
    args: &[RationalFunction; 9],
) -> (
    [RationalFunction; 3],
    [RationalFunction; 3],
    [RationalFunction; 3],
) {
    let pick = |o: usize| std::array::from_fn(|i| args[3 * i + o].clone());
    (pick(0), pick(1), pick(2))
}

/// Monomial shorthand over the three-parameter variables.
fn mono(pairs: &[(&str, i32)]) -> RationalFunction {
    RationalFunction::monomial(Monomial::from_pairs(
        pairs.iter().map(|&(v, e)| (Var::named(v), e)),
    ))
}

/// Arguments of the Q term in the three-parameter case.
pub fn j3_q_arguments() -> [RationalFunction; 9] {
    [
        mono(&[("f", 2), ("g", 2), ("h", 2), ("b", 3)]),
        mono(&[("g", 2)]),
        mono(&[("g", 2), ("b", 2)]),
        mono(&[("b", 1)]),
        mono(&[("a", 1)]),
        mono(&[("a", 2), ("f", 2)]),
        mono(&[("f", 2)]),
        mono(&[("a", 3), ("f", 2), ("g", 2), ("h", 2)]),
        mono(&[("f", 2), ("g", 2), ("h", 2)]),
    ]
}

/// `J_3 / 3!` with independent diagonal exponents `f`, `g`, `h`: two
/// pentagons, a rectangle, two segments and the vertex sum.
pub fn j3_general_factored() -> Result<FactoredSum> {
    let f = mono(&[("f", 1)]);
    let g = mono(&[("g", 1)]);
    let fgh = mono(&[("f", 1), ("g", 1), ("h", 1)]);
    let f2 = mono(&[("f", 2)]);
    let g2 = mono(&[("g", 2)]);
    let f2g2h2 = mono(&[("f", 2), ("g", 2), ("h", 2)]);
    let a3 = mono(&[("a", 3), ("f", 2), ("g", 2), ("h", 2)]);
    let b3 = mono(&[("f", 2), ("g", 2), ("h", 2), ("b", 3)]);

    let times = |x: &RationalFunction, y: FactoredSum| y.mul(&FactoredSum::from_rational(x));
    let pent1 = times(
        &f,
        f_fs(&f2)?.mul(&p_fs(&[
            mono(&[("b", 1)]),
            mono(&[("a", 2), ("f", 2)]),
            a3.clone(),
            f2g2h2.clone(),
            b3.clone(),
        ])?),
    );
    let pent2 = times(
        &g,
        f_fs(&g2)?.mul(&p_fs(&[
            mono(&[("a", 1)]),
            mono(&[("g", 2), ("b", 2)]),
            b3.clone(),
            f2g2h2.clone(),
            a3.clone(),
        ])?),
    );
    let diag = times(&fgh, f_fs(&f2g2h2)?).mul(&s_fs(&a3, &b3)?);
    let rect = diag.mul(&s_fs(&f2, &g2)?).neg();
    let seg1 = diag.mul(&times(&f, f_fs(&f2)?));
    let seg2 = diag.mul(&times(&g, f_fs(&g2)?));
    let (p, q, r) = split_q(&j3_q_arguments());
    let vertex = q_fs(&p, &q, &r)?.neg();
    Ok(FactoredSum::sum([pent1, pent2, rect, seg1, seg2, vertex]))
}

pub fn j3_general() -> Result<RationalFunction> {
    Ok(j3_general_factored()?.reduce().to_rational())
}

/// Enumerated versus closed `J_n`.
#[derive(Clone, Debug)]
pub struct JnReport {
    pub n: u32,
    /// `J_n / n!` by enumeration.
    pub enumerated: RationalFunction,
    /// `J_n` in product form.
    pub closed: FactoredRational,
    pub equal: bool,
    /// Number of monomials (faces of every codimension) summed.
    pub term_count: usize,
}

pub fn jn_report(n: u32) -> Result<JnReport> {
    let enumerated = jn_enumerated_factored(n)?;
    let closed = jn_closed(n);
    let per_factorial = closed.scale(&BigRational::new(1.into(), factorial(n)));
    let equal = enumerated.equals(&FactoredSum::from_factored(&per_factorial));
    Ok(JnReport {
        n,
        enumerated: enumerated.to_rational(),
        closed,
        equal,
        term_count: laminar_families(n, FamilyFilter::All).len(),
    })
}

#[derive(Serialize)]
struct JnReportJson {
    n: u32,
    equal: bool,
    enumerated: RationalJson,
    closed_constant: String,
    closed_factors: Vec<(String, i32)>,
    term_count: usize,
}

impl Serialize for JnReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JnReportJson {
            n: self.n,
            equal: self.equal,
            enumerated: RationalJson::from(&self.enumerated),
            closed_constant: self.closed.constant().to_string(),
            closed_factors: self
                .closed
                .factors()
                .iter()
                .map(|(p, m)| (p.to_string(), *m))
                .collect(),
            term_count: self.term_count,
        }
        .serialize(s)
    }
}
