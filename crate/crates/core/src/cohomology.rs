//! Self-intersection of the twisted form omega.
//!
//! Only the admissible vertices of the Terada-n (those touching no other
//! chamber) contribute; each gives the reciprocal of the product of the
//! additive exponents of its n hyperfaces. The `(2 pi i)^n` factor is kept
//! as a power tag.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratfun::{
    FactoredRational, FactoredSum, LaurentPolynomial, Monomial, RationalFunction, RationalJson, Var,
};
use crate::terada::{Interval, IntervalKind, LaminarFamily};

/// The linear form `i alpha + j beta + k gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdditiveExponent {
    pub coeff_alpha: i64,
    pub coeff_beta: i64,
    pub coeff_gamma: i64,
}

impl AdditiveExponent {
    pub fn to_poly(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms([
            (
                Monomial::var(Var::named("alpha")),
                BigInt::from(self.coeff_alpha),
            ),
            (
                Monomial::var(Var::named("beta")),
                BigInt::from(self.coeff_beta),
            ),
            (
                Monomial::var(Var::named("gamma")),
                BigInt::from(self.coeff_gamma),
            ),
        ])
    }
}

/// `(2 pi i)^power * rational_part`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPiPower<T = RationalFunction> {
    pub power: u32,
    pub rational_part: T,
}

impl TwoPiPower<FactoredRational> {
    pub fn expand(&self) -> TwoPiPower {
        TwoPiPower {
            power: self.power,
            rational_part: self.rational_part.expand(),
        }
    }
}

fn ensure_rank(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("rank n must be at least 1".into()));
    }
    Ok(())
}

/// Vertex `k`: `(01), (012), .., (0..k)` and `(k+1..n+1), .., (n n+1)`.
pub fn admissible_vertices(n: u32) -> Result<Vec<LaminarFamily>> {
    ensure_rank(n)?;
    (0..=n)
        .map(|k| {
            let low = (1..=k).map(|i| (0, i));
            let high = (k + 1..=n).map(|j| (j, n + 1));
            LaminarFamily::from_pairs(n, &low.chain(high).collect::<Vec<_>>())
        })
        .collect()
}

/// With `k = size - 1`: `k alpha + k(k-1) gamma` through 0,
/// `k beta + k(k-1) gamma` through n+1, `m(m-1) gamma` inside.
pub fn additive_exponent_of(i: &Interval) -> AdditiveExponent {
    let k = i.size() as i64 - 1;
    let diag = k * (k - 1);
    match i.kind() {
        IntervalKind::Boundary0 => AdditiveExponent {
            coeff_alpha: k,
            coeff_beta: 0,
            coeff_gamma: diag,
        },
        IntervalKind::BoundaryTop => AdditiveExponent {
            coeff_alpha: 0,
            coeff_beta: k,
            coeff_gamma: diag,
        },
        IntervalKind::Interior => {
            let m = i.size() as i64;
            AdditiveExponent {
                coeff_alpha: 0,
                coeff_beta: 0,
                coeff_gamma: m * (m - 1),
            }
        }
    }
}

fn contribution_fs(vertex: &LaminarFamily) -> FactoredSum {
    vertex.members().iter().fold(FactoredSum::one(), |acc, i| {
        acc.divided_by(&additive_exponent_of(i).to_poly())
            .expect("hyperface exponents are nonzero")
    })
}

pub fn vertex_contribution(n: u32, k: u32) -> Result<RationalFunction> {
    if k > n {
        return Err(Error::Domain(format!("vertex index {k} exceeds n = {n}")));
    }
    let vertices = admissible_vertices(n)?;
    Ok(contribution_fs(&vertices[k as usize]).to_rational())
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).product::<u64>().into()
}

fn vertex_sum_fs(n: u32) -> Result<FactoredSum> {
    let sum = FactoredSum::sum(admissible_vertices(n)?.iter().map(contribution_fs));
    Ok(sum.scale_poly(&LaurentPolynomial::constant(factorial(n))))
}

/// `(2 pi i)^n n! sum_k vertex_contribution(n, k)`.
pub fn omega_self_intersection(n: u32) -> Result<TwoPiPower> {
    Ok(TwoPiPower {
        power: n,
        rational_part: vertex_sum_fs(n)?.reduce().to_rational(),
    })
}

fn linear(a: i64, b: i64, c: i64) -> LaurentPolynomial {
    AdditiveExponent {
        coeff_alpha: a,
        coeff_beta: b,
        coeff_gamma: c,
    }
    .to_poly()
}

/// `(2 pi i)^n prod_j (alpha + beta + (n+j-2) gamma)
///   / ((alpha + (j-1) gamma)(beta + (j-1) gamma))`.
pub fn omega_closed(n: u32) -> Result<TwoPiPower<FactoredRational>> {
    ensure_rank(n)?;
    let mut factors = Vec::new();
    for j in 1..=n as i64 {
        factors.push((linear(1, 1, n as i64 + j - 2), 1));
        factors.push((linear(1, 0, j - 1), -1));
        factors.push((linear(0, 1, j - 1), -1));
    }
    Ok(TwoPiPower {
        power: n,
        rational_part: FactoredRational::new(BigRational::from_integer(1.into()), factors),
    })
}

/// Vertex sum against the closed product, exactly.
pub fn verify_theorem2(n: u32) -> Result<bool> {
    let closed = omega_closed(n)?;
    Ok(vertex_sum_fs(n)?.equals(&FactoredSum::from_factored(&closed.rational_part)))
}

fn indexed(prefix: &str, n: u32) -> Vec<LaurentPolynomial> {
    (0..=n)
        .map(|i| LaurentPolynomial::var(Var::named(&format!("{prefix}_{i}"))))
        .collect()
}

/// Every proper face of the simplex with multiplicative exponents
/// `a_0..a_n`: `sum over S != {0..n} of prod_(i in S) 1/(a_i - 1)`.
pub fn beta_n_face_sum(n: u32) -> Result<RationalFunction> {
    Ok(beta_n_face_fs(n)?.reduce().to_rational())
}

/// Self-intersection of the loaded simplex: the face sum with the
/// orientation sign `(-1)^n` used for every cycle self-intersection (at
/// n = 1 this is the Beta case of `J_1`).
pub fn beta_n_simplex_self(n: u32) -> Result<RationalFunction> {
    Ok(beta_n_simplex_fs(n)?.reduce().to_rational())
}

fn beta_n_simplex_fs(n: u32) -> Result<FactoredSum> {
    let sum = beta_n_face_fs(n)?;
    Ok(if n % 2 == 1 { sum.neg() } else { sum })
}

fn beta_n_face_fs(n: u32) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let a = indexed("a", n);
    let full = (1u64 << (n + 1)) - 1;
    let terms = (0..full).map(|mask| {
        (0..=n as usize)
            .filter(|i| mask >> i & 1 == 1)
            .fold(FactoredSum::one(), |acc, i| {
                acc.divided_by(&(&a[i] - &LaurentPolynomial::one()))
                    .expect("a_i - 1 is nonzero")
            })
    });
    Ok(FactoredSum::sum(terms.collect::<Vec<_>>()))
}

/// `(1 - prod a_i) / prod (1 - a_i)`.
pub fn beta_n_simplex_closed(n: u32) -> Result<FactoredRational> {
    ensure_rank(n)?;
    let a = indexed("a", n);
    let prod = LaurentPolynomial::product(&a);
    Ok(FactoredRational::new(
        BigRational::from_integer(1.into()),
        std::iter::once((&LaurentPolynomial::one() - &prod, 1))
            .chain(a.iter().map(|ai| (&LaurentPolynomial::one() - ai, -1))),
    ))
}

/// Vertices only, additive exponents `alpha_0..alpha_n`:
/// `sum_i prod_(j != i) 1/alpha_j`.
pub fn beta_n_form_self(n: u32) -> Result<RationalFunction> {
    Ok(beta_n_form_fs(n)?.reduce().to_rational())
}

fn beta_n_form_fs(n: u32) -> Result<FactoredSum> {
    ensure_rank(n)?;
    let alpha = indexed("alpha", n);
    let terms = (0..=n as usize).map(|i| {
        alpha
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(FactoredSum::one(), |acc, (_, aj)| {
                acc.divided_by(aj).expect("alpha_j is nonzero")
            })
    });
    Ok(FactoredSum::sum(terms.collect::<Vec<_>>()))
}

/// `(alpha_0 + .. + alpha_n) / (alpha_0 .. alpha_n)`.
pub fn beta_n_form_closed(n: u32) -> Result<FactoredRational> {
    ensure_rank(n)?;
    let alpha = indexed("alpha", n);
    let sum = alpha
        .iter()
        .fold(LaurentPolynomial::zero(), |acc, x| &acc + x);
    Ok(FactoredRational::new(
        BigRational::from_integer(1.into()),
        std::iter::once((sum, 1)).chain(alpha.into_iter().map(|x| (x, -1))),
    ))
}

pub fn verify_beta_n(n: u32) -> Result<bool> {
    let simplex =
        beta_n_simplex_fs(n)?.equals(&FactoredSum::from_factored(&beta_n_simplex_closed(n)?));
    let form = beta_n_form_fs(n)?.equals(&FactoredSum::from_factored(&beta_n_form_closed(n)?));
    Ok(simplex && form)
}

/// Vertex sum versus closed product for one `n`.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub n: u32,
    pub vertex_sum: TwoPiPower,
    pub closed: TwoPiPower<FactoredRational>,
    pub equal: bool,
}

pub fn cohomology_report(n: u32) -> Result<CohomologyReport> {
    Ok(CohomologyReport {
        n,
        vertex_sum: omega_self_intersection(n)?,
        closed: omega_closed(n)?,
        equal: verify_theorem2(n)?,
    })
}

#[derive(Serialize)]
struct CohomologyReportJson {
    n: u32,
    equal: bool,
    two_pi_i_power: u32,
    vertex_sum: RationalJson,
    closed_constant: String,
    closed_factors: Vec<(String, i32)>,
}

impl Serialize for CohomologyReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CohomologyReportJson {
            n: self.n,
            equal: self.equal,
            two_pi_i_power: self.closed.power,
            vertex_sum: RationalJson::from(&self.vertex_sum.rational_part),
            closed_constant: self.closed.rational_part.constant().to_string(),
            closed_factors: self
                .closed
                .rational_part
                .factors()
                .iter()
                .map(|(p, m)| (p.to_string(), *m))
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    fn rv(name: &str) -> RationalFunction {
        RationalFunction::var(Var::named(name))
    }

    fn lin(a: i64, b: i64, c: i64) -> RationalFunction {
        RationalFunction::from_poly(linear(a, b, c))
    }

    fn rendered(n: u32) -> Vec<String> {
        admissible_vertices(n)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect()
    }

    #[test]
    fn vertices() {
        assert_eq!(rendered(1), ["{12}", "{01}"]);
        assert_eq!(rendered(2), ["{23,123}", "{01,23}", "{01,012}"]);
        assert_eq!(rendered(3).len(), 4);
        for n in 1..=8 {
            for v in admissible_vertices(n).unwrap() {
                assert_eq!(v.len(), n as usize);
                // re-validate laminarity through the checked constructor
                LaminarFamily::new(n, v.members().iter().copied()).unwrap();
            }
        }
    }

    #[test]
    fn exponents() {
        let i = |lo, hi, n| Interval::new(lo, hi, n).unwrap();
        assert_eq!(additive_exponent_of(&i(0, 1, 2)).to_poly(), linear(1, 0, 0));
        assert_eq!(additive_exponent_of(&i(0, 2, 2)).to_poly(), linear(2, 0, 2));
        assert_eq!(additive_exponent_of(&i(0, 3, 3)).to_poly(), linear(3, 0, 6));
        assert_eq!(additive_exponent_of(&i(1, 3, 4)).to_poly(), linear(0, 0, 6));
        assert_eq!(additive_exponent_of(&i(2, 4, 3)).to_poly(), linear(0, 2, 2));
    }

    #[test]
    fn contributions() {
        let one = RationalFunction::one();
        let (al, be) = (rv("alpha"), rv("beta"));
        assert!(vertex_contribution(2, 1)
            .unwrap()
            .rat_eq(&(one.clone() / (&al * &be))));
        assert!(vertex_contribution(2, 2)
            .unwrap()
            .rat_eq(&(one.clone() / (&lin(2, 0, 2) * &al))));
        assert!(vertex_contribution(3, 0)
            .unwrap()
            .rat_eq(&(one.clone() / (&be * &lin(0, 2, 2) * lin(0, 3, 6)))));
        assert!(vertex_contribution(2, 3).is_err());
    }

    #[test]
    fn small_cases() {
        let (al, be) = (rv("alpha"), rv("beta"));
        let w1 = omega_self_intersection(1).unwrap();
        assert_eq!(w1.power, 1);
        assert!(w1
            .rational_part
            .rat_eq(&(&al + &be).rat_div(&(&al * &be)).unwrap()));

        let w2 = omega_self_intersection(2).unwrap();
        let want = (lin(1, 1, 1) * lin(1, 1, 2)) / (&al * &lin(1, 0, 1) * &be * lin(0, 1, 1));
        assert!(w2.rational_part.rat_eq(&want));

        let w3 = omega_self_intersection(3).unwrap();
        let mut want = RationalFunction::one();
        for j in 1..=3 {
            want = want * lin(1, 1, 1 + j) / (lin(1, 0, j - 1) * lin(0, 1, j - 1));
        }
        assert!(w3.rational_part.rat_eq(&want));
        assert!(omega_closed(1)
            .unwrap()
            .expand()
            .rational_part
            .rat_eq(&w1.rational_part));
    }

    #[test]
    fn theorem_holds() {
        for n in 1..=8 {
            assert!(verify_theorem2(n).unwrap(), "n={n}");
        }
        assert!(omega_closed(4)
            .unwrap()
            .expand()
            .rational_part
            .rat_eq(&omega_self_intersection(4).unwrap().rational_part));
    }

    #[test]
    fn alpha_beta_symmetry() {
        let sub = HashMap::from([
            (
                Var::named("alpha"),
                LaurentPolynomial::var(Var::named("beta")),
            ),
            (
                Var::named("beta"),
                LaurentPolynomial::var(Var::named("alpha")),
            ),
        ]);
        for n in 1..=5 {
            let r = omega_self_intersection(n).unwrap().rational_part;
            assert!(r.substitute_monomials(&sub).unwrap().rat_eq(&r));
        }
    }

    #[test]
    fn scaling() {
        let c = Var::named("c");
        let scaled = |v: &str| {
            LaurentPolynomial::monomial(Monomial::from_pairs([(c, 1), (Var::named(v), 1)]))
        };
        let sub = HashMap::from([
            (Var::named("alpha"), scaled("alpha")),
            (Var::named("beta"), scaled("beta")),
            (Var::named("gamma"), scaled("gamma")),
        ]);
        for n in 1..=5 {
            let r = omega_self_intersection(n).unwrap().rational_part;
            let want = &r * &RationalFunction::var(c).pow(-(n as i32)).unwrap();
            assert!(r.substitute_monomials(&sub).unwrap().rat_eq(&want));
        }
    }

    #[test]
    fn beta_n() {
        let one = RationalFunction::one();
        let (a0, a1) = (rv("a_0"), rv("a_1"));
        let s1 = beta_n_simplex_self(1).unwrap();
        let want = (&one - &(&a0 * &a1)) / ((&one - &a0) * (&one - &a1));
        assert!(s1.rat_eq(&want));
        // the bare face sum is (prod a - 1) / prod (a_i - 1)
        let f1 = beta_n_face_sum(1).unwrap();
        assert!(f1.rat_eq(&((&(&a0 * &a1) - &one) / ((&a0 - &one) * (&a1 - &one)))));
        assert!(f1.rat_eq(&(&one + &(one.clone() / (&a0 - &one)) + one.clone() / (&a1 - &one))));
        // same number as the enumerated Beta case under a_0 = a, a_1 = b
        let sub = HashMap::from([
            (Var::named("a_0"), LaurentPolynomial::var(Var::named("a"))),
            (Var::named("a_1"), LaurentPolynomial::var(Var::named("b"))),
        ]);
        let j1 = crate::homology::jn_enumerated(1).unwrap();
        assert!(s1.substitute_monomials(&sub).unwrap().rat_eq(&j1));
        let (x0, x1) = (rv("alpha_0"), rv("alpha_1"));
        assert!(beta_n_form_self(1)
            .unwrap()
            .rat_eq(&(&x0 + &x1).rat_div(&(&x0 * &x1)).unwrap()));
        for n in 1..=5 {
            assert!(verify_beta_n(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn report_json() {
        let r = cohomology_report(2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["two_pi_i_power"], 2);
        assert_eq!(v["equal"], true);
    }
}
