//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;

use terada::cohomology::{omega_closed, verify_beta_n, verify_theorem2, vertex_contribution};
use terada::homology::{
    a_closed, a_recursive, j3_general, jn_closed, jn_decomposed_factored, jn_enumerated,
    jn_monomial_route, jn_pairwise_route, x_monomial_sum, y_monomial_sum,
};
use terada::qseries::{
    q_factorial, verify_g_binomial_alternating, verify_q_chu_vandermonde, verify_reversal_identity,
    QContext,
};
use terada::ratfun::{LaurentPolynomial, Monomial, RationalFunction, Var};
use terada::selberg::reciprocity_sweep;
use terada::terada::{fvector, non_touching_juzus, touching_neighbors};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mono(pairs: &[(&str, i32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().map(|&(v, e)| (Var::named(v), e)))
}

/// `m - 1` as a polynomial.
fn m1(pairs: &[(&str, i32)]) -> LaurentPolynomial {
    LaurentPolynomial::minus_one(mono(pairs))
}

fn poly(terms: &[(i64, &[(&str, i32)])]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(terms.iter().map(|&(c, m)| (mono(m), c.into())))
}

fn ratio(num: &[LaurentPolynomial], den: &[LaurentPolynomial]) -> RationalFunction {
    RationalFunction::new(
        LaurentPolynomial::product(num),
        LaurentPolynomial::product(den),
    )
    .unwrap()
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

fn closed_over_factorial(n: u32) -> RationalFunction {
    jn_closed(n)
        .scale(&BigRational::new(1.into(), factorial(n).into()))
        .expand()
}

fn theorem1() -> Check {
    for n in 1..=5 {
        let enumerated = jn_enumerated(n).map_err(err)?;
        ensure(enumerated.rat_eq(&closed_over_factorial(n)), || {
            format!("n={n}: enumeration differs from closed product")
        })?;
    }
    let j2 = ratio(
        &[
            m1(&[("a", 1), ("g", 1), ("b", 1)]),
            m1(&[("a", 1), ("g", 2), ("b", 1)]),
        ],
        &[
            m1(&[("a", 1)]),
            m1(&[("a", 1), ("g", 1)]),
            m1(&[("b", 1)]),
            m1(&[("g", 1), ("b", 1)]),
            poly(&[(1, &[("g", 1)]), (1, &[])]),
        ],
    );
    ensure(jn_enumerated(2).map_err(err)?.rat_eq(&j2), || {
        "n=2 printed form".into()
    })?;
    let j3 = ratio(
        &[
            LaurentPolynomial::constant(-1),
            m1(&[("g", 2), ("b", 1), ("a", 1)]),
            m1(&[("g", 3), ("b", 1), ("a", 1)]),
            m1(&[("g", 4), ("b", 1), ("a", 1)]),
        ],
        &[
            m1(&[("a", 1)]),
            m1(&[("a", 1), ("g", 1)]),
            m1(&[("a", 1), ("g", 2)]),
            m1(&[("b", 1)]),
            m1(&[("g", 1), ("b", 1)]),
            m1(&[("g", 2), ("b", 1)]),
            poly(&[(1, &[("g", 1)]), (1, &[])]),
            poly(&[(1, &[("g", 2)]), (1, &[("g", 1)]), (1, &[])]),
        ],
    );
    ensure(jn_enumerated(3).map_err(err)?.rat_eq(&j3), || {
        "n=3 printed form".into()
    })
}

fn routes() -> Check {
    for n in 1..=5 {
        let monomial = jn_monomial_route(n).map_err(err)?;
        ensure(jn_pairwise_route(n).map_err(err)?.equals(&monomial), || {
            format!("n={n}: pairwise route differs")
        })?;
        ensure(
            jn_decomposed_factored(n).map_err(err)?.equals(&monomial),
            || format!("n={n}: decomposition differs"),
        )?;
    }
    Ok(())
}

fn binom2(n: u32) -> i32 {
    (n * n.saturating_sub(1) / 2) as i32
}

fn monomial_sums() -> Check {
    let ctx = QContext::g();
    for n in 1..=8u32 {
        let fact = q_factorial(n, ctx);
        let gpow = LaurentPolynomial::monomial(ctx.power(binom2(n)));
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let x_nn = RationalFunction::new(gpow.clone(), fact.clone()).unwrap();
        let y_nn = RationalFunction::new(LaurentPolynomial::constant(-sign), fact.clone()).unwrap();
        let below_top =
            RationalFunction::new(&gpow + &LaurentPolynomial::constant(sign), fact).unwrap();
        ensure(x_monomial_sum(n, n).map_err(err)?.rat_eq(&x_nn), || {
            format!("X({n},{n})")
        })?;
        ensure(y_monomial_sum(n, n).map_err(err)?.rat_eq(&y_nn), || {
            format!("Y({n},{n})")
        })?;
        // X(0,1) is the empty sum 1, so start at n = 2
        if n >= 2 {
            ensure(
                x_monomial_sum(n - 1, n).map_err(err)?.rat_eq(&below_top),
                || format!("X({},{n})", n - 1),
            )?;
        }
    }
    for k in 1..=6 {
        ensure(
            a_recursive(k).map_err(err)?.rat_eq(&a_closed(k).expand()),
            || format!("A_{k}"),
        )?;
    }
    Ok(())
}

fn linear(a: i64, b: i64, g: i64) -> LaurentPolynomial {
    poly(&[
        (a, &[("alpha", 1)]),
        (b, &[("beta", 1)]),
        (g, &[("gamma", 1)]),
    ])
}

fn recip_product(factors: &[LaurentPolynomial]) -> RationalFunction {
    ratio(&[], factors)
}

fn vertex_sum(n: u32) -> Result<RationalFunction, String> {
    (0..=n).try_fold(RationalFunction::zero(), |acc, k| {
        Ok(&acc + &vertex_contribution(n, k).map_err(err)?)
    })
}

fn theorem2() -> Check {
    for n in 1..=8 {
        ensure(verify_theorem2(n).map_err(err)?, || format!("n={n}"))?;
        ensure(omega_closed(n).map_err(err)?.power == n, || {
            format!("n={n}: 2 pi i power")
        })?;
    }
    let (al, be) = (linear(1, 0, 0), linear(0, 1, 0));
    let two = [
        recip_product(&[linear(2, 0, 2), al.clone()]),
        recip_product(&[al.clone(), be.clone()]),
        recip_product(&[be.clone(), linear(0, 2, 2)]),
    ];
    let two_closed = ratio(
        &[linear(1, 1, 1), linear(1, 1, 2)],
        &[
            LaurentPolynomial::constant(2),
            al.clone(),
            linear(1, 0, 1),
            be.clone(),
            linear(0, 1, 1),
        ],
    );
    let three = [
        recip_product(&[linear(3, 0, 6), linear(2, 0, 2), al.clone()]),
        recip_product(&[linear(2, 0, 2), al.clone(), be.clone()]),
        recip_product(&[al.clone(), be.clone(), linear(0, 2, 2)]),
        recip_product(&[be.clone(), linear(0, 2, 2), linear(0, 3, 6)]),
    ];
    let three_closed = ratio(
        &[linear(1, 1, 2), linear(1, 1, 3), linear(1, 1, 4)],
        &[
            LaurentPolynomial::constant(6),
            al.clone(),
            linear(1, 0, 1),
            linear(1, 0, 2),
            be.clone(),
            linear(0, 1, 1),
            linear(0, 1, 2),
        ],
    );
    for (n, terms, closed) in [(2, &two[..], two_closed), (3, &three[..], three_closed)] {
        let printed = terms
            .iter()
            .fold(RationalFunction::zero(), |acc, t| &acc + t);
        ensure(printed.rat_eq(&closed), || {
            format!("n={n}: printed sum vs printed product")
        })?;
        ensure(vertex_sum(n)?.rat_eq(&printed), || {
            format!("n={n}: vertex sum vs display")
        })?;
    }
    Ok(())
}

fn faces() -> Check {
    for (n, want) in [(1, vec![1, 2]), (2, vec![1, 5, 5]), (3, vec![1, 9, 21, 14])] {
        let got = fvector(n).counts;
        ensure(got == want, || format!("n={n}: f-vector {got:?}"))?;
    }
    let touching = touching_neighbors(3).len();
    ensure(touching == 5, || {
        format!("Terada-3 has {touching} touching neighbors")
    })?;
    let far: Vec<String> = non_touching_juzus(4)
        .iter()
        .map(ToString::to_string)
        .collect();
    ensure(far == ["0241356", "0314256"], || {
        format!("n=4 non-touching {far:?}")
    })
}

fn q_identities() -> Check {
    for n in 1..=10 {
        ensure(
            verify_g_binomial_alternating(n, QContext::g()).map_err(err)?,
            || format!("alternating sum n={n}"),
        )?;
    }
    for n in 1..=6 {
        ensure(
            verify_q_chu_vandermonde(n, QContext::q()).map_err(err)?,
            || format!("q-Chu-Vandermonde n={n}"),
        )?;
        ensure(
            verify_reversal_identity(n, QContext::q()).map_err(err)?,
            || format!("reversal n={n}"),
        )?;
    }
    Ok(())
}

fn three_parameter() -> Check {
    let g = LaurentPolynomial::var(Var::named("g"));
    let sub = HashMap::from([(Var::named("f"), g.clone()), (Var::named("h"), g)]);
    let special = j3_general()
        .map_err(err)?
        .substitute_monomials(&sub)
        .map_err(err)?;
    ensure(special.rat_eq(&closed_over_factorial(3)), || {
        "f=h=g specialization".into()
    })
}

const SEED: u64 = 20_240_917;
const DRAWS: usize = 20;

fn reciprocity() -> Check {
    for (n, tol) in [(1, 1e-8), (2, 1e-8), (3, 1e-8), (4, 1e-6), (1, 1e-10)] {
        let reports = reciprocity_sweep(n, SEED, DRAWS).map_err(err)?;
        ensure(reports.len() == DRAWS, || {
            format!("n={n}: only {} draws", reports.len())
        })?;
        let worst = reports.iter().map(|r| r.residual).fold(0.0, f64::max);
        ensure(worst < tol, || {
            format!("n={n}: worst residual {worst:e} >= {tol:e}")
        })?;
    }
    Ok(())
}

fn n_beta() -> Check {
    for n in 1..=5 {
        ensure(verify_beta_n(n).map_err(err)?, || format!("n={n}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "J_n enumeration equals closed product n=1..5, printed n=2,3 forms",
            theorem1,
        ),
        (
            "pairwise, monomial and decomposition routes agree n=1..5",
            routes,
        ),
        (
            "X(n,n), Y(n,n) n=1..8, X(n-1,n) n=2..8, A_k k=1..6",
            monomial_sums,
        ),
        (
            "omega vertex sum equals closed product n=1..8, printed n=2,3 sums",
            theorem2,
        ),
        (
            "f-vectors, Terada-3 neighbors, n=4 non-touching juzus",
            faces,
        ),
        (
            "alternating g-binomial n=1..10, q-Chu-Vandermonde and reversal n=1..6",
            q_identities,
        ),
        ("three-parameter J_3 specializes at f=h=g", three_parameter),
        (
            "reciprocity residuals over 20 seeded draws, Beta case",
            reciprocity,
        ),
        ("n-beta simplex and vertex sums n=1..5", n_beta),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS [{}] {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
