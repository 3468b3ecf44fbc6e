//! Numeric check of `Sel_n(p) Sel_n(-p) = J_n * (omega . omega)`.
//!
//! The Selberg integral is taken in its Gamma-product form; `J_n` is the
//! closed product at `a = e^(2 pi i alpha)` etc., and the form side is
//! `(2 pi i)^n` times the real product.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::omega_closed;
use crate::error::{Error, Result};
use crate::homology::jn_closed;
use crate::ratfun::Var;

pub const DEFAULT_MARGIN: f64 = 1e-3;
/// Margin used for random reciprocity draws.
pub const DRAW_MARGIN: f64 = 1e-2;
const GAMMA_POLE_TOL: f64 = 1e-9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation, reflected below `Re z = 0.5`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - nearest).norm() < GAMMA_POLE_TOL {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(PI / (s * gamma_complex(1.0 - z)?));
    }
    let z = z - 1.0;
    let x = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS[0], 0.0), |acc, (i, &c)| {
            acc + c / (z + (i + 1) as f64)
        });
    let t = z + LANCZOS_G + 0.5;
    Ok(((z + 0.5) * t.ln() - t + x.ln()).exp() * (2.0 * PI).sqrt())
}

fn gamma_real(x: f64) -> Result<Complex64> {
    gamma_complex(Complex64::new(x, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelbergParams {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn distance_to(x: f64, candidates: impl Fn(f64) -> bool) -> f64 {
    let r = x.round();
    if candidates(r) {
        (x - r).abs()
    } else {
        // nearest admissible integer is 0 when x rounds to a positive one
        x.abs()
    }
}

impl SelbergParams {
    /// Checks the Gamma arguments against nonpositive integers with the
    /// default margin.
    pub fn new(n: u32, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::with_margin(n, alpha, beta, gamma, DEFAULT_MARGIN)
    }

    pub fn with_margin(n: u32, alpha: f64, beta: f64, gamma: f64, margin: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank n must be at least 1".into()));
        }
        if ![alpha, beta, gamma].iter().all(|x| x.is_finite()) {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        let p = SelbergParams {
            n,
            alpha,
            beta,
            gamma,
        };
        for (what, x) in p.gamma_arguments() {
            if distance_to(x, |r| r <= 0.0) < margin {
                return Err(Error::PoleMargin(format!(
                    "{what} = {x} within {margin} of a nonpositive integer"
                )));
            }
        }
        Ok(p)
    }

    pub fn negated(&self) -> Result<Self> {
        Self::new(self.n, -self.alpha, -self.beta, -self.gamma)
    }

    fn gamma_arguments(&self) -> Vec<(String, f64)> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let mut out = Vec::new();
        for j in 1..=self.n as i64 {
            let jf = j as f64;
            out.push((format!("alpha+{}gamma", j - 1), a + (jf - 1.0) * g));
            out.push((format!("beta+{}gamma", j - 1), b + (jf - 1.0) * g));
            out.push((format!("{j}gamma+1"), jf * g + 1.0));
            out.push((
                format!("alpha+beta+{}gamma", self.n as i64 + j - 2),
                a + b + (self.n as i64 + j - 2) as f64 * g,
            ));
        }
        out
    }

    /// Both `p` and `-p` stay `margin` away from every integer in the
    /// linear forms where either side can blow up.
    pub fn check_reciprocal_margin(&self, margin: f64) -> Result<()> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let n = self.n as i64;
        for j in 1..=n {
            let jf = j as f64;
            let forms = [
                a + (jf - 1.0) * g,
                b + (jf - 1.0) * g,
                jf * g,
                a + b + (n + j - 2) as f64 * g,
            ];
            for x in forms {
                if (x - x.round()).abs() < margin {
                    return Err(Error::PoleMargin(format!(
                        "linear form {x} within {margin} of an integer"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `prod_j G(alpha+(j-1)gamma) G(beta+(j-1)gamma) G(j gamma+1)
///   / (G(alpha+beta+(n+j-2)gamma) G(gamma+1))`.
pub fn selberg_closed(p: &SelbergParams) -> Result<Complex64> {
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let n = p.n as f64;
    let mut value = Complex64::new(1.0, 0.0);
    for j in 1..=p.n {
        let jf = j as f64;
        value *= gamma_real(a + (jf - 1.0) * g)?
            * gamma_real(b + (jf - 1.0) * g)?
            * gamma_real(jf * g + 1.0)?
            / (gamma_real(a + b + (n + jf - 2.0) * g)? * gamma_real(g + 1.0)?);
    }
    Ok(value)
}

fn exp_2pi_i(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

fn multiplicative_point(p: &SelbergParams) -> HashMap<Var, Complex64> {
    HashMap::from([
        (Var::named("a"), exp_2pi_i(p.alpha)),
        (Var::named("b"), exp_2pi_i(p.beta)),
        (Var::named("g"), exp_2pi_i(p.gamma)),
    ])
}

/// `J_n` evaluated factor by factor at `a = e^(2 pi i alpha)`, etc.
pub fn theorem1_numeric(p: &SelbergParams) -> Result<Complex64> {
    jn_closed(p.n).eval_complex(&multiplicative_point(p))
}

/// `J_n` through the expanded rational function (cross-check path).
pub fn theorem1_numeric_expanded(p: &SelbergParams) -> Result<Complex64> {
    jn_closed(p.n)
        .expand()
        .eval_complex(&multiplicative_point(p))
}

/// `(2 pi i)^n prod_j (alpha+beta+(n+j-2)gamma) / ((alpha+(j-1)gamma)(beta+(j-1)gamma))`.
pub fn theorem2_numeric(p: &SelbergParams) -> Result<Complex64> {
    let closed = omega_closed(p.n)?;
    let point = HashMap::from([
        (Var::named("alpha"), Complex64::new(p.alpha, 0.0)),
        (Var::named("beta"), Complex64::new(p.beta, 0.0)),
        (Var::named("gamma"), Complex64::new(p.gamma, 0.0)),
    ]);
    let real = closed.rational_part.eval_complex(&point)?;
    Ok(real * Complex64::new(0.0, 2.0 * PI).powu(closed.power))
}

/// `|Sel(p) Sel(-p) / (J_n * omega.omega) - 1|`.
pub fn reciprocity_residual(p: &SelbergParams) -> Result<f64> {
    let lhs = selberg_closed(p)? * selberg_closed(&p.negated()?)?;
    let rhs = theorem1_numeric(p)? * theorem2_numeric(p)?;
    if rhs.norm() < f64::MIN_POSITIVE {
        return Err(Error::Domain("intersection product underflows".into()));
    }
    Ok((lhs / rhs - 1.0).norm())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReciprocityReport {
    pub n: u32,
    pub params: [f64; 3],
    pub residual: f64,
    pub seed: Option<u64>,
}

pub fn reciprocity_report(p: &SelbergParams, seed: Option<u64>) -> Result<ReciprocityReport> {
    Ok(ReciprocityReport {
        n: p.n,
        params: [p.alpha, p.beta, p.gamma],
        residual: reciprocity_residual(p)?,
        seed,
    })
}

/// `count` parameter triples drawn uniformly from `(0.05, 0.45)^3`,
/// rejecting any within `margin` of an integer pole.
pub fn draw_params(n: u32, seed: u64, count: usize, margin: f64) -> Result<Vec<SelbergParams>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count {
        tries += 1;
        if tries > 1000 * count.max(1) {
            return Err(Error::PoleMargin(format!(
                "could not draw {count} parameter sets with margin {margin}"
            )));
        }
        let (a, b, g) = (
            rng.gen_range(0.05..0.45),
            rng.gen_range(0.05..0.45),
            rng.gen_range(0.05..0.45),
        );
        let Ok(p) = SelbergParams::with_margin(n, a, b, g, margin) else {
            continue;
        };
        if p.check_reciprocal_margin(margin).is_ok() && p.negated().is_ok() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Seeded sweep: one report per draw.
pub fn reciprocity_sweep(n: u32, seed: u64, draws: usize) -> Result<Vec<ReciprocityReport>> {
    draw_params(n, seed, draws, DRAW_MARGIN)?
        .iter()
        .map(|p| reciprocity_report(p, Some(seed)))
        .collect()
}
