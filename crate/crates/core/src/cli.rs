//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with an argument list and a buffer.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cohomology::{cohomology_report, omega_closed, verify_beta_n, verify_theorem2};
use crate::error::Error;
use crate::homology::{
    a_closed, a_recursive, b_closed, b_recursive, jn_closed, jn_decomposed_factored,
    jn_monomial_route, jn_pairwise_route, jn_report, x_closed, x_monomial_sum, y_closed,
    y_monomial_sum,
};
use crate::qseries::{
    verify_classical_chu_vandermonde, verify_g_binomial_alternating, verify_q_chu_vandermonde,
    verify_reversal_identity, QContext,
};
use crate::ratfun::{FactoredRational, FactoredSum};
use crate::selberg::{reciprocity_report, reciprocity_sweep, SelbergParams};
use crate::terada::{fvector, non_touching_juzus, touching_neighbors};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_POLE: i32 = 3;

/// Largest n the enumeration commands accept without `--force`.
pub const N_CAP: u32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "terada",
    version,
    about = "Intersection numbers on Terada-n polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Rank {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Allow n above the enumeration cap.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed form of J_n, optionally checked against enumeration.
    Jn {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Face counts by codimension.
    Faces {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        json: bool,
    },
    /// Chambers touching the identity one, and those that do not.
    Neighbors {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        json: bool,
    },
    /// Self-intersection of omega.
    Cohomology {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// q-series identities up to n-max.
    Qcheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Selberg reciprocity residual at a point or over seeded draws.
    Reciprocity {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        draws: Option<usize>,
        /// Residual threshold; defaults to 1e-8 (n <= 3) or 1e-6.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Every exact check up to n-max.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long)]
        force: bool,
    },
}

/// Output or exit-code outcome of a subcommand.
enum Failure {
    Usage(String),
    Check,
    Pole(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PoleMargin(_) | Error::GammaPole(_) | Error::NearPole => {
                Failure::Pole(e.to_string())
            }
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (program name first) and runs it, writing the report to
/// `out`. Returns the process exit code.
pub fn run<I, T, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return e.exit_code();
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAILURE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Pole(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_POLE
        }
        Err(Failure::Other(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn capped(rank: &Rank) -> Outcome {
    if rank.n > N_CAP && !rank.force {
        return Err(Failure::Usage(format!(
            "n = {} exceeds {N_CAP}; pass --force to enumerate anyway",
            rank.n
        )));
    }
    Ok(())
}

fn json_line<W: Write, S: Serialize>(out: &mut W, value: &S) -> Outcome {
    let text = serde_json::to_string(value).map_err(|e| Failure::Other(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Serialize)]
struct ClosedJson {
    n: u32,
    closed_constant: String,
    closed_factors: Vec<(String, i32)>,
}

fn closed_json(n: u32, f: &FactoredRational) -> ClosedJson {
    ClosedJson {
        n,
        closed_constant: f.constant().to_string(),
        closed_factors: f
            .factors()
            .iter()
            .map(|(p, m)| (p.to_string(), *m))
            .collect(),
    }
}

fn dispatch<W: Write>(cmd: Command, out: &mut W) -> Outcome {
    match cmd {
        Command::Jn { rank, check, json } => {
            if check {
                capped(&rank)?;
                let report = jn_report(rank.n)?;
                if json {
                    json_line(out, &report)?;
                } else {
                    writeln!(out, "J_{} = {}", rank.n, report.closed)?;
                    writeln!(
                        out,
                        "enumerated ({} terms) equal: {}",
                        report.term_count, report.equal
                    )?;
                }
                if !report.equal {
                    return Err(Failure::Check);
                }
            } else {
                let closed = jn_closed(rank.n);
                if json {
                    json_line(out, &closed_json(rank.n, &closed))?;
                } else {
                    writeln!(out, "J_{} = {}", rank.n, closed)?;
                }
            }
        }
        Command::Faces { rank, json } => {
            capped(&rank)?;
            let f = fvector(rank.n);
            if json {
                json_line(out, &f)?;
            } else {
                let counts: Vec<String> = f.counts.iter().map(u64::to_string).collect();
                writeln!(out, "Terada-{} f-vector: ({})", f.n, counts.join(", "))?;
            }
        }
        Command::Neighbors { rank, json } => {
            capped(&rank)?;
            let neighbors = touching_neighbors(rank.n);
            let far = non_touching_juzus(rank.n);
            if json {
                #[derive(Serialize)]
                struct NeighborJson {
                    sigma: String,
                    juzu: String,
                    face: String,
                }
                #[derive(Serialize)]
                struct Report {
                    n: u32,
                    touching: Vec<NeighborJson>,
                    non_touching: Vec<String>,
                }
                let report = Report {
                    n: rank.n,
                    touching: neighbors
                        .iter()
                        .map(|nb| NeighborJson {
                            sigma: word(&nb.sigma),
                            juzu: nb.juzu().to_string(),
                            face: nb.family.to_string(),
                        })
                        .collect(),
                    non_touching: far.iter().map(ToString::to_string).collect(),
                };
                json_line(out, &report)?;
            } else {
                writeln!(out, "{} touching neighbors", neighbors.len())?;
                for nb in &neighbors {
                    writeln!(
                        out,
                        "  {}  juzu {}  face {}",
                        word(&nb.sigma),
                        nb.juzu(),
                        nb.family
                    )?;
                }
                writeln!(out, "{} non-touching", far.len())?;
                for j in &far {
                    writeln!(out, "  {j}")?;
                }
            }
        }
        Command::Cohomology { n, check, json } => {
            let report = cohomology_report(n)?;
            if json {
                json_line(out, &report)?;
            } else {
                writeln!(
                    out,
                    "omega.omega = (2 pi i)^{} * {}",
                    n, report.closed.rational_part
                )?;
                if check {
                    writeln!(out, "vertex sum equal: {}", report.equal)?;
                }
            }
            if check && !report.equal {
                return Err(Failure::Check);
            }
        }
        Command::Qcheck { n_max } => {
            let mut suite = Suite::new(out);
            qseries_checks(&mut suite, n_max)?;
            suite.finish()?;
        }
        Command::Reciprocity {
            n,
            alpha,
            beta,
            gamma,
            seed,
            draws,
            tol,
            json,
        } => {
            let tol = tol.unwrap_or(if n <= 3 { 1e-8 } else { 1e-6 });
            let mut reports = Vec::new();
            match (alpha, beta, gamma) {
                (Some(a), Some(b), Some(g)) => {
                    let p = SelbergParams::new(n, a, b, g)?;
                    reports.push(reciprocity_report(&p, seed)?);
                }
                (None, None, None) => {}
                _ => {
                    return Err(Failure::Usage(
                        "--alpha, --beta and --gamma go together".into(),
                    ))
                }
            }
            if let Some(d) = draws {
                reports.extend(reciprocity_sweep(n, seed.unwrap_or(0), d)?);
            }
            if reports.is_empty() {
                return Err(Failure::Usage(
                    "give --alpha/--beta/--gamma or --draws".into(),
                ));
            }
            let mut ok = true;
            for r in &reports {
                ok &= r.residual < tol;
                if json {
                    json_line(out, r)?;
                } else {
                    let seed = r.seed.map_or("none".to_string(), |s| s.to_string());
                    writeln!(
                        out,
                        "n={} params=({}, {}, {}) residual={:.3e} seed={seed}",
                        r.n, r.params[0], r.params[1], r.params[2], r.residual
                    )?;
                }
            }
            if !ok {
                return Err(Failure::Check);
            }
        }
        Command::Verify { n_max, force } => {
            if n_max > N_CAP && !force {
                return Err(Failure::Usage(format!(
                    "n-max = {n_max} exceeds {N_CAP}; pass --force"
                )));
            }
            let mut suite = Suite::new(out);
            homology_checks(&mut suite, n_max)?;
            cohomology_checks(&mut suite, n_max)?;
            qseries_checks(&mut suite, n_max)?;
            suite.finish()?;
        }
    }
    Ok(())
}

fn word(sigma: &[u32]) -> String {
    sigma.iter().map(u32::to_string).collect()
}

/// PASS/FAIL lines and a tally.
struct Suite<'a, W: Write> {
    out: &'a mut W,
    passed: usize,
    failed: usize,
}

impl<'a, W: Write> Suite<'a, W> {
    fn new(out: &'a mut W) -> Self {
        Suite {
            out,
            passed: 0,
            failed: 0,
        }
    }

    fn record(&mut self, name: &str, ok: bool) -> Outcome {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        writeln!(self.out, "{} {name}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    }

    fn finish(self) -> Outcome {
        writeln!(self.out, "{} passed, {} failed", self.passed, self.failed)?;
        if self.failed > 0 {
            Err(Failure::Check)
        } else {
            Ok(())
        }
    }
}

fn qseries_checks<W: Write>(s: &mut Suite<W>, n_max: u32) -> Outcome {
    for n in 1..=n_max {
        s.record(
            &format!("alternating q-binomial sum n={n}"),
            verify_g_binomial_alternating(n, QContext::g())?,
        )?;
        s.record(
            &format!("q-Chu-Vandermonde n={n}"),
            verify_q_chu_vandermonde(n, QContext::q())?,
        )?;
        s.record(
            &format!("terminating reversal n={n}"),
            verify_reversal_identity(n, QContext::q())?,
        )?;
        s.record(
            &format!("Chu-Vandermonde n={n}"),
            verify_classical_chu_vandermonde(n)?,
        )?;
    }
    Ok(())
}

fn homology_checks<W: Write>(s: &mut Suite<W>, n_max: u32) -> Outcome {
    for n in 1..=n_max {
        let monomials = jn_monomial_route(n)?;
        s.record(
            &format!("pairwise route = monomial route n={n}"),
            monomials.equals(&jn_pairwise_route(n)?),
        )?;
        s.record(
            &format!("decomposition = monomial route n={n}"),
            jn_decomposed_factored(n)?.equals(&monomials),
        )?;
        s.record(&format!("J_n closed form n={n}"), jn_report(n)?.equal)?;
        s.record(
            &format!("X(n,n) closed n={n}"),
            FactoredSum::from_factored(&x_closed(n)).rat_eq(&x_monomial_sum(n, n)?),
        )?;
        s.record(
            &format!("Y(n,n) closed n={n}"),
            FactoredSum::from_factored(&y_closed(n)).rat_eq(&y_monomial_sum(n, n)?),
        )?;
        s.record(
            &format!("A_k recursion k={n}"),
            a_recursive(n)?.rat_eq(&a_closed(n).expand()),
        )?;
        s.record(
            &format!("B_k recursion k={n}"),
            b_recursive(n)?.rat_eq(&b_closed(n).expand()),
        )?;
    }
    Ok(())
}

fn cohomology_checks<W: Write>(s: &mut Suite<W>, n_max: u32) -> Outcome {
    for n in 1..=n_max {
        s.record(&format!("omega vertex sum n={n}"), verify_theorem2(n)?)?;
        s.record(
            &format!("n-beta face and vertex sums n={n}"),
            verify_beta_n(n)?,
        )?;
        // touch the closed form so a bad factor list fails loudly here
        omega_closed(n)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(
            std::iter::once("terada").chain(args.iter().copied()),
            &mut buf,
        );
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn faces_json() {
        let (code, out) = run_args(&["faces", "--n", "3", "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"n":3,"fvector":[1,9,21,14]}"#);
    }

    #[test]
    fn malformed_flags() {
        assert_eq!(run_args(&["faces"]).0, 2);
        assert_eq!(run_args(&["faces", "--n", "x"]).0, 2);
        assert_eq!(run_args(&["nope"]).0, 2);
        assert_eq!(run_args(&["faces", "--n", "0"]).0, 2);
    }

    #[test]
    fn cap_needs_force() {
        let (code, out) = run_args(&["faces", "--n", "7"]);
        assert_eq!(code, 2);
        assert!(out.contains("--force"));
        assert_eq!(run_args(&["faces", "--n", "7", "--force"]).0, 0);
    }

    #[test]
    fn jn_text() {
        let (code, out) = run_args(&["jn", "--n", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("J_2 = 2"));
        let (code, out) = run_args(&["jn", "--n", "3", "--check"]);
        assert_eq!(code, 0);
        assert!(out.contains("equal: true"));
    }

    #[test]
    fn pole_margin_exit() {
        let (code, _) = run_args(&[
            "reciprocity",
            "--n",
            "2",
            "--alpha",
            "-1",
            "--beta",
            "0.3",
            "--gamma",
            "0.2",
        ]);
        assert_eq!(code, 3);
        let (code, out) = run_args(&[
            "reciprocity",
            "--n",
            "2",
            "--alpha",
            "0.23",
            "--beta",
            "0.31",
            "--gamma",
            "0.17",
        ]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn neighbors_n4() {
        let (code, out) = run_args(&["neighbors", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("0241356") && out.contains("0314256"));
    }
}
