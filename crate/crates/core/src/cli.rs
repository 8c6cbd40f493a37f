//! Report drivers behind the `splitocto` binary.
//!
//! Every subcommand produces a JSON report. Reports depend only on the
//! flags, so identical invocations print byte-identical output. Exit codes:
//! 0 when every check passes, 1 when a check finds a counterexample, 2 for
//! usage, parse or capacity errors.
//!
//! Random samples come from ChaCha8, seeded with `--seed` and given a
//! distinct stream per (suite, sample), so sampling can run in parallel
//! without changing the output.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldRef, FieldSpec};
use crate::octonion::{associator, hua_check, moufang_check, MulTable, OctIndex, Octonion};
use crate::patho_map::PathoMap;
use crate::ratfunc2::{Poly2, RatFunc2};
use crate::solver::{self, AlgebraHandle, AlgebraKind, SolveMode, SolveOptions};

/// Name recorded in reports for the sampling generator.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Degree bound for random rational-function samples.
const RANDOM_DEGREE: usize = 8;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "splitocto", version, about = "Split octonion and functional-identity verification reports")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Print a one-line summary to stderr
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Alternative, flexible, Moufang, Hua, norm and square-law suites
    Axioms {
        /// Coefficient field, e.g. gf:5 or gf:2^2
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Solve f(x) + x^2 g(x^-1) = 0 for additive f, g
    Solve {
        #[arg(long)]
        field: String,
        /// octonion | field
        #[arg(long, default_value = "octonion")]
        kind: String,
        /// pair | f_eq_g
        #[arg(long, default_value = "pair")]
        mode: String,
        /// Scan every element instead of stopping once the rank settles
        #[arg(long)]
        full_scan: bool,
    },
    /// Evaluate and check the additive map on Z2(t) with f(1) = A, f(t) = B
    Patho {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also check f(x) + x^2 f(x^-1) = 0 at the given x
        #[arg(long)]
        check_identity: bool,
        /// Compare f(t) with t f(1)
        #[arg(long)]
        check_linear: bool,
    },
    /// Dump the basis multiplication table and check it against its rules
    Table,
}

/// A finished report and the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: serde_json::Value,
    pub summary: String,
}

impl Outcome {
    fn new<T: Serialize>(passed: bool, report: &T, summary: String) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            report: serde_json::to_value(report).expect("reports serialize"),
            summary,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("values serialize") + "\n"
    }
}

/// Deterministic generator for sample `index` of suite `suite`.
pub fn sample_rng(seed: u64, suite: u32, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 40) ^ index);
    rng
}

pub fn random_octonion<R: Rng + ?Sized>(field: &FieldRef, rng: &mut R) -> Octonion<FieldElem> {
    let order = field.order();
    Octonion::new(std::array::from_fn(|_| {
        field
            .element_at(rng.random_range(0..order))
            .expect("index below the field order")
    }))
    .expect("coefficients share a field")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    /// `exhaustive` or `basis+random`.
    pub coverage: &'static str,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inapplicable: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inapplicable_rate: Option<f64>,
    /// Octonion literals of the first failing input.
    pub counterexample: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomsReport {
    pub command: &'static str,
    pub field: String,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub exhaustive: bool,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

type Oct = Octonion<FieldElem>;

/// Result of one check: `Some(true/false)`, or `None` when inapplicable.
type Check = Option<bool>;

struct Suite {
    name: &'static str,
    arity: usize,
    check: fn(&[Oct]) -> Check,
}

fn zero_assoc(x: &Oct, y: &Oct, z: &Oct) -> bool {
    associator(x, y, z).expect("same field").is_zero()
}

fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "alternativity",
            arity: 3,
            check: |v| {
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                // (x,x,y) = (y,x,x) = 0, and the associator is alternating
                let a = associator(x, y, z).expect("same field");
                let swap_left = associator(y, x, z).expect("same field");
                let swap_right = associator(x, z, y).expect("same field");
                Some(
                    zero_assoc(x, x, y)
                        && zero_assoc(y, x, x)
                        && (&a + &swap_left).is_zero()
                        && (&a + &swap_right).is_zero(),
                )
            },
        },
        Suite {
            name: "flexible",
            arity: 2,
            check: |v| Some(zero_assoc(&v[0], &v[1], &v[0])),
        },
        Suite {
            name: "moufang",
            arity: 3,
            check: |v| {
                let (a, b, c) = moufang_check(&v[0], &v[1], &v[2]).expect("same field");
                Some(a && b && c)
            },
        },
        Suite {
            name: "hua",
            arity: 2,
            check: |v| match hua_check(&v[0], &v[1]) {
                Ok(out) => Some(out.equal && out.flexible_agrees),
                Err(Error::Inapplicable(_)) => None,
                Err(e) => panic!("{e}"),
            },
        },
        Suite {
            name: "norm_multiplicativity",
            arity: 2,
            check: |v| Some((&v[0] * &v[1]).norm() == &v[0].norm() * &v[1].norm()),
        },
        Suite {
            name: "square_law",
            arity: 1,
            check: |v| Some(v[0].square_law_holds()),
        },
        Suite {
            name: "inverse",
            arity: 1,
            check: |v| {
                let x = &v[0];
                let inv = x.inverse().ok()?;
                let one = Octonion::one(&x.coeffs()[0]);
                Some(&(x * &inv) == &one && &(&inv * x) == &one)
            },
        },
    ]
}

/// Scaled basis vectors `c e_i` for up to four nonzero scalars `c`.
fn scaled_basis(field: &FieldRef) -> Vec<Oct> {
    let scalars: Vec<FieldElem> = (1..field.order().min(5))
        .map(|i| field.element_at(i).expect("in range"))
        .collect();
    OctIndex::ALL
        .iter()
        .flat_map(|&i| scalars.iter().map(move |c| Octonion::basis(i, c)))
        .collect()
}

fn tuples(pool: &[Oct], arity: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..pool.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn run_suite(field: &FieldRef, suite: &Suite, suite_id: u32, samples: usize, seed: u64, exhaustive: bool) -> SuiteReport {
    let mut inputs: Vec<Vec<Oct>> = Vec::new();
    let coverage;
    if exhaustive && suite.arity <= 2 {
        coverage = "exhaustive";
        let order = field.order().pow(8);
        let all: Vec<Oct> = (0..order)
            .map(|i| {
                let mut rest = i;
                Octonion::new(std::array::from_fn(|_| {
                    let c = field.element_at(rest % field.order()).expect("in range");
                    rest /= field.order();
                    c
                }))
                .expect("same field")
            })
            .collect();
        for t in tuples(&all, suite.arity) {
            inputs.push(t.into_iter().map(|i| all[i].clone()).collect());
        }
    } else {
        coverage = "basis+random";
        let basis = scaled_basis(field);
        for t in tuples(&basis, suite.arity) {
            inputs.push(t.into_iter().map(|i| basis[i].clone()).collect());
        }
        for i in 0..samples as u64 {
            let mut rng = sample_rng(seed, suite_id, i);
            inputs.push((0..suite.arity).map(|_| random_octonion(field, &mut rng)).collect());
        }
    }
    let results: Vec<Check> = inputs.par_iter().map(|v| (suite.check)(v)).collect();
    let checked = results.iter().filter(|r| r.is_some()).count() as u64;
    let skipped = results.len() as u64 - checked;
    let failure = results.iter().position(|r| *r == Some(false));
    let counterexample = failure.map(|i| inputs[i].iter().map(|o| o.to_string()).collect());
    let tracks_inapplicable = suite.name == "hua" || suite.name == "inverse";
    SuiteReport {
        name: suite.name,
        passed: failure.is_none() && checked > 0,
        coverage,
        checked,
        inapplicable: tracks_inapplicable.then_some(skipped),
        inapplicable_rate: tracks_inapplicable.then(|| skipped as f64 / results.len().max(1) as f64),
        counterexample,
    }
}

/// Runs every octonion identity suite over `field`. Over GF(2) the
/// one- and two-variable suites run on every element (pair); the
/// three-variable suites use scaled basis triples plus random triples.
pub fn cmd_axioms(field: &FieldRef, samples: usize, seed: u64) -> AxiomsReport {
    let exhaustive = field.order() == 2;
    let suites: Vec<SuiteReport> = suites()
        .iter()
        .enumerate()
        .map(|(i, s)| run_suite(field, s, i as u32, samples, seed, exhaustive))
        .collect();
    AxiomsReport {
        command: "axioms",
        field: field.literal(),
        samples,
        seed,
        rng: RNG_NAME,
        exhaustive,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

pub fn cmd_solve(field: &str, kind: &str, mode: &str, full_scan: bool) -> Result<solver::SolveReport> {
    let field = FieldSpec::parse(field)?;
    let kind: AlgebraKind = kind.parse()?;
    let mode: SolveMode = mode.parse()?;
    let h = AlgebraHandle::new(kind, field)?;
    solver::solve(&h, mode, SolveOptions { early_stop: !full_scan })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCheck {
    pub f_of_1: String,
    pub f_of_t: String,
    pub t_times_f_of_1: String,
    pub is_standard: bool,
    /// `f(t) != t f(1)`: the map is not `x -> x q`.
    pub nonlinearity_witness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathoReport {
    pub command: &'static str,
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    pub x: Option<String>,
    pub f_of_x: Option<String>,
    pub identity_at_x: Option<bool>,
    pub identity_holds: bool,
    pub identity_failures: u64,
    pub additivity_failures: u64,
    pub welldef_samples: u64,
    pub welldef_failures: u64,
    pub square_law_failures: u64,
    pub anchor_range: [i64; 2],
    pub anchor_failures: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<LinearCheck>,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub passed: bool,
}

fn count_failures(samples: u64, f: impl Fn(u64) -> Result<bool> + Sync + Send) -> Result<u64> {
    let results: Vec<Result<bool>> = (0..samples).into_par_iter().map(f).collect();
    let mut failures = 0;
    for r in results {
        if !r? {
            failures += 1;
        }
    }
    Ok(failures)
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly2 {
    loop {
        let d = rng.random_range(0..=max_degree);
        let p = Poly2::random(rng, d);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Evaluates the map at `x` and runs the additivity, identity,
/// well-definedness, square-law and anchor suites. Well-definedness uses
/// `samples / 10` pairs.
pub fn cmd_patho(
    a: &str,
    b: &str,
    x: Option<&str>,
    samples: usize,
    seed: u64,
    check_identity: bool,
    check_linear: bool,
) -> Result<PathoReport> {
    let map = PathoMap::new(RatFunc2::parse(a)?, RatFunc2::parse(b)?);
    let x = x.map(RatFunc2::parse).transpose()?;
    let identity_at_x = if check_identity {
        match &x {
            None => return Err(Error::Domain("--check-identity needs --x".into())),
            Some(x) => Some(map.check_identity(x)?),
        }
    } else {
        None
    };
    let f_of_x = x.as_ref().map(|x| map.eval(x)).transpose()?;
    let n = samples as u64;
    let additivity_failures = count_failures(n, |i| {
        let mut rng = sample_rng(seed, 0, i);
        let u = RatFunc2::random(&mut rng, RANDOM_DEGREE);
        let v = RatFunc2::random(&mut rng, RANDOM_DEGREE);
        map.check_additivity(&u, &v)
    })?;
    let identity_failures = count_failures(n, |i| {
        let mut rng = sample_rng(seed, 1, i);
        map.check_identity(&RatFunc2::random_nonzero(&mut rng, RANDOM_DEGREE))
    })?;
    let welldef_samples = (n / 10).max(1);
    let welldef_failures = count_failures(welldef_samples, |i| {
        let mut rng = sample_rng(seed, 2, i);
        let u = RatFunc2::random(&mut rng, RANDOM_DEGREE);
        let w = random_nonzero_poly(&mut rng, 4);
        map.welldef_check(&u, &w)
    })?;
    let square_law_failures = count_failures(n, |i| {
        let mut rng = sample_rng(seed, 3, i);
        let u = RatFunc2::random(&mut rng, 4);
        let v = RatFunc2::random(&mut rng, RANDOM_DEGREE);
        map.check_square_law(&u, &v)
    })?;
    let anchor_range = [-10, 10];
    let anchor_failures = map.anchor_failures(anchor_range[0]..=anchor_range[1])?;
    let linear = if check_linear {
        let f1 = map.eval(&RatFunc2::one())?;
        let ft = map.eval(&RatFunc2::t())?;
        let tf1 = RatFunc2::t().try_mul(&f1)?;
        Some(LinearCheck {
            f_of_1: f1.to_string(),
            f_of_t: ft.to_string(),
            t_times_f_of_1: tf1.to_string(),
            is_standard: map.is_standard()?,
            nonlinearity_witness: ft != tf1,
        })
    } else {
        None
    };
    let identity_holds = identity_failures == 0 && identity_at_x != Some(false);
    let passed = identity_holds
        && additivity_failures == 0
        && welldef_failures == 0
        && square_law_failures == 0
        && anchor_failures.is_empty();
    Ok(PathoReport {
        command: "patho",
        a: map.a().to_string(),
        b: map.b().to_string(),
        x: x.as_ref().map(|x| x.to_string()),
        f_of_x: f_of_x.map(|f| f.to_string()),
        identity_at_x,
        identity_holds,
        identity_failures,
        additivity_failures,
        welldef_samples,
        welldef_failures,
        square_law_failures,
        anchor_range,
        anchor_failures,
        linear,
        samples,
        seed,
        rng: RNG_NAME,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub command: &'static str,
    /// Storage order of the basis; rows and columns follow it.
    pub basis: Vec<String>,
    /// `entries[i][j]` is `basis[i] * basis[j]`.
    pub entries: Vec<Vec<String>>,
    pub nonzero_entries: usize,
    pub rules_discrepancies: Vec<crate::octonion::TableDiscrepancy>,
    pub rules_conflicts: Vec<crate::octonion::TableDiscrepancy>,
    pub matches_rules: bool,
}

pub fn cmd_table() -> TableReport {
    let table = MulTable::figure();
    let (generated, conflicts) = MulTable::from_rules();
    let diff = table.diff(&generated);
    TableReport {
        command: "table",
        basis: OctIndex::ALL.iter().map(|i| i.label()).collect(),
        entries: table.labels(),
        nonzero_entries: table.nonzero_count(),
        matches_rules: diff.is_empty() && conflicts.is_empty(),
        rules_discrepancies: diff,
        rules_conflicts: conflicts,
    }
}

/// Runs a parsed configuration. `Err` means exit code 2.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    Ok(match &cfg.command {
        Command::Axioms { field, samples, seed } => {
            let field = FieldSpec::parse(field)?;
            let r = cmd_axioms(&field, *samples, *seed);
            let failed: Vec<&str> = r.suites.iter().filter(|s| !s.passed).map(|s| s.name).collect();
            let summary = format!("axioms {}: failed suites {:?}", r.field, failed);
            Outcome::new(r.passed, &r, summary)
        }
        Command::Solve { field, kind, mode, full_scan } => {
            let r = cmd_solve(field, kind, mode, *full_scan)?;
            let summary = format!(
                "solve {} {:?} {:?}: kernel_dim {} (expected {}), verdict {}",
                r.algebra.field, r.algebra.kind, r.mode, r.kernel_dim, r.expected_dim, r.verdict
            );
            Outcome::new(r.verdict, &r, summary)
        }
        Command::Patho { a, b, x, samples, seed, check_identity, check_linear } => {
            let r = cmd_patho(a, b, x.as_deref(), *samples, *seed, *check_identity, *check_linear)?;
            let summary = format!("patho A={} B={}: passed {}", r.a, r.b, r.passed);
            Outcome::new(r.passed, &r, summary)
        }
        Command::Table => {
            let r = cmd_table();
            let summary = format!("table: {} nonzero entries, matches rules {}", r.nonzero_entries, r.matches_rules);
            Outcome::new(r.matches_rules, &r, summary)
        }
    })
}

/// Parses `args` (including the program name), runs, and writes output.
/// Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if cfg.verbose > 0 {
        eprintln!("{}", outcome.summary);
    }
    let text = outcome.json();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    outcome.code
}
