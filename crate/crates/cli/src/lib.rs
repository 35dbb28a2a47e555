//! Command-line front end. [`dispatch`] maps arguments to an [`Outcome`]
//! (exit code plus captured output) so that the binary and the tests share
//! one code path.
//!
//! Exit codes: 0 success, 1 certified failure or nothing found within the
//! budget, 2 usage or domain error.

pub mod selftest;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use heckoid::{
    admits_epimorphism, all_pass, certify_epimorphism, divisibility_check, divisibility_probe, epsilon_seq, heckoid_presentation,
    is_in_orbit, link_group_presentation, orbifold_desc, orbit_bfs, orbit_enumerate_pattern, quotient_orbifold_desc, riley_family,
    slope_word, trace_invariance_check, BigLambda, BigSlope, CertificationReport, CertifyOptions, Epimorphism, Error, HeckoidIndex,
    Membership, OrbifoldDescriptor, OrbitWitness, SearchBudget, DEFAULT_TOL,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "heckoid", version, about = "Farey orbits, slope words and parabolic representations for Heckoid groups")]
pub struct Cli {
    /// Print exactly one JSON document on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the orbit of ∞ under Λ.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Use the continued-fraction pattern instead of the BFS.
        #[arg(long)]
        pattern: bool,
    },
    /// Search for s in the orbit of ∞.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        s: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Test the hypothesis "s or s+1 lies in the orbit".
    Epi {
        #[arg(long, allow_hyphen_values = true)]
        s: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The slope β*/α* of the family (α^d m, α^(d-1) m (α-β) + e).
    Riley {
        #[arg(long, allow_hyphen_values = true)]
        alpha: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        beta: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        e: BigInt,
    },
    /// The slope word u_s.
    Word {
        #[arg(long, allow_hyphen_values = true)]
        s: BigSlope,
    },
    /// The link group of K(r), or H(r; n) when an index is given.
    Present {
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Check ρ(u_s) = ±I at every Heckoid root (or trace equality with --against).
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        s: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        numeric: NumericArgs,
        /// Compare traces of u_s and u_{s'} instead.
        #[arg(long, allow_hyphen_values = true, value_name = "S'")]
        against: Option<BigSlope>,
    },
    /// Check that s satisfies the representation condition at the Heckoid roots.
    Divides {
        #[arg(long, allow_hyphen_values = true)]
        s: BigSlope,
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// The weighted-graph orbifold descriptor.
    Describe {
        #[arg(long, allow_hyphen_values = true)]
        r: BigSlope,
        #[command(flatten)]
        index: IndexArgs,
        /// The quotient orbifold instead of the Heckoid orbifold.
        #[arg(long)]
        quotient: bool,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Certification tolerance; 0 makes every residual check fail.
        #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Heckoid index n: "2", "5/2" or "2.5".
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<HeckoidIndex>,
    /// m = 2n.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "n")]
    pub m: Option<u32>,
}

impl IndexArgs {
    fn optional(&self) -> Result<Option<HeckoidIndex>, Error> {
        match (self.n, self.m) {
            (Some(n), _) => Ok(Some(n)),
            (None, Some(m)) => HeckoidIndex::from_m(m).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn required(&self) -> Result<HeckoidIndex, Error> {
        self.optional()?.ok_or_else(|| Error::Domain("one of --n or --m is required".into()))
    }
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = SearchBudget::default().max_word_len)]
    pub max_word_len: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = SearchBudget::default().max_den)]
    pub max_den: u64,
    #[arg(long, allow_hyphen_values = true, default_value_t = SearchBudget::default().t_max)]
    pub t_max: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = SearchBudget::default().c_bound)]
    pub c_bound: i64,
    /// Reflections in the edges {k, ∞} with |k| up to this bound are generators.
    #[arg(long, allow_hyphen_values = true, default_value_t = SearchBudget::default().reflection_span)]
    pub reflection_span: i64,
}

impl BudgetArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_word_len: self.max_word_len,
            max_den: self.max_den,
            t_max: self.t_max,
            c_bound: self.c_bound,
            reflection_span: self.reflection_span,
        }
    }
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Residual tolerance, in (0, 1).
    #[arg(long, allow_hyphen_values = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// k in the trace target 2cos(2πk/m).
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub k: u32,
}

impl NumericArgs {
    fn options(&self) -> Result<CertifyOptions, Error> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain(format!("--tol must lie in (0, 1), got {}", self.tol)));
        }
        Ok(CertifyOptions { k: self.k, tol: self.tol })
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A successful run: a JSON document and its text rendering.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn new(code: i32, json: Value, text: String) -> Self {
        Report { code, json, text }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Precondition(_) => EXIT_FAILED,
        Error::Domain(_) | Error::Parse(_) | Error::NotOneRelator(_) | Error::WrongParity(_) => EXIT_USAGE,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Domain(_) => "domain",
        Error::Parse(_) => "parse",
        Error::NotOneRelator(_) => "not_one_relator",
        Error::WrongParity(_) => "wrong_parity",
        Error::Precondition(_) => "precondition",
    }
}

fn error_outcome(json: bool, code: i32, kind: &str, message: &str) -> Outcome {
    if json {
        let doc = json!({ "error": kind, "message": message, "exit_code": code });
        Outcome { code, stdout: format!("{}\n", to_json(&doc)), stderr: String::new() }
    } else {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Runs one invocation; `args[0]` is the program name.
pub fn dispatch<S: AsRef<str>>(args: &[S]) -> Outcome {
    let args: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
    let json = args.iter().skip(1).any(|a| *a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() };
            }
            if json {
                let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
                return error_outcome(true, EXIT_USAGE, "usage", &first);
            }
            return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: e.to_string() };
        }
    };
    match run(&cli.command) {
        Ok(report) if cli.json => Outcome { code: report.code, stdout: format!("{}\n", to_json(&report.json)), stderr: String::new() },
        Ok(report) => Outcome { code: report.code, stdout: report.text, stderr: String::new() },
        Err(err) => error_outcome(cli.json, exit_code_for(&err), error_kind(&err), &err.to_string()),
    }
}

fn lambda(r: &BigSlope, index: &IndexArgs) -> Result<BigLambda, Error> {
    BigLambda::new(r.clone(), index.required()?)
}

fn witness_text(w: &OrbitWitness) -> String {
    let word = if w.word.is_empty() { "(empty word)".to_string() } else { w.word.to_string() };
    match &w.pattern {
        None => word,
        Some(p) => {
            let signs: String = p.signs.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
            format!("{word}  [pattern t={} c={} signs={signs} cs={:?}]", p.t(), p.c, p.cs)
        }
    }
}

fn report_lines(reports: &[CertificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "root {:+.12}{:+.12}i: {}", r.root.re, r.root.im, if r.passed() { "pass" } else { "fail" });
        for c in &r.checks {
            let sign = c.sign.map(|s| format!(" sign {s:+}")).unwrap_or_default();
            let cmp = match c.bound {
                heckoid::Bound::Below => "<",
                heckoid::Bound::Above => ">",
            };
            let _ =
                writeln!(out, "  {}: {:.3e} {cmp} {:.1e} {}{sign}", c.name, c.residual, c.tolerance, if c.passed { "ok" } else { "FAIL" });
        }
    }
    let _ = writeln!(out, "verdict: {}", if all_pass(reports) { "pass" } else { "fail" });
    out
}

fn pass_code(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn describe_text(d: &OrbifoldDescriptor<BigInt>) -> String {
    let edges: Vec<String> = d
        .edges
        .iter()
        .map(|e| {
            format!("{}: {}", serde_json::to_value(e.label).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(), e.weight)
        })
        .collect();
    format!(
        "base K({}); {}; case {}; strata {}; vertex condition {}\n",
        d.base_slope,
        edges.join(", "),
        serde_json::to_value(d.case).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        d.strata_count,
        if d.vertex_condition() { "holds" } else { "fails" }
    )
}

fn run(cmd: &Command) -> Result<Report, Error> {
    match cmd {
        Command::Orbit { r, index, budget, pattern } => {
            let l = lambda(r, index)?;
            let b = budget.budget();
            let orbit = if *pattern { orbit_enumerate_pattern(&l, b.t_max, b.c_bound)? } else { orbit_bfs(&l, &b)? };
            let slopes: Vec<Value> = orbit.iter().map(|(s, w)| json!({ "slope": s, "witness": w })).collect();
            let text: String = orbit.iter().map(|(s, w)| format!("{s}\t{}\n", witness_text(w))).collect();
            let doc = json!({
                "r": r, "n": l.index(), "m": l.index().m(),
                "method": if *pattern { "pattern" } else { "bfs" },
                "budget": b, "count": orbit.len(), "slopes": slopes,
            });
            Ok(Report::new(EXIT_OK, doc, text))
        }
        Command::Member { s, r, index, budget } => {
            let l = lambda(r, index)?;
            let verdict = is_in_orbit(s, &l, &budget.budget())?;
            let text = match &verdict {
                Membership::Member { witness } => format!("member {s}\nwitness: {}\n", witness_text(witness)),
                Membership::NotFoundWithinBudget => format!("not_found_within_budget {s}\n"),
            };
            let code = pass_code(verdict.is_member());
            let mut doc = serde_json::to_value(&verdict).expect("serializes");
            doc["s"] = json!(s);
            doc["r"] = json!(r);
            doc["m"] = json!(l.index().m());
            Ok(Report::new(code, doc, text))
        }
        Command::Epi { s, r, index, budget } => {
            let l = lambda(r, index)?;
            let verdict = admits_epimorphism(s, &l, &budget.budget())?;
            let (code, text) = match &verdict {
                Epimorphism::Yes { route, orbit_slope, witness } => {
                    let via = match route {
                        heckoid::EpiRoute::ViaS => "s",
                        heckoid::EpiRoute::ViaSPlusOne => "s+1",
                    };
                    (EXIT_OK, format!("yes via {via}: {orbit_slope} in orbit\nwitness: {}\n", witness_text(witness)))
                }
                Epimorphism::NotFoundWithinBudget => (EXIT_FAILED, format!("not_found_within_budget {s}\n")),
            };
            let mut doc = serde_json::to_value(&verdict).expect("serializes");
            doc["s"] = json!(s);
            doc["r"] = json!(r);
            doc["m"] = json!(l.index().m());
            Ok(Report::new(code, doc, text))
        }
        Command::Riley { alpha, beta, d, m, e } => {
            let s = riley_family(alpha, beta, *d, m, e)?;
            let doc =
                json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "d": d, "m": m.to_string(), "e": e.to_string(), "slope": s });
            Ok(Report::new(EXIT_OK, doc, format!("{s}\n")))
        }
        Command::Word { s } => {
            let w = slope_word(s)?;
            let eps: Vec<i8> = epsilon_seq(s)?;
            let doc = json!({ "s": s, "word": w, "length": w.len(), "epsilon": eps });
            Ok(Report::new(EXIT_OK, doc, format!("{w}\n")))
        }
        Command::Present { r, index } => {
            let p = match index.optional()? {
                Some(idx) => heckoid_presentation(r, idx)?,
                None => link_group_presentation(r)?,
            };
            let text = format!("{p}\n");
            Ok(Report::new(EXIT_OK, serde_json::to_value(&p).expect("serializes"), text))
        }
        Command::Certify { s, r, index, budget, numeric, against } => {
            let l = lambda(r, index)?;
            let opts = numeric.options()?;
            match against {
                Some(s2) => {
                    let reports = trace_invariance_check(s, s2, &l, &budget.budget(), &opts)?;
                    let passed = all_pass(&reports);
                    let doc =
                        json!({ "s": s, "against": s2, "r": r, "m": l.index().m(), "reports": reports, "verdict": verdict_str(passed) });
                    Ok(Report::new(pass_code(passed), doc, report_lines(&reports)))
                }
                None => {
                    let cert = certify_epimorphism(s, &l, &budget.budget(), &opts)?;
                    let passed = cert.passed();
                    let text = format!(
                        "orbit slope {}, witness: {}\n{}",
                        cert.orbit_slope,
                        witness_text(&cert.witness),
                        report_lines(&cert.reports)
                    );
                    let mut doc = serde_json::to_value(&cert).expect("serializes");
                    doc["s"] = json!(s);
                    doc["r"] = json!(r);
                    doc["m"] = json!(l.index().m());
                    doc["verdict"] = json!(verdict_str(passed));
                    Ok(Report::new(pass_code(passed), doc, text))
                }
            }
        }
        Command::Divides { s, r, index, budget, numeric } => {
            let l = lambda(r, index)?;
            let opts = numeric.options()?;
            let (witnessed, reports) = match divisibility_check(s, &l, &budget.budget(), &opts) {
                Ok(reports) => (true, reports),
                Err(Error::Precondition(_)) => (false, divisibility_probe(s, &l, &opts)?),
                Err(e) => return Err(e),
            };
            let passed = witnessed && all_pass(&reports);
            let mut text = String::new();
            if !witnessed {
                let _ = writeln!(text, "{s} has no orbit witness within the budget; residuals for reference:");
            }
            text.push_str(&report_lines(&reports));
            let doc =
                json!({ "s": s, "r": r, "m": l.index().m(), "witnessed": witnessed, "reports": reports, "verdict": verdict_str(passed) });
            Ok(Report::new(pass_code(passed), doc, text))
        }
        Command::Describe { r, index, quotient } => {
            let idx = index.required()?;
            let d = if *quotient { quotient_orbifold_desc(r, idx)? } else { orbifold_desc(r, idx)? };
            let text = describe_text(&d);
            Ok(Report::new(EXIT_OK, serde_json::to_value(&d).expect("serializes"), text))
        }
        Command::Selftest { budget, tol } => {
            if !(*tol >= 0.0 && *tol < 1.0) {
                return Err(Error::Domain(format!("--tol must lie in [0, 1) for selftest, got {tol}")));
            }
            let cfg = selftest::SelftestConfig { budget: budget.budget(), tol: *tol };
            let summary = selftest::run(&cfg);
            let code = pass_code(summary.passed);
            let text = summary.text();
            Ok(Report::new(code, serde_json::to_value(&summary).expect("serializes"), text))
        }
    }
}

fn verdict_str(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}
