//! The acceptance criteria as a runnable report.
//!
//! Budgets and the certification tolerance come from [`SelftestConfig`];
//! shrinking them turns criteria into failures, never into errors.

use std::time::{Duration, Instant};

use heckoid::{
    all_pass, certify_epimorphism, cf_eval, cf_expand, divisibility_check, divisibility_probe, elliptic_order_check, even_orbifold_desc,
    heckoid_presentation, is_in_orbit, odd_orbifold_desc, odd_slope, orbit_bfs, orbit_enumerate_pattern, quotient_orbifold_desc,
    riley_family, slope_word, trace_invariance_check, CertifyOptions, ContFrac, Error, HeckoidIndex, Lambda, SearchBudget, Slope,
};
use serde::Serialize;

use crate::{dispatch, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

/// The four `(r, m)` pairs used by the orbit and divisibility criteria.
pub const ORBIT_CASES: [(&str, u32); 4] = [("1/3", 4), ("2/3", 4), ("1/3", 3), ("2/5", 4)];

/// Separation from `±I` required of `ρ(u_r)` itself.
pub const NONCENTRAL_SEPARATION: f64 = 1e-3;

/// Command lines and the exit code each must produce.
pub const EXIT_CODE_TABLE: &[(&[&str], i32)] = &[
    (&["word", "--s", "1/3"], EXIT_OK),
    (&["word", "--s", "inf"], EXIT_USAGE),
    (&["word", "--s", "1/x"], EXIT_USAGE),
    (&["member", "--s", "25/36", "--r", "2/3", "--n", "2"], EXIT_OK),
    (
        &[
            "member",
            "--s",
            "1/3",
            "--r",
            "2/3",
            "--n",
            "2",
            "--max-word-len",
            "2",
            "--max-den",
            "50",
            "--t-max",
            "1",
            "--c-bound",
            "1",
            "--reflection-span",
            "1",
        ],
        EXIT_FAILED,
    ),
    (&["member", "--s", "25/36", "--r", "2/3", "--n", "2", "--max-word-len", "0"], EXIT_USAGE),
    (&["member", "--s", "25/36", "--r", "2/3", "--n", "2", "--m", "4"], EXIT_USAGE),
    (&["member", "--s", "25/36", "--r", "2/3"], EXIT_USAGE),
    (&["epi", "--s", "-11/36", "--r", "2/3", "--m", "4"], EXIT_OK),
    (&["orbit", "--r", "2/3", "--n", "2", "--max-word-len", "1"], EXIT_OK),
    (&["orbit", "--r", "3/2", "--n", "2"], EXIT_USAGE),
    (&["riley", "--alpha", "3", "--beta", "1", "--d", "2", "--m", "4", "--e", "1"], EXIT_OK),
    (&["riley", "--alpha", "3", "--beta", "1", "--d", "2", "--m", "4", "--e", "3"], EXIT_USAGE),
    (&["present", "--r", "1/3", "--n", "2"], EXIT_OK),
    (&["present", "--r", "1/3", "--n", "5/2"], EXIT_USAGE),
    (&["present", "--r", "1/3", "--n", "2.5"], EXIT_USAGE),
    (&["certify", "--s", "13/36", "--r", "1/3", "--n", "2"], EXIT_OK),
    (&["certify", "--s", "13/36", "--r", "1/3", "--n", "2", "--tol", "0"], EXIT_USAGE),
    (&["certify", "--s", "13/36", "--against", "59/36", "--r", "1/3", "--n", "2"], EXIT_OK),
    (&["divides", "--s", "25/36", "--r", "2/3", "--n", "2"], EXIT_OK),
    (&["divides", "--s", "1/3", "--r", "2/3", "--n", "2"], EXIT_FAILED),
    (&["describe", "--r", "2/9", "--n", "2"], EXIT_OK),
    (&["describe", "--r", "9/56", "--n", "3/2"], EXIT_OK),
    (&["describe", "--r", "2/9", "--n", "1"], EXIT_USAGE),
    (&["frobnicate"], EXIT_USAGE),
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelftestConfig {
    pub budget: SearchBudget,
    pub tol: f64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { budget: SearchBudget::default(), tol: heckoid::DEFAULT_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestSummary {
    pub config: SelftestConfig,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl SelftestSummary {
    pub fn text(&self) -> String {
        let mut out: String = self
            .criteria
            .iter()
            .map(|c| {
                format!(
                    "criterion {:>2} {} {:<32} {:>8.3}s  {}\n",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.seconds,
                    c.detail
                )
            })
            .collect();
        out.push_str(if self.passed { "selftest: pass\n" } else { "selftest: fail\n" });
        out
    }
}

type Outcome = Result<(bool, String), Error>;

fn timed(id: u32, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> CriterionResult {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded {:.0?}", limit);
        }
    }
    CriterionResult { id, name, passed, detail, seconds: elapsed.as_secs_f64() }
}

fn slope(s: &str) -> Slope {
    s.parse().expect("literal slope")
}

fn lambda(r: &str, m: u32) -> Result<Lambda, Error> {
    Lambda::new(slope(r), HeckoidIndex::from_m(m)?)
}

pub fn run(cfg: &SelftestConfig) -> SelftestSummary {
    let criteria = vec![
        timed(1, "continued fractions", Some(Duration::from_secs(1)), criterion_1),
        timed(2, "riley family membership", Some(Duration::from_secs(10)), || criterion_2(cfg)),
        timed(3, "pattern/bfs agreement", Some(Duration::from_secs(120)), || criterion_3(cfg)),
        timed(4, "slope words", None, criterion_4),
        timed(5, "epimorphism certification", Some(Duration::from_secs(5)), || criterion_5(cfg)),
        timed(6, "trace invariance", None, || criterion_6(cfg)),
        timed(7, "divisibility", None, || criterion_7(cfg)),
        timed(8, "elliptic order", None, || criterion_8(cfg)),
        timed(9, "odd orbifold slopes", None, criterion_9),
        timed(10, "parity and exit codes", None, criterion_10),
    ];
    let passed = criteria.iter().all(|c| c.passed);
    SelftestSummary { config: *cfg, criteria, passed }
}

fn criterion_1() -> Outcome {
    let golden = cf_expand(&slope("2/9"))? == ContFrac::pure(vec![4, 2]) && cf_expand(&slope("9/56"))? == ContFrac::pure(vec![6, 4, 2]);
    let mut count = 0;
    for p in 2..=200i64 {
        for q in (1..p).filter(|&q| num_integer::gcd(p, q) == 1) {
            let s = Slope::new(q, p)?;
            if cf_eval(&cf_expand(&s)?) != s {
                return Ok((false, format!("round trip failed at {s}")));
            }
            count += 1;
        }
    }
    Ok((golden, format!("golden {}, {count} round trips", if golden { "ok" } else { "MISMATCH" })))
}

fn criterion_2(cfg: &SelftestConfig) -> Outcome {
    let l = lambda("2/3", 4)?;
    let first = riley_family(&3i64, &1, 2, &4, &1)?;
    let second = riley_family(&3i64, &1, 4, &4, &1)?;
    let exact = first == slope("25/36") && second == slope("217/324");
    let mut found = Vec::new();
    for (s, len) in [(&first, 2usize), (&second, 4)] {
        let budget = SearchBudget { max_word_len: cfg.budget.max_word_len.min(len), ..cfg.budget };
        let verdict = is_in_orbit(s, &l, &budget)?;
        let ok = verdict.witness().is_some_and(|w| w.verify(&l, s));
        found.push(ok);
    }
    let passed = exact && found.iter().all(|&f| f);
    Ok((passed, format!("values {}, members {:?}", if exact { "exact" } else { "WRONG" }, found)))
}

fn criterion_3(cfg: &SelftestConfig) -> Outcome {
    let mut compared = 0;
    let mut missing = Vec::new();
    for (r, m) in ORBIT_CASES {
        let l = lambda(r, m)?;
        let bfs = orbit_bfs(&l, &cfg.budget)?;
        let pattern = orbit_enumerate_pattern(&l, cfg.budget.t_max, cfg.budget.c_bound)?;
        for s in pattern.slopes().filter(|s| s.is_infinite() || *s.denom() <= cfg.budget.max_den as i64) {
            compared += 1;
            if !bfs.contains(s) {
                missing.push(format!("{s} (r={r}, m={m})"));
            }
        }
    }
    let detail = format!("{compared} pattern slopes, {} not_found_within_budget{}", missing.len(), preview(&missing));
    Ok((missing.is_empty() && compared > 0, detail))
}

fn preview(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(": {}", items.iter().take(3).cloned().collect::<Vec<_>>().join(", "))
    }
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for (s, w) in [("0", "ab"), ("1", "aB"), ("1/2", "abAB"), ("1/3", "abaBAB")] {
        let got = slope_word(&slope(s))?.to_string();
        if got != w {
            bad.push(format!("{s} -> {got}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "4 golden words".into() } else { bad.join(", ") }))
}

fn options(cfg: &SelftestConfig) -> CertifyOptions {
    CertifyOptions { k: 1, tol: cfg.tol }
}

/// Certification with `tol = 0` is legal here: every residual check fails.
fn certify_options_unchecked(cfg: &SelftestConfig) -> CertifyOptions {
    CertifyOptions { tol: if cfg.tol > 0.0 { cfg.tol } else { f64::MIN_POSITIVE }, ..options(cfg) }
}

fn criterion_5(cfg: &SelftestConfig) -> Outcome {
    let opts = certify_options_unchecked(cfg);
    let mut parts = Vec::new();
    let mut passed = slope_word(&slope("13/36"))?.len() == 72;
    for (s, r) in [("13/36", "1/3"), ("25/36", "2/3")] {
        let cert = certify_epimorphism(&slope(s), &lambda(r, 4)?, &cfg.budget, &opts)?;
        let worst = cert.reports.iter().flat_map(|r| r.checks.iter()).map(|c| c.residual).fold(0.0, f64::max);
        passed &= cert.passed() && !cert.reports.is_empty() && cfg.tol > 0.0;
        parts.push(format!("{s}: {} roots, max residual {worst:.1e}", cert.reports.len()));
    }
    Ok((passed, parts.join("; ")))
}

fn criterion_6(cfg: &SelftestConfig) -> Outcome {
    let opts = certify_options_unchecked(cfg);
    let l = lambda("1/3", 4)?;
    let s = slope("13/36");
    let mut passed = cfg.tol > 0.0;
    let mut worst: f64 = 0.0;
    for other in [slope("59/36"), slope("-13/36").add_integer(&2), slope("-13/36")] {
        let reports = trace_invariance_check(&s, &other, &l, &cfg.budget, &opts)?;
        passed &= all_pass(&reports) && !reports.is_empty();
        worst = reports.iter().flat_map(|r| r.checks.iter()).map(|c| c.residual).fold(worst, f64::max);
    }
    Ok((passed, format!("3 pairs, max residual {worst:.1e}")))
}

/// The first `count` finite orbit slopes by denominator, then value.
pub fn sample_orbit_slopes(l: &Lambda, count: usize) -> Result<Vec<Slope>, Error> {
    let orbit = orbit_bfs(l, &SearchBudget { max_word_len: 2, max_den: 100, ..SearchBudget::default() })?;
    let mut slopes: Vec<Slope> = orbit.slopes().filter(|s| !s.is_infinite()).cloned().collect();
    slopes.sort_by(|a, b| a.denom().cmp(b.denom()).then(a.cmp(b)));
    slopes.truncate(count);
    Ok(slopes)
}

fn criterion_7(cfg: &SelftestConfig) -> Outcome {
    let opts = certify_options_unchecked(cfg);
    let mut passed = cfg.tol > 0.0;
    let mut parts = Vec::new();
    for (r, m) in ORBIT_CASES {
        let l = lambda(r, m)?;
        let mut ok = 0;
        for s in sample_orbit_slopes(&l, 6)? {
            match divisibility_check(&s, &l, &cfg.budget, &opts) {
                Ok(reports) if all_pass(&reports) => ok += 1,
                Ok(_) | Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
        passed &= ok >= 5;
        parts.push(format!("r={r} m={m}: {ok}"));
    }
    let control = divisibility_probe(&slope("1/3"), &lambda("2/3", 4)?, &opts)?;
    let control_fails = !all_pass(&control);
    passed &= control_fails;
    Ok((passed, format!("{}; control {}", parts.join(", "), if control_fails { "fails" } else { "PASSES" })))
}

fn criterion_8(cfg: &SelftestConfig) -> Outcome {
    let opts = certify_options_unchecked(cfg);
    let mut passed = cfg.tol > 0.0;
    let mut roots = 0;
    for (r, m) in ORBIT_CASES {
        let reports = elliptic_order_check(&lambda(r, m)?, &opts, NONCENTRAL_SEPARATION)?;
        roots += reports.len();
        passed &= all_pass(&reports) && !reports.is_empty();
    }
    Ok((passed, format!("{roots} roots checked")))
}

fn criterion_9() -> Outcome {
    let mut passed = true;
    for (r, hat) in [("2/9", "1/9"), ("9/56", "9/28"), ("1/3", "2/3")] {
        passed &= odd_slope(&slope(r))? == slope(hat);
    }
    let mut descriptors = 0;
    for p in 2..=60i64 {
        for q in (1..p).filter(|&q| num_integer::gcd(p, q) == 1) {
            let r = Slope::new(q, p)?;
            for m in [3u32, 5, 7] {
                let idx = HeckoidIndex::from_m(m)?;
                for d in [odd_orbifold_desc(&r, idx)?, quotient_orbifold_desc(&r, idx)?] {
                    passed &= d.vertex_condition();
                    descriptors += 1;
                }
            }
        }
    }
    Ok((passed, format!("3 slope formulas, {descriptors} descriptors")))
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    let r = slope("1/3");
    for m in 3..=12u32 {
        let idx = HeckoidIndex::from_m(m)?;
        let presentation_errs = matches!(heckoid_presentation(&r, idx), Err(Error::NotOneRelator(_)));
        if presentation_errs != (m % 2 == 1) {
            bad.push(format!("presentation m={m}"));
        }
        let even_errs = matches!(even_orbifold_desc(&r, idx), Err(Error::WrongParity(_)));
        let odd_errs = matches!(odd_orbifold_desc(&r, idx), Err(Error::WrongParity(_)));
        if even_errs != (m % 2 == 1) || odd_errs != (m % 2 == 0) {
            bad.push(format!("descriptor m={m}"));
        }
    }
    for (args, want) in EXIT_CODE_TABLE {
        let argv: Vec<&str> = std::iter::once("heckoid").chain(args.iter().copied()).collect();
        let got = dispatch(&argv).code;
        if got != *want {
            bad.push(format!("`{}` exited {got}, expected {want}", args.join(" ")));
        }
    }
    let detail = format!("{} exit-code cases{}", EXIT_CODE_TABLE.len(), preview(&bad));
    Ok((bad.is_empty(), detail))
}
