//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 budget or cap exceeded,
//! 3 verification mismatch.

pub mod record;

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use cyclicount_core::{
    count_by_burnside, count_by_enumeration, count_cyclic_subgroups, count_homocyclic, count_rank2,
    factorize, menon_check, normalize, parse_spec, CountReport, Error, GroupSpec, Limits,
    PrimaryDecomposition, SumPath,
};

use record::{CountRecord, MenonRangeRecord, MenonRecord, MethodResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cyclicount", version, about = "Count the cyclic subgroups of finite abelian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the cyclic subgroups of a group such as "Z2 x Z12 x Z72"
    Count {
        spec: String,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
        /// Run every applicable method and fail on disagreement
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        show_local_sums: bool,
    },
    /// Check Menon's identity for n, or for every n in --range A..B
    Menon {
        #[arg(required_unless_present = "range", conflicts_with = "range", value_parser = positive)]
        n: Option<BigUint>,
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Count through the rank-two or homocyclic special formulas
    Corollary {
        #[command(subcommand)]
        kind: Corollary,
    },
}

#[derive(Debug, Subcommand)]
pub enum Corollary {
    /// Z_m x Z_n
    Rank2 {
        #[arg(value_parser = positive)]
        m: BigUint,
        #[arg(value_parser = positive)]
        n: BigUint,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Z_n^r
    Homocyclic {
        #[arg(value_parser = positive)]
        n: BigUint,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    /// Closed form, valuation-grouped local sums
    Formula,
    /// Closed form, term-by-term local sums
    FormulaNaive,
    /// Orbit counting over the power automorphisms
    Burnside,
    /// Explicit generation of every cyclic subgroup
    Enumerate,
}

fn positive(s: &str) -> Result<BigUint, String> {
    match BigUint::parse_bytes(s.trim().as_bytes(), 10) {
        Some(n) if n > BigUint::ZERO => Ok(n),
        _ => Err(format!("expected a positive decimal integer, got '{s}'")),
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Outcome { code, stdout, stderr }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            e if e.is_limit() => EXIT_LIMIT,
            Error::InexactDivision { .. } => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn run(cli: Cli, limits: &Limits) -> Outcome {
    match cli.command {
        Command::Count { spec, method, verify, json, show_local_sums } => {
            cmd_count(&spec, method, verify, json, show_local_sums, limits)
        }
        Command::Menon { n, range, json } => match (n, range) {
            (_, Some(range)) => cmd_menon_range(&range, json, limits),
            (Some(n), None) => cmd_menon(&n, json, limits),
            (None, None) => unreachable!("clap requires n or --range"),
        },
        Command::Corollary { kind } => cmd_corollary(kind, limits),
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn count_with(group: &PrimaryDecomposition, method: CountMethod, limits: &Limits) -> Result<CountReport, Error> {
    match method {
        CountMethod::Formula => count_cyclic_subgroups(group, SumPath::Fast, limits),
        CountMethod::FormulaNaive => count_cyclic_subgroups(group, SumPath::Naive, limits),
        CountMethod::Burnside => count_by_burnside(group, limits),
        CountMethod::Enumerate => count_by_enumeration(group, limits),
    }
}

const ALL_METHODS: [CountMethod; 4] =
    [CountMethod::Formula, CountMethod::FormulaNaive, CountMethod::Burnside, CountMethod::Enumerate];

/// Runs every method; a method that exceeds its budget or cap is skipped.
fn verify_all(group: &PrimaryDecomposition, limits: &Limits) -> Result<Vec<(MethodResult, Option<BigUint>)>, Error> {
    ALL_METHODS
        .iter()
        .map(|&m| match count_with(group, m, limits) {
            Ok(report) => Ok((
                MethodResult {
                    method: report.method.to_string(),
                    count: Some(report.count.to_string()),
                    skipped: None,
                },
                Some(report.count),
            )),
            Err(e) if e.is_limit() => Ok((
                MethodResult { method: method_name(m).to_string(), count: None, skipped: Some(e.to_string()) },
                None,
            )),
            Err(e) => Err(e),
        })
        .collect()
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Formula => "formula-fast",
        CountMethod::FormulaNaive => "formula-naive",
        CountMethod::Burnside => "burnside-oracle",
        CountMethod::Enumerate => "enumeration-oracle",
    }
}

fn count_text(record: &CountRecord, group: &PrimaryDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "input:          {}", record.input).unwrap();
    writeln!(out, "primary form:   {group}").unwrap();
    writeln!(out, "exponent:       {}", record.exponent).unwrap();
    writeln!(out, "phi(exponent):  {}", record.phi_exponent).unwrap();
    writeln!(out, "method:         {}", record.method).unwrap();
    if let Some(sums) = &record.local_sums {
        for s in sums {
            writeln!(out, "local sum:      p={} exponents={:?} sum={}", s.prime, s.exponents, s.sum).unwrap();
        }
    }
    if let Some(verified) = &record.verified {
        for v in verified {
            match (&v.count, &v.skipped) {
                (Some(c), _) => writeln!(out, "verify:         {} = {}", v.method, c).unwrap(),
                (None, Some(why)) => writeln!(out, "verify:         {} skipped ({why})", v.method).unwrap(),
                (None, None) => {}
            }
        }
    }
    writeln!(out, "count:          {}", record.count).unwrap();
    out
}

fn render<T: serde::Serialize>(json: bool, record: &T, text: impl FnOnce() -> String) -> String {
    if json {
        let mut line = serde_json::to_string(record).expect("records serialize");
        line.push('\n');
        line
    } else {
        text()
    }
}

pub fn cmd_count(
    spec: &str,
    method: CountMethod,
    verify: bool,
    json: bool,
    show_local_sums: bool,
    limits: &Limits,
) -> Outcome {
    let start = Instant::now();
    let group = match parse_spec(spec).and_then(|s| normalize(&s, &limits.factor)) {
        Ok(g) => g,
        Err(e) => return Outcome::error(&e),
    };
    let report = match count_with(&group, method, limits) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let mut record = CountRecord::new(spec, &group, &report, show_local_sums);
    let mut mismatch = false;
    if verify {
        match verify_all(&group, limits) {
            Ok(results) => {
                mismatch = results.iter().any(|(_, c)| c.as_ref().is_some_and(|c| *c != report.count));
                record.verified = Some(results.into_iter().map(|(r, _)| r).collect());
            }
            Err(e) => return Outcome::error(&e),
        }
    }
    record.elapsed_ms = elapsed_ms(start);
    let stdout = render(json, &record, || count_text(&record, &group));
    if mismatch {
        return Outcome::fail(EXIT_MISMATCH, stdout, "error: methods disagree\n".into());
    }
    Outcome::ok(stdout)
}

pub fn cmd_menon(n: &BigUint, json: bool, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let check = match menon_check(n, limits) {
        Ok(c) => c,
        Err(e) => return Outcome::error(&e),
    };
    let record = MenonRecord {
        input: n.to_string(),
        n: check.n.to_string(),
        lhs: check.lhs.to_string(),
        rhs: check.rhs.to_string(),
        holds: check.holds,
        elapsed_ms: elapsed_ms(start),
    };
    let stdout = render(json, &record, || {
        format!(
            "n:      {}\nlhs:    {}\nrhs:    {}\nholds:  {}\n",
            record.n, record.lhs, record.rhs, record.holds
        )
    });
    if !check.holds {
        return Outcome::fail(EXIT_MISMATCH, stdout, format!("error: identity fails at n = {n}\n"));
    }
    Outcome::ok(stdout)
}

fn parse_range(range: &str) -> Result<(u64, u64), String> {
    let (a, b) = range.split_once("..").ok_or_else(|| format!("expected A..B, got '{range}'"))?;
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("bad range bound '{s}'"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 || a > b {
        return Err(format!("range must satisfy 1 <= A <= B, got {a}..{b}"));
    }
    Ok((a, b))
}

pub fn cmd_menon_range(range: &str, json: bool, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let (a, b) = match parse_range(range) {
        Ok(r) => r,
        Err(msg) => return Outcome::fail(EXIT_INPUT, String::new(), format!("error: {msg}\n")),
    };
    let mut failures = 0;
    let mut first_failure = None;
    for n in a..=b {
        match menon_check(&BigUint::from(n), limits) {
            Ok(c) if c.holds => {}
            Ok(_) => {
                failures += 1;
                first_failure.get_or_insert(n.to_string());
            }
            Err(e) => return Outcome::error(&e),
        }
    }
    let record = MenonRangeRecord {
        input: range.to_string(),
        start: a,
        end: b,
        checks: b - a + 1,
        failures,
        first_failure,
        elapsed_ms: elapsed_ms(start),
    };
    let stdout = render(json, &record, || {
        let mut s = format!("range:     {a}..{b}\nchecks:    {}\nfailures:  {failures}\n", record.checks);
        if let Some(n) = &record.first_failure {
            writeln!(s, "first failure: {n}").unwrap();
        }
        s
    });
    if failures > 0 {
        return Outcome::fail(EXIT_MISMATCH, stdout, "error: identity fails\n".into());
    }
    Outcome::ok(stdout)
}

pub fn cmd_corollary(kind: Corollary, limits: &Limits) -> Outcome {
    let start = Instant::now();
    let (input, verify, json, computed) = match &kind {
        Corollary::Rank2 { m, n, verify, json } => {
            let group = GroupSpec::new(vec![m.clone(), n.clone()]).and_then(|s| normalize(&s, &limits.factor));
            let report = count_rank2(m, n, limits);
            (format!("rank2 {m} {n}"), *verify, *json, group.and_then(|g| report.map(|r| (g, r))))
        }
        Corollary::Homocyclic { n, r, verify, json } => {
            let computed = factorize(n, &limits.factor).and_then(|f| {
                let group = PrimaryDecomposition::from_components(
                    f.factors().iter().map(|(p, a)| (p.clone(), vec![*a; *r as usize])),
                )?;
                Ok((group, count_homocyclic(&f, *r, limits)?))
            });
            (format!("homocyclic {n} {r}"), *verify, *json, computed)
        }
    };
    let (group, report) = match computed {
        Ok(x) => x,
        Err(e) => return Outcome::error(&e),
    };
    let mut record = CountRecord::new(&input, &group, &report, true);
    let mut mismatch = false;
    if verify {
        match count_cyclic_subgroups(&group, SumPath::Fast, limits) {
            Ok(general) => {
                mismatch = general.count != report.count;
                record.verified = Some(vec![MethodResult {
                    method: general.method.to_string(),
                    count: Some(general.count.to_string()),
                    skipped: None,
                }]);
            }
            Err(e) => return Outcome::error(&e),
        }
    }
    record.elapsed_ms = elapsed_ms(start);
    let stdout = render(json, &record, || count_text(&record, &group));
    if mismatch {
        return Outcome::fail(EXIT_MISMATCH, stdout, "error: corollary disagrees with the general formula\n".into());
    }
    Outcome::ok(stdout)
}
