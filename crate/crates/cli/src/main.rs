//! `quadpair` command-line front end.
//!
//! Exit codes: 0 success, 1 an explicit verification suite or identity check
//! failed, 2 invalid input, 3 evaluation budget exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadpair::counting::{count_s, count_t, reduce_to_pair, CountOptions, LinearSystem, WeightSpec};
use quadpair::expsums::{s_dq, EvalCtx, Method};
use quadpair::forms::{MVec, QuadPair};
use quadpair::par::Workers;
use quadpair::verify::{run_suite, Suite, SuiteConfig, Window};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const DEFAULT_PAIR: [i64; 5] = [1, 1, 1, -1, 1];

#[derive(Parser)]
#[command(name = "quadpair", version, about = "Exponential sums and lattice counts for pairs of diagonal quadrics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate S_{d,q}(m)
    Expsum(ExpsumArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Weighted lattice counts S(B) or T(B; L)
    Count(CountArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

/// Settings shared by every subcommand; each may also come from `--config`.
#[derive(Args, Debug)]
struct Common {
    /// JSON file with any of: pair, m, weights, budget, workers, seed, output, format
    #[arg(long)]
    config: Option<PathBuf>,
    /// alpha,alpha',beta,beta',beta''
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pair: Option<Vec<i64>>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record wall-clock times in output files (otherwise written as 0)
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct ExpsumArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    m: Option<Vec<i64>>,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    q: u64,
    /// brute, semi, local, mult or auto
    #[arg(long, default_value = "auto")]
    method: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    suite: String,
    /// Override the number of random instances
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    p_max: Option<u64>,
    #[arg(long)]
    r_max: Option<u32>,
    /// Growth window lo,hi
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    window: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    /// a1,b1,a2,b2,a3,b3,a4,b4
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1, conflicts_with = "pair")]
    linear: Option<Vec<i64>>,
    #[arg(long = "B", conflicts_with = "b_list")]
    b: Option<f64>,
    #[arg(long = "B-list", value_delimiter = ',', num_args = 1)]
    b_list: Option<Vec<f64>>,
    /// With --linear, also evaluate S(sqrt B) on the reduced pair
    #[arg(long)]
    check_identity: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    pair: Option<Vec<i64>>,
    m: Option<Vec<i64>>,
    weights: Option<WeightSpec>,
    budget: Option<u64>,
    workers: Option<usize>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

enum Failure {
    Invalid(String),
    Budget(String),
    Check(String),
}

impl From<quadpair::Error> for Failure {
    fn from(e: quadpair::Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

/// Flags merged over the config file.
struct Settings {
    pair: Option<Vec<i64>>,
    m: Option<Vec<i64>>,
    weights: WeightSpec,
    budget: Option<u64>,
    workers: Workers,
    seed: u64,
    output: Option<PathBuf>,
    format: Format,
    timing: bool,
}

impl Settings {
    fn resolve(c: &Common, m: Option<Vec<i64>>) -> Result<Settings, Failure> {
        let file = match &c.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<RunConfig>(&text)
                    .map_err(|e| Failure::Invalid(format!("bad config {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        let output = c.out.clone().or(file.output);
        let inferred = output
            .as_deref()
            .and_then(Path::extension)
            .filter(|e| e.eq_ignore_ascii_case("json"))
            .map(|_| Format::Json);
        let s = Settings {
            pair: c.pair.clone().or(file.pair),
            m: m.or(file.m),
            weights: file.weights.unwrap_or_default(),
            budget: c.budget.or(file.budget),
            workers: Workers(c.workers.or(file.workers)),
            seed: c.seed.or(file.seed).unwrap_or(1),
            output,
            format: c.format.or(file.format).or(inferred).unwrap_or(Format::Csv),
            timing: c.timing,
        };
        if s.workers.0 == Some(0) {
            return Err(Failure::Invalid("workers must be positive".into()));
        }
        s.weights.validate()?;
        Ok(s)
    }

    fn pair(&self) -> Result<QuadPair, Failure> {
        let v = self.pair.clone().unwrap_or(DEFAULT_PAIR.to_vec());
        let arr: [i64; 5] = v
            .try_into()
            .map_err(|v: Vec<i64>| Failure::Invalid(format!("--pair needs 5 integers, got {}", v.len())))?;
        Ok(QuadPair::new(arr)?)
    }

    fn ctx(&self) -> EvalCtx {
        let mut ctx = self.budget.map(EvalCtx::with_budget).unwrap_or_default();
        ctx.workers = self.workers;
        ctx
    }

    fn ms(&self, start: Instant) -> f64 {
        if self.timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        }
    }

    fn write(&self, csv: &str, json: &impl Serialize) -> Outcome {
        let Some(path) = &self.output else {
            return Ok(());
        };
        let text = match self.format {
            Format::Csv => csv.to_string(),
            Format::Json => {
                let mut t = serde_json::to_string_pretty(json).expect("output serializes");
                t.push('\n');
                t
            }
        };
        std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
    }
}

#[derive(Serialize)]
struct ExpsumRow {
    d: u64,
    q: u64,
    m: [i64; 6],
    re: f64,
    im: f64,
    n_terms: u64,
    method: String,
    ms: f64,
}

fn cmd_expsum(a: ExpsumArgs) -> Outcome {
    let s = Settings::resolve(&a.common, a.m)?;
    let pair = s.pair()?;
    let m: [i64; 6] = s
        .m
        .clone()
        .unwrap_or(vec![0; 6])
        .try_into()
        .map_err(|v: Vec<i64>| Failure::Invalid(format!("--m needs 6 integers, got {}", v.len())))?;
    let method: Method = a.method.parse()?;
    let start = Instant::now();
    let v = s_dq(&pair, a.d, a.q, &MVec(m), method, &s.ctx())?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    println!("re={} im={} n_terms={} method={method} ms={elapsed:.3}", v.re, v.im, v.n_terms);
    if let Some(n) = v.as_integer() {
        println!("{n}");
    }
    let row = ExpsumRow { d: a.d, q: a.q, m, re: v.re, im: v.im, n_terms: v.n_terms, method: method.to_string(), ms: s.ms(start) };
    let mut csv = String::from("d,q,m1,m2,m3,m4,m5,m6,re,im,method,ms\n");
    let ms = m.map(|x| x.to_string()).join(",");
    writeln!(csv, "{},{},{ms},{},{},{},{}", row.d, row.q, row.re, row.im, row.method, row.ms).unwrap();
    s.write(&csv, &row)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let s = Settings::resolve(&a.common, None)?;
    let suite: Suite = a.suite.parse()?;
    let pair = s.pair()?;
    let mut cfg = SuiteConfig::new(suite, s.seed);
    cfg.ctx = s.ctx();
    if let Some(n) = a.samples {
        cfg.ranges.samples = n;
    }
    if let Some(p) = a.p_max {
        cfg.ranges.p_max = p;
    }
    if let Some(r) = a.r_max {
        cfg.ranges.r_max = r;
    }
    if let Some(w) = a.window {
        let [lo, hi]: [f64; 2] =
            w.try_into().map_err(|_| Failure::Invalid("--window needs lo,hi".into()))?;
        cfg.window = Some(Window::new(lo, hi));
    }
    let report = run_suite(suite, &pair, &cfg)?;
    println!(
        "check={} instances={} worst_ratio={} worst_instance={} fitted_exponent={} pass={}",
        report.check_name,
        report.instances,
        report.worst_ratio,
        report.worst_instance,
        report.fitted_exponent.map_or("-".to_string(), |x| x.to_string()),
        report.pass
    );
    for f in &report.fits {
        println!("fit {} slope={} window={} points={}", f.label, f.slope, f.window, f.points);
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    s.write(&String::from_utf8(csv).expect("csv is utf-8"), &report)?;
    if !suite.is_growth() && !report.pass {
        return Err(Failure::Check(format!("{} failed: worst ratio {}", report.check_name, report.worst_ratio)));
    }
    Ok(())
}

#[derive(Serialize)]
struct CountRow {
    #[serde(rename = "B")]
    b: f64,
    value: f64,
    ms: f64,
    workers: usize,
}

fn cmd_count(a: CountArgs) -> Outcome {
    let s = Settings::resolve(&a.common, None)?;
    let bs = match (a.b, a.b_list) {
        (Some(b), None) => vec![b],
        (None, Some(list)) if !list.is_empty() => list,
        _ => return Err(Failure::Invalid("give --B or --B-list".into())),
    };
    let opts = CountOptions {
        workers: s.workers,
        budget: s.budget.unwrap_or(quadpair::counting::DEFAULT_COUNT_BUDGET),
    };
    let linear = match &a.linear {
        Some(v) => {
            let arr: [i64; 8] = v
                .clone()
                .try_into()
                .map_err(|v: Vec<i64>| Failure::Invalid(format!("--linear needs 8 integers, got {}", v.len())))?;
            Some(LinearSystem::new(arr)?)
        }
        None if s.pair.is_none() => return Err(Failure::Invalid("give --pair or --linear".into())),
        None => None,
    };
    if a.check_identity && linear.is_none() {
        return Err(Failure::Invalid("--check-identity needs --linear".into()));
    }
    let pair = match &linear {
        Some(l) => reduce_to_pair(l)?,
        None => s.pair()?,
    };
    // ratio exponent: B^2 for T, B^4 for S
    let k = if linear.is_some() { 2 } else { 4 };
    let workers = s.workers.effective();
    let mut rows = Vec::new();
    let mut previous: Option<f64> = None;
    let mut identity_ok = true;
    println!("B,value,ratio,delta,ms,workers");
    for &b in &bs {
        let start = Instant::now();
        let value = match &linear {
            Some(l) => count_t(l, &s.weights, b, &opts)?.value,
            None => count_s(&pair, &s.weights, b, &opts)?.value,
        };
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let ratio = value / b.powi(k);
        let delta = previous.map_or(String::new(), |p| (ratio - p).abs().to_string());
        previous = Some(ratio);
        println!("{b},{value},{ratio},{delta},{elapsed:.3},{workers}");
        if a.check_identity {
            let sv = count_s(&pair, &s.weights, b.sqrt(), &opts)?.value;
            let scale = value.abs().max(sv.abs());
            let rel = if scale == 0.0 { 0.0 } else { (value - sv).abs() / scale };
            let ok = rel <= 1e-9;
            identity_ok &= ok;
            println!("identity B={b} T={value} S(sqrt B)={sv} rel={rel} {}", if ok { "ok" } else { "FAILED" });
        }
        rows.push(CountRow { b, value, ms: s.ms(start), workers });
    }
    let mut csv = String::from("B,value,ms,workers\n");
    for r in &rows {
        writeln!(csv, "{},{},{},{}", r.b, r.value, r.ms, r.workers).unwrap();
    }
    s.write(&csv, &rows)?;
    if !identity_ok {
        return Err(Failure::Check("T(B) and S(sqrt B) disagree".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Expsum(a) => cmd_expsum(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Count(a) => cmd_count(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
