//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs as a plain binary (no libtest harness) so the report is always shown.
//! Exits non-zero if any criterion fails that is not listed in `KNOWN_FAILING`.

use num_integer::Integer;
use quadpair::arith::{
    gauss_brute, gauss_quad, jacobi, odd_primes_upto, ramanujan, ramanujan_brute, rho_quadratic, SumValue,
};
use quadpair::counting::{
    count_s, count_s_naive, count_t, ratio_diagnostic, reduce_to_pair, CountOptions, LinearSystem, WeightSpec,
};
use quadpair::expsums::{
    b2_sum_identity, d0_closed, d_d, d_j_split, d_star, m_dq, onion_eval, s_dq, seek_rhs, EvalCtx, Method,
};
use quadpair::forms::{profile, q_poly, MVec, QuadPair};
use quadpair::verify::{run_suite, sample_stratified, Suite, SuiteConfig};
use std::time::Instant;

/// Criteria that fail on the stated grid; see README.
const KNOWN_FAILING: &[u32] = &[9];
const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn p0() -> QuadPair {
    QuadPair::new([1, 1, 1, -1, 1]).unwrap()
}

fn example_system() -> LinearSystem {
    LinearSystem::new([1, 0, 1, 1, 1, 2, 3, 4]).unwrap()
}

/// Satisfies the same validation as the example system, but with `Q1 = u (mod 4)`
/// so the weighted count does not vanish identically.
fn companion_system() -> LinearSystem {
    LinearSystem::new([1, 0, 0, 1, 1, 1, 1, 4]).unwrap()
}

fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Tracks `deviation / tolerance` over many comparisons.
#[derive(Default)]
struct Worst {
    ratio: f64,
    at: String,
    count: usize,
}

impl Worst {
    fn push(&mut self, a: &SumValue, b: &SumValue, at: impl FnOnce() -> String) {
        self.count += 1;
        let tol = a.tolerance().max(b.tolerance());
        let r = a.deviation(b) / tol;
        if r > self.ratio || self.at.is_empty() {
            self.ratio = r;
            self.at = at();
        }
    }

    fn outcome(&self, what: &str) -> Outcome {
        outcome(
            self.ratio <= 1.0 && self.count > 0,
            format!("{what}: {} comparisons, worst deviation/tolerance {:.3e} at {}", self.count, self.ratio, self.at),
        )
    }
}

fn gauss() -> Outcome {
    let mut w = Worst::default();
    for p in odd_primes_upto(37) {
        for r in 1..=3u32 {
            let n = p.pow(r);
            if n > 3000 {
                continue;
            }
            for a in 1..=(p - 1).min(6) {
                for m in 0..=(n - 1).min(10) {
                    let c = gauss_quad(a as i128, m as i128, p, r).unwrap();
                    let b = gauss_brute(a as i128, m as i128, p, r).unwrap();
                    w.push(&c, &b, || format!("p={p} r={r} a={a} m={m}"));
                }
            }
        }
    }
    w.outcome("closed form vs brute")
}

fn ramanujan_sums() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for q in 1..=500u64 {
        for b in 0..q as i128 {
            n += 1;
            if ramanujan_brute(q, b).as_integer() != Some(ramanujan(q, b) as i128) {
                bad.push((q, b));
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} pairs, {} mismatches {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn test_vectors(seed: u64, n: usize) -> Vec<MVec> {
    let mut v = vec![MVec::ZERO, MVec([1, 0, 1, 0, 1, 0]), MVec([6, 0, 12, 6, 0, 18])];
    v.extend(sample_stratified(&p0(), n, seed).unwrap());
    v
}

fn multiplicativity() -> Outcome {
    let ctx = EvalCtx::default();
    let p = p0();
    let ms = test_vectors(SEED, 3);
    let mut w = Worst::default();
    for d in 1..=45u64 {
        for q in 1..=45 / d {
            // every split d = d1 d2, q = q1 q2 with (d1 q1, d2 q2) = 1, both sides nontrivial
            for d1 in (1..=d).filter(|x| d % x == 0) {
                for q1 in (1..=q).filter(|x| q % x == 0) {
                    let (d2, q2) = (d / d1, q / q1);
                    let (n1, n2) = (d1 * q1, d2 * q2);
                    if n1 == 1 || n2 == 1 || n1.gcd(&n2) != 1 || n1 > n2 {
                        continue;
                    }
                    for m in &ms {
                        let whole = s_dq(&p, d, q, m, Method::Semi, &ctx).unwrap();
                        let a = s_dq(&p, d1, q1, m, Method::Semi, &ctx).unwrap();
                        let b = s_dq(&p, d2, q2, m, Method::Semi, &ctx).unwrap();
                        w.push(&whole, &a.mul(&b), || format!("d={d} q={q} split ({d1},{q1})x({d2},{q2}) m={m}"));
                    }
                }
            }
        }
    }
    w.outcome("S_dq vs product of coprime parts")
}

fn structural() -> Outcome {
    let ctx = EvalCtx::default();
    let brute_ctx = EvalCtx::with_budget(20_000_000_000);
    let p = p0();
    let mut seek = Worst::default();
    for d in 1..=45u64 {
        for m in test_vectors(SEED, 2) {
            let lhs = d_d(&p, d, &m, Method::Semi, &ctx).unwrap();
            let rhs = seek_rhs(&p, d, &m, &ctx).unwrap();
            seek.push(&lhs, &rhs, || format!("d={d} m={m}"));
        }
    }
    let mut split = Worst::default();
    let mut d0 = Worst::default();
    let ms = sample_stratified(&p, 20, SEED).unwrap();
    for pr in [3u64, 5, 7, 11] {
        for r in 1..=2u32 {
            let d = pr.pow(r);
            for m in &ms {
                let star = d_star(&p, d, m, &ctx).unwrap();
                let parts: Vec<SumValue> = (0..=r).map(|j| d_j_split(&p, pr, r, m, j, &ctx).unwrap()).collect();
                let total = parts.iter().fold(num_complex::Complex64::new(0.0, 0.0), |acc, v| acc + v.value());
                split.push(&star, &SumValue::new(total, star.n_terms), || format!("p={pr} r={r} m={m}"));
                let closed = d0_closed(&p, pr, r, m).unwrap();
                d0.push(&closed, &parts[0], || format!("p={pr} r={r} m={m}"));
            }
        }
    }
    let mut onion = Worst::default();
    for (d, q) in [(3u64, 3u64), (3, 9), (9, 3), (5, 5)] {
        for m in sample_stratified(&p, 10, SEED + 1).unwrap() {
            let o = onion_eval(&p, d, q, &m, &ctx).unwrap();
            let b = m_dq(&p, d, q, &m, Method::Brute, &brute_ctx).unwrap();
            onion.push(&o, &b, || format!("d={d} q={q} m={m}"));
        }
    }
    let mut b2 = Worst::default();
    for r in [1u64, 3, 9] {
        for m in test_vectors(SEED, 5) {
            let (l, rr) = b2_sum_identity(&p, r, &m, &ctx).unwrap();
            b2.push(&l, &rr, || format!("r={r} m={m}"));
        }
    }
    let parts = [
        seek.outcome("gcd extraction"),
        split.outcome("j-partition"),
        d0.outcome("j=0 closed form"),
        onion.outcome("mixed-sum decomposition vs brute"),
        b2.outcome("b2 sum"),
    ];
    outcome(parts.iter().all(|o| o.pass), parts.map(|o| o.detail).join("; "))
}

fn explicit_suites() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for suite in [Suite::LemRho, Suite::HypRho, Suite::Need2, Suite::MawkishBound, Suite::SigmaClaim] {
        let rep = run_suite(suite, &p0(), &SuiteConfig::new(suite, SEED)).unwrap();
        pass &= rep.pass && rep.worst_ratio <= 1.0;
        details.push(format!("{} n={} worst={:.4}", rep.check_name, rep.instances, rep.worst_ratio));
    }
    outcome(pass, details.join("; "))
}

fn mawkish_main_term() -> Outcome {
    let p = p0();
    let rep = run_suite(Suite::MawkishDefect, &p, &SuiteConfig::new(Suite::MawkishDefect, SEED)).unwrap();
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in sample_stratified(&p, 20, SEED).unwrap() {
        let prof = profile(&p, &m).unwrap();
        let f = q_poly(&p, &m).unwrap();
        for pr in odd_primes_upto(97) {
            if (prof.c0 * prof.delta) % pr as i128 == 0 {
                continue;
            }
            checked += 1;
            let rho = rho_quadratic(&f, pr, 1).unwrap() as i64;
            if rho != 1 + jacobi(prof.delta, pr as i128).unwrap() as i64 {
                bad.push((pr, m));
            }
        }
    }
    outcome(
        rep.pass && bad.is_empty(),
        format!(
            "defect/baseline worst {:.4} over {} instances; root-count identity {} cases, {} mismatches",
            rep.worst_ratio,
            rep.instances,
            checked,
            bad.len()
        ),
    )
}

fn counting_identity() -> Outcome {
    let w = WeightSpec::default();
    let opts = CountOptions::default();
    let mut pass = true;
    let mut details = Vec::new();
    for (label, l) in [("example", example_system()), ("companion", companion_system())] {
        let pair = reduce_to_pair(&l).unwrap();
        let mut worst: f64 = 0.0;
        for b in [400.0f64, 900.0, 1600.0] {
            let t = count_t(&l, &w, b, &opts).unwrap();
            let s = count_s(&pair, &w, b.sqrt(), &opts).unwrap();
            pass &= t.points == s.points;
            worst = worst.max(rel_dev(t.value, s.value));
        }
        pass &= worst <= 1e-9;
        let fast = count_s(&pair, &w, 20.0, &opts).unwrap();
        let naive = count_s_naive(&pair, &w, 20.0).unwrap();
        let dev = rel_dev(fast.value, naive.value);
        pass &= fast.points == naive.points && dev <= 1e-12;
        details.push(format!(
            "{label}: T vs S worst rel {worst:.1e}; B=20 radial {:.10} naive {:.10} (points {}/{})",
            fast.value, naive.value, fast.points, naive.points
        ));
    }
    outcome(pass, details.join("; "))
}

fn convergence() -> Outcome {
    let w = WeightSpec::default();
    let opts = CountOptions::default();
    let bs = [16.0, 32.0, 64.0, 128.0];
    let ex = ratio_diagnostic(&reduce_to_pair(&example_system()).unwrap(), &w, &bs, &opts).unwrap();
    // the example's count vanishes identically: Q1 = 3 (mod 4) whenever u is odd and representable
    let ex_zero = ex.iter().all(|r| r.value == 0.0);
    let co = ratio_diagnostic(&reduce_to_pair(&companion_system()).unwrap(), &w, &bs, &opts).unwrap();
    let deltas: Vec<f64> = co.iter().filter_map(|r| r.delta).collect();
    let shrinks = deltas.last().unwrap() < deltas.first().unwrap();
    let fmt = |rows: &[quadpair::counting::RatioRow]| {
        rows.iter().map(|r| format!("{:.6}", r.ratio)).collect::<Vec<_>>().join(",")
    };
    outcome(
        ex_zero && shrinks,
        format!(
            "example ratios [{}] (identically zero); companion ratios [{}], deltas [{}]",
            fmt(&ex),
            fmt(&co),
            deltas.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(",")
        ),
    )
}

fn growth() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for suite in [Suite::BadM, Suite::Need1Sigma] {
        let rep = run_suite(suite, &p0(), &SuiteConfig::new(suite, SEED)).unwrap();
        pass &= rep.pass;
        let fits: Vec<String> = rep.fits.iter().map(|f| format!("{}={:.3} in {}", f.label, f.slope, f.window)).collect();
        details.push(format!("{}: {}", rep.check_name, fits.join(", ")));
        for warn in &rep.warnings {
            details.push(format!("warning: {warn}"));
        }
    }
    outcome(pass, details.join("; "))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "gauss closed form", gauss),
        (2, "ramanujan closed form", ramanujan_sums),
        (3, "multiplicativity", multiplicativity),
        (4, "structural identities", structural),
        (5, "explicit-constant suites", explicit_suites),
        (6, "mawkish main term", mawkish_main_term),
        (7, "counting identity", counting_identity),
        (8, "S(B)/B^4 convergence", convergence),
        (9, "growth fits", growth),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = !o.pass && KNOWN_FAILING.contains(&id);
        println!("{tag} [{id}] {name} ({secs:.1}s){}: {}", if known { " [known]" } else { "" }, o.detail);
        if !o.pass && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
