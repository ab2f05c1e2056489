use super::sampling::{rng_from_seed, sample_of_class, sample_stratified};
use super::{row, CheckReport, CheckRow, Suite, SuiteConfig};
use crate::arith::{
    gcd_vec, gcd_with, odd_primes_upto, omega, ramanujan_brute, rho_quadratic, tau, v_p, QuadCongruence,
};
use crate::error::{Error, Result};
use crate::expsums::{d_d, d_prime_power_exact, d_star_prime_power_exact, mawkish_main_defect, Method};
use crate::forms::{profile, MClass, MVec, QuadPair};
use crate::par::ordered_map;
use rand::Rng;

/// Largest normalized main-term defect `|D*_p - p^2 chi_p(-delta)| / p`
/// observed in the brute-force pre-run over odd `p <= 97`.
pub const MAWKISH_BASELINE: f64 = 2.0;

/// Runs an explicit-constant suite.
pub fn check_explicit(suite: Suite, p: &QuadPair, cfg: &SuiteConfig) -> Result<CheckReport> {
    let rows = match suite {
        Suite::LemRho => lem_rho(cfg)?,
        Suite::HypRho => hyp_rho(p, cfg)?,
        Suite::Need2 => need2(p, cfg)?,
        Suite::MawkishBound => mawkish_bound(p, cfg)?,
        Suite::SigmaClaim => sigma_claim(p, cfg)?,
        Suite::MawkishDefect => mawkish_defect(p, cfg)?,
        _ => {
            return Err(Error::InvalidArgument(format!("{suite} is a growth suite")));
        }
    };
    Ok(CheckReport::explicit(suite.name(), rows))
}

fn good_primes(p: &QuadPair, p_max: u64) -> Result<Vec<u64>> {
    let dv = p.delta_v()?;
    Ok(odd_primes_upto(p_max).into_iter().filter(|&q| dv % q as i128 != 0).collect())
}

/// A quadratic with nonzero discriminant; half of them are built with a
/// discriminant divisible by a high power of `p`.
fn random_quadratic(rng: &mut impl Rng, p: u64, r_max: u32, forced: bool) -> QuadCongruence {
    loop {
        let f = if forced {
            let c0 = rng.gen_range(1..=50i128) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let a = rng.gen_range(0..(p as i128).pow(3));
            let k = rng.gen_range(1..=2 * r_max + 1);
            let s = rng.gen_range(1..=50i128) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let pk = (p as i128).pow(k);
            QuadCongruence::new(c0, -2 * c0 * a, c0 * (a * a - pk * s))
        } else {
            QuadCongruence::new(
                rng.gen_range(-1000..=1000),
                rng.gen_range(-1000..=1000),
                rng.gen_range(-1000..=1000),
            )
        };
        if f.disc() != 0 {
            return f;
        }
    }
}

/// `rho_f(p^r) <= 2 p^{v_p(disc f) / 2}`.
fn lem_rho(cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let rg = &cfg.ranges;
    let primes = odd_primes_upto(rg.p_max);
    let per_prime = ordered_map(primes.len(), cfg.ctx.workers, |i| -> Result<Vec<CheckRow>> {
        let pr = primes[i];
        let mut rng = rng_from_seed(cfg.seed ^ pr.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut rows = Vec::new();
        for k in 0..rg.samples {
            let f = random_quadratic(&mut rng, pr, rg.r_max, k % 2 == 1);
            let v = v_p(f.disc(), pr).as_f64();
            let bound = 2.0 * (pr as f64).powf(v / 2.0);
            for r in 1..=rg.r_max {
                let rho = rho_quadratic(&f, pr, r)?;
                let inst = format!("p={pr} r={r} f=({},{},{})", f.c0, f.c1, f.c2);
                rows.push(row("lem_rho", inst, rho as f64, bound));
            }
        }
        Ok(rows)
    });
    flatten(per_prime)
}

/// `rho(p^r) = D_{p^r}(0) <= (1 + r)^3 p^{4r}`.
fn hyp_rho(p: &QuadPair, cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for pr in good_primes(p, cfg.ranges.p_max)? {
        for r in 1..=cfg.ranges.r_max {
            let rho = d_prime_power_exact(p, pr, r, &MVec::ZERO)?;
            let bound = ((1 + r) as f64).powi(3) * (pr as f64).powi(4 * r as i32);
            rows.push(row("hyp_rho", format!("p={pr} r={r}"), rho as f64, bound));
        }
    }
    Ok(rows)
}

/// `|D_d(m)| <= 4^omega(d) tau(d)^2 d^2 (d, m) (d, delta(m))` for `(d, Delta_V) = 1`.
fn need2(p: &QuadPair, cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let dv = p.delta_v()?;
    let ms = sample_stratified(p, cfg.ranges.samples, cfg.seed)?;
    let ds: Vec<u64> = (1..=cfg.ranges.d_max)
        .filter(|&d| d % 2 == 1 && gcd_with(d, dv) == 1)
        .collect();
    let per_d = ordered_map(ds.len(), cfg.ctx.workers, |i| -> Result<Vec<CheckRow>> {
        let d = ds[i];
        let mut rows = Vec::new();
        for m in &ms {
            let delta = profile(p, m)?.delta;
            let v = d_d(p, d, m, Method::Auto, &cfg.ctx)?;
            let bound = 4f64.powi(omega(d) as i32)
                * (tau(d) as f64).powi(2)
                * (d as f64).powi(2)
                * gcd_vec(d, &m.0) as f64
                * gcd_with(d, delta) as f64;
            rows.push(row("need2", format!("d={d} m={m}"), v.abs(), bound));
        }
        Ok(rows)
    });
    flatten(per_d)
}

/// `|D*_{p^r}(m)| <= 4 (r + 1) p^{2r + min(r, v_p(delta(m)) / 2)}`.
fn mawkish_bound(p: &QuadPair, cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let ms = sample_stratified(p, cfg.ranges.samples, cfg.seed)?;
    let mut rows = Vec::new();
    for pr in good_primes(p, cfg.ranges.p_max)? {
        for r in 1..=cfg.ranges.r_max {
            for m in &ms {
                let delta = profile(p, m)?.delta;
                let num = d_star_prime_power_exact(p, pr, r, m)?;
                let value = num.unsigned_abs() as f64 / (pr as f64).powi(2 * r as i32);
                let e = 2.0 * r as f64 + v_p(delta, pr).half_capped(r);
                let bound = 4.0 * (r + 1) as f64 * (pr as f64).powf(e);
                rows.push(row("mawkish_bound", format!("p={pr} r={r} m={m}"), value, bound));
            }
        }
    }
    Ok(rows)
}

/// `|c_{p^r}(sigma(m))| <= p^{min(r, v_p(delta(m)) / 2)}` whenever `p^r | (m1, m2)`.
fn sigma_claim(p: &QuadPair, cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let base = sample_stratified(p, cfg.ranges.samples, cfg.seed)?;
    let mut rows = Vec::new();
    for pr in good_primes(p, cfg.ranges.p_max)? {
        for r in 1..=cfg.ranges.r_max {
            let pk = (pr as i64).pow(r);
            for m0 in &base {
                let mut m = *m0;
                m.0[0] *= pk;
                m.0[1] *= pk;
                let prof = profile(p, &m)?;
                let modulus = pk as u64;
                let c = ramanujan_brute(modulus, prof.sigma.rem_euclid(modulus as i128));
                let bound = (pr as f64).powf(v_p(prof.delta, pr).half_capped(r));
                rows.push(row("sigma_claim", format!("p={pr} r={r} m={m}"), c.abs().round(), bound));
            }
        }
    }
    Ok(rows)
}

/// `|D*_p(m) - p^2 chi_p(-delta(m))| / p` against the recorded baseline, for
/// vectors with `H(m) != 0` and primes not dividing `Delta_V H(m)`.
fn mawkish_defect(p: &QuadPair, cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let n = cfg.ranges.samples;
    let mut ms = sample_of_class(p, MClass::M1, n - n / 2, cfg.seed)?;
    ms.extend(sample_of_class(p, MClass::M2, n / 2, cfg.seed.wrapping_add(1))?);
    let mut rows = Vec::new();
    for m in &ms {
        let h = profile(p, m)?.h;
        for pr in good_primes(p, cfg.ranges.p_max)? {
            if h % pr as i128 == 0 {
                continue;
            }
            let defect = mawkish_main_defect(p, pr, m)?;
            rows.push(row("mawkish_defect", format!("p={pr} m={m}"), defect, MAWKISH_BASELINE));
        }
    }
    Ok(rows)
}

fn flatten(parts: Vec<Result<Vec<CheckRow>>>) -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        let mut cfg = SuiteConfig::new(suite, 1);
        cfg.ranges.samples = cfg.ranges.samples.min(8);
        cfg.ranges.p_max = cfg.ranges.p_max.min(11);
        cfg.ranges.d_max = 21;
        cfg
    }

    #[test]
    fn small_sweeps_pass() {
        let p = QuadPair::new([1, 1, 1, -1, 1]).unwrap();
        for suite in [
            Suite::LemRho,
            Suite::HypRho,
            Suite::Need2,
            Suite::MawkishBound,
            Suite::SigmaClaim,
            Suite::MawkishDefect,
        ] {
            let rep = check_explicit(suite, &p, &small(suite)).unwrap();
            assert!(rep.pass, "{suite}: worst {} at {}", rep.worst_ratio, rep.worst_instance);
            assert!(rep.instances > 0);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let p = QuadPair::new([-1, 4, 1, -2, 1]).unwrap();
        let a = check_explicit(Suite::Need2, &p, &small(Suite::Need2)).unwrap();
        let b = check_explicit(Suite::Need2, &p, &small(Suite::Need2)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn growth_suite_is_rejected() {
        let p = QuadPair::new([1, 1, 1, -1, 1]).unwrap();
        assert!(check_explicit(Suite::BadM, &p, &small(Suite::BadM)).is_err());
    }
}
