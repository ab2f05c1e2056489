use super::orbit::d_star_prime_power_exact;
use super::semi::GaussTable;
use super::EvalCtx;
use crate::arith::{
    chi_minus_one, checked_pow, divisors, gauss_1d, gcd_vec, is_prime, jacobi, ramanujan_prime_power,
    root_of_unity, v_p, ComplexAcc, SumValue, Valuation,
};
use crate::error::{Error, Result};
use crate::forms::{profile, q_poly, MVec, QuadPair};
use num_integer::Integer;

fn sat_pow(d: u64, e: u32) -> u64 {
    (d as u128).saturating_pow(e).min(u64::MAX as u128) as u64
}

/// `D_d(m; b) = sum_{k mod d} e_d(b1 Q1(k) + b2 Q2(k) + m.k)`, as a product of
/// six one-dimensional sums.
pub fn d_d_b(p: &QuadPair, d: u64, m: &MVec, b1: i64, b2: i64, ctx: &EvalCtx) -> Result<SumValue> {
    ctx.charge(6 * d as u128)?;
    let c1 = p.q1_diag();
    let c2 = p.q2_diag();
    let mut z = num_complex::Complex64::new(1.0, 0.0);
    for i in 0..6 {
        let l = b1 as i128 * c1[i] as i128 + b2 as i128 * c2[i] as i128;
        z *= gauss_1d(l, m.0[i] as i128, d);
    }
    Ok(SumValue::new(z, sat_pow(d, 6)))
}

/// The same sum over all `d^6` residues, for small `d`.
pub fn d_d_b_direct(p: &QuadPair, d: u64, m: &MVec, b1: i64, b2: i64, ctx: &EvalCtx) -> Result<SumValue> {
    ctx.charge((d as u128).pow(6))?;
    let di = d as i64;
    let mut acc = ComplexAcc::default();
    let mut k = [0i64; 6];
    loop {
        let q1 = p.eval_q1(&k)?;
        let q2 = p.eval_q2(&k)?;
        let lin: i128 = (0..6).map(|i| m.0[i] as i128 * k[i] as i128).sum();
        acc.add(root_of_unity(b1 as i128 * q1 + b2 as i128 * q2 + lin, d));
        let mut i = 0;
        while i < 6 {
            k[i] += 1;
            if k[i] < di {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == 6 {
            break;
        }
    }
    Ok(SumValue::new(acc.value(), sat_pow(d, 6)))
}

fn primitive(b1: u64, b2: u64, d: u64) -> bool {
    b1.gcd(&b2).gcd(&d) == 1
}

/// `D*_d(m) = d^-2 sum_{b mod d, (b, d) = 1} D_d(m; b)`.
pub fn d_star(p: &QuadPair, d: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    if d == 1 {
        return Ok(SumValue::real(1.0, 1));
    }
    ctx.charge((d as u128).pow(3) * 6)?;
    let table = GaussTable::new(m, d);
    let mut acc = ComplexAcc::default();
    for b1 in 0..d {
        for b2 in 0..d {
            if primitive(b1, b2, d) {
                acc.add(table.twisted(p, b1 as i128, b2 as i128));
            }
        }
    }
    let scale = 1.0 / (d as f64 * d as f64);
    Ok(SumValue::new(acc.value() * scale, sat_pow(d, 8)))
}

/// Right side of the gcd extraction `sum_{h | (d, m)} h^4 D*_{d/h}(m/h)`.
pub fn seek_rhs(p: &QuadPair, d: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    let g = gcd_vec(d, &m.0);
    let mut acc = ComplexAcc::default();
    for h in divisors(g) {
        let mh = m.div_exact(h as i64).expect("h divides m");
        let v = d_star(p, d / h, &mh, ctx)?;
        acc.add(v.value() * (h as f64).powi(4));
    }
    Ok(SumValue::new(acc.value(), sat_pow(d, 8)))
}

fn require_good_prime(p: &QuadPair, pr: u64) -> Result<()> {
    if pr.is_multiple_of(2) || !is_prime(pr) {
        return Err(Error::BadPrime(pr, "expected an odd prime"));
    }
    if p.delta_v()? % pr as i128 == 0 {
        return Err(Error::BadPrime(pr, "p divides Delta_V"));
    }
    Ok(())
}

fn g_valuation(p: &QuadPair, b1: i64, b2: i64, pr: u64, r: u32) -> Result<u32> {
    let (_, _, _, g) = p.g_of_b(b1, b2)?;
    Ok(match v_p(g, pr) {
        Valuation::Inf => r,
        Valuation::Finite(v) => v.min(r),
    })
}

/// Contribution to `D*_{p^r}(m)` from primitive `b` with `p^j || g(b)`
/// (`j < r`) or `p^r | g(b)` (`j = r`).
pub fn d_j_split(p: &QuadPair, pr: u64, r: u32, m: &MVec, j: u32, ctx: &EvalCtx) -> Result<SumValue> {
    require_good_prime(p, pr)?;
    if j > r || r == 0 {
        return Err(Error::InvalidArgument(format!("need 0 <= j <= r, r >= 1 (j={j}, r={r})")));
    }
    let d = checked_pow(pr, r)?;
    ctx.charge((d as u128).pow(3) * 6)?;
    let table = GaussTable::new(m, d);
    let mut acc = ComplexAcc::default();
    for b1 in 0..d {
        for b2 in 0..d {
            if primitive(b1, b2, d) && g_valuation(p, b1 as i64, b2 as i64, pr, r)? == j {
                acc.add(table.twisted(p, b1 as i128, b2 as i128));
            }
        }
    }
    let scale = 1.0 / (d as f64 * d as f64);
    Ok(SumValue::new(acc.value() * scale, sat_pow(d, 8)))
}

/// `p^r chi_{p^r}(-1) sum_{b mod p^r, p not | g(b,1)} c_{p^r}(q_m(b))`.
pub fn d0_closed(p: &QuadPair, pr: u64, r: u32, m: &MVec) -> Result<SumValue> {
    require_good_prime(p, pr)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let d = checked_pow(pr, r)?;
    let f = q_poly(p, m)?;
    let mut sum: i128 = 0;
    for b in 0..d as i64 {
        let (_, _, _, g) = p.g_of_b(b, 1)?;
        if g % pr as i128 != 0 {
            sum += ramanujan_prime_power(pr, r, f.eval_mod(b as i128, d as i128)) as i128;
        }
    }
    let sign = if r % 2 == 1 { chi_minus_one(pr) as i128 } else { 1 };
    let v = d as i128 * sign * sum;
    Ok(SumValue::real(v as f64, sat_pow(d, 8)))
}

/// `|D*_p(m) - p^2 chi_p(-delta(m))| / p`.
pub fn mawkish_main_defect(p: &QuadPair, pr: u64, m: &MVec) -> Result<f64> {
    require_good_prime(p, pr)?;
    let prof = profile(p, m)?;
    if prof.h % pr as i128 == 0 {
        return Err(Error::PreconditionViolated(format!("{pr} divides H(m)")));
    }
    let star = d_star_prime_power_exact(p, pr, 1, m)?;
    let main = (pr as i128).pow(4) * jacobi(-prof.delta, pr as i128)? as i128;
    // star and main are both scaled by p^2
    Ok((star - main).abs() as f64 / (pr as f64).powi(3))
}
