use super::linear::LinearSystem;
use super::weight::WeightSpec;
use crate::arith::{r2, r2_table, Compensated};
use crate::error::{Error, Result};
use crate::forms::QuadPair;
use crate::par::{chunk_ranges, ordered_map, Workers};
use serde::Serialize;

/// Fixed chunk count for the outer loops; independent of the worker count.
const CHUNKS: usize = 256;
pub const DEFAULT_COUNT_BUDGET: u64 = 20_000_000_000;

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub workers: Workers,
    /// Cap on the number of outer-loop pairs visited.
    pub budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { workers: Workers::default(), budget: DEFAULT_COUNT_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountResult {
    pub value: f64,
    /// Lattice points in the support that pass every arithmetic filter.
    pub points: u64,
}

fn check_b(b: f64) -> Result<()> {
    if b.is_nan() || b < 1.0 || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("B must be a finite real >= 1, got {b}")));
    }
    Ok(())
}

/// Largest integer strictly below `hi * scale` (and at least zero).
fn top(hi: f64, scale: f64) -> i64 {
    ((hi * scale).ceil() as i64 - 1).max(0)
}

struct Radial {
    /// Sums of two squares in the open `u`-support, with `r2(u) > 0`.
    us: Vec<(i64, u32, f64)>,
    vs: Vec<(i64, u32, f64)>,
}

fn representable(lo: f64, hi: f64, scale: f64, table: &crate::arith::R2Table, w: impl Fn(f64) -> f64) -> Vec<(i64, u32, f64)> {
    let start = ((lo * scale).floor() as i64).max(0);
    (start..=top(hi, scale))
        .filter_map(|n| {
            let r = table.get(n);
            let wt = w(n as f64 / scale);
            (r > 0 && wt != 0.0).then_some((n, r, wt))
        })
        .collect()
}

/// Weighted count over `x` in `Z^6` with `Q2(x) = 0` and `Q1(x)` odd of
/// `r(Q1(x)) W(x / B)`, summed radially over `u = x1^2+x2^2`, `v = x3^2+x4^2`.
pub fn count_s(pair: &QuadPair, w: &WeightSpec, b: f64, opts: &CountOptions) -> Result<CountResult> {
    w.validate()?;
    check_b(b)?;
    let [al, alp, be, bep, bepp] = pair.coeffs().map(|c| c as i128);
    let s = b * b;
    let sup = w.bumps.map(|x| x.support());
    let table_max = sup.iter().map(|&(_, hi)| top(hi, s)).max().unwrap_or(0) as u64;
    let table = r2_table(table_max + 1);
    let rad = Radial {
        us: representable(sup[0].0, sup[0].1, s, &table, |t| w.bumps[0].eval(t)),
        vs: representable(sup[1].0, sup[1].1, s, &table, |t| w.bumps[1].eval(t)),
    };
    let pairs = rad.us.len() as u128 * rad.vs.len() as u128;
    if pairs > opts.budget as u128 {
        return Err(Error::BudgetExceeded { needed: pairs, budget: opts.budget });
    }
    let (t_hi, q_hi) = (top(sup[2].1, s) as i128, top(sup[3].1, s) as i128);
    let ranges = chunk_ranges(rad.us.len(), CHUNKS);
    let parts = ordered_map(ranges.len(), opts.workers, |k| {
        let mut acc = Compensated::default();
        let mut points = 0u64;
        for &(u, ru, wu) in &rad.us[ranges[k].clone()] {
            let u = u as i128;
            for &(v, rv, wv) in &rad.vs {
                let v = v as i128;
                let q1 = al * u + alp * v;
                if q1 <= 0 || q1 % 2 == 0 || q1 > q_hi {
                    continue;
                }
                let num = -(be * u + bep * v);
                if num % bepp != 0 {
                    continue;
                }
                let t = num / bepp;
                if t < 0 || t > t_hi {
                    continue;
                }
                let rt = table.get(t as i64);
                if rt == 0 {
                    continue;
                }
                let wt = w.bumps[2].eval(t as f64 / s);
                let wq = w.bumps[3].eval(q1 as f64 / s);
                if wt == 0.0 || wq == 0.0 {
                    continue;
                }
                let mult = ru as u64 * rv as u64 * rt as u64;
                points += mult;
                let rq = table.get(q1 as i64);
                acc.add(mult as f64 * rq as f64 * w.scale * wu * wv * wt * wq);
            }
        }
        (acc, points)
    });
    let mut acc = Compensated::default();
    let mut points = 0;
    for (a, n) in &parts {
        acc.merge(a);
        points += n;
    }
    Ok(CountResult { value: acc.value(), points })
}

/// The same sum over every lattice point of the box, one point at a time.
pub fn count_s_naive(pair: &QuadPair, w: &WeightSpec, b: f64) -> Result<CountResult> {
    w.validate()?;
    check_b(b)?;
    let s = b * b;
    let sup = w.bumps.map(|x| x.support());
    let radius = |i: usize| (sup[i].1.max(0.0) * s).sqrt().floor() as i64 + 1;
    let (r12, r34, r56) = (radius(0), radius(1), radius(2));
    let mut acc = Compensated::default();
    let mut points = 0u64;
    for x1 in -r12..=r12 {
        for x2 in -r12..=r12 {
            let wu = w.bumps[0].eval((x1 * x1 + x2 * x2) as f64 / s);
            if wu == 0.0 {
                continue;
            }
            for x3 in -r34..=r34 {
                for x4 in -r34..=r34 {
                    let wv = w.bumps[1].eval((x3 * x3 + x4 * x4) as f64 / s);
                    if wv == 0.0 {
                        continue;
                    }
                    // Q2 = 0 fixes x5^2 + x6^2; x6 is read off rather than scanned.
                    let [_, _, be, bep, bepp] = pair.coeffs().map(|c| c as i128);
                    let num = -(be * (x1 * x1 + x2 * x2) as i128 + bep * (x3 * x3 + x4 * x4) as i128);
                    if num % bepp != 0 || num / bepp < 0 {
                        continue;
                    }
                    let t = (num / bepp) as i64;
                    for x5 in -r56..=r56 {
                        let rest = t - x5 * x5;
                        if rest < 0 {
                            continue;
                        }
                        let root = crate::arith::isqrt(rest as u128) as i64;
                        if root * root != rest {
                            continue;
                        }
                        let x6s: &[i64] = if root == 0 { &[0] } else { &[-root, root] };
                        for &x6 in x6s {
                            let x = [x1, x2, x3, x4, x5, x6];
                            debug_assert_eq!(pair.eval_q2(&x)?, 0);
                            let q1 = pair.eval_q1(&x)?;
                            if q1.rem_euclid(2) == 0 {
                                continue;
                            }
                            let val = w.eval(
                                (x1 * x1 + x2 * x2) as f64 / s,
                                (x3 * x3 + x4 * x4) as f64 / s,
                                (x5 * x5 + x6 * x6) as f64 / s,
                                q1 as f64 / s,
                            );
                            if val == 0.0 {
                                continue;
                            }
                            points += 1;
                            acc.add(r2(q1) as f64 * val);
                        }
                    }
                }
            }
        }
    }
    Ok(CountResult { value: acc.value(), points })
}

/// Weighted count over `(x, y)` in `Z^2`, `x` odd, of
/// `r(L1) r(L2) r(L3) r(L4) omega(x / B, y / B)`.
pub fn count_t(l: &LinearSystem, w: &WeightSpec, b: f64, opts: &CountOptions) -> Result<CountResult> {
    w.validate()?;
    check_b(b)?;
    let sup = w.bumps.map(|x| x.support());
    // (L1, L2) ranges over a box; its image under the inverse map bounds (x, y).
    let (l1lo, l1hi) = ((sup[0].0 * b).floor() as i64, (sup[0].1 * b).ceil() as i64);
    let (l2lo, l2hi) = ((sup[1].0 * b).floor() as i64, (sup[1].1 * b).ceil() as i64);
    let corners = [(l1lo, l2lo), (l1lo, l2hi), (l1hi, l2lo), (l1hi, l2hi)].map(|(a, c)| l.invert(a, c));
    let xlo = corners.iter().map(|c| c.0).min().unwrap_or(0);
    let xhi = corners.iter().map(|c| c.0).max().unwrap_or(0);
    let ylo = corners.iter().map(|c| c.1).min().unwrap_or(0);
    let yhi = corners.iter().map(|c| c.1).max().unwrap_or(0);
    let cells = (xhi - xlo + 1) as u128 * (yhi - ylo + 1) as u128;
    if cells > opts.budget as u128 {
        return Err(Error::BudgetExceeded { needed: cells, budget: opts.budget });
    }
    let mut lmax = 0i64;
    for i in 0..4 {
        for &(x, y) in &[(xlo, ylo), (xlo, yhi), (xhi, ylo), (xhi, yhi)] {
            lmax = lmax.max(l.eval(i, x, y).abs());
        }
    }
    let table = r2_table(lmax as u64 + 1);
    let xs: Vec<i64> = (xlo..=xhi).filter(|x| x.rem_euclid(2) == 1).collect();
    let ranges = chunk_ranges(xs.len(), CHUNKS);
    let parts = ordered_map(ranges.len(), opts.workers, |k| {
        let mut acc = Compensated::default();
        let mut points = 0u64;
        for &x in &xs[ranges[k].clone()] {
            for y in ylo..=yhi {
                let ls = [0, 1, 2, 3].map(|i| l.eval(i, x, y));
                let rs = ls.map(|v| table.get(v));
                if rs[..3].contains(&0) {
                    continue;
                }
                let val = w.eval(ls[0] as f64 / b, ls[1] as f64 / b, ls[2] as f64 / b, ls[3] as f64 / b);
                if val == 0.0 {
                    continue;
                }
                let mult = rs[0] as u64 * rs[1] as u64 * rs[2] as u64;
                points += mult;
                acc.add(mult as f64 * rs[3] as f64 * val);
            }
        }
        (acc, points)
    });
    let mut acc = Compensated::default();
    let mut points = 0;
    for (a, n) in &parts {
        acc.merge(a);
        points += n;
    }
    Ok(CountResult { value: acc.value(), points })
}
