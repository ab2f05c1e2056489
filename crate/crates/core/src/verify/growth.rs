use super::fit::fit_loglog;
use super::sampling::{sample_of_class, sample_stratified};
use super::{row, CheckReport, CheckRow, FitRecord, Suite, SuiteConfig, Window};
use crate::arith::{gcd_vec, gcd_with};
use crate::error::{Error, Result};
use crate::expsums::{m_dq, onion_inner, q_q, same_support, sigma_series, Method, SigmaPoint};
use crate::forms::{class_counts, count_delta_level, profile, MClass, QuadPair};
use crate::par::ordered_map;

/// Runs a growth suite.
pub fn check_growth(suite: Suite, p: &QuadPair, cfg: &SuiteConfig) -> Result<CheckReport> {
    let (rows, fits) = match suite {
        Suite::Need1Sigma => need1_sigma(p, cfg)?,
        Suite::Need3Mixed => sup_ratio_fit(suite, p, cfg)?,
        Suite::Ghoul => sup_ratio_fit(suite, p, cfg)?,
        Suite::QqBound => sup_ratio_fit(suite, p, cfg)?,
        Suite::BadM => bad_m(p, cfg)?,
        _ => return Err(Error::InvalidArgument(format!("{suite} is an explicit suite"))),
    };
    let mut report = CheckReport::growth(suite.name(), rows, fits);
    let pass = report.pass;
    report.rows.iter_mut().for_each(|r| r.pass = pass);
    Ok(report)
}

/// Slope of `log max_{y <= x} |Sigma(y)|` against `log x` for class-M1
/// vectors. The bound holds uniformly in `x`, so the running maximum obeys
/// it too and does not dip where the partial sum happens to cross zero.
fn need1_sigma(p: &QuadPair, cfg: &SuiteConfig) -> Result<(Vec<CheckRow>, Vec<FitRecord>)> {
    let window = cfg.window.unwrap_or(Window::upper(2.9));
    let grid = &cfg.ranges.x_grid;
    if grid.len() < 4 {
        return Err(Error::InsufficientData(format!("{} grid points, need at least 4", grid.len())));
    }
    let dv = p.delta_v()?;
    let ms = sample_of_class(p, MClass::M1, cfg.ranges.samples, cfg.seed)?;
    let series = ordered_map(ms.len(), cfg.ctx.workers, |i| -> Result<Vec<SigmaPoint>> {
        let n = profile(p, &ms[i])?.n;
        let excl = dv.checked_mul(n).ok_or(Error::Overflow("excluded modulus"))?;
        let excl = u64::try_from(excl.unsigned_abs()).map_err(|_| Error::Overflow("excluded modulus"))?;
        sigma_series(p, &ms[i], grid, excl, 0)
    });
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    let xs: Vec<f64> = grid.iter().map(|&x| x as f64).collect();
    for (m, s) in ms.iter().zip(series) {
        let s = s?;
        let ys: Vec<f64> = s.iter().map(|v| v.max_abs as f64).collect();
        for (&x, &y) in xs.iter().zip(&ys) {
            rows.push(row("need1_sigma", format!("m={m} x={x}"), y, x.powf(window.hi)));
        }
        let f = fit_loglog(&xs, &ys)?;
        fits.push(FitRecord { label: format!("m={m}"), slope: f.slope, window, points: f.points });
    }
    Ok((rows, fits))
}

/// Supremum over sampled `m` of `|sum| / (explicit part of the bound)` per
/// modulus, then the growth of that supremum in the modulus.
fn sup_ratio_fit(suite: Suite, p: &QuadPair, cfg: &SuiteConfig) -> Result<(Vec<CheckRow>, Vec<FitRecord>)> {
    let window = cfg.window.unwrap_or(Window::upper(0.5));
    let dv = p.delta_v()?;
    let ms = sample_stratified(p, cfg.ranges.samples, cfg.seed)?;
    let moduli: Vec<(u64, u64)> = cfg
        .ranges
        .moduli
        .iter()
        .copied()
        .filter(|&(d, q)| match suite {
            Suite::QqBound => d == 1,
            Suite::Ghoul => gcd_with(d, dv) == 1 && (d == 1 || same_support(d, q) || q % d == 0),
            _ => gcd_with(d, dv) == 1 && same_support(d, q),
        })
        .collect();
    let per_mod = ordered_map(moduli.len(), cfg.ctx.workers, |i| -> Result<Vec<CheckRow>> {
        let (d, q) = moduli[i];
        let mut rows = Vec::new();
        for m in &ms {
            let prof = profile(p, m)?;
            let (value, bound) = match suite {
                Suite::Need3Mixed => {
                    let v = m_dq(p, d, q, m, Method::Semi, &cfg.ctx)?;
                    let b = (d as f64).powi(2)
                        * (q as f64).powi(3)
                        * gcd_vec(d, &m.0) as f64
                        * (gcd_vec(q, &m.0) as f64).powi(2)
                        * gcd_with(d, prof.delta) as f64
                        * gcd_with(q, prof.q2_star) as f64;
                    (v.abs(), b)
                }
                Suite::Ghoul => {
                    let v = onion_inner(p, d, q, 1, m, &cfg.ctx)?;
                    let b = (d as f64).powi(4)
                        * (q as f64).powi(3)
                        * gcd_with(d, prof.delta) as f64
                        * gcd_with(q, prof.q2_star) as f64;
                    (v.abs(), b)
                }
                _ => {
                    let v = q_q(p, q, m, Method::Semi, &cfg.ctx)?;
                    (v.abs(), (q as f64).powi(3) * gcd_with(q, prof.q2_star) as f64)
                }
            };
            rows.push(row(suite.name(), format!("d={d} q={q} m={m}"), value, bound));
        }
        Ok(rows)
    });
    let mut rows = Vec::new();
    let mut xs = Vec::new();
    let mut sups = Vec::new();
    for (part, &(d, q)) in per_mod.into_iter().zip(&moduli) {
        let part = part?;
        let sup = part.iter().map(|r| r.ratio).fold(0.0, f64::max);
        xs.push((d * q) as f64);
        sups.push(sup);
        rows.extend(part);
    }
    let f = fit_loglog(&xs, &sups)?;
    let fit = FitRecord { label: "sup ratio vs dq".into(), slope: f.slope, window, points: f.points };
    Ok((rows, vec![fit]))
}

/// Exponents of `R_i(M)` and `R(A; M)` for `A in {0, 1}`.
fn bad_m(p: &QuadPair, cfg: &SuiteConfig) -> Result<(Vec<CheckRow>, Vec<FitRecord>)> {
    let grid = &cfg.ranges.m_grid;
    let quartic = cfg.window.unwrap_or(Window::new(3.4, 4.4));
    let quadratic = cfg.window.unwrap_or(Window::new(1.6, 2.6));
    let per_m = ordered_map(grid.len(), cfg.ctx.workers, |i| -> Result<[u64; 5]> {
        let m = grid[i];
        let c = class_counts(p, m)?;
        Ok([c[1], c[2], c[3], count_delta_level(p, 0, m)?, count_delta_level(p, 1, m)?])
    });
    let counts: Vec<[u64; 5]> = per_m.into_iter().collect::<Result<_>>()?;
    let labels = [("R2", quartic), ("R3", quartic), ("R4", quadratic), ("R(0)", quadratic), ("R(1)", quadratic)];
    let xs: Vec<f64> = grid.iter().map(|&m| m as f64).collect();
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for (k, (label, window)) in labels.iter().enumerate() {
        let ys: Vec<f64> = counts.iter().map(|c| c[k] as f64).collect();
        for (&x, &y) in xs.iter().zip(&ys) {
            rows.push(row("bad_m", format!("{label} M={x}"), y, x.powf(window.hi)));
        }
        let f = fit_loglog(&xs, &ys)?;
        fits.push(FitRecord { label: label.to_string(), slope: f.slope, window: *window, points: f.points });
    }
    Ok((rows, fits))
}
