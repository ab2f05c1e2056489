use super::engine::{count_s, count_t, CountOptions};
use super::linear::LinearSystem;
use super::weight::WeightSpec;
use crate::error::{Error, Result};
use crate::forms::QuadPair;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioRow {
    pub b: f64,
    pub value: f64,
    /// `value / B^k` with `k = 4` for `S` and `k = 2` for `T`.
    pub ratio: f64,
    /// `|ratio - previous ratio|`, absent on the first row.
    pub delta: Option<f64>,
}

fn rows(bs: &[f64], k: i32, mut eval: impl FnMut(f64) -> Result<f64>) -> Result<Vec<RatioRow>> {
    if bs.is_empty() {
        return Err(Error::InvalidArgument("empty B list".into()));
    }
    let mut out: Vec<RatioRow> = Vec::with_capacity(bs.len());
    for &b in bs {
        let value = eval(b)?;
        let ratio = value / b.powi(k);
        let delta = out.last().map(|r| (ratio - r.ratio).abs());
        out.push(RatioRow { b, value, ratio, delta });
    }
    Ok(out)
}

/// `S(B) / B^4` along `bs`.
pub fn ratio_diagnostic(pair: &QuadPair, w: &WeightSpec, bs: &[f64], opts: &CountOptions) -> Result<Vec<RatioRow>> {
    rows(bs, 4, |b| Ok(count_s(pair, w, b, opts)?.value))
}

/// `T(B; L) / B^2` along `bs`.
pub fn ratio_diagnostic_t(l: &LinearSystem, w: &WeightSpec, bs: &[f64], opts: &CountOptions) -> Result<Vec<RatioRow>> {
    rows(bs, 2, |b| Ok(count_t(l, w, b, opts)?.value))
}
