use super::orbit::OrbitCache;
use crate::arith::{chi4, factor};
use crate::error::{Error, Result};
use crate::forms::{MVec, QuadPair};
use num_integer::Integer;

/// Exact `sum_{lo < d <= hi, (d, excl) = 1} chi(d) D_d(m)`, with every odd
/// `D_d` assembled from cached prime-power factors.
pub fn sigma_partial(p: &QuadPair, m: &MVec, lo: u64, hi: u64, excl: u64) -> Result<i128> {
    let series = sigma_series(p, m, &[hi], excl, lo)?;
    Ok(series[0].value)
}

/// A partial sum and the largest `|partial sum|` seen up to that point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaPoint {
    pub x: u64,
    pub value: i128,
    pub max_abs: u128,
}

/// `sum_{lo < d <= x} ...` for each `x` in the increasing list `xs`.
pub fn sigma_series(p: &QuadPair, m: &MVec, xs: &[u64], excl: u64, lo: u64) -> Result<Vec<SigmaPoint>> {
    if excl == 0 {
        return Err(Error::InvalidArgument("excluded modulus must be nonzero".into()));
    }
    if xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("x grid must be increasing".into()));
    }
    let mut cache = OrbitCache::new(*p, *m);
    let mut out = Vec::with_capacity(xs.len());
    let mut acc: i128 = 0;
    let mut max_abs: u128 = 0;
    let mut d = lo + 1;
    for &x in xs {
        while d <= x {
            let chi = chi4(d as i128);
            if chi != 0 && d.gcd(&excl) == 1 {
                let mut v: i128 = 1;
                for (pr, r) in factor(d) {
                    v = v.checked_mul(cache.get(pr, r)?).ok_or(Error::Overflow("D_d"))?;
                }
                acc = acc.checked_add(chi as i128 * v).ok_or(Error::Overflow("Sigma(x)"))?;
                max_abs = max_abs.max(acc.unsigned_abs());
            }
            d += 1;
        }
        out.push(SigmaPoint { x, value: acc, max_abs });
    }
    Ok(out)
}
