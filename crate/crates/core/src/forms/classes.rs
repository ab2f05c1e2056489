use super::{profile, profile_from_xi, MClass, MVec, QuadPair};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Largest box half-width accepted by the class counters.
pub const BOX_CAP: u32 = 12;

fn check_box(m: u32) -> Result<()> {
    if m > BOX_CAP {
        return Err(Error::BoxTooLarge { m, cap: BOX_CAP });
    }
    Ok(())
}

/// Number of `(a, b)` with `|a|, |b| <= m` for each value of `a^2 + b^2`.
fn radius_histogram(m: u32) -> Vec<(i128, u64)> {
    let mut h = BTreeMap::new();
    let m = m as i64;
    for a in -m..=m {
        for b in -m..=m {
            *h.entry((a * a + b * b) as i128).or_insert(0u64) += 1;
        }
    }
    h.into_iter().collect()
}

/// Runs `f` on every profile in the box `|m| <= M`, with the number of
/// vectors sharing it.
fn for_each_radius_triple(
    p: &QuadPair,
    m: u32,
    mut f: impl FnMut(&super::MProfile, u64),
) -> Result<()> {
    let hist = radius_histogram(m);
    for &(x1, n1) in &hist {
        for &(x3, n3) in &hist {
            for &(x5, n5) in &hist {
                let pr = profile_from_xi(p, [x1, x3, x5])?;
                f(&pr, n1 * n3 * n5);
            }
        }
    }
    Ok(())
}

/// `R_i(M)` for all four classes at once, indexed by `MClass::index`.
pub fn class_counts(p: &QuadPair, m: u32) -> Result<[u64; 4]> {
    check_box(m)?;
    let mut out = [0u64; 4];
    for_each_radius_triple(p, m, |pr, n| out[pr.class.index()] += n)?;
    Ok(out)
}

/// `#{m in M_i : |m| <= M}` under the max-norm.
pub fn count_class(p: &QuadPair, class: MClass, m: u32) -> Result<u64> {
    Ok(class_counts(p, m)?[class.index()])
}

/// `#{|m| <= M : delta(m) = A}`.
pub fn count_delta_level(p: &QuadPair, a: i128, m: u32) -> Result<u64> {
    check_box(m)?;
    let mut out = 0;
    for_each_radius_triple(p, m, |pr, n| {
        if pr.delta == a {
            out += n;
        }
    })?;
    Ok(out)
}

/// Class counts by visiting every vector of the box; reference for
/// `class_counts`.
pub fn scan_class_counts(p: &QuadPair, m: u32) -> Result<[u64; 4]> {
    check_box(m)?;
    let m = m as i64;
    let mut out = [0u64; 4];
    let mut v = [-m; 6];
    loop {
        out[profile(p, &MVec(v))?.class.index()] += 1;
        let mut i = 0;
        while i < 6 {
            if v[i] < m {
                v[i] += 1;
                break;
            }
            v[i] = -m;
            i += 1;
        }
        if i == 6 {
            return Ok(out);
        }
    }
}
