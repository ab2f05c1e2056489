//! The diagonal quadratic pair and the invariants of a frequency vector.

mod classes;

pub use classes::{class_counts, count_class, count_delta_level, scan_class_counts, BOX_CAP};

use crate::arith::{is_square, QuadCongruence};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `Q1 = a(x1^2+x2^2) + a'(x3^2+x4^2)`,
/// `Q2 = b(x1^2+x2^2) + b'(x3^2+x4^2) + b''(x5^2+x6^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPair {
    pub alpha: i64,
    pub alpha_p: i64,
    pub beta: i64,
    pub beta_p: i64,
    pub beta_pp: i64,
}

impl QuadPair {
    pub fn new(coeffs: [i64; 5]) -> Result<Self> {
        let [alpha, alpha_p, beta, beta_p, beta_pp] = coeffs;
        if coeffs.contains(&0) {
            return Err(Error::DegeneratePair("every coefficient must be nonzero"));
        }
        let p = Self { alpha, alpha_p, beta, beta_p, beta_pp };
        if p.det() == 0 {
            return Err(Error::DegeneratePair("alpha*beta' - alpha'*beta vanishes"));
        }
        p.delta_v()?;
        Ok(p)
    }

    pub fn coeffs(&self) -> [i64; 5] {
        [self.alpha, self.alpha_p, self.beta, self.beta_p, self.beta_pp]
    }

    /// `alpha beta' - alpha' beta`.
    pub fn det(&self) -> i128 {
        self.alpha as i128 * self.beta_p as i128 - self.alpha_p as i128 * self.beta as i128
    }

    /// `2 alpha alpha' beta beta' beta'' (alpha beta' - alpha' beta)`.
    pub fn delta_v(&self) -> Result<i128> {
        [self.alpha_p, self.beta, self.beta_p, self.beta_pp]
            .iter()
            .try_fold(2 * self.alpha as i128, |acc, &c| acc.checked_mul(c as i128))
            .and_then(|acc| acc.checked_mul(self.det()))
            .ok_or(Error::Overflow("Delta_V"))
    }

    /// Diagonal coefficients of `Q1` per coordinate.
    pub fn q1_diag(&self) -> [i64; 6] {
        [self.alpha, self.alpha, self.alpha_p, self.alpha_p, 0, 0]
    }

    /// Diagonal coefficients of `Q2` per coordinate.
    pub fn q2_diag(&self) -> [i64; 6] {
        [self.beta, self.beta, self.beta_p, self.beta_p, self.beta_pp, self.beta_pp]
    }

    pub fn eval_q1(&self, x: &[i64; 6]) -> Result<i128> {
        diag_eval(&self.q1_diag(), x)
    }

    pub fn eval_q2(&self, x: &[i64; 6]) -> Result<i128> {
        diag_eval(&self.q2_diag(), x)
    }

    /// `(L, L', L'', g)` at `(b1, b2)`.
    pub fn g_of_b(&self, b1: i64, b2: i64) -> Result<(i128, i128, i128, i128)> {
        let (b1, b2) = (b1 as i128, b2 as i128);
        let l = self.alpha as i128 * b1 + self.beta as i128 * b2;
        let lp = self.alpha_p as i128 * b1 + self.beta_p as i128 * b2;
        let lpp = self.beta_pp as i128 * b2;
        let g = l
            .checked_mul(lp)
            .and_then(|x| x.checked_mul(lpp))
            .ok_or(Error::Overflow("g(b)"))?;
        Ok((l, lp, lpp, g))
    }
}

impl fmt::Display for QuadPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        write!(f, "{},{},{},{},{}", c[0], c[1], c[2], c[3], c[4])
    }
}

fn diag_eval(c: &[i64; 6], x: &[i64; 6]) -> Result<i128> {
    let mut acc: i128 = 0;
    for i in 0..6 {
        let sq = (x[i] as i128).checked_mul(x[i] as i128);
        acc = sq
            .and_then(|s| s.checked_mul(c[i] as i128))
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("quadratic form"))?;
    }
    Ok(acc)
}

/// A frequency vector in `Z^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MVec(pub [i64; 6]);

impl MVec {
    pub const ZERO: MVec = MVec([0; 6]);

    /// Block radii `(m1^2+m2^2, m3^2+m4^2, m5^2+m6^2)`.
    pub fn xi(&self) -> Result<[i128; 3]> {
        let m = &self.0;
        let mut out = [0i128; 3];
        for (j, o) in out.iter_mut().enumerate() {
            let (a, b) = (m[2 * j] as i128, m[2 * j + 1] as i128);
            *o = a
                .checked_mul(a)
                .zip(b.checked_mul(b))
                .and_then(|(x, y)| x.checked_add(y))
                .ok_or(Error::Overflow("block radius"))?;
        }
        Ok(out)
    }

    pub fn max_norm(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn scale(&self, t: i64) -> MVec {
        MVec(self.0.map(|x| x * t))
    }

    /// Coordinate-wise exact division; `None` unless `h` divides every entry.
    pub fn div_exact(&self, h: i64) -> Option<MVec> {
        self.0.iter().all(|x| x % h == 0).then(|| MVec(self.0.map(|x| x / h)))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 6]
    }
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "{},{},{},{},{},{}", m[0], m[1], m[2], m[3], m[4], m[5])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MClass {
    M1,
    M2,
    M3,
    M4,
}

impl MClass {
    pub const ALL: [MClass; 4] = [MClass::M1, MClass::M2, MClass::M3, MClass::M4];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MProfile {
    pub c0: i128,
    pub c1: i128,
    pub c2: i128,
    pub delta: i128,
    pub sigma: i128,
    pub h: i128,
    pub q2_star: i128,
    pub n: i128,
    pub class: MClass,
}

/// Every invariant of `m` relative to `P`.
pub fn profile(p: &QuadPair, m: &MVec) -> Result<MProfile> {
    profile_from_xi(p, m.xi()?)
}

/// The profile depends on `m` only through its three block radii.
pub fn profile_from_xi(p: &QuadPair, xi: [i128; 3]) -> Result<MProfile> {
    let ov = || Error::Overflow("profile");
    let [x1, x3, x5] = xi;
    let (a, ap, b, bp, bpp) = (
        p.alpha as i128,
        p.alpha_p as i128,
        p.beta as i128,
        p.beta_p as i128,
        p.beta_pp as i128,
    );
    let lin = |u: i128, v: i128, w: i128| -> Result<i128> {
        u.checked_mul(x1)
            .zip(v.checked_mul(x3))
            .zip(w.checked_mul(x5))
            .and_then(|((s, t), r)| s.checked_add(t)?.checked_add(r))
            .ok_or_else(ov)
    };
    let c0 = lin(0, 0, a * ap)?;
    let c1 = lin(ap * bpp, a * bpp, a * bp + ap * b)?;
    let c2 = lin(bp * bpp, b * bpp, b * bp)?;
    let sigma = lin(ap * bpp, a * bpp, a * bp - ap * b)?;
    let delta = c1
        .checked_mul(c1)
        .zip(c0.checked_mul(c2).and_then(|x| x.checked_mul(4)))
        .and_then(|(s, t)| s.checked_sub(t))
        .ok_or_else(ov)?;
    let h = x1.checked_mul(x3).and_then(|x| x.checked_mul(x5)).ok_or_else(ov)?;
    let n = match (delta != 0, h != 0) {
        (true, true) => delta.checked_mul(h).ok_or_else(ov)?,
        (false, true) => h,
        (true, false) => delta,
        (false, false) => 1,
    };
    let class = classify_values(delta, h, c2);
    Ok(MProfile { c0, c1, c2, delta, sigma, h, q2_star: c2, n, class })
}

fn classify_values(delta: i128, h: i128, q2: i128) -> MClass {
    let sq = is_square(delta);
    match (h != 0, delta != 0 && q2 != 0) {
        (true, _) if !sq && q2 != 0 => MClass::M1,
        (true, _) => MClass::M2,
        (false, true) => MClass::M3,
        (false, false) => MClass::M4,
    }
}

pub fn classify_m(p: &QuadPair, m: &MVec) -> Result<MClass> {
    Ok(profile(p, m)?.class)
}

/// `q_m(b) = c0 b^2 + c1 b + c2`.
pub fn q_poly(p: &QuadPair, m: &MVec) -> Result<QuadCongruence> {
    let pr = profile(p, m)?;
    Ok(QuadCongruence::new(pr.c0, pr.c1, pr.c2))
}
