//! Exact evaluation of `D_{p^r}(m)` for odd primes `p`.
//!
//! Primitive pairs `b mod p^s` fall into orbits under scaling by units. On an
//! orbit the six Gauss sums have constant modulus and a phase `e(X/(lambda p^s))`,
//! so each orbit contributes an integer amplitude times the Ramanujan sum
//! `c_{p^s}(X)`.

use crate::arith::{chi_minus_one, checked_pow, mod_inv, ramanujan_prime_power};
use crate::error::{Error, Result};
use crate::forms::{MVec, QuadPair};
use std::collections::HashMap;

fn exact_pow(p: u64, e: u32) -> Result<i128> {
    (p as i128).checked_pow(e).ok_or(Error::Overflow("prime power"))
}

/// `p^{2s} D*_{p^s}(m)`, an integer.
pub fn d_star_prime_power_exact(pair: &QuadPair, p: u64, s: u32, m: &MVec) -> Result<i128> {
    if p.is_multiple_of(2) {
        return Err(Error::BadPrime(p, "orbit evaluation needs an odd prime"));
    }
    if s == 0 {
        return Ok(1);
    }
    if s == 1 {
        return d_star_prime_exact(pair, p, m);
    }
    let ps = checked_pow(p, s)? as i128;
    let ps1 = ps / p as i128;
    let mi = m.0.map(|x| x as i128);
    let chi = chi_minus_one(p) as i128;
    // exact divisibility of each coordinate pair by p^j, j = 0..=s
    let pair_val = |a: i128, b: i128| -> u32 {
        let mut j = 0;
        let mut pj = 1i128;
        while j < s && a % (pj * p as i128) == 0 && b % (pj * p as i128) == 0 {
            pj *= p as i128;
            j += 1;
        }
        j
    };
    let pv = [pair_val(mi[0], mi[1]), pair_val(mi[2], mi[3]), pair_val(mi[4], mi[5])];
    let radius = |k: usize| -> [i128; 3] {
        // (m_a / p^k)^2 + (m_b / p^k)^2 for each block, where defined
        let pk = (p as i128).pow(k as u32);
        std::array::from_fn(|blk| {
            if pv[blk] as usize >= k {
                let (a, b) = (mi[2 * blk] / pk, mi[2 * blk + 1] / pk);
                a * a + b * b
            } else {
                0
            }
        })
    };
    let radii: Vec<[i128; 3]> = (0..=s as usize).map(radius).collect();
    let amp_pow: Vec<i128> = (0..=2 * s).map(|e| (p as i128).pow(e)).collect();

    let mut total: i128 = 0;
    let mut visit = |b1: i128, b2: i128| -> Result<()> {
        let ls = [
            pair.alpha as i128 * b1 + pair.beta as i128 * b2,
            pair.alpha_p as i128 * b1 + pair.beta_p as i128 * b2,
            pair.beta_pp as i128 * b2,
        ];
        let mut amp: i128 = 1;
        let mut x: i128 = 0;
        for (blk, &l) in ls.iter().enumerate() {
            let mut l = l.rem_euclid(ps);
            let mut j = 0u32;
            let mut pj = 1i128;
            if l == 0 {
                j = s;
                pj = ps;
            } else {
                while l % p as i128 == 0 {
                    l /= p as i128;
                    j += 1;
                    pj *= p as i128;
                }
            }
            if pv[blk] < j {
                return Ok(());
            }
            if j == s {
                amp *= amp_pow[2 * s as usize];
                continue;
            }
            amp *= amp_pow[(s + j) as usize];
            if (s - j) % 2 == 1 {
                amp *= chi;
            }
            let modulus = ps / pj;
            let inv = mod_inv(4 * l, modulus as u64)? as i128;
            let y = radii[j as usize][blk].rem_euclid(modulus);
            x = (x + pj * (inv * y % modulus)) % ps;
        }
        total = amp
            .checked_mul(ramanujan_prime_power(p, s, x) as i128)
            .and_then(|t| total.checked_add(t))
            .ok_or(Error::Overflow("orbit sum"))?;
        Ok(())
    };
    for t in 0..ps {
        visit(t, 1)?;
    }
    for t in 0..ps1 {
        visit(1, p as i128 * t)?;
    }
    Ok(total)
}

/// The `s = 1` case in machine integers with a table of inverses mod `p`.
fn d_star_prime_exact(pair: &QuadPair, p: u64, m: &MVec) -> Result<i128> {
    let pi = p as i64;
    if pi > 3_037_000_499 {
        return Err(Error::Overflow("prime too large"));
    }
    // inv[l] = -(p / l) inv[p mod l], then scale by the inverse of 4
    let mut inv = vec![0i64; p as usize];
    if p > 1 {
        inv[1] = 1;
    }
    for l in 2..pi {
        inv[l as usize] = (pi - (pi / l) * inv[(pi % l) as usize] % pi) % pi;
    }
    let inv_four = mod_inv(4, p)? as i64;
    let inv4: Vec<i64> = inv.iter().map(|&v| v * inv_four % pi).collect();
    let mi = m.0.map(|x| x.rem_euclid(pi));
    // per block: p divides both coordinates, and (m_a^2 + m_b^2) mod p
    let div = [0, 1, 2].map(|b| mi[2 * b] == 0 && mi[2 * b + 1] == 0);
    let rad = [0, 1, 2].map(|b| (mi[2 * b] * mi[2 * b] + mi[2 * b + 1] * mi[2 * b + 1]) % pi);
    let coef = [
        (pair.alpha.rem_euclid(pi), pair.beta.rem_euclid(pi)),
        (pair.alpha_p.rem_euclid(pi), pair.beta_p.rem_euclid(pi)),
        (0, pair.beta_pp.rem_euclid(pi)),
    ];
    let chi = chi_minus_one(p) as i128;
    let pp = p as i128;
    let mut total: i128 = 0;
    let mut visit = |b1: i64, b2: i64| {
        let mut amp: i128 = 1;
        let mut x: i64 = 0;
        for (blk, &(ca, cb)) in coef.iter().enumerate() {
            let l = (ca * b1 + cb * b2) % pi;
            if l == 0 {
                if !div[blk] {
                    return;
                }
                amp *= pp * pp;
            } else {
                amp *= pp * chi;
                x = (x + inv4[l as usize] * rad[blk]) % pi;
            }
        }
        total += amp * if x == 0 { pp - 1 } else { -1 };
    };
    for t in 0..pi {
        visit(t, 1);
    }
    visit(1, 0);
    Ok(total)
}

/// `D_{p^r}(m)` as an exact integer, from
/// `D_{p^r}(m) = sum_{p^e | (p^r, m)} p^{4e} D*_{p^{r-e}}(m / p^e)`.
pub fn d_prime_power_exact(pair: &QuadPair, p: u64, r: u32, m: &MVec) -> Result<i128> {
    if r == 0 {
        return Ok(1);
    }
    let mut numer: i128 = 0;
    let mut mm = *m;
    for e in 0..=r {
        let term = d_star_prime_power_exact(pair, p, r - e, &mm)?;
        numer = exact_pow(p, 6 * e)?
            .checked_mul(term)
            .and_then(|t| numer.checked_add(t))
            .ok_or(Error::Overflow("prime power sum"))?;
        match mm.div_exact(p as i64) {
            Some(next) if e < r => mm = next,
            _ => break,
        }
    }
    let den = exact_pow(p, 2 * r)?;
    assert_eq!(numer % den, 0, "D_(p^r)(m) must be an integer");
    Ok(numer / den)
}

/// Memoized `D_{p^r}(m)` for a fixed pair and frequency vector.
#[derive(Debug, Clone)]
pub struct OrbitCache {
    pair: QuadPair,
    m: MVec,
    values: HashMap<(u64, u32), i128>,
}

impl OrbitCache {
    pub fn new(pair: QuadPair, m: MVec) -> Self {
        Self { pair, m, values: HashMap::new() }
    }

    pub fn get(&mut self, p: u64, r: u32) -> Result<i128> {
        if let Some(&v) = self.values.get(&(p, r)) {
            return Ok(v);
        }
        let v = d_prime_power_exact(&self.pair, p, r, &self.m)?;
        self.values.insert((p, r), v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{s_dq_semi, EvalCtx};
    use super::*;

    #[test]
    fn matches_semi_on_prime_powers() {
        let ctx = EvalCtx::default();
        let pairs = [
            QuadPair::new([1, 1, 1, -1, 1]).unwrap(),
            QuadPair::new([-1, 4, 1, -2, 1]).unwrap(),
            QuadPair::new([3, 5, 2, 7, -3]).unwrap(),
        ];
        let ms = [
            MVec::ZERO,
            MVec([1, 0, 1, 0, 1, 0]),
            MVec([3, 6, 0, 9, -3, 1]),
            MVec([9, 0, 27, 9, 0, 18]),
            MVec([2, -5, 7, 1, 4, 4]),
        ];
        for pair in &pairs {
            for (p, r) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1)] {
                for m in &ms {
                    let d = p.pow(r);
                    let exact = d_prime_power_exact(pair, p, r, m).unwrap();
                    let semi = s_dq_semi(pair, d, 1, m, &ctx).unwrap();
                    assert_eq!(semi.as_integer(), Some(exact), "P={pair} p^r={d} m={m}");
                }
            }
        }
    }

    #[test]
    fn rejects_two() {
        let pair = QuadPair::new([1, 1, 1, -1, 1]).unwrap();
        assert!(d_star_prime_power_exact(&pair, 2, 1, &MVec::ZERO).is_err());
    }
}
