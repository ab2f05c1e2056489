//! Exact modular and multiplicative arithmetic.

mod gauss;
mod r2;
mod ramanujan;
mod rho;
mod sumvalue;

pub use gauss::{gauss_1d, gauss_brute, gauss_quad};
pub use r2::{r2, r2_table, R2Table};
pub use ramanujan::{ramanujan, ramanujan_brute, ramanujan_prime_power};
pub use rho::{rho_quadratic, QuadCongruence, SCAN_CAP};
pub use sumvalue::{root_of_unity, tolerance_for, ComplexAcc, Compensated, Roots, SumValue};

use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Inverse of `a` modulo `n`, in `[0, n)`.
pub fn mod_inv(a: i128, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    let n_i = n as i128;
    let e = a.rem_euclid(n_i).extended_gcd(&n_i);
    if e.gcd != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(e.x.rem_euclid(n_i) as u64)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::BadModulus(n));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// The non-trivial character modulo 4.
pub fn chi4(d: i128) -> i8 {
    match d.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `1` for `p = 1 mod 4`, `i` for `p = 3 mod 4`.
pub fn eps_p(p: u64) -> Result<Complex64> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::BadPrime(p, "expected an odd prime"));
    }
    Ok(if p % 4 == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    })
}

/// `chi_p(-1)` for an odd prime `p`, as `+1` or `-1`.
pub fn chi_minus_one(p: u64) -> i8 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// p-adic valuation with an explicit infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Inf,
}

impl Valuation {
    /// `min(r, v/2)` as a real exponent; infinite valuations give `r`.
    pub fn half_capped(self, r: u32) -> f64 {
        match self {
            Valuation::Finite(v) => (r as f64).min(v as f64 / 2.0),
            Valuation::Inf => r as f64,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Valuation::Finite(v) => v as f64,
            Valuation::Inf => f64::INFINITY,
        }
    }

    pub fn at_least(self, k: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Inf => true,
        }
    }
}

pub fn v_p(n: i128, p: u64) -> Valuation {
    if n == 0 {
        return Valuation::Inf;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor expects n >= 1");
    let mut out = Vec::new();
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn tau(n: u64) -> u64 {
    factor(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn omega(n: u64) -> u32 {
    factor(n).len() as u32
}

pub fn mu(n: u64) -> i8 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn phi(n: u64) -> u64 {
    factor(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n as u128);
    r * r == n as u128
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `gcd(d, n)` with the convention `gcd(d, 0) = d`.
pub fn gcd_with(d: u64, n: i128) -> u64 {
    (d as i128).gcd(&n) as u64
}

/// `gcd(d, m_1, ..., m_k)`.
pub fn gcd_vec(d: u64, m: &[i64]) -> u64 {
    m.iter()
        .fold(d as i128, |g, &x| g.gcd(&(x as i128))) as u64
}

/// Distinct primes dividing `n`.
pub fn prime_support(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn checked_pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e).ok_or(Error::Overflow("power"))
}

/// Odd primes up to `n` (inclusive).
pub fn odd_primes_upto(n: u64) -> Vec<u64> {
    (3..=n).step_by(2).filter(|&p| is_prime(p)).collect()
}

/// Smallest-prime-factor sieve on `[0, n]`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(4, 5).unwrap(), 4);
        assert_eq!(mod_inv(1, 7).unwrap(), 1);
        assert_eq!(mod_inv(3, 4).unwrap(), 3);
        assert_eq!(mod_inv(-1, 7).unwrap(), 6);
        assert!(matches!(mod_inv(6, 9), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 5).unwrap(), -1);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(12345, 1).unwrap(), 1);
        assert_eq!(jacobi(6, 9).unwrap(), 0);
        assert!(jacobi(1, 4).is_err());
        assert!(jacobi(1, -3).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in odd_primes_upto(60) {
            for a in -70i128..70 {
                let euler = {
                    let mut acc = 1u64;
                    let base = a.rem_euclid(p as i128) as u64;
                    for _ in 0..(p - 1) / 2 {
                        acc = acc * base % p;
                    }
                    acc
                };
                let expect = match euler {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(jacobi(a, p as i128).unwrap(), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn characters() {
        assert_eq!(chi4(1), 1);
        assert_eq!(chi4(3), -1);
        assert_eq!(chi4(6), 0);
        assert_eq!(chi4(-1), -1);
        assert_eq!(eps_p(5).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(eps_p(3).unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(eps_p(13).unwrap(), Complex64::new(1.0, 0.0));
        assert!(eps_p(2).is_err());
        assert!(eps_p(9).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(v_p(18, 3), Valuation::Finite(2));
        assert_eq!(v_p(7, 3), Valuation::Finite(0));
        assert_eq!(v_p(0, 5), Valuation::Inf);
        assert_eq!(v_p(-50, 5), Valuation::Finite(2));
        assert_eq!(Valuation::Inf.half_capped(3), 3.0);
        assert_eq!(Valuation::Finite(3).half_capped(3), 1.5);
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(tau(12), 6);
        assert_eq!(omega(12), 2);
        assert_eq!(mu(12), 0);
        assert_eq!(mu(30), -1);
        assert_eq!(mu(1), 1);
        assert_eq!(phi(1), 1);
        assert_eq!(phi(36), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(!is_square(8));
        assert!(is_square(0));
        assert!(!is_square(-4));
        assert!(is_square(1 << 60));
    }

    #[test]
    fn gcd_conventions() {
        assert_eq!(gcd_with(9, 0), 9);
        assert_eq!(gcd_vec(9, &[3, 0, 6, 0, 3, 0]), 3);
        assert_eq!(gcd_vec(9, &[0; 6]), 9);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let spf = spf_sieve(500);
        for n in 2..=500u64 {
            assert_eq!(spf[n as usize] as u64, factor(n)[0].0);
        }
    }
}
