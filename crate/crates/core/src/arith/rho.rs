use super::checked_pow;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest modulus any exhaustive residue scan will accept.
pub const SCAN_CAP: u64 = 1_000_000;

/// `f(x) = c0 x^2 + c1 x + c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadCongruence {
    pub c0: i128,
    pub c1: i128,
    pub c2: i128,
}

impl QuadCongruence {
    pub fn new(c0: i128, c1: i128, c2: i128) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn disc(&self) -> i128 {
        self.c1 * self.c1 - 4 * self.c0 * self.c2
    }

    /// `f(x) mod n` in `[0, n)`.
    pub fn eval_mod(&self, x: i128, n: i128) -> i128 {
        let x = x.rem_euclid(n);
        let c0 = self.c0.rem_euclid(n);
        let c1 = self.c1.rem_euclid(n);
        let c2 = self.c2.rem_euclid(n);
        ((c0 * x % n * x % n) + c1 * x % n + c2) % n
    }
}

/// Number of roots of `f` modulo `p^r`, by scanning every residue.
pub fn rho_quadratic(f: &QuadCongruence, p: u64, r: u32) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let n = checked_pow(p, r).map_err(|_| Error::ModulusTooLarge { modulus: u64::MAX, cap: SCAN_CAP })?;
    if n > SCAN_CAP {
        return Err(Error::ModulusTooLarge { modulus: n, cap: SCAN_CAP });
    }
    let ni = n as i128;
    Ok((0..ni).filter(|&x| f.eval_mod(x, ni) == 0).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(rho_quadratic(&QuadCongruence::new(1, 0, -1), 3, 2).unwrap(), 2);
        assert_eq!(rho_quadratic(&QuadCongruence::new(1, 0, 0), 3, 2).unwrap(), 3);
        assert_eq!(rho_quadratic(&QuadCongruence::new(1, 0, 1), 3, 1).unwrap(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let f = QuadCongruence::new(1, 0, 1);
        assert!(matches!(rho_quadratic(&f, 11, 6), Err(Error::ModulusTooLarge { .. })));
    }

    #[test]
    fn zero_polynomial_has_every_root() {
        assert_eq!(rho_quadratic(&QuadCongruence::new(0, 0, 0), 5, 2).unwrap(), 25);
    }
}
