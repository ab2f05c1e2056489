use crate::error::{Error, Result};
use crate::forms::QuadPair;
use serde::{Deserialize, Serialize};

/// Four binary linear forms `L_i(x, y) = a_i x + b_i y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub a: [i64; 4],
    pub b: [i64; 4],
}

impl LinearSystem {
    /// From `a1, b1, ..., a4, b4`.
    pub fn new(coeffs: [i64; 8]) -> Result<Self> {
        let a = [coeffs[0], coeffs[2], coeffs[4], coeffs[6]];
        let b = [coeffs[1], coeffs[3], coeffs[5], coeffs[7]];
        let l = LinearSystem { a, b };
        for i in 0..4 {
            for j in i + 1..4 {
                if l.delta(i, j) == 0 {
                    return Err(Error::InvalidLinearSystem(format!(
                        "L{} and L{} are proportional",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if l.delta(0, 1) != 1 {
            return Err(Error::InvalidLinearSystem(format!(
                "Delta_12 must be 1, got {}",
                l.delta(0, 1)
            )));
        }
        if a[3] % 2 == 0 || b[3] % 2 != 0 {
            return Err(Error::InvalidLinearSystem("L4 must be congruent to x mod 2".into()));
        }
        Ok(l)
    }

    /// `Delta_{i,j} = a_i b_j - a_j b_i`, zero-based indices.
    pub fn delta(&self, i: usize, j: usize) -> i128 {
        self.a[i] as i128 * self.b[j] as i128 - self.a[j] as i128 * self.b[i] as i128
    }

    #[inline]
    pub fn eval(&self, i: usize, x: i64, y: i64) -> i64 {
        self.a[i] * x + self.b[i] * y
    }

    /// `(x, y)` with `L1 = l1`, `L2 = l2` (uses `Delta_12 = 1`).
    pub fn invert(&self, l1: i64, l2: i64) -> (i64, i64) {
        (self.b[1] * l1 - self.b[0] * l2, -self.a[1] * l1 + self.a[0] * l2)
    }
}

/// `(alpha, alpha', beta, beta', beta'') = (-Delta_24, Delta_14, Delta_23, -Delta_13, 1)`.
pub fn reduce_to_pair(l: &LinearSystem) -> Result<QuadPair> {
    let narrow = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("resultant"));
    let pair = QuadPair::new([
        narrow(-l.delta(1, 3))?,
        narrow(l.delta(0, 3))?,
        narrow(l.delta(1, 2))?,
        narrow(-l.delta(0, 2))?,
        1,
    ])?;
    // Pluecker: Delta_24 Delta_13 - Delta_14 Delta_23 = Delta_12 Delta_34
    assert_eq!(pair.det(), l.delta(0, 1) * l.delta(2, 3));
    Ok(pair)
}
