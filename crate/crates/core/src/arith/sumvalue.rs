use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// A complex value of an exponential sum together with the size of the
/// summation domain it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumValue {
    pub re: f64,
    pub im: f64,
    pub n_terms: u64,
}

impl SumValue {
    pub fn new(z: Complex64, n_terms: u64) -> Self {
        Self { re: z.re, im: z.im, n_terms }
    }

    pub fn real(x: f64, n_terms: u64) -> Self {
        Self { re: x, im: 0.0, n_terms }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.value().norm()
    }

    /// `1e-6 * sqrt(max(1, n_terms))`.
    pub fn tolerance(&self) -> f64 {
        tolerance_for(self.n_terms)
    }

    /// Coordinate-wise comparison at the tolerance of the larger term count.
    pub fn approx_eq(&self, other: &SumValue) -> bool {
        let tol = tolerance_for(self.n_terms.max(other.n_terms));
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }

    /// Largest coordinate difference.
    pub fn deviation(&self, other: &SumValue) -> f64 {
        (self.re - other.re).abs().max((self.im - other.im).abs())
    }

    /// Product of two values; the term count is the product of the two
    /// (saturating), matching the size of the combined domain.
    pub fn mul(&self, other: &SumValue) -> SumValue {
        SumValue::new(
            self.value() * other.value(),
            self.n_terms.saturating_mul(other.n_terms),
        )
    }

    /// Nearest integer to the real part, if the value is within tolerance of it.
    pub fn as_integer(&self) -> Option<i128> {
        let r = self.re.round();
        let tol = self.tolerance();
        ((self.re - r).abs() <= tol && self.im.abs() <= tol).then_some(r as i128)
    }
}

pub fn tolerance_for(n_terms: u64) -> f64 {
    1e-6 * (n_terms.max(1) as f64).sqrt()
}

/// Neumaier-compensated accumulator for real sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Compensated) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexAcc {
    re: Compensated,
    im: Compensated,
}

impl ComplexAcc {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexAcc) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `e(k/n) = exp(2 pi i k / n)`, with `k` reduced modulo `n` first.
pub fn root_of_unity(k: i128, n: u64) -> Complex64 {
    let k = k.rem_euclid(n as i128) as f64;
    let theta = TAU * k / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Table of all `n`-th roots of unity, indexed by residue.
#[derive(Debug, Clone)]
pub struct Roots {
    n: u64,
    table: Vec<Complex64>,
}

impl Roots {
    pub fn new(n: u64) -> Self {
        let table = (0..n).map(|k| root_of_unity(k as i128, n)).collect();
        Self { n, table }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// `e(k/n)` for an already reduced residue.
    #[inline]
    pub fn at(&self, k: u64) -> Complex64 {
        self.table[k as usize]
    }

    /// `e(k/n)` for any integer.
    #[inline]
    pub fn of(&self, k: i128) -> Complex64 {
        self.table[k.rem_euclid(self.n as i128) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_scales_with_terms() {
        assert_eq!(tolerance_for(0), 1e-6);
        assert!((tolerance_for(100) - 1e-5).abs() < 1e-18);
    }

    #[test]
    fn compensated_beats_naive() {
        let mut acc = Compensated::default();
        acc.add(1.0);
        for _ in 0..10 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        assert!((acc.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn roots_sum_to_zero() {
        let r = Roots::new(12);
        let mut acc = ComplexAcc::default();
        for k in 0..12 {
            acc.add(r.at(k));
        }
        assert!(acc.value().norm() < 1e-14);
        assert!((r.of(-1) - r.at(11)).norm() == 0.0);
    }

    #[test]
    fn integer_rounding() {
        assert_eq!(SumValue::real(4.0000000001, 1).as_integer(), Some(4));
        assert_eq!(SumValue::real(4.3, 1).as_integer(), None);
    }
}
