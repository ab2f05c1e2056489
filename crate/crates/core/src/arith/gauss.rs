use super::sumvalue::{root_of_unity, ComplexAcc, SumValue};
use super::{checked_pow, eps_p, jacobi, mod_inv};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Closed form of `sum_{k mod p^r} e_{p^r}(a k^2 + m k)` for odd `p` not
/// dividing `a`.
pub fn gauss_quad(a: i128, m: i128, p: u64, r: u32) -> Result<SumValue> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let eps = eps_p(p)?;
    if a.rem_euclid(p as i128) == 0 {
        return Err(Error::BadPrime(p, "p divides 2a"));
    }
    let n = checked_pow(p, r)?;
    let inv4a = mod_inv(4 * (a % n as i128), n)? as i128;
    let m_red = m.rem_euclid(n as i128);
    let phase = root_of_unity(-(inv4a * (m_red * m_red % n as i128)), n);
    let unit = if r.is_multiple_of(2) {
        Complex64::new(1.0, 0.0)
    } else {
        eps * jacobi(a, p as i128)? as f64
    };
    let scale = (n as f64).sqrt();
    Ok(SumValue::new(phase * unit * scale, n))
}

/// Direct evaluation of the same sum.
pub fn gauss_brute(a: i128, m: i128, p: u64, r: u32) -> Result<SumValue> {
    let n = checked_pow(p, r)?;
    if n > super::SCAN_CAP {
        return Err(Error::ModulusTooLarge { modulus: n, cap: super::SCAN_CAP });
    }
    Ok(SumValue::new(gauss_1d(a, m, n), n))
}

/// `sum_{k mod n} e_n(l k^2 + m k)` by direct summation, any `l` and `n`.
pub fn gauss_1d(l: i128, m: i128, n: u64) -> Complex64 {
    let ni = n as i128;
    let l = l.rem_euclid(ni);
    let m = m.rem_euclid(ni);
    let mut acc = ComplexAcc::default();
    for k in 0..ni {
        let e = (l * (k * k % ni) + m * k) % ni;
        acc.add(root_of_unity(e, n));
    }
    acc.value()
}
