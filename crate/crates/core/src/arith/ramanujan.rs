use super::sumvalue::{root_of_unity, ComplexAcc, SumValue};
use super::{divisors, mu, phi};
use num_integer::Integer;

/// `c_q(b)` through `sum_{d | (q, b)} d mu(q/d)`.
pub fn ramanujan(q: u64, b: i128) -> i64 {
    assert!(q >= 1, "ramanujan expects q >= 1");
    let g = (q as i128).gcd(&b) as u64;
    divisors(g)
        .into_iter()
        .map(|d| d as i64 * mu(q / d) as i64)
        .sum()
}

/// `c_{p^r}(b)` from the three prime-power cases.
pub fn ramanujan_prime_power(p: u64, r: u32, b: i128) -> i64 {
    if r == 0 {
        return 1;
    }
    let pr = p.pow(r) as i128;
    let pr1 = p.pow(r - 1) as i128;
    if b % pr == 0 {
        phi(pr as u64) as i64
    } else if b % pr1 == 0 {
        -(pr1 as i64)
    } else {
        0
    }
}

/// Direct sum of `e_q(b k)` over units `k`.
pub fn ramanujan_brute(q: u64, b: i128) -> SumValue {
    let mut acc = ComplexAcc::default();
    let mut n = 0;
    for k in 0..q {
        if k.gcd(&q) == 1 {
            acc.add(root_of_unity(b * k as i128, q));
            n += 1;
        }
    }
    SumValue::new(acc.value(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ramanujan(5, 0), 4);
        assert_eq!(ramanujan(9, 3), -3);
        assert_eq!(ramanujan(9, 1), 0);
        assert_eq!(ramanujan(1, 17), 1);
    }

    #[test]
    fn prime_power_cases_match_divisor_sum() {
        for (p, r) in [(2, 3), (3, 3), (5, 2), (7, 2)] {
            for b in -60..60 {
                assert_eq!(ramanujan_prime_power(p, r, b), ramanujan(p.pow(r), b));
            }
        }
    }

    #[test]
    fn brute_rounds_to_closed_form() {
        for q in 1..=60 {
            for b in 0..q as i128 {
                assert_eq!(ramanujan_brute(q, b).as_integer(), Some(ramanujan(q, b) as i128));
            }
        }
    }
}
