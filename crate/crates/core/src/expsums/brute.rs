use super::{domain_size, EvalCtx};
use crate::arith::{phi, root_of_unity, ComplexAcc, Roots, SumValue};
use crate::error::Result;
use crate::forms::{MVec, QuadPair};
use crate::par::ordered_map;
use num_complex::Complex64;
use num_integer::Integer;

/// `S_{d,q}(m)` straight from the definition: every `k mod dq` satisfying
/// both congruences modulo `d`, against every unit `a mod q`.
pub fn s_dq_brute(p: &QuadPair, d: u64, q: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    let n = d * q;
    ctx.charge((n as u128).pow(6) * phi(q) as u128)?;
    let ni = n as i64;
    let dd = d as i64;

    // a_sum[t] = sum over units a mod q of e_q(a t)
    let units: Vec<u64> = (0..q).filter(|a| a.gcd(&q) == 1).collect();
    let a_sum: Vec<Complex64> = (0..q)
        .map(|t| {
            let mut acc = ComplexAcc::default();
            for &a in &units {
                acc.add(root_of_unity(a as i128 * t as i128, q));
            }
            acc.value()
        })
        .collect();

    let roots = Roots::new(n);
    let c1 = p.q1_diag().map(|c| c % ni);
    let c2 = p.q2_diag().map(|c| c % ni);
    let mm = m.0.map(|x| x.rem_euclid(ni));
    let sq: Vec<i64> = (0..ni).map(|k| k * k % ni).collect();

    let partial = ordered_map(n as usize, ctx.workers, |k1| {
        let k1 = k1 as i64;
        let mut acc = ComplexAcc::default();
        for k2 in 0..ni {
            let a1 = c1[0] * sq[k1 as usize] + c1[1] * sq[k2 as usize];
            let a2 = c2[0] * sq[k1 as usize] + c2[1] * sq[k2 as usize];
            let lin2 = mm[0] * k1 + mm[1] * k2;
            for k3 in 0..ni {
                for k4 in 0..ni {
                    let q1 = (a1 + c1[2] * sq[k3 as usize] + c1[3] * sq[k4 as usize]).rem_euclid(dd);
                    if q1 != 0 {
                        continue;
                    }
                    let b2 = a2 + c2[2] * sq[k3 as usize] + c2[3] * sq[k4 as usize];
                    let lin4 = lin2 + mm[2] * k3 + mm[3] * k4;
                    for k5 in 0..ni {
                        for k6 in 0..ni {
                            let q2 = (b2 + c2[4] * sq[k5 as usize] + c2[5] * sq[k6 as usize])
                                .rem_euclid(ni);
                            if q2 % dd != 0 {
                                continue;
                            }
                            let lin = (lin4 + mm[4] * k5 + mm[5] * k6).rem_euclid(ni);
                            acc.add(a_sum[(q2 / dd) as usize] * roots.at(lin as u64));
                        }
                    }
                }
            }
        }
        acc
    });
    let mut total = ComplexAcc::default();
    for acc in &partial {
        total.merge(acc);
    }
    Ok(SumValue::new(total.value(), domain_size(d, q)))
}
