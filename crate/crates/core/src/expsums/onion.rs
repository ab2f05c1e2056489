use super::semi::GaussTable;
use super::{q_q, same_support, EvalCtx, Method};
use crate::arith::{divisors, mu, ComplexAcc, SumValue};
use crate::error::{Error, Result};
use crate::forms::{MVec, QuadPair};
use num_integer::Integer;

fn sat(n: u128) -> u64 {
    n.min(u64::MAX as u128) as u64
}

/// `D(d', r') = sum D_{d'r'}(m''; r' b1, b2)` over `b1 mod d'`, `b2 mod d'r'`
/// with `(b1, u b2, d') = (b2, r') = 1`.
pub fn onion_inner(p: &QuadPair, dp: u64, rp: u64, u: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    let n = dp * rp;
    ctx.charge(dp as u128 * n as u128 * 6 + 6 * (n as u128).pow(2))?;
    let table = GaussTable::new(m, n);
    let mut acc = ComplexAcc::default();
    for b1 in 0..dp {
        for b2 in 0..n {
            if b1.gcd(&(u * b2)).gcd(&dp) != 1 || b2.gcd(&rp) != 1 {
                continue;
            }
            acc.add(table.twisted(p, (rp * b1) as i128, b2 as i128));
        }
    }
    let terms = (n as u128).pow(6) * dp as u128 * n as u128;
    Ok(SumValue::new(acc.value(), sat(terms)))
}

/// `M_{d,q}(m)` through its decomposition over `h | d`, `r | q`, `u | r`.
pub fn onion_eval(p: &QuadPair, d: u64, q: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    if !same_support(d, q) {
        return Err(Error::SupportMismatch { d, q });
    }
    if p.delta_v()?.gcd(&(d as i128)) != 1 {
        return Err(Error::NotCoprimeToDiscriminant { d });
    }
    let mut acc = ComplexAcc::default();
    for h in divisors(d) {
        let dp = d / h;
        for r in divisors(q) {
            let mu_qr = mu(q / r);
            if mu_qr == 0 {
                continue;
            }
            for u in divisors(r) {
                let Some(mpp) = m.div_exact((u * h * (q / r)) as i64) else {
                    continue;
                };
                let inner = onion_inner(p, dp, r / u, u, &mpp, ctx)?;
                let w = mu_qr as f64 * (h as f64).powi(6) * (u as f64).powi(6) / (r as f64).powi(6);
                acc.add(inner.value() * w);
            }
        }
    }
    let scale = (q as f64).powi(6) / (d as f64).powi(2);
    Ok(SumValue::new(acc.value() * scale, super::domain_size(d, q)))
}

/// Both sides of
/// `sum_{b2 mod r} D_r(m'; 0, b2) = sum_{h | r, h | m'} h^6 Q_{r/h}(m'/h)`.
pub fn b2_sum_identity(p: &QuadPair, r: u64, m: &MVec, ctx: &EvalCtx) -> Result<(SumValue, SumValue)> {
    ctx.charge(6 * (r as u128).pow(2))?;
    let table = GaussTable::new(m, r);
    let mut lhs = ComplexAcc::default();
    for b2 in 0..r {
        lhs.add(table.twisted(p, 0, b2 as i128));
    }
    let mut rhs = ComplexAcc::default();
    for h in divisors(r) {
        if let Some(mh) = m.div_exact(h as i64) {
            let v = q_q(p, r / h, &mh, Method::Semi, ctx)?;
            rhs.add(v.value() * (h as f64).powi(6));
        }
    }
    let terms = sat((r as u128).pow(7));
    Ok((SumValue::new(lhs.value(), terms), SumValue::new(rhs.value(), terms)))
}

#[cfg(test)]
mod tests {
    use super::super::{m_dq, s_dq_brute};
    use super::*;

    fn p0() -> QuadPair {
        QuadPair::new([1, 1, 1, -1, 1]).unwrap()
    }

    #[test]
    fn onion_matches_mixed_sum() {
        let ctx = EvalCtx::default();
        let p = QuadPair::new([-1, 4, 1, -2, 1]).unwrap();
        for (d, q) in [(3, 3), (3, 9), (9, 3), (5, 5), (1, 1)] {
            for m in [MVec([1, 0, 1, 0, 1, 0]), MVec([3, 0, 3, 0, 3, 0]), MVec::ZERO, MVec([9, 0, 18, 9, 27, 0])] {
                let o = onion_eval(&p, d, q, &m, &ctx).unwrap();
                let s = m_dq(&p, d, q, &m, Method::Semi, &ctx).unwrap();
                assert!(o.approx_eq(&s), "d={d} q={q} m={m}: {o:?} {s:?}");
            }
        }
    }

    #[test]
    fn onion_matches_brute() {
        let ctx = EvalCtx::default();
        let m = MVec([1, 0, 1, 0, 1, 0]);
        let o = onion_eval(&p0(), 3, 3, &m, &ctx).unwrap();
        assert!(o.approx_eq(&s_dq_brute(&p0(), 3, 3, &m, &ctx).unwrap()));
    }

    #[test]
    fn onion_preconditions() {
        let ctx = EvalCtx::default();
        assert!(matches!(onion_eval(&p0(), 3, 5, &MVec::ZERO, &ctx), Err(Error::SupportMismatch { .. })));
        assert!(matches!(onion_eval(&p0(), 2, 2, &MVec::ZERO, &ctx), Err(Error::NotCoprimeToDiscriminant { .. })));
    }

    #[test]
    fn b2_identity() {
        let ctx = EvalCtx::default();
        let (l, r) = b2_sum_identity(&p0(), 1, &MVec([1, 0, 1, 0, 1, 0]), &ctx).unwrap();
        assert!(l.approx_eq(&SumValue::real(1.0, 1)) && r.approx_eq(&l));
        for (r, m) in [(3, MVec([1, 0, 1, 0, 1, 0])), (9, MVec([3, 0, 3, 0, 3, 0])), (9, MVec::ZERO)] {
            let (a, b) = b2_sum_identity(&p0(), r, &m, &ctx).unwrap();
            assert!(a.approx_eq(&b), "r={r}");
        }
    }
}
