//! The complete exponential sums `S_{d,q}(m)` and everything derived from
//! them: the specializations `D_d`, `Q_q`, `M_{d,q}`, the `b`-twisted sums
//! `D_d(m; b)`, the primitive parts `D*_d`, their valuation splitting, the
//! mixed-sum decomposition and the partial sums of `chi(d) D_d(m)`.

mod brute;
mod onion;
mod orbit;
mod semi;
mod sigma;
mod star;

pub use brute::s_dq_brute;
pub use onion::{b2_sum_identity, onion_eval, onion_inner};
pub use orbit::{d_prime_power_exact, d_star_prime_power_exact, OrbitCache};
pub use semi::{s_dq_semi, GaussTable};
pub use sigma::{sigma_partial, sigma_series, SigmaPoint};
pub use star::{
    d0_closed, d_d_b, d_d_b_direct, d_j_split, d_star, mawkish_main_defect, seek_rhs,
};

use crate::arith::{factor, phi, SumValue};
use crate::error::{Error, Result};
use crate::forms::{MVec, QuadPair};
use crate::par::Workers;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Default cap on the number of accumulated terms per evaluation.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The definition, term by term.
    Brute,
    /// Congruences detected by additive characters; one-dimensional tables.
    Semi,
    /// Exact orbit evaluation of `D_{p^r}` for odd `p` (requires `q = 1`).
    Local,
    /// Product of local factors over the primes of `dq`.
    Mult,
    /// The cheapest applicable method.
    Auto,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "semi" => Ok(Method::Semi),
            "local" => Ok(Method::Local),
            "mult" => Ok(Method::Mult),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Brute => "brute",
            Method::Semi => "semi",
            Method::Local => "local",
            Method::Mult => "mult",
            Method::Auto => "auto",
        };
        f.write_str(s)
    }
}

/// Budget and worker count shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalCtx {
    pub budget: u64,
    pub workers: Workers,
}

impl Default for EvalCtx {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, workers: Workers::default() }
    }
}

impl EvalCtx {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget, ..Self::default() }
    }

    pub(crate) fn charge(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(())
    }
}

/// `(dq)^6 phi(q)`, the size of the defining summation domain.
pub fn domain_size(d: u64, q: u64) -> u64 {
    let n = (d as u128 * q as u128).saturating_pow(6).saturating_mul(phi(q) as u128);
    n.min(u64::MAX as u128) as u64
}

fn check_moduli(d: u64, q: u64) -> Result<()> {
    if d == 0 || q == 0 {
        return Err(Error::InvalidArgument("d and q must be positive".into()));
    }
    d.checked_mul(q).ok_or(Error::Overflow("dq"))?;
    Ok(())
}

/// `S_{d,q}(m)`.
pub fn s_dq(p: &QuadPair, d: u64, q: u64, m: &MVec, method: Method, ctx: &EvalCtx) -> Result<SumValue> {
    check_moduli(d, q)?;
    match method {
        Method::Brute => s_dq_brute(p, d, q, m, ctx),
        Method::Semi => s_dq_semi(p, d, q, m, ctx),
        Method::Local => s_dq_local(p, d, q, m),
        Method::Mult => s_dq_mult(p, d, q, m, ctx),
        Method::Auto => s_dq_auto(p, d, q, m, ctx),
    }
}

fn local_applicable(d: u64, q: u64) -> bool {
    q == 1 && (d == 1 || (d % 2 == 1 && factor(d).len() == 1))
}

fn s_dq_local(p: &QuadPair, d: u64, q: u64, m: &MVec) -> Result<SumValue> {
    if !local_applicable(d, q) {
        return Err(Error::MethodUnavailable(
            "local needs q = 1 and d an odd prime power".into(),
        ));
    }
    if d == 1 {
        return Ok(SumValue::real(1.0, 1));
    }
    let (pr, r) = factor(d)[0];
    let v = d_prime_power_exact(p, pr, r, m)?;
    Ok(SumValue::real(v as f64, domain_size(d, 1)))
}

/// Splits `(d, q)` into its prime-power parts `(p, d_p, q_p)`.
fn local_parts(d: u64, q: u64) -> Vec<(u64, u64, u64)> {
    factor(d * q)
        .into_iter()
        .map(|(pr, _)| {
            let part = |mut n: u64| {
                let mut acc = 1;
                while n.is_multiple_of(pr) {
                    n /= pr;
                    acc *= pr;
                }
                acc
            };
            (pr, part(d), part(q))
        })
        .collect()
}

fn s_dq_mult(p: &QuadPair, d: u64, q: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    let parts = local_parts(d, q);
    if parts.len() < 2 {
        return Err(Error::MethodUnavailable(
            "mult needs d*q to have at least two prime factors".into(),
        ));
    }
    let mut acc = SumValue::real(1.0, 1);
    for (_, dp, qp) in parts {
        let v = if local_applicable(dp, qp) {
            s_dq_local(p, dp, qp, m)?
        } else {
            s_dq_semi(p, dp, qp, m, ctx)?
        };
        acc = acc.mul(&v);
    }
    Ok(acc)
}

fn s_dq_auto(p: &QuadPair, d: u64, q: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    if d * q == 1 {
        return Ok(SumValue::real(1.0, 1));
    }
    if local_parts(d, q).len() >= 2 {
        s_dq_mult(p, d, q, m, ctx)
    } else if local_applicable(d, q) {
        s_dq_local(p, d, q, m)
    } else {
        s_dq_semi(p, d, q, m, ctx)
    }
}

/// `D_d(m) = S_{d,1}(m)`.
pub fn d_d(p: &QuadPair, d: u64, m: &MVec, method: Method, ctx: &EvalCtx) -> Result<SumValue> {
    s_dq(p, d, 1, m, method, ctx)
}

/// `Q_q(m) = S_{1,q}(m)`.
pub fn q_q(p: &QuadPair, q: u64, m: &MVec, method: Method, ctx: &EvalCtx) -> Result<SumValue> {
    s_dq(p, 1, q, m, method, ctx)
}

/// True when `d` and `q` are built from the same primes.
pub fn same_support(d: u64, q: u64) -> bool {
    let primes = |n: u64| factor(n).into_iter().map(|(p, _)| p).collect::<Vec<_>>();
    primes(d) == primes(q)
}

/// `M_{d,q}(m)`: `S_{d,q}` restricted to moduli with a common prime support.
pub fn m_dq(p: &QuadPair, d: u64, q: u64, m: &MVec, method: Method, ctx: &EvalCtx) -> Result<SumValue> {
    check_moduli(d, q)?;
    if !same_support(d, q) {
        return Err(Error::SupportMismatch { d, q });
    }
    s_dq(p, d, q, m, method, ctx)
}
