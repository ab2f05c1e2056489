use super::{domain_size, EvalCtx};
use crate::arith::{gauss_1d, ComplexAcc, SumValue};
use crate::error::Result;
use crate::forms::{MVec, QuadPair};
use crate::par::ordered_map;
use num_complex::Complex64;
use num_integer::Integer;

/// `G_i[l] = sum_{k mod n} e_n(l k^2 + m_i k)` for every coordinate `i` and
/// every `l mod n`; coordinates with equal `m_i mod n` share a row.
#[derive(Debug, Clone)]
pub struct GaussTable {
    n: u64,
    rows: Vec<Vec<Complex64>>,
    row_of: [usize; 6],
}

impl GaussTable {
    pub fn new(m: &MVec, n: u64) -> Self {
        let ni = n as i128;
        let mut keys: Vec<i128> = Vec::new();
        let mut row_of = [0; 6];
        for (i, &mi) in m.0.iter().enumerate() {
            let key = (mi as i128).rem_euclid(ni);
            row_of[i] = match keys.iter().position(|&k| k == key) {
                Some(j) => j,
                None => {
                    keys.push(key);
                    keys.len() - 1
                }
            };
        }
        let rows = keys
            .iter()
            .map(|&mk| (0..ni).map(|l| gauss_1d(l, mk, n)).collect())
            .collect();
        Self { n, rows, row_of }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, l: i128) -> Complex64 {
        self.rows[self.row_of[i]][l.rem_euclid(self.n as i128) as usize]
    }

    /// `prod_i G_i[l_i]`.
    #[inline]
    pub fn product(&self, l: &[i128; 6]) -> Complex64 {
        let mut z = self.get(0, l[0]);
        for (i, &li) in l.iter().enumerate().skip(1) {
            z *= self.get(i, li);
        }
        z
    }

    /// `D_n(m; b1, b2)`: the six one-dimensional sums at `l_i = b1 c1_i + b2 c2_i`.
    pub fn twisted(&self, p: &QuadPair, b1: i128, b2: i128) -> Complex64 {
        let c1 = p.q1_diag();
        let c2 = p.q2_diag();
        let l = std::array::from_fn(|i| b1 * c1[i] as i128 + b2 * c2[i] as i128);
        self.product(&l)
    }
}

/// `S_{d,q}(m) = d^-2 sum*_a sum_{b1, b2 mod d} prod_i G_i[a c2_i + q(b1 c1_i + b2 c2_i)]`
/// with all tables modulo `dq`.
pub fn s_dq_semi(p: &QuadPair, d: u64, q: u64, m: &MVec, ctx: &EvalCtx) -> Result<SumValue> {
    let n = d * q;
    ctx.charge(q as u128 * (d as u128).pow(2) * n as u128)?;
    let table = GaussTable::new(m, n);
    let c1 = p.q1_diag().map(|c| c as i128);
    let c2 = p.q2_diag().map(|c| c as i128);
    let units: Vec<u64> = (0..q).filter(|a| a.gcd(&q) == 1).collect();
    let qi = q as i128;
    let partial = ordered_map(units.len(), ctx.workers, |ai| {
        let a = units[ai] as i128;
        let mut acc = ComplexAcc::default();
        for b1 in 0..d as i128 {
            for b2 in 0..d as i128 {
                let l = std::array::from_fn(|i| a * c2[i] + qi * (b1 * c1[i] + b2 * c2[i]));
                acc.add(table.product(&l));
            }
        }
        acc
    });
    let mut total = ComplexAcc::default();
    for acc in &partial {
        total.merge(acc);
    }
    let scale = 1.0 / (d as f64 * d as f64);
    Ok(SumValue::new(total.value() * scale, domain_size(d, q)))
}
