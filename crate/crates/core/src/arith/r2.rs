use super::isqrt;

/// `#{(s, t) in Z^2 : s^2 + t^2 = n}`; zero for negative `n`.
pub fn r2(n: i128) -> u64 {
    if n < 0 {
        return 0;
    }
    let mut count = 0;
    let top = isqrt(n as u128) as i128;
    for s in -top..=top {
        let rest = n - s * s;
        let t = isqrt(rest as u128) as i128;
        if t * t == rest {
            count += if t == 0 { 1 } else { 2 };
        }
    }
    count
}

/// `r2` on `[0, len)`, built by accumulating `s^2 + t^2` over a quarter disc.
#[derive(Debug, Clone)]
pub struct R2Table {
    table: Vec<u32>,
}

impl R2Table {
    /// `r2(n)`; zero for negative `n`. Panics past the table end.
    #[inline]
    pub fn get(&self, n: i64) -> u32 {
        if n < 0 {
            0
        } else {
            self.table[n as usize]
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Table of `r2(n)` for `0 <= n <= max`.
pub fn r2_table(max: u64) -> R2Table {
    let len = max as usize + 1;
    let mut table = vec![0u32; len];
    table[0] = 1;
    let mut s = 0usize;
    while s * s < len {
        let mut t = 1usize;
        while s * s + t * t < len {
            // (s, t) with s >= 0, t >= 1 covers a quarter turn of nonzero points
            table[s * s + t * t] += 4;
            t += 1;
        }
        s += 1;
    }
    R2Table { table }
}
