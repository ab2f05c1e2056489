use crate::error::Result;
use crate::forms::{classify_m, MClass, MVec, QuadPair};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Coordinates are drawn from `[-COORD_MAX, COORD_MAX]`.
pub const COORD_MAX: i64 = 20;

const RADII: [i64; 6] = [1, 2, 3, 5, 10, COORD_MAX];
const MAX_ATTEMPTS: usize = 200_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A candidate with a random radius and randomly vanishing blocks, so that
/// the thin classes are reachable by rejection.
fn candidate(rng: &mut ChaCha8Rng) -> MVec {
    let r = RADII[rng.gen_range(0..RADII.len())];
    let mut m = [0i64; 6];
    for blk in 0..3 {
        if rng.gen_bool(0.25) {
            continue;
        }
        m[2 * blk] = rng.gen_range(-r..=r);
        m[2 * blk + 1] = rng.gen_range(-r..=r);
    }
    MVec(m)
}

/// A vector of the requested class, or `None` if rejection sampling gives up.
pub fn sample_class(p: &QuadPair, class: MClass, rng: &mut ChaCha8Rng) -> Result<Option<MVec>> {
    for _ in 0..MAX_ATTEMPTS {
        let m = if class == MClass::M1 {
            MVec(std::array::from_fn(|_| rng.gen_range(-COORD_MAX..=COORD_MAX)))
        } else {
            candidate(rng)
        };
        if classify_m(p, &m)? == class {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `n` vectors cycling through the four classes in order; classes that
/// cannot be reached are skipped.
pub fn sample_stratified(p: &QuadPair, n: usize, seed: u64) -> Result<Vec<MVec>> {
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(n);
    let mut dead = [false; 4];
    let mut i = 0;
    while out.len() < n && dead.iter().any(|d| !d) {
        let class = MClass::ALL[i % 4];
        i += 1;
        if dead[class.index()] {
            continue;
        }
        match sample_class(p, class, &mut rng)? {
            Some(m) => out.push(m),
            None => dead[class.index()] = true,
        }
    }
    Ok(out)
}

/// `n` vectors of a single class.
pub fn sample_of_class(p: &QuadPair, class: MClass, n: usize, seed: u64) -> Result<Vec<MVec>> {
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        match sample_class(p, class, &mut rng)? {
            Some(m) => out.push(m),
            None => break,
        }
    }
    Ok(out)
}
