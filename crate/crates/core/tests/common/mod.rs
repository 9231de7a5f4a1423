#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use subset_itrans::lattice::{SetFamily, SubsetMask};

/// Distinct random subsets of `{0..n}`, at most `max_len` of them, each
/// element included with probability `density`.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, max_len: usize, density: f64) -> SetFamily {
    let count = rng.gen_range(0..=max_len);
    let masks: Vec<SubsetMask> = (0..count)
        .map(|_| (0..n).filter(|_| rng.gen_bool(density)).fold(0, |m, e| m | 1 << e))
        .collect();
    SetFamily::new(n, masks).unwrap()
}

pub fn random_values(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(lo..=hi)).collect()
}

pub fn big(vals: &[i64]) -> Vec<BigInt> {
    vals.iter().map(|&v| BigInt::from(v)).collect()
}
