//! Independent randomized rounding of fractional edge values.

use crate::instance::EdgeId;
use crate::rational::{to_f64, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Inclusion probability `min(factor * x, 1)`; values within `1e-12` of 1
/// count as certain.
pub fn inclusion_probability(x: &Rat, factor: f64) -> f64 {
    let p = factor * to_f64(x);
    if p >= 1.0 - 1e-12 {
        1.0
    } else {
        p.max(0.0)
    }
}

/// Includes each edge independently with `inclusion_probability(x_e, factor)`.
/// One uniform draw per edge keeps the stream aligned across inputs.
pub fn round_with_factor(x: &[Rat], factor: f64, seed: u64) -> BTreeSet<EdgeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    x.iter()
        .enumerate()
        .filter_map(|(e, v)| {
            let draw: f64 = rng.gen();
            let p = inclusion_probability(v, factor);
            (p >= 1.0 || draw < p).then_some(e)
        })
        .collect()
}

/// `n^{4/5} ln n`.
pub fn thin_factor(n: usize) -> f64 {
    let n = n as f64;
    n.powf(0.8) * n.ln()
}

/// `sqrt(n) ln n`.
pub fn preserver_factor(n: usize) -> f64 {
    let n = n as f64;
    n.sqrt() * n.ln()
}

/// Algorithm-3 rounding of a thin-LP solution.
pub fn round_thin(x: &[Rat], n: usize, seed: u64) -> BTreeSet<EdgeId> {
    round_with_factor(x, thin_factor(n), seed)
}

pub fn round_preserver(x: &[Rat], n: usize, seed: u64) -> BTreeSet<EdgeId> {
    round_with_factor(x, preserver_factor(n), seed)
}
