//! Seeded sample-vector families used by the constant estimators and the
//! verification suites. Everything is reproducible from `(parameters, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::FiniteVector;

/// A reproducible family of finitely supported vectors; the description
/// records its composition for reports.
#[derive(Clone, Debug)]
pub struct SampleFamily {
    pub description: String,
    pub vectors: Vec<FiniteVector>,
}

fn random_support(rng: &mut ChaCha8Rng, horizon: u64, size: usize) -> Vec<u64> {
    let mut indices = std::collections::BTreeSet::new();
    while indices.len() < size.min(horizon as usize) {
        indices.insert(rng.gen_range(1..=horizon));
    }
    indices.into_iter().collect()
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniforms per draw keeps the stream deterministic.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// The default mixed family: Gaussian coefficients on random supports, spiky
/// vectors with one dominant coordinate, signed indicators, and
/// geometric-decay vectors, cycled in that order.
pub fn default_family(horizon: u64, count: usize, max_support: usize, seed: u64) -> SampleFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::with_capacity(count);
    let max_support = max_support.max(1);
    for i in 0..count {
        let size = rng.gen_range(1..=max_support);
        let support = random_support(&mut rng, horizon, size);
        let pairs: Vec<(u64, f64)> = match i % 4 {
            0 => support.iter().map(|&n| (n, gaussian(&mut rng))).collect(),
            1 => {
                let spike = rng.gen_range(0..support.len());
                support
                    .iter()
                    .enumerate()
                    .map(|(j, &n)| {
                        let v = if j == spike { 10.0 } else { rng.gen_range(-1.0..1.0) };
                        (n, v)
                    })
                    .collect()
            }
            2 => support
                .iter()
                .map(|&n| (n, if rng.gen_bool(0.5) { 1.0 } else { -1.0 }))
                .collect(),
            _ => {
                let ratio: f64 = if rng.gen_bool(0.5) { 0.5 } else { 0.8 };
                support
                    .iter()
                    .enumerate()
                    .map(|(j, &n)| (n, ratio.powi(j as i32)))
                    .collect()
            }
        };
        let pairs: Vec<(u64, f64)> = pairs.into_iter().filter(|&(_, v)| v != 0.0).collect();
        if pairs.is_empty() {
            continue;
        }
        vectors.push(FiniteVector::flat(&pairs, horizon).expect("sampled vector is valid"));
    }
    SampleFamily {
        description: format!(
            "mixed family (gaussian/spiky/signed-indicator/geometric), horizon {horizon}, \
             support <= {max_support}, {count} draws, seed {seed}"
        ),
        vectors,
    }
}

/// Vectors whose coefficients have magnitudes inside `[lo, hi]`, with random
/// signs. Used where a weakness threshold requires a magnitude band.
pub fn banded_family(
    horizon: u64,
    count: usize,
    max_support: usize,
    lo: f64,
    hi: f64,
    seed: u64,
) -> SampleFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::with_capacity(count);
    for _ in 0..count {
        let size = rng.gen_range(1..=max_support.max(1));
        let support = random_support(&mut rng, horizon, size);
        let pairs: Vec<(u64, f64)> = support
            .iter()
            .map(|&n| {
                let magnitude = rng.gen_range(lo..=hi);
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                (n, sign * magnitude)
            })
            .collect();
        vectors.push(FiniteVector::flat(&pairs, horizon).expect("sampled vector is valid"));
    }
    SampleFamily {
        description: format!(
            "banded family, magnitudes in [{lo}, {hi}], horizon {horizon}, support <= {max_support}, \
             {count} draws, seed {seed}"
        ),
        vectors,
    }
}
