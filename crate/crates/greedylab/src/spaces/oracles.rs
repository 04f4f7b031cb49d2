//! Independent brute-force norm evaluators used to validate the closed-form
//! and DP paths. These enumerate the defining suprema directly and share no
//! code with the production evaluators.

use itertools::Itertools;

use crate::error::Result;
use crate::spaces::harmonic_number;
use crate::vector::{Coord, FiniteVector};

/// Schreier norm by enumerating every admissible set: for each size `s`, all
/// `s`-subsets of `[s, dim]`.
pub fn schreier_brute_force(x: &FiniteVector, dim: u64) -> Result<f64> {
    let mut best = 0.0f64;
    for s in 1..=dim {
        if s > dim - s + 1 {
            break; // no s-subset of [s, dim] exists
        }
        for set in (s..=dim).combinations(s as usize) {
            let sum: f64 = set.iter().map(|&i| x.coeff(Coord::flat(i)).abs()).sum();
            best = best.max(sum);
        }
    }
    Ok(best)
}

/// Signed-subsequence norm by enumerating every nonempty increasing
/// subsequence of `[1, dim]` as a bitmask.
pub fn signed_subsequence_brute_force(x: &FiniteVector, dim: u64) -> Result<f64> {
    assert!(dim <= 24, "oracle is exponential in the dimension");
    let values: Vec<f64> = (1..=dim).map(|i| x.coeff(Coord::flat(i))).collect();
    let mut best = 0.0f64;
    for mask in 1u32..(1u32 << dim) {
        let mut sum = 0.0;
        let mut sign = -1.0;
        for (i, &v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += sign * v;
                sign = -sign;
            }
        }
        best = best.max(sum.abs());
    }
    Ok(best)
}

/// The rearrangement part of the weighted-mixed norm by enumerating every
/// injection of `n` support values into the first `n` weight slots.
pub fn weighted_mixed_part1_injections(x: &FiniteVector) -> Result<f64> {
    let values: Vec<f64> = x.entries().values().map(|v| v.abs()).collect();
    let n = values.len();
    assert!(n <= 8, "oracle is factorial in the support size");
    let mut best = 0.0f64;
    for len in 1..=n {
        let denom = harmonic_number(len as u64).sqrt();
        for perm in values.iter().permutations(len) {
            let sum: f64 = perm
                .iter()
                .enumerate()
                .map(|(i, &&v)| v / ((i + 1) as f64).sqrt())
                .sum();
            best = best.max(sum / denom);
        }
    }
    Ok(best)
}

/// Full weighted-mixed norm with the rearrangement part from the injection
/// oracle.
pub fn weighted_mixed_brute_force(x: &FiniteVector) -> Result<f64> {
    let part1 = weighted_mixed_part1_injections(x)?;
    let part2 = x
        .entries()
        .iter()
        .filter(|(c, _)| c.flat_index().map(|i| i % 2 == 0).unwrap_or(false))
        .map(|(_, v)| v * v)
        .sum::<f64>()
        .sqrt();
    Ok(part1.max(part2))
}
