//! Norm `max(part1, part2)` where
//! `part1 = sup_n (1/sqrt(s_n)) sup_pi sum_{i<=n} |x_{pi(i)}| / sqrt(i)` and
//! `part2 = (sum_i |x_{2i}|^2)^(1/2)`, with `s_n` the harmonic numbers.
//!
//! The inner sup over permutations pairs the largest magnitudes with the
//! largest weights `i^(-1/2)`, so it is attained by the decreasing
//! rearrangement (validated against an injection brute force in the oracles).
//! Terms with `i` beyond the support add nothing while `s_n` keeps growing,
//! so `n` only ranges over the support size.

use crate::error::Result;

pub fn eval(entries: &[(u64, f64)]) -> Result<f64> {
    let mut magnitudes: Vec<f64> = entries.iter().map(|&(_, v)| v.abs()).collect();
    magnitudes.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());

    let mut part1 = 0.0f64;
    let mut weighted = 0.0f64;
    let mut weighted_carry = 0.0f64;
    let mut harmonic = 0.0f64;
    let mut harmonic_carry = 0.0f64;
    for (i, &value) in magnitudes.iter().enumerate() {
        let rank = (i + 1) as f64;
        let y = value / rank.sqrt() - weighted_carry;
        let t = weighted + y;
        weighted_carry = (t - weighted) - y;
        weighted = t;

        let y = 1.0 / rank - harmonic_carry;
        let t = harmonic + y;
        harmonic_carry = (t - harmonic) - y;
        harmonic = t;

        part1 = part1.max(weighted / harmonic.sqrt());
    }

    let part2 = entries
        .iter()
        .filter(|&&(i, _)| i % 2 == 0)
        .map(|&(_, v)| v * v)
        .sum::<f64>()
        .sqrt();

    Ok(part1.max(part2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_support_feeds_the_l2_part() {
        let x = [(2u64, 3.0), (4, 4.0)];
        let norm = eval(&x).unwrap();
        // part2 = 5, part1 = max(3/1, (3 + 4/sqrt 2)/sqrt(1.5)) < 5
        assert!((norm - 5.0).abs() < 1e-12, "norm = {norm}");
    }

    #[test]
    fn odd_support_only_uses_rearrangement_part() {
        let x = [(1u64, 1.0), (3, 1.0)];
        let norm = eval(&x).unwrap();
        let expect = (1.0f64).max((1.0 + 1.0 / 2f64.sqrt()) / 1.5f64.sqrt());
        assert!((norm - expect).abs() < 1e-12);
    }
}
