//! Checks on the sparse-growth block space: the block-indicator formula, the
//! cross-block democracy failure, and the factor-2 bound of the greedy
//! residual by the rank-weighted span distance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::functionals::{d_m_f, default_candidates, SearchBudget};
use crate::greedy::greedy_sum;
use crate::spaces::{eval_norm, SpaceSpec, SparseBlockBuild};
use crate::vector::{Coord, FiniteVector};
use crate::verify::{Check, Scope, SuiteReport};
use crate::weights::WeightFunction;

/// Runs the block-space checks on a certified build with its weight `f`.
/// `count` seeded random vectors (support inside block 1, at most 10 wide)
/// feed the residual bound at orders up to 4.
pub fn suite_sparse_block(
    build: &SparseBlockBuild,
    f: &WeightFunction,
    count: usize,
    seed: u64,
) -> Result<SuiteReport> {
    if !build.certified {
        return Err(Error::InvalidParam(
            "the residual bound check requires a certified construction".into(),
        ));
    }
    let space = &build.space;
    let SpaceSpec::Section4Block { blocks, .. } = space else {
        return Err(Error::InvalidParam("not a block space".into()));
    };
    let n1 = blocks[0]
        .size
        .ok_or_else(|| Error::InvalidParam("block 1 must have an exact dimension".into()))?;
    let scale1 = blocks[0].scale();
    let mut checks = Vec::new();

    // Indicators inside block 1 follow max(1, scale * m) exactly.
    {
        let mut worst: f64 = 0.0;
        let mut witness = None;
        for m in [1, 5, n1 / 4, n1 / 2, n1] {
            let m = m.max(1);
            let x = FiniteVector::from_entries(
                (1..=m).map(|i| (Coord::in_block(1, i), 1.0)),
                1,
            )?;
            let norm = eval_norm(space, &x)?;
            let expect = 1f64.max(scale1 * m as f64);
            let err = (norm - expect).abs();
            if err > worst {
                worst = err;
                witness = Some(json!({"m": m, "norm": norm, "expect": expect}));
            }
        }
        checks.push(Check::outcome(
            "block_one_indicator_formula",
            worst <= 1e-12,
            Some(worst),
            witness,
            1e-12,
        ));
    }

    // The full block-1 indicator reaches the logarithmic level, while an
    // equal-size set inside block 2 stays at 1: the democracy ratio between
    // consecutive blocks is the logarithmic factor itself.
    {
        let log_level = scale1 * n1 as f64;
        let full = FiniteVector::from_entries((1..=n1).map(|i| (Coord::in_block(1, i), 1.0)), 1)?;
        let shifted = FiniteVector::from_entries((1..=n1).map(|i| (Coord::in_block(2, i), 1.0)), 2)?;
        let norm_full = eval_norm(space, &full)?;
        let norm_shifted = eval_norm(space, &shifted)?;
        checks.push(Check::outcome(
            "full_block_indicator_reaches_log_level",
            (norm_full - log_level).abs() <= 1e-9,
            Some(norm_full),
            Some(json!({"log_level": log_level})),
            1e-9,
        ));
        checks.push(Check::outcome(
            "cross_block_democracy_ratio_is_log_level",
            (norm_full / norm_shifted - log_level).abs() <= 1e-9,
            Some(norm_full / norm_shifted),
            Some(json!({"block_two_norm": norm_shifted, "log_level": log_level})),
            1e-9,
        ));
    }

    // Residual bound: ||x - G_m(x)|| <= 2 D_m^f(x) on seeded vectors
    // supported in block 1, with span candidates inside block 1 plus a
    // block-2 prefix.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let offset_window = n1.min(64);
        let vectors: Vec<FiniteVector> = (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=10u64);
                let mut offsets = std::collections::BTreeSet::new();
                while (offsets.len() as u64) < size {
                    offsets.insert(rng.gen_range(1..=offset_window));
                }
                let entries: Vec<(Coord, f64)> = offsets
                    .iter()
                    .map(|&i| (Coord::in_block(1, i), rng.gen_range(-2.0..2.0)))
                    .filter(|&(_, v)| v != 0.0)
                    .collect();
                FiniteVector::from_entries(entries, 2)
            })
            .collect::<Result<_>>()?;

        let budget = SearchBudget { seed, ..SearchBudget::default() };
        let rows: Vec<Result<(usize, f64, f64, usize)>> = vectors
            .par_iter()
            .enumerate()
            .map(|(idx, x)| {
                let mut worst = 0.0f64;
                let mut worst_m = 0;
                let mut skipped = 0usize;
                let candidates = default_candidates(&build.space, x, 4);
                for m in 1..=4usize {
                    let residual = x.sub(&greedy_sum(x, m))?;
                    let lhs = eval_norm(&build.space, &residual)?;
                    if lhs == 0.0 {
                        skipped += 1;
                        continue;
                    }
                    let rhs = d_m_f(&build.space, x, m, f, &candidates, &budget)?.value;
                    let margin = lhs - 2.0 * rhs;
                    if margin > worst {
                        worst = margin;
                        worst_m = m;
                    }
                }
                Ok((idx, worst, worst_m as f64, skipped))
            })
            .collect();

        let mut worst_margin = f64::NEG_INFINITY;
        let mut witness = None;
        let mut skipped_total = 0usize;
        for row in rows {
            let (idx, margin, m, skipped) = row?;
            skipped_total += skipped;
            if margin > worst_margin {
                worst_margin = margin;
                witness = Some(json!({"sample_index": idx, "m": m}));
            }
        }
        checks.push(Check::outcome(
            "greedy_residual_bounded_by_twice_span_distance",
            worst_margin <= 1e-9,
            Some(worst_margin),
            witness,
            1e-9,
        ));
        checks.push(Check::info("skipped_zero_residuals", Some(skipped_total as f64), None));
    }

    let scope = Scope {
        sizes: vec![10, 4],
        horizons: vec![n1],
        sample_count: count,
        seed,
        notes: vec![
            format!("certified dimensions: n0 = {}, block sizes {:?}", build.n0, build.exact_sizes),
            "span candidates: support plus free block-1 offsets plus a block-2 prefix".into(),
        ],
    };
    Ok(SuiteReport::new("sparse_block", space.describe(), scope, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{build_section4_space, BuildMode};

    #[test]
    fn certified_space_passes_all_block_checks() {
        let f = WeightFunction::Geometric(0.5);
        let g = WeightFunction::Linear(0.5);
        let build = build_section4_space(&f, &g, 2, BuildMode::Certified).unwrap();
        let report = suite_sparse_block(&build, &f, 60, 0).unwrap();
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn surrogate_space_is_rejected() {
        let f = WeightFunction::Geometric(0.5);
        let g = WeightFunction::Linear(0.5);
        let build = build_section4_space(&f, &g, 2, BuildMode::Surrogate(vec![6, 20, 50])).unwrap();
        assert!(suite_sparse_block(&build, &f, 10, 0).is_err());
    }
}
