//! The sequence-space norms: declarative specs and exact evaluators.
//!
//! Every norm is evaluated in closed form or by dynamic programming; nothing
//! here iterates to convergence. Each evaluator has an independent
//! brute-force oracle in [`oracles`] used by the test suites.

mod schreier;
mod signed_subsequence;
mod sparse_block;
mod weighted_mixed;

pub mod oracles;

pub use sparse_block::{
    build_section4_space, check_sparseness, BuildMode, SparseBlockBuild, SparsenessReport,
    SparsenessWitness,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{Coord, FiniteVector};

/// How a block-sum space combines its per-block norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMode {
    L1,
    C0,
}

/// One block of a `Section4Block` space: the block dimension (exactly, when it
/// fits in a machine integer, and always as a natural log) and the natural log
/// of the scale factor multiplying the block's l1 term. Scales far below the
/// floating range make that term evaluate to 0, which is the correct limit of
/// the formula for any representable vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub log_scale: f64,
    pub log_size: f64,
    pub size: Option<u64>,
}

impl BlockSpec {
    pub fn scale(&self) -> f64 {
        self.log_scale.exp()
    }

    fn contains_offset(&self, offset: u64) -> bool {
        match self.size {
            Some(n) => offset >= 1 && offset <= n,
            None => offset >= 1 && (offset as f64).ln() <= self.log_size + 1e-12,
        }
    }
}

/// A declarative norm definition: one of the supported kinds plus its
/// parameters. Loads from / saves to `{"kind": ..., "params": ...}` JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum SpaceSpec {
    /// `(sum |x_i|^p)^(1/p)`, `p >= 1`.
    Lp { p: f64 },
    /// `max |x_i|`.
    C0Sup,
    /// `sup { sum_{i in F} |x_i| : min F >= |F| }`.
    Schreier,
    /// l1 direct sum of blocks, each normed by
    /// `max(max_i |x_i|, max_j |sum_{i>=j} x_i|)`.
    AlternatingTailL1Sum { block_sizes: Vec<u64> },
    /// `sup |sum_i (-1)^i x_{n_i}|` over increasing subsequences `(n_i)`.
    SignedSubsequence,
    /// `max` of a harmonically normalized decreasing-rearrangement part and
    /// the l2 norm of the even coordinates.
    WeightedMixed,
    /// c0 direct sum of blocks normed by `max(sup, scale * l1)`, with scales
    /// derived from a sparse weight's growth sequence. Coordinates are
    /// `(block, offset)` pairs.
    Section4Block { blocks: Vec<BlockSpec>, certified: bool },
    /// Direct sum (l1 or c0) of identical inner spaces over a block layout.
    GenericBlockSum { block_sizes: Vec<u64>, mode: SumMode, inner: Box<SpaceSpec> },
}

impl SpaceSpec {
    pub fn lp(p: f64) -> Self {
        SpaceSpec::Lp { p }
    }

    /// Checks the kind-specific parameter invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::Lp { p } => {
                if !p.is_finite() || *p < 1.0 {
                    return Err(Error::InvalidParam(format!("Lp requires p >= 1, got {p}")));
                }
            }
            SpaceSpec::C0Sup | SpaceSpec::Schreier | SpaceSpec::SignedSubsequence | SpaceSpec::WeightedMixed => {}
            SpaceSpec::AlternatingTailL1Sum { block_sizes } => {
                validate_sizes(block_sizes, true)?;
            }
            SpaceSpec::Section4Block { blocks, .. } => {
                if blocks.is_empty() {
                    return Err(Error::InvalidParam("Section4Block needs at least one block".into()));
                }
                let mut prev = f64::NEG_INFINITY;
                for (k, b) in blocks.iter().enumerate() {
                    if !b.log_scale.is_finite() {
                        return Err(Error::InvalidParam(format!(
                            "block {} scale factor must be positive and finite in log space",
                            k + 1
                        )));
                    }
                    if b.log_size <= prev {
                        return Err(Error::InvalidParam("block sizes must be strictly increasing".into()));
                    }
                    if let Some(n) = b.size {
                        if n == 0 || ((n as f64).ln() - b.log_size).abs() > 1e-9 {
                            return Err(Error::InvalidParam(format!(
                                "block {} exact size disagrees with its log size",
                                k + 1
                            )));
                        }
                    }
                    prev = b.log_size;
                }
            }
            SpaceSpec::GenericBlockSum { block_sizes, inner, .. } => {
                validate_sizes(block_sizes, false)?;
                if matches!(**inner, SpaceSpec::Section4Block { .. }) {
                    return Err(Error::InvalidParam(
                        "GenericBlockSum inner space must use flat coordinates".into(),
                    ));
                }
                inner.validate()?;
            }
        }
        Ok(())
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String {
        match self {
            SpaceSpec::Lp { p } => format!("l{p}"),
            SpaceSpec::C0Sup => "c0 sup-norm".into(),
            SpaceSpec::Schreier => "Schreier".into(),
            SpaceSpec::AlternatingTailL1Sum { block_sizes } => {
                format!("tail-sum blocks (l1 sum, {} blocks)", block_sizes.len())
            }
            SpaceSpec::SignedSubsequence => "signed-subsequence sup".into(),
            SpaceSpec::WeightedMixed => "weighted-mixed".into(),
            SpaceSpec::Section4Block { blocks, certified } => format!(
                "sparse-growth blocks ({} blocks, {})",
                blocks.len(),
                if *certified { "certified" } else { "surrogate" }
            ),
            SpaceSpec::GenericBlockSum { block_sizes, mode, inner } => format!(
                "{} block sum of {} ({} blocks)",
                match mode {
                    SumMode::L1 => "l1",
                    SumMode::C0 => "c0",
                },
                inner.describe(),
                block_sizes.len()
            ),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: SpaceSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("space spec serializes")
    }

    /// Whether vectors in this space use `(block, offset)` coordinates.
    pub fn uses_block_coords(&self) -> bool {
        matches!(self, SpaceSpec::Section4Block { .. })
    }

    /// The flat block layout, for the kinds that have one.
    pub fn layout(&self) -> Option<BlockLayout> {
        match self {
            SpaceSpec::AlternatingTailL1Sum { block_sizes }
            | SpaceSpec::GenericBlockSum { block_sizes, .. } => BlockLayout::new(block_sizes).ok(),
            _ => None,
        }
    }
}

fn validate_sizes(sizes: &[u64], strictly_increasing: bool) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidParam("block sizes must be nonempty".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidParam("block sizes must be positive".into()));
    }
    if strictly_increasing && sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam("block sizes must be strictly increasing".into()));
    }
    Ok(())
}

/// Partition of the flat index range into consecutive blocks `M_k`.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    sizes: Vec<u64>,
    starts: Vec<u64>,
    total: u64,
}

impl BlockLayout {
    pub fn new(sizes: &[u64]) -> Result<Self> {
        validate_sizes(sizes, false)?;
        let mut starts = Vec::with_capacity(sizes.len());
        let mut acc: u64 = 1;
        for &n in sizes {
            starts.push(acc);
            acc = acc
                .checked_add(n)
                .ok_or_else(|| Error::InvalidParam("block layout overflows the index range".into()))?;
        }
        Ok(BlockLayout { sizes: sizes.to_vec(), starts, total: acc - 1 })
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// 1-based flat index of the first coordinate of block `k` (0-based `k`).
    pub fn block_start(&self, k: usize) -> u64 {
        self.starts[k]
    }

    pub fn block_size(&self, k: usize) -> u64 {
        self.sizes[k]
    }

    /// Locate a flat index as `(block, offset)`, both 0-based block / 1-based
    /// offset.
    pub fn locate(&self, flat: u64) -> Result<(usize, u64)> {
        if flat == 0 || flat > self.total {
            return Err(Error::IndexOutsideLayout {
                coord: Coord::flat(flat.max(1)),
                detail: format!("layout covers [1, {}] over {} blocks", self.total, self.sizes.len()),
            });
        }
        let k = match self.starts.binary_search(&flat) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        Ok((k, flat - self.starts[k] + 1))
    }
}

/// Compensated (Kahan) summation.
pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// `s_n = sum_{i<=n} 1/i`, by direct compensated summation.
pub fn harmonic_number(n: u64) -> f64 {
    kahan_sum((1..=n).map(|i| 1.0 / i as f64))
}

/// Evaluates the norm of `x` in the given space. Exact up to floating-point
/// rounding for every kind.
pub fn eval_norm(space: &SpaceSpec, x: &FiniteVector) -> Result<f64> {
    match space {
        SpaceSpec::Lp { p } => {
            let entries = flat_entries(x)?;
            if entries.is_empty() {
                return Ok(0.0);
            }
            if *p == 1.0 {
                return Ok(kahan_sum(entries.iter().map(|&(_, v)| v.abs())));
            }
            if *p == 2.0 {
                return Ok(kahan_sum(entries.iter().map(|&(_, v)| v * v)).sqrt());
            }
            // Scale by the max to keep powf in range for large p.
            let max = x.max_abs_coeff();
            let sum = kahan_sum(entries.iter().map(|&(_, v)| (v.abs() / max).powf(*p)));
            Ok(max * sum.powf(1.0 / *p))
        }
        SpaceSpec::C0Sup => {
            flat_entries(x)?;
            Ok(x.max_abs_coeff())
        }
        SpaceSpec::Schreier => schreier::eval(&flat_entries(x)?),
        SpaceSpec::AlternatingTailL1Sum { block_sizes } => {
            let layout = BlockLayout::new(block_sizes)?;
            let per_block = group_by_block(x, &layout)?;
            Ok(kahan_sum(per_block.iter().map(|entries| tail_sum_block_norm(entries))))
        }
        SpaceSpec::SignedSubsequence => signed_subsequence::eval(&flat_entries(x)?),
        SpaceSpec::WeightedMixed => weighted_mixed::eval(&flat_entries(x)?),
        SpaceSpec::Section4Block { blocks, .. } => {
            let mut best = 0.0f64;
            let mut groups: std::collections::BTreeMap<u32, Vec<f64>> = std::collections::BTreeMap::new();
            for (&c, &v) in x.entries() {
                if c.is_flat() {
                    return Err(Error::BlockCoordinateRequired(c));
                }
                let spec = blocks.get(c.block() as usize - 1).ok_or_else(|| Error::IndexOutsideLayout {
                    coord: c,
                    detail: format!("space has {} blocks", blocks.len()),
                })?;
                if !spec.contains_offset(c.offset()) {
                    return Err(Error::IndexOutsideLayout {
                        coord: c,
                        detail: format!("block {} has log-dimension {}", c.block(), spec.log_size),
                    });
                }
                groups.entry(c.block()).or_default().push(v);
            }
            for (block, values) in groups {
                let spec = &blocks[block as usize - 1];
                let sup = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                let l1 = kahan_sum(values.iter().map(|v| v.abs()));
                best = best.max(sup.max(spec.scale() * l1));
            }
            Ok(best)
        }
        SpaceSpec::GenericBlockSum { block_sizes, mode, inner } => {
            let layout = BlockLayout::new(block_sizes)?;
            let per_block = group_by_block(x, &layout)?;
            let mut acc = 0.0f64;
            let mut parts = Vec::new();
            for (k, entries) in per_block.iter().enumerate() {
                if entries.is_empty() {
                    continue;
                }
                let sub = FiniteVector::flat(entries, layout.block_size(k))?;
                let norm = eval_norm(inner, &sub)?;
                match mode {
                    SumMode::L1 => parts.push(norm),
                    SumMode::C0 => acc = acc.max(norm),
                }
            }
            Ok(match mode {
                SumMode::L1 => kahan_sum(parts.into_iter()),
                SumMode::C0 => acc,
            })
        }
    }
}

/// Norm of the unit vector at `coord`.
pub fn unit_norm(space: &SpaceSpec, coord: Coord) -> Result<f64> {
    eval_norm(space, &FiniteVector::unit_at(coord, coord.flat_index().unwrap_or(1)))
}

/// Support as `(flat index, value)` pairs sorted by index; errors on block
/// coordinates.
fn flat_entries(x: &FiniteVector) -> Result<Vec<(u64, f64)>> {
    let mut out = Vec::with_capacity(x.support_size());
    for (&c, &v) in x.entries() {
        let i = c.flat_index().ok_or(Error::FlatCoordinateRequired(c))?;
        out.push((i, v));
    }
    Ok(out)
}

/// Splits a flat vector by layout block, keeping block-local offsets.
fn group_by_block(x: &FiniteVector, layout: &BlockLayout) -> Result<Vec<Vec<(u64, f64)>>> {
    let mut out = vec![Vec::new(); layout.num_blocks()];
    for (&c, &v) in x.entries() {
        let i = c.flat_index().ok_or(Error::FlatCoordinateRequired(c))?;
        let (k, offset) = layout.locate(i)?;
        out[k].push((offset, v));
    }
    Ok(out)
}

/// `max(max_i |x_i|, max_j |sum_{i >= j} x_i|)` for one block, computed from
/// the suffix sums of the entries present.
fn tail_sum_block_norm(entries: &[(u64, f64)]) -> f64 {
    let mut sup = 0.0f64;
    let mut best_tail = 0.0f64;
    let mut acc = 0.0;
    // Entries arrive sorted by offset; accumulate suffix sums from the right.
    for &(_, v) in entries.iter().rev() {
        sup = sup.max(v.abs());
        acc += v;
        best_tail = best_tail.max(acc.abs());
    }
    sup.max(best_tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::FiniteVector;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ones(indices: &[u64]) -> FiniteVector {
        let pairs: Vec<(u64, f64)> = indices.iter().map(|&i| (i, 1.0)).collect();
        let dim = indices.iter().copied().max().unwrap_or(1);
        FiniteVector::flat(&pairs, dim).unwrap()
    }

    #[test]
    fn zero_vector_has_zero_norm_in_every_kind() {
        let zero = FiniteVector::zero(8);
        for spec in flat_specs() {
            assert_eq!(eval_norm(&spec, &zero).unwrap(), 0.0, "{}", spec.describe());
        }
    }

    #[test]
    fn lp_matches_hand_values() {
        let x = FiniteVector::flat(&[(1, 3.0), (2, 4.0)], 4).unwrap();
        assert_abs_diff_eq!(eval_norm(&SpaceSpec::lp(2.0), &x).unwrap(), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eval_norm(&SpaceSpec::lp(1.0), &x).unwrap(), 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eval_norm(&SpaceSpec::C0Sup, &x).unwrap(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn lp_rejects_p_below_one() {
        assert!(SpaceSpec::lp(0.5).validate().is_err());
    }

    #[test]
    fn schreier_prefix_indicator_is_half_rounded_up() {
        for m in 1..=12u64 {
            let x = ones(&(1..=m).collect::<Vec<_>>());
            let expect = m.div_ceil(2) as f64;
            assert_eq!(eval_norm(&SpaceSpec::Schreier, &x).unwrap(), expect, "m = {m}");
        }
    }

    #[test]
    fn schreier_far_interval_is_full_cardinality() {
        // {m+1, ..., 2m} is itself admissible.
        let m = 7u64;
        let x = ones(&((m + 1)..=(2 * m)).collect::<Vec<_>>());
        assert_eq!(eval_norm(&SpaceSpec::Schreier, &x).unwrap(), m as f64);
    }

    #[test]
    fn tail_sum_space_indicator_norm_is_cardinality() {
        let spec = SpaceSpec::AlternatingTailL1Sum { block_sizes: vec![2, 3, 4, 5] };
        let x = ones(&[1, 2, 4, 9, 14]);
        assert_eq!(eval_norm(&spec, &x).unwrap(), 5.0);
    }

    #[test]
    fn tail_sum_space_rejects_out_of_layout_index() {
        let spec = SpaceSpec::AlternatingTailL1Sum { block_sizes: vec![2, 3] };
        let x = ones(&[6]);
        assert!(matches!(
            eval_norm(&spec, &x),
            Err(Error::IndexOutsideLayout { .. })
        ));
    }

    #[test]
    fn signed_subsequence_consecutive_ones_have_norm_one() {
        for m in 1..=20u64 {
            let x = ones(&(1..=m).collect::<Vec<_>>());
            assert_eq!(eval_norm(&SpaceSpec::SignedSubsequence, &x).unwrap(), 1.0, "m = {m}");
        }
    }

    #[test]
    fn signed_subsequence_odd_indicator_grows() {
        for m in 2..=12u64 {
            let odds: Vec<u64> = (0..m).map(|j| 2 * j + 1).collect();
            let x = ones(&odds);
            let norm = eval_norm(&SpaceSpec::SignedSubsequence, &x).unwrap();
            assert!(norm >= (m - 1) as f64, "m = {m}, norm = {norm}");
        }
    }

    #[test]
    fn weighted_mixed_rank_weighted_indicator_is_sqrt_harmonic() {
        let f = crate::weights::WeightFunction::Power(0.5);
        for m in [1u64, 5, 17, 50] {
            let pairs: Vec<(u64, f64)> = (1..=m).map(|j| (2 * j + 3, f.eval(j))).collect();
            let x = FiniteVector::flat(&pairs, 2 * m + 3).unwrap();
            let norm = eval_norm(&SpaceSpec::WeightedMixed, &x).unwrap();
            assert_abs_diff_eq!(norm, harmonic_number(m).sqrt(), epsilon = 1e-9);
        }
    }

    #[test]
    fn weighted_mixed_even_indicator_is_sqrt_m() {
        let m = 60u64;
        let x = ones(&(1..=m).map(|j| 2 * j).collect::<Vec<_>>());
        assert_abs_diff_eq!(
            eval_norm(&SpaceSpec::WeightedMixed, &x).unwrap(),
            (m as f64).sqrt(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn single_block_section4_norm_reduces_to_scaled_max() {
        let scale: f64 = 3f64.ln() / 192.0;
        let spec = SpaceSpec::Section4Block {
            blocks: vec![BlockSpec { log_scale: scale.ln(), log_size: 192f64.ln(), size: Some(192) }],
            certified: true,
        };
        for m in [1u64, 10, 100, 192] {
            let pairs: Vec<(Coord, f64)> = (1..=m).map(|i| (Coord::in_block(1, i), 1.0)).collect();
            let x = FiniteVector::from_entries(pairs, 1).unwrap();
            let expect = 1f64.max(scale * m as f64);
            assert_abs_diff_eq!(eval_norm(&spec, &x).unwrap(), expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn generic_block_sum_modes_split_and_max() {
        let inner = Box::new(SpaceSpec::lp(2.0));
        let sizes = vec![2u64, 3];
        let x = FiniteVector::flat(&[(1, 3.0), (2, 4.0), (3, 12.0)], 5).unwrap();
        let l1 = SpaceSpec::GenericBlockSum { block_sizes: sizes.clone(), mode: SumMode::L1, inner: inner.clone() };
        let c0 = SpaceSpec::GenericBlockSum { block_sizes: sizes, mode: SumMode::C0, inner };
        assert_abs_diff_eq!(eval_norm(&l1, &x).unwrap(), 17.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eval_norm(&c0, &x).unwrap(), 12.0, epsilon = 1e-12);
    }

    #[test]
    fn spec_json_round_trip() {
        let specs = vec![
            SpaceSpec::lp(1.5),
            SpaceSpec::Schreier,
            SpaceSpec::AlternatingTailL1Sum { block_sizes: vec![2, 3, 4] },
            SpaceSpec::GenericBlockSum {
                block_sizes: vec![4, 4],
                mode: SumMode::C0,
                inner: Box::new(SpaceSpec::lp(1.0)),
            },
        ];
        for spec in specs {
            let text = serde_json::to_string(&spec).unwrap();
            let back = SpaceSpec::from_json_str(&text).unwrap();
            assert_eq!(spec, back);
        }
        // The documented wire shape parses.
        let spec = SpaceSpec::from_json_str(r#"{"kind": "Lp", "params": {"p": 2.0}}"#).unwrap();
        assert_eq!(spec, SpaceSpec::lp(2.0));
        let spec = SpaceSpec::from_json_str(r#"{"kind": "Schreier"}"#).unwrap();
        assert_eq!(spec, SpaceSpec::Schreier);
    }

    fn flat_specs() -> Vec<SpaceSpec> {
        vec![
            SpaceSpec::lp(1.0),
            SpaceSpec::lp(1.5),
            SpaceSpec::lp(2.0),
            SpaceSpec::lp(4.0),
            SpaceSpec::C0Sup,
            SpaceSpec::Schreier,
            SpaceSpec::AlternatingTailL1Sum { block_sizes: vec![2, 3, 4, 5, 6] },
            SpaceSpec::SignedSubsequence,
            SpaceSpec::WeightedMixed,
            SpaceSpec::GenericBlockSum {
                block_sizes: vec![5, 7, 8],
                mode: SumMode::L1,
                inner: Box::new(SpaceSpec::SignedSubsequence),
            },
        ]
    }

    fn random_vector(rng: &mut ChaCha8Rng, dim: u64) -> FiniteVector {
        let support = rng.gen_range(0..=6);
        let mut pairs = Vec::new();
        let mut used = std::collections::BTreeSet::new();
        for _ in 0..support {
            let i = rng.gen_range(1..=dim);
            if used.insert(i) {
                pairs.push((i, rng.gen_range(-3.0..3.0)));
            }
        }
        FiniteVector::flat(&pairs, dim).unwrap()
    }

    #[test]
    fn norm_axioms_hold_on_sampled_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for spec in flat_specs() {
            for _ in 0..60 {
                let x = random_vector(&mut rng, 20);
                let y = random_vector(&mut rng, 20);
                let lambda: f64 = rng.gen_range(-4.0..4.0);
                let nx = eval_norm(&spec, &x).unwrap();
                let ny = eval_norm(&spec, &y).unwrap();
                let nxl = eval_norm(&spec, &x.scale(lambda)).unwrap();
                let nxy = eval_norm(&spec, &x.add(&y).unwrap()).unwrap();
                let hom = (nxl - lambda.abs() * nx).abs();
                assert!(
                    hom <= 1e-12 * nxl.max(1.0),
                    "homogeneity fails for {}: {hom}",
                    spec.describe()
                );
                assert!(
                    nxy <= nx + ny + 1e-12,
                    "triangle fails for {}: {nxy} > {nx} + {ny}",
                    spec.describe()
                );
            }
        }
    }

    #[test]
    fn harmonic_number_matches_direct_sum() {
        assert_abs_diff_eq!(harmonic_number(4), 1.0 + 0.5 + 1.0 / 3.0 + 0.25, epsilon = 1e-15);
    }
}
