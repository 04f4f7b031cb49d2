//! Empirical estimation of basis constants, with explicit witnesses and
//! explicit one-sidedness. The true constants are suprema over an
//! infinite-dimensional space, so every report records whether its number is
//! merely a lower bound or exact over the enumerated range; downstream suites
//! only assert inequalities in the direction the estimate supports.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::greedy::{
    enumerate_abt_weak_greedy_sets, enumerate_greedy_sets, enumerate_weak_greedy_sets, indicator,
    partial_sum_in, project,
};
use crate::samples::default_family;
use crate::spaces::{eval_norm, unit_norm, SpaceSpec};
use crate::vector::{Coord, FiniteVector};
use crate::weights::WeightFunction;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum ConstantKind {
    Democracy,
    FDemocracy(String),
    DisjointDemocracy,
    SuperDemocracy,
    SuppressionUnconditional,
    Unconditional,
    QuasiGreedy,
    TQuasiGreedy(f64),
    AbtQuasiGreedy { a_set: Vec<usize>, b_set: Vec<usize>, t: f64 },
    BasisConstant,
    CoordinateProduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    LowerBound,
    ExactOverEnumeratedRange,
}

/// An estimated constant: always at least 1 (the identity configuration is in
/// scope), with the maximizing configuration recorded.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub constant_kind: ConstantKind,
    pub estimate: f64,
    pub bound_direction: BoundDirection,
    pub witness: serde_json::Value,
    pub search_scope: String,
}

/// Which pairs the democracy estimator ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairFamily {
    /// Every pair of equal-size sets within the horizon (exact over range;
    /// horizon capped at 16).
    AllPairs,
    /// Hand-picked families likely to maximize and minimize indicator norms.
    Structured,
    /// Only disjoint pairs.
    DisjointOnly,
    /// Signed indicators, maximizing over both sign patterns.
    Signed,
}

const ALL_PAIRS_HORIZON_CAP: u64 = 16;

/// Candidate coordinate universe: flat indices up to the horizon, except for
/// block-addressed spaces, where the horizon is spread across blocks.
fn coordinate_universe(space: &SpaceSpec, horizon: u64) -> Vec<Coord> {
    match space {
        SpaceSpec::Section4Block { blocks, .. } => {
            let per_block = (horizon as usize).div_ceil(blocks.len()).max(1);
            let mut coords = Vec::new();
            for (k, b) in blocks.iter().enumerate() {
                let width = b.size.unwrap_or(u64::MAX).min(per_block as u64);
                for i in 1..=width {
                    if coords.len() as u64 >= horizon {
                        break;
                    }
                    coords.push(Coord::in_block(k as u32 + 1, i));
                }
            }
            coords
        }
        _ => {
            let cap = space.layout().map(|l| l.total()).unwrap_or(u64::MAX);
            (1..=horizon.min(cap)).map(Coord::flat).collect()
        }
    }
}

fn weight_label(f: Option<&WeightFunction>) -> serde_json::Value {
    f.map(|f| json!(f.to_string())).unwrap_or(serde_json::Value::Null)
}

/// Democracy-type constant: the largest ratio `||1_{f,A}|| / ||1_{f,B}||`
/// over admitted pairs with `|A| = |B| <= max_size`.
pub fn democracy_constant(
    space: &SpaceSpec,
    f: Option<&WeightFunction>,
    max_size: usize,
    horizon: u64,
    family: PairFamily,
) -> Result<ConstantsReport> {
    space.validate()?;
    if family == PairFamily::AllPairs && horizon > ALL_PAIRS_HORIZON_CAP {
        return Err(Error::EnumerationCap {
            cap: ALL_PAIRS_HORIZON_CAP as u128,
            required: horizon as u128,
        });
    }
    let universe = coordinate_universe(space, horizon);
    let max_size = max_size.min(universe.len());
    let norm_of = |set: &[Coord], signs: Option<&[f64]>| -> Result<f64> {
        let coords: BTreeSet<Coord> = set.iter().copied().collect();
        eval_norm(space, &indicator(&coords, signs, f)?)
    };

    struct BestPair {
        ratio: f64,
        witness: serde_json::Value,
    }
    impl BestPair {
        fn consider(&mut self, ratio: f64, witness: impl FnOnce() -> serde_json::Value) {
            if ratio > self.ratio {
                self.ratio = ratio;
                self.witness = witness();
            }
        }
    }
    let mut best = BestPair { ratio: 1.0, witness: json!({"identity": true}) };

    match family {
        PairFamily::AllPairs => {
            for s in 1..=max_size {
                let mut max_set: Option<(f64, Vec<Coord>)> = None;
                let mut min_set: Option<(f64, Vec<Coord>)> = None;
                for set in universe.iter().copied().combinations(s) {
                    let n = norm_of(&set, None)?;
                    if max_set.as_ref().map(|(v, _)| n > *v).unwrap_or(true) {
                        max_set = Some((n, set.clone()));
                    }
                    if min_set.as_ref().map(|(v, _)| n < *v).unwrap_or(true) {
                        min_set = Some((n, set));
                    }
                }
                if let (Some((hi, a)), Some((lo, b))) = (max_set, min_set) {
                    if lo > 0.0 {
                        best.consider(hi / lo, || json!({"size": s, "a": a, "b": b, "f": weight_label(f)}));
                    }
                }
            }
        }
        PairFamily::Structured => {
            for s in 1..=max_size {
                let family_sets = structured_sets(space, s, horizon);
                let mut max_set: Option<(f64, Vec<Coord>)> = None;
                let mut min_set: Option<(f64, Vec<Coord>)> = None;
                for set in family_sets {
                    let n = norm_of(&set, None)?;
                    if max_set.as_ref().map(|(v, _)| n > *v).unwrap_or(true) {
                        max_set = Some((n, set.clone()));
                    }
                    if min_set.as_ref().map(|(v, _)| n < *v).unwrap_or(true) {
                        min_set = Some((n, set));
                    }
                }
                if let (Some((hi, a)), Some((lo, b))) = (max_set, min_set) {
                    if lo > 0.0 {
                        best.consider(hi / lo, || json!({"size": s, "a": a, "b": b, "f": weight_label(f)}));
                    }
                }
            }
        }
        PairFamily::DisjointOnly => {
            for s in 1..=max_size.min(universe.len() / 2) {
                let sets: Vec<(Vec<Coord>, f64)> = universe
                    .iter()
                    .copied()
                    .combinations(s)
                    .map(|set| {
                        let n = norm_of(&set, None)?;
                        Ok((set, n))
                    })
                    .collect::<Result<_>>()?;
                for (a, na) in &sets {
                    let a_set: BTreeSet<Coord> = a.iter().copied().collect();
                    for (b, nb) in &sets {
                        if *nb <= 0.0 || na / nb <= best.ratio {
                            continue;
                        }
                        if b.iter().all(|c| !a_set.contains(c)) {
                            best.consider(na / nb, || json!({"size": s, "a": a, "b": b, "f": weight_label(f)}));
                        }
                    }
                }
            }
        }
        PairFamily::Signed => {
            for s in 1..=max_size {
                let mut max_cfg: Option<(f64, Vec<Coord>, Vec<f64>)> = None;
                let mut min_cfg: Option<(f64, Vec<Coord>, Vec<f64>)> = None;
                for set in universe.iter().copied().combinations(s) {
                    for mask in 0u32..(1 << s) {
                        let signs: Vec<f64> =
                            (0..s).map(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 }).collect();
                        let n = norm_of(&set, Some(&signs))?;
                        if max_cfg.as_ref().map(|(v, _, _)| n > *v).unwrap_or(true) {
                            max_cfg = Some((n, set.clone(), signs.clone()));
                        }
                        if min_cfg.as_ref().map(|(v, _, _)| n < *v).unwrap_or(true) {
                            min_cfg = Some((n, set.clone(), signs));
                        }
                    }
                }
                if let (Some((hi, a, eps)), Some((lo, b, eta))) = (max_cfg, min_cfg) {
                    if lo > 0.0 {
                        best.consider(
                            hi / lo,
                            || json!({"size": s, "a": a, "eps": eps, "b": b, "eta": eta, "f": weight_label(f)}),
                        );
                    }
                }
            }
        }
    }

    let constant_kind = match (family, f) {
        (PairFamily::DisjointOnly, _) => ConstantKind::DisjointDemocracy,
        (PairFamily::Signed, _) => ConstantKind::SuperDemocracy,
        (_, Some(f)) => ConstantKind::FDemocracy(f.to_string()),
        (_, None) => ConstantKind::Democracy,
    };
    Ok(ConstantsReport {
        constant_kind,
        estimate: best.ratio,
        bound_direction: if family == PairFamily::AllPairs {
            BoundDirection::ExactOverEnumeratedRange
        } else {
            BoundDirection::LowerBound
        },
        witness: best.witness,
        search_scope: format!(
            "{:?} pairs, sizes <= {max_size}, horizon {horizon}, universe of {} coords",
            family,
            universe.len()
        ),
    })
}

/// Candidate sets for the structured democracy families: prefixes and
/// far-shifted intervals bracket the extremes on the spaces here, plus
/// parity classes, spread sets, and block-aligned sets when a layout exists.
fn structured_sets(space: &SpaceSpec, s: usize, horizon: u64) -> Vec<Vec<Coord>> {
    let s64 = s as u64;
    let mut sets: Vec<Vec<u64>> = Vec::new();
    let mut push_range = |start: u64| {
        if start >= 1 && start + s64 - 1 <= horizon {
            sets.push((start..start + s64).collect());
        }
    };
    push_range(1);
    push_range(s64 + 1);
    push_range(2 * s64 + 1);
    push_range(3 * s64 + 1);
    if 2 * s64 - 1 <= horizon {
        sets.push((0..s64).map(|j| 2 * j + 1).collect()); // odds
        sets.push((1..=s64).map(|j| 2 * j).collect()); // evens
    }
    let gap = (horizon / s64).max(1);
    let spread: Vec<u64> = (0..s64).map(|j| 1 + j * gap).filter(|&i| i <= horizon).collect();
    if spread.len() == s {
        sets.push(spread);
    }
    if let Some(layout) = space.layout() {
        let starts: Vec<u64> = (0..layout.num_blocks().min(s)).map(|k| layout.block_start(k)).collect();
        if starts.len() == s {
            sets.push(starts);
        }
        for k in 0..layout.num_blocks() {
            if layout.block_size(k) >= s64 {
                let start = layout.block_start(k);
                sets.push((start..start + s64).collect());
                break;
            }
        }
    }
    let mut out: Vec<Vec<Coord>> = sets
        .into_iter()
        .filter(|set| set.iter().all(|&i| i <= horizon))
        .map(|set| set.into_iter().map(Coord::flat).collect())
        .collect();
    if space.uses_block_coords() {
        out = block_structured_sets(space, s);
    }
    out.sort();
    out.dedup();
    out
}

fn block_structured_sets(space: &SpaceSpec, s: usize) -> Vec<Vec<Coord>> {
    let SpaceSpec::Section4Block { blocks, .. } = space else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        if b.size.map(|n| n >= s as u64).unwrap_or(true) {
            out.push((1..=s as u64).map(|i| Coord::in_block(k as u32 + 1, i)).collect());
        }
    }
    out
}

fn ratio_guard(norm: f64) -> Result<f64> {
    if norm <= 0.0 {
        return Err(Error::ZeroNormSample);
    }
    Ok(norm)
}

/// Suppression-unconditionality: the largest `||P_A(x)|| / ||x||` over all
/// coordinate subsets of each sample's support (projections only see the
/// support, so this range is exhaustive per sample).
pub fn suppression_unconditional_estimate(
    space: &SpaceSpec,
    samples: &[FiniteVector],
) -> Result<ConstantsReport> {
    let mut best = 1.0f64;
    let mut witness = json!({"identity": true});
    for (idx, x) in samples.iter().enumerate() {
        let norm_x = ratio_guard(eval_norm(space, x)?)?;
        let support: Vec<Coord> = x.support().collect();
        if support.len() > 20 {
            return Err(Error::InvalidParam("suppression scan caps supports at 20".into()));
        }
        for mask in 0u32..(1 << support.len()) {
            let set: BTreeSet<Coord> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            let ratio = eval_norm(space, &project(x, &set))? / norm_x;
            if ratio > best {
                best = ratio;
                witness = json!({"sample_index": idx, "set": set});
            }
        }
    }
    Ok(ConstantsReport {
        constant_kind: ConstantKind::SuppressionUnconditional,
        estimate: best,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("{} samples, all support subsets", samples.len()),
    })
}

/// Unconditionality: the largest `||sum theta_n x_n e_n|| / ||x||` over sign
/// flips of each sample.
pub fn unconditional_estimate(space: &SpaceSpec, samples: &[FiniteVector]) -> Result<ConstantsReport> {
    let mut best = 1.0f64;
    let mut witness = json!({"identity": true});
    for (idx, x) in samples.iter().enumerate() {
        let norm_x = ratio_guard(eval_norm(space, x)?)?;
        let support: Vec<Coord> = x.support().collect();
        if support.len() > 20 {
            return Err(Error::InvalidParam("sign scan caps supports at 20".into()));
        }
        for mask in 0u32..(1 << support.len()) {
            let flipped = FiniteVector::from_entries(
                support.iter().enumerate().map(|(i, &c)| {
                    let sign = if mask & (1 << i) != 0 { -1.0 } else { 1.0 };
                    (c, sign * x.coeff(c))
                }),
                x.ambient_dim(),
            )?;
            let ratio = eval_norm(space, &flipped)? / norm_x;
            if ratio > best {
                best = ratio;
                witness = json!({"sample_index": idx, "sign_mask": mask});
            }
        }
    }
    Ok(ConstantsReport {
        constant_kind: ConstantKind::Unconditional,
        estimate: best,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("{} samples, all sign patterns", samples.len()),
    })
}

fn projection_ratio_scan<FSets>(
    space: &SpaceSpec,
    samples: &[FiniteVector],
    mut sets_for: FSets,
) -> Result<(f64, serde_json::Value)>
where
    FSets: FnMut(&FiniteVector, usize) -> Result<Vec<BTreeSet<Coord>>>,
{
    let mut best = 1.0f64;
    let mut witness = json!({"identity": true});
    for (idx, x) in samples.iter().enumerate() {
        let norm_x = ratio_guard(eval_norm(space, x)?)?;
        let m_hi = x.support_size() + 1;
        for m in 1..=m_hi.min(x.universe().len()) {
            for set in sets_for(x, m)? {
                let ratio = eval_norm(space, &project(x, &set))? / norm_x;
                if ratio > best {
                    best = ratio;
                    witness = json!({"sample_index": idx, "m": m, "set": set});
                }
            }
        }
    }
    Ok((best, witness))
}

/// Quasi-greedy constant: largest `||P_G(x)|| / ||x||` over greedy sets of
/// every order.
pub fn quasi_greedy_estimate(
    space: &SpaceSpec,
    samples: &[FiniteVector],
    cap: u128,
) -> Result<ConstantsReport> {
    let (estimate, witness) =
        projection_ratio_scan(space, samples, |x, m| enumerate_greedy_sets(x, m, cap))?;
    Ok(ConstantsReport {
        constant_kind: ConstantKind::QuasiGreedy,
        estimate,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("{} samples, all greedy sets up to the support order", samples.len()),
    })
}

/// `t`-quasi-greedy constant: as above over `t`-weak greedy sets.
pub fn t_quasi_greedy_estimate(
    space: &SpaceSpec,
    samples: &[FiniteVector],
    t: f64,
    cap: u128,
) -> Result<ConstantsReport> {
    let (estimate, witness) =
        projection_ratio_scan(space, samples, |x, m| enumerate_weak_greedy_sets(x, m, t, cap))?;
    Ok(ConstantsReport {
        constant_kind: ConstantKind::TQuasiGreedy(t),
        estimate,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!(
            "{} samples, all {t}-weak greedy sets up to the support order plus one",
            samples.len()
        ),
    })
}

/// `(A, B, t)`-quasi-greedy constant over every `(a, b)` in the given rank
/// sets.
pub fn abt_quasi_greedy_estimate(
    space: &SpaceSpec,
    samples: &[FiniteVector],
    a_set: &[usize],
    b_set: &[usize],
    t: f64,
    cap: u128,
) -> Result<ConstantsReport> {
    let mut best = 1.0f64;
    let mut witness = json!({"identity": true});
    for &a in a_set {
        for &b in b_set {
            let (estimate, w) = projection_ratio_scan(space, samples, |x, m| {
                if m < a {
                    Ok(Vec::new())
                } else {
                    enumerate_abt_weak_greedy_sets(x, m, a, b, t, cap)
                }
            })?;
            if estimate > best {
                best = estimate;
                witness = json!({"a": a, "b": b, "inner": w});
            }
        }
    }
    Ok(ConstantsReport {
        constant_kind: ConstantKind::AbtQuasiGreedy {
            a_set: a_set.to_vec(),
            b_set: b_set.to_vec(),
            t,
        },
        estimate: best,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("{} samples, ranks {:?} x {:?}", samples.len(), a_set, b_set),
    })
}

/// Basis constant: largest `||S_N(x)|| / ||x||` over prefix lengths. Only
/// prefixes ending at a support coordinate can change the ratio.
pub fn basis_constant_estimate(space: &SpaceSpec, samples: &[FiniteVector]) -> Result<ConstantsReport> {
    let mut best = 1.0f64;
    let mut witness = json!({"identity": true});
    for (idx, x) in samples.iter().enumerate() {
        let norm_x = ratio_guard(eval_norm(space, x)?)?;
        let cuts: Vec<u64> = if x.is_block_indexed() {
            // Prefix ranks are only representable within the exact blocks.
            (1..=x.support_size() as u64 * 4).collect()
        } else {
            x.support().filter_map(|c| c.flat_index()).collect()
        };
        for n in cuts {
            let prefix = partial_sum_in(space, x, n)?;
            let ratio = eval_norm(space, &prefix)? / norm_x;
            if ratio > best {
                best = ratio;
                witness = json!({"sample_index": idx, "prefix": n});
            }
        }
    }
    Ok(ConstantsReport {
        constant_kind: ConstantKind::BasisConstant,
        estimate: best,
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("{} samples, prefixes at support indices", samples.len()),
    })
}

/// Lower bound for `sup_n ||e_n|| ||e_n*||`: the unit-vector norm times the
/// largest normalized coordinate read over a seeded default family (the unit
/// vectors themselves are included, so the estimate is at least 1).
pub fn coordinate_product(space: &SpaceSpec, horizon: u64, seed: u64) -> Result<ConstantsReport> {
    let mut samples = default_family(horizon, 64, 8, seed).vectors;
    for i in 1..=horizon.min(8) {
        samples.push(FiniteVector::unit(i, horizon));
    }
    let mut best = 0.0f64;
    let mut witness = json!(null);
    for n in 1..=horizon {
        let coord = Coord::flat(n);
        let e_norm = unit_norm(space, coord)?;
        let mut dual = 0.0f64;
        let mut dual_idx = None;
        for (idx, x) in samples.iter().enumerate() {
            let norm_x = eval_norm(space, x)?;
            if norm_x == 0.0 {
                continue;
            }
            let value = x.coeff(coord).abs() / norm_x;
            if value > dual {
                dual = value;
                dual_idx = Some(idx);
            }
        }
        if e_norm * dual > best {
            best = e_norm * dual;
            witness = json!({"coordinate": n, "unit_norm": e_norm, "sample_index": dual_idx});
        }
    }
    Ok(ConstantsReport {
        constant_kind: ConstantKind::CoordinateProduct,
        estimate: best.max(1.0),
        bound_direction: BoundDirection::LowerBound,
        witness,
        search_scope: format!("horizon {horizon}, default family plus unit vectors, seed {seed}"),
    })
}
