//! Best m-term approximation functionals with explicit witnesses.
//!
//! `sigma_m` allows free coefficients on the chosen set, `sigma_tilde_m`
//! projects the vector's own coefficients, and `d_m_f` measures the distance
//! to the one-dimensional span of a rank-weighted indicator. All three scan
//! candidate index sets drawn from an explicit candidate universe; reported
//! values are certified upper bounds on the infimum (a witness always
//! reproduces the value), with the optimizer status recording whether the
//! scan was exhaustive.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::greedy::indicator;
use crate::optimize::ternary_min;
use crate::spaces::{eval_norm, unit_norm, SpaceSpec};
use crate::vector::{Coord, FiniteVector};
use crate::weights::WeightFunction;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerStatus {
    Exact,
    Converged { tol: f64 },
    Capped,
}

/// Value of an approximation functional together with the configuration that
/// attains it.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionalResult {
    pub value: f64,
    pub witness_set: Vec<Coord>,
    /// Optimal coefficients per witness coordinate, or the single scalar for
    /// the distance-to-span functionals.
    pub witness_coefficients: Vec<f64>,
    pub optimizer_status: OptimizerStatus,
    pub oracle_value: Option<f64>,
    pub notes: Vec<String>,
}

impl FunctionalResult {
    pub fn with_oracle(mut self, value: f64) -> Self {
        self.oracle_value = Some(value);
        self
    }
}

/// Controls how many candidate sets the functionals examine. Scans beyond
/// `exhaustive_limit` sets fall back to a deterministic heuristic pool
/// (windows over the magnitude-ranked candidates plus seeded random draws)
/// and are reported as `Capped`.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub exhaustive_limit: u128,
    pub heuristic_random: usize,
    pub restarts: usize,
    pub rel_tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exhaustive_limit: 20_000,
            heuristic_random: 200,
            restarts: 3,
            rel_tol: 1e-9,
            max_sweeps: 40,
            seed: 0,
        }
    }
}

/// Default candidate universe: everything up to `max(supp x) + m + 4` for
/// flat vectors. Non-monotone norms can prefer approximation sets beyond the
/// support, so the horizon extends past it; block-layout spaces clamp it to
/// their index range. Block-addressed vectors get their support, a couple of
/// free offsets in each touched block, and a short prefix of the next block.
pub fn default_candidates(space: &SpaceSpec, x: &FiniteVector, m: usize) -> Vec<Coord> {
    if x.is_block_indexed() {
        return block_candidates(space, x);
    }
    let mut horizon = x.max_flat_index().max(1) + m as u64 + 4;
    if let Some(layout) = space.layout() {
        horizon = horizon.min(layout.total());
    }
    (1..=horizon).map(Coord::flat).collect()
}

fn block_candidates(space: &SpaceSpec, x: &FiniteVector) -> Vec<Coord> {
    let mut coords: BTreeSet<Coord> = x.support().collect();
    let block_size = |k: u32| -> u64 {
        match space {
            SpaceSpec::Section4Block { blocks, .. } => blocks
                .get(k as usize - 1)
                .map(|b| b.size.unwrap_or(u64::MAX))
                .unwrap_or(0),
            _ => 0,
        }
    };
    let touched: BTreeSet<u32> = x.support().map(|c| c.block()).collect();
    let last = touched.iter().copied().max().unwrap_or(1);
    for &k in touched.iter().chain(std::iter::once(&(last + 1))) {
        let size = block_size(k);
        let mut added = 0;
        for i in 1..=size.min(1 << 20) {
            if added == 2 {
                break;
            }
            let c = Coord::in_block(k, i);
            if coords.insert(c) {
                added += 1;
            }
        }
    }
    coords.into_iter().collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

/// Candidate `m`-sets, exhaustively when the count fits the budget, else a
/// heuristic pool. Returns the sets and whether the scan was truncated.
fn candidate_sets(
    x: &FiniteVector,
    candidates: &[Coord],
    m: usize,
    budget: &SearchBudget,
) -> (Vec<Vec<Coord>>, bool) {
    let n = candidates.len();
    if binomial(n, m) <= budget.exhaustive_limit {
        return (candidates.iter().copied().combinations(m).collect(), false);
    }
    // Rank by magnitude (ties by coordinate) and pool sliding windows, so
    // all-large, all-next-largest, and straddling sets are represented.
    let mut ranked: Vec<Coord> = candidates.to_vec();
    ranked.sort_by(|&a, &b| {
        x.coeff(b)
            .abs()
            .partial_cmp(&x.coeff(a).abs())
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut pool: Vec<Vec<Coord>> = Vec::new();
    let mut seen: BTreeSet<Vec<Coord>> = BTreeSet::new();
    for j in 0..=(n - m) {
        let mut set = ranked[j..j + m].to_vec();
        set.sort();
        if seen.insert(set.clone()) {
            pool.push(set);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut scratch: Vec<Coord> = candidates.to_vec();
    for _ in 0..budget.heuristic_random {
        scratch.shuffle(&mut rng);
        let mut set = scratch[..m].to_vec();
        set.sort();
        if seen.insert(set.clone()) {
            pool.push(set);
        }
    }
    (pool, true)
}

fn validate_candidates(x: &FiniteVector, candidates: &[Coord], m: usize) -> Result<()> {
    if candidates.len() < m {
        return Err(Error::InvalidParam(format!(
            "{} candidate coordinates cannot hold a set of size {m}",
            candidates.len()
        )));
    }
    let set: BTreeSet<Coord> = candidates.iter().copied().collect();
    if set.len() != candidates.len() {
        return Err(Error::InvalidParam("candidate coordinates repeat".into()));
    }
    if !x.support().all(|c| set.contains(&c)) {
        return Err(Error::InvalidParam(
            "candidate universe must contain the support of x".into(),
        ));
    }
    Ok(())
}

/// `sigma_m`: inf over sets `A` of size `m` within the candidate universe of
/// `min_{a} ||x - sum_{n in A} a_n e_n||`. The inner convex problem is solved
/// by cyclic coordinate descent with bracketed ternary searches and seeded
/// random restarts.
pub fn sigma_m(
    space: &SpaceSpec,
    x: &FiniteVector,
    m: usize,
    candidates: &[Coord],
    budget: &SearchBudget,
) -> Result<FunctionalResult> {
    let norm_x = eval_norm(space, x)?;
    if m == 0 {
        return Ok(FunctionalResult {
            value: norm_x,
            witness_set: vec![],
            witness_coefficients: vec![],
            optimizer_status: OptimizerStatus::Exact,
            oracle_value: None,
            notes: vec!["empty approximation set".into()],
        });
    }
    validate_candidates(x, candidates, m)?;
    if m >= x.support_size() {
        // Take the support itself plus filler coordinates.
        let mut witness: Vec<Coord> = x.support().collect();
        let mut coeffs: Vec<f64> = witness.iter().map(|&c| x.coeff(c)).collect();
        for &c in candidates {
            if witness.len() == m {
                break;
            }
            if x.coeff(c) == 0.0 {
                witness.push(c);
                coeffs.push(0.0);
            }
        }
        witness.sort();
        return Ok(FunctionalResult {
            value: 0.0,
            witness_set: witness,
            witness_coefficients: coeffs,
            optimizer_status: OptimizerStatus::Exact,
            oracle_value: None,
            notes: vec!["support fits inside the approximation set".into()],
        });
    }

    let (sets, capped) = candidate_sets(x, candidates, m, budget);
    let mut best: Option<(f64, Vec<Coord>, Vec<f64>)> = None;
    for set in &sets {
        let (value, coeffs) = min_over_coefficients(space, x, set, norm_x, budget)?;
        if best.as_ref().map(|(v, _, _)| value < *v).unwrap_or(true) {
            best = Some((value, set.clone(), coeffs));
        }
    }
    let (value, witness_set, witness_coefficients) = best.expect("at least one candidate set");
    Ok(FunctionalResult {
        value,
        witness_set,
        witness_coefficients,
        optimizer_status: if capped {
            OptimizerStatus::Capped
        } else {
            OptimizerStatus::Converged { tol: budget.rel_tol }
        },
        oracle_value: None,
        notes: vec![
            format!("candidate universe of {} coordinates, {} sets examined", candidates.len(), sets.len()),
            format!("restart seed {}", budget.seed),
        ],
    })
}

/// Inner minimization of `||x - sum a_i e_i||` over the coefficients on a
/// fixed set, by cyclic coordinate descent. Each coordinate step searches the
/// residual entry `u = x_i - a_i` on a certified bracket: beyond it the term
/// `|a_i| ||e_i||` alone exceeds the incumbent value.
fn min_over_coefficients(
    space: &SpaceSpec,
    x: &FiniteVector,
    set: &[Coord],
    norm_x: f64,
    budget: &SearchBudget,
) -> Result<(f64, Vec<f64>)> {
    let unit_norms: Vec<f64> = set
        .iter()
        .map(|&c| unit_norm(space, c).map(|n| n.max(1e-300)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best_value = f64::INFINITY;
    let mut best_coeffs = vec![0.0; set.len()];

    for restart in 0..budget.restarts.max(1) {
        let mut coeffs: Vec<f64> = if restart == 0 {
            vec![0.0; set.len()]
        } else {
            set.iter()
                .zip(&unit_norms)
                .map(|(_, &un)| {
                    use rand::Rng;
                    let b = 2.0 * norm_x / un;
                    rng.gen_range(-b..=b)
                })
                .collect()
        };
        let mut current = x.clone();
        for (i, &c) in set.iter().enumerate() {
            current = current.with_coeff(c, x.coeff(c) - coeffs[i]);
        }
        let mut value = eval_norm(space, &current)?;
        for _ in 0..budget.max_sweeps {
            let before = value;
            for (i, &c) in set.iter().enumerate() {
                let radius = coeffs[i].abs() + 2.0 * value / unit_norms[i] + 1e-9;
                let center = x.coeff(c);
                let base = current.clone();
                let (u_star, v_star) = ternary_min(
                    |u| eval_norm(space, &base.with_coeff(c, u)).unwrap_or(f64::INFINITY),
                    center - radius,
                    center + radius,
                    budget.rel_tol,
                );
                if v_star < value {
                    value = v_star;
                    coeffs[i] = center - u_star;
                    current = base.with_coeff(c, u_star);
                }
            }
            if before - value <= budget.rel_tol * before.max(1.0) {
                break;
            }
        }
        if value < best_value {
            best_value = value;
            best_coeffs = coeffs;
        }
        if best_value == 0.0 {
            break;
        }
    }
    Ok((best_value, best_coeffs))
}

/// `sigma_tilde_m`: min over sets `A` of size `m` of `||x - P_A(x)||`. The
/// value depends only on `A` intersected with the support, so the scan runs
/// over support subsets and pads witnesses with zero coordinates.
pub fn sigma_tilde_m(
    space: &SpaceSpec,
    x: &FiniteVector,
    m: usize,
    candidates: &[Coord],
    budget: &SearchBudget,
) -> Result<FunctionalResult> {
    let norm_x = eval_norm(space, x)?;
    if m == 0 {
        return Ok(FunctionalResult {
            value: norm_x,
            witness_set: vec![],
            witness_coefficients: vec![],
            optimizer_status: OptimizerStatus::Exact,
            oracle_value: None,
            notes: vec!["empty projection set".into()],
        });
    }
    validate_candidates(x, candidates, m)?;
    let support: Vec<Coord> = x.support().collect();
    let fillers: Vec<Coord> = candidates.iter().copied().filter(|&c| x.coeff(c) == 0.0).collect();
    let k_max = m.min(support.len());
    let k_min = m.saturating_sub(fillers.len());

    let total: u128 = (k_min..=k_max).map(|k| binomial(support.len(), k)).sum();
    let mut capped = false;
    let mut subsets: Vec<Vec<Coord>> = Vec::new();
    if total <= budget.exhaustive_limit {
        for k in k_min..=k_max {
            subsets.extend(support.iter().copied().combinations(k));
        }
    } else {
        capped = true;
        let mut ranked = support.clone();
        ranked.sort_by(|&a, &b| {
            x.coeff(b)
                .abs()
                .partial_cmp(&x.coeff(a).abs())
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut seen: BTreeSet<Vec<Coord>> = BTreeSet::new();
        let push = |set: Vec<Coord>, seen: &mut BTreeSet<Vec<Coord>>, subsets: &mut Vec<Vec<Coord>>| {
            let mut set = set;
            set.sort();
            if seen.insert(set.clone()) {
                subsets.push(set);
            }
        };
        for k in k_min..=k_max {
            for j in 0..=(ranked.len().saturating_sub(k)) {
                push(ranked[j..j + k].to_vec(), &mut seen, &mut subsets);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        let mut scratch = support.clone();
        for _ in 0..budget.heuristic_random {
            scratch.shuffle(&mut rng);
            push(scratch[..k_max].to_vec(), &mut seen, &mut subsets);
        }
    }

    let mut best: Option<(f64, Vec<Coord>)> = None;
    for subset in &subsets {
        let keep: BTreeSet<Coord> = subset.iter().copied().collect();
        let residual_entries = x.entries().iter().filter(|(c, _)| !keep.contains(c)).map(|(&c, &v)| (c, v));
        let residual = FiniteVector::from_entries(residual_entries, x.ambient_dim())?;
        let value = eval_norm(space, &residual)?;
        if best.as_ref().map(|(v, _)| value < *v).unwrap_or(true) {
            best = Some((value, subset.clone()));
        }
    }
    let (value, mut witness) = best.expect("at least one projection set");
    let coeffs: Vec<f64> = witness.iter().map(|&c| x.coeff(c)).collect();
    for &c in &fillers {
        if witness.len() == m {
            break;
        }
        witness.push(c);
    }
    witness.sort();
    Ok(FunctionalResult {
        value,
        witness_set: witness,
        witness_coefficients: coeffs,
        optimizer_status: if capped { OptimizerStatus::Capped } else { OptimizerStatus::Exact },
        oracle_value: None,
        notes: vec![format!(
            "candidate universe of {} coordinates, {} support subsets examined",
            candidates.len(),
            subsets.len()
        )],
    })
}

/// `d_m_f`: min over sets `B` of size `m` of `min_alpha ||x - alpha 1_{f,B}||`.
/// The inner problem is one-dimensional and convex; its bracket
/// `|alpha| <= 2||x|| / ||1_{f,B}||` is certified since beyond it the value
/// already exceeds the one at `alpha = 0`.
pub fn d_m_f(
    space: &SpaceSpec,
    x: &FiniteVector,
    m: usize,
    f: &WeightFunction,
    candidates: &[Coord],
    budget: &SearchBudget,
) -> Result<FunctionalResult> {
    if m == 0 {
        return Err(Error::InvalidParam("distance-to-span functionals need m >= 1".into()));
    }
    validate_candidates(x, candidates, m)?;
    let norm_x = eval_norm(space, x)?;
    let (sets, capped) = candidate_sets(x, candidates, m, budget);
    let mut notes = Vec::new();
    let mut best: Option<(f64, Vec<Coord>, f64)> = None;
    for set in &sets {
        let coords: BTreeSet<Coord> = set.iter().copied().collect();
        let direction = indicator(&coords, None, Some(f))?;
        let dir_norm = eval_norm(space, &direction)?;
        let (value, alpha) = if dir_norm == 0.0 {
            if notes.is_empty() {
                notes.push("a candidate span direction has zero norm; it contributes ||x|| at alpha = 0".into());
            }
            (norm_x, 0.0)
        } else {
            let bracket = 2.0 * norm_x / dir_norm;
            let (alpha, value) = ternary_min(
                |alpha| {
                    let approx = direction.scale(alpha);
                    x.sub(&approx)
                        .and_then(|r| eval_norm(space, &r))
                        .unwrap_or(f64::INFINITY)
                },
                -bracket,
                bracket,
                budget.rel_tol,
            );
            (value, alpha)
        };
        if best.as_ref().map(|(v, _, _)| value < *v).unwrap_or(true) {
            best = Some((value, set.clone(), alpha));
        }
    }
    let (value, witness_set, alpha) = best.expect("at least one candidate set");
    notes.push(format!(
        "candidate universe of {} coordinates, {} sets examined",
        candidates.len(),
        sets.len()
    ));
    Ok(FunctionalResult {
        value,
        witness_set,
        witness_coefficients: vec![alpha],
        optimizer_status: if capped {
            OptimizerStatus::Capped
        } else {
            OptimizerStatus::Converged { tol: budget.rel_tol }
        },
        oracle_value: None,
        notes,
    })
}

/// `d_m`: the unweighted special case of [`d_m_f`].
pub fn d_m(
    space: &SpaceSpec,
    x: &FiniteVector,
    m: usize,
    candidates: &[Coord],
    budget: &SearchBudget,
) -> Result<FunctionalResult> {
    d_m_f(space, x, m, &WeightFunction::Constant(1.0), candidates, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fv(pairs: &[(u64, f64)], dim: u64) -> FiniteVector {
        FiniteVector::flat(pairs, dim).unwrap()
    }

    #[test]
    fn sigma_zero_order_is_the_norm() {
        let x = fv(&[(1, 3.0), (2, 4.0)], 4);
        let space = SpaceSpec::lp(2.0);
        let r = sigma_m(&space, &x, 0, &default_candidates(&space, &x, 0), &SearchBudget::default()).unwrap();
        assert_abs_diff_eq!(r.value, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn sigma_vanishes_once_support_fits() {
        let x = fv(&[(1, 1.0), (5, -2.0)], 6);
        let space = SpaceSpec::lp(1.0);
        let cands = default_candidates(&space, &x, 3);
        let r = sigma_m(&space, &x, 3, &cands, &SearchBudget::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.optimizer_status, OptimizerStatus::Exact);
        assert_eq!(r.witness_set.len(), 3);
    }

    #[test]
    fn sigma_one_in_l2_keeps_the_two_smallest() {
        let x = fv(&[(1, 3.0), (2, 2.0), (3, 1.0)], 4);
        let space = SpaceSpec::lp(2.0);
        let cands = default_candidates(&space, &x, 1);
        let r = sigma_m(&space, &x, 1, &cands, &SearchBudget::default()).unwrap();
        assert_abs_diff_eq!(r.value, 5f64.sqrt(), epsilon = 1e-7);
        assert_eq!(r.witness_set, vec![Coord::flat(1)]);
        // Coefficient grid cross-check over the certified bracket.
        let norm_x = eval_norm(&space, &x).unwrap();
        let mut grid_best = f64::INFINITY;
        for &c in &cands {
            let bracket = 2.0 * norm_x;
            let steps = (2.0 * bracket / 0.05).ceil() as usize;
            for i in 0..=steps {
                let a = -bracket + i as f64 * 0.05;
                let v = eval_norm(&space, &x.with_coeff(c, x.coeff(c) - a)).unwrap();
                grid_best = grid_best.min(v);
            }
        }
        assert!((r.value - grid_best).abs() <= 1e-3);
    }

    #[test]
    fn sigma_tilde_vanishes_once_support_fits() {
        let x = fv(&[(2, 1.0), (5, -0.5)], 6);
        for space in [SpaceSpec::lp(1.0), SpaceSpec::Schreier] {
            for m in 2..=4 {
                let cands = default_candidates(&space, &x, m);
                let r = sigma_tilde_m(&space, &x, m, &cands, &SearchBudget::default()).unwrap();
                assert_eq!(r.value, 0.0, "m = {m} in {}", space.describe());
            }
        }
    }

    #[test]
    fn sigma_tilde_in_l1_removes_the_largest() {
        let x = fv(&[(1, 3.0), (2, 2.0), (3, 1.0)], 4);
        let space = SpaceSpec::lp(1.0);
        let cands = default_candidates(&space, &x, 1);
        let r = sigma_tilde_m(&space, &x, 1, &cands, &SearchBudget::default()).unwrap();
        assert_abs_diff_eq!(r.value, 3.0, epsilon = 1e-12);
        assert!(r.witness_set.contains(&Coord::flat(1)));
        assert_eq!(r.optimizer_status, OptimizerStatus::Exact);
    }

    #[test]
    fn d_m_examples_in_l2() {
        let space = SpaceSpec::lp(2.0);
        let x = fv(&[(1, 2.0), (2, 2.0)], 3);
        let budget = SearchBudget::default();
        let r2 = d_m(&space, &x, 2, &default_candidates(&space, &x, 2), &budget).unwrap();
        assert!(r2.value <= 1e-7, "span through 1_{{1,2}} hits x, got {}", r2.value);
        let r1 = d_m(&space, &x, 1, &default_candidates(&space, &x, 1), &budget).unwrap();
        assert_abs_diff_eq!(r1.value, 2.0, epsilon = 1e-7);
        let zero = FiniteVector::zero(4);
        let rz = d_m(&space, &zero, 2, &default_candidates(&space, &zero, 2), &budget).unwrap();
        assert_abs_diff_eq!(rz.value, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rank_weighted_span_reproduces_its_own_indicator() {
        let f = WeightFunction::Geometric(0.5);
        let set: BTreeSet<Coord> = [2u64, 4, 7].iter().map(|&i| Coord::flat(i)).collect();
        let x = indicator(&set, None, Some(&f)).unwrap();
        let space = SpaceSpec::lp(2.0);
        let r = d_m_f(&space, &x, 3, &f, &default_candidates(&space, &x, 3), &SearchBudget::default()).unwrap();
        assert!(r.value <= 1e-8, "got {}", r.value);
        assert_abs_diff_eq!(r.witness_coefficients[0], 1.0, epsilon = 1e-4);
    }

    #[test]
    fn ordering_chain_and_monotonicity() {
        let spaces = [SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::Schreier, SpaceSpec::SignedSubsequence];
        let x = fv(&[(1, 2.0), (3, -1.5), (4, 0.5), (6, 1.0)], 8);
        let budget = SearchBudget::default();
        let f = WeightFunction::Reciprocal;
        for space in &spaces {
            let mut prev_sigma = f64::INFINITY;
            let mut prev_tilde = f64::INFINITY;
            for m in 0..=4 {
                let cands = default_candidates(space, &x, m);
                let s = sigma_m(space, &x, m, &cands, &budget).unwrap().value;
                let st = sigma_tilde_m(space, &x, m, &cands, &budget).unwrap().value;
                assert!(s <= st + 1e-9, "sigma <= sigma_tilde in {}", space.describe());
                if m >= 1 {
                    let d = d_m_f(space, &x, m, &f, &cands, &budget).unwrap().value;
                    assert!(s <= d + 1e-9, "sigma <= D_f in {}", space.describe());
                }
                assert!(s <= prev_sigma + 1e-9);
                assert!(st <= prev_tilde + 1e-9);
                prev_sigma = s;
                prev_tilde = st;
            }
        }
    }

    #[test]
    fn functionals_are_positively_homogeneous() {
        let x = fv(&[(2, 1.0), (3, -2.0), (5, 0.25)], 6);
        let space = SpaceSpec::Schreier;
        let budget = SearchBudget::default();
        let cands = default_candidates(&space, &x, 2);
        let lambda = 3.5;
        let s1 = sigma_m(&space, &x, 2, &cands, &budget).unwrap().value;
        let s2 = sigma_m(&space, &x.scale(lambda), 2, &cands, &budget).unwrap().value;
        assert!((s2 - lambda * s1).abs() <= 1e-6 * s2.max(1.0));
        let d1 = d_m(&space, &x, 2, &cands, &budget).unwrap().value;
        let d2 = d_m(&space, &x.scale(lambda), 2, &cands, &budget).unwrap().value;
        assert!((d2 - lambda * d1).abs() <= 1e-6 * d2.max(1.0));
    }

    #[test]
    fn witnesses_reproduce_reported_values() {
        let budget = SearchBudget::default();
        let x = fv(&[(1, 2.0), (3, -1.0), (4, 0.5)], 6);
        for space in [SpaceSpec::lp(1.5), SpaceSpec::Schreier, SpaceSpec::SignedSubsequence] {
            let cands = default_candidates(&space, &x, 2);
            let s = sigma_m(&space, &x, 2, &cands, &budget).unwrap();
            let mut approx = FiniteVector::zero(x.ambient_dim());
            for (&c, &a) in s.witness_set.iter().zip(&s.witness_coefficients) {
                approx = approx.with_coeff(c, a);
            }
            let value = eval_norm(&space, &x.sub(&approx).unwrap()).unwrap();
            assert!((value - s.value).abs() <= 1e-9 * value.max(1.0), "sigma witness in {}", space.describe());

            let st = sigma_tilde_m(&space, &x, 2, &cands, &budget).unwrap();
            let keep: BTreeSet<Coord> = st.witness_set.iter().copied().collect();
            let residual = FiniteVector::from_entries(
                x.entries().iter().filter(|(c, _)| !keep.contains(c)).map(|(&c, &v)| (c, v)),
                x.ambient_dim(),
            )
            .unwrap();
            let value = eval_norm(&space, &residual).unwrap();
            assert!((value - st.value).abs() <= 1e-12, "sigma_tilde witness in {}", space.describe());

            let f = WeightFunction::Reciprocal;
            let d = d_m_f(&space, &x, 2, &f, &cands, &budget).unwrap();
            let set: BTreeSet<Coord> = d.witness_set.iter().copied().collect();
            let dir = indicator(&set, None, Some(&f)).unwrap();
            let value =
                eval_norm(&space, &x.sub(&dir.scale(d.witness_coefficients[0])).unwrap()).unwrap();
            assert!((value - d.value).abs() <= 1e-9 * value.max(1.0), "span witness in {}", space.describe());
            assert!(s.value >= 0.0 && st.value >= 0.0 && d.value >= 0.0);
        }
    }

    #[test]
    fn inner_minimizer_matches_coefficient_grid() {
        // Grid oracle: step 0.05 over the certified bracket.
        let spaces = [SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::SignedSubsequence];
        let x = fv(&[(1, 1.5), (2, -1.0), (4, 0.75)], 6);
        let budget = SearchBudget::default();
        let f = WeightFunction::Constant(1.0);
        for space in &spaces {
            let norm_x = eval_norm(space, &x).unwrap();
            let cands = default_candidates(space, &x, 1);
            let fast = d_m_f(space, &x, 1, &f, &cands, &budget).unwrap().value;
            let mut grid_best = f64::INFINITY;
            for &c in &cands {
                let set: BTreeSet<Coord> = [c].into_iter().collect();
                let dir = indicator(&set, None, Some(&f)).unwrap();
                let dn = eval_norm(space, &dir).unwrap();
                let bracket = 2.0 * norm_x / dn;
                let steps = (2.0 * bracket / 0.05).ceil() as usize;
                for i in 0..=steps {
                    let alpha = -bracket + i as f64 * 0.05;
                    let v = eval_norm(space, &x.sub(&dir.scale(alpha)).unwrap()).unwrap();
                    grid_best = grid_best.min(v);
                }
            }
            assert!(
                fast <= grid_best + 1e-3,
                "iterative {fast} vs grid {grid_best} in {}",
                space.describe()
            );
            let recorded = d_m_f(space, &x, 1, &f, &cands, &budget).unwrap().with_oracle(grid_best);
            assert_eq!(recorded.oracle_value, Some(grid_best));
        }
    }
}
