//! Quasi-greedy indicator bounds (the three `2 Cq` inequalities) and the
//! nested-projection bound with factor `8 Cq^3 / t`, checked with a certified
//! quasi-greedy constant on spaces where one is known.

use serde_json::json;

use crate::error::{Error, Result};
use crate::greedy::{indicator, project};
use crate::spaces::{eval_norm, SpaceSpec};
use crate::vector::{Coord, FiniteVector};
use crate::verify::{Check, Scope, SuiteReport};

const SIGN_SCAN_CAP: usize = 12;

/// For each sample `x` with support `A` and coefficients `a`:
/// `||x|| <= 2 Cq max|a| ||1_A||`,
/// `min|a| ||1_{eps A}|| <= 2 Cq ||x||` with `eps = sign(a)`, and
/// `||1_{eps A'}|| <= 2 Cq ||1_{eta A}||` for every `A' <= A` and all sign
/// patterns. `cq` must be a certified upper bound for the space.
pub fn suite_indicator_bounds(
    space: &SpaceSpec,
    cq: f64,
    samples: &[FiniteVector],
) -> Result<SuiteReport> {
    space.validate()?;
    let tol = 1e-9;
    let mut worst = [0.0f64; 3];
    let mut witnesses: [Option<serde_json::Value>; 3] = [None, None, None];

    for (idx, x) in samples.iter().enumerate() {
        let support: Vec<Coord> = x.support().collect();
        let s = support.len();
        if s == 0 {
            continue;
        }
        if s > SIGN_SCAN_CAP {
            return Err(Error::InvalidParam(format!(
                "sign enumeration caps supports at {SIGN_SCAN_CAP}, sample {idx} has {s}"
            )));
        }
        let set: std::collections::BTreeSet<Coord> = support.iter().copied().collect();
        let norm_x = eval_norm(space, x)?;
        let max_a = x.max_abs_coeff();
        let min_a = support.iter().map(|&c| x.coeff(c).abs()).fold(f64::INFINITY, f64::min);
        let plain = eval_norm(space, &indicator(&set, None, None)?)?;
        let signs: Vec<f64> = support.iter().map(|&c| x.coeff(c).signum()).collect();
        let signed = eval_norm(space, &indicator(&set, Some(&signs), None)?)?;

        let mut track = |slot: usize, lhs: f64, rhs: f64, label: &str| {
            if rhs == 0.0 {
                return;
            }
            let ratio = lhs / rhs;
            if ratio > worst[slot] {
                worst[slot] = ratio;
                witnesses[slot] = Some(json!({"sample_index": idx, "statement": label}));
            }
        };
        track(0, norm_x, 2.0 * cq * max_a * plain, "coefficients below sup bound");
        track(1, min_a * signed, 2.0 * cq * norm_x, "signed indicator below vector");

        // Nested signed indicators: max over subsets and signs against the
        // min over sign patterns on the full support.
        let mut min_full = f64::INFINITY;
        for mask in 0u32..(1 << s) {
            let eta: Vec<f64> = (0..s).map(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 }).collect();
            min_full = min_full.min(eval_norm(space, &indicator(&set, Some(&eta), None)?)?);
        }
        let mut max_sub = 0.0f64;
        for mask in 1u32..(1 << s) {
            let subset: std::collections::BTreeSet<Coord> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            let k = subset.len();
            for smask in 0u32..(1 << k) {
                let eps: Vec<f64> =
                    (0..k).map(|i| if smask & (1 << i) != 0 { -1.0 } else { 1.0 }).collect();
                max_sub = max_sub.max(eval_norm(space, &indicator(&subset, Some(&eps), None)?)?);
            }
        }
        track(2, max_sub, 2.0 * cq * min_full, "nested signed indicators comparable");
    }

    let ids = [
        "coefficients_bounded_by_sup_times_indicator",
        "signed_indicator_bounded_by_vector",
        "nested_signed_indicators_comparable",
    ];
    let checks = ids
        .iter()
        .enumerate()
        .map(|(i, id)| Check::outcome(id, worst[i] <= 1.0 + tol, Some(worst[i]), witnesses[i].clone(), tol))
        .collect();
    let scope = Scope {
        sizes: vec![SIGN_SCAN_CAP as u64],
        horizons: samples.iter().map(|x| x.ambient_dim()).max().into_iter().collect(),
        sample_count: samples.len(),
        seed: 0,
        notes: vec![format!("certified quasi-greedy constant {cq}")],
    };
    Ok(SuiteReport::new("indicator_bounds", space.describe(), scope, checks))
}

/// Nested projections of a magnitude-banded vector: for `A1 <= A2` inside
/// coordinates with `t <= |x_n| <= 1`, `||P_A1 x|| <= (8 Cq^3 / t) ||P_A2 x||`.
pub fn suite_projection_bound(
    space: &SpaceSpec,
    cq: f64,
    samples: &[FiniteVector],
    t: f64,
) -> Result<SuiteReport> {
    space.validate()?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidParam(format!("t = {t} outside (0, 1]")));
    }
    let bound = 8.0 * cq.powi(3) / t;
    let tol = 1e-9;
    let mut worst = 0.0f64;
    let mut witness = None;
    let mut eligible_total = 0usize;

    for (idx, x) in samples.iter().enumerate() {
        let eligible: Vec<Coord> = x
            .support()
            .filter(|&c| {
                let v = x.coeff(c).abs();
                t <= v && v <= 1.0
            })
            .collect();
        let s = eligible.len();
        if s == 0 {
            continue;
        }
        if s > SIGN_SCAN_CAP {
            return Err(Error::InvalidParam(format!(
                "subset enumeration caps eligible coordinates at {SIGN_SCAN_CAP}"
            )));
        }
        eligible_total += 1;
        let mut norms = vec![0.0f64; 1 << s];
        for mask in 1u32..(1 << s) {
            let set: std::collections::BTreeSet<Coord> = eligible
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            norms[mask as usize] = eval_norm(space, &project(x, &set))?;
        }
        for a2 in 1u32..(1 << s) {
            let denom = norms[a2 as usize];
            if denom == 0.0 {
                continue;
            }
            // Proper and improper submasks of a2.
            let mut a1 = a2;
            loop {
                let ratio = norms[a1 as usize] / denom;
                if ratio > worst {
                    worst = ratio;
                    witness = Some(json!({"sample_index": idx, "a1_mask": a1, "a2_mask": a2}));
                }
                if a1 == 0 {
                    break;
                }
                a1 = (a1 - 1) & a2;
            }
        }
    }

    let checks = vec![
        Check::outcome(
            "nested_projection_ratio_bounded",
            worst <= bound + tol,
            Some(worst),
            witness,
            tol,
        ),
        Check::info("bound_value", Some(bound), None),
    ];
    let scope = Scope {
        sizes: vec![SIGN_SCAN_CAP as u64],
        horizons: samples.iter().map(|x| x.ambient_dim()).max().into_iter().collect(),
        sample_count: eligible_total,
        seed: 0,
        notes: vec![format!("certified quasi-greedy constant {cq}, threshold t = {t}")],
    };
    Ok(SuiteReport::new("projection_bound", space.describe(), scope, checks))
}
