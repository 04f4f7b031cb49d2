//! Democracy-constant relations: disjoint pairs control all pairs with a
//! squared constant, and with a certified unconditional or quasi-greedy
//! constant the plain and rank-weighted constants control each other.

use serde_json::json;

use crate::constants::{democracy_constant, PairFamily};
use crate::error::{Error, Result};
use crate::spaces::SpaceSpec;
use crate::verify::{Check, Scope, SuiteReport};
use crate::weights::WeightFunction;

/// `C_full <= C_disjoint^2` over the same enumerated scope.
pub fn suite_disjoint_democracy(
    space: &SpaceSpec,
    max_size: usize,
    horizon: u64,
) -> Result<SuiteReport> {
    let tol = 1e-9;
    let disjoint = democracy_constant(space, None, max_size, horizon, PairFamily::DisjointOnly)?;
    let full = democracy_constant(space, None, max_size, horizon, PairFamily::AllPairs)?;
    let bound = disjoint.estimate * disjoint.estimate;
    let checks = vec![
        Check::outcome(
            "full_democracy_bounded_by_disjoint_squared",
            full.estimate <= bound + tol,
            Some(full.estimate),
            Some(json!({
                "disjoint": disjoint.estimate,
                "disjoint_witness": disjoint.witness,
                "full_witness": full.witness,
            })),
            tol,
        ),
        Check::info("disjoint_democracy_constant", Some(disjoint.estimate), None),
        Check::info("full_democracy_constant", Some(full.estimate), None),
    ];
    let scope = Scope {
        sizes: vec![max_size as u64],
        horizons: vec![horizon],
        sample_count: 0,
        seed: 0,
        notes: vec![],
    };
    Ok(SuiteReport::new("disjoint_democracy", space.describe(), scope, checks))
}

/// Transfer between plain and rank-weighted democracy for a regular weight,
/// using certified constants only: with unconditional constant `ku` the
/// factor is `(c2/c1) ku^2`; with quasi-greedy constant `cq` it is
/// `8 (c2/c1) cq^3`. Both democracy constants are exact over the same
/// enumerated range, so the assertions are sound.
pub fn suite_democracy_transfer(
    space: &SpaceSpec,
    f: &WeightFunction,
    ku: Option<f64>,
    cq: Option<f64>,
    max_size: usize,
    horizon: u64,
) -> Result<SuiteReport> {
    let (c1, c2) = f
        .regularity()
        .ok_or_else(|| Error::InvalidParam(format!("weight {f} is not regular")))?;
    if ku.is_none() && cq.is_none() {
        return Err(Error::InvalidParam(
            "need a certified unconditional or quasi-greedy constant".into(),
        ));
    }
    let tol = 1e-9;
    let plain = democracy_constant(space, None, max_size, horizon, PairFamily::AllPairs)?;
    let weighted = democracy_constant(space, Some(f), max_size, horizon, PairFamily::AllPairs)?;

    let mut checks = vec![
        Check::info("plain_democracy_constant", Some(plain.estimate), None),
        Check::info("weighted_democracy_constant", Some(weighted.estimate), None),
    ];
    if let Some(ku) = ku {
        let factor = c2 / c1 * ku * ku;
        checks.push(Check::outcome(
            "plain_bounded_via_unconditionality",
            plain.estimate <= factor * weighted.estimate + tol,
            Some(plain.estimate),
            Some(json!({"factor": factor, "weighted": weighted.estimate})),
            tol,
        ));
        checks.push(Check::outcome(
            "weighted_bounded_via_unconditionality",
            weighted.estimate <= factor * plain.estimate + tol,
            Some(weighted.estimate),
            Some(json!({"factor": factor, "plain": plain.estimate})),
            tol,
        ));
    }
    if let Some(cq) = cq {
        let factor = 8.0 * (c2 / c1) * cq.powi(3);
        checks.push(Check::outcome(
            "plain_bounded_via_quasi_greediness",
            plain.estimate <= factor * weighted.estimate + tol,
            Some(plain.estimate),
            Some(json!({"factor": factor, "weighted": weighted.estimate})),
            tol,
        ));
        checks.push(Check::outcome(
            "weighted_bounded_via_quasi_greediness",
            weighted.estimate <= factor * plain.estimate + tol,
            Some(weighted.estimate),
            Some(json!({"factor": factor, "plain": plain.estimate})),
            tol,
        ));
    }
    let scope = Scope {
        sizes: vec![max_size as u64],
        horizons: vec![horizon],
        sample_count: 0,
        seed: 0,
        notes: vec![format!("weight {f} with regularity bounds ({c1}, {c2})")],
    };
    Ok(SuiteReport::new("democracy_transfer", space.describe(), scope, checks))
}
