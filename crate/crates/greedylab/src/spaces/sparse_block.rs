//! Construction of the c0 block space driven by a sparse weight function and
//! its growth partner, plus the sparseness checker itself.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::{BlockSpec, SpaceSpec};
use crate::weights::WeightFunction;

const E: f64 = std::f64::consts::E;

/// How the block dimension sequence is obtained.
#[derive(Clone, Debug)]
pub enum BuildMode {
    /// Derive the minimal sequence satisfying the growth recursion.
    Certified,
    /// Use the caller's `[n0, n1, ..., nk]` verbatim; the result is flagged
    /// non-certified.
    Surrogate(Vec<u64>),
}

/// Result of building the block space: the space spec plus the derived
/// dimension sequence.
#[derive(Clone, Debug)]
pub struct SparseBlockBuild {
    pub space: SpaceSpec,
    pub n0: u64,
    /// Exact block dimensions where representable.
    pub exact_sizes: Vec<Option<u64>>,
    /// Natural logs of all block dimensions.
    pub log_sizes: Vec<f64>,
    pub certified: bool,
    pub notes: Vec<String>,
}

/// Builds the block space for a sparse `f` with sparseness `g`.
///
/// Certified mode derives `n0` as the smallest index from which `g` stays
/// above `e`, then grows each block dimension to satisfy
/// `N_k >= g(N_{k-1}) * 2^(N_{k-1})`, `g(N_k) > 3 ln g(N_{k-1})`, and, when
/// `inf g(n)/n > c > 0`, also `N_k >= (3/c) ln g(N_{k-1})`. Dimensions beyond
/// the integer range are kept in log space; it errors once even the log
/// overflows.
pub fn build_section4_space(
    f: &WeightFunction,
    g: &WeightFunction,
    num_blocks: u32,
    mode: BuildMode,
) -> Result<SparseBlockBuild> {
    if num_blocks == 0 {
        return Err(Error::InvalidParam("need at least one block".into()));
    }
    let mut notes = Vec::new();
    match mode {
        BuildMode::Surrogate(sizes) => {
            if sizes.len() != num_blocks as usize + 1 {
                return Err(Error::InvalidParam(format!(
                    "surrogate needs {} sizes (n0 plus one per block), got {}",
                    num_blocks + 1,
                    sizes.len()
                )));
            }
            if sizes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParam("surrogate sizes must be strictly increasing".into()));
            }
            let mut blocks = Vec::new();
            for k in 1..sizes.len() {
                let g_prev = g.eval(sizes[k - 1]);
                if g_prev <= 1.0 {
                    return Err(Error::InvalidParam(format!(
                        "g({}) = {g_prev} <= 1 makes the block {k} scale nonpositive",
                        sizes[k - 1]
                    )));
                }
                blocks.push(BlockSpec {
                    log_scale: (g_prev.ln() / sizes[k] as f64).ln(),
                    log_size: (sizes[k] as f64).ln(),
                    size: Some(sizes[k]),
                });
            }
            notes.push("surrogate dimensions supplied by caller; result is not certified".into());
            let space = SpaceSpec::Section4Block { blocks, certified: false };
            space.validate()?;
            Ok(SparseBlockBuild {
                space,
                n0: sizes[0],
                exact_sizes: sizes[1..].iter().map(|&n| Some(n)).collect(),
                log_sizes: sizes[1..].iter().map(|&n| (n as f64).ln()).collect(),
                certified: false,
                notes,
            })
        }
        BuildMode::Certified => {
            let report = check_sparseness(f, g, 12, 64);
            if !report.pass {
                return Err(Error::NotSparse(report.summary()));
            }
            let c_inf = sampled_growth_ratio_inf(g);
            if let Some(c) = c_inf {
                notes.push(format!("sampled inf g(n)/n = {c:.6}; linear growth floor applied"));
            }

            let n0 = smallest_index_with_growth_above_e(g)?;
            let mut blocks = Vec::new();
            let mut exact_sizes = Vec::new();
            let mut log_sizes = Vec::new();
            // Previous dimension, exactly when representable, always in logs.
            let mut prev_exact: Option<u64> = Some(n0);
            let mut prev_ln = (n0 as f64).ln();
            for k in 1..=num_blocks {
                let ln_g_prev = ln_g_at(g, prev_exact, prev_ln, k)?;
                if ln_g_prev <= 0.0 {
                    return Err(Error::NotSparse(format!(
                        "g at block {k} base dimension is <= 1; scale would be nonpositive"
                    )));
                }
                let floor_c = c_inf.map(|c| 3.0 / c * ln_g_prev).unwrap_or(0.0);
                let (exact, ln_size) = next_dimension(g, prev_exact, prev_ln, ln_g_prev, floor_c, k)?;
                let log_scale = ln_g_prev.ln() - ln_size;
                if log_scale.exp() == 0.0 {
                    notes.push(format!(
                        "block {k} scale underflows to 0; its l1 term vanishes for representable vectors"
                    ));
                }
                blocks.push(BlockSpec { log_scale, log_size: ln_size, size: exact });
                exact_sizes.push(exact);
                log_sizes.push(ln_size);
                prev_exact = exact;
                prev_ln = ln_size;
            }
            let space = SpaceSpec::Section4Block { blocks, certified: true };
            space.validate()?;
            Ok(SparseBlockBuild { space, n0, exact_sizes, log_sizes, certified: true, notes })
        }
    }
}

/// Smallest `n` such that `g(m) > e` for every probed `m >= n`.
fn smallest_index_with_growth_above_e(g: &WeightFunction) -> Result<u64> {
    const PROBE: u64 = 10_000;
    let mut candidate: Option<u64> = None;
    for n in 1..=1_000_000u64 {
        if g.eval(n) > E {
            if candidate.is_none() {
                candidate = Some(n);
            }
            if n >= candidate.unwrap() + PROBE {
                return Ok(candidate.unwrap());
            }
        } else {
            candidate = None;
        }
    }
    candidate.ok_or_else(|| Error::NotSparse("g never stays above e on the probed range".into()))
}

fn ln_g_at(g: &WeightFunction, exact: Option<u64>, ln_n: f64, block: u32) -> Result<f64> {
    if let Some(n) = exact {
        let v = g.eval(n);
        if v <= 0.0 {
            return Err(Error::NotSparse(format!("g({n}) = {v} is not positive")));
        }
        Ok(v.ln())
    } else {
        g.ln_eval(ln_n)
            .filter(|v| v.is_finite())
            .ok_or(Error::BlockOverflow { block })
    }
}

/// Minimal dimension for the next block: at least `g(prev) * 2^prev`,
/// `g` of it above `3 ln g(prev)`, and at least `floor_c`.
fn next_dimension(
    g: &WeightFunction,
    prev_exact: Option<u64>,
    prev_ln: f64,
    ln_g_prev: f64,
    floor_c: f64,
    block: u32,
) -> Result<(Option<u64>, f64)> {
    let bound = 3.0 * ln_g_prev;
    // The base g(prev) * 2^prev, exactly in f64 while the power stays in range.
    let direct = prev_exact.and_then(|p| {
        (p <= 1023).then(|| g.eval(p) * 2f64.powi(p as i32)).filter(|b| b.is_finite())
    });
    if let Some(base) = direct {
        if base < 9.0e18 {
            // Integer scan upward from the rounded base.
            let start = (base.ceil() as u64).max(floor_c.ceil() as u64).max(1);
            for n in start..start + 1_000_000 {
                if g.eval(n) > bound {
                    return Ok((Some(n), (n as f64).ln()));
                }
            }
            return Err(Error::NotSparse(format!(
                "no dimension satisfying g(N) > {bound} found near block {block} base"
            )));
        }
        return verify_log_dimension(g, base.ln(), floor_c, bound, block);
    }
    let base_ln = ln_g_prev + prev_value(prev_exact, prev_ln) * std::f64::consts::LN_2;
    if !base_ln.is_finite() {
        return Err(Error::BlockOverflow { block });
    }
    verify_log_dimension(g, base_ln, floor_c, bound, block)
}

/// Accepts an astronomically large dimension given by its log after checking
/// the growth condition in log space.
fn verify_log_dimension(
    g: &WeightFunction,
    base_ln: f64,
    floor_c: f64,
    bound: f64,
    block: u32,
) -> Result<(Option<u64>, f64)> {
    let floor_ln = if floor_c > 0.0 { floor_c.ln() } else { f64::NEG_INFINITY };
    let ln_size = base_ln.max(floor_ln);
    let ln_g_next = g
        .ln_eval(ln_size)
        .filter(|v| v.is_finite())
        .ok_or(Error::BlockOverflow { block })?;
    if ln_g_next <= bound.ln() {
        return Err(Error::NotSparse(format!(
            "g at the block {block} base dimension does not clear 3 ln g(previous)"
        )));
    }
    Ok((None, ln_size))
}

fn prev_value(exact: Option<u64>, ln: f64) -> f64 {
    exact.map(|n| n as f64).unwrap_or_else(|| ln.exp())
}

/// Sampled `inf g(n)/n`; `None` when the sampled infimum is not positive.
fn sampled_growth_ratio_inf(g: &WeightFunction) -> Option<f64> {
    let mut inf = f64::INFINITY;
    for n in growth_samples() {
        inf = inf.min(g.eval(n) / n as f64);
    }
    (inf > 1e-12).then_some(inf)
}

fn growth_samples() -> Vec<u64> {
    let mut samples: Vec<u64> = (1..=1000).collect();
    samples.extend([2_000, 5_000, 10_000, 50_000, 100_000, 500_000, 1_000_000]);
    samples
}

/// Worst witness of the sparseness inequality.
#[derive(Clone, Debug, Serialize)]
pub struct SparsenessWitness {
    pub set: Vec<u64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of the sparseness check. `condition3` covers the per-set
/// inequality; growth and ratio are the sampled limit conditions on `g`.
#[derive(Clone, Debug, Serialize)]
pub struct SparsenessReport {
    pub pass: bool,
    pub condition3_ok: bool,
    pub growth_ok: bool,
    pub ratio_ok: bool,
    pub worst: Option<SparsenessWitness>,
    pub scope: String,
}

impl SparsenessReport {
    pub fn summary(&self) -> String {
        format!(
            "pass={} (set inequality {}, growth {}, ratio {})",
            self.pass, self.condition3_ok, self.growth_ok, self.ratio_ok
        )
    }
}

/// Verifies `max_{n in A} |f(n)| >= g(|A|)/|A| * sum_{n in A} |f(n)|` over all
/// nonempty `A` within the horizon with `|A| <= max_set_size`, plus the
/// sampled conditions that `g` tends to infinity and that `g(n)/n` is
/// nonincreasing or bounded away from 0.
///
/// The per-set condition is checked exactly without enumerating subsets: for
/// a fixed size `k` and a fixed maximum element, the adversarial set takes
/// the `k-1` next-largest magnitudes not exceeding it, so scanning the
/// magnitude-sorted prefix windows covers the worst case.
pub fn check_sparseness(
    f: &WeightFunction,
    g: &WeightFunction,
    max_set_size: usize,
    index_horizon: u64,
) -> SparsenessReport {
    let mut indexed: Vec<(u64, f64)> = (1..=index_horizon).map(|n| (n, f.eval(n).abs())).collect();
    indexed.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut prefix = vec![0.0f64];
    for &(_, v) in &indexed {
        prefix.push(prefix.last().unwrap() + v);
    }

    let mut worst: Option<SparsenessWitness> = None;
    let mut worst_margin = f64::INFINITY;
    let h = indexed.len();
    for k in 1..=max_set_size.min(h) {
        let factor = g.eval(k as u64) / k as f64;
        for j in 0..=(h - k) {
            let lhs = indexed[j].1;
            let sum = lhs + (prefix[j + k] - prefix[j + 1]);
            let rhs = factor * sum;
            let margin = lhs - rhs;
            if margin < worst_margin {
                worst_margin = margin;
                let mut set: Vec<u64> = indexed[j..j + k].iter().map(|&(n, _)| n).collect();
                set.sort_unstable();
                worst = Some(SparsenessWitness { set, lhs, rhs });
            }
        }
    }
    let condition3_ok = worst_margin >= -1e-15;

    let decades: Vec<u64> = vec![10, 100, 1_000, 10_000, 100_000, 1_000_000];
    let values: Vec<f64> = decades.iter().map(|&n| g.eval(n)).collect();
    let growth_ok = values.windows(2).all(|w| w[1] >= w[0]) && *values.last().unwrap() >= 2.0 * values[0] + 10.0;
    let ratios: Vec<f64> = growth_samples().iter().map(|&n| g.eval(n) / n as f64).collect();
    let nonincreasing = ratios.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    let positive_inf = ratios.iter().cloned().fold(f64::INFINITY, f64::min) > 1e-12;
    let ratio_ok = nonincreasing || positive_inf;

    SparsenessReport {
        pass: condition3_ok && growth_ok && ratio_ok,
        condition3_ok,
        growth_ok,
        ratio_ok,
        worst,
        scope: format!("sets up to size {max_set_size} within [1, {index_horizon}]; growth sampled to 1e6"),
    }
}
