//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use greedylab::constants::{democracy_constant, PairFamily};
use greedylab::greedy::{greedy_ordering, greedy_sum, indicator};
use greedylab::samples::{banded_family, default_family};
use greedylab::spaces::{
    build_section4_space, check_sparseness, eval_norm, harmonic_number, oracles, BuildMode,
    SpaceSpec,
};
use greedylab::verify::{
    suite_abt_weak, suite_disjoint_democracy, suite_greedy_inequality, suite_indicator_bounds,
    suite_projection_bound, suite_sparse_block, FunctionalChoice, GreedyInequalityConfig,
    OrderRule,
};
use greedylab::{Coord, FiniteVector, WeightFunction};

fn report(number: u32, passed: bool, detail: &str) {
    println!(
        "criterion {number}: {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {number} failed: {detail}");
}

/// As [`report`], also asserting the criterion's runtime budget.
fn report_timed(
    number: u32,
    passed: bool,
    budget_secs: u64,
    started: std::time::Instant,
    detail: &str,
) {
    let elapsed = started.elapsed().as_secs_f64();
    report(
        number,
        passed && elapsed <= budget_secs as f64,
        &format!("{detail} [{elapsed:.1}s of {budget_secs}s budget]"),
    );
}

fn random_vector(rng: &mut ChaCha8Rng, dim: u64, max_support: usize) -> FiniteVector {
    let size = rng.gen_range(0..=max_support);
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for _ in 0..size {
        let i = rng.gen_range(1..=dim);
        if used.insert(i) {
            pairs.push((i, rng.gen_range(-2.0..2.0)));
        }
    }
    FiniteVector::flat(&pairs, dim).unwrap()
}

fn ones(indices: impl IntoIterator<Item = u64>) -> FiniteVector {
    let set: BTreeSet<Coord> = indices.into_iter().map(Coord::flat).collect();
    indicator(&set, None, None).unwrap()
}

fn weighted(indices: impl IntoIterator<Item = u64>, f: &WeightFunction) -> FiniteVector {
    let set: BTreeSet<Coord> = indices.into_iter().map(Coord::flat).collect();
    indicator(&set, None, Some(f)).unwrap()
}

/// Norm evaluators match their brute-force oracles.
#[test]
fn criterion_01_norm_oracle_equivalence() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let x = random_vector(&mut rng, 20, 10);
        let fast = eval_norm(&SpaceSpec::Schreier, &x).unwrap();
        let brute = oracles::schreier_brute_force(&x, 20).unwrap();
        worst = worst.max((fast - brute).abs());
    }
    for _ in 0..500 {
        let x = random_vector(&mut rng, 14, 8);
        let fast = eval_norm(&SpaceSpec::SignedSubsequence, &x).unwrap();
        let brute = oracles::signed_subsequence_brute_force(&x, 14).unwrap();
        worst = worst.max((fast - brute).abs());
    }
    for _ in 0..200 {
        let x = random_vector(&mut rng, 16, 8);
        let fast = eval_norm(&SpaceSpec::WeightedMixed, &x).unwrap();
        let brute = oracles::weighted_mixed_brute_force(&x).unwrap();
        worst = worst.max((fast - brute).abs());
    }
    report_timed(1, worst <= 1e-12, 120, started, &format!("max |evaluator - oracle| = {worst:.2e} over 1200 vectors"));
}

/// Schreier: structured democracy within 2, reciprocal weight escapes.
#[test]
fn criterion_02_schreier_democracy_and_weighted_escape() {
    let started = std::time::Instant::now();
    let space = SpaceSpec::Schreier;
    let structured = democracy_constant(&space, None, 64, 192, PairFamily::Structured).unwrap();
    let f = WeightFunction::Reciprocal;
    let m = 256u64;
    let far = eval_norm(&space, &weighted((m + 1)..=(2 * m), &f)).unwrap();
    let near = eval_norm(&space, &weighted(1..=m, &f)).unwrap();
    let ratio = far / near;
    let passed = structured.estimate <= 2.0 + 1e-9 && ratio >= 3.0;
    report_timed(
        2,
        passed,
        30,
        started,
        &format!("structured constant {:.6} <= 2, weighted ratio {ratio:.3} >= 3 at m = {m}", structured.estimate),
    );
}

/// Tail-sum block space: indicators count their support; the alternating
/// rank weight separates block starts from a single block by exactly m.
#[test]
fn criterion_03_tail_sum_space_witnesses() {
    let started = std::time::Instant::now();
    let space = SpaceSpec::AlternatingTailL1Sum { block_sizes: (2..=10).collect() };
    let layout = space.layout().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let size = rng.gen_range(1..=8u64);
        let mut set = BTreeSet::new();
        while (set.len() as u64) < size {
            set.insert(rng.gen_range(1..=layout.total()));
        }
        let norm = eval_norm(&space, &ones(set.iter().copied())).unwrap();
        worst = worst.max((norm - size as f64).abs());
    }
    let alternating = WeightFunction::Alternating;
    let mut ratio_exact = true;
    for m in 1..=8usize {
        let starts: Vec<u64> = (0..m).map(|k| layout.block_start(k)).collect();
        let k = (0..layout.num_blocks()).find(|&k| layout.block_size(k) >= m as u64).unwrap();
        let inside: Vec<u64> = (layout.block_start(k)..layout.block_start(k) + m as u64).collect();
        let a = eval_norm(&space, &weighted(starts, &alternating)).unwrap();
        let b = eval_norm(&space, &weighted(inside, &alternating)).unwrap();
        ratio_exact &= a / b == m as f64;
    }
    report_timed(
        3,
        worst == 0.0 && ratio_exact,
        10,
        started,
        &format!("indicator norms exact (worst dev {worst:.1e}); weighted ratio equals m for m <= 8"),
    );
}

/// Signed-subsequence space: prefixes collapse to 1, odd sets grow.
#[test]
fn criterion_04_signed_subsequence_witnesses() {
    let started = std::time::Instant::now();
    let space = SpaceSpec::SignedSubsequence;
    let mut prefix_exact = true;
    let mut floor_ok = true;
    let mut exact_values = Vec::new();
    for m in 1..=20u64 {
        prefix_exact &= eval_norm(&space, &ones(1..=m)).unwrap() == 1.0;
        let norm = eval_norm(&space, &ones((0..m).map(|j| 2 * j + 1))).unwrap();
        floor_ok &= norm >= (m - 1) as f64;
        exact_values.push(norm);
    }
    report_timed(
        4,
        prefix_exact && floor_ok,
        10,
        started,
        &format!(
            "prefix norms all 1; odd-set norms >= m - 1 (exact value at m = 20: {})",
            exact_values.last().unwrap()
        ),
    );
}

/// Weighted-mixed space: rank-weighted norms are sqrt(s_m); the parity
/// democracy ratio grows through 1.4.
#[test]
fn criterion_05_weighted_mixed_witnesses() {
    let started = std::time::Instant::now();
    let space = SpaceSpec::WeightedMixed;
    let f = WeightFunction::Power(0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = rng.gen_range(1..=50u64);
        let mut set = BTreeSet::new();
        while (set.len() as u64) < m {
            set.insert(rng.gen_range(1..=500u64));
        }
        let norm = eval_norm(&space, &weighted(set.iter().copied(), &f)).unwrap();
        worst = worst.max((norm - harmonic_number(m).sqrt()).abs());
    }
    let mut ratios = Vec::new();
    for m in [100u64, 1_000, 10_000] {
        let evens = eval_norm(&space, &ones((1..=m).map(|j| 2 * j))).unwrap();
        let odds = eval_norm(&space, &ones((0..m).map(|j| 2 * j + 1))).unwrap();
        ratios.push(evens / odds);
    }
    let growing = ratios.windows(2).all(|w| w[1] > w[0]);
    report_timed(
        5,
        worst <= 1e-9 && growing && ratios[2] >= 1.4,
        60,
        started,
        &format!("sqrt-harmonic deviation {worst:.1e}; parity ratios {ratios:?}"),
    );
}

/// Sparse-growth block space: certified dimensions, sparseness verdicts, and
/// the factor-2 residual bound with zero violations.
#[test]
fn criterion_06_sparse_block_construction_and_residual_bound() {
    let started = std::time::Instant::now();
    let f = WeightFunction::Geometric(0.5);
    let g = WeightFunction::Linear(0.5);
    let build = build_section4_space(&f, &g, 2, BuildMode::Certified).unwrap();
    let dims_ok = build.n0 == 6 && build.exact_sizes[0] == Some(192);

    let pass_cases = [
        (WeightFunction::Constant(0.0), WeightFunction::Linear(1.0)),
        (WeightFunction::Geometric(0.5), WeightFunction::Linear(0.5)),
        (WeightFunction::Geometric(3.0), WeightFunction::Linear(2.0 / 3.0)),
    ];
    let fail_cases = [
        (WeightFunction::Constant(1.0), WeightFunction::Linear(0.5)),
        (WeightFunction::Power(2.0), WeightFunction::Linear(0.5)),
    ];
    let sparseness_ok = pass_cases.iter().all(|(f, g)| check_sparseness(f, g, 10, 40).pass)
        && fail_cases.iter().all(|(f, g)| !check_sparseness(f, g, 10, 40).pass);

    let suite = suite_sparse_block(&build, &f, 500, 106).unwrap();
    report_timed(
        6,
        dims_ok && sparseness_ok && suite.passed(),
        300,
        started,
        &format!(
            "n0 = {}, n1 = {:?}; sparseness verdicts correct; {}",
            build.n0,
            build.exact_sizes[0],
            suite.summary()
        ),
    );
}

/// Indicator bounds (factor 2Cq) and nested projection bound (8Cq^3/t) with
/// Cq = 1, zero violations over 1000 seeded instances per space.
#[test]
fn criterion_07_quasi_greedy_bounds_hold_with_unit_constant() {
    let started = std::time::Instant::now();
    let spaces = [
        SpaceSpec::lp(1.0),
        SpaceSpec::lp(1.5),
        SpaceSpec::lp(2.0),
        SpaceSpec::lp(4.0),
        SpaceSpec::Schreier,
    ];
    let mut all_pass = true;
    let mut detail = String::new();
    for (i, space) in spaces.iter().enumerate() {
        let family = default_family(12, 1000, 8, 700 + i as u64);
        let gu = suite_indicator_bounds(space, 1.0, &family.vectors).unwrap();
        all_pass &= gu.passed();
        for (j, t) in [0.25, 0.5, 1.0].into_iter().enumerate() {
            let banded = banded_family(12, 1000, 8, t, 1.0, 710 + (i * 3 + j) as u64);
            let l1 = suite_projection_bound(space, 1.0, &banded.vectors, t).unwrap();
            all_pass &= l1.passed();
        }
        detail.push_str(&format!("{} ok; ", space.describe()));
    }
    report_timed(7, all_pass, 120, started, &detail);
}

/// Disjoint democracy controls full democracy with a squared constant on
/// every implemented space kind.
#[test]
fn criterion_08_disjoint_democracy_square() {
    let started = std::time::Instant::now();
    let f = WeightFunction::Geometric(0.5);
    let g = WeightFunction::Linear(0.5);
    let block = build_section4_space(&f, &g, 2, BuildMode::Certified).unwrap().space;
    let spaces = vec![
        SpaceSpec::lp(1.0),
        SpaceSpec::lp(1.5),
        SpaceSpec::lp(2.0),
        SpaceSpec::lp(4.0),
        SpaceSpec::C0Sup,
        SpaceSpec::Schreier,
        SpaceSpec::AlternatingTailL1Sum { block_sizes: (2..=10).collect() },
        SpaceSpec::SignedSubsequence,
        SpaceSpec::WeightedMixed,
        SpaceSpec::GenericBlockSum {
            block_sizes: vec![4, 5, 7],
            mode: greedylab::spaces::SumMode::L1,
            inner: Box::new(SpaceSpec::lp(2.0)),
        },
        block,
    ];
    let mut all_pass = true;
    let mut detail = String::new();
    for space in &spaces {
        let suite = suite_disjoint_democracy(space, 8, 16).unwrap();
        all_pass &= suite.passed();
        let full = suite.check("full_democracy_constant").unwrap().worst_ratio.unwrap();
        let disjoint = suite.check("disjoint_democracy_constant").unwrap().worst_ratio.unwrap();
        detail.push_str(&format!("{}: {full:.3} <= {disjoint:.3}^2; ", space.describe()));
    }
    report_timed(8, all_pass, 60, started, &detail);
}

/// Relaxing the outside rank to 2 lets weak greedy sets avoid the support:
/// every newly admitted set projects e_1 to zero.
#[test]
fn criterion_09_rank_two_counterexample() {
    let started = std::time::Instant::now();
    let suite = suite_abt_weak(&SpaceSpec::lp(2.0), &[], &[1, 2], &[2], 0.5, Some(1.0)).unwrap();
    let check = suite.check("rank_two_relaxation_projects_unit_vector_to_zero").unwrap();
    let admitted = check.worst_ratio.unwrap_or(0.0);
    report_timed(
        9,
        suite.passed() && admitted > 0.0,
        5,
        started,
        &format!("{} newly admitted sets all project e_1 to 0", admitted),
    );
}

/// Greedy optimality sanity: the l2 coordinate basis is 1-greedy (closed-form
/// check), and the signed-subsequence space is the negative control whose
/// fitted constant grows with the order.
#[test]
fn criterion_10_greedy_optimality_and_negative_control() {
    let started = std::time::Instant::now();
    // Closed form in l2: sigma_m(x) is the l2 mass beyond the m largest.
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let space = SpaceSpec::lp(2.0);
    let mut fitted = 0.0f64;
    for _ in 0..200 {
        let x = loop {
            let x = random_vector(&mut rng, 14, 8);
            if !x.is_zero() {
                break x;
            }
        };
        let ordering = greedy_ordering(&x);
        for m in 1..x.support_size() {
            let residual = x.sub(&greedy_sum(&x, m)).unwrap();
            let lhs = eval_norm(&space, &residual).unwrap();
            let closed_form = ordering.values[m..].iter().map(|v| v * v).sum::<f64>().sqrt();
            if closed_form > 0.0 {
                fitted = fitted.max(lhs / closed_form);
            }
        }
    }
    let l2_ok = fitted <= 1.0 + 1e-6;

    // Negative control: heavy prefix plus odd-spaced tail on the
    // signed-subsequence space. The greedy sum removes the prefix and leaves
    // the tail, whose norm grows, while sigma_m stays near the prefix norm.
    let control: Vec<FiniteVector> = [4usize, 12]
        .into_iter()
        .map(|m| {
            let mut pairs: Vec<(u64, f64)> = (1..=m as u64).map(|i| (i, 1.5)).collect();
            pairs.extend((0..m as u64).map(|j| (2 * m as u64 + 1 + 2 * j, 1.0)));
            FiniteVector::flat(&pairs, 4 * m as u64).unwrap()
        })
        .collect();
    let config = GreedyInequalityConfig {
        m_max: 12,
        growth_anchors: Some((4, 12)),
        ..Default::default()
    };
    let suite = suite_greedy_inequality(
        &SpaceSpec::SignedSubsequence,
        &control,
        FunctionalChoice::Sigma,
        OrderRule::M,
        &config,
    )
    .unwrap();
    let growth = suite.check("fitted_constant_grows").unwrap();
    let low = suite.check("fitted_constant_m4").unwrap().worst_ratio.unwrap_or(0.0);
    let high = suite.check("fitted_constant_m12").unwrap().worst_ratio.unwrap_or(0.0);
    report_timed(
        10,
        l2_ok && suite.passed(),
        180,
        started,
        &format!(
            "l2 fitted constant {fitted:.9} <= 1 + 1e-6; control fitted grows {low:.2} -> {high:.2} ({:?})",
            growth.status
        ),
    );
}
