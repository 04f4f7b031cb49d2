//! Sparseness checking and the certified block-space construction: a weight
//! whose mass concentrates on one coordinate of every set builds a space
//! that is provably non-democratic yet keeps the greedy residual within
//! twice the rank-weighted span distance.
//!
//! ```bash
//! cargo run --example sparse_block_space
//! ```

use greedylab::spaces::{build_section4_space, check_sparseness, eval_norm, BuildMode};
use greedylab::{Coord, FiniteVector, Result, WeightFunction};

fn main() -> Result<()> {
    let f = WeightFunction::Geometric(0.5); // 2^-n
    let g = WeightFunction::Linear(0.5); // n/2

    let report = check_sparseness(&f, &g, 10, 40);
    println!("sparseness of {f} with partner {g}: {}", report.summary());

    let regular = WeightFunction::Constant(1.0);
    let report = check_sparseness(&regular, &g, 10, 40);
    println!("sparseness of {regular} with partner {g}: {}", report.summary());
    if let Some(worst) = &report.worst {
        println!("  worst set {:?}: max = {:.4} vs required {:.4}", worst.set, worst.lhs, worst.rhs);
    }

    // Certified construction: the recursion drives the second block
    // dimension beyond the integer range, so it is kept in log space.
    let build = build_section4_space(&f, &g, 2, BuildMode::Certified)?;
    println!("n0 = {}", build.n0);
    for (k, (exact, ln)) in build.exact_sizes.iter().zip(&build.log_sizes).enumerate() {
        match exact {
            Some(n) => println!("block {} dimension: {n}", k + 1),
            None => println!("block {} dimension: e^{ln:.3} (log-space only)", k + 1),
        }
    }
    for note in &build.notes {
        println!("note: {note}");
    }

    // Equal-size indicators in consecutive blocks have wildly different
    // norms: the basis is not democratic.
    let n1 = build.exact_sizes[0].unwrap();
    let block1 = FiniteVector::from_entries((1..=n1).map(|i| (Coord::in_block(1, i), 1.0)), 1)?;
    let block2 = FiniteVector::from_entries((1..=n1).map(|i| (Coord::in_block(2, i), 1.0)), 2)?;
    let a = eval_norm(&build.space, &block1)?;
    let b = eval_norm(&build.space, &block2)?;
    println!("block-1 indicator norm: {a:.6}");
    println!("same-size block-2 indicator norm: {b:.6}");
    println!("democracy ratio: {:.6}", a / b);

    // Surrogate mode takes the dimensions verbatim and marks the space
    // non-certified.
    let surrogate = build_section4_space(&f, &g, 2, BuildMode::Surrogate(vec![6, 20, 50]))?;
    println!("surrogate build certified: {}", surrogate.certified);
    Ok(())
}
