//! Greedy orderings, greedy sums, and the weak and `(a, b, t)`-weak
//! relaxations of greedy sets.
//!
//! ```bash
//! cargo run --example greedy_selection
//! ```

use greedylab::greedy::{
    enumerate_abt_weak_greedy_sets, enumerate_greedy_sets, enumerate_weak_greedy_sets,
    greedy_ordering, greedy_sum, DEFAULT_ENUMERATION_CAP,
};
use greedylab::{FiniteVector, Result};

fn main() -> Result<()> {
    // Ties break toward the smaller index in the canonical ordering.
    let x = FiniteVector::flat(&[(1, 3.0), (2, 3.0), (3, 1.0), (5, -2.0)], 6)?;
    let ordering = greedy_ordering(&x);
    println!("ordering: {:?}", ordering.ordered_indices.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for m in 0..=4 {
        println!("greedy sum order {m}: {}", greedy_sum(&x, m).to_json_value());
    }

    // The tie at magnitude 3 makes two greedy sets of order 1.
    let sets = enumerate_greedy_sets(&x, 1, DEFAULT_ENUMERATION_CAP)?;
    println!("greedy sets of order 1: {sets:?}");

    // Weak greedy sets only need to dominate t times the outside maximum.
    for t in [1.0, 0.5, 0.0] {
        let weak = enumerate_weak_greedy_sets(&x, 2, t, DEFAULT_ENUMERATION_CAP)?;
        println!("t = {t}: {} weak greedy sets of order 2", weak.len());
    }

    // (a, b, t)-weak greedy sets compare the a-th smallest inside magnitude
    // with t times the b-th largest outside one. With b = 2 the selector can
    // ignore the single big coordinate entirely.
    let spike = FiniteVector::unit(1, 6);
    let sets = enumerate_abt_weak_greedy_sets(&spike, 3, 1, 2, 0.9, DEFAULT_ENUMERATION_CAP)?;
    println!("(1, 2, 0.9)-weak greedy sets of order 3 for e_1: {} sets", sets.len());
    let avoiding: Vec<_> = sets.iter().filter(|s| !s.iter().any(|c| c.flat_index() == Some(1))).collect();
    println!("  of which {} avoid the support entirely", avoiding.len());
    Ok(())
}
